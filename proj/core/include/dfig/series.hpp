#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dfig/errors.hpp"

namespace dfig::dt {

/// Hard floor below which a leading coefficient is treated as singular in
/// quotient and square-root recurrences. All divided signals are O(1) in
/// per-unit terms during normal operation, so anything under this floor is
/// a diagnosable fault rather than a valid operating point.
inline constexpr double kDivFloor = 1e-10;
inline constexpr double kSqrtFloor = 1e-10;

/// Maximum supported truncation order. Coefficients are stored densely;
/// at these orders dense storage is optimal.
inline constexpr int kMaxOrder = 32;

/// Truncated power series of one scalar signal about a window start time.
/// Coefficient k multiplies (t - t0)^k.
class PowerSeries {
public:
    PowerSeries() = default;

    PowerSeries(std::vector<double> coeffs, double t0);

    /// All-zero series of the given truncation order.
    static PowerSeries zeros(int order, double t0 = 0.0);

    /// Truncation order NL; the series holds NL+1 coefficients.
    [[nodiscard]] int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    [[nodiscard]] double t0() const noexcept { return t0_; }

    [[nodiscard]] double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    [[nodiscard]] double& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }

    /// Copy truncated (or zero-extended) to a new order.
    [[nodiscard]] PowerSeries truncated(int new_order) const;

    [[nodiscard]] bool all_finite() const noexcept;

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<double> coeffs_;
    double t0_ = 0.0;
};

/// Coupled sine/cosine transforms of a shared angle series. The two
/// recurrences are mutually recursive, so they are always produced together.
struct SeriesPair {
    PowerSeries sin;
    PowerSeries cos;
};

/// c*x + d*z, componentwise.
[[nodiscard]] PowerSeries linear(double c, const PowerSeries& x, double d, const PowerSeries& z);

/// Cauchy product truncated at the common order.
[[nodiscard]] PowerSeries mul(const PowerSeries& x, const PowerSeries& z);

/// Triple product x*z*w, truncation-consistent with two nested products.
[[nodiscard]] PowerSeries mul3(const PowerSeries& x, const PowerSeries& z, const PowerSeries& w);

/// Quotient series y with y*z == x to the common order. Requires
/// |z[0]| > kDivFloor; `signal` names the denominator in the error message.
[[nodiscard]] PowerSeries div(const PowerSeries& x, const PowerSeries& z,
                              std::string_view signal = {});

/// sin/cos of an angle series, seeded from sin(theta[0]) and cos(theta[0]).
[[nodiscard]] SeriesPair sincos(const PowerSeries& theta);

/// exp of a series, seeded from exp(x[0]).
[[nodiscard]] PowerSeries exp(const PowerSeries& x);

/// Positive square root; requires x[0] > kSqrtFloor.
[[nodiscard]] PowerSeries sqrt(const PowerSeries& x, std::string_view signal = {});

/// Horner evaluation of the truncated polynomial at (t - t0).
[[nodiscard]] double eval(const PowerSeries& x, double t);

/// Derivative of the truncated polynomial at (t - t0).
[[nodiscard]] double eval_derivative(const PowerSeries& x, double t);

/// Series with 1 at index n, 0 elsewhere (transform of (t-t0)^n).
[[nodiscard]] PowerSeries kronecker(int n, int order, double t0 = 0.0);

} // namespace dfig::dt
