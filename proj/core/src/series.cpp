#include "dfig/series.hpp"

#include <cmath>
#include <string>

namespace dfig::dt {

namespace {

void require_same_grid(const PowerSeries& x, const PowerSeries& z) {
    if (x.order() != z.order() || x.t0() != z.t0()) {
        throw DimensionError("series operands on different grids: orders " +
                             std::to_string(x.order()) + "/" + std::to_string(z.order()) +
                             ", t0 " + std::to_string(x.t0()) + "/" + std::to_string(z.t0()));
    }
}

std::string with_signal(std::string msg, std::string_view signal) {
    if (!signal.empty()) {
        msg += " (signal: ";
        msg += signal;
        msg += ")";
    }
    return msg;
}

} // namespace

PowerSeries::PowerSeries(std::vector<double> coeffs, double t0)
    : coeffs_(std::move(coeffs)), t0_(t0) {
    if (coeffs_.empty() || coeffs_.size() > static_cast<std::size_t>(kMaxOrder) + 1) {
        throw DimensionError("series must hold 1.." + std::to_string(kMaxOrder + 1) +
                             " coefficients, got " + std::to_string(coeffs_.size()));
    }
}

PowerSeries PowerSeries::zeros(int order, double t0) {
    if (order < 0 || order > kMaxOrder) {
        throw DimensionError("series order out of range: " + std::to_string(order));
    }
    return PowerSeries(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0), t0);
}

PowerSeries PowerSeries::truncated(int new_order) const {
    PowerSeries out = zeros(new_order, t0_);
    const int n = std::min(new_order, order());
    for (int k = 0; k <= n; ++k) out[k] = coeffs_[static_cast<std::size_t>(k)];
    return out;
}

bool PowerSeries::all_finite() const noexcept {
    for (double c : coeffs_) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

PowerSeries linear(double c, const PowerSeries& x, double d, const PowerSeries& z) {
    require_same_grid(x, z);
    PowerSeries y = PowerSeries::zeros(x.order(), x.t0());
    for (int k = 0; k <= x.order(); ++k) y[k] = c * x[k] + d * z[k];
    return y;
}

PowerSeries mul(const PowerSeries& x, const PowerSeries& z) {
    require_same_grid(x, z);
    PowerSeries y = PowerSeries::zeros(x.order(), x.t0());
    for (int k = 0; k <= x.order(); ++k) {
        double acc = 0.0;
        for (int m = 0; m <= k; ++m) acc += x[m] * z[k - m];
        y[k] = acc;
    }
    return y;
}

PowerSeries mul3(const PowerSeries& x, const PowerSeries& z, const PowerSeries& w) {
    return mul(mul(x, z), w);
}

PowerSeries div(const PowerSeries& x, const PowerSeries& z, std::string_view signal) {
    require_same_grid(x, z);
    if (std::abs(z[0]) <= kDivFloor) {
        throw SingularError(with_signal(
            "series division by near-zero leading coefficient " + std::to_string(z[0]), signal));
    }
    PowerSeries y = PowerSeries::zeros(x.order(), x.t0());
    for (int k = 0; k <= x.order(); ++k) {
        double acc = x[k];
        for (int m = 0; m < k; ++m) acc -= y[m] * z[k - m];
        y[k] = acc / z[0];
    }
    return y;
}

SeriesPair sincos(const PowerSeries& theta) {
    PowerSeries s = PowerSeries::zeros(theta.order(), theta.t0());
    PowerSeries c = PowerSeries::zeros(theta.order(), theta.t0());
    s[0] = std::sin(theta[0]);
    c[0] = std::cos(theta[0]);
    for (int k = 1; k <= theta.order(); ++k) {
        double as = 0.0;
        double ac = 0.0;
        for (int m = 0; m < k; ++m) {
            const double w = static_cast<double>(k - m) / static_cast<double>(k);
            as += w * c[m] * theta[k - m];
            ac -= w * s[m] * theta[k - m];
        }
        s[k] = as;
        c[k] = ac;
    }
    return SeriesPair{std::move(s), std::move(c)};
}

PowerSeries exp(const PowerSeries& x) {
    PowerSeries y = PowerSeries::zeros(x.order(), x.t0());
    y[0] = std::exp(x[0]);
    if (!std::isfinite(y[0])) {
        throw RangeError("series exp overflow at leading coefficient " + std::to_string(x[0]));
    }
    for (int k = 1; k <= x.order(); ++k) {
        double acc = 0.0;
        for (int m = 0; m < k; ++m) {
            acc += (static_cast<double>(k - m) / static_cast<double>(k)) * y[m] * x[k - m];
        }
        y[k] = acc;
    }
    return y;
}

PowerSeries sqrt(const PowerSeries& x, std::string_view signal) {
    if (x[0] <= kSqrtFloor) {
        throw SingularError(with_signal(
            "series sqrt of non-positive leading coefficient " + std::to_string(x[0]), signal));
    }
    PowerSeries y = PowerSeries::zeros(x.order(), x.t0());
    y[0] = std::sqrt(x[0]);
    for (int k = 1; k <= x.order(); ++k) {
        double acc = x[k];
        for (int m = 1; m < k; ++m) acc -= y[m] * y[k - m];
        y[k] = acc / (2.0 * y[0]);
    }
    return y;
}

double eval(const PowerSeries& x, double t) {
    const double dt = t - x.t0();
    double acc = x[x.order()];
    for (int k = x.order() - 1; k >= 0; --k) acc = acc * dt + x[k];
    return acc;
}

double eval_derivative(const PowerSeries& x, double t) {
    const double dt = t - x.t0();
    double acc = x.order() * x[x.order()];
    for (int k = x.order() - 1; k >= 1; --k) acc = acc * dt + k * x[k];
    return x.order() >= 1 ? acc : 0.0;
}

PowerSeries kronecker(int n, int order, double t0) {
    if (n < 0 || n > order) {
        throw DimensionError("kronecker index " + std::to_string(n) +
                             " outside order " + std::to_string(order));
    }
    PowerSeries y = PowerSeries::zeros(order, t0);
    y[n] = 1.0;
    return y;
}

} // namespace dfig::dt
