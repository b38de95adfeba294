#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace ginstat {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// A complex value stored as mantissa * exp(log_scale), so products of
/// exponentially large/small factors can be combined before any exp() call.
struct LogScaled {
    cplx mantissa{0.0, 0.0};
    double log_scale = 0.0;

    static LogScaled from_value(cplx v) { return {v, 0.0}; }

    cplx value() const {
        if (mantissa == cplx(0.0, 0.0)) return {0.0, 0.0};
        return mantissa * std::exp(log_scale);
    }

    double log_abs() const {
        double m = std::abs(mantissa);
        if (m == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(m) + log_scale;
    }

    // keep the mantissa in a sane range
    LogScaled normalized() const {
        double m = std::abs(mantissa);
        if (m == 0.0 || !std::isfinite(m)) return *this;
        return {mantissa / m, log_scale + std::log(m)};
    }

    friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
        return {a.mantissa * b.mantissa, a.log_scale + b.log_scale};
    }
    friend LogScaled operator*(const LogScaled& a, cplx s) {
        return {a.mantissa * s, a.log_scale};
    }
    LogScaled scaled(double extra_log) const { return {mantissa, log_scale + extra_log}; }
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace ginstat
