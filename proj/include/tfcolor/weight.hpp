#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tfcolor {

/// Extended non-negative real in [0, +inf], stored in the log domain so that
/// repeated multiplication by e^x never overflows a finite representation.
/// log = -inf encodes zero (absorbing), log = +inf encodes infinity.
class Weight {
public:
    constexpr Weight() noexcept = default;

    static constexpr Weight zero() noexcept { return Weight(-std::numeric_limits<double>::infinity()); }
    static constexpr Weight infinity() noexcept { return Weight(std::numeric_limits<double>::infinity()); }

    static Weight from_value(double value)
    {
        if (std::isnan(value) || value < 0.0) {
            throw std::invalid_argument("weight must be a non-negative number, got " + std::to_string(value));
        }
        return Weight(std::log(value));
    }

    static Weight from_log(double log_value)
    {
        if (std::isnan(log_value)) {
            throw std::invalid_argument("log-weight is NaN");
        }
        return Weight(log_value);
    }

    constexpr bool is_zero() const noexcept { return log_ == -std::numeric_limits<double>::infinity(); }
    constexpr bool is_infinite() const noexcept { return log_ == std::numeric_limits<double>::infinity(); }
    constexpr double log() const noexcept { return log_; }

    /// e^log; may round to +inf for log > ~709.78 while the weight itself is finite.
    double value() const noexcept { return std::exp(log_); }

    /// 1 - e^{-w}, accurate for small w.
    double inclusion_probability() const noexcept { return -std::expm1(-value()); }

    /// e^{-w}.
    double survival_probability() const noexcept { return std::exp(-value()); }

    /// Multiply by e^{amount}. Zero stays zero; an infinite amount saturates.
    void boost(double amount) noexcept
    {
        if (!is_zero()) {
            log_ += amount;
        }
    }

    void set_zero() noexcept { log_ = -std::numeric_limits<double>::infinity(); }

    friend constexpr bool operator==(Weight, Weight) = default;

private:
    constexpr explicit Weight(double log_value) noexcept : log_(log_value) {}

    double log_ = -std::numeric_limits<double>::infinity();
};

} // namespace tfcolor
