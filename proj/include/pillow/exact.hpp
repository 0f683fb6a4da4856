#pragma once

// Exact rational arithmetic, Bernoulli numbers and zeta values at even
// integers as rational multiples of powers of pi.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pillow {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den = 1);

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
BigRational parse_rational(const std::string& text);

std::string to_string(const BigInt& value);
std::string to_string(const BigRational& value);  // always "num/den"

/// A rational multiple of an even power of pi.
///
/// Values of different pi powers do not add, except that a zero
/// coefficient acts as the additive identity for any power.
class PiValue {
public:
    PiValue() = default;
    PiValue(BigRational coefficient, int pi_power);

    static PiValue zero(int pi_power) { return PiValue(0, pi_power); }

    const BigRational& coefficient() const { return coefficient_; }
    int pi_power() const { return pi_power_; }
    bool is_zero() const { return coefficient_ == 0; }

    /// Decimal approximation, display only.
    double approx() const;

    PiValue& operator+=(const PiValue& other);
    PiValue& operator*=(const PiValue& other);
    PiValue& operator*=(const BigRational& scale);

    friend PiValue operator+(PiValue a, const PiValue& b) { return a += b; }
    friend PiValue operator*(PiValue a, const PiValue& b) { return a *= b; }
    friend PiValue operator*(PiValue a, const BigRational& s) { return a *= s; }
    friend PiValue operator*(const BigRational& s, PiValue a) { return a *= s; }

    friend bool operator==(const PiValue& a, const PiValue& b);
    friend bool operator!=(const PiValue& a, const PiValue& b) { return !(a == b); }

private:
    BigRational coefficient_{0};
    int pi_power_ = 0;
};

/// "pi^4 * 1/1" style rendering.
std::string to_string(const PiValue& value);

/// B_n with B_1 = -1/2. Memoized process-wide.
BigRational bernoulli(unsigned n);

/// zeta(s) for even s >= 2 as an exact multiple of pi^s.
PiValue zeta_even(int s);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// top! / (parts[0]! parts[1]! ...). Throws std::invalid_argument when the
/// parts do not sum to top.
BigInt multinomial(unsigned top, const std::vector<unsigned>& parts);

}  // namespace pillow
