#pragma once

// Sparse multivariate polynomials with exact rational coefficients, and
// rational functions built from them. Variables are positional: index i
// stands for w_{i+1} (or lambda_{i+1} in the Laplace domain).

#include "pillow/exact.hpp"

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pillow {

/// Exponent vector. Trailing zeros are stripped so that equality and
/// ordering compare padded vectors.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents);
    Monomial(std::initializer_list<int> exponents)
        : Monomial(std::vector<int>(exponents)) {}

    /// x_index^power
    static Monomial variable(std::size_t index, int power = 1);

    int exponent(std::size_t index) const {
        return index < exponents_.size() ? exponents_[index] : 0;
    }
    const std::vector<int>& exponents() const { return exponents_; }
    /// Exponents padded with zeros to at least `arity` entries.
    std::vector<int> padded(std::size_t arity) const;
    /// One past the highest variable index with a nonzero exponent.
    std::size_t support_size() const { return exponents_.size(); }
    int degree() const;

    Monomial operator*(const Monomial& other) const;

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<int> exponents_;
};

class Polynomial {
public:
    using Terms = std::map<Monomial, BigRational>;

    Polynomial() = default;
    Polynomial(const BigRational& constant);  // NOLINT(google-explicit-constructor)
    Polynomial(int constant) : Polynomial(BigRational(constant)) {}  // NOLINT
    Polynomial(const Monomial& monomial, const BigRational& coefficient = 1);

    static Polynomial variable(std::size_t index) { return Polynomial(Monomial::variable(index)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    BigRational coefficient(const Monomial& m) const;
    /// One past the highest variable index that occurs.
    std::size_t num_variables() const;

    /// Unique total degree, or nullopt when the polynomial is zero or
    /// not homogeneous.
    std::optional<int> homogeneous_degree() const;
    int total_degree() const;  // -1 for the zero polynomial
    /// The homogeneous component of the given total degree.
    Polynomial component(int degree) const;

    void add_term(const Monomial& m, const BigRational& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const BigRational& scale);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= BigRational(-1); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const BigRational& s) { return a *= s; }
    friend Polynomial operator*(const BigRational& s, Polynomial a) { return a *= s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned exponent) const;

    /// Renames variable i to mapping[i]. Variables beyond the mapping must not occur.
    Polynomial rename_variables(std::span<const std::size_t> mapping) const;

    /// Partial derivative with respect to variable `index`.
    Polynomial derivative(std::size_t index) const;

private:
    Terms terms_;
};

/// D = sum over `variables` of D_w, with D_w(w^k) = w^{k+2}/(k+2) extended
/// linearly (other variables untouched).
Polynomial apply_D(const Polynomial& p, std::span<const std::size_t> variables);
/// apply_D over variables 0..arity-1.
Polynomial apply_D(const Polynomial& p, std::size_t arity);

/// Throws std::invalid_argument when the point has fewer coordinates
/// than the polynomial has variables.
BigRational evaluate(const Polynomial& p, std::span<const BigRational> point);
BigRational evaluate(const Polynomial& p, std::span<const long> point);

/// Invariance under every permutation of variables 0..arity-1. Variables
/// at index >= arity must not occur.
bool is_symmetric(const Polynomial& p, std::size_t arity);

/// Human-readable rendering such as "2*w1^2 + 2*w2^2".
std::string to_string(const Polynomial& p, const std::string& var = "w");

/// Quotient of two polynomials. Not reduced; equality cross-multiplies.
class RationalFunction {
public:
    RationalFunction() : RationalFunction(Polynomial(0)) {}
    RationalFunction(Polynomial numerator, Polynomial denominator = Polynomial(1));  // NOLINT

    const Polynomial& numerator() const { return numerator_; }
    const Polynomial& denominator() const { return denominator_; }

    RationalFunction& operator*=(const BigRational& scale);

private:
    Polynomial numerator_;
    Polynomial denominator_;
};

RationalFunction rf_add(const RationalFunction& f, const RationalFunction& g);
RationalFunction rf_mul(const RationalFunction& f, const RationalFunction& g);
RationalFunction rf_neg(const RationalFunction& f);
bool rf_equal(const RationalFunction& f, const RationalFunction& g);
/// d f / d lambda_var by the quotient rule.
RationalFunction rf_partial(const RationalFunction& f, std::size_t var);
/// Numerator degree minus denominator degree when both are homogeneous.
std::optional<int> rf_homogeneous_degree(const RationalFunction& f);

inline RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) { return rf_add(f, g); }
inline RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) { return rf_mul(f, g); }

std::string to_string(const RationalFunction& f);

/// Laplace transform in `arity` variables, termwise
/// w^b -> b! / lambda^{b+1}, over a common denominator prod lambda_i^{B_i+1}.
RationalFunction laplace_transform(const Polynomial& p, std::size_t arity);

}  // namespace pillow
