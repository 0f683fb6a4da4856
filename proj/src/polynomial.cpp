#include "pillow/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pillow {

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
    for (int e : exponents_)
        if (e < 0) throw std::invalid_argument("negative exponent");
    while (!exponents_.empty() && exponents_.back() == 0) exponents_.pop_back();
}

Monomial Monomial::variable(std::size_t index, int power) {
    std::vector<int> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
}

std::vector<int> Monomial::padded(std::size_t arity) const {
    std::vector<int> e = exponents_;
    if (e.size() < arity) e.resize(arity, 0);
    return e;
}

int Monomial::degree() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }

Monomial Monomial::operator*(const Monomial& other) const {
    std::vector<int> e(std::max(exponents_.size(), other.exponents_.size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponent(i) + other.exponent(i);
    return Monomial(std::move(e));
}

Polynomial::Polynomial(const BigRational& constant) {
    if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial::Polynomial(const Monomial& monomial, const BigRational& coefficient) {
    if (coefficient != 0) terms_.emplace(monomial, coefficient);
}

BigRational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigRational(0) : it->second;
}

std::size_t Polynomial::num_variables() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.support_size());
    return n;
}

std::optional<int> Polynomial::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d) return std::nullopt;
    return d;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Polynomial Polynomial::component(int degree) const {
    Polynomial out;
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) out.terms_.emplace(m, c);
    return out;
}

void Polynomial::add_term(const Monomial& m, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial& Polynomial::operator*=(const BigRational& scale) {
    if (scale == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scale;
    return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result(1), base = *this;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

Polynomial Polynomial::rename_variables(std::span<const std::size_t> mapping) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        if (m.support_size() > mapping.size())
            throw std::invalid_argument("variable outside the renaming map");
        std::size_t width = 0;
        for (std::size_t i = 0; i < m.support_size(); ++i)
            if (m.exponent(i)) width = std::max(width, mapping[i] + 1);
        std::vector<int> e(width, 0);
        for (std::size_t i = 0; i < m.support_size(); ++i)
            if (m.exponent(i)) e[mapping[i]] += m.exponent(i);
        out.add_term(Monomial(std::move(e)), c);
    }
    return out;
}

Polynomial Polynomial::derivative(std::size_t index) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        int k = m.exponent(index);
        if (k == 0) continue;
        auto e = m.padded(index + 1);
        e[index] -= 1;
        out.add_term(Monomial(std::move(e)), c * k);
    }
    return out;
}

Polynomial apply_D(const Polynomial& p, std::span<const std::size_t> variables) {
    Polynomial out;
    for (std::size_t v : variables) {
        for (const auto& [m, c] : p.terms()) {
            auto e = m.padded(v + 1);
            int k = e[v];
            e[v] += 2;
            out.add_term(Monomial(std::move(e)), c / BigRational(k + 2));
        }
    }
    return out;
}

Polynomial apply_D(const Polynomial& p, std::size_t arity) {
    std::vector<std::size_t> vars(arity);
    std::iota(vars.begin(), vars.end(), 0);
    return apply_D(p, vars);
}

namespace {

template <class Coord>
BigRational evaluate_impl(const Polynomial& p, std::span<const Coord> point) {
    if (point.size() < p.num_variables())
        throw std::invalid_argument("evaluation point has too few coordinates");
    BigRational total = 0;
    for (const auto& [m, c] : p.terms()) {
        BigRational term = c;
        for (std::size_t i = 0; i < m.support_size(); ++i) {
            BigRational x(point[i]);
            for (int k = 0; k < m.exponent(i); ++k) term *= x;
        }
        total += term;
    }
    return total;
}

}  // namespace

BigRational evaluate(const Polynomial& p, std::span<const BigRational> point) {
    return evaluate_impl(p, point);
}

BigRational evaluate(const Polynomial& p, std::span<const long> point) {
    return evaluate_impl(p, point);
}

bool is_symmetric(const Polynomial& p, std::size_t arity) {
    if (p.num_variables() > arity) return false;
    if (arity < 2) return true;
    // A transposition and a full cycle generate the symmetric group.
    std::vector<std::size_t> swap01(arity), cycle(arity);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (std::size_t i = 0; i < arity; ++i) cycle[i] = (i + 1) % arity;
    return p.rename_variables(swap01) == p && p.rename_variables(cycle) == p;
}

std::string to_string(const Polynomial& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    // Highest exponent vectors first: w1^2 before w2^2.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        BigRational mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        bool has_vars = m.degree() > 0;
        bool unit = mag == 1;
        if (!unit || !has_vars) {
            out << mag.get_str();
            if (has_vars) out << "*";
        }
        bool first_var = true;
        for (std::size_t i = 0; i < m.support_size(); ++i) {
            int e = m.exponent(i);
            if (!e) continue;
            if (!first_var) out << "*";
            first_var = false;
            out << var << (i + 1);
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (denominator_.is_zero()) throw std::domain_error("rational function with zero denominator");
}

RationalFunction& RationalFunction::operator*=(const BigRational& scale) {
    numerator_ *= scale;
    return *this;
}

RationalFunction rf_add(const RationalFunction& f, const RationalFunction& g) {
    if (f.denominator() == g.denominator())
        return RationalFunction(f.numerator() + g.numerator(), f.denominator());
    return RationalFunction(f.numerator() * g.denominator() + g.numerator() * f.denominator(),
                            f.denominator() * g.denominator());
}

RationalFunction rf_mul(const RationalFunction& f, const RationalFunction& g) {
    return RationalFunction(f.numerator() * g.numerator(), f.denominator() * g.denominator());
}

RationalFunction rf_neg(const RationalFunction& f) {
    return RationalFunction(-f.numerator(), f.denominator());
}

bool rf_equal(const RationalFunction& f, const RationalFunction& g) {
    return f.numerator() * g.denominator() == g.numerator() * f.denominator();
}

RationalFunction rf_partial(const RationalFunction& f, std::size_t var) {
    const Polynomial& n = f.numerator();
    const Polynomial& d = f.denominator();
    return RationalFunction(n.derivative(var) * d - n * d.derivative(var), d * d);
}

std::optional<int> rf_homogeneous_degree(const RationalFunction& f) {
    auto dn = f.numerator().homogeneous_degree();
    auto dd = f.denominator().homogeneous_degree();
    if (!dn || !dd) return std::nullopt;
    return *dn - *dd;
}

std::string to_string(const RationalFunction& f) {
    return "(" + to_string(f.numerator(), "l") + ") / (" + to_string(f.denominator(), "l") + ")";
}

RationalFunction laplace_transform(const Polynomial& p, std::size_t arity) {
    if (p.num_variables() > arity) throw std::invalid_argument("polynomial has more variables than arity");
    std::vector<int> top(arity, 0);
    for (const auto& [m, c] : p.terms())
        for (std::size_t i = 0; i < arity; ++i) top[i] = std::max(top[i], m.exponent(i));

    std::vector<int> den_exp(arity);
    for (std::size_t i = 0; i < arity; ++i) den_exp[i] = top[i] + 1;

    Polynomial numerator;
    for (const auto& [m, c] : p.terms()) {
        BigRational coeff = c;
        std::vector<int> e(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            coeff *= BigRational(factorial(static_cast<unsigned>(m.exponent(i))));
            e[i] = top[i] - m.exponent(i);
        }
        numerator.add_term(Monomial(std::move(e)), coeff);
    }
    return RationalFunction(std::move(numerator), Polynomial(Monomial(std::move(den_exp))));
}

}  // namespace pillow
