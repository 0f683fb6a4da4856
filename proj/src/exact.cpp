#include "pillow/exact.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace pillow {

namespace {

// Read-mostly table grown on demand: readers share, growth is serialized.
template <class T>
class GrowingTable {
public:
    template <class Extend>
    T get(std::size_t index, Extend extend) {
        {
            std::shared_lock lock(mutex_);
            if (index < values_.size()) return values_[index];
        }
        std::unique_lock lock(mutex_);
        while (values_.size() <= index) values_.push_back(extend(values_));
        return values_[index];
    }

private:
    std::shared_mutex mutex_;
    std::vector<T> values_;
};

GrowingTable<BigInt>& factorial_table() {
    static GrowingTable<BigInt> table;
    return table;
}

GrowingTable<BigRational>& bernoulli_table() {
    static GrowingTable<BigRational> table;
    return table;
}

}  // namespace

BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

BigRational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return BigRational(BigInt(text));
        return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_string(const BigRational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

PiValue::PiValue(BigRational coefficient, int pi_power)
    : coefficient_(std::move(coefficient)), pi_power_(pi_power) {
    if (pi_power < 0 || pi_power % 2 != 0)
        throw std::invalid_argument("pi power must be a nonnegative even integer");
}

double PiValue::approx() const {
    return coefficient_.get_d() * std::pow(std::numbers::pi, pi_power_);
}

PiValue& PiValue::operator+=(const PiValue& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) {
        *this = other;
        return *this;
    }
    if (pi_power_ != other.pi_power_)
        throw std::invalid_argument("cannot add values with different powers of pi");
    coefficient_ += other.coefficient_;
    return *this;
}

PiValue& PiValue::operator*=(const PiValue& other) {
    coefficient_ *= other.coefficient_;
    pi_power_ += other.pi_power_;
    return *this;
}

PiValue& PiValue::operator*=(const BigRational& scale) {
    coefficient_ *= scale;
    return *this;
}

bool operator==(const PiValue& a, const PiValue& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.pi_power_ == b.pi_power_ && a.coefficient_ == b.coefficient_;
}

std::string to_string(const PiValue& value) {
    std::ostringstream out;
    out << "pi^" << value.pi_power() << " * " << to_string(value.coefficient());
    return out.str();
}

BigInt factorial(unsigned n) {
    return factorial_table().get(n, [](const std::vector<BigInt>& known) {
        if (known.empty()) return BigInt(1);
        return BigInt(known.back() * static_cast<unsigned long>(known.size()));
    });
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt multinomial(unsigned top, const std::vector<unsigned>& parts) {
    unsigned long sum = std::accumulate(parts.begin(), parts.end(), 0ul);
    if (sum != top) throw std::invalid_argument("multinomial parts do not sum to the top index");
    BigInt r = factorial(top);
    for (unsigned p : parts) r /= factorial(p);
    return r;
}

BigRational bernoulli(unsigned n) {
    // sum_{j<k} C(k+1, j) B_j = -(k+1) B_k, i.e. the defining recurrence
    // sum_{j=0}^{k} C(k+1, j) B_j = 0 solved for B_k.
    return bernoulli_table().get(n, [](const std::vector<BigRational>& known) {
        unsigned k = static_cast<unsigned>(known.size());
        if (k == 0) return BigRational(1);
        BigRational acc = 0;
        for (unsigned j = 0; j < k; ++j) acc += BigRational(binomial(k + 1, j)) * known[j];
        BigRational b = -acc / BigRational(k + 1);
        b.canonicalize();
        return b;
    });
}

PiValue zeta_even(int s) {
    if (s < 2 || s % 2 != 0) throw std::invalid_argument("unsupported zeta argument");
    // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)
    const unsigned n = static_cast<unsigned>(s / 2);
    BigRational c = bernoulli(static_cast<unsigned>(s));
    if (n % 2 == 0) c = -c;
    BigInt two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(s));
    c *= BigRational(two_pow);
    c /= BigRational(2 * factorial(static_cast<unsigned>(s)));
    c.canonicalize();
    return PiValue(c, s);
}

}  // namespace pillow
