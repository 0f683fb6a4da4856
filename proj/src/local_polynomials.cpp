#include "pillow/local_polynomials.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace pillow {

LayerSignature::LayerSignature(int m, int n) : m_(m), n_(n) {
    if (m < 0 || n < 0) throw std::invalid_argument("layer signature must be nonnegative");
    if (m == 0 && n == 0) throw std::invalid_argument("layer signature (0,0) is empty");
    if ((m - n) % 2 != 0) throw std::invalid_argument("m - n must be even");
    if (m - n < -2) throw std::invalid_argument("layer must border at least one cylinder");
}

namespace {

std::vector<unsigned> as_unsigned(const std::vector<int>& v) {
    return {v.begin(), v.end()};
}

Monomial doubled(const std::vector<int>& b) {
    std::vector<int> e(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) e[i] = 2 * b[i];
    return Monomial(std::move(e));
}

}  // namespace

Polynomial f_closed(const LayerSignature& sig) {
    const int a = sig.half_degree();
    const int l = sig.faces();
    const BigRational lead = make_rational(factorial(static_cast<unsigned>(sig.m())),
                                           factorial(static_cast<unsigned>(a)));
    Polynomial out;
    for_each_composition(a, l, [&](const std::vector<int>& b) {
        BigInt mult = multinomial(static_cast<unsigned>(a), as_unsigned(b));
        out.add_term(doubled(b), lead * BigRational(mult * mult));
    });
    return out;
}

Polynomial f_kontsevich_base(int m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("Kontsevich base needs an even m >= 2");
    const int k = m / 2;
    const int l = k + 2;
    const BigInt mfact = factorial(static_cast<unsigned>(m));
    Polynomial out;
    for_each_composition(k - 1, l, [&](const std::vector<int>& ks) {
        BigRational c(mfact * multinomial(static_cast<unsigned>(k - 1), as_unsigned(ks)));
        for (int ki : ks) c /= BigRational(factorial(static_cast<unsigned>(ki)));
        out.add_term(doubled(ks), c);
    });
    return out;
}

Polynomial f_recurrence(const LayerSignature& sig) {
    const int m = sig.m();
    const int n = sig.n();
    if (n == 0) return f_kontsevich_base(m);

    int cur_m;
    Polynomial f(1);
    if (m > n) {
        cur_m = m - n;
        f = f_kontsevich_base(cur_m);
    } else if (m == n) {
        cur_m = 1;  // F_{1,1} = 1
    } else {
        cur_m = 0;  // F_{0,2} = 1
    }
    const auto arity = static_cast<std::size_t>(sig.faces());
    for (; cur_m < m; ++cur_m) f = apply_D(f, arity) * BigRational(2 * (cur_m + 1));
    return f;
}

Polynomial f_special_diagonal(const LayerSignature& sig) {
    const int m = sig.m();
    if (m == sig.n()) {
        Polynomial out;
        for (int i = 0; i <= m - 1; ++i) {
            BigInt c = binomial(static_cast<unsigned>(m - 1), static_cast<unsigned>(i));
            out.add_term(Monomial{2 * i, 2 * (m - 1 - i)}, BigRational(m * c * c));
        }
        return out;
    }
    if (m == sig.n() - 2) return Polynomial(Monomial{2 * m});
    throw std::invalid_argument("signature is not on a special diagonal");
}

const Polynomial& f_cached(const LayerSignature& sig) {
    static std::shared_mutex mutex;
    static std::map<LayerSignature, Polynomial> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(sig); it != cache.end()) return it->second;
    }
    Polynomial value = f_closed(sig);
    std::unique_lock lock(mutex);
    return cache.try_emplace(sig, std::move(value)).first->second;
}

}  // namespace pillow
