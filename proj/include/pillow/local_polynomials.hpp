#pragma once

// Layer counting polynomials F_{m,n}: leading-order number of ways to glue
// l cylinders of widths w_1..w_l along a genus-zero half-integer metric
// ribbon graph with m labelled trivalent and n labelled univalent vertices.

#include "pillow/polynomial.hpp"

namespace pillow {

/// (zeros, poles) of one singular layer.
class LayerSignature {
public:
    /// Throws std::invalid_argument unless m, n >= 0, (m, n) != (0, 0),
    /// m - n is even and the layer touches at least one cylinder.
    LayerSignature(int m, int n);

    int m() const { return m_; }
    int n() const { return n_; }
    /// Number of faces (adjacent cylinders).
    int faces() const { return (m_ - n_) / 2 + 2; }
    /// Half of the polynomial degree.
    int half_degree() const { return (m_ + n_) / 2 - 1; }
    int edges() const { return (3 * m_ + n_) / 2; }

    auto operator<=>(const LayerSignature&) const = default;

private:
    int m_;
    int n_;
};

/// m!/a! * sum over compositions b of a into l parts of multinomial(a; b)^2 prod w_i^{2 b_i}.
Polynomial f_closed(const LayerSignature& sig);

/// Pure-trivalent layers from the Kontsevich volume formula, m even >= 2:
/// m! sum_{k_1+..+k_l = k-1} multinomial(k-1; k) prod w_i^{2k_i}/k_i!,
/// with k = m/2 and l = k + 2.
Polynomial f_kontsevich_base(int m);

/// F_{m+1,n+1} = 2(m+1) D(F_{m,n}) iterated from F_{m-n,0}, F_{1,1} = 1 or
/// F_{0,2} = 1.
Polynomial f_recurrence(const LayerSignature& sig);

/// Closed forms on the two diagonals m = n and m = n - 2. Throws for
/// other signatures.
Polynomial f_special_diagonal(const LayerSignature& sig);

/// Memoized f_closed, safe for concurrent callers.
const Polynomial& f_cached(const LayerSignature& sig);

/// Calls fn(b) for every composition of `total` into `parts` nonnegative parts,
/// in lexicographically decreasing order.
template <class Fn>
void for_each_composition(int total, int parts, Fn&& fn) {
    std::vector<int> b(static_cast<std::size_t>(parts), 0);
    auto rec = [&](auto& self, int index, int remaining) -> void {
        if (index == parts - 1) {
            b[static_cast<std::size_t>(index)] = remaining;
            fn(static_cast<const std::vector<int>&>(b));
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            b[static_cast<std::size_t>(index)] = v;
            self(self, index + 1, remaining - v);
        }
    };
    if (parts == 0) {
        if (total == 0) fn(static_cast<const std::vector<int>&>(b));
        return;
    }
    rec(rec, 0, total);
}

}  // namespace pillow
