#pragma once

// Decorated trees of cylinders and layers, their contributions to the
// volume of Q(1^K, -1^{K+4}), and the zeta operator that integrates out
// cylinder heights.

#include "pillow/local_polynomials.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pillow {

/// A tree whose vertices are singular layers and whose edges are
/// cylinders. Vertex v carries a_v; its layer has m_v = a_v + l_v - 1
/// zeros and n_v = a_v - l_v + 3 poles, l_v being the valence.
struct DecoratedTree {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> decoration;

    int vertices() const { return static_cast<int>(decoration.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    std::vector<int> valences() const;
    /// Indices of the edges incident to v, ascending.
    std::vector<int> incident_edges(int v) const;
    LayerSignature layer(int v) const;
};

/// Relabels vertices in canonical preorder (rooted at the smaller-coded
/// center, children by code) and lists edges as (parent, child) in that
/// order. Isomorphic decorated trees give identical results.
DecoratedTree canonical_form(const DecoratedTree& t);
std::string canonical_code(const DecoratedTree& t);

/// Order of the group of adjacency- and decoration-preserving vertex
/// permutations.
long aut_order(const DecoratedTree& t);

/// Admissible decorated trees for Q(1^K, -1^{K+4}) in canonical form,
/// sorted by edge count, then by canonical code.
std::vector<DecoratedTree> enumerate_decorated_trees(int K);

/// prod_i w_i^{b_i+1} -> 2/(b+2k-1)! prod_i (b_i+1)! zeta(b_i+2) over the
/// first k variables. Throws std::invalid_argument unless every exponent is
/// >= 1, every b_i is even, no variable beyond k occurs and b + 2k = 2K + 2.
PiValue zeta_operator(const Monomial& mono, int k, int K);

struct TreeContribution {
    DecoratedTree tree;
    long aut_order = 1;
    /// 2^k multinomial(K; m_v) multinomial(K+4; n_v) / |Aut|.
    BigRational multinomial_factor;
    /// w_1 ... w_k prod_v F_{m_v, n_v} in edge variables.
    Polynomial integrand;
    /// Sorted zeta arguments -> rational coefficient of the zeta product.
    std::map<std::vector<int>, BigRational> zeta_form;
    PiValue value;
};

/// Throws std::logic_error if a monomial of the integrand falls off the
/// homogeneity shell (degree + k != 2K + 2).
TreeContribution tree_contribution(const DecoratedTree& t, int K);

std::vector<TreeContribution> volume_breakdown(int K, int jobs = 1);
PiValue volume(int K, int jobs = 1);

/// pi^{2K+2} / 2^{K-1}.
PiValue expected_volume(int K);

/// "40*zeta(4)" style rendering of a zeta form.
std::string zeta_form_string(const std::map<std::vector<int>, BigRational>& form);

/// sum_{h w <= N} w^3 divided by N^4/4! * 3! * zeta(4).
double zeta_sum_ratio(long N);

}  // namespace pillow
