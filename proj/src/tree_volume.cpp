#include "pillow/tree_volume.hpp"

#include "pillow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pillow {

std::vector<int> DecoratedTree::valences() const {
    std::vector<int> out(decoration.size(), 0);
    for (auto [u, v] : edges) {
        ++out[u];
        ++out[v];
    }
    return out;
}

std::vector<int> DecoratedTree::incident_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
        if (edges[e].first == v || edges[e].second == v) out.push_back(e);
    return out;
}

LayerSignature DecoratedTree::layer(int v) const {
    const int l = static_cast<int>(incident_edges(v).size());
    const int a = decoration[v];
    return LayerSignature(a + l - 1, a - l + 3);
}

namespace {

using Adjacency = std::vector<std::vector<int>>;

Adjacency adjacency(const DecoratedTree& t) {
    Adjacency adj(static_cast<std::size_t>(t.vertices()));
    for (auto [u, v] : t.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<int> centers(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    if (n <= 2) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[i] = i;
        return all;
    }
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        degree[v] = static_cast<int>(adj[v].size());
        if (degree[v] <= 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer)
            for (int u : adj[v])
                if (--degree[u] == 1) next.push_back(u);
        layer = std::move(next);
    }
    return layer;
}

std::string rooted_code(const Adjacency& adj, const std::vector<int>& dec, int v, int parent) {
    std::vector<std::string> children;
    for (int u : adj[v])
        if (u != parent) children.push_back(rooted_code(adj, dec, u, v));
    std::sort(children.begin(), children.end());
    std::string out = "(" + std::to_string(dec[v]);
    for (const auto& c : children) out += c;
    return out + ")";
}

long rooted_aut(const Adjacency& adj, const std::vector<int>& dec, int v, int parent) {
    long aut = 1;
    std::map<std::string, int> multiplicity;
    for (int u : adj[v])
        if (u != parent) {
            aut *= rooted_aut(adj, dec, u, v);
            ++multiplicity[rooted_code(adj, dec, u, v)];
        }
    for (const auto& [code, count] : multiplicity)
        for (int i = 2; i <= count; ++i) aut *= i;
    return aut;
}

/// Best root: the center with the smaller rooted code.
int canonical_root(const Adjacency& adj, const std::vector<int>& dec) {
    std::vector<int> cs = centers(adj);
    int best = cs.front();
    std::string best_code = rooted_code(adj, dec, best, -1);
    for (std::size_t i = 1; i < cs.size(); ++i) {
        std::string code = rooted_code(adj, dec, cs[i], -1);
        if (code < best_code) {
            best_code = std::move(code);
            best = cs[i];
        }
    }
    return best;
}

void preorder(const Adjacency& adj, const std::vector<int>& dec, int v, int parent, int parent_id,
              DecoratedTree& out) {
    const int id = out.vertices();
    out.decoration.push_back(dec[v]);
    if (parent_id >= 0) out.edges.emplace_back(parent_id, id);
    std::vector<std::pair<std::string, int>> children;
    for (int u : adj[v])
        if (u != parent) children.emplace_back(rooted_code(adj, dec, u, v), u);
    std::sort(children.begin(), children.end());
    for (const auto& [code, u] : children) preorder(adj, dec, u, v, id, out);
}

std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    for (int x : seq) {
        for (int leaf = 0; leaf < n; ++leaf)
            if (degree[leaf] == 1) {
                edges.emplace_back(leaf, x);
                --degree[leaf];
                --degree[x];
                break;
            }
    }
    int u = -1;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) {
            if (u < 0) {
                u = v;
            } else {
                edges.emplace_back(u, v);
                break;
            }
        }
    return edges;
}

/// Unlabelled free trees on n >= 2 vertices, one representative each.
std::vector<DecoratedTree> free_trees(int n) {
    std::map<std::string, DecoratedTree> shapes;
    std::vector<int> seq(static_cast<std::size_t>(std::max(n - 2, 0)), 0);
    while (true) {
        DecoratedTree t;
        t.edges = prufer_decode(seq, n);
        t.decoration.assign(static_cast<std::size_t>(n), 0);
        std::string code = canonical_code(t);
        if (!shapes.contains(code)) shapes.emplace(std::move(code), canonical_form(t));
        std::size_t k = 0;
        while (k < seq.size() && seq[k] == n - 1) seq[k++] = 0;
        if (k == seq.size()) break;
        ++seq[k];
    }
    std::vector<DecoratedTree> out;
    for (auto& [code, t] : shapes) out.push_back(std::move(t));
    return out;
}

void check_tree(const DecoratedTree& t) {
    if (t.vertices() < 1 || t.num_edges() != t.vertices() - 1)
        throw std::invalid_argument("not a tree: edge count must be one less than vertex count");
}

}  // namespace

std::string canonical_code(const DecoratedTree& t) {
    check_tree(t);
    Adjacency adj = adjacency(t);
    return rooted_code(adj, t.decoration, canonical_root(adj, t.decoration), -1);
}

DecoratedTree canonical_form(const DecoratedTree& t) {
    check_tree(t);
    Adjacency adj = adjacency(t);
    DecoratedTree out;
    preorder(adj, t.decoration, canonical_root(adj, t.decoration), -1, -1, out);
    return out;
}

long aut_order(const DecoratedTree& t) {
    check_tree(t);
    Adjacency adj = adjacency(t);
    std::vector<int> cs = centers(adj);
    if (cs.size() == 1) return rooted_aut(adj, t.decoration, cs[0], -1);
    // Bicentral: automorphisms fix the central edge, possibly swapping its ends.
    const int a = cs[0], b = cs[1];
    long aut = rooted_aut(adj, t.decoration, a, b) * rooted_aut(adj, t.decoration, b, a);
    if (rooted_code(adj, t.decoration, a, b) == rooted_code(adj, t.decoration, b, a)) aut *= 2;
    return aut;
}

std::vector<DecoratedTree> enumerate_decorated_trees(int K) {
    if (K < 1) throw std::invalid_argument("K must be at least 1");
    std::vector<DecoratedTree> out;
    for (int n = 2; n <= K + 2; ++n) {
        const int budget = K + 2 - n;
        std::map<std::string, DecoratedTree> classes;
        for (const DecoratedTree& shape : free_trees(n)) {
            std::vector<int> val = shape.valences();
            std::vector<int> low(static_cast<std::size_t>(n));
            int base = 0;
            for (int v = 0; v < n; ++v) base += low[v] = std::max(0, val[v] - 3);
            if (base > budget) continue;
            for_each_composition(budget - base, n, [&](const std::vector<int>& extra) {
                DecoratedTree t = shape;
                for (int v = 0; v < n; ++v) t.decoration[v] = low[v] + extra[v];
                std::string code = canonical_code(t);
                if (!classes.contains(code)) classes.emplace(std::move(code), canonical_form(t));
            });
        }
        for (auto& [code, t] : classes) out.push_back(std::move(t));
    }
    return out;
}

PiValue zeta_operator(const Monomial& mono, int k, int K) {
    if (k < 1) throw std::invalid_argument("zeta operator needs at least one variable");
    if (static_cast<int>(mono.support_size()) > k) throw std::invalid_argument("monomial uses a variable beyond k");
    int b = 0;
    for (int i = 0; i < k; ++i) {
        const int e = mono.exponent(static_cast<std::size_t>(i));
        if (e < 1) throw std::invalid_argument("zeta operator needs every exponent >= 1");
        if ((e - 1) % 2 != 0) throw std::invalid_argument("zeta operator needs odd exponents");
        b += e - 1;
    }
    if (b + 2 * k != 2 * K + 2) throw std::invalid_argument("monomial is off the dimension shell b + 2k = 2K + 2");
    PiValue out(make_rational(2, factorial(static_cast<unsigned>(b + 2 * k - 1))), 0);
    for (int i = 0; i < k; ++i) {
        const int e = mono.exponent(static_cast<std::size_t>(i));
        out *= BigRational(factorial(static_cast<unsigned>(e)));
        out *= zeta_even(e + 1);
    }
    return out;
}

TreeContribution tree_contribution(const DecoratedTree& t, int K) {
    check_tree(t);
    const int k = t.num_edges();
    const int n = t.vertices();
    TreeContribution c;
    c.tree = t;
    c.aut_order = aut_order(t);

    std::vector<unsigned> ms, ns;
    Polynomial integrand(1);
    for (int e = 0; e < k; ++e) integrand *= Polynomial::variable(static_cast<std::size_t>(e));
    for (int v = 0; v < n; ++v) {
        const LayerSignature sig = t.layer(v);
        ms.push_back(static_cast<unsigned>(sig.m()));
        ns.push_back(static_cast<unsigned>(sig.n()));
        std::vector<int> inc = t.incident_edges(v);
        std::vector<std::size_t> mapping(inc.begin(), inc.end());
        integrand *= f_cached(sig).rename_variables(mapping);
    }
    BigInt two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
    c.multinomial_factor = make_rational(two_k * multinomial(static_cast<unsigned>(K), ms) *
                                             multinomial(static_cast<unsigned>(K + 4), ns),
                                         c.aut_order);
    c.integrand = integrand;

    c.value = PiValue::zero(2 * K + 2);
    for (const auto& [mono, coeff] : integrand.terms()) {
        if (mono.degree() + k != 2 * K + 2)
            throw std::logic_error("integrand monomial off the homogeneity shell: degree " +
                                   std::to_string(mono.degree()) + " with " + std::to_string(k) + " edges");
        PiValue z = zeta_operator(mono, k, K) * (coeff * c.multinomial_factor);
        c.value += z;

        std::vector<int> args;
        for (int i = 0; i < k; ++i) args.push_back(mono.exponent(static_cast<std::size_t>(i)) + 1);
        std::sort(args.begin(), args.end());
        BigRational zc = coeff * c.multinomial_factor;
        int b = 0;
        for (int i = 0; i < k; ++i) {
            const int e = mono.exponent(static_cast<std::size_t>(i));
            b += e - 1;
            zc *= BigRational(factorial(static_cast<unsigned>(e)));
        }
        zc *= make_rational(2, factorial(static_cast<unsigned>(b + 2 * k - 1)));
        c.zeta_form[args] += zc;
    }
    return c;
}

std::vector<TreeContribution> volume_breakdown(int K, int jobs) {
    const std::vector<DecoratedTree> trees = enumerate_decorated_trees(K);
    // Fill the local polynomial cache before fanning out.
    for (const auto& t : trees)
        for (int v = 0; v < t.vertices(); ++v) f_cached(t.layer(v));
    std::vector<TreeContribution> out(trees.size());
    parallel_for(trees.size(), jobs, [&](std::size_t i) { out[i] = tree_contribution(trees[i], K); });
    return out;
}

PiValue volume(int K, int jobs) {
    PiValue total = PiValue::zero(2 * K + 2);
    for (const auto& c : volume_breakdown(K, jobs)) total += c.value;
    return total;
}

PiValue expected_volume(int K) {
    if (K < 1) throw std::invalid_argument("K must be at least 1");
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(K - 1));
    return PiValue(make_rational(1, den), 2 * K + 2);
}

std::string zeta_form_string(const std::map<std::vector<int>, BigRational>& form) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [args, coeff] : form) {
        if (coeff == 0) continue;
        if (!first) out << " + ";
        first = false;
        out << coeff.get_str();
        std::map<int, int> powers;
        for (int a : args) ++powers[a];
        for (const auto& [a, p] : powers) {
            out << "*zeta(" << a << ")";
            if (p > 1) out << "^" << p;
        }
    }
    return first ? "0" : out.str();
}

double zeta_sum_ratio(long N) {
    __int128 sum = 0;
    for (long w = 1; w <= N; ++w) sum += static_cast<__int128>(w) * w * w * (N / w);
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double zeta4 = pi * pi * pi * pi / 90.0L;
    const long double n = static_cast<long double>(N);
    const long double predicted = n * n * n * n / 24.0L * 6.0L * zeta4;
    return static_cast<double>(static_cast<long double>(sum) / predicted);
}

}  // namespace pillow
