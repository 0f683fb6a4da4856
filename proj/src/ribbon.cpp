#include "pillow/ribbon.hpp"

#include "pillow/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace pillow {

int RibbonGraph::trivalent() const {
    int darts3 = 0;
    for (int d = 0; d < darts(); ++d)
        if (sigma[d] != d) ++darts3;
    return darts3 / 3;
}

int RibbonGraph::univalent() const {
    int count = 0;
    for (int d = 0; d < darts(); ++d)
        if (sigma[d] == d) ++count;
    return count;
}

int RibbonGraph::euler_characteristic() const {
    return trivalent() + univalent() - edges() + num_faces;
}

bool RibbonGraph::connected() const {
    if (darts() == 0) return true;
    std::vector<char> seen(sigma.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        for (int e : {sigma[d], alpha[d]}) {
            if (seen[e]) continue;
            seen[e] = 1;
            ++reached;
            stack.push_back(e);
        }
    }
    return reached == darts();
}

FacePairCounts FacePairCounts::of(const RibbonGraph& g) {
    FacePairCounts p(g.num_faces);
    for (int d = 0; d < g.darts(); ++d)
        if (d < g.alpha[d]) ++p.at(g.face[d], g.face[g.alpha[d]]);
    return p;
}

FacePairCounts FacePairCounts::permuted(const std::vector<int>& perm) const {
    FacePairCounts out(faces_);
    for (int i = 0; i < faces_; ++i)
        for (int j = i; j < faces_; ++j) out.at(perm[i], perm[j]) = at(i, j);
    return out;
}

namespace {

/// Labels the cycles of sigma o alpha in order of their smallest dart.
int label_faces(const std::vector<int>& sigma, const std::vector<int>& alpha, std::vector<int>& face) {
    const int n = static_cast<int>(sigma.size());
    face.assign(static_cast<std::size_t>(n), -1);
    int faces = 0;
    for (int d = 0; d < n; ++d) {
        if (face[d] >= 0) continue;
        for (int e = d; face[e] < 0; e = sigma[alpha[e]]) face[e] = faces;
        ++faces;
    }
    return faces;
}

RibbonGraph standard_skeleton(const LayerSignature& sig) {
    const int m = sig.m(), n = sig.n();
    RibbonGraph g;
    const int darts = 3 * m + n;
    g.sigma.resize(static_cast<std::size_t>(darts));
    g.vertex_label.resize(static_cast<std::size_t>(darts));
    for (int v = 0; v < m; ++v)
        for (int i = 0; i < 3; ++i) {
            g.sigma[3 * v + i] = 3 * v + (i + 1) % 3;
            g.vertex_label[3 * v + i] = v + 1;
        }
    for (int u = 0; u < n; ++u) {
        g.sigma[3 * m + u] = 3 * m + u;
        g.vertex_label[3 * m + u] = u + 1;
    }
    g.alpha.assign(static_cast<std::size_t>(darts), -1);
    return g;
}

/// Calls fn(g) for every connected genus-zero pairing of the standard
/// dart skeleton (vertex v owns darts 3v..3v+2, pole u owns dart 3m+u).
/// Each fully labelled graph is reached 3^m times, once per choice of
/// starting dart at each trivalent vertex.
template <class Fn>
void for_each_planar_pairing(const LayerSignature& sig, Fn&& fn) {
    RibbonGraph g = standard_skeleton(sig);
    const int darts = g.darts();
    const int want_faces = sig.faces();
    auto rec = [&](auto& self) -> void {
        int first = 0;
        while (first < darts && g.alpha[first] >= 0) ++first;
        if (first == darts) {
            g.num_faces = label_faces(g.sigma, g.alpha, g.face);
            if (g.num_faces == want_faces && g.connected()) fn(static_cast<const RibbonGraph&>(g));
            return;
        }
        for (int other = first + 1; other < darts; ++other) {
            if (g.alpha[other] >= 0) continue;
            g.alpha[first] = other;
            g.alpha[other] = first;
            self(self);
            g.alpha[first] = -1;
            g.alpha[other] = -1;
        }
    };
    rec(rec);
}

RibbonGraph with_faces_relabelled(RibbonGraph g, const std::vector<int>& perm) {
    for (int& f : g.face) f = perm[f];
    return g;
}

/// Relabels darts in breadth-first order from `root`.
std::vector<int> bfs_order(const RibbonGraph& g, int root, std::vector<int>& index) {
    index.assign(g.sigma.size(), -1);
    std::vector<int> order{root};
    index[root] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int d = order[head];
        for (int e : {g.sigma[d], g.alpha[d]}) {
            if (index[e] >= 0) continue;
            index[e] = static_cast<int>(order.size());
            order.push_back(e);
        }
    }
    return order;
}

std::vector<int> code_from_root(const RibbonGraph& g, int root, LabelMode mode) {
    std::vector<int> index;
    std::vector<int> order = bfs_order(g, root, index);
    std::vector<int> code;
    code.reserve(order.size() * 4);
    for (int d : order) {
        code.push_back(index[g.sigma[d]]);
        code.push_back(index[g.alpha[d]]);
        code.push_back(g.face[d]);
        code.push_back(mode == LabelMode::full ? g.vertex_label[d] : 0);
    }
    return code;
}

void require_connected(const RibbonGraph& g) {
    if (!g.connected()) throw std::invalid_argument("ribbon graph is not connected");
}

}  // namespace

std::vector<int> canonical_code(const RibbonGraph& g, LabelMode mode) {
    require_connected(g);
    std::vector<int> best;
    for (int root = 0; root < g.darts(); ++root) {
        std::vector<int> code = code_from_root(g, root, mode);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

int automorphism_count(const RibbonGraph& g, LabelMode mode) {
    const std::vector<int> best = canonical_code(g, mode);
    int count = 0;
    for (int root = 0; root < g.darts(); ++root)
        if (code_from_root(g, root, mode) == best) ++count;
    return count;
}

RibbonGraph canonical_form(const RibbonGraph& g, LabelMode mode) {
    require_connected(g);
    std::vector<int> best;
    int best_root = 0;
    for (int root = 0; root < g.darts(); ++root) {
        std::vector<int> code = code_from_root(g, root, mode);
        if (best.empty() || code < best) {
            best = std::move(code);
            best_root = root;
        }
    }
    std::vector<int> index;
    std::vector<int> order = bfs_order(g, best_root, index);
    RibbonGraph out;
    const auto n = g.sigma.size();
    out.sigma.resize(n);
    out.alpha.resize(n);
    out.face.resize(n);
    out.vertex_label.resize(n);
    out.num_faces = g.num_faces;
    for (std::size_t k = 0; k < n; ++k) {
        int d = order[k];
        out.sigma[k] = index[g.sigma[d]];
        out.alpha[k] = index[g.alpha[d]];
        out.face[k] = g.face[d];
        out.vertex_label[k] = mode == LabelMode::full ? g.vertex_label[d] : 0;
    }
    return out;
}

std::vector<RibbonGraph> enumerate_graphs(const LayerSignature& sig, LabelMode mode) {
    std::map<std::vector<int>, RibbonGraph> classes;
    std::vector<int> perm(static_cast<std::size_t>(sig.faces()));
    for_each_planar_pairing(sig, [&](const RibbonGraph& g) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            RibbonGraph h = with_faces_relabelled(g, perm);
            std::vector<int> code = canonical_code(h, mode);
            if (!classes.contains(code)) classes.emplace(std::move(code), canonical_form(h, mode));
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    std::vector<RibbonGraph> out;
    out.reserve(classes.size());
    for (auto& [code, g] : classes) out.push_back(std::move(g));
    return out;
}

namespace {

struct PairType {
    int i;
    int j;
    int edges;
};

/// Backtracking over the total doubled length s_t carried by each face
/// pair type t; p edges of one type share s_t in C(s_t - 1, p - 1) ways.
class LatticeCounter {
public:
    LatticeCounter(const FacePairCounts& pairs, const std::vector<long>& doubled)
        : remaining_(doubled), incident_(static_cast<std::size_t>(pairs.faces())) {
        for (int i = 0; i < pairs.faces(); ++i)
            for (int j = i; j < pairs.faces(); ++j)
                if (int p = pairs.at(i, j); p > 0) {
                    int t = static_cast<int>(types_.size());
                    types_.push_back({i, j, p});
                    incident_[i].push_back(t);
                    if (j != i) incident_[j].push_back(t);
                }
        assigned_.assign(types_.size(), 0);
    }

    BigInt run() {
        total_ = 0;
        for (long r : remaining_)
            if (r < 0) return 0;
        BigInt weight = 1;
        rec(weight, 0);
        return total_;
    }

private:
    static int coefficient(const PairType& t) { return t.i == t.j ? 2 : 1; }

    void assign(int t, long s) {
        const PairType& type = types_[t];
        assigned_[t] = 1;
        if (type.i == type.j) {
            remaining_[type.i] -= 2 * s;
        } else {
            remaining_[type.i] -= s;
            remaining_[type.j] -= s;
        }
    }

    void unassign(int t, long s) {
        const PairType& type = types_[t];
        assigned_[t] = 0;
        if (type.i == type.j) {
            remaining_[type.i] += 2 * s;
        } else {
            remaining_[type.i] += s;
            remaining_[type.j] += s;
        }
    }

    void descend(const BigInt& weight, int done, int t, long s) {
        const PairType& type = types_[t];
        assign(t, s);
        if (remaining_[type.i] >= 0 && remaining_[type.j] >= 0) {
            if (type.edges == 1) {
                rec(weight, done + 1);
            } else {
                BigInt w = weight * binomial(static_cast<unsigned>(s - 1), static_cast<unsigned>(type.edges - 1));
                rec(w, done + 1);
            }
        }
        unassign(t, s);
    }

    void rec(const BigInt& weight, int done) {
        int pick_face = -1;
        int pick_open = 0;
        for (std::size_t f = 0; f < incident_.size(); ++f) {
            int open = 0;
            long minimum = 0;
            for (int t : incident_[f])
                if (!assigned_[t]) {
                    ++open;
                    minimum += static_cast<long>(coefficient(types_[t])) * types_[t].edges;
                }
            if (open == 0) {
                if (remaining_[f] != 0) return;
                continue;
            }
            if (remaining_[f] < minimum) return;
            if (pick_face < 0 || open < pick_open) {
                pick_face = static_cast<int>(f);
                pick_open = open;
            }
        }
        if (done == static_cast<int>(types_.size())) {
            total_ += weight;
            return;
        }
        int t = -1;
        for (int u : incident_[pick_face])
            if (!assigned_[u]) {
                t = u;
                break;
            }
        const PairType& type = types_[t];
        const int c = coefficient(type);
        if (pick_open == 1) {
            long r = remaining_[pick_face];
            if (r % c != 0) return;
            long s = r / c;
            if (s >= type.edges) descend(weight, done, t, s);
            return;
        }
        long upper = type.i == type.j ? remaining_[type.i] / 2 : std::min(remaining_[type.i], remaining_[type.j]);
        for (long s = type.edges; s <= upper; ++s) descend(weight, done, t, s);
    }

    std::vector<long> remaining_;
    std::vector<std::vector<int>> incident_;
    std::vector<PairType> types_;
    std::vector<char> assigned_;
    BigInt total_;
};

std::vector<long> doubled_widths(const std::vector<long>& widths) {
    std::vector<long> out(widths.size());
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (widths[i] <= 0) throw std::invalid_argument("widths must be positive");
        out[i] = 2 * widths[i];
    }
    return out;
}

Polynomial edge_form(int i, int j) {
    if (i == j) return Polynomial::variable(static_cast<std::size_t>(i)) * BigRational(2);
    return Polynomial::variable(static_cast<std::size_t>(i)) + Polynomial::variable(static_cast<std::size_t>(j));
}

}  // namespace

BigInt count_with_doubled_perimeters(const FacePairCounts& pairs, const std::vector<long>& doubled) {
    if (static_cast<int>(doubled.size()) != pairs.faces())
        throw std::invalid_argument("one perimeter per face required");
    return LatticeCounter(pairs, doubled).run();
}

BigInt exact_lattice_count(const RibbonGraph& g, const std::vector<long>& widths) {
    if (static_cast<int>(widths.size()) != g.num_faces)
        throw std::invalid_argument("one width per face required");
    return count_with_doubled_perimeters(FacePairCounts::of(g), doubled_widths(widths));
}

RationalFunction laplace_transform(const RibbonGraph& g) {
    Polynomial den(1);
    for (int d = 0; d < g.darts(); ++d)
        if (d < g.alpha[d]) den *= edge_form(g.face[d], g.face[g.alpha[d]]);
    const int exponent = g.trivalent() + g.univalent() - 1;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
    return RationalFunction(Polynomial(BigRational(scale)), den);
}

const std::map<FacePairCounts, BigInt>& labelled_structures(const LayerSignature& sig) {
    static std::shared_mutex mutex;
    static std::map<LayerSignature, std::map<FacePairCounts, BigInt>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(sig); it != cache.end()) return it->second;
    }
    std::map<FacePairCounts, BigInt> counts;
    std::vector<int> perm(static_cast<std::size_t>(sig.faces()));
    for_each_planar_pairing(sig, [&](const RibbonGraph& g) {
        const FacePairCounts base = FacePairCounts::of(g);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            counts[base.permuted(perm)] += 1;
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    BigInt rotations;
    mpz_ui_pow_ui(rotations.get_mpz_t(), 3, static_cast<unsigned long>(sig.m()));
    for (auto& [p, c] : counts) {
        if (c % rotations != 0) throw std::logic_error("labelled graph multiplicity is not 3^m");
        c /= rotations;
    }
    std::unique_lock lock(mutex);
    return cache.try_emplace(sig, std::move(counts)).first->second;
}

RationalFunction hat_F(const LayerSignature& sig) {
    const auto& structures = labelled_structures(sig);
    const int l = sig.faces();
    FacePairCounts top(l);
    for (const auto& [p, c] : structures)
        for (int i = 0; i < l; ++i)
            for (int j = i; j < l; ++j) top.at(i, j) = std::max(top.at(i, j), p.at(i, j));

    std::map<std::pair<int, int>, std::vector<Polynomial>> powers;
    Polynomial den(1);
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            auto& pw = powers[{i, j}];
            pw.push_back(Polynomial(1));
            Polynomial form = edge_form(i, j);
            for (int k = 1; k <= top.at(i, j); ++k) pw.push_back(pw.back() * form);
            den *= pw.back();
        }

    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(sig.m() + sig.n() - 1));
    Polynomial num;
    for (const auto& [p, c] : structures) {
        Polynomial term(BigRational(c * scale));
        for (int i = 0; i < l; ++i)
            for (int j = i; j < l; ++j) term *= powers[{i, j}][static_cast<std::size_t>(top.at(i, j) - p.at(i, j))];
        num += term;
    }
    return RationalFunction(num, den);
}

BigInt labelled_lattice_count(const LayerSignature& sig, const std::vector<long>& widths) {
    if (static_cast<int>(widths.size()) != sig.faces())
        throw std::invalid_argument("one width per face required");
    const std::vector<long> doubled = doubled_widths(widths);
    BigInt total = 0;
    for (const auto& [p, c] : labelled_structures(sig)) total += c * count_with_doubled_perimeters(p, doubled);
    return total;
}

bool verify_pole_recurrence(const LayerSignature& sig) {
    const LayerSignature next(sig.m() + 1, sig.n() + 1);
    const RationalFunction lhs = hat_F(next);
    const RationalFunction f = hat_F(sig);
    const std::size_t l = static_cast<std::size_t>(sig.faces());
    const Polynomial& n = f.numerator();
    const Polynomial& d = f.denominator();

    // sum_i (-1/lambda_i) d_i (n/d) over the denominator d^2 prod lambda_i.
    Polynomial all_lambdas(1);
    for (std::size_t i = 0; i < l; ++i) all_lambdas *= Polynomial::variable(i);
    Polynomial num;
    for (std::size_t i = 0; i < l; ++i) {
        Polynomial others(1);
        for (std::size_t j = 0; j < l; ++j)
            if (j != i) others *= Polynomial::variable(j);
        num -= (n.derivative(i) * d - n * d.derivative(i)) * others;
    }
    num *= BigRational(2 * (sig.m() + 1));
    const RationalFunction rhs(num, d * d * all_lambdas);
    return rf_equal(lhs, rhs);
}

std::vector<std::vector<long>> generic_directions(int faces, int radius) {
    std::vector<std::vector<long>> out;
    if (faces <= 0 || radius <= 0) return out;
    std::vector<long> w(static_cast<std::size_t>(faces), 1);
    std::vector<int> eps(static_cast<std::size_t>(faces));
    auto on_wall = [&] {
        std::fill(eps.begin(), eps.end(), -1);
        while (true) {
            int nonzero = 0;
            long sum = 0;
            for (int i = 0; i < faces; ++i) {
                nonzero += eps[i] != 0;
                sum += eps[i] * w[i];
            }
            if (nonzero >= 2 && sum == 0) return true;
            int k = 0;
            while (k < faces && eps[k] == 1) eps[k++] = -1;
            if (k == faces) return false;
            ++eps[k];
        }
    };
    while (true) {
        long g = 0;
        for (long x : w) g = std::gcd(g, x);
        if (g == 1 && !on_wall()) out.push_back(w);
        int k = faces - 1;
        while (k >= 0 && w[k] == radius) w[k--] = 1;
        if (k < 0) break;
        ++w[k];
    }
    return out;
}

namespace {

/// Exact Gaussian elimination on [A | b]. Throws on rank deficiency or
/// inconsistent rows.
std::vector<BigRational> solve_overdetermined(std::vector<std::vector<BigRational>> rows, std::size_t unknowns) {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        BigRational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            BigRational factor = rows[r][col];
            for (std::size_t c = col; c <= unknowns; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < unknowns) throw std::runtime_error("insufficient samples to determine the leading part");
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][unknowns] != 0) throw std::runtime_error("lattice counts are inconsistent with a homogeneous leading part");
    std::vector<BigRational> x(unknowns);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rows[r][unknowns];
    return x;
}

/// Leading coefficient of t^degree in the counts along t * w, from the
/// degree-th forward difference over d+3 samples at t = P, 2P, ...
BigRational ray_leading_coefficient(const LayerSignature& sig, const std::vector<long>& w, int degree) {
    for (long period : {1L, 2L, 4L, 8L}) {
        const int samples = degree + 3;
        std::vector<BigInt> values;
        values.reserve(static_cast<std::size_t>(samples));
        for (int s = 1; s <= samples; ++s) {
            std::vector<long> widths(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) widths[i] = w[i] * period * s;
            values.push_back(labelled_lattice_count(sig, widths));
        }
        std::vector<std::vector<BigInt>> diffs{values};
        for (int k = 1; k <= degree + 1; ++k) {
            const auto& prev = diffs.back();
            std::vector<BigInt> next(prev.size() - 1);
            for (std::size_t i = 0; i + 1 < prev.size(); ++i) next[i] = prev[i + 1] - prev[i];
            diffs.push_back(std::move(next));
        }
        const auto& excess = diffs[static_cast<std::size_t>(degree + 1)];
        if (!std::all_of(excess.begin(), excess.end(), [](const BigInt& v) { return v == 0; })) continue;
        BigInt scale = factorial(static_cast<unsigned>(degree));
        for (int k = 0; k < degree; ++k) scale *= period;
        return make_rational(diffs[static_cast<std::size_t>(degree)][0], scale);
    }
    throw std::runtime_error("lattice counts along a ray are not polynomial for any tried period");
}

}  // namespace

int minimal_fit_radius(const LayerSignature& sig, int from) {
    const int degree = sig.m() + sig.n() - 2;
    const int l = sig.faces();
    std::vector<Monomial> monomials;
    for_each_composition(degree, l, [&](const std::vector<int>& e) { monomials.emplace_back(e); });
    for (int r = std::max(from, 1); r <= 4 * std::max(from, 1) + 16; ++r) {
        const auto directions = generic_directions(l, r);
        if (directions.size() < monomials.size()) continue;
        std::vector<std::vector<BigRational>> rows;
        for (const auto& w : directions) {
            std::vector<BigRational> row;
            for (const Monomial& mono : monomials) row.push_back(evaluate(Polynomial(mono), std::span<const long>(w)));
            row.emplace_back(0);
            rows.push_back(std::move(row));
        }
        try {
            solve_overdetermined(std::move(rows), monomials.size());
            return r;
        } catch (const std::runtime_error&) {
        }
    }
    throw std::runtime_error("insufficient samples to determine the leading part");
}

Polynomial leading_part_fit(const LayerSignature& sig, int sample_radius, int jobs) {
    const int degree = sig.m() + sig.n() - 2;
    const int l = sig.faces();
    std::vector<Monomial> monomials;
    for_each_composition(degree, l, [&](const std::vector<int>& e) { monomials.emplace_back(e); });

    const auto directions = generic_directions(l, sample_radius);
    if (directions.size() < monomials.size()) throw std::runtime_error("insufficient samples to determine the leading part");

    labelled_structures(sig);
    std::vector<BigRational> heights(directions.size());
    parallel_for(directions.size(), jobs,
                 [&](std::size_t k) { heights[k] = ray_leading_coefficient(sig, directions[k], degree); });

    std::vector<std::vector<BigRational>> rows;
    rows.reserve(directions.size());
    for (std::size_t k = 0; k < directions.size(); ++k) {
        std::vector<BigRational> row;
        row.reserve(monomials.size() + 1);
        for (const Monomial& mono : monomials) row.push_back(evaluate(Polynomial(mono), std::span<const long>(directions[k])));
        row.push_back(heights[k]);
        rows.push_back(std::move(row));
    }
    const std::vector<BigRational> coeffs = solve_overdetermined(std::move(rows), monomials.size());
    Polynomial out;
    for (std::size_t i = 0; i < monomials.size(); ++i) out.add_term(monomials[i], coeffs[i]);
    return out;
}

}  // namespace pillow
