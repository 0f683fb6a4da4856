#pragma once

// Genus-zero ribbon graphs with trivalent (zero) and univalent (pole)
// vertices, encoded as a pair of dart permutations: sigma rotates darts
// around their vertex, alpha swaps the two darts of an edge. Faces are the
// cycles of sigma o alpha; the darts of a face cycle are exactly the edge
// sides bordering that face.

#include "pillow/local_polynomials.hpp"

#include <map>
#include <string>
#include <vector>

namespace pillow {

enum class LabelMode {
    faces_only,  ///< faces labelled, vertices anonymous
    full,        ///< faces, zeros and poles all labelled
};

struct RibbonGraph {
    std::vector<int> sigma;
    std::vector<int> alpha;
    /// Per dart: 1-based label of its vertex among vertices of the same
    /// valence, or 0 when vertices are anonymous.
    std::vector<int> vertex_label;
    /// Per dart: 0-based label of the face it borders.
    std::vector<int> face;
    int num_faces = 0;

    int darts() const { return static_cast<int>(sigma.size()); }
    int edges() const { return darts() / 2; }
    int trivalent() const;
    int univalent() const;
    /// Euler characteristic V - E + F.
    int euler_characteristic() const;
    bool connected() const;
};

/// p_ij, the number of edges bordering faces i and j (i <= j), stored
/// row-major over the upper triangle of an l x l matrix.
class FacePairCounts {
public:
    FacePairCounts() = default;
    explicit FacePairCounts(int faces) : faces_(faces), counts_(static_cast<std::size_t>(faces * (faces + 1) / 2), 0) {}
    static FacePairCounts of(const RibbonGraph& g);

    int faces() const { return faces_; }
    int at(int i, int j) const { return counts_[index(i, j)]; }
    int& at(int i, int j) { return counts_[index(i, j)]; }
    /// The same counts with face i renamed to perm[i].
    FacePairCounts permuted(const std::vector<int>& perm) const;

    auto operator<=>(const FacePairCounts&) const = default;

private:
    std::size_t index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i * faces_ - i * (i - 1) / 2 + (j - i));
    }
    int faces_ = 0;
    std::vector<int> counts_;
};

/// Isomorphism classes of connected genus-zero ribbon graphs with the given
/// signature, in a deterministic order.
std::vector<RibbonGraph> enumerate_graphs(const LayerSignature& sig, LabelMode mode);

/// Canonical form under dart relabelings that preserve sigma, alpha and the
/// labels visible in `mode`. Equal codes iff isomorphic.
std::vector<int> canonical_code(const RibbonGraph& g, LabelMode mode);
RibbonGraph canonical_form(const RibbonGraph& g, LabelMode mode);
int automorphism_count(const RibbonGraph& g, LabelMode mode);

/// Number of assignments of positive half-integer lengths to the edges such
/// that face i has perimeter widths[i].
BigInt exact_lattice_count(const RibbonGraph& g, const std::vector<long>& widths);

/// Same count for an arbitrary face-pair structure with doubled
/// perimeters (2 * width, so odd values mean half-integer widths).
BigInt count_with_doubled_perimeters(const FacePairCounts& pairs, const std::vector<long>& doubled);

/// 2^{m+n-1} prod_e 1/lambda~(e), lambda~(e) the sum of the lambdas of the
/// faces on both sides of e (a face on both sides counted twice).
RationalFunction laplace_transform(const RibbonGraph& g);

/// Fully labelled genus-zero graphs grouped by face-pair structure:
/// structure -> number of labelled graphs having it.
const std::map<FacePairCounts, BigInt>& labelled_structures(const LayerSignature& sig);

/// Sum of graph transforms over all fully labelled graphs.
RationalFunction hat_F(const LayerSignature& sig);

/// Exact lattice counts summed over all fully labelled graphs.
BigInt labelled_lattice_count(const LayerSignature& sig, const std::vector<long>& widths);

/// hat F_{m+1,n+1} == 2(m+1) sum_i (-1/lambda_i) d/dlambda_i hat F_{m,n}.
bool verify_pole_recurrence(const LayerSignature& sig);

/// Top homogeneous component of the labelled lattice count, recovered from
/// exact counts along rays t * w for generic directions w in [1, radius]^l.
/// Throws std::runtime_error when the directions cannot determine it.
Polynomial leading_part_fit(const LayerSignature& sig, int sample_radius = 5, int jobs = 1);

/// Sample directions used by leading_part_fit: primitive vectors in
/// [1, radius]^faces avoiding every hyperplane sum eps_i w_i = 0 with
/// eps in {-1, 0, 1}.
std::vector<std::vector<long>> generic_directions(int faces, int radius);
/// Smallest radius >= `from` whose directions determine every coefficient.
int minimal_fit_radius(const LayerSignature& sig, int from = 5);

}  // namespace pillow
