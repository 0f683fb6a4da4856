#pragma once

// Pillowcase covers counted through symmetric group characters: corner
// monodromies g_1..g_4 in S_N with g_1 g_2 g_3 g_4 = 1, every cycle of
// length 1, 2 or 3. Cycles of length 3 are simple zeros, fixed points are
// simple poles.

#include "pillow/exact.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace pillow {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

/// Throws std::invalid_argument unless parts are positive and sorted descending.
void validate_partition(const Partition& p);
int partition_size(const Partition& p);
std::vector<Partition> partitions_of(int n);
std::string to_string(const Partition& p);  // "3,2,1"
Partition parse_partition(const std::string& text);

/// Number of standard tableaux, by the hook length formula.
BigInt dimension(const Partition& irrep);
/// Size of the conjugacy class with the given cycle type.
BigInt class_size(const Partition& cls);

/// Persistent character values. File format: header line "pillowchar v1",
/// then one "N|irrep|class|value" record per line. A file that fails
/// validation is discarded as a whole.
class CharacterCache {
public:
    CharacterCache() = default;
    explicit CharacterCache(std::filesystem::path file);

    std::optional<BigInt> find(const Partition& irrep, const Partition& cls) const;
    void store(const Partition& irrep, const Partition& cls, const BigInt& value);
    std::size_t size() const;
    /// True when an existing file was rejected on load.
    bool discarded() const { return discarded_; }
    const std::optional<std::filesystem::path>& file() const { return file_; }
    /// Writes through a temporary file and rename. No-op without a file or
    /// when nothing changed since load.
    void save() const;

    /// --cache-dir if given, else $PILLOW_CACHE_DIR, else
    /// $XDG_CACHE_HOME/pillow, else ~/.cache/pillow; file characters.txt.
    static std::filesystem::path default_path(const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

private:
    bool load();

    std::optional<std::filesystem::path> file_;
    mutable std::shared_mutex mutex_;
    std::map<std::pair<Partition, Partition>, BigInt> values_;
    bool discarded_ = false;
    mutable bool dirty_ = false;
};

/// chi^irrep(cls) by the Murnaghan-Nakayama rule, removing the largest
/// class part first. Memoized process-wide; consults and fills `cache`
/// when given. Throws std::invalid_argument on a size mismatch.
BigInt character(const Partition& irrep, const Partition& cls, CharacterCache* cache = nullptr);

/// #{(g_1..g_4): g_i in C_i, g_1 g_2 g_3 g_4 = 1} / N!.
BigRational frobenius_count(const std::array<Partition, 4>& classes, CharacterCache* cache = nullptr);

/// Weighted counts from direct search over S_N, N <= 5.
struct NaiveCount {
    BigRational all;        ///< quadruples / N!
    BigRational connected;  ///< transitive quadruples / N!
};
NaiveCount naive_enumerate(const std::array<Partition, 4>& classes);

/// (degree, zeros, poles) -> weighted count.
using CoverSeries = std::map<std::array<int, 3>, BigRational>;

struct CoverTables {
    CoverSeries all;
    CoverSeries connected;
};

/// Counts summed over every assignment of corner cycle types, graded by
/// degree <= max_degree, zeros <= max_zeros and poles <= max_poles; the
/// connected part is extracted by the logarithm of the graded series.
CoverTables cover_tables(int max_degree, int max_zeros, int max_poles, int jobs = 1,
                         CharacterCache* cache = nullptr);

/// The same tables by direct search (max_degree <= 5), plus the Euler
/// characteristics observed for connected covers in each grade.
struct NaiveTables {
    CoverTables tables;
    std::map<std::array<int, 3>, std::vector<int>> euler_characteristics;
};
NaiveTables naive_tables(int max_degree, int max_zeros, int max_poles);

/// Connected weighted counts with exactly K zeros and K + 4 poles, by degree.
std::map<int, BigRational> connected_counts(int K, int max_degree, int jobs = 1, CharacterCache* cache = nullptr);

/// K! (K+4)! sum_{N <= N_max} connected_counts: covers with numbered
/// zeros, poles and corners.
BigRational labelled_cover_count(int K, int N_max, int jobs = 1, CharacterCache* cache = nullptr);

/// Square-tiled surfaces with numbered singularities and at most N_max
/// squares of each colour: labelled_cover_count / 4, the four corner
/// labellings of one surface being related by half-period translations.
BigRational sq_count(int K, int N_max, int jobs = 1, CharacterCache* cache = nullptr);

/// 2 dim Sq_N / (Vol N^dim) with dim = 2K + 2; tends to 1.
double growth_ratio(int K, int N, const BigRational& squares);

}  // namespace pillow
