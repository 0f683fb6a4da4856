#include "pillow/covers.hpp"

#include "pillow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace pillow {

void validate_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && p[i] > p[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::string to_string(const Partition& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
    }
    return out;
}

Partition parse_partition(const std::string& text) {
    Partition p;
    if (text.empty()) return p;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed partition: " + text);
        }
        if (used != part.size()) throw std::invalid_argument("malformed partition: " + text);
        p.push_back(v);
    }
    validate_partition(p);
    return p;
}

namespace {

template <class Key, class Value>
class SharedMemo {
public:
    template <class Compute>
    Value get(const Key& key, Compute&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = map_.find(key); it != map_.end()) return it->second;
        }
        Value v = compute();
        std::unique_lock lock(mutex_);
        return map_.try_emplace(key, std::move(v)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<Key, Value> map_;
};

SharedMemo<Partition, BigInt>& dimension_memo() {
    static SharedMemo<Partition, BigInt> memo;
    return memo;
}

SharedMemo<std::pair<Partition, Partition>, BigInt>& character_memo() {
    static SharedMemo<std::pair<Partition, Partition>, BigInt> memo;
    return memo;
}

/// Murnaghan-Nakayama on beta sets; `cls` is consumed from the front.
BigInt mn_character(const Partition& shape, const Partition& cls) {
    if (cls.empty() || cls.front() == 1) return dimension(shape);
    return character_memo().get({shape, cls}, [&] {
        const int r = cls.front();
        const Partition rest(cls.begin() + 1, cls.end());
        const int L = static_cast<int>(shape.size());
        std::vector<int> beta(static_cast<std::size_t>(L));
        for (int i = 0; i < L; ++i) beta[i] = shape[i] + L - 1 - i;
        BigInt total = 0;
        for (int i = 0; i < L; ++i) {
            const int moved = beta[i] - r;
            if (moved < 0 || std::find(beta.begin(), beta.end(), moved) != beta.end()) continue;
            int between = 0;
            for (int b : beta)
                if (b > moved && b < beta[i]) ++between;
            std::vector<int> next = beta;
            next[i] = moved;
            std::sort(next.begin(), next.end(), std::greater<>());
            Partition smaller;
            for (int j = 0; j < L; ++j)
                if (int part = next[j] - (L - 1 - j); part > 0) smaller.push_back(part);
            BigInt value = mn_character(smaller, rest);
            if (between % 2) total -= value;
            else total += value;
        }
        return total;
    });
}

}  // namespace

BigInt dimension(const Partition& irrep) {
    validate_partition(irrep);
    return dimension_memo().get(irrep, [&] {
        BigInt hooks = 1;
        const int rows = static_cast<int>(irrep.size());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < irrep[i]; ++j) {
                int arm = irrep[i] - j - 1;
                int leg = 0;
                for (int k = i + 1; k < rows && irrep[k] > j; ++k) ++leg;
                hooks *= arm + leg + 1;
            }
        return BigInt(factorial(static_cast<unsigned>(partition_size(irrep))) / hooks);
    });
}

BigInt class_size(const Partition& cls) {
    validate_partition(cls);
    std::map<int, int> mult;
    for (int p : cls) ++mult[p];
    BigInt centralizer = 1;
    for (auto [p, m] : mult) {
        BigInt pm;
        mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
        centralizer *= pm * factorial(static_cast<unsigned>(m));
    }
    return factorial(static_cast<unsigned>(partition_size(cls))) / centralizer;
}

BigInt character(const Partition& irrep, const Partition& cls, CharacterCache* cache) {
    validate_partition(irrep);
    validate_partition(cls);
    if (partition_size(irrep) != partition_size(cls))
        throw std::invalid_argument("irrep and class sizes differ");
    if (cache)
        if (auto hit = cache->find(irrep, cls)) return *hit;
    BigInt value = mn_character(irrep, cls);
    if (cache) cache->store(irrep, cls, value);
    return value;
}

CharacterCache::CharacterCache(std::filesystem::path file) : file_(std::move(file)) {
    if (!load()) {
        values_.clear();
        discarded_ = true;
        dirty_ = true;
    }
}

std::optional<BigInt> CharacterCache::find(const Partition& irrep, const Partition& cls) const {
    std::shared_lock lock(mutex_);
    auto it = values_.find({irrep, cls});
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void CharacterCache::store(const Partition& irrep, const Partition& cls, const BigInt& value) {
    std::unique_lock lock(mutex_);
    if (values_.try_emplace({irrep, cls}, value).second) dirty_ = true;
}

std::size_t CharacterCache::size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
}

bool CharacterCache::load() {
    if (!file_ || !std::filesystem::exists(*file_)) return true;
    std::ifstream in(*file_);
    std::string line;
    if (!std::getline(in, line) || line != "pillowchar v1") return false;
    std::vector<std::pair<std::pair<Partition, Partition>, BigInt>> records;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::stringstream row(line);
            std::string field;
            while (std::getline(row, field, '|')) fields.push_back(field);
            if (fields.size() != 4) return false;
            const int n = std::stoi(fields[0]);
            Partition irrep = parse_partition(fields[1]);
            Partition cls = parse_partition(fields[2]);
            BigInt value(fields[3]);
            if (partition_size(irrep) != n || partition_size(cls) != n || n <= 0) return false;
            if (abs(value) > dimension(irrep)) return false;
            records.push_back({{std::move(irrep), std::move(cls)}, std::move(value)});
        }
    } catch (const std::exception&) {
        return false;
    }
    // Spot-check an evenly spaced sample against a fresh computation.
    const std::size_t checks = std::min<std::size_t>(16, records.size());
    for (std::size_t k = 0; k < checks; ++k) {
        const auto& [key, value] = records[k * records.size() / checks];
        if (mn_character(key.first, key.second) != value) return false;
    }
    for (auto& [key, value] : records) {
        auto [it, inserted] = values_.try_emplace(key, value);
        if (!inserted && it->second != value) return false;
    }
    return true;
}

void CharacterCache::save() const {
    if (!file_) return;
    std::shared_lock lock(mutex_);
    if (!dirty_) return;
    std::filesystem::create_directories(file_->parent_path());
    std::filesystem::path tmp = *file_;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write character cache " + tmp.string());
        out << "pillowchar v1\n";
        for (const auto& [key, value] : values_)
            out << partition_size(key.first) << '|' << to_string(key.first) << '|' << to_string(key.second) << '|'
                << value.get_str() << '\n';
        if (!out) throw std::runtime_error("cannot write character cache " + tmp.string());
    }
    std::filesystem::rename(tmp, *file_);
    dirty_ = false;
}

std::filesystem::path CharacterCache::default_path(const std::optional<std::filesystem::path>& cache_dir) {
    std::filesystem::path dir;
    if (cache_dir) {
        dir = *cache_dir;
    } else if (const char* env = std::getenv("PILLOW_CACHE_DIR"); env && *env) {
        dir = env;
    } else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        dir = std::filesystem::path(xdg) / "pillow";
    } else if (const char* home = std::getenv("HOME"); home && *home) {
        dir = std::filesystem::path(home) / ".cache" / "pillow";
    } else {
        dir = std::filesystem::temp_directory_path() / "pillow";
    }
    return dir / "characters.txt";
}

BigRational frobenius_count(const std::array<Partition, 4>& classes, CharacterCache* cache) {
    for (const auto& c : classes) validate_partition(c);
    const int n = partition_size(classes[0]);
    for (const auto& c : classes)
        if (partition_size(c) != n) throw std::invalid_argument("corner classes must have equal size");
    BigRational sum = 0;
    for (const Partition& irrep : partitions_of(n)) {
        BigInt prod = 1;
        for (const auto& c : classes) prod *= character(irrep, c, cache);
        BigInt d = dimension(irrep);
        sum += make_rational(prod, d * d);
    }
    BigInt sizes = 1;
    for (const auto& c : classes) sizes *= class_size(c);
    BigInt nf = factorial(static_cast<unsigned>(n));
    return sum * make_rational(sizes, nf * nf);
}

namespace {

using Perm = std::vector<int>;

Partition cycle_type(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    Partition out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

bool transitive(const std::array<const Perm*, 3>& gens) {
    const int n = static_cast<int>(gens[0]->size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const Perm* g : gens) {
            int y = (*g)[x];
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == n;
}

std::vector<Perm> all_permutations(int n) {
    std::vector<Perm> out;
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Calls fn(g1, g2, g3, g4, types) for quadruples with product identity
/// whose first three entries pass `keep`.
template <class Keep, class Fn>
void for_each_quadruple(int n, Keep&& keep, Fn&& fn) {
    std::vector<Perm> perms;
    std::vector<Partition> types;
    for (Perm& p : all_permutations(n)) {
        Partition t = cycle_type(p);
        if (!keep(t)) continue;
        perms.push_back(std::move(p));
        types.push_back(std::move(t));
    }
    Perm prod12(static_cast<std::size_t>(n)), g4(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = 0; b < perms.size(); ++b) {
            // Apply g1 first, then g2, then g3; g4 undoes the product.
            for (int x = 0; x < n; ++x) prod12[x] = perms[b][perms[a][x]];
            for (std::size_t c = 0; c < perms.size(); ++c) {
                for (int x = 0; x < n; ++x) g4[perms[c][prod12[x]]] = x;
                fn(perms[a], perms[b], perms[c], g4, types[a], types[b], types[c]);
            }
        }
}

void require_naive_degree(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("naive enumeration supports degree 1..5 only");
}

std::array<int, 2> zeros_poles(const Partition& t) {
    return {static_cast<int>(std::count(t.begin(), t.end(), 3)), static_cast<int>(std::count(t.begin(), t.end(), 1))};
}

bool small_parts(const Partition& t) { return t.empty() || t.front() <= 3; }

CoverSeries connected_part(const CoverSeries& all, int max_degree, int max_zeros, int max_poles) {
    // d C_d = d D_d - sum_{j<d} j C_j D_{d-j}, convolving in (zeros, poles).
    CoverSeries conn;
    auto get = [](const CoverSeries& s, int d, int z, int p) {
        auto it = s.find({d, z, p});
        return it == s.end() ? BigRational(0) : it->second;
    };
    for (int d = 1; d <= max_degree; ++d)
        for (int z = 0; z <= max_zeros; ++z)
            for (int p = 0; p <= max_poles; ++p) {
                BigRational v = BigRational(d) * get(all, d, z, p);
                for (int j = 1; j < d; ++j)
                    for (int z1 = 0; z1 <= z; ++z1)
                        for (int p1 = 0; p1 <= p; ++p1) {
                            auto cj = conn.find({j, z1, p1});
                            if (cj == conn.end()) continue;
                            auto dd = all.find({d - j, z - z1, p - p1});
                            if (dd == all.end()) continue;
                            v -= BigRational(j) * cj->second * dd->second;
                        }
                if (v != 0) {
                    v /= d;
                    conn[{d, z, p}] = v;
                }
            }
    return conn;
}

}  // namespace

NaiveCount naive_enumerate(const std::array<Partition, 4>& classes) {
    for (const auto& c : classes) validate_partition(c);
    const int n = partition_size(classes[0]);
    for (const auto& c : classes)
        if (partition_size(c) != n) throw std::invalid_argument("corner classes must have equal size");
    require_naive_degree(n);
    long all = 0, conn = 0;
    std::array<const Partition*, 3> firsts{&classes[0], &classes[1], &classes[2]};
    for_each_quadruple(
        n,
        [&](const Partition& t) { return t == *firsts[0] || t == *firsts[1] || t == *firsts[2]; },
        [&](const Perm& g1, const Perm& g2, const Perm& g3, const Perm& g4, const Partition& t1, const Partition& t2,
            const Partition& t3) {
            if (t1 != classes[0] || t2 != classes[1] || t3 != classes[2]) return;
            if (cycle_type(g4) != classes[3]) return;
            ++all;
            if (transitive({&g1, &g2, &g3})) ++conn;
        });
    const BigInt nf = factorial(static_cast<unsigned>(n));
    return {make_rational(all, nf), make_rational(conn, nf)};
}

NaiveTables naive_tables(int max_degree, int max_zeros, int max_poles) {
    NaiveTables out;
    for (int n = 1; n <= max_degree; ++n) {
        require_naive_degree(n);
        std::map<std::array<int, 3>, std::array<long, 2>> counts;
        for_each_quadruple(n, small_parts,
                           [&](const Perm& g1, const Perm& g2, const Perm& g3, const Perm& g4, const Partition& t1,
                               const Partition& t2, const Partition& t3) {
                               Partition t4 = cycle_type(g4);
                               if (!small_parts(t4)) return;
                               int z = 0, p = 0, cycles = 0;
                               for (const Partition* t : std::array<const Partition*, 4>{&t1, &t2, &t3, &t4}) {
                                   auto [tz, tp] = zeros_poles(*t);
                                   z += tz;
                                   p += tp;
                                   cycles += static_cast<int>(t->size());
                               }
                               if (z > max_zeros || p > max_poles) return;
                               auto& c = counts[{n, z, p}];
                               ++c[0];
                               if (transitive({&g1, &g2, &g3})) {
                                   ++c[1];
                                   auto& seen = out.euler_characteristics[{n, z, p}];
                                   int chi = -2 * n + cycles;
                                   if (std::find(seen.begin(), seen.end(), chi) == seen.end()) seen.push_back(chi);
                               }
                           });
        const BigInt nf = factorial(static_cast<unsigned>(n));
        for (const auto& [key, c] : counts) {
            if (c[0]) out.tables.all[key] = make_rational(c[0], nf);
            if (c[1]) out.tables.connected[key] = make_rational(c[1], nf);
        }
    }
    return out;
}

CoverTables cover_tables(int max_degree, int max_zeros, int max_poles, int jobs, CharacterCache* cache) {
    if (max_degree < 0 || max_zeros < 0 || max_poles < 0) throw std::invalid_argument("bounds must be nonnegative");
    CoverTables out;
    const int Z = max_zeros + 1, P = max_poles + 1;
    using Grid = std::vector<BigRational>;  // Z x P, row-major
    auto convolve = [&](const Grid& a, const Grid& b) {
        Grid c(static_cast<std::size_t>(Z * P), BigRational(0));
        for (int z1 = 0; z1 < Z; ++z1)
            for (int p1 = 0; p1 < P; ++p1) {
                const BigRational& x = a[z1 * P + p1];
                if (x == 0) continue;
                for (int z2 = 0; z1 + z2 < Z; ++z2)
                    for (int p2 = 0; p1 + p2 < P; ++p2) {
                        const BigRational& y = b[z2 * P + p2];
                        if (y != 0) c[(z1 + z2) * P + p1 + p2] += x * y;
                    }
            }
        return c;
    };

    for (int n = 1; n <= max_degree; ++n) {
        // Corner types 3^a 2^b 1^c within the grading bounds.
        std::vector<std::pair<std::array<int, 2>, Partition>> types;
        for (int a = 0; a <= max_zeros && 3 * a <= n; ++a)
            for (int c = 0; c <= max_poles && 3 * a + c <= n; ++c) {
                if ((n - 3 * a - c) % 2) continue;
                Partition t(static_cast<std::size_t>(a), 3);
                t.insert(t.end(), static_cast<std::size_t>((n - 3 * a - c) / 2), 2);
                t.insert(t.end(), static_cast<std::size_t>(c), 1);
                types.push_back({{a, c}, std::move(t)});
            }
        if (types.empty()) continue;
        std::vector<BigInt> sizes;
        for (const auto& [ac, t] : types) sizes.push_back(class_size(t));

        const std::vector<Partition> irreps = partitions_of(n);
        std::vector<Grid> partial(irreps.size());
        const BigInt nf = factorial(static_cast<unsigned>(n));
        parallel_for(irreps.size(), jobs, [&](std::size_t i) {
            const BigInt dim = dimension(irreps[i]);
            // Central character values f(C) = |C| chi(C) / chi(1) are integers.
            Grid g(static_cast<std::size_t>(Z * P), BigRational(0));
            for (std::size_t t = 0; t < types.size(); ++t) {
                BigInt f = sizes[t] * character(irreps[i], types[t].second, cache) / dim;
                g[types[t].first[0] * P + types[t].first[1]] = BigRational(f);
            }
            Grid g2 = convolve(g, g);
            Grid g4 = convolve(g2, g2);
            const BigRational w = make_rational(dim * dim, nf * nf);
            for (auto& x : g4) x *= w;
            partial[i] = std::move(g4);
        });
        Grid total(static_cast<std::size_t>(Z * P), BigRational(0));
        for (const Grid& g : partial)
            for (std::size_t k = 0; k < total.size(); ++k) total[k] += g[k];
        for (int z = 0; z < Z; ++z)
            for (int p = 0; p < P; ++p)
                if (total[z * P + p] != 0) out.all[{n, z, p}] = total[z * P + p];
    }
    out.connected = connected_part(out.all, max_degree, max_zeros, max_poles);
    return out;
}

std::map<int, BigRational> connected_counts(int K, int max_degree, int jobs, CharacterCache* cache) {
    if (K < 1) throw std::invalid_argument("K must be at least 1");
    CoverTables t = cover_tables(max_degree, K, K + 4, jobs, cache);
    std::map<int, BigRational> out;
    for (int n = 1; n <= max_degree; ++n) {
        auto it = t.connected.find({n, K, K + 4});
        out[n] = it == t.connected.end() ? BigRational(0) : it->second;
    }
    return out;
}

BigRational labelled_cover_count(int K, int N_max, int jobs, CharacterCache* cache) {
    BigRational sum = 0;
    for (const auto& [n, c] : connected_counts(K, N_max, jobs, cache)) sum += c;
    return sum * BigRational(factorial(static_cast<unsigned>(K)) * factorial(static_cast<unsigned>(K + 4)));
}

BigRational sq_count(int K, int N_max, int jobs, CharacterCache* cache) {
    return labelled_cover_count(K, N_max, jobs, cache) / 4;
}

double growth_ratio(int K, int N, const BigRational& squares) {
    const int dim = 2 * K + 2;
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double vol = std::pow(pi, dim) / std::pow(2.0L, K - 1);
    const long double scale = std::pow(static_cast<long double>(N), dim);
    return static_cast<double>(2.0L * dim * static_cast<long double>(squares.get_d()) / (vol * scale));
}

}  // namespace pillow
