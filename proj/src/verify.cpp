#include "pillow/verify.hpp"

#include "pillow/ribbon.hpp"
#include "pillow/tree_volume.hpp"

#include <sstream>

namespace pillow {

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const CheckResult* VerifyReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

namespace {

std::string signature_name(const LayerSignature& s) {
    return "(" + std::to_string(s.m()) + "," + std::to_string(s.n()) + ")";
}

std::string table_string(const CoverSeries& s) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, v] : s) {
        out << (first ? "" : "; ") << "N=" << key[0] << " z=" << key[1] << " p=" << key[2] << ": " << to_string(v);
        first = false;
    }
    return first ? "{}" : out.str();
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& o, const std::function<void(const CheckResult&)>& progress) {
    VerifyReport report;
    auto record = [&](std::string name, bool ok, std::string lhs, std::string rhs) {
        report.checks.push_back({std::move(name), ok, std::move(lhs), std::move(rhs)});
        if (progress) progress(report.checks.back());
    };
    auto poly_check = [&](const std::string& name, const Polynomial& a, const Polynomial& b) {
        record(name, a == b, to_string(a), to_string(b));
    };

    bool fault_pending = o.inject_fault;
    for (int total = 1; total <= o.mn_max; ++total)
        for (int m = 0; m <= total; ++m) {
            const int n = total - m;
            if ((m - n) % 2 != 0 || m - n < -2) continue;
            const LayerSignature s(m, n);
            const std::string tag = signature_name(s);
            Polynomial closed = f_closed(s);
            if (fault_pending) {
                closed.add_term(closed.terms().begin()->first, BigRational(1));
                fault_pending = false;
            }
            poly_check("closed = recurrence " + tag, closed, f_recurrence(s));
            if (m == n || m == n - 2) poly_check("closed = diagonal " + tag, closed, f_special_diagonal(s));
            if (n == 0) poly_check("closed = Kontsevich " + tag, closed, f_kontsevich_base(m));
            if (3 * m + n <= o.oracle_darts_max) {
                RationalFunction lhs = hat_F(s);
                RationalFunction rhs = laplace_transform(closed, static_cast<std::size_t>(s.faces()));
                record("graph sum = transform of closed " + tag, rf_equal(lhs, rhs), to_string(lhs), to_string(rhs));
            }
            if (s.edges() <= o.fit_edges_max) {
                const std::string name = "lattice leading part = closed " + tag;
                try {
                    poly_check(name, leading_part_fit(s, minimal_fit_radius(s), o.jobs), closed);
                } catch (const std::runtime_error& e) {
                    record(name, false, e.what(), to_string(closed));
                }
            }
        }

    for (int K = 1; K <= o.K_max; ++K) {
        PiValue v = volume(K, o.jobs);
        PiValue e = expected_volume(K);
        record("volume K=" + std::to_string(K), v == e, to_string(v), to_string(e));
    }

    const int naive_max = std::min(o.cover_N_max, 5);
    if (naive_max >= 1) {
        NaiveTables naive = naive_tables(naive_max, 2, 6);
        CoverTables fast = cover_tables(naive_max, 2, 6, o.jobs, o.cache);
        record("frobenius = naive, all covers, N<=" + std::to_string(naive_max), fast.all == naive.tables.all,
               table_string(fast.all), table_string(naive.tables.all));
        record("frobenius = naive, connected covers, N<=" + std::to_string(naive_max),
               fast.connected == naive.tables.connected, table_string(fast.connected),
               table_string(naive.tables.connected));
    }
    return report;
}

}  // namespace pillow
