// pillow: local polynomials, ribbon graph oracle, tree volumes and
// pillowcase cover counts from the command line.

#include "pillow/covers.hpp"
#include "pillow/parallel.hpp"
#include "pillow/render.hpp"
#include "pillow/ribbon.hpp"
#include "pillow/tree_volume.hpp"
#include "pillow/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace pillow;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    int jobs = 0;
    bool no_meta = false;
    std::string cache_dir;

    int workers() const { return jobs > 0 ? jobs : default_jobs(); }
};

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void emit(Json j, const Globals& g) {
    if (!g.no_meta) j["meta"] = Json{{"tool", "pillow"}, {"generated_at", utc_timestamp()}};
    std::cout << j.dump(2) << "\n";
}

std::vector<long> parse_longs(const std::string& text) {
    std::vector<long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + text);
        }
        if (used != item.size()) throw UsageError("not an integer list: " + text);
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

LayerSignature signature(int m, int n) {
    try {
        return LayerSignature(m, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::unique_ptr<CharacterCache> open_cache(const Globals& g) {
    std::optional<std::filesystem::path> dir;
    if (!g.cache_dir.empty()) dir = g.cache_dir;
    auto cache = std::make_unique<CharacterCache>(CharacterCache::default_path(dir));
    if (cache->discarded()) std::cerr << "warning: discarded invalid character cache " << cache->file()->string() << "\n";
    return cache;
}

void save_cache(const CharacterCache& cache) {
    try {
        cache.save();
    } catch (const std::exception& e) {
        std::cerr << "warning: " << e.what() << "\n";
    }
}

// local-poly

struct LocalPolyArgs {
    int m = 0, n = 0;
    std::string method = "auto";
    std::string format = "json";
};

int run_local_poly(const LocalPolyArgs& a, const Globals& g) {
    const LayerSignature s = signature(a.m, a.n);
    Polynomial p;
    if (a.method == "closed") {
        p = f_closed(s);
    } else if (a.method == "recurrence") {
        p = f_recurrence(s);
    } else {
        p = f_closed(s);
        if (p != f_recurrence(s)) {
            std::cerr << "closed form and recurrence disagree for (" << a.m << "," << a.n << ")\n";
            return exit_failed;
        }
    }
    if (a.format == "text") {
        std::cout << to_string(p) << "\n";
        return exit_ok;
    }
    emit(Json{{"m", a.m},
              {"n", a.n},
              {"faces", s.faces()},
              {"degree", s.m() + s.n() - 2},
              {"method", a.method},
              {"text", to_string(p)},
              {"polynomial", polynomial_json(p, static_cast<std::size_t>(s.faces()))}},
         g);
    return exit_ok;
}

// ribbon

struct RibbonArgs {
    int m = 0, n = 0;
    bool full_labels = false;
    int graph_id = 0;
    std::string widths;
    int radius = 5;
};

LabelMode mode_of(const RibbonArgs& a) { return a.full_labels ? LabelMode::full : LabelMode::faces_only; }

int run_ribbon_enumerate(const RibbonArgs& a, const Globals& g) {
    const LayerSignature s = signature(a.m, a.n);
    const auto graphs = enumerate_graphs(s, mode_of(a));
    Json list = Json::array();
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        Json j = graph_json(graphs[i]);
        j["id"] = i;
        j["automorphisms"] = automorphism_count(graphs[i], mode_of(a));
        j["transform"] = to_string(laplace_transform(graphs[i]));
        list.push_back(std::move(j));
    }
    emit(Json{{"m", a.m},
              {"n", a.n},
              {"mode", a.full_labels ? "full" : "faces-only"},
              {"count", graphs.size()},
              {"graphs", list}},
         g);
    return exit_ok;
}

int run_ribbon_count(const RibbonArgs& a, const Globals& g) {
    const LayerSignature s = signature(a.m, a.n);
    const auto graphs = enumerate_graphs(s, mode_of(a));
    if (a.graph_id < 0 || a.graph_id >= static_cast<int>(graphs.size()))
        throw UsageError("graph id out of range 0.." + std::to_string(graphs.size() - 1));
    const std::vector<long> w = parse_longs(a.widths);
    if (static_cast<int>(w.size()) != s.faces())
        throw UsageError("expected " + std::to_string(s.faces()) + " widths");
    for (long x : w)
        if (x <= 0) throw UsageError("widths must be positive");
    const RibbonGraph& graph = graphs[static_cast<std::size_t>(a.graph_id)];
    emit(Json{{"m", a.m},
              {"n", a.n},
              {"graph_id", a.graph_id},
              {"graph", graph_json(graph)},
              {"widths", w},
              {"count", exact_lattice_count(graph, w).get_str()}},
         g);
    return exit_ok;
}

int run_ribbon_fit(const RibbonArgs& a, const Globals& g) {
    const LayerSignature s = signature(a.m, a.n);
    const Polynomial fit = leading_part_fit(s, a.radius, g.workers());
    const Polynomial closed = f_closed(s);
    const auto arity = static_cast<std::size_t>(s.faces());
    emit(Json{{"m", a.m},
              {"n", a.n},
              {"sample_radius", a.radius},
              {"directions", generic_directions(s.faces(), a.radius).size()},
              {"fit", polynomial_json(fit, arity)},
              {"fit_text", to_string(fit)},
              {"closed_text", to_string(closed)},
              {"equal", fit == closed}},
         g);
    return fit == closed ? exit_ok : exit_failed;
}

// volume

struct VolumeArgs {
    int K = 1;
    bool per_tree = false;
    std::string format = "json";
};

int run_volume(const VolumeArgs& a, const Globals& g) {
    if (a.K < 1) throw UsageError("K must be at least 1");
    const auto rows = volume_breakdown(a.K, g.workers());
    PiValue total = PiValue::zero(2 * a.K + 2);
    for (const auto& r : rows) total += r.value;
    const PiValue expected = expected_volume(a.K);

    if (a.format == "latex-table") {
        std::cout << volume_latex_table(a.K, rows);
        return total == expected ? exit_ok : exit_failed;
    }
    if (a.format == "text") {
        if (a.per_tree)
            for (const auto& r : rows)
                std::cout << tree_text(r.tree) << "\t|Aut|=" << r.aut_order << "\t" << zeta_form_string(r.zeta_form)
                          << "\t" << to_string(r.value) << "\n";
        std::cout << to_string(total) << "\n";
        return total == expected ? exit_ok : exit_failed;
    }
    Json j{{"K", a.K},
           {"dimension", 2 * a.K + 2},
           {"trees", rows.size()},
           {"volume", pi_value_json(total)},
           {"expected", pi_value_json(expected)},
           {"matches_closed_formula", total == expected}};
    if (a.per_tree) {
        Json list = Json::array();
        for (const auto& r : rows) list.push_back(contribution_json(r));
        j["contributions"] = list;
        std::map<int, PiValue> sub;
        for (const auto& r : rows) sub[r.tree.num_edges()] += r.value;
        Json subs = Json::array();
        for (const auto& [k, v] : sub) subs.push_back(Json{{"cylinders", k}, {"value", pi_value_json(v)}});
        j["subtotals"] = subs;
    }
    emit(j, g);
    return total == expected ? exit_ok : exit_failed;
}

// covers

struct CoversArgs {
    int K = 1;
    int max_degree = 6;
    std::string method = "frobenius";
    std::string degrees = "10,20,30";
};

int run_covers_count(const CoversArgs& a, const Globals& g) {
    if (a.K < 1) throw UsageError("K must be at least 1");
    if (a.max_degree < 1) throw UsageError("max degree must be at least 1");
    std::map<int, BigRational> counts;
    if (a.method == "naive") {
        if (a.max_degree > 5) throw UsageError("naive method supports degree <= 5");
        NaiveTables t = naive_tables(a.max_degree, a.K, a.K + 4);
        for (int n = 1; n <= a.max_degree; ++n) {
            auto it = t.tables.connected.find({n, a.K, a.K + 4});
            counts[n] = it == t.tables.connected.end() ? BigRational(0) : it->second;
        }
    } else {
        auto cache = open_cache(g);
        counts = connected_counts(a.K, a.max_degree, g.workers(), cache.get());
        save_cache(*cache);
    }
    Json rows = Json::array();
    BigRational total = 0;
    for (const auto& [n, c] : counts) {
        total += c;
        rows.push_back(Json{{"degree", n}, {"connected", to_string(c)}});
    }
    const BigRational labelled =
        total * BigRational(factorial(static_cast<unsigned>(a.K)) * factorial(static_cast<unsigned>(a.K + 4)));
    emit(Json{{"K", a.K},
              {"zeros", a.K},
              {"poles", a.K + 4},
              {"max_degree", a.max_degree},
              {"method", a.method},
              {"by_degree", rows},
              {"connected_total", to_string(total)},
              {"labelled_cover_count", to_string(labelled)},
              {"sq_count", to_string(labelled / 4)}},
         g);
    return exit_ok;
}

int run_covers_ratio(const CoversArgs& a, const Globals& g) {
    if (a.K < 1) throw UsageError("K must be at least 1");
    std::vector<long> degrees = parse_longs(a.degrees);
    long top = 0;
    for (long d : degrees) {
        if (d < 1) throw UsageError("degrees must be positive");
        top = std::max(top, d);
    }
    auto cache = open_cache(g);
    const auto counts = connected_counts(a.K, static_cast<int>(top), g.workers(), cache.get());
    save_cache(*cache);
    const BigRational labels =
        BigRational(factorial(static_cast<unsigned>(a.K)) * factorial(static_cast<unsigned>(a.K + 4)));
    Json rows = Json::array();
    for (long N : degrees) {
        BigRational sum = 0;
        for (const auto& [n, c] : counts)
            if (n <= N) sum += c;
        const BigRational sq = sum * labels / 4;
        const double r = growth_ratio(a.K, static_cast<int>(N), sq);
        rows.push_back(Json{{"N", N},
                            {"sq_count", to_string(sq)},
                            {"ratio", r},
                            {"deviation", std::abs(r - 1)},
                            {"ratio_without_corner_quotient", 4 * r}});
    }
    emit(Json{{"K", a.K}, {"dimension", 2 * a.K + 2}, {"rows", rows}}, g);
    return exit_ok;
}

// verify

struct VerifyArgs {
    int K_max = 2;
    int mn_max = 6;
    int cover_N_max = 5;
    bool inject_fault = false;
};

int run_verify(const VerifyArgs& a, const Globals& g) {
    if (a.K_max < 0 || a.mn_max < 0 || a.cover_N_max < 0) throw UsageError("bounds must be nonnegative");
    auto cache = open_cache(g);
    VerifyOptions o;
    o.K_max = a.K_max;
    o.mn_max = a.mn_max;
    o.cover_N_max = a.cover_N_max;
    o.jobs = g.workers();
    o.inject_fault = a.inject_fault;
    o.cache = cache.get();
    VerifyReport report = run_verification(o, [](const CheckResult& c) {
        std::cout << (c.passed ? "ok    " : "FAIL  ") << c.name;
        if (c.name.rfind("volume", 0) == 0) std::cout << "  " << c.lhs;
        std::cout << "\n";
    });
    save_cache(*cache);
    std::size_t failed = 0;
    for (const auto& c : report.checks) failed += !c.passed;
    std::cout << report.checks.size() << " checks, " << failed << " failed\n";
    if (const CheckResult* f = report.first_failure()) {
        std::cout << "first failure: " << f->name << "\n  lhs: " << f->lhs << "\n  rhs: " << f->rhs << "\n";
        return exit_failed;
    }
    return exit_ok;
}

// render

struct RenderArgs {
    std::string entity;
    std::vector<int> values;
    std::string format = "json";
};

int run_render(const RenderArgs& a, const Globals& g) {
    auto need = [&](std::size_t count) {
        if (a.values.size() != count)
            throw UsageError("render " + a.entity + " expects " + std::to_string(count) + " arguments");
    };
    if (a.entity == "local-poly") {
        need(2);
        const LayerSignature s = signature(a.values[0], a.values[1]);
        const Polynomial p = f_closed(s);
        if (a.format == "text") std::cout << to_string(p) << "\n";
        else if (a.format == "latex-table") std::cout << latex_polynomial(p) << "\n";
        else std::cout << polynomial_json(p, static_cast<std::size_t>(s.faces())).dump() << "\n";
        return exit_ok;
    }
    if (a.entity == "volume") {
        need(1);
        if (a.values[0] < 1) throw UsageError("K must be at least 1");
        if (a.format == "latex-table") {
            std::cout << volume_latex_table(a.values[0], volume_breakdown(a.values[0], g.workers()));
            return exit_ok;
        }
        const PiValue v = volume(a.values[0], g.workers());
        if (a.format == "text") std::cout << to_string(v) << "\n";
        else std::cout << pi_value_json(v).dump() << "\n";
        return exit_ok;
    }
    if (a.entity == "hat-f") {
        need(2);
        const RationalFunction f = hat_F(signature(a.values[0], a.values[1]));
        if (a.format == "json") std::cout << Json{{"numerator", to_string(f.numerator(), "l")}, {"denominator", to_string(f.denominator(), "l")}}.dump() << "\n";
        else std::cout << to_string(f) << "\n";
        return exit_ok;
    }
    if (a.entity == "ribbon-graphs") {
        need(2);
        Json list = Json::array();
        for (const auto& gr : enumerate_graphs(signature(a.values[0], a.values[1]), LabelMode::faces_only))
            list.push_back(graph_json(gr));
        std::cout << list.dump() << "\n";
        return exit_ok;
    }
    throw UsageError("unknown entity: " + a.entity + " (expected local-poly, volume, hat-f or ribbon-graphs)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact volumes of Q(1^K, -1^{K+4}) through pillowcase covers, with independent oracles"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--no-meta", g.no_meta, "Omit the timestamp block from JSON output");
    app.add_option("--cache-dir", g.cache_dir, "Character cache directory (default $PILLOW_CACHE_DIR or ~/.cache/pillow)");

    std::function<int()> action;
    const std::vector<std::string> json_text{"json", "text"};

    LocalPolyArgs lp;
    auto* local = app.add_subcommand("local-poly", "Layer polynomial F_{m,n}");
    local->add_option("--m", lp.m, "Trivalent vertices (zeros)")->required();
    local->add_option("--n", lp.n, "Univalent vertices (poles)")->required();
    local->add_option("--method", lp.method, "closed | recurrence | auto")
        ->check(CLI::IsMember({"closed", "recurrence", "auto"}))
        ->capture_default_str();
    local->add_option("--format", lp.format, "json | text")->check(CLI::IsMember(json_text))->capture_default_str();
    local->callback([&] { action = [&] { return run_local_poly(lp, g); }; });

    RibbonArgs rb;
    auto* ribbon = app.add_subcommand("ribbon", "Ribbon graph oracle");
    ribbon->require_subcommand(1);
    auto add_mn = [&](CLI::App* sub) {
        sub->add_option("--m", rb.m, "Trivalent vertices")->required();
        sub->add_option("--n", rb.n, "Univalent vertices")->required();
    };
    auto* enumerate = ribbon->add_subcommand("enumerate", "List isomorphism classes");
    add_mn(enumerate);
    enumerate->add_flag("--full-labels", rb.full_labels, "Label zeros and poles as well as faces");
    enumerate->callback([&] { action = [&] { return run_ribbon_enumerate(rb, g); }; });
    auto* count = ribbon->add_subcommand("count", "Exact half-integer metric count for one graph");
    add_mn(count);
    count->add_flag("--full-labels", rb.full_labels, "Index into the fully labelled enumeration");
    count->add_option("--graph-id", rb.graph_id, "Index into the enumeration")->required();
    count->add_option("--widths", rb.widths, "Comma-separated face widths")->required();
    count->callback([&] { action = [&] { return run_ribbon_count(rb, g); }; });
    auto* fit = ribbon->add_subcommand("fit", "Leading part of the labelled lattice count");
    add_mn(fit);
    fit->add_option("--radius", rb.radius, "Sample directions in [1, radius]^l")->capture_default_str();
    fit->callback([&] { action = [&] { return run_ribbon_fit(rb, g); }; });

    VolumeArgs vol;
    auto* volume_cmd = app.add_subcommand("volume", "Volume through decorated trees");
    volume_cmd->add_option("--K", vol.K, "Number of simple zeros")->required();
    volume_cmd->add_flag("--per-tree", vol.per_tree, "Include every tree contribution");
    volume_cmd->add_option("--format", vol.format, "json | text | latex-table")
        ->check(CLI::IsMember({"json", "text", "latex-table"}))
        ->capture_default_str();
    volume_cmd->callback([&] { action = [&] { return run_volume(vol, g); }; });

    CoversArgs cv;
    auto* covers = app.add_subcommand("covers", "Pillowcase cover oracle");
    covers->require_subcommand(1);
    auto* ccount = covers->add_subcommand("count", "Connected covers by degree");
    ccount->add_option("--K", cv.K, "Number of simple zeros")->required();
    ccount->add_option("--max-degree", cv.max_degree, "Largest degree")->capture_default_str();
    ccount->add_option("--method", cv.method, "frobenius | naive")
        ->check(CLI::IsMember({"frobenius", "naive"}))
        ->capture_default_str();
    ccount->callback([&] { action = [&] { return run_covers_count(cv, g); }; });
    auto* ratio = covers->add_subcommand("ratio", "Growth of square-tiled surface counts against the volume");
    ratio->add_option("--K", cv.K, "Number of simple zeros")->required();
    ratio->add_option("--degrees", cv.degrees, "Comma-separated N values")->capture_default_str();
    ratio->callback([&] { action = [&] { return run_covers_ratio(cv, g); }; });

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Cross-check every route");
    verify->add_option("--K-max", va.K_max, "Volumes for K = 1..K-max")->capture_default_str();
    verify->add_option("--mn-max", va.mn_max, "Local polynomials with m + n <= mn-max")->capture_default_str();
    verify->add_option("--cover-N-max", va.cover_N_max, "Frobenius vs direct search up to this degree (<= 5)")
        ->capture_default_str();
    verify->add_flag("--inject-fault", va.inject_fault)->group("");
    verify->callback([&] { action = [&] { return run_verify(va, g); }; });

    RenderArgs ra;
    auto* render = app.add_subcommand("render", "Render one entity: local-poly M N | volume K | hat-f M N | ribbon-graphs M N");
    render->add_option("entity", ra.entity, "Entity name")->required();
    render->add_option("args", ra.values, "Integer arguments");
    render->add_option("--format", ra.format, "json | text | latex-table")
        ->check(CLI::IsMember({"json", "text", "latex-table"}))
        ->capture_default_str();
    render->callback([&] { action = [&] { return run_render(ra, g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    if (g.jobs < 0) {
        std::cerr << "error: --jobs must be nonnegative\n";
        return exit_usage;
    }
    try {
        return action ? action() : exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    }
}
