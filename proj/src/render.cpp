#include "pillow/render.hpp"

#include <algorithm>
#include <sstream>

namespace pillow {

Json rational_json(const BigRational& r) {
    return Json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

Json polynomial_json(const Polynomial& p, std::size_t arity) {
    std::vector<std::pair<std::vector<int>, BigRational>> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(m.padded(arity), c);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    Json out = Json::array();
    for (const auto& [e, c] : terms)
        out.push_back(Json{{"exponents", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    return out;
}

Json pi_value_json(const PiValue& v) {
    return Json{{"pi_power", v.pi_power()},
                {"coefficient", to_string(v.coefficient())},
                {"text", to_string(v)},
                {"approx", v.approx()}};
}

Json graph_json(const RibbonGraph& g) {
    Json vertices = Json::array();
    Json faces = Json::array();
    for (int d = 0; d < g.darts(); ++d) {
        std::string kind = g.sigma[d] == d ? "p" : "z";
        vertices.push_back(g.vertex_label[d] ? kind + std::to_string(g.vertex_label[d]) : kind);
        faces.push_back(g.face[d] + 1);
    }
    return Json{{"darts", g.darts()},
                {"sigma", g.sigma},
                {"alpha", g.alpha},
                {"labels", Json{{"vertices", vertices}, {"faces", faces}}}};
}

Json tree_json(const DecoratedTree& t) {
    Json vertices = Json::array();
    for (int v = 0; v < t.vertices(); ++v) {
        LayerSignature s = t.layer(v);
        vertices.push_back(Json{{"a", t.decoration[v]}, {"m", s.m()}, {"n", s.n()}});
    }
    Json edges = Json::array();
    for (auto [u, v] : t.edges) edges.push_back(Json::array({u, v}));
    return Json{{"vertices", vertices}, {"edges", edges}};
}

std::string tree_text(const DecoratedTree& t) {
    std::ostringstream out;
    auto layer = [&](int v) {
        LayerSignature s = t.layer(v);
        return "(" + std::to_string(s.m()) + "," + std::to_string(s.n()) + ")";
    };
    if (t.num_edges() == 1) return layer(t.edges[0].first) + "-" + layer(t.edges[0].second);
    for (int v = 0; v < t.vertices(); ++v) out << (v ? " " : "") << layer(v);
    out << " |";
    for (auto [u, v] : t.edges) out << " " << u + 1 << "-" << v + 1;
    return out.str();
}

Json contribution_json(const TreeContribution& c) {
    const std::size_t k = static_cast<std::size_t>(c.tree.num_edges());
    return Json{{"tree", tree_json(c.tree)},
                {"tree_text", tree_text(c.tree)},
                {"cylinders", c.tree.num_edges()},
                {"aut_order", c.aut_order},
                {"factor", to_string(c.multinomial_factor)},
                {"integrand", to_string(c.integrand)},
                {"integrand_terms", polynomial_json(c.integrand, k)},
                {"zeta_form", zeta_form_string(c.zeta_form)},
                {"value", pi_value_json(c.value)}};
}

namespace {

std::string latex_rational(const BigRational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    std::string sign = r < 0 ? "-" : "";
    BigInt num = abs(r.get_num());
    return sign + "\\frac{" + num.get_str() + "}{" + r.get_den().get_str() + "}";
}

}  // namespace

std::string latex_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        first = false;
        BigRational mag = abs(c);
        if (mag != 1 || m.degree() == 0) out << latex_rational(mag);
        for (std::size_t i = 0; i < m.support_size(); ++i) {
            if (!m.exponent(i)) continue;
            out << "w_{" << i + 1 << "}";
            if (m.exponent(i) > 1) out << "^{" << m.exponent(i) << "}";
        }
    }
    return out.str();
}

std::string latex_pi_value(const PiValue& v) {
    if (v.is_zero()) return "0";
    std::string coeff = v.coefficient() == 1 ? "" : latex_rational(v.coefficient());
    if (v.pi_power() == 0) return latex_rational(v.coefficient());
    return coeff + "\\pi^{" + std::to_string(v.pi_power()) + "}";
}

std::string latex_zeta_form(const std::map<std::vector<int>, BigRational>& form) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [args, coeff] : form) {
        if (coeff == 0) continue;
        if (!first) out << " + ";
        first = false;
        out << latex_rational(coeff);
        std::map<int, int> powers;
        for (int a : args) ++powers[a];
        for (const auto& [a, p] : powers) {
            out << "\\zeta";
            if (p > 1) out << "^{" << p << "}";
            out << "(" << a << ")";
        }
    }
    return first ? "0" : out.str();
}

std::string volume_latex_table(int K, const std::vector<TreeContribution>& rows) {
    std::ostringstream out;
    out << "\\begin{tabular}{lllll}\n\\hline\n";
    out << "Tree & $\\prod F_{m_v,n_v}$ & $|\\mathrm{Aut}|$ & Factor & Contribution \\\\\n\\hline\n";
    std::map<int, PiValue> subtotal;
    PiValue total = PiValue::zero(2 * K + 2);
    int current = -1;
    auto close_group = [&](int cylinders) {
        out << "\\hline\nSubtotal (" << cylinders << (cylinders == 1 ? " cylinder" : " cylinders") << ") & & & & $"
            << latex_pi_value(subtotal[cylinders]) << "$ \\\\\n\\hline\n";
    };
    for (const auto& r : rows) {
        const int k = r.tree.num_edges();
        if (current >= 0 && k != current) close_group(current);
        current = k;
        Polynomial product(1);
        for (int v = 0; v < r.tree.vertices(); ++v) {
            std::vector<int> inc = r.tree.incident_edges(v);
            std::vector<std::size_t> mapping(inc.begin(), inc.end());
            product *= f_cached(r.tree.layer(v)).rename_variables(mapping);
        }
        out << tree_text(r.tree) << " & $" << latex_polynomial(product) << "$ & " << r.aut_order << " & $"
            << latex_rational(r.multinomial_factor) << "$ & $" << latex_zeta_form(r.zeta_form) << " = "
            << latex_pi_value(r.value) << "$ \\\\\n";
        subtotal[k] += r.value;
        total += r.value;
    }
    if (current >= 0) close_group(current);
    out << "Total & & & & $" << latex_pi_value(total) << "$ \\\\\n\\hline\n\\end{tabular}\n";
    return out.str();
}

}  // namespace pillow
