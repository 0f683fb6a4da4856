#pragma once

// Stable JSON, text and LaTeX renderings shared by the command line tool
// and the tests.

#include "pillow/covers.hpp"
#include "pillow/ribbon.hpp"
#include "pillow/tree_volume.hpp"

#include <json.hpp>

#include <string>

namespace pillow {

using Json = nlohmann::ordered_json;

/// [{"exponents":[...],"num":"...","den":"..."}...], exponent vectors padded
/// to `arity` and sorted lexicographically from the largest.
Json polynomial_json(const Polynomial& p, std::size_t arity);
Json rational_json(const BigRational& r);
Json pi_value_json(const PiValue& v);
/// {darts, sigma, alpha, labels: {vertices, faces}}; vertex labels are
/// "z<i>" for zeros and "p<i>" for poles (bare "z"/"p" when anonymous),
/// face labels are 1-based.
Json graph_json(const RibbonGraph& g);
Json tree_json(const DecoratedTree& t);
Json contribution_json(const TreeContribution& c);

/// "(1,3)-(0,2)" for a single edge; in general the layers in vertex order
/// followed by the edge list, e.g. "(0,2) (2,2) (0,2) | 1-2 1-3".
std::string tree_text(const DecoratedTree& t);

std::string latex_polynomial(const Polynomial& p);
std::string latex_pi_value(const PiValue& v);
std::string latex_zeta_form(const std::map<std::vector<int>, BigRational>& form);
/// Per-tree contributions, subtotals by number of cylinders and the total.
std::string volume_latex_table(int K, const std::vector<TreeContribution>& rows);

}  // namespace pillow
