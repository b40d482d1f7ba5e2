#pragma once

#include "psdparam/definiteness.hpp"
#include "psdparam/hessian.hpp"
#include "psdparam/parametric.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace psdparam {

/// Malformed or inconsistent input (maps to CLI exit code 64).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// {"n":2,"K":2,"coefficients":[[[..],[..]],...],"parameters":[{"inf":1,"sup":1},...]}
/// Coefficients must be symmetric within 1e-12 * max|entry|.
ParametricSymMatrix parametric_from_json(const nlohmann::json& j);
ParametricSymMatrix parametric_from_text(std::string_view text);
nlohmann::json to_json(const ParametricSymMatrix& pm);

nlohmann::json to_json(const Certificate& c);

/// Parsed "--goal" / "--method" values. Throw InputError on unknown names.
Goal parse_goal(std::string_view s);
/// "auto" maps to Method::none.
Method parse_method(std::string_view s);

/// Parses "x1=2:3" (or "x=2:3") into (1-based variable index, interval).
std::pair<std::size_t, Interval> parse_box_flag(std::string_view s);

/// The machine-readable run report written by the CLI. Timings live only in
/// "timings_ms"; everything else is a deterministic function of the input.
nlohmann::json run_report(std::string_view command, Goal goal, const Verdict& v, const Options& opt);
nlohmann::json convex_report(const CubicPolynomial& f, const ConvexityReport& r, const Options& opt);

/// 0 proved, 1 disproved, 2 unknown.
int exit_code(Status s);

} // namespace psdparam
