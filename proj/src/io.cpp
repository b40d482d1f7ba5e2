#include "psdparam/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace psdparam {

using nlohmann::json;

namespace {

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

template <class T>
T get_field(const json& j, const char* key, const char* what)
{
    if (!j.contains(key))
        throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
    }
}

double parse_double(std::string_view s, std::string_view what)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw InputError(std::string(what) + ": '" + std::string(s) + "' is not a number");
    return v;
}

} // namespace

ParametricSymMatrix parametric_from_json(const json& j)
{
    constexpr const char* what = "parametric matrix";
    if (!j.is_object())
        throw InputError("parametric matrix: top level must be an object");
    const auto n = get_field<std::size_t>(j, "n", what);
    const auto k_count = get_field<std::size_t>(j, "K", what);
    const auto coeffs = get_field<std::vector<std::vector<std::vector<double>>>>(j, "coefficients", what);
    if (!j.contains("parameters") || !j.at("parameters").is_array())
        throw InputError("parametric matrix: \"parameters\" must be an array");
    const json& params = j.at("parameters");

    if (n == 0 || k_count == 0)
        throw InputError("parametric matrix: n and K must be positive");
    if (coeffs.size() != k_count || params.size() != k_count) {
        std::ostringstream os;
        os << "parametric matrix: K = " << k_count << " but " << coeffs.size() << " coefficient matrices and "
           << params.size() << " parameters given";
        throw InputError(os.str());
    }

    std::vector<SymMatrix> mats;
    std::vector<Interval> intervals;
    for (std::size_t k = 0; k < k_count; ++k) {
        const auto& rows = coeffs[k];
        if (rows.size() != n)
            throw InputError("parametric matrix: coefficient " + std::to_string(k + 1) + " has the wrong row count");
        for (const auto& r : rows)
            if (r.size() != n)
                throw InputError("parametric matrix: coefficient " + std::to_string(k + 1) + " is not n x n");
        const Matrix m = Matrix::from_rows(rows);
        for (double v : m.data())
            if (!std::isfinite(v))
                throw InputError("parametric matrix: coefficient " + std::to_string(k + 1) + " has a non-finite entry");
        SymMatrix s(m);
        if (s.asymmetry() > default_symmetry_tolerance(m)) {
            std::ostringstream os;
            os << "parametric matrix: coefficient " << k + 1 << " is not symmetric (asymmetry " << s.asymmetry()
               << ')';
            throw InputError(os.str());
        }
        mats.push_back(std::move(s));

        const json& p = params[k];
        if (!p.is_object())
            throw InputError("parametric matrix: parameter " + std::to_string(k + 1) + " must be an object");
        const auto lo = get_field<double>(p, "inf", "parameter");
        const auto hi = get_field<double>(p, "sup", "parameter");
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
            throw InputError("parametric matrix: parameter " + std::to_string(k + 1) + " is not a valid interval");
        intervals.emplace_back(lo, hi);
    }
    return ParametricSymMatrix(std::move(mats), ParameterBox(std::move(intervals)));
}

ParametricSymMatrix parametric_from_text(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return parametric_from_json(j);
}

json to_json(const ParametricSymMatrix& pm)
{
    json coeffs = json::array();
    for (const auto& c : pm.coefficients())
        coeffs.push_back(matrix_json(c.matrix()));
    json params = json::array();
    for (const auto& p : pm.box().intervals())
        params.push_back({{"inf", p.inf()}, {"sup", p.sup()}});
    return {{"n", pm.dim()}, {"K", pm.num_params()}, {"coefficients", coeffs}, {"parameters", params}};
}

json to_json(const Certificate& c)
{
    struct Visitor {
        json operator()(const std::monostate&) const { return {{"type", "none"}}; }
        json operator()(const cert::VertexList& v) const
        {
            return {{"type", "vertex_list"},
                    {"count", v.count},
                    {"free_parameters", v.free_parameters},
                    {"min_eig", v.min_eig},
                    {"p", v.argmin}};
        }
        json operator()(const cert::CounterexampleVertex& v) const
        {
            return {{"type", "counterexample_vertex"},
                    {"p", v.p},
                    {"min_eig", v.min_eig},
                    {"tau", v.tau},
                    {"exact_refutation", v.exact_refutation}};
        }
        json operator()(const cert::SplitWitness& v) const
        {
            return {{"type", "split_witness"},
                    {"matrix", matrix_json(v.matrix.matrix())},
                    {"min_eig", v.min_eig},
                    {"tau", v.tau}};
        }
        json operator()(const cert::BeeckWitness& v) const
        {
            return {{"type", "beeck_witness"},
                    {"rho", v.rho},
                    {"converged", v.converged},
                    {"mid_min_eig", v.mid_min_eig}};
        }
        json operator()(const cert::NecessaryFailure& v) const
        {
            return {{"type", "necessary_failure"},
                    {"matrix", matrix_json(v.matrix.matrix())},
                    {"min_eig", v.min_eig},
                    {"tau", v.tau},
                    {"exact_refutation", v.exact_refutation}};
        }
        json operator()(const cert::WitnessPoint& v) const
        {
            return {{"type", "witness_point"}, {"p", v.p}, {"min_eig", v.min_eig}};
        }
    };
    return std::visit(Visitor{}, c);
}

Goal parse_goal(std::string_view s)
{
    if (s == "strong-psd")
        return Goal::strong_psd;
    if (s == "strong-pd")
        return Goal::strong_pd;
    if (s == "weak-psd")
        return Goal::weak_psd;
    if (s == "weak-pd")
        return Goal::weak_pd;
    throw InputError("unknown goal '" + std::string(s) + "'");
}

Method parse_method(std::string_view s)
{
    if (s == "auto")
        return Method::none;
    if (s == "split")
        return Method::split;
    if (s == "regularity")
        return Method::regularity;
    if (s == "vertex")
        return Method::vertex;
    if (s == "necessary")
        return Method::necessary;
    if (s == "witness")
        return Method::witness;
    throw InputError("unknown method '" + std::string(s) + "'");
}

std::pair<std::size_t, Interval> parse_box_flag(std::string_view s)
{
    const auto eq = s.find('=');
    const auto colon = s.find(':', eq == std::string_view::npos ? 0 : eq);
    if (eq == std::string_view::npos || colon == std::string_view::npos)
        throw InputError("box flag '" + std::string(s) + "' must look like x1=lo:hi");
    const std::string_view name = s.substr(0, eq);
    std::size_t index = 0;
    if (name == "x")
        index = 1;
    else if (name == "y")
        index = 2;
    else if (name == "z")
        index = 3;
    else if (name.size() > 1 && name[0] == 'x') {
        const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
        if (ec != std::errc() || ptr != name.data() + name.size() || index == 0)
            throw InputError("box flag: unknown variable '" + std::string(name) + "'");
    } else {
        throw InputError("box flag: unknown variable '" + std::string(name) + "'");
    }
    const double lo = parse_double(s.substr(eq + 1, colon - eq - 1), "box flag lower bound");
    const double hi = parse_double(s.substr(colon + 1), "box flag upper bound");
    if (lo > hi)
        throw InputError("box flag '" + std::string(s) + "': lower bound exceeds upper bound");
    return {index, Interval(lo, hi)};
}

json run_report(std::string_view command, Goal goal, const Verdict& v, const Options& opt)
{
    json stages = json::array();
    json timings = json::object();
    for (const auto& st : v.stages) {
        stages.push_back({{"method", to_string(st.method)}, {"status", to_string(st.status)}});
        timings[std::string(to_string(st.method))] = st.milliseconds;
    }
    json tolerance = {{"relative", opt.tol.relative},
                      {"absolute", opt.tol.absolute ? json(*opt.tol.absolute) : json(nullptr)},
                      {"vertex_budget", opt.vertex_budget},
                      {"regularity_margin", opt.regularity_margin},
                      {"restarts", opt.restarts},
                      {"seed", opt.seed}};
    return {{"command", command},
            {"goal", to_string(goal)},
            {"status", to_string(v.status)},
            {"method", to_string(v.method)},
            {"certificate", to_json(v.certificate)},
            {"note", v.note},
            {"stages", stages},
            {"timings_ms", timings},
            {"tolerance", tolerance}};
}

json convex_report(const CubicPolynomial& f, const ConvexityReport& r, const Options& opt)
{
    json report = run_report("convex", Goal::strong_psd, r.verdict, opt);
    const auto opt_json = [](const auto& o) { return o ? json(*o) : json(nullptr); };
    report["polynomial"] = to_string(f);
    report["relaxation"] = {{"interval_hessian", to_json(r.relaxation)},
                            {"strong_psd", opt_json(r.relaxation_strong_psd)},
                            {"hertz_min_eig", opt_json(r.hertz_min_eig)},
                            {"weyl_min_eig_bound", opt_json(r.weyl_min_eig_bound)}};
    return report;
}

int exit_code(Status s)
{
    switch (s) {
    case Status::proved: return 0;
    case Status::disproved: return 1;
    case Status::unknown: return 2;
    }
    return 2;
}

} // namespace psdparam
