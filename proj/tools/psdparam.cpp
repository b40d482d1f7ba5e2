// psdparam: decide strong/weak positive (semi)definiteness of linear
// parametric matrices and certify convexity of cubic polynomials on boxes.
//
//   psdparam check problem.json --goal strong-pd
//   psdparam convex "x^3 + 2x^2 y - x y z + 3 y z^2 + 5 y^2" --box x=2:3 --box y=1:2 --box z=0:1
//
// The JSON report goes to stdout, a one-line summary to stderr.
// Exit codes: 0 proved, 1 disproved, 2 unknown, 64 input error.

#include "psdparam/definiteness.hpp"
#include "psdparam/hessian.hpp"
#include "psdparam/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kInputError = 64;

struct CommonFlags {
    std::string goal = "strong-psd";
    std::string method = "auto";
    std::optional<double> tol;
    std::uint64_t vertex_budget = std::uint64_t{1} << 20;
    std::uint64_t seed = 0x5EED;
    unsigned restarts = 20;
    int threads = 0;
    bool serial = false;
};

void add_common(CLI::App& cmd, CommonFlags& f, bool with_goal)
{
    if (with_goal)
        cmd.add_option("--goal", f.goal, "strong-psd | strong-pd | weak-psd | weak-pd")
            ->check(CLI::IsMember({"strong-psd", "strong-pd", "weak-psd", "weak-pd"}));
    cmd.add_option("--method", f.method, "force one procedure: auto | split | regularity | vertex | necessary | witness")
        ->check(CLI::IsMember({"auto", "split", "regularity", "vertex", "necessary", "witness"}));
    cmd.add_option("--tol", f.tol, "absolute definiteness tolerance (overrides PSDPARAM_TOL)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--vertex-budget", f.vertex_budget, "largest vertex/sign-vector count to enumerate");
    cmd.add_option("--seed", f.seed, "seed for the witness search");
    cmd.add_option("--restarts", f.restarts, "witness search restarts");
    cmd.add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)");
    cmd.add_flag("--serial", f.serial, "use the serial enumeration kernels");
}

psdparam::Options make_options(const CommonFlags& f)
{
    psdparam::Options opt;
    if (const char* env = std::getenv("PSDPARAM_TOL"); env && *env) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v >= 0.0))
            throw psdparam::InputError(std::string("PSDPARAM_TOL is not a nonnegative number: ") + env);
        opt.tol.absolute = v;
    }
    if (f.tol)
        opt.tol.absolute = *f.tol;
    opt.vertex_budget = f.vertex_budget;
    opt.seed = f.seed;
    opt.restarts = f.restarts;
    opt.exec = f.serial ? psdparam::Exec::serial : psdparam::Exec::parallel;
#ifdef _OPENMP
    if (f.threads > 0)
        omp_set_num_threads(f.threads);
#endif
    return opt;
}

psdparam::Verdict run(const psdparam::ParametricSymMatrix& pm, psdparam::Goal goal, const std::string& method,
                      const psdparam::Options& opt)
{
    const psdparam::Method m = psdparam::parse_method(method);
    if (m == psdparam::Method::none)
        return psdparam::decide(pm, goal, opt);
    return psdparam::decide_with(pm, goal, m, opt);
}

void summarize(const nlohmann::json& report)
{
    std::cerr << "psdparam " << report["command"].get<std::string>() << ": " << report["goal"].get<std::string>()
              << " " << report["status"].get<std::string>() << " (method " << report["method"].get<std::string>()
              << ")";
    const auto& note = report["note"].get_ref<const std::string&>();
    if (!note.empty())
        std::cerr << " - " << note;
    std::cerr << '\n';
}

int cmd_check(const std::string& path, const CommonFlags& flags)
{
    std::ifstream in(path);
    if (!in)
        throw psdparam::InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto pm = psdparam::parametric_from_text(buf.str());
    const auto opt = make_options(flags);
    const auto goal = psdparam::parse_goal(flags.goal);
    const auto verdict = run(pm, goal, flags.method, opt);
    const auto report = psdparam::run_report("check", goal, verdict, opt);
    std::cout << report.dump(2) << '\n';
    summarize(report);
    return psdparam::exit_code(verdict.status);
}

int cmd_convex(const std::string& expr, const std::vector<std::string>& boxes, const CommonFlags& flags)
{
    psdparam::CubicPolynomial f;
    try {
        f = psdparam::parse_polynomial(expr);
    } catch (const psdparam::ParseError& e) {
        throw psdparam::InputError(std::string("polynomial: ") + e.what());
    }
    std::map<std::size_t, psdparam::Interval> given;
    for (const auto& b : boxes) {
        const auto [idx, iv] = psdparam::parse_box_flag(b);
        if (!given.emplace(idx, iv).second)
            throw psdparam::InputError("box for x" + std::to_string(idx) + " given twice");
    }
    std::size_t n = f.num_vars();
    if (!given.empty())
        n = std::max(n, given.rbegin()->first);
    if (n == 0)
        throw psdparam::InputError("no variables: give at least one --box");
    std::vector<psdparam::Interval> intervals;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto it = given.find(i);
        if (it == given.end())
            throw psdparam::InputError("missing --box for x" + std::to_string(i));
        intervals.push_back(it->second);
    }
    f = f.with_num_vars(n);
    const psdparam::ParameterBox box(std::move(intervals));
    const auto opt = make_options(flags);

    psdparam::ConvexityReport result = psdparam::certify_convexity(f, box, opt);
    if (const psdparam::Method m = psdparam::parse_method(flags.method); m != psdparam::Method::none)
        result.verdict = psdparam::decide_with(psdparam::hessian(f, box), psdparam::Goal::strong_psd, m, opt);
    const auto report = psdparam::convex_report(f, result, opt);
    std::cout << report.dump(2) << '\n';
    summarize(report);
    return psdparam::exit_code(result.verdict.status);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Positive (semi)definiteness of linear parametric matrices and cubic convexity certificates"};
    app.require_subcommand(1);

    CommonFlags check_flags;
    std::string check_file;
    auto* check = app.add_subcommand("check", "decide a property of a parametric matrix given as JSON");
    check->add_option("file", check_file, "problem file")->required();
    add_common(*check, check_flags, true);

    CommonFlags convex_flags;
    std::string expr;
    std::vector<std::string> boxes;
    auto* convex = app.add_subcommand("convex", "certify convexity of a cubic polynomial on a box");
    convex->add_option("expression", expr, "polynomial, e.g. \"x1^3 + 2 x1^2 x2\"")->required();
    convex->add_option("--box", boxes, "variable range, e.g. x1=2:3 (one per variable)")->required();
    add_common(*convex, convex_flags, false);

    // A polynomial with a leading minus ("-x1^3") would be read as a short
    // option; the only short option is -h, so shield anything else after
    // "convex" with a leading space (whitespace is ignored by the parser).
    std::vector<std::string> args(argv + 1, argv + argc);
    bool in_convex = false;
    for (std::string& a : args) {
        if (a == "convex")
            in_convex = true;
        if (in_convex && a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-h")
            a.insert(a.begin(), ' ');
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (*check)
            return cmd_check(check_file, check_flags);
        return cmd_convex(expr, boxes, convex_flags);
    } catch (const psdparam::InputError& e) {
        std::cerr << "psdparam: input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "psdparam: input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "psdparam: " << e.what() << '\n';
        return 2;
    }
}
