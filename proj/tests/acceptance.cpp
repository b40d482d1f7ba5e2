// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N]...
//
// Exit status is 0 when the set of failing criteria equals the expected set,
// so a known failure stays visible without hiding new ones (or a fix).

#include "psdparam/definiteness.hpp"
#include "psdparam/hessian.hpp"
#include "psdparam/io.hpp"
#include "psdparam/oracle.hpp"
#include "support.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace psdparam;
using nlohmann::json;

namespace {

constexpr double kPrintedTol = 5e-4;

// Collects sub-check results for one criterion.
class Checks {
public:
    void operator()(bool ok, const std::string& what)
    {
        if (!ok)
            failed_.push_back(what);
        ++total_;
    }
    bool ok() const { return failed_.empty(); }
    std::string summary() const
    {
        std::ostringstream os;
        os << total_ - failed_.size() << "/" << total_ << " checks";
        for (const auto& f : failed_)
            os << "\n      failed: " << f;
        return os.str();
    }
    void note(const std::string& s) { notes_.push_back(s); }
    const std::vector<std::string>& notes() const { return notes_; }

private:
    std::vector<std::string> failed_;
    std::vector<std::string> notes_;
    int total_ = 0;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool near(double a, double b, double tol = kPrintedTol) { return std::abs(a - b) <= tol; }

double bound_diff(const IntervalMatrix& m, const std::vector<std::vector<std::pair<double, double>>>& want)
{
    double d = 0;
    for (std::size_t i = 0; i < want.size(); ++i)
        for (std::size_t j = 0; j < want[i].size(); ++j) {
            d = std::max(d, std::abs(m(i, j).inf() - want[i][j].first));
            d = std::max(d, std::abs(m(i, j).sup() - want[i][j].second));
        }
    return d;
}

ParameterBox example4_box() { return ParameterBox({Interval(2, 3), Interval(1, 2), Interval(0, 1)}); }

// ---------------------------------------------------------------------------

void example1(Checks& c)
{
    const auto pm = testsupport::example1();
    const IntervalMatrix r = relax(pm);
    bool exact = true;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            exact = exact && r(i, j) == Interval(0, 1);
    c(exact, "relax entries exactly [0,1]");
    c(strong_psd(pm).status == Status::proved, "strong_psd = Proved");
    c(!strong_psd_interval(r), "strong_psd_interval(relax) = false");
    c(contains(r, Matrix{{0, 1}, {1, 0}}), "relaxation contains [[0,1],[1,0]]");
}

void example2(Checks& c)
{
    const auto pm = testsupport::example2();
    const auto s = psd_split(pm.coefficient(1));
    c(testsupport::max_abs_diff(s.plus.matrix(), {{0.2071, 0.5}, {0.5, 1.2071}}) <= kPrintedTol, "psd_split plus");
    c(testsupport::max_abs_diff(s.minus.matrix(), {{1.2071, -0.5}, {-0.5, 0.2071}}) <= kPrintedTol, "psd_split minus");

    const SymMatrix sum = split_lower_sum(pm, {});
    c(testsupport::max_abs_diff(sum.matrix(), {{0.2929, 0.5}, {0.5, 0.8929}}) <= kPrintedTol, "split sum matrix");
    c(is_pd(sum), "split sum is PD");

    const auto pre = precondition_relax(pm);
    const double d =
        bound_diff(pre.relaxed, {{{0.2222, 1.7778}, {-0.4075, 0.4075}}, {{-0.5556, 0.5556}, {0.8148, 1.1852}}});
    c(d <= kPrintedTol, "preconditioned relaxation M (max bound error " + fmt(d) + ")");

    const double rho = spectral_radius_nonneg(pre.relaxed.rad()).upper;
    c(near(rho, 1.0419), "rho(Rad M) = 1.0419 (got " + fmt(rho) + ")");
    c(strong_pd_regularity(pm).status == Status::unknown, "strong_pd_regularity = Unknown");
    c(strong_pd_split(pm).status == Status::proved, "strong_pd_split = Proved");
}

void example3(Checks& c)
{
    const auto pm = testsupport::example3();
    c(strong_pd_split(pm).status == Status::unknown, "strong_pd_split = Unknown");
    const double rho = spectral_radius_nonneg(precondition_relax(pm).relaxed.rad()).upper;
    c(near(rho, 0.9678) && rho < 1.0, "rho(Rad M) = 0.9678 < 1 (got " + fmt(rho) + ")");
    const auto v = strong_pd_regularity(pm);
    c(v.status == Status::proved, "strong_pd_regularity = Proved");
}

void cubic_example(Checks& c)
{
    const auto f = parse_polynomial("x1^3 + 2 x1^2 x2 - x1 x2 x3 + 3 x2 x3^2 + 5 x2^2");
    const auto h = hessian(f, example4_box());
    c(h.num_params() == 4 && h.coefficient(0) == SymMatrix{{6, 4, 0}, {4, 0, -1}, {0, -1, 0}} &&
          h.coefficient(1) == SymMatrix{{4, 0, -1}, {0, 0, 0}, {-1, 0, 6}} &&
          h.coefficient(2) == SymMatrix{{0, -1, 0}, {-1, 0, 6}, {0, 6, 0}} &&
          h.coefficient(3) == SymMatrix{{0, 0, 0}, {0, 10, 0}, {0, 0, 0}},
      "four Hessian coefficient matrices exact");

    const IntervalMatrix r = relax(h);
    const IntervalMatrix want = IntervalMatrix::from_bounds(Matrix{{16, 7, -2}, {7, 10, -3}, {-2, -3, 6}},
                                                            Matrix{{26, 12, -1}, {12, 10, 4}, {-1, 4, 12}});
    c(r == want, "interval Hessian exact");

    const double hz = hertz_min_eig(r);
    const double weyl = weyl_min_eig_bound(r);
    c(near(hz, -2.8950), "hertz_min_eig = -2.8950 (got " + fmt(hz) + ")");
    c(!strong_psd_interval(r), "relaxation not strongly PSD");

    // independent evidence for the exact value: brute force over members
    const auto sampled = [&] {
        testsupport::Gen g(0xACCE);
        double best = INFINITY;
        for (int s = 0; s < 100000; ++s) {
            SymMatrix m(3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i; j < 3; ++j) {
                    const Interval& v = r(i, j);
                    m.set(i, j, g.coin(0.8) ? (g.coin() ? v.inf() : v.sup()) : g.in(v));
                }
            best = std::min(best, oracle::reference_min_eig(m));
        }
        return best;
    }();
    c.note("hertz_min_eig " + fmt(hz) + ", sampled member minimum " + fmt(sampled) + ", Weyl bound " + fmt(weyl));

    const auto v = certify_convexity(f, example4_box());
    c(v.verdict.status == Status::proved && v.verdict.method == Method::split,
      "certify_convexity = Proved via splitting");
}

void oracle_equivalence(Checks& c)
{
    testsupport::Gen g(0xC5);
    int compared = 0, unknown = 0, disagree = 0;
    for (int t = 0; t < 500; ++t) {
        const auto pm = g.instance();
        for (const Goal goal : {Goal::strong_psd, Goal::strong_pd}) {
            const Verdict v = decide(pm, goal);
            if (v.status == Status::unknown) {
                ++unknown;
                continue;
            }
            ++compared;
            if ((v.status == Status::proved) != oracle::full_vertex_check(pm, definiteness_of(goal)))
                ++disagree;
        }
    }
    c(disagree == 0, std::to_string(disagree) + " disagreements");
    c(compared > 0, "some decisive verdicts");
    c.note(std::to_string(compared) + " decisive verdicts compared, " + std::to_string(unknown) + " unknown excluded");
}

void implication_chain(Checks& c)
{
    testsupport::Gen g(0xC5);
    int violations = 0, pd_instances = 0;
    for (int t = 0; t < 500; ++t) {
        const auto pm = g.instance();
        const Status split_psd = strong_psd_split(pm).status;
        const Status split_pd = strong_pd_split(pm).status;
        const Status reg = strong_pd_regularity(pm).status;
        const Status vpsd = strong_psd(pm).status;
        const Status vpd = strong_pd(pm).status;
        const Status nec = weak_psd_necessary(pm).status;

        violations += split_psd == Status::proved && vpsd != Status::proved;
        violations += split_pd == Status::proved && vpd != Status::proved;
        violations += reg == Status::proved && vpd != Status::proved;
        violations += vpd == Status::proved && vpsd != Status::proved;
        violations += vpsd == Status::proved && nec == Status::disproved;
        if (vpd == Status::proved) {
            ++pd_instances;
            for (int s = 0; s < 1000; ++s) {
                const SymMatrix a = oracle::reference_evaluate(pm, g.point_in(pm.box()));
                if (!(oracle::reference_min_eig(a) > 0)) {
                    ++violations;
                    break;
                }
            }
        }
    }
    c(violations == 0, std::to_string(violations) + " violations");
    c.note(std::to_string(pd_instances) + " vertex-PD instances sampled for nonsingularity");
}

void semidefinite_exactness(Checks& c)
{
    testsupport::Gen g(0x5D);
    int compared = 0, band = 0, disagree = 0;
    for (int t = 0; t < 200; ++t) {
        const auto pm = g.semidefinite_instance();
        const SymMatrix s = split_lower_sum(pm, {});
        const double tau = Tolerance{}.for_matrix(s);
        if (std::abs(oracle::reference_min_eig(s)) <= 10 * tau) {
            ++band;
            continue;
        }
        ++compared;
        const bool split = strong_psd_split(pm).status == Status::proved;
        disagree += split != oracle::full_vertex_check(pm, Definiteness::semidefinite);
    }
    c(disagree == 0, std::to_string(disagree) + " disagreements");
    c.note(std::to_string(compared) + " compared, " + std::to_string(band) + " tau-band instances excluded");
}

void kernels(Checks& c)
{
    testsupport::Gen g(0x8E);
    double worst_res = 0, worst_orth = 0;
    int res_bad = 0, orth_bad = 0, split_bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto n = static_cast<std::size_t>(g.integer(1, 20));
        const SymMatrix a = g.symmetric(n, -10, 10);
        const double scale = 1 + a.matrix().max_abs() * static_cast<double>(n);
        const auto e = eig_sym(a);
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i)
            d(i, i) = e.values[i];
        const double res = max_abs_diff(e.vectors * d * e.vectors.transpose(), a.matrix());
        const double orth = max_abs_diff(e.vectors.transpose() * e.vectors, Matrix::identity(n));
        worst_res = std::max(worst_res, res / scale);
        worst_orth = std::max(worst_orth, orth);
        res_bad += res > 1e-10 * scale;
        orth_bad += orth > 1e-10;

        const auto sp = psd_split(a);
        const double tau = 1e-10 * scale;
        split_bad += max_abs_diff((sp.plus - sp.minus).matrix(), a.matrix()) > tau ||
                     oracle::reference_min_eig(sp.plus) < -tau || oracle::reference_min_eig(sp.minus) < -tau;
    }
    c(res_bad == 0, "Jacobi reconstruction residual (worst " + fmt(worst_res) + " x scale)");
    c(orth_bad == 0, "Jacobi orthogonality (worst " + fmt(worst_orth) + ")");
    c(split_bad == 0, "psd_split invariants");

    int fd_bad = 0;
    double worst_fd = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto n = static_cast<std::size_t>(g.integer(1, 5));
        const auto f = testsupport::random_cubic(g, n);
        const ParameterBox box(std::vector<Interval>(n, Interval(-2, 2)));
        const auto x = g.point_in(box);
        std::vector<double> p = x;
        p.push_back(1.0);
        const Matrix h = evaluate(hessian(f, box), p).matrix();
        const double err = max_abs_diff(h, testsupport::fd_hessian(f, x, 1e-4)) / (1 + h.max_abs());
        worst_fd = std::max(worst_fd, err);
        fd_bad += err > 1e-4;
    }
    c(fd_bad == 0, "Hessian vs finite differences (worst relative " + fmt(worst_fd) + ")");
}

void cli_conformance(Checks& c)
{
    const std::string cli = PSDPARAM_CLI;
    const std::string data = PSDPARAM_SOURCE_DIR "/data/";
    json schema;
    {
        std::ifstream in(PSDPARAM_SOURCE_DIR "/schema/run_report.schema.json");
        schema = json::parse(in);
    }
    const std::string truncated = PSDPARAM_BINARY_DIR "/acceptance_truncated.json";
    std::ofstream(truncated) << R"({"n":2,"K":1,"coefficients":[[[1,1],)";

    const bool have_jsonschema = testsupport::run("python3 -c 'import jsonschema'").exit_code == 0;

    struct Case {
        std::string args;
        int code;
    };
    const std::vector<Case> cases = {
        {"check " + data + "example2.json --goal strong-pd", 0},
        {"check " + data + "example3.json --goal strong-pd", 0},
        {"check " + truncated, 64},
        {"convex 'x^3 + 2x^2 y - x y z + 3 y z^2 + 5 y^2' --box x=2:3 --box y=1:2 --box z=0:1", 0},
        {"convex 'x1^2' --box x1=0:1", 0},
        {"convex '-x1^3' --box x1=1:2", 1},
    };
    int idx = 0;
    for (const auto& k : cases) {
        const auto r = testsupport::run(cli + " " + k.args);
        c(r.exit_code == k.code, "psdparam " + k.args + " -> exit " + std::to_string(r.exit_code) + ", expected " +
                                     std::to_string(k.code));
        if (k.code == 64)
            continue;
        json report;
        try {
            report = json::parse(r.out);
        } catch (const json::exception&) {
            c(false, "report is JSON: " + k.args);
            continue;
        }
        const std::string err = testsupport::validate(report, schema);
        c(err.empty(), "schema: " + k.args + (err.empty() ? "" : " (" + err + ")"));
        if (have_jsonschema) {
            const std::string path = std::string(PSDPARAM_BINARY_DIR "/acceptance_report_") + std::to_string(idx++) + ".json";
            std::ofstream(path) << r.out;
            const std::string py = "python3 -c 'import json,sys,jsonschema; "
                                   "jsonschema.validate(json.load(open(sys.argv[1])), json.load(open(sys.argv[2])))' " +
                                   path + " " PSDPARAM_SOURCE_DIR "/schema/run_report.schema.json";
            c(testsupport::run(py).exit_code == 0, "python jsonschema: " + k.args);
        }
    }
    const json ex3 = json::parse(testsupport::run(cli + " " + cases[1].args).out);
    c(ex3["method"] == "regularity" && near(ex3["certificate"]["rho"].get<double>(), 0.9678),
      "example 3 report: method regularity, rho 0.9678");
    const json ex2 = json::parse(testsupport::run(cli + " " + cases[0].args).out);
    c(ex2["method"] == "split", "example 2 report: method split");
    c.note(have_jsonschema ? "reports also validated with python jsonschema" : "python jsonschema not available");
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc)
            expected.insert(std::atoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--expect-fail N]...\n";
            return 64;
        }
    }

    const std::vector<std::pair<std::string, std::function<void(Checks&)>>> criteria = {
        {"Example 1 reproduction", example1},
        {"Example 2 reproduction", example2},
        {"Example 3 reproduction", example3},
        {"cubic Hessian example reproduction", cubic_example},
        {"oracle equivalence (500 instances)", oracle_equivalence},
        {"implication chain (500 instances)", implication_chain},
        {"semidefinite-coefficient exactness (200 instances)", semidefinite_exactness},
        {"numerical kernels", kernels},
        {"CLI conformance", cli_conformance},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checks c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c(false, std::string("exception: ") + e.what());
        }
        const int id = static_cast<int>(i + 1);
        if (!c.ok())
            failed.insert(id);
        std::cout << "criterion " << id << ": " << (c.ok() ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
                  << c.summary() << "]\n";
        for (const auto& n : c.notes())
            std::cout << "      note: " << n << '\n';
    }

    std::cout << "\n" << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass";
    if (!expected.empty()) {
        std::cout << "; expected failures:";
        for (int e : expected)
            std::cout << ' ' << e;
    }
    std::cout << '\n';
    return failed == expected ? 0 : 1;
}
