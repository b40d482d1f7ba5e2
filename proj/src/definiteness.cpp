#include "psdparam/definiteness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace psdparam {

std::string_view to_string(Status s)
{
    switch (s) {
    case Status::proved: return "proved";
    case Status::disproved: return "disproved";
    case Status::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(Goal g)
{
    switch (g) {
    case Goal::strong_psd: return "strong-psd";
    case Goal::strong_pd: return "strong-pd";
    case Goal::weak_psd: return "weak-psd";
    case Goal::weak_pd: return "weak-pd";
    }
    return "strong-psd";
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::none: return "none";
    case Method::split: return "split";
    case Method::regularity: return "regularity";
    case Method::vertex: return "vertex";
    case Method::necessary: return "necessary";
    case Method::witness: return "witness";
    }
    return "none";
}

Definiteness definiteness_of(Goal g)
{
    return g == Goal::strong_pd || g == Goal::weak_pd ? Definiteness::definite : Definiteness::semidefinite;
}

bool is_strong(Goal g) { return g == Goal::strong_psd || g == Goal::strong_pd; }

PsdSplit split_coefficient(const SymMatrix& a, const Tolerance& tol)
{
    const double tau = tol.for_matrix(a);
    const EigenDecomposition e = eig_sym(a, false);
    if (e.values.empty() || e.values.front() >= -tau)
        return {a, SymMatrix(a.size())};
    if (e.values.back() <= tau)
        return {SymMatrix(a.size()), -a};
    return psd_split(a);
}

namespace {

SymMatrix split_sum(const ParametricSymMatrix& pm, const Tolerance& tol, bool lower)
{
    SymMatrix s(pm.dim());
    for (std::size_t k = 0; k < pm.num_params(); ++k) {
        const PsdSplit sp = split_coefficient(pm.coefficient(k), tol);
        const Interval& p = pm.box()[k];
        s.add_scaled(sp.plus, lower ? p.inf() : p.sup());
        s.add_scaled(sp.minus, -(lower ? p.sup() : p.inf()));
    }
    return s;
}

Verdict vertex_verdict(const ParametricSymMatrix& pm, Definiteness d, const Options& opt)
{
    Verdict v;
    v.method = Method::vertex;
    const VertexPlan plan(pm, opt.tol);
    if (plan.num_free() >= 63 || plan.count() > opt.vertex_budget) {
        std::ostringstream os;
        os << "vertex budget exceeded: 2^" << plan.num_free() << " vertices, budget " << opt.vertex_budget;
        v.note = os.str();
        return v;
    }
    const SweepResult r = vertex_sweep(pm, plan, d, opt.tol, opt.exec);
    switch (r.worst.outcome) {
    case Outcome::pass:
        v.status = Status::proved;
        v.certificate = cert::VertexList{r.evaluated, plan.num_free(), r.min_eig, plan.vertex(r.argmin_index)};
        break;
    case Outcome::fail:
        v.status = Status::disproved;
        v.certificate = cert::CounterexampleVertex{plan.vertex(r.worst_index), r.worst.min_eig, r.worst.tau,
                                                   r.worst.exact_refutation};
        break;
    case Outcome::marginal:
        v.certificate =
            cert::CounterexampleVertex{plan.vertex(r.worst_index), r.worst.min_eig, r.worst.tau, false};
        v.note = "a vertex lies inside the tolerance band";
        break;
    }
    return v;
}

Verdict split_verdict(const ParametricSymMatrix& pm, Definiteness d, const Options& opt)
{
    Verdict v;
    v.method = Method::split;
    SymMatrix s = split_lower_sum(pm, opt.tol);
    const MatrixCheck c = classify(s, d, opt.tol);
    if (c.outcome == Outcome::pass)
        v.status = Status::proved;
    else
        v.note = "splitting condition not satisfied";
    v.certificate = cert::SplitWitness{std::move(s), c.min_eig, c.tau};
    return v;
}

Verdict necessary_verdict(const ParametricSymMatrix& pm, Definiteness d, const Options& opt)
{
    Verdict v;
    v.method = Method::necessary;
    SymMatrix s = split_upper_sum(pm, opt.tol);
    const MatrixCheck c = classify(s, d, opt.tol);
    if (c.outcome == Outcome::fail)
        v.status = Status::disproved;
    else
        v.note = "necessary condition satisfied";
    v.certificate = cert::NecessaryFailure{std::move(s), c.min_eig, c.tau, c.exact_refutation};
    return v;
}

void require_symmetric(const IntervalMatrix& a, const char* who)
{
    if (!a.symmetric())
        throw std::invalid_argument(std::string(who) + ": interval matrix has no symmetric view");
}

void require_sign_budget(const IntervalMatrix& a, const Options& opt, const char* who)
{
    const std::size_t n = a.rows();
    if (n > 1 && (n - 1 >= 63 || (std::uint64_t{1} << (n - 1)) > opt.vertex_budget))
        throw std::length_error(std::string(who) + ": 2^(n-1) sign vectors exceed the budget");
}

} // namespace

SymMatrix split_lower_sum(const ParametricSymMatrix& pm, const Tolerance& tol) { return split_sum(pm, tol, true); }
SymMatrix split_upper_sum(const ParametricSymMatrix& pm, const Tolerance& tol) { return split_sum(pm, tol, false); }

Verdict strong_psd(const ParametricSymMatrix& pm, const Options& opt)
{
    return vertex_verdict(pm, Definiteness::semidefinite, opt);
}

Verdict strong_pd(const ParametricSymMatrix& pm, const Options& opt)
{
    return vertex_verdict(pm, Definiteness::definite, opt);
}

Verdict strong_psd_split(const ParametricSymMatrix& pm, const Options& opt)
{
    return split_verdict(pm, Definiteness::semidefinite, opt);
}

Verdict strong_pd_split(const ParametricSymMatrix& pm, const Options& opt)
{
    return split_verdict(pm, Definiteness::definite, opt);
}

Verdict weak_psd_necessary(const ParametricSymMatrix& pm, const Options& opt)
{
    return necessary_verdict(pm, Definiteness::semidefinite, opt);
}

Verdict weak_pd_necessary(const ParametricSymMatrix& pm, const Options& opt)
{
    return necessary_verdict(pm, Definiteness::definite, opt);
}

Verdict strong_pd_regularity(const ParametricSymMatrix& pm, const Options& opt)
{
    Verdict v;
    v.method = Method::regularity;
    cert::BeeckWitness w;

    const SymMatrix at_mid = evaluate(pm, pm.box().mid());
    const MatrixCheck mid_check = classify(at_mid, Definiteness::definite, opt.tol);
    w.mid_min_eig = mid_check.min_eig;
    if (mid_check.outcome != Outcome::pass) {
        v.note = "A(mid p) is not positive definite";
        v.certificate = w;
        return v;
    }

    Preconditioned pre;
    try {
        pre = precondition_relax(pm);
    } catch (const SingularMatrixError& e) {
        v.note = e.what();
        v.certificate = w;
        return v;
    }

    // C is only an approximate inverse, so Mid M is I up to rounding; every
    // member of M is I - E with |E| <= |I - Mid M| + Rad M.
    const Matrix mid = pre.relaxed.mid();
    Matrix bound = pre.relaxed.rad();
    for (std::size_t i = 0; i < bound.rows(); ++i)
        for (std::size_t j = 0; j < bound.cols(); ++j)
            bound(i, j) += std::abs((i == j ? 1.0 : 0.0) - mid(i, j));

    const SpectralRadius rho = spectral_radius_nonneg(bound);
    w.rho = rho.upper;
    w.converged = rho.converged;
    v.certificate = w;
    if (rho.upper < 1.0 - opt.regularity_margin)
        v.status = Status::proved;
    else
        v.note = "regularity condition not satisfied";
    return v;
}

bool strong_psd_interval(const IntervalMatrix& a, const Options& opt)
{
    require_symmetric(a, "strong_psd_interval");
    require_sign_budget(a, opt, "strong_psd_interval");
    const SweepResult r = sign_sweep(a.mid(), a.rad(), Definiteness::semidefinite, opt.tol, opt.exec);
    return r.worst.outcome == Outcome::pass;
}

bool strong_pd_interval(const IntervalMatrix& a, const Options& opt)
{
    require_symmetric(a, "strong_pd_interval");
    require_sign_budget(a, opt, "strong_pd_interval");
    const SweepResult r = sign_sweep(a.mid(), a.rad(), Definiteness::definite, opt.tol, opt.exec);
    return r.worst.outcome == Outcome::pass;
}

double hertz_min_eig(const IntervalMatrix& a, Exec exec)
{
    require_symmetric(a, "hertz_min_eig");
    if (a.rows() > 40)
        throw std::length_error("hertz_min_eig: dimension too large for sign-vector enumeration");
    return sign_sweep(a.mid(), a.rad(), Definiteness::semidefinite, Tolerance{}, exec).min_eig;
}

double weyl_min_eig_bound(const IntervalMatrix& a)
{
    require_symmetric(a, "weyl_min_eig_bound");
    return min_eig(SymMatrix(a.mid())) - spectral_radius_nonneg(a.rad()).upper;
}

std::optional<cert::WitnessPoint> weak_witness(const ParametricSymMatrix& pm, Definiteness d, const Options& opt)
{
    const std::size_t k_count = pm.num_params();
    const std::vector<double> lo = pm.box().lower();
    const std::vector<double> hi = pm.box().upper();
    SymMatrix buf(pm.dim());

    const auto objective = [&](const std::vector<double>& p) {
        evaluate_into(pm, p, buf);
        return min_eig(buf);
    };
    const auto accepted = [&](const std::vector<double>& p, double value) {
        evaluate_into(pm, p, buf);
        const double tau = opt.tol.for_matrix(buf);
        return d == Definiteness::definite ? value > tau : value >= -tau;
    };

    std::mt19937_64 rng(opt.seed);
    constexpr double kGolden = 0.6180339887498949;
    constexpr int kSweeps = 50;
    constexpr int kLineIters = 40;

    const unsigned starts = std::max(1u, opt.restarts);
    for (unsigned s = 0; s < starts; ++s) {
        std::vector<double> p(k_count);
        for (std::size_t k = 0; k < k_count; ++k) {
            if (s == 0) {
                p[k] = pm.box()[k].mid();
            } else {
                std::uniform_real_distribution<double> u(lo[k], hi[k]);
                p[k] = lo[k] == hi[k] ? lo[k] : u(rng);
            }
        }
        double best = objective(p);
        if (accepted(p, best))
            return cert::WitnessPoint{p, best};

        for (int sweep = 0; sweep < kSweeps; ++sweep) {
            const double before = best;
            for (std::size_t k = 0; k < k_count; ++k) {
                if (lo[k] == hi[k])
                    continue;
                // lambda_min(A(p)) is concave in p, hence unimodal along a coordinate.
                const auto along = [&](double t) {
                    std::vector<double> q = p;
                    q[k] = t;
                    return objective(q);
                };
                double a = lo[k];
                double b = hi[k];
                double x1 = b - kGolden * (b - a);
                double x2 = a + kGolden * (b - a);
                double f1 = along(x1);
                double f2 = along(x2);
                for (int it = 0; it < kLineIters; ++it) {
                    if (f1 < f2) {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + kGolden * (b - a);
                        f2 = along(x2);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - kGolden * (b - a);
                        f1 = along(x1);
                    }
                }
                const double candidates[] = {x1, x2, lo[k], hi[k], p[k]};
                double arg = p[k];
                double val = best;
                for (double t : candidates) {
                    const double f = along(t);
                    if (f > val) {
                        val = f;
                        arg = t;
                    }
                }
                p[k] = arg;
                best = val;
                if (accepted(p, best))
                    return cert::WitnessPoint{p, best};
            }
            if (best - before <= 1e-12 * (1.0 + std::abs(best)))
                break;
        }
    }
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
Verdict timed(Verdict& out_log, Fn&& fn)
{
    const auto t0 = Clock::now();
    Verdict v = fn();
    const std::chrono::duration<double, std::milli> dt = Clock::now() - t0;
    out_log.stages.push_back({v.method, v.status, dt.count()});
    return v;
}

Verdict finish(Verdict v, const Verdict& log)
{
    v.stages = log.stages;
    return v;
}

Verdict witness_verdict(const ParametricSymMatrix& pm, Definiteness d, const Options& opt)
{
    Verdict v;
    v.method = Method::witness;
    if (auto w = weak_witness(pm, d, opt)) {
        v.status = Status::proved;
        v.certificate = std::move(*w);
    } else {
        v.note = "no witness found (absence proves nothing)";
    }
    return v;
}

} // namespace

Verdict decide_with(const ParametricSymMatrix& pm, Goal goal, Method method, const Options& opt)
{
    const Definiteness d = definiteness_of(goal);
    Verdict log;
    Verdict v;
    const auto not_applicable = [&] {
        Verdict u;
        u.method = method;
        u.note = std::string("method ") + std::string(to_string(method)) + " does not apply to goal " +
                 std::string(to_string(goal));
        return u;
    };
    if (is_strong(goal)) {
        switch (method) {
        case Method::split: v = timed(log, [&] { return split_verdict(pm, d, opt); }); break;
        case Method::regularity:
            if (d != Definiteness::definite)
                return not_applicable();
            v = timed(log, [&] { return strong_pd_regularity(pm, opt); });
            break;
        case Method::vertex: v = timed(log, [&] { return vertex_verdict(pm, d, opt); }); break;
        default: return not_applicable();
        }
    } else {
        switch (method) {
        case Method::necessary: v = timed(log, [&] { return necessary_verdict(pm, d, opt); }); break;
        case Method::witness: v = timed(log, [&] { return witness_verdict(pm, d, opt); }); break;
        default: return not_applicable();
        }
    }
    return finish(std::move(v), log);
}

Verdict decide(const ParametricSymMatrix& pm, Goal goal, const Options& opt)
{
    const Definiteness d = definiteness_of(goal);
    Verdict log;
    if (is_strong(goal)) {
        Verdict v = timed(log, [&] { return split_verdict(pm, d, opt); });
        if (v.status == Status::proved)
            return finish(std::move(v), log);
        if (d == Definiteness::definite) {
            v = timed(log, [&] { return strong_pd_regularity(pm, opt); });
            if (v.status == Status::proved)
                return finish(std::move(v), log);
        }
        v = timed(log, [&] { return vertex_verdict(pm, d, opt); });
        return finish(std::move(v), log);
    }
    Verdict v = timed(log, [&] { return necessary_verdict(pm, d, opt); });
    if (v.status == Status::disproved)
        return finish(std::move(v), log);
    Verdict w = timed(log, [&] { return witness_verdict(pm, d, opt); });
    if (w.status == Status::proved)
        return finish(std::move(w), log);
    w.note = "weak goals are only decided by the necessary condition or a constructive witness";
    return finish(std::move(w), log);
}

} // namespace psdparam
