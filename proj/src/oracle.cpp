#include "psdparam/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace psdparam::oracle {
namespace {

Eigen::MatrixXd to_eigen(const Matrix& m)
{
    Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

double scale_of(const SymMatrix& a) { return 1.0 + a.norm_bound(); }

// Split sum recomputed with Eigen's eigen-decomposition; `lower` selects
// sum(A1 lo - A2 hi), otherwise sum(A1 hi - A2 lo).
Eigen::MatrixXd split_sum(const ParametricSymMatrix& pm, bool lower)
{
    const auto n = static_cast<Eigen::Index>(pm.dim());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < pm.num_params(); ++k) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(pm.coefficient(k).matrix()));
        const Eigen::VectorXd pos = es.eigenvalues().cwiseMax(0.0);
        const Eigen::VectorXd neg = (-es.eigenvalues()).cwiseMax(0.0);
        const Eigen::MatrixXd plus = es.eigenvectors() * pos.asDiagonal() * es.eigenvectors().transpose();
        const Eigen::MatrixXd minus = es.eigenvectors() * neg.asDiagonal() * es.eigenvectors().transpose();
        const Interval& p = pm.box()[k];
        s += plus * (lower ? p.inf() : p.sup()) - minus * (lower ? p.sup() : p.inf());
    }
    return s;
}

bool satisfies(double m, double tau, Definiteness d) { return d == Definiteness::definite ? m > tau : m >= -tau; }

} // namespace

double reference_min_eig(const SymMatrix& a)
{
    if (a.size() == 0)
        return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a.matrix()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

SymMatrix reference_evaluate(const ParametricSymMatrix& pm, const std::vector<double>& p)
{
    const std::size_t n = pm.dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < pm.num_params(); ++k)
                s += pm.coefficient(k)(i, j) * p[k];
            m(i, j) = s;
        }
    return SymMatrix(m);
}

SampleMin sample_min_eig(const ParametricSymMatrix& pm, const Scheme& scheme)
{
    const std::size_t k_count = pm.num_params();
    const auto lo = pm.box().lower();
    const auto hi = pm.box().upper();
    SampleMin out;
    out.min_eig = std::numeric_limits<double>::infinity();
    std::vector<double> p(k_count);
    const auto visit = [&] {
        const double m = reference_min_eig(reference_evaluate(pm, p));
        if (m < out.min_eig) {
            out.min_eig = m;
            out.argmin = p;
        }
        ++out.samples;
    };

    if (std::holds_alternative<Vertices>(scheme)) {
        if (k_count > 20)
            throw BudgetExceeded("sample_min_eig: vertex enumeration limited to K <= 20");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k_count); ++mask) {
            for (std::size_t k = 0; k < k_count; ++k)
                p[k] = (mask >> k) & 1u ? hi[k] : lo[k];
            visit();
        }
    } else if (const auto* g = std::get_if<Grid>(&scheme)) {
        if (g->points_per_axis < 2)
            throw std::invalid_argument("sample_min_eig: grid needs at least 2 points per axis");
        const double total = std::pow(static_cast<double>(g->points_per_axis), static_cast<double>(k_count));
        if (total > 4194304.0)
            throw BudgetExceeded("sample_min_eig: grid too large");
        std::vector<unsigned> idx(k_count, 0);
        while (true) {
            for (std::size_t k = 0; k < k_count; ++k)
                p[k] = lo[k] + (hi[k] - lo[k]) * idx[k] / (g->points_per_axis - 1);
            visit();
            std::size_t k = 0;
            while (k < k_count && ++idx[k] == g->points_per_axis)
                idx[k++] = 0;
            if (k == k_count)
                break;
        }
    } else {
        const auto& r = std::get<Random>(scheme);
        if (r.samples < 1)
            throw std::invalid_argument("sample_min_eig: need at least one sample");
        std::mt19937_64 rng(r.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t s = 0; s < r.samples; ++s) {
            for (std::size_t k = 0; k < k_count; ++k)
                p[k] = lo[k] + (hi[k] - lo[k]) * u(rng);
            visit();
        }
    }
    return out;
}

bool full_vertex_check(const ParametricSymMatrix& pm, Definiteness d, const Tolerance& tol)
{
    const std::size_t k_count = pm.num_params();
    if (k_count > 20)
        throw BudgetExceeded("full_vertex_check: K > 20");
    const auto lo = pm.box().lower();
    const auto hi = pm.box().upper();
    std::vector<double> p(k_count);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k_count); ++mask) {
        for (std::size_t k = 0; k < k_count; ++k)
            p[k] = (mask >> k) & 1u ? hi[k] : lo[k];
        const SymMatrix a = reference_evaluate(pm, p);
        if (!satisfies(reference_min_eig(a), tol.for_matrix(a), d))
            return false;
    }
    return true;
}

std::string recheck_certificate(const ParametricSymMatrix& pm, Goal goal, const Verdict& v, const Tolerance& tol)
{
    const Definiteness d = definiteness_of(goal);
    std::ostringstream err;

    const auto check_matrix = [&](const SymMatrix& recorded, const Eigen::MatrixXd& expect, double recorded_min) {
        const double diff = (to_eigen(recorded.matrix()) - expect).cwiseAbs().maxCoeff();
        if (diff > 1e-9 * scale_of(recorded))
            err << "summed matrix differs from independent recomputation by " << diff << "; ";
        const double m = reference_min_eig(recorded);
        if (std::abs(m - recorded_min) > 1e-9 * scale_of(recorded))
            err << "recorded min_eig " << recorded_min << " but matrix has " << m << "; ";
        return m;
    };

    if (const auto* c = std::get_if<cert::CounterexampleVertex>(&v.certificate)) {
        if (!pm.box().contains(c->p))
            err << "counterexample outside the box; ";
        const SymMatrix a = reference_evaluate(pm, c->p);
        const double m = reference_min_eig(a);
        const double slack = 1e-9 * scale_of(a);
        if (std::abs(m - c->min_eig) > slack)
            err << "recorded min_eig " << c->min_eig << " but vertex has " << m << "; ";
        if (v.status == Status::disproved) {
            const bool fails = c->exact_refutation ? m <= slack : !satisfies(m, c->tau, d);
            if (!fails)
                err << "counterexample does not violate the property (min_eig " << m << "); ";
        }
    } else if (const auto* c = std::get_if<cert::SplitWitness>(&v.certificate)) {
        const double m = check_matrix(c->matrix, split_sum(pm, true), c->min_eig);
        if (v.status == Status::proved && !satisfies(m, c->tau, d))
            err << "split matrix does not have the property; ";
    } else if (const auto* c = std::get_if<cert::NecessaryFailure>(&v.certificate)) {
        const double m = check_matrix(c->matrix, split_sum(pm, false), c->min_eig);
        if (v.status == Status::disproved) {
            const double slack = 1e-9 * scale_of(c->matrix);
            const bool fails = c->exact_refutation ? m <= slack : !satisfies(m, c->tau, d);
            if (!fails)
                err << "necessary-condition matrix does not fail the property; ";
        }
    } else if (const auto* c = std::get_if<cert::VertexList>(&v.certificate)) {
        if (v.status == Status::proved && !full_vertex_check(pm, d, tol))
            err << "vertex list claims proof but the full vertex check fails; ";
        if (c->count != (std::uint64_t{1} << c->free_parameters))
            err << "vertex count does not match free parameters; ";
    } else if (const auto* c = std::get_if<cert::BeeckWitness>(&v.certificate)) {
        if (v.status == Status::proved) {
            const Eigen::MatrixXd mid = to_eigen(reference_evaluate(pm, pm.box().mid()).matrix());
            const Eigen::MatrixXd inv = mid.inverse();
            const auto n = static_cast<Eigen::Index>(pm.dim());
            Eigen::MatrixXd center = Eigen::MatrixXd::Zero(n, n);
            Eigen::MatrixXd radius = Eigen::MatrixXd::Zero(n, n);
            for (std::size_t k = 0; k < pm.num_params(); ++k) {
                const Eigen::MatrixXd ca = inv * to_eigen(pm.coefficient(k).matrix());
                center += ca * pm.box()[k].mid();
                radius += ca.cwiseAbs() * pm.box()[k].rad();
            }
            const Eigen::MatrixXd bound = (Eigen::MatrixXd::Identity(n, n) - center).cwiseAbs() + radius;
            const double rho = bound.eigenvalues().cwiseAbs().maxCoeff();
            if (std::abs(rho - c->rho) > 1e-6)
                err << "recorded rho " << c->rho << " but independent value is " << rho << "; ";
            if (!(rho < 1.0))
                err << "independent rho is not below 1; ";
            if (reference_min_eig(reference_evaluate(pm, pm.box().mid())) <= 0.0)
                err << "A(mid p) is not positive definite; ";
        }
    } else if (const auto* c = std::get_if<cert::WitnessPoint>(&v.certificate)) {
        if (!pm.box().contains(c->p))
            err << "witness outside the box; ";
        const SymMatrix a = reference_evaluate(pm, c->p);
        const double m = reference_min_eig(a);
        if (std::abs(m - c->min_eig) > 1e-9 * scale_of(a))
            err << "recorded min_eig " << c->min_eig << " but witness has " << m << "; ";
        if (!satisfies(m, tol.for_matrix(a), d))
            err << "witness does not have the property; ";
    } else if (v.status != Status::unknown) {
        err << "decisive verdict without certificate; ";
    }
    return err.str();
}

} // namespace psdparam::oracle
