#include "psdparam/sweep.hpp"

#include <stdexcept>

namespace psdparam {

MatrixCheck classify(const SymMatrix& a, Definiteness d, const Tolerance& tol)
{
    MatrixCheck c;
    c.tau = tol.for_matrix(a);
    if (d == Definiteness::semidefinite) {
        c.min_eig = min_eig(a);
        c.outcome = c.min_eig >= -c.tau ? Outcome::pass : Outcome::fail;
        return c;
    }
    c.min_eig = min_eig(a);
    if (c.min_eig > c.tau) {
        c.outcome = Outcome::pass;
    } else if (c.min_eig < -c.tau) {
        c.outcome = Outcome::fail;
    } else {
        const EigenDecomposition e = eig_sym(a, true);
        std::vector<double> x(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            x[i] = e.vectors(i, 0);
        if (quadratic_form_nonpositive(a, x)) {
            c.outcome = Outcome::fail;
            c.exact_refutation = true;
        } else {
            c.outcome = Outcome::marginal;
        }
    }
    return c;
}

SweepResult vertex_sweep(const ParametricSymMatrix& pm, const VertexPlan& plan, Definiteness d, const Tolerance& tol,
                         Exec exec)
{
    if (plan.num_free() >= 63)
        throw std::length_error("vertex_sweep: vertex count does not fit in 64 bits");
    const auto fill = [&pm, &plan](std::uint64_t index, SymMatrix& out) {
        thread_local std::vector<double> p;
        p.resize(plan.num_params());
        plan.vertex(index, p);
        evaluate_into(pm, p, out);
    };
    return sweep(plan.count(), pm.dim(), fill, d, tol, exec);
}

std::vector<int> sign_vector(std::size_t n, std::uint64_t index)
{
    std::vector<int> z(n, 1);
    for (std::size_t i = 1; i < n; ++i)
        if ((index >> (i - 1)) & 1u)
            z[i] = -1;
    return z;
}

SweepResult sign_sweep(const Matrix& mid, const Matrix& rad, Definiteness d, const Tolerance& tol, Exec exec)
{
    const std::size_t n = mid.rows();
    if (n > 63)
        throw std::length_error("sign_sweep: 2^(n-1) sign vectors do not fit in 64 bits");
    const std::uint64_t count = n == 0 ? 0 : std::uint64_t{1} << (n - 1);
    const auto fill = [&mid, &rad, n](std::uint64_t index, SymMatrix& out) {
        const auto sign = [index](std::size_t i) { return i > 0 && ((index >> (i - 1)) & 1u) ? -1.0 : 1.0; };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                out.set(i, j, mid(i, j) - sign(i) * sign(j) * rad(i, j));
    };
    return sweep(count, n, fill, d, tol, exec);
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace psdparam
