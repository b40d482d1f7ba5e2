#pragma once

// Enumeration kernels shared by the vertex (parameter) and sign-vector
// characterizations. Each index in [0, count) names one real symmetric matrix;
// the sweep classifies every one of them and reduces to the worst case. The
// serial path is the reference; the OpenMP path must return the same result.

#include "psdparam/linalg.hpp"
#include "psdparam/parametric.hpp"

#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psdparam {

enum class Exec { serial, parallel };

enum class Outcome : int { pass = 0, marginal = 1, fail = 2 };

/// Result of testing one matrix against the tolerance policy.
///   semidefinite: pass iff min_eig >= -tau, else fail.
///   definite:     pass iff min_eig > tau; fail iff min_eig < -tau or the
///                 eigenvector gives a provably nonpositive quadratic form;
///                 otherwise marginal.
struct MatrixCheck {
    double min_eig = std::numeric_limits<double>::infinity();
    double tau = 0.0;
    Outcome outcome = Outcome::pass;
    bool exact_refutation = false;
};

MatrixCheck classify(const SymMatrix& a, Definiteness d, const Tolerance& tol);

struct SweepResult {
    std::uint64_t evaluated = 0;
    /// Worst matrix: highest outcome, then smallest min_eig, then smallest index.
    std::uint64_t worst_index = 0;
    MatrixCheck worst;
    /// Smallest min_eig over all matrices (ties to the smallest index).
    std::uint64_t argmin_index = 0;
    double min_eig = std::numeric_limits<double>::infinity();
};

namespace detail {

inline bool worse(const MatrixCheck& a, std::uint64_t ia, const MatrixCheck& b, std::uint64_t ib)
{
    if (a.outcome != b.outcome)
        return a.outcome > b.outcome;
    if (a.min_eig != b.min_eig)
        return a.min_eig < b.min_eig;
    return ia < ib;
}

inline void absorb(SweepResult& acc, const MatrixCheck& c, std::uint64_t index)
{
    if (acc.evaluated == 0 || worse(c, index, acc.worst, acc.worst_index)) {
        acc.worst = c;
        acc.worst_index = index;
    }
    if (acc.evaluated == 0 || c.min_eig < acc.min_eig || (c.min_eig == acc.min_eig && index < acc.argmin_index)) {
        acc.min_eig = c.min_eig;
        acc.argmin_index = index;
    }
    ++acc.evaluated;
}

inline void merge(SweepResult& acc, const SweepResult& part)
{
    if (part.evaluated == 0)
        return;
    if (acc.evaluated == 0) {
        acc = part;
        return;
    }
    if (worse(part.worst, part.worst_index, acc.worst, acc.worst_index)) {
        acc.worst = part.worst;
        acc.worst_index = part.worst_index;
    }
    if (part.min_eig < acc.min_eig || (part.min_eig == acc.min_eig && part.argmin_index < acc.argmin_index)) {
        acc.min_eig = part.min_eig;
        acc.argmin_index = part.argmin_index;
    }
    acc.evaluated += part.evaluated;
}

} // namespace detail

/// `fill(index, out)` writes matrix `index` into `out` (an n x n SymMatrix
/// owned by the calling thread); it must be safe to call concurrently.
template <class Fill>
SweepResult sweep(std::uint64_t count, std::size_t n, const Fill& fill, Definiteness d, const Tolerance& tol,
                  Exec exec = Exec::parallel)
{
    SweepResult result;
    if (exec == Exec::serial || count < 2) {
        SymMatrix buf(n);
        for (std::uint64_t i = 0; i < count; ++i) {
            fill(i, buf);
            detail::absorb(result, classify(buf, d, tol), i);
        }
        return result;
    }
#ifdef _OPENMP
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
        SweepResult local;
        SymMatrix buf(n);
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < total; ++i) {
            const auto idx = static_cast<std::uint64_t>(i);
            fill(idx, buf);
            detail::absorb(local, classify(buf, d, tol), idx);
        }
#pragma omp critical(psdparam_sweep_merge)
        detail::merge(result, local);
    }
#else
    SymMatrix buf(n);
    for (std::uint64_t i = 0; i < count; ++i) {
        fill(i, buf);
        detail::absorb(result, classify(buf, d, tol), i);
    }
#endif
    return result;
}

/// Sweep over the reduced parameter vertices of `pm`.
SweepResult vertex_sweep(const ParametricSymMatrix& pm, const VertexPlan& plan, Definiteness d, const Tolerance& tol,
                         Exec exec = Exec::parallel);

/// Sweep over Mid - diag(z) Rad diag(z) for z in {+-1}^n with z_1 = +1.
/// Bit b of the index is the sign of z_{b+2} (set means -1).
SweepResult sign_sweep(const Matrix& mid, const Matrix& rad, Definiteness d, const Tolerance& tol,
                       Exec exec = Exec::parallel);

/// z for a sign_sweep index.
std::vector<int> sign_vector(std::size_t n, std::uint64_t index);

/// Threads the OpenMP runtime would use (1 without OpenMP).
int max_threads();

} // namespace psdparam
