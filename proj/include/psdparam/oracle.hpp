#pragma once

// Brute-force reference for tests. Nothing in the decision procedures calls
// into this header; eigenvalues here come from Eigen, not from the Jacobi
// solver, and A(p) is re-evaluated with a separate loop.

#include "psdparam/definiteness.hpp"
#include "psdparam/parametric.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace psdparam::oracle {

struct Grid {
    unsigned points_per_axis = 2; ///< >= 2, endpoints included
};
struct Random {
    std::size_t samples = 1;
    std::uint64_t seed = 0x5EED;
};
struct Vertices {};

using Scheme = std::variant<Grid, Random, Vertices>;

class BudgetExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

struct SampleMin {
    double min_eig = 0.0;
    std::vector<double> argmin;
    std::size_t samples = 0;
};

/// Smallest eigenvalue of an explicit real symmetric matrix (Eigen).
double reference_min_eig(const SymMatrix& a);

/// A(p) evaluated independently of psdparam::evaluate.
SymMatrix reference_evaluate(const ParametricSymMatrix& pm, const std::vector<double>& p);

/// Minimum of lambda_min(A(p)) over the sample set. `Vertices` enumerates all
/// 2^K endpoint combinations without any reduction (K <= 20). Grids are capped
/// at 2^22 points.
SampleMin sample_min_eig(const ParametricSymMatrix& pm, const Scheme& scheme);

/// Conjunction of PSD (min_eig >= -tau) or PD (min_eig > tau) over all 2^K
/// vertices, tau = tol.for_matrix(A(p)). Throws BudgetExceeded for K > 20.
bool full_vertex_check(const ParametricSymMatrix& pm, Definiteness d, const Tolerance& tol = {});

/// Re-derives a verdict's certificate from scratch. Returns an empty string
/// when it checks out, otherwise a description of the mismatch.
std::string recheck_certificate(const ParametricSymMatrix& pm, Goal goal, const Verdict& v,
                                const Tolerance& tol = {});

} // namespace psdparam::oracle
