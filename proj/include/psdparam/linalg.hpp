#pragma once

#include "psdparam/matrix.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace psdparam {

/// Raised when the Jacobi sweep cap is hit.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by invert() when the smallest pivot falls below 1e-12 * ||A||.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Definiteness tolerance policy. Unless an absolute value is forced, the
/// tolerance for a matrix A is relative * (1 + ||A||) with ||A|| = max|a_ij| * n.
struct Tolerance {
    double relative = 1e-10;
    std::optional<double> absolute;

    double for_matrix(const SymMatrix& a) const
    {
        return absolute ? *absolute : relative * (1.0 + a.norm_bound());
    }
};

struct EigenDecomposition {
    std::vector<double> values; ///< ascending
    Matrix vectors;             ///< columns are eigenvectors; empty unless requested
};

/// Cyclic Jacobi eigen-decomposition, at most 30 sweeps.
EigenDecomposition eig_sym(const SymMatrix& a, bool want_vectors = true);

double min_eig(const SymMatrix& a);

/// min_eig >= -tau
bool is_psd(const SymMatrix& a, double tau);
bool is_psd(const SymMatrix& a, const Tolerance& tol = {});
/// min_eig > +tau
bool is_pd(const SymMatrix& a, double tau);
bool is_pd(const SymMatrix& a, const Tolerance& tol = {});

/// A = plus - minus with both parts positive semidefinite.
struct PsdSplit {
    SymMatrix plus;
    SymMatrix minus;
};

/// Spectral split: plus = Q diag(max(l,0)) Q^T, minus = Q diag(max(-l,0)) Q^T.
PsdSplit psd_split(const SymMatrix& a);

/// Gaussian elimination with partial pivoting.
Matrix invert(const Matrix& a);
inline Matrix invert(const SymMatrix& a) { return invert(a.matrix()); }

/// Determinant via partial-pivoted elimination (no singularity check).
double determinant(const Matrix& a);

struct SpectralRadius {
    double upper = 0.0; ///< returned value: upper Collatz-Wielandt bound
    double lower = 0.0;
    int iterations = 0;
    bool converged = false; ///< false means the bracket did not close within the cap
};

/// Perron root of a nonnegative matrix, bracketed by Collatz-Wielandt bounds.
/// Throws std::invalid_argument on negative or non-finite entries.
SpectralRadius spectral_radius_nonneg(const Matrix& r, double bracket_width = 1e-9, int max_iter = 10000);

/// Rigorous test that x^T A x <= 0 for the given floating-point x, using the
/// standard gamma_{n+1} |x|^T |A| |x| bound on the rounding error. A true result
/// proves A is not positive definite (x must be nonzero).
bool quadratic_form_nonpositive(const SymMatrix& a, std::span<const double> x);

} // namespace psdparam
