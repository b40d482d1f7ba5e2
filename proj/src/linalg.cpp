#include "psdparam/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace psdparam {
namespace {

constexpr int kMaxSweeps = 30;

void rotate(Matrix& a, std::size_t i, std::size_t j, std::size_t k, std::size_t l, double s, double tau)
{
    const double g = a(i, j);
    const double h = a(k, l);
    a(i, j) = g - s * (h + g * tau);
    a(k, l) = h + s * (g - h * tau);
}

} // namespace

EigenDecomposition eig_sym(const SymMatrix& sym, bool want_vectors)
{
    const std::size_t n = sym.size();
    Matrix a = sym.matrix();
    Matrix v = want_vectors ? Matrix::identity(n) : Matrix();
    std::vector<double> d(n), b(n), z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = b[i] = a(i, i);

    bool converged = n <= 1;
    for (int sweep = 1; sweep <= kMaxSweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::abs(a(p, q));
        if (off == 0.0) {
            converged = true;
            break;
        }
        // Early sweeps only rotate the large off-diagonal entries.
        const double thresh = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double g = 100.0 * std::abs(apq);
                if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) && std::abs(d[q]) + g == std::abs(d[q])) {
                    a(p, q) = 0.0;
                    continue;
                }
                if (std::abs(apq) <= thresh)
                    continue;

                double h = d[q] - d[p];
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0)
                        t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a(p, q) = 0.0;
                for (std::size_t j = 0; j < p; ++j)
                    rotate(a, j, p, j, q, s, tau);
                for (std::size_t j = p + 1; j < q; ++j)
                    rotate(a, p, j, j, q, s, tau);
                for (std::size_t j = q + 1; j < n; ++j)
                    rotate(a, p, j, q, j, s, tau);
                if (want_vectors)
                    for (std::size_t j = 0; j < n; ++j)
                        rotate(v, j, p, j, q, s, tau);
            }
        }
        for (std::size_t p = 0; p < n; ++p) {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::abs(a(p, q));
        if (off != 0.0) {
            std::ostringstream os;
            os << "eig_sym: Jacobi did not converge in " << kMaxSweeps << " sweeps (n=" << n << ")";
            throw ConvergenceError(os.str());
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] = d[order[k]];
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eig(const SymMatrix& a)
{
    if (a.size() == 0)
        return std::numeric_limits<double>::infinity();
    return eig_sym(a, false).values.front();
}

bool is_psd(const SymMatrix& a, double tau) { return min_eig(a) >= -tau; }
bool is_psd(const SymMatrix& a, const Tolerance& tol) { return is_psd(a, tol.for_matrix(a)); }
bool is_pd(const SymMatrix& a, double tau) { return min_eig(a) > tau; }
bool is_pd(const SymMatrix& a, const Tolerance& tol) { return is_pd(a, tol.for_matrix(a)); }

PsdSplit psd_split(const SymMatrix& a)
{
    const std::size_t n = a.size();
    const EigenDecomposition e = eig_sym(a, true);
    PsdSplit out{SymMatrix(n), SymMatrix(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double plus = 0.0;
            double minus = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double w = e.vectors(i, k) * e.vectors(j, k);
                // zero eigenvalues land in the positive part
                if (e.values[k] >= 0.0)
                    plus += e.values[k] * w;
                else
                    minus -= e.values[k] * w;
            }
            out.plus.set(i, j, plus);
            out.minus.set(i, j, minus);
        }
    }
    return out;
}

Matrix invert(const Matrix& a)
{
    if (!a.square())
        throw std::invalid_argument("invert: matrix is not square");
    const std::size_t n = a.rows();
    const double norm = a.max_abs() * static_cast<double>(n);
    Matrix lu = a;
    Matrix inv = Matrix::identity(n);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(lu(r, col)) > std::abs(lu(piv, col)))
                piv = r;
        if (!(std::abs(lu(piv, col)) >= 1e-12 * norm) || norm == 0.0) {
            std::ostringstream os;
            os << "invert: matrix is singular to working precision (pivot " << lu(piv, col) << " at column "
               << col << ")";
            throw SingularMatrixError(os.str());
        }
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(piv, j), lu(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const double p = lu(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            lu(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col)
                continue;
            const double f = lu(r, col);
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                lu(r, j) -= f * lu(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

double determinant(const Matrix& a)
{
    if (!a.square())
        throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = a.rows();
    Matrix lu = a;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(lu(r, col)) > std::abs(lu(piv, col)))
                piv = r;
        if (lu(piv, col) == 0.0)
            return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(lu(piv, j), lu(col, j));
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = lu(r, col) / lu(col, col);
            for (std::size_t j = col; j < n; ++j)
                lu(r, j) -= f * lu(col, j);
        }
    }
    return det;
}

SpectralRadius spectral_radius_nonneg(const Matrix& r, double bracket_width, int max_iter)
{
    if (!r.square())
        throw std::invalid_argument("spectral_radius_nonneg: matrix is not square");
    const std::size_t n = r.rows();
    double max_row = 0.0;
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = r(i, j);
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("spectral_radius_nonneg: entries must be finite and nonnegative");
            row += v;
        }
        max_row = std::max(max_row, row);
        max_diag = std::max(max_diag, r(i, i));
    }
    SpectralRadius out;
    if (max_row == 0.0) {
        out.converged = true;
        return out;
    }

    // Iterating with R + sI keeps x strictly positive and breaks periodicity.
    const double shift = 0.5 * max_row;
    std::vector<double> x(n, 1.0), y(n);
    out.lower = 0.0;
    out.upper = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        out.iterations = it;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += r(i, j) * x[j];
            y[i] = s;
            const double ratio = s / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        out.lower = std::max(out.lower, lo);
        out.upper = std::min(out.upper, hi);
        if (out.upper - out.lower < bracket_width) {
            out.converged = true;
            break;
        }
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = y[i] + shift * x[i];
            scale = std::max(scale, x[i]);
        }
        for (double& xi : x)
            xi /= scale;
    }

    // Perron-Frobenius: max diagonal entry <= rho <= max row sum.
    const double slack = 1e-12 * max_row;
    if (out.upper > max_row + slack || out.upper < max_diag - slack)
        throw std::logic_error("spectral_radius_nonneg: result violates Perron-Frobenius bounds");
    return out;
}

bool quadratic_form_nonpositive(const SymMatrix& a, std::span<const double> x)
{
    const std::size_t n = a.size();
    if (x.size() != n)
        throw std::invalid_argument("quadratic_form_nonpositive: length mismatch");
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }))
        return false;
    double q = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            q += x[i] * a(i, j) * x[j];
            mag += std::abs(x[i]) * std::abs(a(i, j)) * std::abs(x[j]);
        }
    constexpr double u = std::numeric_limits<double>::epsilon() / 2;
    const double k = static_cast<double>(n * n + 2);
    const double gamma = k * u / (1.0 - k * u);
    const double bound = gamma * mag * (1.0 + 4 * u);
    return q + bound <= 0.0;
}

} // namespace psdparam
