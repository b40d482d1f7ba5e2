#pragma once

#include "psdparam/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace psdparam {

/// Rounding policy for interval operations. `outward` widens an inexact bound
/// by one ulp in the safe direction; `nearest` keeps round-to-nearest results
/// and is meant for heuristic paths only.
enum class Rounding { outward, nearest };

/// Closed real interval [inf, sup].
class Interval {
public:
    constexpr Interval() = default;
    /// Throws std::invalid_argument unless inf <= sup (NaN rejected).
    Interval(double inf, double sup);
    static Interval point(double v) { return Interval(v, v); }

    double inf() const { return inf_; }
    double sup() const { return sup_; }

    double mid() const;
    /// Rounded up so that [mid - rad, mid + rad] contains [inf, sup].
    double rad() const;
    double width() const { return sup_ - inf_; }

    bool degenerate() const { return inf_ == sup_; }
    bool contains(double x) const { return inf_ <= x && x <= sup_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double inf_ = 0.0;
    double sup_ = 0.0;
};

Interval interval_add(const Interval& a, const Interval& b, Rounding r = Rounding::outward);
Interval interval_mul(const Interval& a, const Interval& b, Rounding r = Rounding::outward);

inline Interval operator+(const Interval& a, const Interval& b) { return interval_add(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return interval_mul(a, b); }

/// Rectangular matrix of intervals, row-major.
class IntervalMatrix {
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols, Interval fill = Interval());
    /// Degenerate interval matrix equal to `m`.
    explicit IntervalMatrix(const Matrix& m);
    /// Throws unless inf <= sup entrywise.
    static IntervalMatrix from_bounds(const Matrix& inf, const Matrix& sup);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix inf() const;
    Matrix sup() const;
    Matrix mid() const;
    Matrix rad() const;

    /// True when Mid A and Rad A are symmetric within `tol`; tol < 0 selects
    /// the default 1e-12 * max|entry|.
    bool symmetric(double tol = -1.0) const;

    friend bool operator==(const IntervalMatrix&, const IntervalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Interval> data_;
};

/// Entrywise interval_add. Throws std::invalid_argument on shape mismatch.
IntervalMatrix im_add(const IntervalMatrix& a, const IntervalMatrix& b, Rounding r = Rounding::outward);

/// Entry (i,j) = [a_ij, a_ij] * p.
IntervalMatrix scale(const Matrix& a, const Interval& p, Rounding r = Rounding::outward);
inline IntervalMatrix scale(const SymMatrix& a, const Interval& p, Rounding r = Rounding::outward)
{
    return scale(a.matrix(), p, r);
}

/// inf <= m <= sup entrywise. Throws std::invalid_argument on shape mismatch.
bool contains(const IntervalMatrix& a, const Matrix& m);

/// Default symmetry tolerance 1e-12 * max|entry|.
double default_symmetry_tolerance(const Matrix& m);

/// {"rows":n,"cols":m,"inf":[[...]],"sup":[[...]]}
nlohmann::json to_json(const IntervalMatrix& a);
IntervalMatrix interval_matrix_from_json(const nlohmann::json& j);

std::string to_string(const Interval& v);

} // namespace psdparam
