#include "psdparam/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace psdparam {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Knuth TwoSum: s + err == a + b exactly (for finite, non-overflowing input).
double two_sum_err(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

// Bounds for a rounded-to-nearest result `s` whose exact value is s + err.
double lower_of(double s, double err)
{
    if (!std::isfinite(s))
        return s;
    return err < 0.0 ? std::nextafter(s, -kInf) : s;
}

double upper_of(double s, double err)
{
    if (!std::isfinite(s))
        return s;
    return err > 0.0 ? std::nextafter(s, kInf) : s;
}

struct Rounded {
    double value;
    double err;
};

Rounded exact_sum(double a, double b)
{
    const double s = a + b;
    return {s, std::isfinite(s) ? two_sum_err(a, b, s) : 0.0};
}

Rounded exact_product(double a, double b)
{
    const double p = a * b;
    return {p, std::isfinite(p) ? std::fma(a, b, -p) : 0.0};
}

} // namespace

Interval::Interval(double inf, double sup) : inf_(inf), sup_(sup)
{
    if (!(inf <= sup)) {
        std::ostringstream os;
        os << "Interval: lower bound " << inf << " exceeds upper bound " << sup;
        throw std::invalid_argument(os.str());
    }
}

double Interval::mid() const
{
    if (inf_ == sup_)
        return inf_;
    return inf_ / 2 + sup_ / 2;
}

double Interval::rad() const
{
    const double m = mid();
    const Rounded up = exact_sum(sup_, -m);
    const Rounded down = exact_sum(m, -inf_);
    return std::max(upper_of(up.value, up.err), upper_of(down.value, down.err));
}

Interval interval_add(const Interval& a, const Interval& b, Rounding r)
{
    const Rounded lo = exact_sum(a.inf(), b.inf());
    const Rounded hi = exact_sum(a.sup(), b.sup());
    if (r == Rounding::nearest)
        return Interval(lo.value, hi.value);
    return Interval(lower_of(lo.value, lo.err), upper_of(hi.value, hi.err));
}

Interval interval_mul(const Interval& a, const Interval& b, Rounding r)
{
    const Rounded p[4] = {
        exact_product(a.inf(), b.inf()),
        exact_product(a.inf(), b.sup()),
        exact_product(a.sup(), b.inf()),
        exact_product(a.sup(), b.sup()),
    };
    double lo = kInf;
    double hi = -kInf;
    for (const Rounded& q : p) {
        if (r == Rounding::nearest) {
            lo = std::min(lo, q.value);
            hi = std::max(hi, q.value);
        } else {
            lo = std::min(lo, lower_of(q.value, q.err));
            hi = std::max(hi, upper_of(q.value, q.err));
        }
    }
    return Interval(lo, hi);
}

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols, Interval fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

IntervalMatrix::IntervalMatrix(const Matrix& m) : rows_(m.rows()), cols_(m.cols())
{
    data_.reserve(rows_ * cols_);
    for (double v : m.data())
        data_.push_back(Interval::point(v));
}

IntervalMatrix IntervalMatrix::from_bounds(const Matrix& inf, const Matrix& sup)
{
    if (inf.rows() != sup.rows() || inf.cols() != sup.cols())
        throw std::invalid_argument("IntervalMatrix: bound shapes differ");
    IntervalMatrix a(inf.rows(), inf.cols());
    for (std::size_t i = 0; i < inf.rows(); ++i)
        for (std::size_t j = 0; j < inf.cols(); ++j)
            a(i, j) = Interval(inf(i, j), sup(i, j));
    return a;
}

Matrix IntervalMatrix::inf() const
{
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data()[k] = data_[k].inf();
    return m;
}

Matrix IntervalMatrix::sup() const
{
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data()[k] = data_[k].sup();
    return m;
}

Matrix IntervalMatrix::mid() const
{
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data()[k] = data_[k].mid();
    return m;
}

Matrix IntervalMatrix::rad() const
{
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data()[k] = data_[k].rad();
    return m;
}

double default_symmetry_tolerance(const Matrix& m) { return 1e-12 * m.max_abs(); }

bool IntervalMatrix::symmetric(double tol) const
{
    if (rows_ != cols_)
        return false;
    const Matrix c = mid();
    const Matrix r = rad();
    if (tol < 0.0)
        tol = 1e-12 * std::max(c.max_abs(), r.max_abs());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs(c(i, j) - c(j, i)) > tol || std::abs(r(i, j) - r(j, i)) > tol)
                return false;
    return true;
}

IntervalMatrix im_add(const IntervalMatrix& a, const IntervalMatrix& b, Rounding r)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("im_add: shape mismatch");
    IntervalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = interval_add(a(i, j), b(i, j), r);
    return c;
}

IntervalMatrix scale(const Matrix& a, const Interval& p, Rounding r)
{
    IntervalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = interval_mul(Interval::point(a(i, j)), p, r);
    return c;
}

bool contains(const IntervalMatrix& a, const Matrix& m)
{
    if (a.rows() != m.rows() || a.cols() != m.cols())
        throw std::invalid_argument("contains: shape mismatch");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).contains(m(i, j)))
                return false;
    return true;
}

nlohmann::json to_json(const IntervalMatrix& a)
{
    auto rows_of = [&](bool upper) {
        nlohmann::json out = nlohmann::json::array();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < a.cols(); ++j)
                row.push_back(upper ? a(i, j).sup() : a(i, j).inf());
            out.push_back(std::move(row));
        }
        return out;
    };
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"inf", rows_of(false)}, {"sup", rows_of(true)}};
}

IntervalMatrix interval_matrix_from_json(const nlohmann::json& j)
{
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto inf = Matrix::from_rows(j.at("inf").get<std::vector<std::vector<double>>>());
    const auto sup = Matrix::from_rows(j.at("sup").get<std::vector<std::vector<double>>>());
    if (inf.rows() != rows || sup.rows() != rows || (rows > 0 && (inf.cols() != cols || sup.cols() != cols)))
        throw std::invalid_argument("IntervalMatrix JSON: declared shape does not match data");
    if (rows == 0)
        return IntervalMatrix(0, cols);
    return IntervalMatrix::from_bounds(inf, sup);
}

std::string to_string(const Interval& v)
{
    std::ostringstream os;
    os.precision(17);
    os << '[' << v.inf() << ", " << v.sup() << ']';
    return os.str();
}

} // namespace psdparam
