#include "psdparam/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psdparam {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("Matrix: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
    }
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::max_abs() const
{
    double m = 0.0;
    for (double v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

static void require_same_shape(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("Matrix: shape mismatch");
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other)
{
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s)
{
    for (double& v : data_)
        v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("Matrix: vector length mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b)
{
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

SymMatrix::SymMatrix(std::size_t n) : m_(n, n) {}

SymMatrix::SymMatrix(const Matrix& m) : m_(m)
{
    if (!m.square())
        throw std::invalid_argument("SymMatrix: matrix is not square");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = m(i, j);
            const double b = m(j, i);
            asymmetry_ = std::max(asymmetry_, std::abs(a - b));
            const double avg = a == b ? a : 0.5 * (a + b);
            m_(i, j) = avg;
            m_(j, i) = avg;
        }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows))
{
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

void SymMatrix::set(std::size_t i, std::size_t j, double v)
{
    m_(i, j) = v;
    m_(j, i) = v;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other)
{
    m_ += other.m_;
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other)
{
    m_ -= other.m_;
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s)
{
    m_ *= s;
    return *this;
}

SymMatrix& SymMatrix::add_scaled(const SymMatrix& other, double s)
{
    if (other.size() != size())
        throw std::invalid_argument("SymMatrix: dimension mismatch");
    auto dst = m_.data();
    auto src = other.m_.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] += s * src[i];
    return *this;
}

SymMatrix SymMatrix::operator-() const
{
    SymMatrix r(*this);
    r *= -1.0;
    return r;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

} // namespace psdparam
