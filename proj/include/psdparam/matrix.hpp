#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace psdparam {

/// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }
    std::span<const double> row(std::size_t i) const
    {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }

    Matrix transpose() const;
    double max_abs() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Largest absolute entrywise difference; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Real symmetric matrix. Construction symmetrizes via (A + A^T)/2 and keeps
/// the largest asymmetry seen so callers can reject badly unsymmetric input.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n);
    explicit SymMatrix(const Matrix& m);
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix identity(std::size_t n);
    static SymMatrix zero(std::size_t n) { return SymMatrix(n); }

    std::size_t size() const { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Matrix& matrix() const { return m_; }
    double asymmetry() const { return asymmetry_; }

    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v);

    /// Cheap spectral-norm upper bound used in tolerances: max|a_ij| * n.
    double norm_bound() const { return m_.max_abs() * static_cast<double>(size()); }

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator-=(const SymMatrix& other);
    SymMatrix& operator*=(double s);
    /// this += s * other
    SymMatrix& add_scaled(const SymMatrix& other, double s);

    SymMatrix operator-() const;

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.m_ == b.m_; }

private:
    Matrix m_;
    double asymmetry_ = 0.0;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(SymMatrix a, double s);
SymMatrix operator*(double s, SymMatrix a);

} // namespace psdparam
