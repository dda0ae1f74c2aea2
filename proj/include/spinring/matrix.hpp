#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spinring {

/// Dense real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    /// Leading k x k block.
    Matrix leading_block(std::size_t k) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    double frobenius_norm() const;
    double max_abs() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(const Matrix& a, const Matrix& b);

/// max |a(i,j) - b(i,j)|; the shapes must agree.
double max_abs_difference(const Matrix& a, const Matrix& b);

/// Real symmetric matrix. Writes go through set()/add(), which update
/// both (i,j) and (j,i), so symmetry holds by construction.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dim) : m_(dim, dim) {}

    /// Copies `m` after checking it is exactly symmetric.
    static SymmetricMatrix from_dense(const Matrix& m);

    std::size_t dim() const noexcept { return m_.rows(); }

    void set(std::size_t i, std::size_t j, double v) noexcept {
        m_(i, j) = v;
        m_(j, i) = v;
    }
    void add(std::size_t i, std::size_t j, double v) noexcept {
        m_(i, j) += v;
        if (i != j) m_(j, i) += v;
    }

    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    const Matrix& dense() const noexcept { return m_; }

private:
    Matrix m_;
};

/// Determinant by LU factorization with partial pivoting.
double determinant(const Matrix& a);

/// det of every leading k x k block, k = 1..n.
std::vector<double> leading_principal_minors(const Matrix& a);

/// Hadamard's bound prod_i ||row_i|| for the leading k x k block; used to
/// decide when a minor is numerically zero.
double hadamard_bound(const Matrix& a, std::size_t k);

}  // namespace spinring
