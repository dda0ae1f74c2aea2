#include "spinring/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "spinring/error.hpp"

namespace spinring {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::leading_block(std::size_t k) const {
    if (k > rows_ || k > cols_) throw InvalidArgs("leading block larger than matrix");
    Matrix b(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
    return b;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgs("shape mismatch in +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgs("shape mismatch in -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgs("shape mismatch in matrix product");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgs("shape mismatch in max_abs_difference");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

SymmetricMatrix SymmetricMatrix::from_dense(const Matrix& m) {
    if (!m.square()) throw InvalidArgs("symmetric matrix must be square");
    SymmetricMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) throw InvalidArgs("matrix is not symmetric");
            s.set(i, j, m(i, j));
        }
    return s;
}

double determinant(const Matrix& a) {
    if (!a.square()) throw InvalidArgs("determinant of non-square matrix");
    const std::size_t n = a.rows();
    Matrix lu = a;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
        if (lu(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

std::vector<double> leading_principal_minors(const Matrix& a) {
    if (!a.square()) throw InvalidArgs("minors of non-square matrix");
    std::vector<double> minors;
    minors.reserve(a.rows());
    for (std::size_t k = 1; k <= a.rows(); ++k) minors.push_back(determinant(a.leading_block(k)));
    return minors;
}

double hadamard_bound(const Matrix& a, std::size_t k) {
    double bound = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += a(i, j) * a(i, j);
        bound *= std::sqrt(s);
    }
    return bound;
}

}  // namespace spinring
