#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace oscnet {

/// Small dense real matrix, row-major. Sized for the graphs and block systems
/// in this suite (tens of rows), not for sparse performance work.
class Matrix {
  public:
    Matrix() = default;
    /// Zero-extent matrices (n x 0, 0 x n) are allowed; an edgeless graph has
    /// a node_count x 0 incidence matrix.
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        if (rows_ == 0) throw std::invalid_argument("Matrix: empty init");
        cols_ = init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged init");
            for (double v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix: incompatible product");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("Matrix: incompatible difference");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_symmetric(double tol = 1e-12) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Kronecker product per the block definition: entry (i,j) of A scales a full
/// copy of B placed at block (i,j).
Matrix kronecker(const Matrix& a, const Matrix& b);

/// All eigenvalues of a symmetric matrix (ascending), cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(const Matrix& m, double tol = 1e-12);

/// All eigenvalues of a general real square matrix via Hessenberg reduction
/// followed by shifted QR iteration. Complex pairs come out conjugate.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

}  // namespace oscnet
