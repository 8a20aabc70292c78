#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bratteli/rational.hpp"

namespace bratteli {

// Dense matrix over a GMP scalar, row-major.  Only the handful of exact
// operations the library needs; no general linear algebra ambitions.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty())
            throw Error(ErrorKind::invalid_diagram, "matrix with no rows");
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw Error(ErrorKind::invalid_diagram, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_,
                              a_.begin() + (i + 1) * cols_);
    }

    // this * other
    Matrix mul(const Matrix& other) const {
        if (cols_ != other.rows_)
            throw Error(ErrorKind::range, "matrix product shape mismatch");
        Matrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    out(i, j) += aik * other(k, j);
            }
        return out;
    }

    // A v
    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_)
            throw Error(ErrorKind::range, "matrix apply shape mismatch");
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

    // A^T v
    std::vector<T> transpose_apply(const std::vector<T>& v) const {
        if (v.size() != rows_)
            throw Error(ErrorKind::range, "matrix transpose-apply shape mismatch");
        std::vector<T> out(cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[j] += (*this)(i, j) * v[i];
        return out;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& m);

// Exact determinant of a square integer matrix (fraction-free Bareiss).
Int determinant(const IntMatrix& m);

// Basis of the right nullspace of a square rational matrix.
std::vector<RatVec> nullspace(const RatMatrix& m);

// One exact solution of A x = b, free variables set to zero; nullopt when the
// system is inconsistent.
std::optional<RatVec> solve_linear(const RatMatrix& a, const RatVec& b);

// Rank of a rational matrix (Gaussian elimination).
std::size_t rank(RatMatrix m);

}  // namespace bratteli
