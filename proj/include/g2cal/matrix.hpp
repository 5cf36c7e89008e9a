#ifndef G2CAL_MATRIX_HPP
#define G2CAL_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "g2cal/errors.hpp"
#include "g2cal/scalar.hpp"

namespace g2cal {

/// Dense rectangular matrix over a coefficient ring (Scalar or double).
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, T{}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix p(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik == T{}) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) p(i, j) += xik * y(k, j);
            }
        return p;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw DimensionMismatch("matrix sum shape mismatch");
        Matrix s(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) s.e_[i] = x.e_[i] + y.e_[i];
        return s;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw DimensionMismatch("matrix difference shape mismatch");
        Matrix s(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) s.e_[i] = x.e_[i] - y.e_[i];
        return s;
    }

    friend Matrix operator*(const T& c, Matrix m) {
        for (auto& v : m.e_) v = c * v;
        return m;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> e_;
};

using ExactMatrix = Matrix<Scalar>;
using ExactVector = std::vector<Scalar>;

/// Result of solving A X = B exactly. When feasible, `particular` is one
/// solution (free variables set to zero) and `kernel` spans the homogeneous
/// solutions of A x = 0.
struct SolveResult {
    bool feasible = false;
    ExactMatrix particular;  // cols(A) x cols(B)
    std::vector<ExactVector> kernel;
    std::size_t rank = 0;
};

/// Fraction-free (Bareiss-style) elimination followed by exact normalization.
SolveResult exact_solve(const ExactMatrix& A, const ExactMatrix& B);

std::vector<ExactVector> exact_kernel(const ExactMatrix& A);
std::size_t exact_rank(const ExactMatrix& A);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> exact_rref(ExactMatrix& M);

/// Selects a maximal independent subset of the given vectors, optionally on
/// top of a preexisting spanning set; returns indices into `candidates`.
std::vector<std::size_t> independent_subset(const std::vector<ExactVector>& span,
                                            const std::vector<ExactVector>& candidates);

/// True when v lies in the span of the given vectors (all exact).
bool in_span(const std::vector<ExactVector>& span, const ExactVector& v);

}  // namespace g2cal

#endif
