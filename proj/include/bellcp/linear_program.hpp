#pragma once

#include <bellcp/scalar.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace bellcp::lp {

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

template <class T>
struct Solution {
  Status status = Status::kInfeasible;
  std::vector<T> x;
  T objective = 0;
  std::size_t pivots = 0;
};

/// minimize c'x subject to A x = b, x >= 0.
///
/// Two-phase tableau simplex with Bland's rule, so it terminates in exact
/// arithmetic. `eps` is the pivot/reduced-cost threshold (0 for Rational);
/// `feasibility_tol` bounds the phase-one residual accepted as feasible.
template <class T>
Solution<T> minimize(const Matrix<T>& a, std::span<const T> b, std::span<const T> c, const T& eps,
                     const T& feasibility_tol);

/// Indices of a maximal linearly independent subset of the rows of `a`,
/// scanned in order.
template <class T>
std::vector<std::size_t> independent_rows(const Matrix<T>& a, const T& eps);

/// Minimum-norm point: minimize |x|^2 subject to A x = A x0, x >= 0.
///
/// Primal active-set method started at the feasible point x0. The minimizer
/// is unique (strictly convex objective), which makes it a canonical
/// representative of the feasible polytope.
template <class T>
std::vector<T> min_norm_point(const Matrix<T>& a, std::span<const T> x0, const T& eps);

}  // namespace bellcp::lp
