#include <bellcp/linear_program.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace bellcp::lp {
namespace {

constexpr std::size_t kMaxIterations = 100000;

template <class T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), cells_(rows, cols + 1) {}

  T& at(std::size_t r, std::size_t c) { return cells_(r, c); }
  T& rhs(std::size_t r) { return cells_(r, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c, std::vector<T>& cost) {
    const T inv = T(1) / cells_(r, c);
    for (std::size_t k = 0; k <= n_; ++k) cells_(r, k) *= inv;
    cells_(r, c) = 1;
    for (std::size_t q = 0; q < m_; ++q) {
      if (q == r || cells_(q, c) == 0) continue;
      const T f = cells_(q, c);
      for (std::size_t k = 0; k <= n_; ++k) cells_(q, k) -= f * cells_(r, k);
      cells_(q, c) = 0;
    }
    if (cost[c] != 0) {
      const T f = cost[c];
      for (std::size_t k = 0; k <= n_; ++k) cost[k] -= f * cells_(r, k);
      cost[c] = 0;
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  Matrix<T> cells_;
};

// Runs Bland-rule pivots on `cost` (reduced costs; last entry is -objective)
// over columns [0, allowed). Returns false if unbounded.
template <class T>
bool run_simplex(Tableau<T>& tab, std::vector<std::size_t>& basis, std::vector<T>& cost,
                 std::size_t allowed, const T& eps, std::size_t& pivots) {
  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    }
    if (!enter) return true;

    std::optional<std::size_t> leave;
    T best_ratio = 0;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const T& coef = tab.at(r, *enter);
      if (!(coef > eps)) continue;
      const T ratio = tab.rhs(r) / coef;
      if (!leave || ratio < best_ratio - eps ||
          (magnitude(T(ratio - best_ratio)) <= eps && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!leave) return false;
    tab.pivot(*leave, *enter, cost);
    basis[*leave] = *enter;
    ++pivots;
  }
  throw std::runtime_error("simplex iteration limit exceeded");
}

// Reduced row echelon basis used for rank tests.
template <class T>
class Echelon {
 public:
  Echelon(std::size_t width, T eps) : width_(width), eps_(std::move(eps)) {}

  bool add(std::vector<T> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const T f = v[pivots_[k]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < width_; ++c) v[c] -= f * rows_[k][c];
    }
    std::size_t pivot = 0;
    T best = 0;
    for (std::size_t c = 0; c < width_; ++c) {
      const T m = magnitude(v[c]);
      if (m > best) {
        best = m;
        pivot = c;
      }
    }
    if (!(best > eps_)) return false;
    const T inv = T(1) / v[pivot];
    for (T& x : v) x *= inv;
    v[pivot] = 1;
    for (auto& row : rows_) {
      const T f = row[pivot];
      if (f == 0) continue;
      for (std::size_t c = 0; c < width_; ++c) row[c] -= f * v[c];
      row[pivot] = 0;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  std::size_t width_;
  T eps_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

// Solves the nonsingular system g y = rhs by Gaussian elimination.
template <class T>
std::vector<T> solve_square(Matrix<T> g, std::vector<T> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (magnitude(g(r, col)) > magnitude(g(piv, col))) piv = r;
    }
    if (g(piv, col) == 0) throw std::runtime_error("singular normal equations");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(g(piv, c), g(col, c));
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (g(r, col) == 0) continue;
      const T f = g(r, col) / g(col, col);
      for (std::size_t c = col; c < n; ++c) g(r, c) -= f * g(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<T> y(n);
  for (std::size_t r = n; r-- > 0;) {
    T s = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= g(r, c) * y[c];
    y[r] = s / g(r, r);
  }
  return y;
}

}  // namespace

template <class T>
Solution<T> minimize(const Matrix<T>& a, std::span<const T> b, std::span<const T> c, const T& eps,
                     const T& feasibility_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("LP dimension mismatch");

  Tableau<T> tab(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = flip ? T(-a(r, j)) : a(r, j);
    tab.at(r, n + r) = 1;
    tab.rhs(r) = flip ? T(-b[r]) : b[r];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  Solution<T> sol;
  // Phase one: minimize the sum of artificials.
  std::vector<T> cost(n + m + 1, T(0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= tab.at(r, j);
    cost[n + m] -= tab.rhs(r);
  }
  run_simplex(tab, basis, cost, n + m, eps, sol.pivots);
  if (T(-cost[n + m]) > feasibility_tol) {
    sol.status = Status::kInfeasible;
    return sol;
  }
  // Drive artificials out of the basis where a structural pivot exists;
  // rows without one are redundant and stay at zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (magnitude(tab.at(r, j)) > eps) {
        tab.pivot(r, j, cost);
        basis[r] = j;
        ++sol.pivots;
        break;
      }
    }
  }

  // Phase two on structural columns only.
  std::fill(cost.begin(), cost.end(), T(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= n || c[basis[r]] == 0) continue;
    const T f = c[basis[r]];
    for (std::size_t k = 0; k <= n + m; ++k) cost[k] -= f * tab.at(r, k);
  }
  if (!run_simplex(tab, basis, cost, n, eps, sol.pivots)) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  sol.status = Status::kOptimal;
  sol.x.assign(n, T(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = tab.rhs(r) < 0 ? T(0) : tab.rhs(r);
  }
  sol.objective = 0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];
  return sol;
}

template <class T>
std::vector<std::size_t> independent_rows(const Matrix<T>& a, const T& eps) {
  Echelon<T> echelon(a.cols(), eps);
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    if (echelon.add(std::vector<T>(row.begin(), row.end()))) keep.push_back(r);
  }
  return keep;
}

template <class T>
std::vector<T> min_norm_point(const Matrix<T>& a, std::span<const T> x0, const T& eps) {
  const std::size_t n = a.cols();
  if (x0.size() != n) throw std::invalid_argument("starting point has wrong dimension");
  const std::vector<std::size_t> rows = independent_rows(a, eps);
  const std::size_t m = rows.size();
  Matrix<T> ar(m, n);
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t j = 0; j < n; ++j) ar(q, j) = a(rows[q], j);
  }
  std::vector<T> target(m, T(0));
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t j = 0; j < n; ++j) target[q] += ar(q, j) * x0[j];
  }

  std::vector<T> x(x0.begin(), x0.end());
  // Working set: bounds held at zero, kept independent of the equality rows.
  std::vector<bool> fixed(n, false);
  {
    Echelon<T> echelon(n, eps);
    for (std::size_t q = 0; q < m; ++q) {
      auto row = ar.row(q);
      echelon.add(std::vector<T>(row.begin(), row.end()));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] > eps) continue;
      std::vector<T> unit(n, T(0));
      unit[j] = 1;
      if (echelon.add(std::move(unit))) {
        fixed[j] = true;
        x[j] = 0;
      }
    }
  }

  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    // Equality-constrained minimizer z on the free set: z_F = A_F' y.
    Matrix<T> g(m, m);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p; q < m; ++q) {
        T s = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (!fixed[j]) s += ar(p, j) * ar(q, j);
        }
        g(p, q) = s;
        g(q, p) = s;
      }
    }
    const std::vector<T> y = m == 0 ? std::vector<T>{} : solve_square(g, target);
    // aty = A' y. On the free set it is the minimizer z; on fixed bounds its
    // negation is the bound multiplier.
    std::vector<T> aty(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t q = 0; q < m; ++q) aty[j] += ar(q, j) * y[q];
    }

    T step_norm = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!fixed[j]) step_norm = std::max(step_norm, magnitude(T(aty[j] - x[j])));
    }

    if (step_norm <= eps) {
      // Optimal on the working set; release the bound with the most negative
      // multiplier, if any.
      std::optional<std::size_t> release;
      T worst = -eps;
      for (std::size_t j = 0; j < n; ++j) {
        if (!fixed[j]) continue;
        const T multiplier = -aty[j];
        if (multiplier < worst) {
          worst = multiplier;
          release = j;
        }
      }
      if (!release) {
        for (std::size_t j = 0; j < n; ++j) {
          if (fixed[j]) x[j] = 0;
          else x[j] = aty[j] < 0 ? T(0) : aty[j];
        }
        return x;
      }
      fixed[*release] = false;
      continue;
    }

    T alpha = 1;
    std::optional<std::size_t> block;
    for (std::size_t j = 0; j < n; ++j) {
      if (fixed[j]) continue;
      const T dir = aty[j] - x[j];
      if (!(dir < 0)) continue;
      const T ratio = x[j] / T(-dir);
      if (ratio < alpha) {
        alpha = ratio;
        block = j;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!fixed[j]) x[j] += alpha * (aty[j] - x[j]);
    }
    if (block) {
      x[*block] = 0;
      fixed[*block] = true;
    }
  }
  throw std::runtime_error("active-set iteration limit exceeded");
}

#define BELLCP_INSTANTIATE(T)                                                                  \
  template Solution<T> minimize(const Matrix<T>&, std::span<const T>, std::span<const T>,      \
                                const T&, const T&);                                           \
  template std::vector<std::size_t> independent_rows(const Matrix<T>&, const T&);              \
  template std::vector<T> min_norm_point(const Matrix<T>&, std::span<const T>, const T&);

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp::lp
