#include <bellcp/bchsh.hpp>

#include <bellcp/errors.hpp>
#include <bellcp/linear_program.hpp>

#include <algorithm>

namespace bellcp {
namespace {

constexpr std::size_t kAtoms = 16;
constexpr std::size_t kRows = 16;  // 4 contexts x 4 outcome cells

std::array<QuadAtom, 16> make_quad_atoms() {
  std::array<QuadAtom, 16> atoms{};
  std::size_t k = 0;
  for (int a1 : {-1, 1}) {
    for (int a2 : {-1, 1}) {
      for (int b1 : {-1, 1}) {
        for (int b2 : {-1, 1}) atoms[k++] = QuadAtom{a1, a2, b1, b2};
      }
    }
  }
  return atoms;
}

// Row (context, cell) selects the atoms with a_i = alpha and b_j = beta.
template <class T>
lp::Matrix<T> marginal_matrix() {
  lp::Matrix<T> a(kRows, kAtoms);
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t atom = 0; atom < kAtoms; ++atom) {
        const QuadAtom& q = kQuadAtoms[atom];
        if (q.a(kContexts[c].i) == kCells[k].alpha && q.b(kContexts[c].j) == kCells[k].beta) {
          a(c * 4 + k, atom) = 1;
        }
      }
    }
  }
  return a;
}

}  // namespace

const std::array<QuadAtom, 16> kQuadAtoms = make_quad_atoms();

std::size_t quad_index(const QuadAtom& atom) {
  auto bit = [](int v) -> std::size_t {
    if (v != 1 && v != -1) throw std::out_of_range("quadruple atom values must be +-1");
    return v == 1 ? 1 : 0;
  };
  return bit(atom.a1) * 8 + bit(atom.a2) * 4 + bit(atom.b1) * 2 + bit(atom.b2);
}

template <class T>
QuadJpd<T>::QuadJpd(std::array<T, 16> weights) : weights_(std::move(weights)) {
  T total = 0;
  for (const T& w : weights_) {
    if (w < 0 || w > 1) throw InvalidDataset("jpd weight outside [0, 1]");
    total += w;
  }
  if (magnitude(T(total - 1)) > ScalarTraits<T>::sum_tolerance()) {
    throw InvalidDataset("jpd weights do not sum to 1");
  }
}

template <class T>
QuadJpd<T> QuadJpd<T>::uniform() {
  std::array<T, 16> w;
  w.fill(T(1) / 16);
  return QuadJpd(w);
}

template <class T>
QuadJpd<T> QuadJpd<T>::point_mass(const QuadAtom& atom) {
  std::array<T, 16> w;
  w.fill(T(0));
  w[quad_index(atom)] = 1;
  return QuadJpd(w);
}

template <class T>
PairDistribution<T> pairwise_marginal(const QuadJpd<T>& jpd, int i, int j) {
  std::array<T, 4> entries{T(0), T(0), T(0), T(0)};
  for (const QuadAtom& q : kQuadAtoms) entries[cell_index(q.a(i), q.b(j))] += jpd(q);
  return PairDistribution<T>(entries);
}

template <class T>
T chsh_of_jpd(const QuadJpd<T>& jpd) {
  return observational_chsh(extract_dataset(jpd));
}

template <class T>
ObservationalDataset<T> extract_dataset(const QuadJpd<T>& jpd, const SettingDistribution<T>& settings) {
  std::array<PairDistribution<T>, 4> pairs;
  for (std::size_t c = 0; c < 4; ++c) pairs[c] = pairwise_marginal(jpd, kContexts[c].i, kContexts[c].j);
  return ObservationalDataset<T>(pairs, settings);
}

template <class T>
FineVerdict<T> fine_feasibility(const ObservationalDataset<T>& ds, const T& tol) {
  const auto signaling = signaling_report(ds, tol);
  if (!signaling.no_signaling) {
    throw InconsistentMarginals("single-variable marginals differ across contexts by " +
                                std::to_string(to_double(signaling.max_delta)));
  }

  FineVerdict<T> verdict;
  verdict.variants = chsh_variants(correlations(ds));
  const auto worst = std::max_element(
      verdict.variants.begin(), verdict.variants.end(),
      [](const auto& x, const auto& y) { return x.value < y.value; });
  verdict.chsh_feasible = !(worst->value > T(2) + T(8) * tol);

  // Chebyshev form: minimize t subject to
  //   A w + t - s+ = b,   A w - t + s- = b,   sum w = 1,   w, t, s+-, >= 0.
  const lp::Matrix<T> marg = marginal_matrix<T>();
  std::array<T, kRows> target;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < 4; ++k) target[c * 4 + k] = ds.pairs()[c].entries()[k];
  }
  const std::size_t t_col = kAtoms;
  const std::size_t cols = kAtoms + 1 + 2 * kRows;
  lp::Matrix<T> a(2 * kRows + 1, cols);
  std::vector<T> b(2 * kRows + 1, T(0));
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t atom = 0; atom < kAtoms; ++atom) {
      a(r, atom) = marg(r, atom);
      a(kRows + r, atom) = marg(r, atom);
    }
    a(r, t_col) = 1;
    a(r, kAtoms + 1 + r) = -1;
    b[r] = target[r];
    a(kRows + r, t_col) = -1;
    a(kRows + r, kAtoms + 1 + kRows + r) = 1;
    b[kRows + r] = target[r];
  }
  for (std::size_t atom = 0; atom < kAtoms; ++atom) a(2 * kRows, atom) = 1;
  b[2 * kRows] = 1;
  std::vector<T> cost(cols, T(0));
  cost[t_col] = 1;

  const T eps = ScalarTraits<T>::pivot_tolerance();
  const auto sol = lp::minimize<T>(a, b, cost, eps, ScalarTraits<T>::feasibility_tolerance());
  if (sol.status != lp::Status::kOptimal) {
    throw std::logic_error("Chebyshev marginal LP is always feasible and bounded");
  }
  verdict.distance = sol.x[t_col];
  verdict.feasible = !(verdict.distance > tol);

  if (verdict.feasible) {
    const std::vector<T> start(sol.x.begin(), sol.x.begin() + kAtoms);
    const std::vector<T> w = lp::min_norm_point<T>(marg, start, eps);
    std::array<T, 16> weights;
    std::copy(w.begin(), w.end(), weights.begin());
    if constexpr (!ScalarTraits<T>::kExact) {
      T total = 0;
      for (const T& x : weights) total += x;
      for (T& x : weights) x /= total;
    }
    verdict.witness = QuadJpd<T>(weights);
  } else {
    verdict.violated_inequality = worst->name();
  }
  verdict.methods_agree = verdict.feasible == verdict.chsh_feasible;
  return verdict;
}

#define BELLCP_INSTANTIATE(T)                                                                  \
  template class QuadJpd<T>;                                                                   \
  template PairDistribution<T> pairwise_marginal(const QuadJpd<T>&, int, int);                 \
  template T chsh_of_jpd(const QuadJpd<T>&);                                                   \
  template ObservationalDataset<T> extract_dataset(const QuadJpd<T>&,                          \
                                                   const SettingDistribution<T>&);             \
  template FineVerdict<T> fine_feasibility(const ObservationalDataset<T>&, const T&);

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp
