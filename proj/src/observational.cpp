#include <bellcp/observational.hpp>

#include <bellcp/errors.hpp>

#include <stdexcept>

namespace bellcp {
namespace {

template <class T>
void check_normalized(const std::array<T, 4>& entries, const char* what, bool strictly_positive) {
  T total = 0;
  for (const T& p : entries) {
    if (p < 0 || p > 1) throw InvalidDataset(std::string(what) + " entry outside [0, 1]");
    if (strictly_positive && p == 0) {
      throw InvalidDataset(std::string(what) + " entries must be strictly positive");
    }
    total += p;
  }
  if (magnitude(T(total - 1)) > ScalarTraits<T>::sum_tolerance()) {
    throw InvalidDataset(std::string(what) + " does not sum to 1");
  }
}

}  // namespace

std::size_t setting_slot(int s) {
  if (s != 1 && s != 2) throw std::out_of_range("setting index must be 1 or 2");
  return static_cast<std::size_t>(s - 1);
}

std::size_t outcome_slot(int v) {
  if (v != 1 && v != -1) throw std::out_of_range("outcome must be +1 or -1");
  return v == 1 ? 0 : 1;
}

template <class T>
PairDistribution<T>::PairDistribution(std::array<T, 4> entries) : entries_(std::move(entries)) {
  check_normalized(entries_, "pair distribution", false);
}

template <class T>
SettingDistribution<T>::SettingDistribution(std::array<T, 4> entries)
    : entries_(std::move(entries)) {
  check_normalized(entries_, "setting distribution", true);
}

template <class T>
SettingDistribution<T> SettingDistribution<T>::product(std::array<T, 2> a_side,
                                                       std::array<T, 2> b_side) {
  return SettingDistribution({a_side[0] * b_side[0], a_side[0] * b_side[1], a_side[1] * b_side[0],
                              a_side[1] * b_side[1]});
}

template <class T>
T observational_correlation(const ObservationalDataset<T>& ds, int i, int j) {
  const auto& p = ds.pair(i, j);
  T corr = 0;
  for (const Cell& c : kCells) corr += T(c.alpha * c.beta) * p(c.alpha, c.beta);
  return corr;
}

template <class T>
std::array<T, 4> correlations(const ObservationalDataset<T>& ds) {
  std::array<T, 4> out;
  for (std::size_t c = 0; c < 4; ++c) out[c] = observational_correlation(ds, kContexts[c].i, kContexts[c].j);
  return out;
}

template <class T>
T chsh_combination(const std::array<T, 4>& corr) {
  return corr[0] - corr[1] + corr[2] + corr[3];
}

template <class T>
T observational_chsh(const ObservationalDataset<T>& ds) {
  return chsh_combination(correlations(ds));
}

template <class T>
std::string ChshVariant<T>::name() const {
  return std::string(sign > 0 ? "+" : "-") + "S" + std::to_string(minus.i) + std::to_string(minus.j);
}

template <class T>
std::array<ChshVariant<T>, 8> chsh_variants(const std::array<T, 4>& corr) {
  // Primary expression first: minus on (1,2), positive sign.
  constexpr std::array<std::size_t, 4> kOrder{1, 0, 2, 3};
  std::array<ChshVariant<T>, 8> out;
  std::size_t n = 0;
  for (std::size_t m : kOrder) {
    T s = 0;
    for (std::size_t c = 0; c < 4; ++c) s += c == m ? T(-corr[c]) : corr[c];
    out[n++] = ChshVariant<T>{+1, kContexts[m], s};
    out[n++] = ChshVariant<T>{-1, kContexts[m], T(-s)};
  }
  return out;
}

template <class T>
T marginal_m(const ObservationalDataset<T>& ds, Side side, int i, int other, int value) {
  T total = 0;
  if (side == Side::kA) {
    const auto& p = ds.pair(i, other);
    for (int beta : {1, -1}) total += p(value, beta);
  } else {
    const auto& p = ds.pair(other, i);
    for (int alpha : {1, -1}) total += p(alpha, value);
  }
  return total;
}

template <class T>
SignalingReport<T> signaling_report(const ObservationalDataset<T>& ds, const T& tol) {
  SignalingReport<T> report;
  for (int i : {1, 2}) {
    for (int v : {1, -1}) {
      const std::size_t k = setting_slot(i) * 2 + outcome_slot(v);
      report.a_side_deltas[k] =
          magnitude(T(marginal_m(ds, Side::kA, i, 1, v) - marginal_m(ds, Side::kA, i, 2, v)));
      report.b_side_deltas[k] =
          magnitude(T(marginal_m(ds, Side::kB, i, 1, v) - marginal_m(ds, Side::kB, i, 2, v)));
      report.max_delta = std::max({report.max_delta, report.a_side_deltas[k], report.b_side_deltas[k]});
    }
  }
  report.no_signaling = report.max_delta <= tol;
  return report;
}

template <class T>
ObservationalDataset<T> construct_pr_box() {
  const T half = T(1) / 2;
  const PairDistribution<T> same({half, T(0), T(0), half});
  const PairDistribution<T> opposite({T(0), half, half, T(0)});
  return ObservationalDataset<T>({same, opposite, same, same}, SettingDistribution<T>());
}

template <class T>
ObservationalDataset<T> uniform_dataset() {
  return ObservationalDataset<T>();
}

#define BELLCP_INSTANTIATE(T)                                                                     \
  template class PairDistribution<T>;                                                             \
  template class SettingDistribution<T>;                                                          \
  template struct ChshVariant<T>;                                                                 \
  template T observational_correlation(const ObservationalDataset<T>&, int, int);                \
  template std::array<T, 4> correlations(const ObservationalDataset<T>&);                         \
  template T chsh_combination(const std::array<T, 4>&);                                           \
  template T observational_chsh(const ObservationalDataset<T>&);                                  \
  template std::array<ChshVariant<T>, 8> chsh_variants(const std::array<T, 4>&);                  \
  template T marginal_m(const ObservationalDataset<T>&, Side, int, int, int);                     \
  template SignalingReport<T> signaling_report(const ObservationalDataset<T>&, const T&);         \
  template ObservationalDataset<T> construct_pr_box();                                            \
  template ObservationalDataset<T> uniform_dataset();

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp
