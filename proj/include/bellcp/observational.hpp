#pragma once

#include <bellcp/scalar.hpp>

#include <array>
#include <cstddef>
#include <string>

namespace bellcp {

enum class Side { kA, kB };

/// Setting pair (i, j); i selects A_i, j selects B_j, both in {1, 2}.
struct Context {
  int i;
  int j;
  friend bool operator==(const Context&, const Context&) = default;
};

/// Lexicographic context order 11, 12, 21, 22. Used for storage, sampling
/// and serialization alike.
inline constexpr std::array<Context, 4> kContexts{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

/// Outcome pair (alpha, beta), each +1 or -1.
struct Cell {
  int alpha;
  int beta;
};

/// Lexicographic outcome order ++, +-, -+, --.
inline constexpr std::array<Cell, 4> kCells{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

/// Throws std::out_of_range unless s is 1 or 2.
std::size_t setting_slot(int s);
/// Throws std::out_of_range unless v is +1 or -1; +1 maps to 0.
std::size_t outcome_slot(int v);

inline std::size_t context_index(int i, int j) { return setting_slot(i) * 2 + setting_slot(j); }
inline std::size_t cell_index(int alpha, int beta) {
  return outcome_slot(alpha) * 2 + outcome_slot(beta);
}

/// p_{A_i B_j}(alpha, beta) over the four +-1 outcome pairs.
template <class T>
class PairDistribution {
 public:
  PairDistribution() = default;
  /// Entries in kCells order. Throws InvalidDataset unless nonnegative and
  /// normalized.
  explicit PairDistribution(std::array<T, 4> entries);

  const T& operator()(int alpha, int beta) const { return entries_[cell_index(alpha, beta)]; }
  const std::array<T, 4>& entries() const { return entries_; }

 private:
  std::array<T, 4> entries_{T(1) / 4, T(1) / 4, T(1) / 4, T(1) / 4};
};

/// p_{R_A R_B}(i, j); every entry strictly positive.
template <class T>
class SettingDistribution {
 public:
  SettingDistribution() = default;
  /// Entries in kContexts order.
  explicit SettingDistribution(std::array<T, 4> entries);

  /// q_i s_j from the two one-sided generator distributions.
  static SettingDistribution product(std::array<T, 2> a_side, std::array<T, 2> b_side);

  const T& operator()(int i, int j) const { return entries_[context_index(i, j)]; }
  const std::array<T, 4>& entries() const { return entries_; }

 private:
  std::array<T, 4> entries_{T(1) / 4, T(1) / 4, T(1) / 4, T(1) / 4};
};

/// The four pairwise outcome distributions plus the setting distribution.
template <class T>
class ObservationalDataset {
 public:
  ObservationalDataset() = default;
  /// Pairs in kContexts order.
  ObservationalDataset(std::array<PairDistribution<T>, 4> pairs, SettingDistribution<T> settings)
      : pairs_(std::move(pairs)), settings_(std::move(settings)) {}

  const PairDistribution<T>& pair(int i, int j) const { return pairs_[context_index(i, j)]; }
  const std::array<PairDistribution<T>, 4>& pairs() const { return pairs_; }
  const SettingDistribution<T>& settings() const { return settings_; }

  friend bool operator==(const ObservationalDataset& a, const ObservationalDataset& b) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (a.pairs_[c].entries() != b.pairs_[c].entries()) return false;
    }
    return a.settings_.entries() == b.settings_.entries();
  }

 private:
  std::array<PairDistribution<T>, 4> pairs_{};
  SettingDistribution<T> settings_{};
};

/// Entrywise conversion of a whole dataset. Converting to Rational keeps
/// each double exactly, so it throws InvalidDataset unless the doubles sum
/// to exactly 1.
template <class To, class From>
ObservationalDataset<To> convert_dataset(const ObservationalDataset<From>& ds) {
  std::array<PairDistribution<To>, 4> pairs;
  std::array<To, 4> settings;
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<To, 4> entries;
    for (std::size_t k = 0; k < 4; ++k) {
      entries[k] = ScalarTraits<To>::from_double(to_double(ds.pairs()[c].entries()[k]));
    }
    pairs[c] = PairDistribution<To>(entries);
    settings[c] = ScalarTraits<To>::from_double(to_double(ds.settings().entries()[c]));
  }
  return ObservationalDataset<To>(pairs, SettingDistribution<To>(settings));
}

/// <A_i B_j> = sum alpha beta p_{A_i B_j}(alpha, beta).
template <class T>
T observational_correlation(const ObservationalDataset<T>& ds, int i, int j);

/// The four correlations in kContexts order.
template <class T>
std::array<T, 4> correlations(const ObservationalDataset<T>& ds);

/// <11> - <12> + <21> + <22>.
template <class T>
T chsh_combination(const std::array<T, 4>& corr);

template <class T>
T observational_chsh(const ObservationalDataset<T>& ds);

/// One member of the sign-symmetric CHSH family: sign * (sum of the four
/// correlations with the `minus` context negated).
template <class T>
struct ChshVariant {
  int sign;
  Context minus;
  T value;
  /// e.g. "+S12" (the primary expression) or "-S21".
  std::string name() const;
};

/// All 8 variants; index 0 is the primary expression "+S12".
template <class T>
std::array<ChshVariant<T>, 8> chsh_variants(const std::array<T, 4>& corr);

/// Side A: M_{i,other}(alpha) = sum_beta p_{A_i B_other}(alpha, beta).
/// Side B: sum_alpha p_{A_other B_i}(alpha, beta = value).
template <class T>
T marginal_m(const ObservationalDataset<T>& ds, Side side, int i, int other, int value);

template <class T>
struct SignalingReport {
  /// |M_{i1}(alpha) - M_{i2}(alpha)|, indexed (i - 1) * 2 + outcome_slot(alpha).
  std::array<T, 4> a_side_deltas{};
  /// B-side analogue: |N_{j1}(beta) - N_{j2}(beta)| over A settings.
  std::array<T, 4> b_side_deltas{};
  T max_delta = 0;
  bool no_signaling = true;
};

template <class T>
SignalingReport<T> signaling_report(const ObservationalDataset<T>& ds, const T& tol);

/// Popescu-Rohrlich box: perfectly correlated on 11, 21, 22, perfectly
/// anticorrelated on 12, uniform settings. CHSH = 4, flat marginals.
template <class T>
ObservationalDataset<T> construct_pr_box();

template <class T>
ObservationalDataset<T> uniform_dataset();

}  // namespace bellcp
