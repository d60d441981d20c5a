#pragma once

#include <bellcp/observational.hpp>
#include <bellcp/probability.hpp>
#include <bellcp/scalar.hpp>

#include <array>
#include <compare>
#include <map>
#include <string_view>

namespace bellcp {

/// Joint values of the six random variables: outcomes a1, a2, b1, b2 in
/// {-1, 0, +1} and setting generators ra, rb in {1, 2}.
struct SixAtom {
  int a1;
  int a2;
  int b1;
  int b2;
  int ra;
  int rb;

  int a(int i) const { return i == 1 ? a1 : a2; }
  int b(int j) const { return j == 1 ? b1 : b2; }
  Atom label() const { return {a1, a2, b1, b2, ra, rb}; }
  friend auto operator<=>(const SixAtom&, const SixAtom&) = default;
};

/// An outcome variable is nonzero exactly when its own setting was selected.
bool on_support(const SixAtom& atom);

/// The 16 support atoms in lexicographic order.
extern const std::array<SixAtom, 16> kSupport;

/// Random variable of the six-variable model by name: a1, a2, b1, b2, ra, rb.
RandomVariable six_variable(std::string_view name);

/// Joint distribution of (a1, a2, b1, b2, ra, rb), stored sparsely.
///
/// Off-support atoms are accepted so that data violating the matching
/// conditions can be represented and rejected by verify_matching.
template <class T>
class SixVarJpd {
 public:
  /// Throws InvalidDataset on out-of-domain atoms or a non-distribution.
  explicit SixVarJpd(std::map<SixAtom, T> weights);

  const std::map<SixAtom, T>& weights() const { return weights_; }
  T operator()(const SixAtom& atom) const;
  const FiniteSpace<T>& space() const { return space_; }

 private:
  std::map<SixAtom, T> weights_;
  FiniteSpace<T> space_;
};

/// P(alpha, ..., i, j) = p_{A_i B_j}(alpha, beta) p_{R_A R_B}(i, j) on the
/// 16 support atoms.
template <class T>
SixVarJpd<T> build_jpd(const ObservationalDataset<T>& ds);

struct MatchingReport {
  bool a_excluded = false;       // P(a_i = +-1, ra = j) = 0 for i != j
  bool b_excluded = false;       // P(b_j = +-1, rb = i) = 0 for i != j
  bool zero_when_unselected = false;  // P(a_i = 0, ra = j) = P(ra = j), i != j; same for b
  bool decomposition = false;    // P(a_i = 0, ra = i) + P(a_i = +-1, ra = i) = P(ra = i); same for b
  bool nonzero_when_selected = false;  // P(a_i = 0, ra = i) = 0; same for b
  bool all() const {
    return a_excluded && b_excluded && zero_when_unselected && decomposition && nonzero_when_selected;
  }
};

template <class T>
MatchingReport matching_report(const SixVarJpd<T>& jpd, const T& tol);

template <class T>
bool verify_matching(const SixVarJpd<T>& jpd, const T& tol) {
  return matching_report(jpd, tol).all();
}

/// p_{A_i B_j}(alpha, beta) = P(a_i = alpha, b_j = beta | ra = i, rb = j) and
/// p_{R_A R_B}(i, j) = P(ra = i, rb = j). Throws ZeroConditioningEvent if a
/// setting pair has no mass, InvalidDataset if the result is not a dataset.
template <class T>
ObservationalDataset<T> extract_observational(const SixVarJpd<T>& jpd);

/// E(a_i b_j | ra = i, rb = j).
template <class T>
T conditional_correlation(const SixVarJpd<T>& jpd, int i, int j);

template <class T>
struct ConditionalCorrelations {
  std::array<T, 4> values{};  // kContexts order
  T chsh_tilde = 0;
};

/// CHSH combination of the conditional correlations, same signs as for
/// unconditioned correlations: <11> - <12> + <21> + <22>.
template <class T>
ConditionalCorrelations<T> chsh_tilde(const SixVarJpd<T>& jpd);

/// E(a_i b_j) over the whole space, zeros included.
template <class T>
T unconditional_correlation(const SixVarJpd<T>& jpd, int i, int j);

template <class T>
T unconditional_chsh(const SixVarJpd<T>& jpd);

/// m_ij(v): for side A, sum_beta P(a_i = v, b_j = beta | ra = i, rb = j);
/// for side B (i is then B's setting, j A's), the analogous b-marginal.
template <class T>
T conditional_marginal(const SixVarJpd<T>& jpd, Side side, int own, int other, int value);

/// P(a_i = v | ra = i) (side A) or P(b_j = v | rb = j) (side B).
template <class T>
T own_setting_marginal(const SixVarJpd<T>& jpd, Side side, int own, int value);

/// I_a: the pair (a_i, ra) is independent of rb. I_b: (b_j, rb) of ra.
template <class T>
bool pair_independent_of_remote_generator(const SixVarJpd<T>& jpd, Side side, int own, const T& tol);

}  // namespace bellcp
