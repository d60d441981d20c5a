#pragma once

#include <bellcp/observational.hpp>
#include <bellcp/scalar.hpp>

#include <array>
#include <optional>
#include <string>

namespace bellcp {

/// Joint values (a1, a2, b1, b2) of the four +-1 random variables.
struct QuadAtom {
  int a1;
  int a2;
  int b1;
  int b2;
  int a(int i) const { return i == 1 ? a1 : a2; }
  int b(int j) const { return j == 1 ? b1 : b2; }
  friend bool operator==(const QuadAtom&, const QuadAtom&) = default;
};

/// All 16 atoms in lexicographic order with -1 < +1.
extern const std::array<QuadAtom, 16> kQuadAtoms;

std::size_t quad_index(const QuadAtom& atom);

/// Quadruple jpd P(a1, a2, b1, b2) of the four-variable hidden-variable model.
template <class T>
class QuadJpd {
 public:
  /// Weights in kQuadAtoms order; throws InvalidDataset unless a distribution.
  explicit QuadJpd(std::array<T, 16> weights);

  static QuadJpd uniform();
  static QuadJpd point_mass(const QuadAtom& atom);

  const T& operator()(const QuadAtom& atom) const { return weights_[quad_index(atom)]; }
  const std::array<T, 16>& weights() const { return weights_; }

 private:
  std::array<T, 16> weights_;
};

/// P_{a_i b_j}(alpha, beta) = sum over the two unobserved variables.
template <class T>
PairDistribution<T> pairwise_marginal(const QuadJpd<T>& jpd, int i, int j);

template <class T>
T chsh_of_jpd(const QuadJpd<T>& jpd);

/// Identifies p_{A_i B_j} with P_{a_i b_j}; settings are attached as given.
template <class T>
ObservationalDataset<T> extract_dataset(const QuadJpd<T>& jpd,
                                        const SettingDistribution<T>& settings = {});

template <class T>
struct FineVerdict {
  bool feasible = false;
  /// Minimum-norm jpd reproducing the marginals (within tol) when feasible.
  std::optional<QuadJpd<T>> witness;
  /// Largest sign variant, named when infeasible.
  std::optional<std::string> violated_inequality;
  /// LP optimum: smallest max-entry distance between the dataset's pair
  /// distributions and the marginals of any quadruple jpd.
  T distance = 0;
  /// Independent verdict from the 8 CHSH sign variants (|S| <= 2 + 8 tol).
  bool chsh_feasible = false;
  bool methods_agree = false;
  std::array<ChshVariant<T>, 8> variants{};
};

/// Whether some quadruple jpd reproduces the four pair distributions within
/// `tol` (entrywise). Solved as a linear program and cross-checked against
/// the CHSH family.
///
/// Throws InconsistentMarginals if the dataset signals by more than `tol`:
/// a single jpd cannot have context-dependent single-variable marginals.
template <class T>
FineVerdict<T> fine_feasibility(const ObservationalDataset<T>& ds, const T& tol);

}  // namespace bellcp
