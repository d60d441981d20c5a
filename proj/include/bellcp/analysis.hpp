#pragma once

#include <bellcp/bchsh.hpp>
#include <bellcp/observational.hpp>
#include <bellcp/simulator.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace bellcp {

/// Two-sided tail probability of a standard normal deviate.
double normal_two_sided_p(double z);

struct ProportionTest {
  double p1 = 0;
  double p2 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  double z = 0;
  double p_value = 1;
  /// min(1, comparisons * p_value).
  double p_bonferroni = 1;
};

/// Pooled two-proportion z-test of x1/n1 against x2/n2. A pooled proportion
/// of exactly 0 or 1 carries no evidence and yields z = 0, p = 1.
ProportionTest two_proportion_z_test(std::uint64_t x1, std::uint64_t n1, std::uint64_t x2,
                                     std::uint64_t n2, unsigned comparisons = 1);

/// One marginal comparison: M_{own,1}(value) against M_{own,2}(value).
struct SignalingTest {
  Side side = Side::kA;
  int own = 1;
  int value = 1;
  ProportionTest test;
};

/// sqrt(sum over contexts of (1 - E_ij^2) / n_ij): each trial contributes a
/// +-1 product with mean E_ij.
template <class T>
double chsh_standard_error(const EmpiricalEstimate<T>& est);

template <class T>
struct AnalysisReport {
  EmpiricalEstimate<T> estimate;
  T chsh = 0;
  double chsh_se = 0;
  std::array<ChshVariant<T>, 8> variants{};
  SignalingReport<T> signaling;
  std::array<SignalingTest, 8> signaling_tests{};
  /// Fine verdict on the empirical dataset at the statistical tolerance;
  /// empty when the marginals are inconsistent at that tolerance.
  std::optional<FineVerdict<T>> fine;
  std::string fine_status;  // "feasible", "infeasible" or "inconsistent_marginals"
  double fine_tolerance = 0;
};

/// Throws EmptyContext when a setting pair has no trials.
template <class T>
AnalysisReport<T> analyze(const TrialLog& log);

}  // namespace bellcp
