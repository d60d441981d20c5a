#include <bellcp/analysis.hpp>

#include <bellcp/errors.hpp>

#include <algorithm>
#include <cmath>

namespace bellcp {

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

ProportionTest two_proportion_z_test(std::uint64_t x1, std::uint64_t n1, std::uint64_t x2,
                                     std::uint64_t n2, unsigned comparisons) {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("proportion test needs nonempty samples");
  ProportionTest t;
  t.n1 = n1;
  t.n2 = n2;
  t.p1 = static_cast<double>(x1) / static_cast<double>(n1);
  t.p2 = static_cast<double>(x2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(x1 + x2) / static_cast<double>(n1 + n2);
  const double var = pooled * (1 - pooled) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
  if (var > 0) {
    t.z = (t.p1 - t.p2) / std::sqrt(var);
    t.p_value = normal_two_sided_p(t.z);
  }
  t.p_bonferroni = std::min(1.0, t.p_value * comparisons);
  return t;
}

template <class T>
double chsh_standard_error(const EmpiricalEstimate<T>& est) {
  const auto corr = correlations(est.dataset);
  double var = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double e = to_double(corr[c]);
    var += std::max(0.0, 1 - e * e) / static_cast<double>(est.context_counts[c]);
  }
  return std::sqrt(var);
}

template <class T>
AnalysisReport<T> analyze(const TrialLog& log) {
  AnalysisReport<T> report;
  report.estimate = estimate_observational<T>(log);
  const auto& est = report.estimate;
  const auto corr = correlations(est.dataset);
  report.chsh = chsh_combination(corr);
  report.chsh_se = chsh_standard_error(est);
  report.variants = chsh_variants(corr);
  report.signaling = signaling_report(est.dataset, ScalarTraits<T>::signaling_tolerance());

  // Marginal counts: side A compares contexts (own, 1) and (own, 2); side B
  // compares (1, own) and (2, own).
  auto marginal_count = [&](Side side, std::size_t c, int value) {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const int v = side == Side::kA ? kCells[k].alpha : kCells[k].beta;
      if (v == value) x += est.counts[c][k];
    }
    return x;
  };
  double max_se = 0;
  std::size_t t = 0;
  for (Side side : {Side::kA, Side::kB}) {
    for (int own : {1, 2}) {
      for (int value : {1, -1}) {
        const std::size_t c1 = side == Side::kA ? context_index(own, 1) : context_index(1, own);
        const std::size_t c2 = side == Side::kA ? context_index(own, 2) : context_index(2, own);
        SignalingTest& st = report.signaling_tests[t++];
        st.side = side;
        st.own = own;
        st.value = value;
        st.test = two_proportion_z_test(marginal_count(side, c1, value), est.context_counts[c1],
                                        marginal_count(side, c2, value), est.context_counts[c2], 8);
        const double n1 = static_cast<double>(st.test.n1);
        const double n2 = static_cast<double>(st.test.n2);
        const double pooled = (st.test.p1 * n1 + st.test.p2 * n2) / (n1 + n2);
        max_se = std::max(max_se, std::sqrt(pooled * (1 - pooled) * (1 / n1 + 1 / n2)));
      }
    }
  }

  report.fine_tolerance = 3 * max_se;
  try {
    report.fine = fine_feasibility(est.dataset, ScalarTraits<T>::from_double(report.fine_tolerance));
    report.fine_status = report.fine->feasible ? "feasible" : "infeasible";
  } catch (const InconsistentMarginals&) {
    report.fine_status = "inconsistent_marginals";
  }
  return report;
}

template double chsh_standard_error(const EmpiricalEstimate<double>&);
template double chsh_standard_error(const EmpiricalEstimate<Rational>&);
template AnalysisReport<double> analyze(const TrialLog&);
template AnalysisReport<Rational> analyze(const TrialLog&);

}  // namespace bellcp
