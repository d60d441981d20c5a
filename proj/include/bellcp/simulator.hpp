#pragma once

#include <bellcp/observational.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bellcp {

/// One trial: the selected settings and all four outcome variables, with 0
/// recorded for the variable whose setting was not selected.
struct TrialRecord {
  std::uint64_t trial_id = 0;
  int ra = 1;
  int rb = 1;
  int a1 = 0;
  int a2 = 0;
  int b1 = 0;
  int b2 = 0;

  int a(int i) const { return i == 1 ? a1 : a2; }
  int b(int j) const { return j == 1 ? b1 : b2; }
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Settings in {1, 2}; exactly the selected variable on each side is +-1,
/// the other is 0.
bool satisfies_zero_convention(const TrialRecord& record);

struct TrialLogMeta {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::string source;
};

struct TrialLog {
  std::vector<TrialRecord> records;
  TrialLogMeta meta;
};

/// Draws n independent trials: (i, j) from the setting distribution, then
/// (alpha, beta) from p_{A_i B_j}, both by inverse CDF over the lexicographic
/// cell order. Trial t uses Philox block (counter = t, key = seed), so the
/// log is a pure function of (ds, n, seed) regardless of `threads`.
/// threads = 0 picks the hardware concurrency for large n.
template <class T>
TrialLog simulate(const ObservationalDataset<T>& ds, std::uint64_t n, std::uint64_t seed,
                  std::string source = {}, unsigned threads = 0);

template <class T>
struct EmpiricalEstimate {
  ObservationalDataset<T> dataset;
  /// counts[context][cell] in kContexts x kCells order.
  std::array<std::array<std::uint64_t, 4>, 4> counts{};
  std::array<std::uint64_t, 4> context_counts{};
  std::uint64_t n = 0;
};

/// Relative frequencies per context and of the contexts themselves.
/// Throws EmptyContext for the first (i, j) without trials and
/// InvalidDataset for records breaking the zero-value convention.
template <class T>
EmpiricalEstimate<T> estimate_observational(const TrialLog& log);

/// Side A: in contexts (i, 1) moves epsilon/2 of mass from (-1, beta) to
/// (+1, beta) for each beta, raising M_{i1}(+1) by epsilon while leaving
/// the B-marginals untouched. Side B mirrors this on contexts (1, j).
/// Throws OutOfRange if a cell would leave [0, 1].
template <class T>
ObservationalDataset<T> inject_signaling(const ObservationalDataset<T>& ds, Side side, const T& epsilon);

}  // namespace bellcp
