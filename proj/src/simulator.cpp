#include <bellcp/simulator.hpp>

#include <bellcp/errors.hpp>
#include <bellcp/philox.hpp>

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace bellcp {
namespace {

constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 16;

std::size_t inverse_cdf(const std::array<double, 4>& probs, double u) {
  double cumulative = 0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!(probs[k] > 0)) continue;
    last_positive = k;
    cumulative += probs[k];
    if (u < cumulative) return k;
  }
  // Rounding left u above the accumulated total.
  return last_positive;
}

struct SamplingTables {
  std::array<double, 4> settings{};
  std::array<std::array<double, 4>, 4> outcomes{};
};

template <class T>
SamplingTables tables_for(const ObservationalDataset<T>& ds) {
  SamplingTables t;
  for (std::size_t c = 0; c < 4; ++c) {
    t.settings[c] = to_double(ds.settings().entries()[c]);
    for (std::size_t k = 0; k < 4; ++k) t.outcomes[c][k] = to_double(ds.pairs()[c].entries()[k]);
  }
  return t;
}

TrialRecord draw(const SamplingTables& t, std::uint64_t seed, std::uint64_t trial_id) {
  const auto u = Philox4x32::uniforms(seed, trial_id);
  const std::size_t c = inverse_cdf(t.settings, u[0]);
  const std::size_t k = inverse_cdf(t.outcomes[c], u[1]);
  TrialRecord r;
  r.trial_id = trial_id;
  r.ra = kContexts[c].i;
  r.rb = kContexts[c].j;
  (r.ra == 1 ? r.a1 : r.a2) = kCells[k].alpha;
  (r.rb == 1 ? r.b1 : r.b2) = kCells[k].beta;
  return r;
}

}  // namespace

bool satisfies_zero_convention(const TrialRecord& r) {
  if ((r.ra != 1 && r.ra != 2) || (r.rb != 1 && r.rb != 2)) return false;
  auto pm = [](int v) { return v == 1 || v == -1; };
  for (int s : {1, 2}) {
    if (r.ra == s ? !pm(r.a(s)) : r.a(s) != 0) return false;
    if (r.rb == s ? !pm(r.b(s)) : r.b(s) != 0) return false;
  }
  return true;
}

template <class T>
TrialLog simulate(const ObservationalDataset<T>& ds, std::uint64_t n, std::uint64_t seed,
                  std::string source, unsigned threads) {
  if (n == 0) throw std::invalid_argument("trial count must be at least 1");
  const SamplingTables tables = tables_for(ds);
  TrialLog log;
  log.meta = TrialLogMeta{seed, n, std::move(source)};
  log.records.resize(n);

  if (threads == 0) threads = n >= kParallelThreshold ? std::max(1u, std::thread::hardware_concurrency()) : 1;
  auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) log.records[t] = draw(tables, seed, t);
  };
  if (threads <= 1) {
    fill(0, n);
    return log;
  }
  {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = (n + threads - 1) / threads;
    for (std::uint64_t begin = 0; begin < n; begin += chunk) {
      workers.emplace_back(fill, begin, std::min(n, begin + chunk));
    }
  }
  return log;
}

template <class T>
EmpiricalEstimate<T> estimate_observational(const TrialLog& log) {
  EmpiricalEstimate<T> est;
  for (const TrialRecord& r : log.records) {
    if (!satisfies_zero_convention(r)) {
      throw InvalidDataset("trial " + std::to_string(r.trial_id) + " violates the zero-value convention");
    }
    const std::size_t c = context_index(r.ra, r.rb);
    ++est.counts[c][cell_index(r.a(r.ra), r.b(r.rb))];
    ++est.context_counts[c];
  }
  est.n = log.records.size();
  for (std::size_t c = 0; c < 4; ++c) {
    if (est.context_counts[c] == 0) throw EmptyContext(kContexts[c].i, kContexts[c].j);
  }

  std::array<PairDistribution<T>, 4> pairs;
  std::array<T, 4> settings;
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<T, 4> entries;
    for (std::size_t k = 0; k < 4; ++k) {
      entries[k] = T(est.counts[c][k]) / T(est.context_counts[c]);
    }
    pairs[c] = PairDistribution<T>(entries);
    settings[c] = T(est.context_counts[c]) / T(est.n);
  }
  est.dataset = ObservationalDataset<T>(pairs, SettingDistribution<T>(settings));
  return est;
}

template <class T>
ObservationalDataset<T> inject_signaling(const ObservationalDataset<T>& ds, Side side, const T& epsilon) {
  std::array<PairDistribution<T>, 4> pairs = ds.pairs();
  const T half = epsilon / 2;
  for (std::size_t c = 0; c < 4; ++c) {
    const Context ctx = kContexts[c];
    if ((side == Side::kA && ctx.j != 1) || (side == Side::kB && ctx.i != 1)) continue;
    std::array<T, 4> e = pairs[c].entries();
    for (int other : {1, -1}) {
      // Side A moves mass along alpha within each beta column; side B along
      // beta within each alpha row.
      const std::size_t up = side == Side::kA ? cell_index(1, other) : cell_index(other, 1);
      const std::size_t down = side == Side::kA ? cell_index(-1, other) : cell_index(other, -1);
      e[up] += half;
      e[down] -= half;
    }
    for (const T& p : e) {
      if (p < 0 || p > 1) throw OutOfRange("signaling shift moves a cell outside [0, 1]");
    }
    pairs[c] = PairDistribution<T>(e);
  }
  return ObservationalDataset<T>(pairs, ds.settings());
}

#define BELLCP_INSTANTIATE(T)                                                                      \
  template TrialLog simulate(const ObservationalDataset<T>&, std::uint64_t, std::uint64_t,        \
                             std::string, unsigned);                                               \
  template EmpiricalEstimate<T> estimate_observational(const TrialLog&);                           \
  template ObservationalDataset<T> inject_signaling(const ObservationalDataset<T>&, Side, const T&);

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp
