#include <bellcp/errors.hpp>
#include <bellcp/philox.hpp>
#include <bellcp/quantum.hpp>
#include <bellcp/simulator.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace bellcp {
namespace {

using testing::Rng;

TEST(Philox, KnownAnswerVectors) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, UniformsInUnitInterval) {
  for (std::uint64_t t = 0; t < 10000; ++t) {
    for (double u : Philox4x32::uniforms(12345, t)) {
      EXPECT_GE(u, 0.0);
      EXPECT_LT(u, 1.0);
    }
  }
}

TEST(Simulate, SingleTrialOfDeterministicDataset) {
  const PairDistribution<Rational> pp({Rational(1), Rational(0), Rational(0), Rational(0)});
  const PairDistribution<Rational> mm({Rational(0), Rational(0), Rational(0), Rational(1)});
  const ObservationalDataset<Rational> ds({pp, mm, pp, mm}, {});
  const auto log = simulate(ds, 1, 0);
  ASSERT_EQ(log.records.size(), 1u);
  const auto& r = log.records[0];
  EXPECT_EQ(r.trial_id, 0u);
  const int expected = r.rb == 1 ? 1 : -1;
  EXPECT_EQ(r.a(r.ra), expected);
  EXPECT_EQ(r.b(r.rb), expected);
  EXPECT_TRUE(satisfies_zero_convention(r));
}

TEST(Simulate, ZeroTrialsIsAnError) {
  EXPECT_THROW(simulate(uniform_dataset<double>(), 0, 1), std::invalid_argument);
}

TEST(Simulate, InverseCdfOracle) {
  // Recompute each trial from the raw Philox uniforms.
  Rng rng(9);
  const auto ds = testing::random_dataset<double>(rng);
  const auto log = simulate(ds, 2000, 77);
  auto pick = [](const std::array<double, 4>& p, double u) {
    double acc = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      acc += p[k];
      if (u < acc) return k;
    }
    return std::size_t{3};
  };
  for (const auto& r : log.records) {
    const auto u = Philox4x32::uniforms(77, r.trial_id);
    const Context ctx = kContexts[pick(ds.settings().entries(), u[0])];
    ASSERT_EQ(r.ra, ctx.i);
    ASSERT_EQ(r.rb, ctx.j);
    const Cell cell = kCells[pick(ds.pair(ctx.i, ctx.j).entries(), u[1])];
    ASSERT_EQ(r.a(r.ra), cell.alpha);
    ASSERT_EQ(r.b(r.rb), cell.beta);
  }
}

TEST(Simulate, DeterministicAndThreadIndependent) {
  const auto ds = singlet_dataset<double>(tsirelson_angles());
  const auto first = simulate(ds, 100000, 42, "x", 1);
  const auto second = simulate(ds, 100000, 42, "x", 1);
  const auto threaded = simulate(ds, 100000, 42, "x", 4);
  EXPECT_EQ(first.records, second.records);
  EXPECT_EQ(first.records, threaded.records);
  EXPECT_NE(first.records, simulate(ds, 100000, 43, "x", 1).records);
  for (std::size_t t = 0; t < first.records.size(); ++t) {
    ASSERT_EQ(first.records[t].trial_id, t);
    ASSERT_TRUE(satisfies_zero_convention(first.records[t]));
  }
  EXPECT_EQ(first.meta.seed, 42u);
  EXPECT_EQ(first.meta.n, 100000u);
  EXPECT_EQ(first.meta.source, "x");
}

TEST(Simulate, ExactAndDoubleDatasetsGiveTheSameLog) {
  const auto exact = uniform_dataset<Rational>();
  EXPECT_EQ(simulate(exact, 500, 3).records, simulate(uniform_dataset<double>(), 500, 3).records);
}

TEST(Simulate, ConvergesToTheDataset) {
  Rng rng(10);
  const auto ds = testing::random_dataset<double>(rng);
  for (std::uint64_t n : {10000ull, 100000ull, 1000000ull}) {
    const auto est = estimate_observational<double>(simulate(ds, n, 2024));
    const double bound = 4 * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n));
    double worst = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      worst = std::max(worst, std::abs(est.dataset.settings().entries()[c] - ds.settings().entries()[c]));
      for (std::size_t k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(est.dataset.pairs()[c].entries()[k] - ds.pairs()[c].entries()[k]));
      }
    }
    EXPECT_LE(worst, bound) << "n = " << n;
  }
}

TEST(Simulate, UniformJointFrequencies) {
  const auto est = estimate_observational<double>(simulate(uniform_dataset<double>(), 1000000, 7));
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(static_cast<double>(est.counts[c][k]) / 1e6, 1.0 / 16, 0.002);
    }
  }
}

TEST(EstimateObservational, Examples) {
  TrialLog log;
  std::uint64_t id = 0;
  for (const auto& c : kContexts) {
    TrialRecord r;
    r.trial_id = id++;
    r.ra = c.i;
    r.rb = c.j;
    (c.i == 1 ? r.a1 : r.a2) = 1;
    (c.j == 1 ? r.b1 : r.b2) = 1;
    log.records.push_back(r);
  }
  const auto est = estimate_observational<Rational>(log);
  for (const auto& c : kContexts) {
    EXPECT_EQ(est.dataset.pair(c.i, c.j)(1, 1), Rational(1));
    EXPECT_EQ(est.dataset.settings()(c.i, c.j), Rational(1, 4));
  }
  EXPECT_EQ(est.n, 4u);

  log.records.pop_back();
  try {
    estimate_observational<Rational>(log);
    FAIL() << "expected EmptyContext";
  } catch (const EmptyContext& e) {
    EXPECT_EQ(e.i(), 2);
    EXPECT_EQ(e.j(), 2);
  }

  log.records[0].a2 = 1;
  EXPECT_THROW(estimate_observational<double>(log), InvalidDataset);
}

TEST(InjectSignaling, Examples) {
  const auto uniform = uniform_dataset<Rational>();
  EXPECT_EQ(inject_signaling(uniform, Side::kA, Rational(0)), uniform);

  const auto shifted = inject_signaling(uniform, Side::kA, Rational(1, 10));
  EXPECT_EQ(marginal_m(shifted, Side::kA, 1, 1, 1), Rational(3, 5));
  EXPECT_EQ(marginal_m(shifted, Side::kA, 1, 2, 1), Rational(1, 2));
  EXPECT_EQ(signaling_report(shifted, Rational(0)).max_delta, Rational(1, 10));

  EXPECT_THROW(inject_signaling(uniform, Side::kA, Rational(4, 5)), OutOfRange);
}

TEST(InjectSignaling, DeltaEqualsEpsilonOnNonSignalingData) {
  Rng rng(11);
  std::uniform_int_distribution<int> k(-20, 20);
  int applied = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto ds = testing::random_nonsignaling_dataset<Rational>(rng);
    const Rational eps(k(rng), 1000);
    for (Side side : {Side::kA, Side::kB}) {
      try {
        const auto out = inject_signaling(ds, side, eps);
        EXPECT_EQ(signaling_report(out, Rational(0)).max_delta, magnitude(eps));
        ++applied;
      } catch (const OutOfRange&) {
      }
    }
  }
  EXPECT_GT(applied, 500);
}

}  // namespace
}  // namespace bellcp
