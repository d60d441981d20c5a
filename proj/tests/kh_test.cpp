#include <bellcp/errors.hpp>
#include <bellcp/kh.hpp>
#include <bellcp/quantum.hpp>
#include <bellcp/simulator.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

namespace bellcp {
namespace {

using testing::Rng;

const double kSqrt2 = std::sqrt(2.0);

TEST(Support, SixteenAtoms) {
  int count = 0;
  for (int a1 : {-1, 0, 1}) {
    for (int a2 : {-1, 0, 1}) {
      for (int b1 : {-1, 0, 1}) {
        for (int b2 : {-1, 0, 1}) {
          for (int ra : {1, 2}) {
            for (int rb : {1, 2}) {
              const SixAtom atom{a1, a2, b1, b2, ra, rb};
              const bool expected = (a1 != 0) == (ra == 1) && (a2 != 0) == (ra == 2) &&
                                    (b1 != 0) == (rb == 1) && (b2 != 0) == (rb == 2);
              EXPECT_EQ(on_support(atom), expected);
              count += expected;
            }
          }
        }
      }
    }
  }
  EXPECT_EQ(count, 16);
  for (std::size_t k = 0; k < 16; ++k) {
    EXPECT_TRUE(on_support(kSupport[k]));
    if (k > 0) EXPECT_LT(kSupport[k - 1], kSupport[k]);
  }
}

TEST(SixVarJpd, RejectsOutOfDomainAtoms) {
  EXPECT_THROW(SixVarJpd<Rational>({{SixAtom{2, 0, 1, 0, 1, 1}, Rational(1)}}), InvalidDataset);
  EXPECT_THROW(SixVarJpd<Rational>({{SixAtom{1, 0, 1, 0, 3, 1}, Rational(1)}}), InvalidDataset);
  EXPECT_THROW(SixVarJpd<Rational>({{SixAtom{1, 0, 1, 0, 1, 1}, Rational(1, 2)}}), InvalidDataset);
}

TEST(BuildJpd, Examples) {
  const auto uniform = build_jpd(uniform_dataset<Rational>());
  EXPECT_EQ(uniform.weights().size(), 16u);
  for (const auto& atom : kSupport) EXPECT_EQ(uniform(atom), Rational(1, 16));

  const auto singlet = build_jpd(singlet_dataset<double>({0, 0, std::numbers::pi / 4, 0}));
  EXPECT_NEAR(singlet(SixAtom{1, 0, 1, 0, 1, 1}), (1 - kSqrt2 / 2) / 16, 1e-16);
  EXPECT_NEAR(singlet(SixAtom{1, 0, 1, 0, 1, 1}), 0.0183, 1e-4);

  EXPECT_THROW(build_jpd(ObservationalDataset<Rational>(
                   {}, SettingDistribution<Rational>({Rational(1), Rational(0), Rational(0), Rational(0)}))),
               InvalidDataset);
}

TEST(BuildJpd, ProductOfPairAndSettingProbabilities) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = testing::random_dataset<Rational>(rng);
    const auto jpd = build_jpd(ds);
    for (const auto& atom : kSupport) {
      const int i = atom.ra;
      const int j = atom.rb;
      EXPECT_EQ(jpd(atom), ds.pair(i, j)(atom.a(i), atom.b(j)) * ds.settings()(i, j));
    }
  }
}

TEST(VerifyMatching, Examples) {
  Rng rng(1);
  EXPECT_TRUE(verify_matching(build_jpd(testing::random_dataset<Rational>(rng)), Rational(0)));

  // 0.1 of the mass on an atom with a1 = +1 although ra = 2.
  std::map<SixAtom, Rational> w;
  for (const auto& atom : kSupport) w[atom] = Rational(9, 160);
  w[SixAtom{1, 1, 0, 1, 2, 2}] = Rational(1, 10);
  const SixVarJpd<Rational> bad(w);
  const auto report = matching_report(bad, Rational(0));
  EXPECT_FALSE(report.a_excluded);
  EXPECT_FALSE(verify_matching(bad, Rational(0)));

  const auto uniform = build_jpd(uniform_dataset<Rational>());
  EXPECT_TRUE(verify_matching(uniform, Rational(0)));
  const auto& space = uniform.space();
  const Rational joint = event_probability(space, [](const Atom& a) { return a[0] == 0 && a[4] == 2; });
  const Rational ra2 = event_probability(space, [](const Atom& a) { return a[4] == 2; });
  EXPECT_EQ(joint, Rational(1, 2));
  EXPECT_EQ(ra2, Rational(1, 2));
}

TEST(VerifyMatching, ZeroOutcomeUnderOwnSettingIsRejected) {
  // a1 = 0 although ra = 1: passes the exclusion checks, fails the
  // requirement that the selected variable is +-1.
  std::map<SixAtom, Rational> w;
  for (const auto& atom : kSupport) w[atom] = Rational(1, 32);
  w[SixAtom{0, 0, 1, 0, 1, 1}] = Rational(1, 2);
  const auto report = matching_report(SixVarJpd<Rational>(w), Rational(0));
  EXPECT_TRUE(report.a_excluded);
  EXPECT_TRUE(report.b_excluded);
  EXPECT_FALSE(report.nonzero_when_selected);
  EXPECT_FALSE(report.all());
}

TEST(ExtractObservational, Examples) {
  const auto uniform = extract_observational(build_jpd(uniform_dataset<Rational>()));
  EXPECT_EQ(uniform, uniform_dataset<Rational>());

  std::map<SixAtom, Rational> w;
  for (const auto& atom : kSupport) {
    if (!(atom.ra == 1 && atom.rb == 1)) w[atom] = Rational(1, 12);
  }
  EXPECT_THROW(extract_observational(SixVarJpd<Rational>(w)), ZeroConditioningEvent);
  EXPECT_THROW(conditional_correlation(SixVarJpd<Rational>(w), 1, 1), ZeroConditioningEvent);
  EXPECT_THROW(chsh_tilde(SixVarJpd<Rational>(w)), ZeroConditioningEvent);
}

TEST(ExtractObservational, ExactRoundTrip) {
  Rng rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ds = testing::random_dataset<Rational>(rng);
    const auto jpd = build_jpd(ds);
    ASSERT_EQ(extract_observational(jpd), ds);
    ASSERT_TRUE(verify_matching(jpd, Rational(0)));
  }
}

TEST(ExtractObservational, DoubleRoundTrip) {
  Rng rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ds = testing::random_dataset<double>(rng);
    const auto back = extract_observational(build_jpd(ds));
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t k = 0; k < 4; ++k) {
        ASSERT_NEAR(back.pairs()[c].entries()[k], ds.pairs()[c].entries()[k], 1e-12);
      }
      ASSERT_NEAR(back.settings().entries()[c], ds.settings().entries()[c], 1e-12);
    }
  }
}

TEST(ConditionalCorrelation, Examples) {
  const auto uniform = build_jpd(uniform_dataset<Rational>());
  for (const auto& c : kContexts) EXPECT_EQ(conditional_correlation(uniform, c.i, c.j), Rational(0));

  const auto singlet = build_jpd(singlet_dataset<double>({0, 0, std::numbers::pi / 4, 0}));
  EXPECT_NEAR(conditional_correlation(singlet, 1, 1), -kSqrt2 / 2, 1e-15);

  EXPECT_EQ(conditional_correlation(build_jpd(construct_pr_box<Rational>()), 1, 2), Rational(-1));
}

TEST(ConditionalCorrelation, EqualsObservationalCorrelation) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ds = testing::random_dataset<Rational>(rng);
    const auto jpd = build_jpd(ds);
    for (const auto& c : kContexts) {
      EXPECT_EQ(conditional_correlation(jpd, c.i, c.j), observational_correlation(ds, c.i, c.j));
    }
  }
}

TEST(ChshTilde, Examples) {
  EXPECT_EQ(chsh_tilde(build_jpd(uniform_dataset<Rational>())).chsh_tilde, Rational(0));
  const auto tsirelson = chsh_tilde(build_jpd(singlet_dataset<double>(tsirelson_angles())));
  EXPECT_NEAR(tsirelson.chsh_tilde, -2 * kSqrt2, 1e-12);
  EXPECT_NEAR(tsirelson.values[0], -kSqrt2 / 2, 1e-15);
  EXPECT_NEAR(tsirelson.values[1], kSqrt2 / 2, 1e-15);
  EXPECT_NEAR(tsirelson.values[2], -kSqrt2 / 2, 1e-15);
  EXPECT_NEAR(tsirelson.values[3], -kSqrt2 / 2, 1e-15);
  EXPECT_EQ(chsh_tilde(build_jpd(construct_pr_box<Rational>())).chsh_tilde, Rational(4));
}

TEST(ChshTilde, BoundedByFour) {
  Rng rng(4444);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto cc = chsh_tilde(build_jpd(testing::random_dataset<double>(rng)));
    ASSERT_LE(std::abs(cc.chsh_tilde), 4 + 1e-12);
    for (double v : cc.values) ASSERT_LE(std::abs(v), 1 + 1e-12);
  }
}

TEST(UnconditionalCorrelation, Examples) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = testing::random_nonsignaling_dataset<Rational>(rng);
    const ObservationalDataset<Rational> flat(ds.pairs(), {});
    const auto jpd = build_jpd(flat);
    for (const auto& c : kContexts) {
      EXPECT_EQ(unconditional_correlation(jpd, c.i, c.j), conditional_correlation(jpd, c.i, c.j) / 4);
    }
  }
  EXPECT_EQ(unconditional_chsh(build_jpd(uniform_dataset<Rational>())), Rational(0));
  const auto tsirelson = build_jpd(singlet_dataset<double>(tsirelson_angles()));
  EXPECT_NEAR(unconditional_chsh(tsirelson), -2 * kSqrt2 / 4, 1e-12);
  EXPECT_NEAR(unconditional_chsh(tsirelson), -0.7071, 1e-4);
}

TEST(UnconditionalCorrelation, ClassicalBoundOnRandomData) {
  Rng rng(14);
  for (int trial = 0; trial < 10000; ++trial) {
    ASSERT_LE(std::abs(unconditional_chsh(build_jpd(testing::random_dataset<double>(rng)))), 2 + 1e-12);
  }
}

TEST(NoSignaling, IndependenceAndKttOnFactorizedSettings) {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const auto base = testing::random_nonsignaling_dataset<Rational>(rng);
    const ObservationalDataset<Rational> ds(base.pairs(), testing::random_product_settings<Rational>(rng));
    const auto jpd = build_jpd(ds);
    for (Side side : {Side::kA, Side::kB}) {
      for (int own : {1, 2}) {
        ASSERT_TRUE(pair_independent_of_remote_generator(jpd, side, own, Rational(0)));
        for (int v : {1, -1}) {
          const Rational m1 = conditional_marginal(jpd, side, own, 1, v);
          const Rational m2 = conditional_marginal(jpd, side, own, 2, v);
          EXPECT_EQ(m1, m2);
          EXPECT_EQ(m1, own_setting_marginal(jpd, side, own, v));
          EXPECT_EQ(m1, marginal_m(ds, side, own, 1, v));
        }
      }
    }
  }
}

TEST(NoSignaling, InjectedSignalingBreaksKtt) {
  Rng rng(16);
  for (Side side : {Side::kA, Side::kB}) {
    const auto settings = testing::random_product_settings<Rational>(rng);
    const ObservationalDataset<Rational> base(uniform_dataset<Rational>().pairs(), settings);
    const auto jpd = build_jpd(inject_signaling(base, side, Rational(1, 10)));
    EXPECT_NE(conditional_marginal(jpd, side, 1, 1, 1), conditional_marginal(jpd, side, 1, 2, 1));
    EXPECT_EQ(conditional_marginal(jpd, side, 1, 1, 1) - conditional_marginal(jpd, side, 1, 2, 1), Rational(1, 10));
    EXPECT_FALSE(pair_independent_of_remote_generator(jpd, side, 1, Rational(0)));
    const Side other = side == Side::kA ? Side::kB : Side::kA;
    EXPECT_TRUE(pair_independent_of_remote_generator(jpd, other, 1, Rational(0)));
  }
}

}  // namespace
}  // namespace bellcp
