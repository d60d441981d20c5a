#pragma once

#include <bellcp/observational.hpp>

namespace bellcp {

/// Spin singlet: correlation -cos(theta_a - theta_b). Photon polarization
/// angles: -cos 2(theta_a - theta_b).
enum class AngleConvention { kSpinSinglet, kPhotonPolarization };

/// Measurement directions in radians.
struct AngleConfig {
  double theta_a1 = 0;
  double theta_a2 = 0;
  double theta_b1 = 0;
  double theta_b2 = 0;

  double a(int i) const { return i == 1 ? theta_a1 : theta_a2; }
  double b(int j) const { return j == 1 ? theta_b1 : theta_b2; }
};

/// (0, pi/2, pi/4, 3pi/4): |CHSH| = 2 sqrt 2 for the spin singlet.
AngleConfig tsirelson_angles();

/// Born-rule outcome distribution (1 - alpha beta cos(delta)) / 4.
///
/// The cosine is evaluated in double precision and then converted exactly,
/// so in exact mode each distribution is exactly normalized and both
/// single-variable marginals are exactly 1/2.
template <class T>
PairDistribution<T> singlet_pair_distribution(double theta_a, double theta_b,
                                              AngleConvention convention = AngleConvention::kSpinSinglet);

template <class T>
ObservationalDataset<T> singlet_dataset(const AngleConfig& cfg,
                                        const SettingDistribution<T>& settings = {},
                                        AngleConvention convention = AngleConvention::kSpinSinglet);

}  // namespace bellcp
