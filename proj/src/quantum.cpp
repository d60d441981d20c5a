#include <bellcp/quantum.hpp>

#include <bellcp/errors.hpp>

#include <cmath>
#include <numbers>

namespace bellcp {

AngleConfig tsirelson_angles() {
  using std::numbers::pi;
  return AngleConfig{0.0, pi / 2, pi / 4, 3 * pi / 4};
}

template <class T>
PairDistribution<T> singlet_pair_distribution(double theta_a, double theta_b,
                                              AngleConvention convention) {
  if (!std::isfinite(theta_a) || !std::isfinite(theta_b)) {
    throw InvalidDataset("measurement angles must be finite");
  }
  double delta = theta_a - theta_b;
  if (convention == AngleConvention::kPhotonPolarization) delta *= 2;
  const T c = ScalarTraits<T>::from_double(std::cos(delta));
  std::array<T, 4> entries;
  for (std::size_t k = 0; k < 4; ++k) {
    const T sign(kCells[k].alpha * kCells[k].beta);
    entries[k] = (T(1) - sign * c) / 4;
  }
  return PairDistribution<T>(entries);
}

template <class T>
ObservationalDataset<T> singlet_dataset(const AngleConfig& cfg, const SettingDistribution<T>& settings,
                                        AngleConvention convention) {
  std::array<PairDistribution<T>, 4> pairs;
  for (std::size_t c = 0; c < 4; ++c) {
    pairs[c] = singlet_pair_distribution<T>(cfg.a(kContexts[c].i), cfg.b(kContexts[c].j), convention);
  }
  return ObservationalDataset<T>(pairs, settings);
}

template PairDistribution<double> singlet_pair_distribution(double, double, AngleConvention);
template PairDistribution<Rational> singlet_pair_distribution(double, double, AngleConvention);
template ObservationalDataset<double> singlet_dataset(const AngleConfig&, const SettingDistribution<double>&,
                                                      AngleConvention);
template ObservationalDataset<Rational> singlet_dataset(const AngleConfig&,
                                                        const SettingDistribution<Rational>&,
                                                        AngleConvention);

}  // namespace bellcp
