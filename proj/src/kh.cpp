#include <bellcp/kh.hpp>

#include <bellcp/errors.hpp>

#include <stdexcept>
#include <string>

namespace bellcp {
namespace {

std::array<SixAtom, 16> make_support() {
  std::array<SixAtom, 16> atoms{};
  std::size_t k = 0;
  for (int x1 : {-1, 0, 1}) {
    for (int x2 : {-1, 0, 1}) {
      for (int y1 : {-1, 0, 1}) {
        for (int y2 : {-1, 0, 1}) {
          for (int ra : {1, 2}) {
            for (int rb : {1, 2}) {
              const SixAtom atom{x1, x2, y1, y2, ra, rb};
              if (on_support(atom)) atoms[k++] = atom;
            }
          }
        }
      }
    }
  }
  return atoms;
}

template <class T>
FiniteSpace<T> to_space(const std::map<SixAtom, T>& weights) {
  std::vector<Atom> labels;
  std::vector<T> w;
  labels.reserve(weights.size());
  w.reserve(weights.size());
  for (const auto& [atom, p] : weights) {
    auto value_ok = [](int v) { return v == -1 || v == 0 || v == 1; };
    auto setting_ok = [](int s) { return s == 1 || s == 2; };
    if (!value_ok(atom.a1) || !value_ok(atom.a2) || !value_ok(atom.b1) || !value_ok(atom.b2) ||
        !setting_ok(atom.ra) || !setting_ok(atom.rb)) {
      throw InvalidDataset("six-variable atom outside {-1,0,1}^4 x {1,2}^2");
    }
    labels.push_back(atom.label());
    w.push_back(p);
  }
  return FiniteSpace<T>(std::move(labels), std::move(w));
}

enum Coord : std::size_t { kA1 = 0, kA2, kB1, kB2, kRa, kRb };

std::size_t outcome_coord(Side side, int own) {
  setting_slot(own);
  if (side == Side::kA) return own == 1 ? kA1 : kA2;
  return own == 1 ? kB1 : kB2;
}

AtomPredicate coord_is(std::size_t k, int v) {
  return [k, v](const Atom& atom) { return atom[k] == v; };
}

AtomPredicate both(AtomPredicate x, AtomPredicate y) {
  return [x = std::move(x), y = std::move(y)](const Atom& atom) { return x(atom) && y(atom); };
}

AtomPredicate settings_are(int i, int j) { return both(coord_is(kRa, i), coord_is(kRb, j)); }

}  // namespace

bool on_support(const SixAtom& atom) {
  if ((atom.ra != 1 && atom.ra != 2) || (atom.rb != 1 && atom.rb != 2)) return false;
  for (int i : {1, 2}) {
    const bool a_selected = atom.ra == i;
    if (a_selected != (atom.a(i) != 0)) return false;
    const bool b_selected = atom.rb == i;
    if (b_selected != (atom.b(i) != 0)) return false;
  }
  return true;
}

const std::array<SixAtom, 16> kSupport = make_support();

RandomVariable six_variable(std::string_view name) {
  static constexpr std::array<std::string_view, 6> kNames{"a1", "a2", "b1", "b2", "ra", "rb"};
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (kNames[k] == name) return RandomVariable::coordinate(std::string(name), k);
  }
  throw std::invalid_argument("unknown random variable '" + std::string(name) + "'");
}

template <class T>
SixVarJpd<T>::SixVarJpd(std::map<SixAtom, T> weights)
    : weights_(std::move(weights)), space_(to_space(weights_)) {}

template <class T>
T SixVarJpd<T>::operator()(const SixAtom& atom) const {
  auto it = weights_.find(atom);
  return it == weights_.end() ? T(0) : it->second;
}

template <class T>
SixVarJpd<T> build_jpd(const ObservationalDataset<T>& ds) {
  std::map<SixAtom, T> weights;
  for (const SixAtom& atom : kSupport) {
    const int i = atom.ra;
    const int j = atom.rb;
    weights[atom] = ds.pair(i, j)(atom.a(i), atom.b(j)) * ds.settings()(i, j);
  }
  return SixVarJpd<T>(std::move(weights));
}

template <class T>
MatchingReport matching_report(const SixVarJpd<T>& jpd, const T& tol) {
  const auto& space = jpd.space();
  auto near = [&tol](const T& x, const T& y) { return !(magnitude(T(x - y)) > tol); };
  auto nonzero = [](std::size_t k) {
    return [k](const Atom& atom) { return atom[k] != 0; };
  };

  MatchingReport report{true, true, true, true, true};
  for (Side side : {Side::kA, Side::kB}) {
    const std::size_t gen = side == Side::kA ? kRa : kRb;
    bool& excluded = side == Side::kA ? report.a_excluded : report.b_excluded;
    for (int own : {1, 2}) {
      const std::size_t var = outcome_coord(side, own);
      for (int selected : {1, 2}) {
        const T p_selected = event_probability(space, coord_is(gen, selected));
        const T p_zero = event_probability(space, both(coord_is(var, 0), coord_is(gen, selected)));
        const T p_plus = event_probability(space, both(coord_is(var, 1), coord_is(gen, selected)));
        const T p_minus = event_probability(space, both(coord_is(var, -1), coord_is(gen, selected)));
        const T p_any = event_probability(space, both(nonzero(var), coord_is(gen, selected)));
        if (selected != own) {
          if (!near(p_plus, T(0)) || !near(p_minus, T(0))) excluded = false;
          if (!near(p_zero, p_selected)) report.zero_when_unselected = false;
        } else {
          if (!near(p_zero, T(0))) report.nonzero_when_selected = false;
        }
        if (!near(T(p_zero + p_plus + p_minus), p_selected) || !near(T(p_plus + p_minus), p_any)) {
          report.decomposition = false;
        }
      }
    }
  }
  return report;
}

template <class T>
ObservationalDataset<T> extract_observational(const SixVarJpd<T>& jpd) {
  const auto& space = jpd.space();
  std::array<PairDistribution<T>, 4> pairs;
  std::array<T, 4> settings;
  for (std::size_t c = 0; c < 4; ++c) {
    const auto [i, j] = kContexts[c];
    const auto given = settings_are(i, j);
    settings[c] = event_probability(space, given);
    std::array<T, 4> entries;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto target = both(coord_is(outcome_coord(Side::kA, i), kCells[k].alpha),
                               coord_is(outcome_coord(Side::kB, j), kCells[k].beta));
      entries[k] = conditional_probability(space, target, given);
    }
    pairs[c] = PairDistribution<T>(entries);
  }
  return ObservationalDataset<T>(pairs, SettingDistribution<T>(settings));
}

template <class T>
T conditional_correlation(const SixVarJpd<T>& jpd, int i, int j) {
  const auto& space = jpd.space();
  const auto given = settings_are(i, j);
  T corr = 0;
  for (const Cell& cell : kCells) {
    const auto target = both(coord_is(outcome_coord(Side::kA, i), cell.alpha),
                             coord_is(outcome_coord(Side::kB, j), cell.beta));
    corr += T(cell.alpha * cell.beta) * conditional_probability(space, target, given);
  }
  return corr;
}

template <class T>
ConditionalCorrelations<T> chsh_tilde(const SixVarJpd<T>& jpd) {
  ConditionalCorrelations<T> out;
  for (std::size_t c = 0; c < 4; ++c) {
    out.values[c] = conditional_correlation(jpd, kContexts[c].i, kContexts[c].j);
  }
  out.chsh_tilde = chsh_combination(out.values);
  return out;
}

template <class T>
T unconditional_correlation(const SixVarJpd<T>& jpd, int i, int j) {
  const std::size_t a = outcome_coord(Side::kA, i);
  const std::size_t b = outcome_coord(Side::kB, j);
  const auto& space = jpd.space();
  T corr = 0;
  for (std::size_t k = 0; k < space.size(); ++k) {
    corr += T(space.atom(k)[a] * space.atom(k)[b]) * space.weight(k);
  }
  return corr;
}

template <class T>
T unconditional_chsh(const SixVarJpd<T>& jpd) {
  std::array<T, 4> values;
  for (std::size_t c = 0; c < 4; ++c) {
    values[c] = unconditional_correlation(jpd, kContexts[c].i, kContexts[c].j);
  }
  return chsh_combination(values);
}

template <class T>
T conditional_marginal(const SixVarJpd<T>& jpd, Side side, int own, int other, int value) {
  const int i = side == Side::kA ? own : other;
  const int j = side == Side::kA ? other : own;
  return conditional_probability(jpd.space(), coord_is(outcome_coord(side, own), value),
                                 settings_are(i, j));
}

template <class T>
T own_setting_marginal(const SixVarJpd<T>& jpd, Side side, int own, int value) {
  const std::size_t gen = side == Side::kA ? kRa : kRb;
  return conditional_probability(jpd.space(), coord_is(outcome_coord(side, own), value),
                                 coord_is(gen, own));
}

template <class T>
bool pair_independent_of_remote_generator(const SixVarJpd<T>& jpd, Side side, int own, const T& tol) {
  setting_slot(own);
  const char* prefix = side == Side::kA ? "a" : "b";
  const RandomVariable x[] = {six_variable(prefix + std::to_string(own)),
                              six_variable(side == Side::kA ? "ra" : "rb")};
  const RandomVariable y[] = {six_variable(side == Side::kA ? "rb" : "ra")};
  return are_independent<T>(jpd.space(), x, y, tol);
}

#define BELLCP_INSTANTIATE(T)                                                                   \
  template class SixVarJpd<T>;                                                                  \
  template SixVarJpd<T> build_jpd(const ObservationalDataset<T>&);                              \
  template MatchingReport matching_report(const SixVarJpd<T>&, const T&);                       \
  template ObservationalDataset<T> extract_observational(const SixVarJpd<T>&);                  \
  template T conditional_correlation(const SixVarJpd<T>&, int, int);                            \
  template ConditionalCorrelations<T> chsh_tilde(const SixVarJpd<T>&);                          \
  template T unconditional_correlation(const SixVarJpd<T>&, int, int);                          \
  template T unconditional_chsh(const SixVarJpd<T>&);                                           \
  template T conditional_marginal(const SixVarJpd<T>&, Side, int, int, int);                    \
  template T own_setting_marginal(const SixVarJpd<T>&, Side, int, int);                         \
  template bool pair_independent_of_remote_generator(const SixVarJpd<T>&, Side, int, const T&);

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp
