#include <bellcp/probability.hpp>

#include <bellcp/errors.hpp>

#include <set>
#include <stdexcept>

namespace bellcp {

template <class T>
FiniteSpace<T>::FiniteSpace(std::vector<Atom> atoms, std::vector<T> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.size() != weights_.size()) {
    throw InvalidDataset("atom and weight counts differ");
  }
  if (atoms_.empty()) throw InvalidDataset("empty sample space");
  std::set<Atom> seen;
  T total = 0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (!seen.insert(atoms_[k]).second) throw InvalidDataset("duplicate atom label");
    if (weights_[k] < 0 || weights_[k] > 1) throw InvalidDataset("atom weight outside [0, 1]");
    total += weights_[k];
  }
  if (magnitude(T(total - 1)) > ScalarTraits<T>::sum_tolerance()) {
    throw InvalidDataset("atom weights do not sum to 1");
  }
}

RandomVariable RandomVariable::coordinate(std::string name, std::size_t k) {
  return RandomVariable(std::move(name), [k](const Atom& atom) {
    if (k >= atom.size()) throw std::out_of_range("atom has no coordinate " + std::to_string(k));
    return atom[k];
  });
}

AtomPredicate RandomVariable::equals(int value) const {
  return [f = assignment_, value](const Atom& atom) { return f(atom) == value; };
}

template <class T>
T event_probability(const FiniteSpace<T>& space, const AtomPredicate& event) {
  T total = 0;
  for (std::size_t k = 0; k < space.size(); ++k) {
    if (event(space.atom(k))) total += space.weight(k);
  }
  return total;
}

template <class T>
T conditional_probability(const FiniteSpace<T>& space, const AtomPredicate& target,
                          const AtomPredicate& given) {
  T joint = 0;
  T denominator = 0;
  for (std::size_t k = 0; k < space.size(); ++k) {
    const Atom& atom = space.atom(k);
    if (!given(atom)) continue;
    denominator += space.weight(k);
    if (target(atom)) joint += space.weight(k);
  }
  if (denominator == 0) throw ZeroConditioningEvent("conditioning event has probability zero");
  return joint / denominator;
}

template <class T>
std::map<std::vector<int>, T> joint_distribution(const FiniteSpace<T>& space,
                                                 std::span<const RandomVariable> variables) {
  std::map<std::vector<int>, T> pmf;
  std::vector<int> key(variables.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    for (std::size_t v = 0; v < variables.size(); ++v) key[v] = variables[v](space.atom(k));
    pmf[key] += space.weight(k);
  }
  return pmf;
}

template <class T>
bool are_independent(const FiniteSpace<T>& space, std::span<const RandomVariable> x,
                     std::span<const RandomVariable> y, const T& tol) {
  std::vector<RandomVariable> both(x.begin(), x.end());
  both.insert(both.end(), y.begin(), y.end());
  const auto px = joint_distribution(space, x);
  const auto py = joint_distribution(space, y);
  const auto pxy = joint_distribution<T>(space, both);

  std::vector<int> key;
  for (const auto& [xv, xp] : px) {
    for (const auto& [yv, yp] : py) {
      key = xv;
      key.insert(key.end(), yv.begin(), yv.end());
      auto it = pxy.find(key);
      const T joint = it == pxy.end() ? T(0) : it->second;
      if (magnitude(T(joint - xp * yp)) > tol) return false;
    }
  }
  return true;
}

template <class T>
LemmaVerdict check_appendix_lemma(const FiniteSpace<T>& space, const RandomVariable& x,
                                  const RandomVariable& y, const T& tol) {
  for (const Atom& atom : space.atoms()) {
    const int v = y(atom);
    if (v != 1 && v != 2) throw InvalidDataset("Y must take values in {1, 2}");
  }
  const auto y1 = y.equals(1);
  const auto y2 = y.equals(2);
  std::set<int> x_values;
  for (const Atom& atom : space.atoms()) x_values.insert(x(atom));

  LemmaVerdict verdict;
  verdict.conditionals_flat = true;
  for (int value : x_values) {
    const auto target = x.equals(value);
    const T c1 = conditional_probability(space, target, y1);
    const T c2 = conditional_probability(space, target, y2);
    if (magnitude(T(c1 - c2)) > tol) verdict.conditionals_flat = false;
  }
  const RandomVariable xs[] = {x};
  const RandomVariable ys[] = {y};
  verdict.independent = are_independent<T>(space, xs, ys, tol);
  return verdict;
}

#define BELLCP_INSTANTIATE(T)                                                                   \
  template class FiniteSpace<T>;                                                                \
  template T event_probability(const FiniteSpace<T>&, const AtomPredicate&);                    \
  template T conditional_probability(const FiniteSpace<T>&, const AtomPredicate&,               \
                                     const AtomPredicate&);                                     \
  template std::map<std::vector<int>, T> joint_distribution(const FiniteSpace<T>&,              \
                                                            std::span<const RandomVariable>);   \
  template bool are_independent(const FiniteSpace<T>&, std::span<const RandomVariable>,         \
                                std::span<const RandomVariable>, const T&);                     \
  template LemmaVerdict check_appendix_lemma(const FiniteSpace<T>&, const RandomVariable&,      \
                                             const RandomVariable&, const T&);

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp
