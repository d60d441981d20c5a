#pragma once

#include <bellcp/scalar.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bellcp {

/// Opaque atom label; models use fixed-width integer tuples.
using Atom = std::vector<int>;

using AtomPredicate = std::function<bool(const Atom&)>;

/// A finite probability space: distinct atoms with weights summing to one.
/// The event algebra is the full power set, so events are just predicates.
template <class T>
class FiniteSpace {
 public:
  /// Throws InvalidDataset on negative weights, duplicate labels, a size
  /// mismatch or |sum - 1| above ScalarTraits<T>::sum_tolerance().
  FiniteSpace(std::vector<Atom> atoms, std::vector<T> weights);

  std::size_t size() const { return atoms_.size(); }
  const Atom& atom(std::size_t k) const { return atoms_[k]; }
  const T& weight(std::size_t k) const { return weights_[k]; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const T> weights() const { return weights_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<T> weights_;
};

/// Integer-valued function on atoms. Totality comes from being a function of
/// the label rather than a lookup table.
class RandomVariable {
 public:
  RandomVariable(std::string name, std::function<int(const Atom&)> assignment)
      : name_(std::move(name)), assignment_(std::move(assignment)) {}

  /// The k-th tuple component of the atom label.
  static RandomVariable coordinate(std::string name, std::size_t k);

  const std::string& name() const { return name_; }
  int operator()(const Atom& atom) const { return assignment_(atom); }

  /// Predicate for the event {X = value}.
  AtomPredicate equals(int value) const;

 private:
  std::string name_;
  std::function<int(const Atom&)> assignment_;
};

template <class T>
T event_probability(const FiniteSpace<T>& space, const AtomPredicate& event);

/// P(target | given). Throws ZeroConditioningEvent when P(given) = 0.
template <class T>
T conditional_probability(const FiniteSpace<T>& space, const AtomPredicate& target,
                          const AtomPredicate& given);

/// Distribution of the vector (X_1, ..., X_k), keyed by value tuples.
template <class T>
std::map<std::vector<int>, T> joint_distribution(const FiniteSpace<T>& space,
                                                 std::span<const RandomVariable> variables);

/// Factorization test for vector groupings X and Y:
/// |P(X=x, Y=y) - P(X=x) P(Y=y)| <= tol for every pair of values.
template <class T>
bool are_independent(const FiniteSpace<T>& space, std::span<const RandomVariable> x,
                     std::span<const RandomVariable> y, const T& tol);

struct LemmaVerdict {
  bool conditionals_flat = false;
  bool independent = false;
};

/// For Y with values in {1, 2}: whether P(X=x | Y=1) = P(X=x | Y=2) for all
/// x, and whether X and Y are independent. Flat conditionals imply
/// independence, so {true, false} never occurs.
template <class T>
LemmaVerdict check_appendix_lemma(const FiniteSpace<T>& space, const RandomVariable& x,
                                  const RandomVariable& y, const T& tol);

}  // namespace bellcp
