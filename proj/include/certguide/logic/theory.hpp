// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "certguide/logic/syntax.hpp"

namespace certguide::logic {

class NotDerivable : public LogicError {
 public:
  using LogicError::LogicError;
};

class GoalUnset : public LogicError {
 public:
  GoalUnset() : LogicError("no goal has been set") {}
};

/// A rule whose consequent has a variable missing from every antecedent,
/// or a non-ground fact.
class RangeError : public LogicError {
 public:
  using LogicError::LogicError;
};

using Substitution = std::map<std::string, Term>;

struct Derivation {
  Literal fact;
  std::optional<std::size_t> axiom;  // nullopt for assumptions
  Substitution substitution;
};

struct Inference {
  Literal fact;
  std::size_t axiom;
  Substitution substitution;
};

/**
 * Declared symbols, axioms, ground facts and an optional goal. Facts are kept
 * keyed by canonical printing, so duplicates are impossible; negation is a
 * literal marker and contradictory facts may coexist.
 */
class TheoryState {
 public:
  SymbolTable symbols;

  /// Predicates and constructors seen without a declaration get their arity
  /// from first use; in strict mode undeclared names are rejected.
  bool strict_symbols = false;

  /// Adds a rule (range-restricted) or, for a fact, an assumption.
  /// Throws RangeError, SyntaxError (arity) or LogicError (strict mode).
  std::size_t add_axiom(const Rule& rule);
  void assume(const Literal& fact);
  void set_goal(const Literal& goal);
  void clear_goal() { goal_.reset(); }

  const std::vector<Rule>& axioms() const { return axioms_; }
  const std::optional<Literal>& goal() const { return goal_; }
  const std::vector<Derivation>& derivation_log() const { return log_; }

  bool has_fact(const Literal& l) const { return facts_.count(to_string(l)) > 0; }
  std::size_t fact_count() const { return facts_.size(); }
  /// Facts in canonical order.
  std::vector<Literal> facts() const;
  /// Facts with this polarity and predicate.
  const std::vector<Literal>& facts_for(bool negated, const std::string& predicate) const;
  /// True when some atom and its negation are both facts.
  bool inconsistent() const;

  /// Records a fact justified by `axiom` under `substitution`. Used by
  /// assert_fact and closure; does not re-check the justification.
  void record(const Literal& fact, std::optional<std::size_t> axiom, Substitution substitution);

 private:
  void check_symbols(const Literal& l);

  std::vector<Rule> axioms_;
  std::optional<Literal> goal_;
  std::map<std::string, Literal> facts_;
  std::map<std::pair<bool, std::string>, std::vector<Literal>> index_;
  std::vector<Derivation> log_;
};

/// Every new ground literal one rule application away, canonical order.
std::vector<Literal> step_inferences(const TheoryState& state);
/// Same, with the first (axiom order) justification of each.
std::vector<Inference> step_inferences_with_provenance(const TheoryState& state);

/// Adds a derivable literal; throws NotDerivable when it is not in the step
/// set (including when it is already a fact).
void assert_fact(TheoryState& state, const Literal& literal);

/// Least fixpoint of the facts under the rules, canonical order.
std::vector<Literal> closure(const TheoryState& state);
/// The state extended to its fixpoint, with every derivation logged.
TheoryState close_theory(TheoryState state);

/// Round in which each literal first appears when all step inferences are
/// applied together (0 for assumptions).
std::map<std::string, std::size_t> derivation_levels(const TheoryState& state);

enum class GoalStatus { Proved, Disproved, Open };
enum class Answer { True, False, Unknown };

std::string to_string(GoalStatus s);
std::string to_string(Answer a);
/// "True", "False" or "Unknown"; nullopt otherwise.
std::optional<Answer> parse_answer(std::string_view s);
Answer to_answer(GoalStatus s);

/// Throws GoalUnset.
GoalStatus check_goal(const TheoryState& state);

/// Instantiates `lit` under `s`; variables not in `s` stay as they are.
Literal substitute(const Literal& lit, const Substitution& s);

}  // namespace certguide::logic
