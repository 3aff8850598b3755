// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/logic/theory.hpp"

#include <algorithm>

namespace certguide::logic {

namespace {

Term substitute(const Term& t, const Substitution& s) {
  if (t.kind == Term::Kind::Variable) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  if (t.kind == Term::Kind::Constant) return t;
  Term out = t;
  for (auto& a : out.args) a = substitute(a, s);
  return out;
}

bool unify(const Term& pattern, const Term& ground, Substitution& s) {
  switch (pattern.kind) {
    case Term::Kind::Variable: {
      auto it = s.find(pattern.name);
      if (it != s.end()) return it->second == ground;
      s.emplace(pattern.name, ground);
      return true;
    }
    case Term::Kind::Constant:
      return ground.kind == Term::Kind::Constant && ground.name == pattern.name;
    case Term::Kind::Compound:
      if (ground.kind != Term::Kind::Compound || ground.name != pattern.name || ground.args.size() != pattern.args.size()) {
        return false;
      }
      for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (!unify(pattern.args[i], ground.args[i], s)) return false;
      }
      return true;
  }
  return false;
}

bool unify(const Literal& pattern, const Literal& fact, Substitution& s) {
  if (pattern.args.size() != fact.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!unify(pattern.args[i], fact.args[i], s)) return false;
  }
  return true;
}

void check_term_symbols(const Term& t, SymbolTable& symbols, bool strict) {
  if (t.kind == Term::Kind::Constant) {
    if (strict && !symbols.has(SymbolKind::Object, t.name)) throw LogicError("undeclared object `" + t.name + "`");
    return;
  }
  if (t.kind == Term::Kind::Compound) {
    auto n = symbols.constructor_arity(t.name);
    if (!n) {
      if (strict) throw LogicError("undeclared constructor `" + t.name + "`");
      symbols.declare(SymbolKind::ActionCtor, t.name, t.args.size());
    } else if (*n != t.args.size()) {
      throw SyntaxError("constructor `" + t.name + "` takes " + std::to_string(*n) + " arguments");
    }
    for (const auto& a : t.args) check_term_symbols(a, symbols, strict);
  }
}

}  // namespace

Literal substitute(const Literal& lit, const Substitution& s) {
  Literal out = lit;
  for (auto& a : out.args) a = substitute(a, s);
  return out;
}

void TheoryState::check_symbols(const Literal& l) {
  auto n = symbols.predicate_arity(l.predicate);
  if (!n) {
    if (strict_symbols) throw LogicError("undeclared predicate `" + l.predicate + "`");
    symbols.declare(l.args.size() == 1 ? SymbolKind::Prop : SymbolKind::Relation, l.predicate);
  } else if (*n != l.args.size()) {
    throw SyntaxError("arity mismatch: `" + l.predicate + "` takes " + std::to_string(*n) + " arguments");
  }
  for (const auto& a : l.args) check_term_symbols(a, symbols, strict_symbols);
}

std::size_t TheoryState::add_axiom(const Rule& rule) {
  if (rule.is_fact()) {
    if (!rule.consequent.ground()) throw RangeError("fact `" + to_string(rule.consequent) + "` is not ground");
  } else {
    std::vector<std::string> bound;
    for (const auto& a : rule.antecedents) {
      for (const auto& t : a.args) collect_variables(t, bound);
    }
    for (const auto& v : variables(rule.consequent)) {
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
        throw RangeError("variable '" + v + " of the consequent does not occur in an antecedent");
      }
    }
  }
  // Validate every literal before mutating anything.
  SymbolTable saved = symbols;
  try {
    for (const auto& a : rule.antecedents) check_symbols(a);
    check_symbols(rule.consequent);
  } catch (...) {
    symbols = std::move(saved);
    throw;
  }
  axioms_.push_back(rule);
  std::size_t index = axioms_.size() - 1;
  if (rule.is_fact() && !has_fact(rule.consequent)) record(rule.consequent, std::nullopt, {});
  return index;
}

void TheoryState::assume(const Literal& fact) { add_axiom(Rule{{}, fact}); }

void TheoryState::set_goal(const Literal& goal) {
  if (!goal.ground()) throw RangeError("goal `" + to_string(goal) + "` is not ground");
  SymbolTable saved = symbols;
  try {
    check_symbols(goal);
  } catch (...) {
    symbols = std::move(saved);
    throw;
  }
  goal_ = goal;
}

std::vector<Literal> TheoryState::facts() const {
  std::vector<Literal> out;
  out.reserve(facts_.size());
  for (const auto& [k, l] : facts_) out.push_back(l);
  return out;
}

const std::vector<Literal>& TheoryState::facts_for(bool negated, const std::string& predicate) const {
  static const std::vector<Literal> none;
  auto it = index_.find({negated, predicate});
  return it == index_.end() ? none : it->second;
}

bool TheoryState::inconsistent() const {
  for (const auto& [k, l] : facts_) {
    if (!l.negated && has_fact(l.complement())) return true;
  }
  return false;
}

void TheoryState::record(const Literal& fact, std::optional<std::size_t> axiom, Substitution substitution) {
  auto [it, inserted] = facts_.emplace(to_string(fact), fact);
  if (!inserted) return;
  index_[{fact.negated, fact.predicate}].push_back(fact);
  log_.push_back({fact, axiom, std::move(substitution)});
}

namespace {

void join(const TheoryState& state, const Rule& rule, std::size_t axiom, std::size_t i, Substitution& s,
          std::map<std::string, Inference>& out) {
  if (i == rule.antecedents.size()) {
    Literal fact = substitute(rule.consequent, s);
    std::string key = to_string(fact);
    if (!state.has_fact(fact) && out.count(key) == 0) out.emplace(key, Inference{fact, axiom, s});
    return;
  }
  const Literal& pattern = rule.antecedents[i];
  for (const Literal& f : state.facts_for(pattern.negated, pattern.predicate)) {
    Substitution next = s;
    if (unify(pattern, f, next)) join(state, rule, axiom, i + 1, next, out);
  }
}

}  // namespace

std::vector<Inference> step_inferences_with_provenance(const TheoryState& state) {
  std::map<std::string, Inference> found;
  const auto& axioms = state.axioms();
  for (std::size_t a = 0; a < axioms.size(); ++a) {
    if (axioms[a].is_fact()) continue;
    Substitution s;
    join(state, axioms[a], a, 0, s, found);
  }
  std::vector<Inference> out;
  out.reserve(found.size());
  for (auto& [k, inf] : found) out.push_back(std::move(inf));
  return out;
}

std::vector<Literal> step_inferences(const TheoryState& state) {
  std::vector<Literal> out;
  for (auto& inf : step_inferences_with_provenance(state)) out.push_back(std::move(inf.fact));
  return out;
}

void assert_fact(TheoryState& state, const Literal& literal) {
  for (auto& inf : step_inferences_with_provenance(state)) {
    if (inf.fact == literal) {
      state.record(inf.fact, inf.axiom, std::move(inf.substitution));
      return;
    }
  }
  throw NotDerivable("`" + to_string(literal) + "` does not follow in one step");
}

TheoryState close_theory(TheoryState state) {
  while (true) {
    auto step = step_inferences_with_provenance(state);
    if (step.empty()) return state;
    for (auto& inf : step) state.record(inf.fact, inf.axiom, std::move(inf.substitution));
  }
}

std::vector<Literal> closure(const TheoryState& state) { return close_theory(state).facts(); }

std::map<std::string, std::size_t> derivation_levels(const TheoryState& state) {
  std::map<std::string, std::size_t> level;
  TheoryState s = state;
  for (const auto& f : s.facts()) level.emplace(to_string(f), 0);
  for (std::size_t round = 1;; ++round) {
    auto step = step_inferences_with_provenance(s);
    if (step.empty()) return level;
    for (auto& inf : step) {
      level.emplace(to_string(inf.fact), round);
      s.record(inf.fact, inf.axiom, std::move(inf.substitution));
    }
  }
}

std::string to_string(GoalStatus s) {
  switch (s) {
    case GoalStatus::Proved:
      return "proved";
    case GoalStatus::Disproved:
      return "disproved";
    case GoalStatus::Open:
      return "open";
  }
  return "open";
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::True:
      return "True";
    case Answer::False:
      return "False";
    case Answer::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::optional<Answer> parse_answer(std::string_view s) {
  if (s == "True") return Answer::True;
  if (s == "False") return Answer::False;
  if (s == "Unknown") return Answer::Unknown;
  return std::nullopt;
}

Answer to_answer(GoalStatus s) {
  switch (s) {
    case GoalStatus::Proved:
      return Answer::True;
    case GoalStatus::Disproved:
      return Answer::False;
    case GoalStatus::Open:
      return Answer::Unknown;
  }
  return Answer::Unknown;
}

GoalStatus check_goal(const TheoryState& state) {
  if (!state.goal()) throw GoalUnset();
  if (state.has_fact(*state.goal())) return GoalStatus::Proved;
  if (state.has_fact(state.goal()->complement())) return GoalStatus::Disproved;
  return GoalStatus::Open;
}

}  // namespace certguide::logic
