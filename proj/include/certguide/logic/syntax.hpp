// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace certguide::logic {

class LogicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed surface syntax, including arity mismatches.
class SyntaxError : public LogicError {
 public:
  using LogicError::LogicError;
};

struct Term {
  enum class Kind { Constant, Variable, Compound };

  Kind kind = Kind::Constant;
  std::string name;  // constant, variable (without the quote) or constructor
  std::vector<Term> args;

  static Term constant(std::string name) { return {Kind::Constant, std::move(name), {}}; }
  static Term variable(std::string name) { return {Kind::Variable, std::move(name), {}}; }
  static Term compound(std::string ctor, std::vector<Term> args) { return {Kind::Compound, std::move(ctor), std::move(args)}; }

  bool ground() const;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Literal {
  bool negated = false;
  std::string predicate;
  std::vector<Term> args;

  bool ground() const;
  /// The same atom with negation toggled.
  Literal complement() const;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Antecedents imply the consequent; an empty antecedent list is a fact.
struct Rule {
  std::vector<Literal> antecedents;
  Literal consequent;

  bool is_fact() const { return antecedents.empty(); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

std::string to_string(const Term& t);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);

/// Lexicographic on canonical printing.
struct CanonicalLess {
  bool operator()(const Literal& a, const Literal& b) const { return to_string(a) < to_string(b); }
};

void collect_variables(const Term& t, std::vector<std::string>& out);
std::vector<std::string> variables(const Literal& l);
std::vector<std::string> variables(const Rule& r);

enum class SymbolKind { Object, Prop, Relation, ActionCtor, Deontic };

std::string to_string(SymbolKind k);

/// Declared names. Names are unique within a kind; predicates additionally
/// carry their arity (Prop 1, Relation 2, Deontic 1), constructors theirs.
class SymbolTable {
 public:
  /// Throws LogicError when the name already exists under the same kind with
  /// a different arity, or as a predicate of another arity.
  void declare(SymbolKind kind, const std::string& name, std::size_t arity = 0);
  bool has(SymbolKind kind, const std::string& name) const;

  std::optional<std::size_t> predicate_arity(const std::string& name) const;
  std::optional<std::size_t> constructor_arity(const std::string& name) const;
  const std::map<std::string, std::size_t>& names(SymbolKind kind) const;
  bool is_predicate(const std::string& name) const { return predicate_arity(name).has_value(); }

 private:
  std::map<SymbolKind, std::map<std::string, std::size_t>> table_;
};

using Statement = std::variant<Literal, Rule>;

/**
 * Reads a literal "(p a 'x)", "(not (p a))" or a rule "A -> B -> C".
 * Arguments are constants, quoted variables or constructor terms
 * "(ctor a b)". `not` is reserved. With `symbols`, declared predicates and
 * constructors are checked for arity; undeclared names pass.
 */
Statement parse_sexpr(std::string_view text, const SymbolTable* symbols = nullptr);
Literal parse_literal(std::string_view text, const SymbolTable* symbols = nullptr);
/// A literal is read as a rule without antecedents.
Rule parse_rule(std::string_view text, const SymbolTable* symbols = nullptr);

bool is_identifier(std::string_view s);

}  // namespace certguide::logic
