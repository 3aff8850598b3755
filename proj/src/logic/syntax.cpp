// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/logic/syntax.hpp"

#include <algorithm>

namespace certguide::logic {

bool Term::ground() const {
  if (kind == Kind::Variable) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.ground(); });
}

bool Literal::ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.ground(); });
}

Literal Literal::complement() const {
  Literal out = *this;
  out.negated = !negated;
  return out;
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Constant:
      return t.name;
    case Term::Kind::Variable:
      return "'" + t.name;
    case Term::Kind::Compound: {
      std::string s = "(" + t.name;
      for (const auto& a : t.args) s += " " + to_string(a);
      return s + ")";
    }
  }
  return t.name;
}

std::string to_string(const Literal& l) {
  std::string atom = "(" + l.predicate;
  for (const auto& a : l.args) atom += " " + to_string(a);
  atom += ")";
  return l.negated ? "(not " + atom + ")" : atom;
}

std::string to_string(const Rule& r) {
  std::string s;
  for (const auto& a : r.antecedents) s += to_string(a) + " -> ";
  return s + to_string(r.consequent);
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Variable) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

std::vector<std::string> variables(const Literal& l) {
  std::vector<std::string> out;
  for (const auto& a : l.args) collect_variables(a, out);
  return out;
}

std::vector<std::string> variables(const Rule& r) {
  std::vector<std::string> out;
  for (const auto& a : r.antecedents) {
    for (const auto& t : a.args) collect_variables(t, out);
  }
  for (const auto& t : r.consequent.args) collect_variables(t, out);
  return out;
}

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Object:
      return "object";
    case SymbolKind::Prop:
      return "prop";
    case SymbolKind::Relation:
      return "relation";
    case SymbolKind::ActionCtor:
      return "action";
    case SymbolKind::Deontic:
      return "deontic";
  }
  return "object";
}

void SymbolTable::declare(SymbolKind kind, const std::string& name, std::size_t arity) {
  if (kind == SymbolKind::Prop || kind == SymbolKind::Deontic) arity = 1;
  if (kind == SymbolKind::Relation) arity = 2;
  auto& names = table_[kind];
  if (auto it = names.find(name); it != names.end()) {
    if (it->second != arity) throw LogicError(to_string(kind) + " `" + name + "` redeclared with a different arity");
    return;
  }
  bool predicate = kind == SymbolKind::Prop || kind == SymbolKind::Relation || kind == SymbolKind::Deontic;
  if (predicate) {
    auto known = predicate_arity(name);
    if (known && *known != arity) {
      throw LogicError("predicate `" + name + "` already has arity " + std::to_string(*known));
    }
  }
  names.emplace(name, arity);
}

bool SymbolTable::has(SymbolKind kind, const std::string& name) const {
  auto it = table_.find(kind);
  return it != table_.end() && it->second.count(name) > 0;
}

std::optional<std::size_t> SymbolTable::predicate_arity(const std::string& name) const {
  for (SymbolKind k : {SymbolKind::Prop, SymbolKind::Relation, SymbolKind::Deontic}) {
    auto it = table_.find(k);
    if (it == table_.end()) continue;
    if (auto n = it->second.find(name); n != it->second.end()) return n->second;
  }
  return std::nullopt;
}

std::optional<std::size_t> SymbolTable::constructor_arity(const std::string& name) const {
  auto it = table_.find(SymbolKind::ActionCtor);
  if (it == table_.end()) return std::nullopt;
  if (auto n = it->second.find(name); n != it->second.end()) return n->second;
  return std::nullopt;
}

const std::map<std::string, std::size_t>& SymbolTable::names(SymbolKind kind) const {
  static const std::map<std::string, std::size_t> none;
  auto it = table_.find(kind);
  return it == table_.end() ? none : it->second;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  return head(s[0]) && std::all_of(s.begin() + 1, s.end(), tail);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable* symbols) : text_(text), symbols_(symbols) {}

  Statement statement() {
    std::vector<Literal> parts{literal()};
    skip_ws();
    while (consume("->")) {
      parts.push_back(literal());
      skip_ws();
    }
    if (pos_ != text_.size()) fail("unexpected trailing input");
    if (parts.size() == 1) return parts.front();
    Rule r;
    r.consequent = parts.back();
    parts.pop_back();
    r.antecedents = std::move(parts);
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at offset " + std::to_string(pos_) + " in `" + std::string(text_) + "`");
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool consume(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!consume(tok)) fail("expected `" + std::string(tok) + "`");
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    std::string id(text_.substr(start, pos_ - start));
    if (!is_identifier(id)) {
      pos_ = start;
      fail("expected an identifier");
    }
    return id;
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    if (text_[pos_] == '\'') {
      ++pos_;
      return Term::variable(identifier());
    }
    if (text_[pos_] == '(') {
      ++pos_;
      std::string ctor = identifier();
      if (ctor == "not") fail("`not` cannot appear inside a term");
      std::vector<Term> args;
      while (true) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ')') break;
        args.push_back(term());
      }
      expect(")");
      if (args.empty()) fail("constructor `" + ctor + "` needs arguments");
      if (symbols_) {
        auto n = symbols_->constructor_arity(ctor);
        if (n && *n != args.size()) {
          fail("constructor `" + ctor + "` takes " + std::to_string(*n) + " arguments, got " +
               std::to_string(args.size()));
        }
      }
      return Term::compound(std::move(ctor), std::move(args));
    }
    return Term::constant(identifier());
  }

  Literal atom() {
    expect("(");
    std::string pred = identifier();
    if (pred == "not") fail("misplaced negation");
    Literal l;
    l.predicate = pred;
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') break;
      if (pos_ >= text_.size()) fail("unbalanced parentheses");
      l.args.push_back(term());
    }
    expect(")");
    if (l.args.empty() || l.args.size() > 2) {
      fail("predicate `" + pred + "` needs 1 or 2 arguments, got " + std::to_string(l.args.size()));
    }
    if (symbols_) {
      auto n = symbols_->predicate_arity(pred);
      if (n && *n != l.args.size()) {
        fail("arity mismatch: `" + pred + "` takes " + std::to_string(*n) + " arguments, got " +
             std::to_string(l.args.size()));
      }
    }
    return l;
  }

  Literal literal() {
    skip_ws();
    std::size_t save = pos_;
    expect("(");
    skip_ws();
    if (text_.substr(pos_, 3) == "not" && (pos_ + 3 >= text_.size() || !is_identifier(text_.substr(pos_, 4)))) {
      pos_ += 3;
      Literal inner = atom();
      expect(")");
      inner.negated = true;
      return inner;
    }
    pos_ = save;
    return atom();
  }

  std::string_view text_;
  const SymbolTable* symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

Statement parse_sexpr(std::string_view text, const SymbolTable* symbols) { return Parser(text, symbols).statement(); }

Literal parse_literal(std::string_view text, const SymbolTable* symbols) {
  Statement s = parse_sexpr(text, symbols);
  if (auto* l = std::get_if<Literal>(&s)) return *l;
  throw SyntaxError("expected a literal, got a rule: `" + std::string(text) + "`");
}

Rule parse_rule(std::string_view text, const SymbolTable* symbols) {
  Statement s = parse_sexpr(text, symbols);
  if (auto* r = std::get_if<Rule>(&s)) return *r;
  return Rule{{}, std::get<Literal>(s)};
}

}  // namespace certguide::logic
