// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/logicguide/grammar.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace certguide::logicguide {

namespace {

using R = RegularSet;
using lexical::ByteSet;

R tail_char() { return R::alternation({R::range('a', 'z'), R::range('0', '9'), R::byte('_')}); }

ByteSet chars(std::string_view extra, bool digits) {
  ByteSet s;
  for (int c = 'a'; c <= 'z'; ++c) s.set(c);
  if (digits) {
    for (int c = '0'; c <= '9'; ++c) s.set(c);
  }
  s.set('_');
  for (char c : extra) s.reset(static_cast<unsigned char>(c));
  return s;
}

// Identifiers except the reserved word `not`.
R name_grammar() {
  static const R g = [] {
    R rest = R::star(tail_char());
    auto starting = [&](std::string_view excluded) { return R::concat({R::byte_class(chars(excluded, true)), rest}); };
    R after_no = R::optional(R::alternation({starting("t"), R::concat({R::byte('t'), R::plus(tail_char())})}));
    R after_n = R::optional(R::alternation({starting("o"), R::concat({R::byte('o'), after_no})}));
    return R::alternation({R::concat({R::byte_class(chars("n", false)), rest}), R::concat({R::byte('n'), after_n})});
  }();
  return g;
}

R names_or_any(const std::map<std::string, std::size_t>& names, const logic::SymbolTable* symbols) {
  if (!symbols) return name_grammar();
  std::vector<std::string> v;
  for (const auto& [n, arity] : names) {
    if (n != "not") v.push_back(n);
  }
  return R::one_of(std::move(v));
}

R atomic_term(const logic::SymbolTable* symbols, bool allow_variables) {
  std::vector<R> options{names_or_any(symbols ? symbols->names(logic::SymbolKind::Object) : std::map<std::string, std::size_t>{},
                                      symbols)};
  if (allow_variables) options.push_back(R::concat({R::byte('\''), identifier_grammar()}));
  return R::alternation(std::move(options));
}

R compound_term(const logic::SymbolTable* symbols, const R& atomic) {
  R one = R::concat({R::byte(' '), atomic});
  if (!symbols) {
    return R::concat({R::byte('('), name_grammar(), one, R::optional(one), R::byte(')')});
  }
  std::vector<R> options;
  for (const auto& [ctor, arity] : symbols->names(logic::SymbolKind::ActionCtor)) {
    if (arity == 0 || arity > 2) continue;
    std::vector<R> parts{R::literal("(" + ctor)};
    for (std::size_t i = 0; i < arity; ++i) parts.push_back(one);
    parts.push_back(R::byte(')'));
    options.push_back(R::concat(std::move(parts)));
  }
  return R::alternation(std::move(options));
}

R atom_grammar(const logic::SymbolTable* symbols, bool allow_variables) {
  R atomic = atomic_term(symbols, allow_variables);
  R term = R::alternation({atomic, compound_term(symbols, atomic)});
  R arg = R::concat({R::byte(' '), term});
  if (!symbols) {
    return R::concat({R::byte('('), name_grammar(), arg, R::optional(arg), R::byte(')')});
  }
  std::vector<R> options;
  std::vector<std::string> unary, binary;
  for (auto kind : {logic::SymbolKind::Prop, logic::SymbolKind::Deontic}) {
    for (const auto& [n, a] : symbols->names(kind)) {
      if (n != "not") unary.push_back(n);
    }
  }
  for (const auto& [n, a] : symbols->names(logic::SymbolKind::Relation)) {
    if (n != "not") binary.push_back(n);
  }
  if (!unary.empty()) options.push_back(R::concat({R::byte('('), R::one_of(unary), arg, R::byte(')')}));
  if (!binary.empty()) options.push_back(R::concat({R::byte('('), R::one_of(binary), arg, arg, R::byte(')')}));
  return R::alternation(std::move(options));
}

}  // namespace

RegularSet identifier_grammar() {
  static const R g = R::concat({R::alternation({R::range('a', 'z'), R::byte('_')}), R::star(tail_char())});
  return g;
}

RegularSet literal_grammar(const logic::SymbolTable* symbols, bool allow_variables) {
  R atom = atom_grammar(symbols, allow_variables);
  return R::alternation({atom, R::concat({R::literal("(not "), atom, R::byte(')')})});
}

RegularSet rule_grammar(const logic::SymbolTable* symbols) {
  R lit = literal_grammar(symbols, true);
  return R::concat({lit, R::star(R::concat({R::literal(" -> "), lit}))});
}

}  // namespace certguide::logicguide
