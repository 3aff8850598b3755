// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/lexical/regular_set.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace certguide::lexical {

namespace detail {

struct Node {
  RegularSet::Kind kind = RegularSet::Kind::Empty;
  std::string literal;
  ByteSet bytes;
  std::vector<RegularSet> children;
  std::vector<std::string> strings;
  bool nullable = false;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

using Kind = RegularSet::Kind;
using detail::Node;

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t compute_hash(const Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case Kind::Literal:
      h = mix(h, std::hash<std::string>{}(n.literal));
      break;
    case Kind::Class:
      h = mix(h, std::hash<ByteSet>{}(n.bytes));
      break;
    case Kind::Concat:
    case Kind::Alternation:
    case Kind::Star:
      for (const auto& c : n.children) h = mix(h, c.hash());
      break;
    case Kind::OneOf:
      for (const auto& s : n.strings) h = mix(h, std::hash<std::string>{}(s));
      break;
    default:
      break;
  }
  return h;
}

int compare_bytesets(const ByteSet& a, const ByteSet& b) {
  for (std::size_t i = 0; i < 256; ++i) {
    if (a[i] != b[i]) return a[i] ? -1 : 1;
  }
  return 0;
}

int compare_sets(const RegularSet& a, const RegularSet& b) {
  if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Empty:
    case Kind::Epsilon:
      return 0;
    case Kind::Literal:
      return a.literal_bytes().compare(b.literal_bytes());
    case Kind::Class:
      return compare_bytesets(a.class_bytes(), b.class_bytes());
    case Kind::OneOf: {
      const auto& x = a.strings();
      const auto& y = b.strings();
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (int c = x[i].compare(y[i]); c != 0) return c;
      }
      return 0;
    }
    default: {
      const auto& x = a.children();
      const auto& y = b.children();
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (int c = compare_sets(x[i], y[i]); c != 0) return c;
      }
      return 0;
    }
  }
}

}  // namespace

RegularSet::RegularSet(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

RegularSet::RegularSet() : RegularSet(empty()) {}

namespace {

std::shared_ptr<const Node> finish(Node n) {
  n.hash = compute_hash(n);
  return std::make_shared<const Node>(std::move(n));
}

const std::shared_ptr<const Node>& empty_node() {
  static const auto node = [] {
    Node n;
    n.kind = Kind::Empty;
    return finish(std::move(n));
  }();
  return node;
}

const std::shared_ptr<const Node>& epsilon_node() {
  static const auto node = [] {
    Node n;
    n.kind = Kind::Epsilon;
    n.nullable = true;
    return finish(std::move(n));
  }();
  return node;
}

}  // namespace

RegularSet RegularSet::empty() { return RegularSet(empty_node()); }

RegularSet RegularSet::epsilon() { return RegularSet(epsilon_node()); }

RegularSet RegularSet::literal(std::string_view bytes) {
  if (bytes.empty()) return epsilon();
  Node n;
  n.kind = Kind::Literal;
  n.literal = std::string(bytes);
  return RegularSet(finish(std::move(n)));
}

RegularSet RegularSet::byte(unsigned char b) {
  return literal(std::string(1, static_cast<char>(b)));
}

RegularSet RegularSet::byte_class(const ByteSet& bytes) {
  if (bytes.none()) return empty();
  Node n;
  n.kind = Kind::Class;
  n.bytes = bytes;
  return RegularSet(finish(std::move(n)));
}

RegularSet RegularSet::range(unsigned char lo, unsigned char hi) {
  ByteSet set;
  for (unsigned b = lo; b <= hi; ++b) set.set(b);
  return byte_class(set);
}

RegularSet RegularSet::any_except(std::string_view excluded) {
  ByteSet set;
  set.set();
  for (char c : excluded) set.reset(static_cast<unsigned char>(c));
  return byte_class(set);
}

RegularSet RegularSet::concat(std::vector<RegularSet> parts) {
  std::vector<RegularSet> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    switch (p.kind()) {
      case Kind::Empty:
        return empty();
      case Kind::Epsilon:
        break;
      case Kind::Concat:
        for (const auto& c : p.children()) flat.push_back(c);
        break;
      default:
        flat.push_back(std::move(p));
    }
  }
  // Adjacent literals fuse into one.
  std::vector<RegularSet> fused;
  fused.reserve(flat.size());
  for (auto& p : flat) {
    if (!fused.empty() && fused.back().kind() == Kind::Literal && p.kind() == Kind::Literal) {
      fused.back() = literal(fused.back().literal_bytes() + p.literal_bytes());
    } else {
      fused.push_back(std::move(p));
    }
  }
  if (fused.empty()) return epsilon();
  if (fused.size() == 1) return fused.front();
  Node n;
  n.kind = Kind::Concat;
  n.nullable = std::all_of(fused.begin(), fused.end(), [](const RegularSet& r) { return r.nullable(); });
  n.children = std::move(fused);
  return RegularSet(finish(std::move(n)));
}

RegularSet RegularSet::alternation(std::vector<RegularSet> options) {
  std::vector<RegularSet> flat;
  std::vector<std::string> finite;
  bool has_finite = false;
  for (auto& o : options) {
    switch (o.kind()) {
      case Kind::Empty:
        break;
      case Kind::Alternation:
        for (const auto& c : o.children()) {
          if (c.kind() == Kind::OneOf) {
            finite.insert(finite.end(), c.strings().begin(), c.strings().end());
            has_finite = true;
          } else if (c.kind() == Kind::Literal) {
            finite.push_back(c.literal_bytes());
            has_finite = true;
          } else if (c.kind() == Kind::Epsilon) {
            finite.emplace_back();
            has_finite = true;
          } else {
            flat.push_back(c);
          }
        }
        break;
      case Kind::Epsilon:
        finite.emplace_back();
        has_finite = true;
        break;
      case Kind::Literal:
        finite.push_back(o.literal_bytes());
        has_finite = true;
        break;
      case Kind::OneOf:
        finite.insert(finite.end(), o.strings().begin(), o.strings().end());
        has_finite = true;
        break;
      default:
        flat.push_back(std::move(o));
    }
  }
  if (has_finite) flat.push_back(one_of(std::move(finite)));
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  std::erase_if(flat, [](const RegularSet& r) { return r.is_empty(); });
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat.front();
  Node n;
  n.kind = Kind::Alternation;
  n.nullable = std::any_of(flat.begin(), flat.end(), [](const RegularSet& r) { return r.nullable(); });
  n.children = std::move(flat);
  return RegularSet(finish(std::move(n)));
}

RegularSet RegularSet::star(const RegularSet& inner) {
  switch (inner.kind()) {
    case Kind::Empty:
    case Kind::Epsilon:
      return epsilon();
    case Kind::Star:
      return inner;
    default:
      break;
  }
  Node n;
  n.kind = Kind::Star;
  n.nullable = true;
  n.children = {inner};
  return RegularSet(finish(std::move(n)));
}

RegularSet RegularSet::plus(const RegularSet& inner) { return concat({inner, star(inner)}); }

RegularSet RegularSet::optional(const RegularSet& inner) { return alternation({epsilon(), inner}); }

RegularSet RegularSet::one_of(std::vector<std::string> strings) {
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  if (strings.empty()) return empty();
  if (strings.size() == 1) return literal(strings.front());
  Node n;
  n.kind = Kind::OneOf;
  n.nullable = strings.front().empty();
  n.strings = std::move(strings);
  return RegularSet(finish(std::move(n)));
}

RegularSet::Kind RegularSet::kind() const { return node_->kind; }

bool RegularSet::nullable() const { return node_->nullable; }

const std::string& RegularSet::literal_bytes() const { return node_->literal; }

const ByteSet& RegularSet::class_bytes() const { return node_->bytes; }

const std::vector<RegularSet>& RegularSet::children() const { return node_->children; }

const std::vector<std::string>& RegularSet::strings() const { return node_->strings; }

std::size_t RegularSet::hash() const { return node_->hash; }

RegularSet RegularSet::derivative(unsigned char b) const {
  switch (kind()) {
    case Kind::Empty:
    case Kind::Epsilon:
      return empty();
    case Kind::Literal: {
      const auto& s = literal_bytes();
      if (static_cast<unsigned char>(s.front()) != b) return empty();
      return literal(std::string_view(s).substr(1));
    }
    case Kind::Class:
      return class_bytes().test(b) ? epsilon() : empty();
    case Kind::Concat: {
      const auto& parts = children();
      std::vector<RegularSet> rest(parts.begin() + 1, parts.end());
      RegularSet tail = concat(rest);
      RegularSet first = concat({parts.front().derivative(b), tail});
      if (!parts.front().nullable()) return first;
      return alternation({first, tail.derivative(b)});
    }
    case Kind::Alternation: {
      std::vector<RegularSet> ds;
      ds.reserve(children().size());
      for (const auto& c : children()) ds.push_back(c.derivative(b));
      return alternation(std::move(ds));
    }
    case Kind::Star:
      return concat({children().front().derivative(b), *this});
    case Kind::OneOf: {
      const auto& all = strings();
      const char key = static_cast<char>(b);
      auto first = std::lower_bound(all.begin(), all.end(), std::string(1, key));
      std::vector<std::string> rest;
      for (auto it = first; it != all.end() && !it->empty() && (*it)[0] == key; ++it) {
        rest.push_back(it->substr(1));
      }
      return one_of(std::move(rest));
    }
  }
  return empty();
}

RegularSet RegularSet::derivative(std::string_view bytes) const {
  RegularSet r = *this;
  for (char c : bytes) {
    if (r.is_empty()) break;
    r = r.derivative(static_cast<unsigned char>(c));
  }
  return r;
}

namespace {

void escape_into(std::ostringstream& out, std::string_view s) {
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u >= 0x7f || c == '"' || c == '\\') {
      static const char* hex = "0123456789abcdef";
      out << "\\x" << hex[u >> 4] << hex[u & 15];
    } else {
      out << c;
    }
  }
}

void render(std::ostringstream& out, const RegularSet& r) {
  switch (r.kind()) {
    case Kind::Empty:
      out << "∅";
      break;
    case Kind::Epsilon:
      out << "ε";
      break;
    case Kind::Literal:
      out << '"';
      escape_into(out, r.literal_bytes());
      out << '"';
      break;
    case Kind::Class:
      out << "[" << r.class_bytes().count() << " bytes]";
      break;
    case Kind::Concat:
    case Kind::Alternation: {
      out << '(';
      const char* sep = r.kind() == Kind::Concat ? " " : " | ";
      for (std::size_t i = 0; i < r.children().size(); ++i) {
        if (i) out << sep;
        render(out, r.children()[i]);
      }
      out << ')';
      break;
    }
    case Kind::Star:
      render(out, r.children().front());
      out << '*';
      break;
    case Kind::OneOf:
      out << '{';
      for (std::size_t i = 0; i < r.strings().size(); ++i) {
        if (i) out << ", ";
        out << '"';
        escape_into(out, r.strings()[i]);
        out << '"';
      }
      out << '}';
      break;
  }
}

}  // namespace

std::string RegularSet::debug_string() const {
  std::ostringstream out;
  render(out, *this);
  return out.str();
}

bool operator==(const RegularSet& a, const RegularSet& b) {
  return a.node_ == b.node_ || compare_sets(a, b) == 0;
}

bool operator<(const RegularSet& a, const RegularSet& b) { return compare_sets(a, b) < 0; }

bool matches(const RegularSet& r, std::string_view s) { return r.derivative(s).nullable(); }

PrefixStatus prefix_status(const RegularSet& r, std::string_view s) {
  RegularSet d = r.derivative(s);
  if (d.nullable()) return PrefixStatus::Match;
  if (d.is_empty()) return PrefixStatus::Dead;
  return PrefixStatus::ViablePrefix;
}

std::string to_string(PrefixStatus status) {
  switch (status) {
    case PrefixStatus::Match:
      return "Match";
    case PrefixStatus::ViablePrefix:
      return "ViablePrefix";
    case PrefixStatus::Dead:
      return "Dead";
  }
  return "?";
}

}  // namespace certguide::lexical
