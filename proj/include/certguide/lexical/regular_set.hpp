// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bitset>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace certguide::lexical {

using ByteSet = std::bitset<256>;

namespace detail {
struct Node;
}  // namespace detail

/**
 * A regular language over bytes, represented as an immutable expression tree.
 *
 * Matching is incremental: `derivative(b)` yields the language of suffixes of
 * members that start with byte `b`. All constructors normalize their result
 * (flattening, identity/annihilator elimination, sorted deduplicated
 * alternations), so the empty language is always represented by the `Empty`
 * node and repeated derivatives stay bounded in size.
 */
class RegularSet {
 public:
  enum class Kind : std::uint8_t {
    Empty,
    Epsilon,
    Literal,
    Class,
    Concat,
    Alternation,
    Star,
    OneOf,
  };

  /// The empty language.
  RegularSet();

  static RegularSet empty();
  static RegularSet epsilon();
  static RegularSet literal(std::string_view bytes);
  static RegularSet byte(unsigned char b);
  static RegularSet byte_class(const ByteSet& bytes);
  static RegularSet range(unsigned char lo, unsigned char hi);
  /// Any byte not in `excluded`.
  static RegularSet any_except(std::string_view excluded);
  static RegularSet concat(std::vector<RegularSet> parts);
  static RegularSet alternation(std::vector<RegularSet> options);
  static RegularSet star(const RegularSet& inner);
  static RegularSet plus(const RegularSet& inner);
  static RegularSet optional(const RegularSet& inner);
  /// Finite alternation of exact byte strings.
  static RegularSet one_of(std::vector<std::string> strings);

  Kind kind() const;
  bool nullable() const;
  bool is_empty() const { return kind() == Kind::Empty; }
  RegularSet derivative(unsigned char b) const;
  RegularSet derivative(std::string_view bytes) const;

  /// Read-only structure access, mainly for tests and independent oracles.
  const std::string& literal_bytes() const;
  const ByteSet& class_bytes() const;
  const std::vector<RegularSet>& children() const;
  const std::vector<std::string>& strings() const;

  std::size_t hash() const;
  std::string debug_string() const;

  friend bool operator==(const RegularSet& a, const RegularSet& b);
  friend bool operator<(const RegularSet& a, const RegularSet& b);

 private:
  explicit RegularSet(std::shared_ptr<const detail::Node> node);

  std::shared_ptr<const detail::Node> node_;
};

enum class PrefixStatus { Match, ViablePrefix, Dead };

bool matches(const RegularSet& r, std::string_view s);
PrefixStatus prefix_status(const RegularSet& r, std::string_view s);

std::string to_string(PrefixStatus status);

}  // namespace certguide::lexical
