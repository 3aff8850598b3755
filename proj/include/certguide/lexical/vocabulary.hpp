// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace certguide::lexical {

using TokenId = std::uint32_t;

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Indexed set of non-empty byte strings. Identifiers are dense and every byte
 * string appears at most once; construction rejects duplicates rather than
 * collapsing them, so id -> bytes -> id always round-trips.
 */
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  /// The 256 single-byte tokens, id == byte value.
  static Vocabulary byte_level();
  /// `byte_level()` extended with `extra` multi-byte tokens (duplicates of
  /// existing entries are skipped).
  static Vocabulary byte_level_with(const std::vector<std::string>& extra);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<TokenId> find(std::string_view bytes) const;

  std::string decode(std::span<const TokenId> ids) const;

  /// Line-delimited records: {"id": <decimal>, "bytes": "<hex>"}.
  static Vocabulary load(std::istream& in);
  void save(std::ostream& out) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

std::string hex_encode(std::string_view bytes);
std::string hex_decode(std::string_view hex);

}  // namespace certguide::lexical
