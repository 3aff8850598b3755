// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/lexical/vocabulary.hpp"

#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace certguide::lexical {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    if (tokens_[id].empty()) {
      throw VocabularyError("token " + std::to_string(id) + " is empty");
    }
    auto [it, inserted] = index_.emplace(tokens_[id], id);
    if (!inserted) {
      throw VocabularyError("tokens " + std::to_string(it->second) + " and " + std::to_string(id) +
                            " share the byte string 0x" + hex_encode(tokens_[id]));
    }
  }
}

Vocabulary Vocabulary::byte_level() { return byte_level_with({}); }

Vocabulary Vocabulary::byte_level_with(const std::vector<std::string>& extra) {
  std::vector<std::string> tokens;
  tokens.reserve(256 + extra.size());
  for (int b = 0; b < 256; ++b) tokens.emplace_back(1, static_cast<char>(b));
  std::unordered_map<std::string, bool> seen;
  for (const auto& t : tokens) seen[t] = true;
  for (const auto& t : extra) {
    if (t.empty() || seen.count(t)) continue;
    seen[t] = true;
    tokens.push_back(t);
  }
  return Vocabulary(std::move(tokens));
}

std::optional<TokenId> Vocabulary::find(std::string_view bytes) const {
  auto it = index_.find(std::string(bytes));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) out += token(id);
  return out;
}

Vocabulary Vocabulary::load(std::istream& in) {
  std::map<TokenId, std::string> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "vocabulary line " + std::to_string(line_no) + ": ";
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw VocabularyError(where + e.what());
    }
    if (!record.contains("id") || !record["id"].is_number_unsigned()) {
      throw VocabularyError(where + "missing or non-numeric `id`");
    }
    if (!record.contains("bytes") || !record["bytes"].is_string()) {
      throw VocabularyError(where + "missing `bytes`");
    }
    auto id = record["id"].get<TokenId>();
    std::string bytes;
    try {
      bytes = hex_decode(record["bytes"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw VocabularyError(where + e.what());
    }
    if (!by_id.emplace(id, std::move(bytes)).second) {
      throw VocabularyError(where + "duplicate id " + std::to_string(id));
    }
  }
  std::vector<std::string> tokens;
  tokens.reserve(by_id.size());
  for (const auto& [id, bytes] : by_id) {
    if (id != tokens.size()) {
      throw VocabularyError("vocabulary ids are not dense: missing id " + std::to_string(tokens.size()));
    }
    tokens.push_back(bytes);
  }
  return Vocabulary(std::move(tokens));
}

void Vocabulary::save(std::ostream& out) const {
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    nlohmann::json record{{"id", id}, {"bytes", hex_encode(tokens_[id])}};
    out << record.dump() << '\n';
  }
}

std::string hex_encode(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    auto u = static_cast<unsigned char>(c);
    out += digits[u >> 4];
    out += digits[u & 15];
  }
  return out;
}

std::string hex_decode(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
    out += static_cast<char>((hi << 4) | lo);
  }
  return out;
}

}  // namespace certguide::lexical
