// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "certguide/csd/engine.hpp"
#include "certguide/lexical/vocabulary.hpp"

namespace certguide::csd {

struct Block {
  std::size_t region = 0;
  std::string content;
  bool certified = false;

  friend bool operator==(const Block&, const Block&) = default;
};

/// One pass of the sampling loop.
struct Round {
  std::size_t valid_prefix_length = 0;
  /// Length of the text kept going into the next round (after any forced token).
  std::size_t committed_length = 0;
  std::optional<lexical::TokenId> forced;
};

struct Transcript {
  std::string full_text;
  std::vector<lexical::TokenId> tokens;
  std::vector<Block> blocks;
  std::size_t violation_count = 0;
  bool aborted = false;
  /// Model text cut off at each violation, kept for diagnostics.
  std::vector<std::string> discarded;
  std::vector<Round> rounds;

  /// Contents of the blocks, in order.
  std::vector<std::string> block_contents() const;
};

/// Blocks of a text that `engine` accepts, all marked certified. Throws
/// std::invalid_argument when the text does not validate.
std::vector<Block> certified_blocks(const CompletionEngine& engine, std::string_view text);

/// Blocks found by delimiter scanning alone, none certified. A block left
/// open at the end of the text is included.
std::vector<Block> delimited_blocks(std::string_view text, std::string_view open, std::string_view close);

class TranscriptFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Record fields: text, blocks [{region, content, certified}], violations,
/// aborted, discarded. Byte strings that are not UTF-8 are stored under a
/// `<field>_hex` key instead.
nlohmann::json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

void put_bytes(nlohmann::json& j, const std::string& key, std::string_view bytes);
std::string get_bytes(const nlohmann::json& j, const std::string& key);

}  // namespace certguide::csd
