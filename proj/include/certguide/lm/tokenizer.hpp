// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/lexical/token_trie.hpp"
#include "certguide/lexical/vocabulary.hpp"

namespace certguide::lm {

using lexical::TokenId;

/// Vocabulary plus its trie, shared read-only between model instances.
class Tokenizer {
 public:
  explicit Tokenizer(lexical::Vocabulary vocab) : vocab_(std::move(vocab)), trie_(vocab_) {}

  const lexical::Vocabulary& vocabulary() const { return vocab_; }
  const lexical::TokenTrie& trie() const { return trie_; }

  std::vector<TokenId> greedy(std::string_view bytes) const { return trie_.tokenize_greedy(bytes); }

  /// A uniformly chosen token at each position among those that still allow
  /// the rest of `bytes` to be segmented. Throws VocabularyError when no
  /// segmentation exists.
  std::vector<TokenId> random_segmentation(std::string_view bytes, std::mt19937_64& rng) const;

  std::size_t byte_length(std::span<const TokenId> ids) const;
  std::string decode(std::span<const TokenId> ids) const { return vocab_.decode(ids); }

 private:
  lexical::Vocabulary vocab_;
  lexical::TokenTrie trie_;
};

/// Byte-level vocabulary plus a few multi-byte tokens common in guided
/// transcripts, so segmentations regularly straddle delimiters.
lexical::Vocabulary default_vocabulary();

std::shared_ptr<const Tokenizer> make_tokenizer(lexical::Vocabulary vocab);

}  // namespace certguide::lm
