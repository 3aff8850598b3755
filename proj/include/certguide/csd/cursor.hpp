// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/csd/engine.hpp"
#include "certguide/lexical/regular_set.hpp"
#include "certguide/lexical/token_trie.hpp"

namespace certguide::csd {

struct Segment {
  std::size_t region = 0;
  Region::Mode mode = Region::Mode::Unconstrained;
  std::string content;
  std::size_t begin = 0;  // offset of the content in the text
};

/**
 * Byte-at-a-time replay of a transcript through an engine.
 *
 * A constrained region's bytes so far are viable when either the residual
 * language is non-empty, or they split as c + p with c a member and p a
 * non-empty proper prefix of the terminator. `feed` is transactional: a byte
 * that would make the text unviable is rejected and leaves the cursor as it
 * was.
 */
class RegionCursor {
 public:
  explicit RegionCursor(const CompletionEngine& engine, bool record_segments = false);

  bool feed(unsigned char b);
  /// Number of bytes accepted before the first rejection.
  std::size_t feed(std::string_view bytes);

  std::size_t offset() const { return offset_; }
  std::size_t region_index() const { return index_; }
  const Region& region() const { return region_; }
  bool in_constrained() const { return region_.constrained(); }
  const History& history() const { return *history_; }

  /// Completed regions, when recording was requested.
  const std::vector<Segment>& segments() const { return segments_; }
  /// The current, unfinished region's bytes (recorded or constrained only).
  const std::string& span() const { return span_; }

 private:
  void enter(std::size_t index);
  bool pending_terminator_ok() const;

  const CompletionEngine* engine_;
  bool record_;
  std::size_t index_ = 0;
  std::size_t offset_ = 0;
  std::size_t span_begin_ = 0;
  Region region_;
  std::shared_ptr<const History> history_;

  std::string span_;           // kept for constrained regions or when recording
  std::string tail_;           // last |terminator| bytes of the region
  lexical::RegularSet residual_;
  std::vector<char> nullable_;  // nullable_[i]: first i bytes of span_ are a member
  std::vector<Segment> segments_;
};

/// Tokens whose every byte the cursor accepts, in id order.
std::vector<lexical::TokenId> valid_next_tokens(const RegionCursor& cursor, const lexical::TokenTrie& trie);

}  // namespace certguide::csd
