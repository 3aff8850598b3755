// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/csd/cursor.hpp"
#include "certguide/csd/engine.hpp"
#include "certguide/lexical/token_trie.hpp"

namespace certguide::csd {

enum class Verdict { Complete, Violation };

std::string to_string(Verdict v);

struct ValidationReport {
  std::size_t valid_prefix_length = 0;
  Verdict verdict = Verdict::Complete;
  std::optional<std::size_t> violating_region;
  /// Present on Violation when a trie was supplied.
  std::optional<std::vector<lexical::TokenId>> valid_next_mask;
};

/**
 * Complete iff every constrained region's content is in its language and the
 * text ends outside any block. Otherwise reports the longest prefix after
 * which every region is still viable; text ending inside a block is a
 * Violation whose valid prefix is the whole text.
 */
ValidationReport validate(const CompletionEngine& engine, std::string_view text,
                          const lexical::TokenTrie* trie = nullptr);

/// True iff `token` can follow `prefix`, crossing region boundaries byte by
/// byte where needed. A `prefix` that is itself invalid rejects everything.
bool split_token_resolution(const CompletionEngine& engine, std::string_view prefix, std::string_view token);

}  // namespace certguide::csd
