// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/csd/validate.hpp"

namespace certguide::csd {

std::string to_string(Verdict v) { return v == Verdict::Complete ? "complete" : "violation"; }

ValidationReport validate(const CompletionEngine& engine, std::string_view text, const lexical::TokenTrie* trie) {
  RegionCursor cursor(engine);
  ValidationReport report;
  report.valid_prefix_length = cursor.feed(text);
  if (report.valid_prefix_length == text.size() && !cursor.in_constrained()) return report;

  report.verdict = Verdict::Violation;
  report.violating_region = cursor.region_index();
  if (trie) report.valid_next_mask = valid_next_tokens(cursor, *trie);
  return report;
}

bool split_token_resolution(const CompletionEngine& engine, std::string_view prefix, std::string_view token) {
  RegionCursor cursor(engine);
  if (cursor.feed(prefix) != prefix.size()) return false;
  return cursor.feed(token) == token.size();
}

}  // namespace certguide::csd
