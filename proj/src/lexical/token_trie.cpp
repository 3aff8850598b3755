// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/lexical/token_trie.hpp"

#include <algorithm>

namespace certguide::lexical {

TokenTrie::TokenTrie(const Vocabulary& vocab) {
  nodes_.emplace_back();
  for (TokenId id = 0; id < vocab.size(); ++id) {
    std::uint32_t at = root();
    for (char c : vocab.token(id)) {
      auto b = static_cast<unsigned char>(c);
      auto& kids = nodes_[at].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), b,
                                 [](const auto& edge, unsigned char key) { return edge.first < key; });
      if (it != kids.end() && it->first == b) {
        at = it->second;
      } else {
        auto next = static_cast<std::uint32_t>(nodes_.size());
        kids.insert(it, {b, next});
        nodes_.emplace_back();
        at = next;
      }
    }
    nodes_[at].token = id;
  }
}

std::optional<std::uint32_t> TokenTrie::child(std::uint32_t index, unsigned char b) const {
  const auto& kids = nodes_[index].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), b,
                             [](const auto& edge, unsigned char key) { return edge.first < key; });
  if (it == kids.end() || it->first != b) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, TokenId>> TokenTrie::flatten() const {
  std::vector<std::pair<std::string, TokenId>> out;
  walk(
      std::string{},
      [](const std::string& prefix, unsigned char b) -> std::optional<std::string> {
        return prefix + static_cast<char>(b);
      },
      [&](TokenId id, const std::string& bytes) { out.emplace_back(bytes, id); });
  return out;
}

std::vector<TokenId> TokenTrie::tokenize_greedy(std::string_view bytes) const {
  std::vector<TokenId> out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::uint32_t at = root();
    std::optional<TokenId> best;
    std::size_t best_len = 0;
    for (std::size_t i = pos; i < bytes.size(); ++i) {
      auto next = child(at, static_cast<unsigned char>(bytes[i]));
      if (!next) break;
      at = *next;
      if (nodes_[at].token) {
        best = nodes_[at].token;
        best_len = i - pos + 1;
      }
    }
    if (!best) {
      throw VocabularyError("no token covers byte offset " + std::to_string(pos));
    }
    out.push_back(*best);
    pos += best_len;
  }
  return out;
}

namespace {

struct WalkState {
  RegularSet residual;
  std::size_t depth = 0;
  std::optional<std::size_t> first_match;
};

void collect(const TokenTrie& trie, std::uint32_t index, const WalkState& state, RegionViability& out) {
  for (const auto& [b, next] : trie.node(index).children) {
    WalkState s;
    s.depth = state.depth + 1;
    s.first_match = state.first_match;
    s.residual = state.residual.is_empty() ? state.residual : state.residual.derivative(b);
    if (s.residual.is_empty() && !s.first_match) continue;
    if (!s.first_match && s.residual.nullable()) s.first_match = s.depth;
    if (auto id = trie.node(next).token) {
      if (!s.residual.is_empty()) out.viable.push_back(*id);
      if (s.first_match) out.matches.push_back({*id, *s.first_match});
    }
    collect(trie, next, s, out);
  }
}

}  // namespace

RegionViability viable_tokens(const RegularSet& r, std::string_view consumed, const TokenTrie& trie) {
  RegionViability out;
  WalkState start;
  start.residual = r.derivative(consumed);
  out.matched_before_token = start.residual.nullable();
  collect(trie, TokenTrie::root(), start, out);
  std::sort(out.viable.begin(), out.viable.end());
  std::sort(out.matches.begin(), out.matches.end(),
            [](const MatchPoint& a, const MatchPoint& b) { return a.token < b.token; });
  return out;
}

}  // namespace certguide::lexical
