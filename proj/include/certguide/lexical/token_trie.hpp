// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certguide/lexical/regular_set.hpp"
#include "certguide/lexical/vocabulary.hpp"

namespace certguide::lexical {

/// Prefix tree over the byte strings of a Vocabulary.
class TokenTrie {
 public:
  struct Node {
    std::vector<std::pair<unsigned char, std::uint32_t>> children;  // sorted by byte
    std::optional<TokenId> token;
  };

  explicit TokenTrie(const Vocabulary& vocab);

  static constexpr std::uint32_t root() { return 0; }
  const Node& node(std::uint32_t index) const { return nodes_[index]; }
  std::optional<std::uint32_t> child(std::uint32_t index, unsigned char b) const;
  std::size_t node_count() const { return nodes_.size(); }

  /// Every (bytes, id) pair stored in the trie, in byte order.
  std::vector<std::pair<std::string, TokenId>> flatten() const;

  /**
   * Depth-first walk with a caller-supplied state. `step(state, byte)` returns
   * the successor state or nullopt to prune the subtree; `visit(id, state)` is
   * called for every token whose full byte string survives.
   */
  template <typename State, typename Step, typename Visit>
  void walk(const State& start, Step&& step, Visit&& visit) const {
    walk_from(root(), start, step, visit);
  }

  /// Greedy longest-match segmentation. Bytes with no matching token throw.
  std::vector<TokenId> tokenize_greedy(std::string_view bytes) const;

 private:
  template <typename State, typename Step, typename Visit>
  void walk_from(std::uint32_t index, const State& state, Step& step, Visit& visit) const {
    for (const auto& [b, next] : nodes_[index].children) {
      std::optional<State> s = step(state, b);
      if (!s) continue;
      if (nodes_[next].token) visit(*nodes_[next].token, *s);
      walk_from(next, *s, step, visit);
    }
  }

  std::vector<Node> nodes_;
};

/// Position inside a token at which the region's content becomes a member.
struct MatchPoint {
  TokenId token;
  std::size_t offset;
};

struct RegionViability {
  /// Tokens whose every byte keeps `consumed + bytes` a viable prefix or match.
  std::vector<TokenId> viable;
  /// True when `consumed` itself is already a member (match at offset 0).
  bool matched_before_token = false;
  /// For each token that passes through a member, the first offset >= 1 at
  /// which it does. The caller decides whether the rest of the token may
  /// cross into the next region.
  std::vector<MatchPoint> matches;
};

RegionViability viable_tokens(const RegularSet& r, std::string_view consumed, const TokenTrie& trie);

}  // namespace certguide::lexical
