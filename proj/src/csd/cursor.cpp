// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/csd/cursor.hpp"

#include <algorithm>

namespace certguide::csd {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

RegionCursor::RegionCursor(const CompletionEngine& engine, bool record_segments)
    : engine_(&engine), record_(record_segments), history_(std::make_shared<const History>()) {
  enter(0);
}

void RegionCursor::enter(std::size_t index) {
  index_ = index;
  region_ = engine_->region(index_, *history_);
  span_.clear();
  tail_.clear();
  span_begin_ = offset_;
  residual_ = region_.language;
  nullable_.assign(1, region_.constrained() && residual_.nullable() ? 1 : 0);
}

bool RegionCursor::pending_terminator_ok() const {
  const std::string& t = region_.terminator;
  const std::size_t n = span_.size();
  for (std::size_t k = 1; k < t.size() && k <= n; ++k) {
    if (nullable_[n - k] && span_.compare(n - k, k, t, 0, k) == 0) return true;
  }
  return false;
}

bool RegionCursor::feed(unsigned char b) {
  const std::string& term = region_.terminator;
  const char c = static_cast<char>(b);

  if (!region_.constrained()) {
    tail_.push_back(c);
    if (tail_.size() > term.size()) tail_.erase(0, tail_.size() - term.size());
    if (record_) span_.push_back(c);
    ++offset_;
    if (tail_ == term) {
      if (record_) {
        span_.resize(span_.size() - term.size());
        segments_.push_back({index_, region_.mode, span_, span_begin_});
      }
      enter(index_ + 1);
    }
    return true;
  }

  lexical::RegularSet next = residual_.is_empty() ? residual_ : residual_.derivative(b);
  span_.push_back(c);
  nullable_.push_back(next.nullable() ? 1 : 0);

  if (ends_with(span_, term)) {
    std::size_t content_len = span_.size() - term.size();
    if (!nullable_[content_len]) {
      span_.pop_back();
      nullable_.pop_back();
      return false;
    }
    ++offset_;
    std::string content = span_.substr(0, content_len);
    if (record_) segments_.push_back({index_, region_.mode, content, span_begin_});
    auto grown = std::make_shared<History>(*history_);
    grown->push_back(std::move(content));
    history_ = std::move(grown);
    enter(index_ + 1);
    return true;
  }

  if (next.is_empty() && !pending_terminator_ok()) {
    span_.pop_back();
    nullable_.pop_back();
    return false;
  }
  residual_ = std::move(next);
  ++offset_;
  return true;
}

std::size_t RegionCursor::feed(std::string_view bytes) {
  std::size_t n = 0;
  for (char c : bytes) {
    if (!feed(static_cast<unsigned char>(c))) break;
    ++n;
  }
  return n;
}

namespace {

void collect(const lexical::TokenTrie& trie, std::uint32_t node, const RegionCursor& cursor,
             std::vector<lexical::TokenId>& out) {
  for (const auto& [b, next] : trie.node(node).children) {
    RegionCursor copy = cursor;
    if (!copy.feed(b)) continue;
    if (auto id = trie.node(next).token) out.push_back(*id);
    collect(trie, next, copy, out);
  }
}

}  // namespace

std::vector<lexical::TokenId> valid_next_tokens(const RegionCursor& cursor, const lexical::TokenTrie& trie) {
  std::vector<lexical::TokenId> out;
  collect(trie, lexical::TokenTrie::root(), cursor, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace certguide::csd
