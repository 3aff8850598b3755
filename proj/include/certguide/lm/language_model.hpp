// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "certguide/lexical/vocabulary.hpp"

namespace certguide::lm {

using lexical::TokenId;

class EmptyAllowedSet : public std::invalid_argument {
 public:
  EmptyAllowedSet() : std::invalid_argument("sample_one called with an empty allowed set") {}
};

struct DecodeContext {
  std::string_view prompt;
  std::span<const TokenId> generated;
};

struct StopCondition {
  std::size_t max_tokens = 1u << 16;
};

/**
 * The two capabilities constrained decoding relies on: free continuation and
 * single-token sampling restricted to an allowed set (logit bias).
 */
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual const lexical::Vocabulary& vocabulary() const = 0;

  virtual std::vector<TokenId> sample_continuation(const DecodeContext& ctx, const StopCondition& stop) = 0;

  /// Result is always a member of `allowed`. Throws EmptyAllowedSet.
  virtual TokenId sample_one(const DecodeContext& ctx, std::span<const TokenId> allowed) = 0;

  /// Continuation delivered as a new chat message. Completion-style models
  /// have no such notion and simply continue.
  virtual std::vector<TokenId> sample_fresh_message(const DecodeContext& ctx, const StopCondition& stop) {
    return sample_continuation(ctx, stop);
  }
};

/// Chat-style wrapper: after a forced token the next continuation arrives as
/// a fresh message from the inner model.
class ChatAdapter : public LanguageModel {
 public:
  explicit ChatAdapter(std::unique_ptr<LanguageModel> inner) : inner_(std::move(inner)) {}

  const lexical::Vocabulary& vocabulary() const override { return inner_->vocabulary(); }
  std::vector<TokenId> sample_continuation(const DecodeContext& ctx, const StopCondition& stop) override;
  TokenId sample_one(const DecodeContext& ctx, std::span<const TokenId> allowed) override;

  LanguageModel& inner() { return *inner_; }

 private:
  std::unique_ptr<LanguageModel> inner_;
  bool forced_since_continuation_ = false;
};

std::unique_ptr<LanguageModel> chat_adapter(std::unique_ptr<LanguageModel> inner);

}  // namespace certguide::lm
