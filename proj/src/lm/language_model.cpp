// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/lm/language_model.hpp"

namespace certguide::lm {

std::vector<TokenId> ChatAdapter::sample_continuation(const DecodeContext& ctx, const StopCondition& stop) {
  if (forced_since_continuation_) {
    forced_since_continuation_ = false;
    return inner_->sample_fresh_message(ctx, stop);
  }
  return inner_->sample_continuation(ctx, stop);
}

TokenId ChatAdapter::sample_one(const DecodeContext& ctx, std::span<const TokenId> allowed) {
  TokenId t = inner_->sample_one(ctx, allowed);
  forced_since_continuation_ = true;
  return t;
}

std::unique_ptr<LanguageModel> chat_adapter(std::unique_ptr<LanguageModel> inner) {
  return std::make_unique<ChatAdapter>(std::move(inner));
}

}  // namespace certguide::lm
