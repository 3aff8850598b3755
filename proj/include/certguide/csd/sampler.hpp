// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "certguide/csd/engine.hpp"
#include "certguide/csd/transcript.hpp"
#include "certguide/lexical/token_trie.hpp"
#include "certguide/lm/language_model.hpp"

namespace certguide::csd {

struct SampleOptions {
  std::size_t max_violations = 20;
  lm::StopCondition stop;
};

/**
 * Rejection-based constrained decoding. Each round takes a free continuation
 * and validates it; on a violation the text is cut back to the last token
 * boundary inside the valid prefix and one token from the valid mask is
 * forced. Sampling gives up (aborted) when the violation count reaches
 * `max_violations` or the mask is empty.
 *
 * `trie` must be built from `model.vocabulary()`.
 */
Transcript constrained_sample(lm::LanguageModel& model, const CompletionEngine& engine,
                              const lexical::TokenTrie& trie, std::string_view prompt,
                              const SampleOptions& options = {});

/// A single free continuation, with blocks found by delimiters only.
Transcript unconstrained_sample(lm::LanguageModel& model, std::string_view prompt, std::string_view open,
                                std::string_view close, const lm::StopCondition& stop = {});

}  // namespace certguide::csd
