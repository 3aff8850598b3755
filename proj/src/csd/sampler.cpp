// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/csd/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#include "certguide/csd/cursor.hpp"
#include "certguide/csd/validate.hpp"

namespace certguide::csd {

namespace {

void finish(Transcript& t, const lexical::Vocabulary& vocab, const CompletionEngine& engine) {
  t.full_text = vocab.decode(t.tokens);
  if (t.aborted) {
    // Keep the blocks completed inside the valid part.
    RegionCursor cursor(engine, true);
    cursor.feed(t.full_text);
    for (const auto& seg : cursor.segments()) {
      if (seg.mode == Region::Mode::Constrained) t.blocks.push_back({seg.region, seg.content, true});
    }
    return;
  }
  t.blocks = certified_blocks(engine, t.full_text);
}

}  // namespace

Transcript constrained_sample(lm::LanguageModel& model, const CompletionEngine& engine, const lexical::TokenTrie& trie,
                              std::string_view prompt, const SampleOptions& options) {
  if (options.max_violations == 0) throw std::invalid_argument("max_violations must be at least 1");
  const lexical::Vocabulary& vocab = model.vocabulary();
  Transcript t;
  // Cursor over the committed text; each round only feeds what is new.
  RegionCursor base(engine);

  while (true) {
    std::vector<lexical::TokenId> cont = model.sample_continuation({prompt, t.tokens}, options.stop);
    std::vector<lexical::TokenId> candidate = t.tokens;
    candidate.insert(candidate.end(), cont.begin(), cont.end());
    std::string text = vocab.decode(candidate);

    RegionCursor cursor = base;
    std::size_t valid = base.offset() + cursor.feed(std::string_view(text).substr(base.offset()));
    Round round;
    round.valid_prefix_length = valid;
    if (valid == text.size() && !cursor.in_constrained()) {
      t.tokens = std::move(candidate);
      round.committed_length = text.size();
      t.rounds.push_back(round);
      finish(t, vocab, engine);
      return t;
    }

    ++t.violation_count;
    t.discarded.push_back(text.substr(valid));

    // Largest token boundary inside the valid prefix.
    std::size_t keep = 0;
    std::size_t boundary = 0;
    while (keep < candidate.size() && boundary + vocab.token(candidate[keep]).size() <= valid) {
      boundary += vocab.token(candidate[keep]).size();
      ++keep;
    }
    candidate.resize(keep);
    t.tokens = std::move(candidate);

    if (t.violation_count >= options.max_violations) {
      t.aborted = true;
      round.committed_length = boundary;
      t.rounds.push_back(round);
      finish(t, vocab, engine);
      return t;
    }

    RegionCursor at = base;
    at.feed(std::string_view(text).substr(base.offset(), boundary - base.offset()));
    std::vector<lexical::TokenId> mask = valid_next_tokens(at, trie);
    if (mask.empty()) {
      t.aborted = true;
      round.committed_length = boundary;
      t.rounds.push_back(round);
      finish(t, vocab, engine);
      return t;
    }
    lexical::TokenId forced = model.sample_one({prompt, t.tokens}, mask);
    if (!std::binary_search(mask.begin(), mask.end(), forced)) {
      throw std::logic_error("model returned a token outside the allowed set");
    }
    t.tokens.push_back(forced);
    at.feed(vocab.token(forced));
    base = std::move(at);
    round.forced = forced;
    round.committed_length = boundary + vocab.token(forced).size();
    t.rounds.push_back(round);
  }
}

Transcript unconstrained_sample(lm::LanguageModel& model, std::string_view prompt, std::string_view open,
                                std::string_view close, const lm::StopCondition& stop) {
  Transcript t;
  t.tokens = model.sample_continuation({prompt, {}}, stop);
  t.full_text = model.vocabulary().decode(t.tokens);
  t.blocks = delimited_blocks(t.full_text, open, close);
  t.rounds.push_back({t.full_text.size(), t.full_text.size(), std::nullopt});
  return t;
}

}  // namespace certguide::csd
