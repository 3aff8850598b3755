// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "certguide/lm/language_model.hpp"
#include "certguide/lm/tokenizer.hpp"

namespace certguide::lm {

struct Policy {
  enum class Kind { Cooperative, Apologetic, Adversarial };

  Kind kind = Kind::Cooperative;
  /// Apologetic only; nullopt apologizes on every fresh message.
  std::optional<std::size_t> apologies;

  static Policy cooperative() { return {}; }
  static Policy apologetic(std::optional<std::size_t> k) { return {Kind::Apologetic, k}; }
  static Policy adversarial() { return {Kind::Adversarial, std::nullopt}; }

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// "cooperative", "adversarial", "apologetic:<k>" or "apologetic:inf".
std::string to_string(const Policy& policy);
Policy parse_policy(const std::string& text);

extern const char* const kDefaultApology;

enum class Segmentation { Greedy, Random };

struct ScriptOptions {
  Policy policy;
  Segmentation segmentation = Segmentation::Greedy;
  std::uint64_t seed = 0;
  std::string apology = kDefaultApology;
};

/**
 * Deterministic stand-in for a model. It intends to emit the concatenation of
 * its script messages and pauses at every message boundary. Forced tokens are
 * chosen by longest common prefix with what it currently intends to say, ties
 * going to the lexicographically smallest token.
 *
 * Position tracking uses an anchor (generated length, script offset); the
 * script offset for a context of generated length L is
 * anchor_script + (L - anchor_gen). Apologetic models prefix fresh messages
 * with the apology text and, while forced inside it, advance in the script
 * only when the forced token happens to agree with it. When no allowed token
 * shares a prefix with the apology, the forced token is chosen against the
 * script instead.
 */
class ScriptedLM : public LanguageModel {
 public:
  ScriptedLM(std::shared_ptr<const Tokenizer> tokenizer, std::vector<std::string> messages, ScriptOptions options = {});

  const lexical::Vocabulary& vocabulary() const override { return tokenizer_->vocabulary(); }
  std::vector<TokenId> sample_continuation(const DecodeContext& ctx, const StopCondition& stop) override;
  std::vector<TokenId> sample_fresh_message(const DecodeContext& ctx, const StopCondition& stop) override;
  TokenId sample_one(const DecodeContext& ctx, std::span<const TokenId> allowed) override;

  const std::string& script() const { return script_; }
  std::size_t apologies_emitted() const { return apologies_emitted_; }

 private:
  std::size_t script_pos(std::size_t generated_len) const;
  std::size_t message_end(std::size_t pos) const;
  std::vector<TokenId> emit(std::string_view text, const StopCondition& stop);

  std::shared_ptr<const Tokenizer> tokenizer_;
  std::string script_;
  std::vector<std::size_t> boundaries_;  // cumulative message ends
  ScriptOptions options_;
  std::mt19937_64 rng_;

  std::size_t anchor_gen_ = 0;
  std::size_t anchor_script_ = 0;
  std::optional<std::size_t> apology_start_;
  std::size_t apologies_emitted_ = 0;
};

/// Script file: a header record {"policy": ...} followed by one record per
/// message {"message": "<hex>"}.
struct ScriptFile {
  Policy policy;
  std::vector<std::string> messages;
};

ScriptFile load_script(std::istream& in);
void save_script(std::ostream& out, const ScriptFile& script);

class ScriptFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace certguide::lm
