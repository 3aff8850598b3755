// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/lm/scripted.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace certguide::lm {

const char* const kDefaultApology = "Sorry, my previous message was cut off. Continuing:\n";

std::string to_string(const Policy& policy) {
  switch (policy.kind) {
    case Policy::Kind::Cooperative:
      return "cooperative";
    case Policy::Kind::Adversarial:
      return "adversarial";
    case Policy::Kind::Apologetic:
      return "apologetic:" + (policy.apologies ? std::to_string(*policy.apologies) : std::string("inf"));
  }
  return "cooperative";
}

Policy parse_policy(const std::string& text) {
  if (text == "cooperative") return Policy::cooperative();
  if (text == "adversarial") return Policy::adversarial();
  const std::string prefix = "apologetic:";
  if (text.rfind(prefix, 0) == 0) {
    std::string k = text.substr(prefix.size());
    if (k == "inf") return Policy::apologetic(std::nullopt);
    if (!k.empty() && std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return Policy::apologetic(std::stoull(k));
    }
  }
  throw ScriptFormatError("unknown policy `" + text + "`");
}

ScriptedLM::ScriptedLM(std::shared_ptr<const Tokenizer> tokenizer, std::vector<std::string> messages,
                       ScriptOptions options)
    : tokenizer_(std::move(tokenizer)), options_(std::move(options)), rng_(options_.seed) {
  for (const auto& m : messages) {
    script_ += m;
    boundaries_.push_back(script_.size());
  }
}

std::size_t ScriptedLM::script_pos(std::size_t generated_len) const {
  std::size_t delta = generated_len >= anchor_gen_ ? generated_len - anchor_gen_ : 0;
  return std::min(script_.size(), anchor_script_ + delta);
}

std::size_t ScriptedLM::message_end(std::size_t pos) const {
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), pos);
  return it == boundaries_.end() ? script_.size() : *it;
}

std::vector<TokenId> ScriptedLM::emit(std::string_view text, const StopCondition& stop) {
  std::vector<TokenId> ids = options_.segmentation == Segmentation::Random
                                 ? tokenizer_->random_segmentation(text, rng_)
                                 : tokenizer_->greedy(text);
  if (ids.size() > stop.max_tokens) ids.resize(stop.max_tokens);
  return ids;
}

std::vector<TokenId> ScriptedLM::sample_continuation(const DecodeContext& ctx, const StopCondition& stop) {
  std::size_t len = tokenizer_->byte_length(ctx.generated);
  if (apology_start_ && len < *apology_start_ + options_.apology.size()) {
    std::size_t into = len >= *apology_start_ ? len - *apology_start_ : 0;
    std::string text = options_.apology.substr(into);
    text += script_.substr(anchor_script_, message_end(anchor_script_) - anchor_script_);
    return emit(text, stop);
  }
  std::size_t pos = script_pos(len);
  return emit(std::string_view(script_).substr(pos, message_end(pos) - pos), stop);
}

std::vector<TokenId> ScriptedLM::sample_fresh_message(const DecodeContext& ctx, const StopCondition& stop) {
  bool apologize = options_.policy.kind == Policy::Kind::Apologetic &&
                   (!options_.policy.apologies || apologies_emitted_ < *options_.policy.apologies);
  if (!apologize) return sample_continuation(ctx, stop);
  std::size_t len = tokenizer_->byte_length(ctx.generated);
  std::size_t pos = script_pos(len);
  ++apologies_emitted_;
  apology_start_ = len;
  anchor_gen_ = len + options_.apology.size();
  anchor_script_ = pos;
  return sample_continuation(ctx, stop);
}

TokenId ScriptedLM::sample_one(const DecodeContext& ctx, std::span<const TokenId> allowed) {
  if (allowed.empty()) throw EmptyAllowedSet();
  std::size_t len = tokenizer_->byte_length(ctx.generated);

  bool in_apology = apology_start_ && len >= *apology_start_ && len < *apology_start_ + options_.apology.size();
  std::size_t pos = in_apology ? anchor_script_ : script_pos(len);
  std::string intended = in_apology ? options_.apology.substr(len - *apology_start_) : std::string();
  intended.append(script_, pos);

  const auto& vocab = tokenizer_->vocabulary();
  auto closest = [&](std::string_view target, std::size_t& best_overlap) {
    TokenId best = allowed.front();
    best_overlap = 0;
    bool first = true;
    for (TokenId id : allowed) {
      const std::string& t = vocab.token(id);
      auto mm = std::mismatch(t.begin(), t.end(), target.begin(), target.end());
      auto overlap = static_cast<std::size_t>(mm.first - t.begin());
      if (first || overlap > best_overlap || (overlap == best_overlap && t < vocab.token(best))) {
        best = id;
        best_overlap = overlap;
        first = false;
      }
    }
    return best;
  };
  std::size_t overlap = 0;
  TokenId best = closest(intended, overlap);
  // Nothing allowed resembles the apology: fall back on the script itself.
  if (in_apology && overlap == 0) best = closest(std::string_view(script_).substr(pos), overlap);

  const std::string& t = vocab.token(best);
  bool agrees = script_.compare(pos, t.size(), t) == 0 && pos + t.size() <= script_.size();
  std::size_t advance = t.size();
  if (in_apology) {
    advance = agrees ? t.size() : 0;
  } else if (options_.policy.kind == Policy::Kind::Adversarial) {
    advance = 0;
  }
  anchor_gen_ = len + t.size();
  anchor_script_ = std::min(script_.size(), pos + advance);
  apology_start_.reset();
  return best;
}

ScriptFile load_script(std::istream& in) {
  ScriptFile out;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "script line " + std::to_string(lineno) + ": ";
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ScriptFormatError(where + e.what());
    }
    if (!header) {
      if (!rec.contains("policy") || !rec["policy"].is_string()) throw ScriptFormatError(where + "missing policy header");
      try {
        out.policy = parse_policy(rec["policy"].get<std::string>());
      } catch (const ScriptFormatError& e) {
        throw ScriptFormatError(where + e.what());
      }
      header = true;
      continue;
    }
    if (!rec.contains("message") || !rec["message"].is_string()) throw ScriptFormatError(where + "missing `message`");
    try {
      out.messages.push_back(lexical::hex_decode(rec["message"].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ScriptFormatError(where + e.what());
    }
  }
  if (!header) throw ScriptFormatError("script has no policy header");
  return out;
}

void save_script(std::ostream& out, const ScriptFile& script) {
  out << nlohmann::json{{"policy", to_string(script.policy)}}.dump() << '\n';
  for (const auto& m : script.messages) {
    out << nlohmann::json{{"message", lexical::hex_encode(m)}}.dump() << '\n';
  }
}

}  // namespace certguide::lm
