// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/logicguide/logic_guide.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "certguide/logicguide/grammar.hpp"

namespace certguide::logicguide {

using logic::SymbolKind;
using R = lexical::RegularSet;

std::string to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Object:
      return "object";
    case ActionKind::Prop:
      return "prop";
    case ActionKind::Relation:
      return "relation";
    case ActionKind::Axiom:
      return "axiom";
    case ActionKind::Goal:
      return "goal";
    case ActionKind::Infer:
      return "infer";
  }
  return "object";
}

std::optional<ActionKind> parse_action_kind(std::string_view s) {
  for (auto k : {ActionKind::Object, ActionKind::Prop, ActionKind::Relation, ActionKind::Axiom, ActionKind::Goal,
                 ActionKind::Infer}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string to_string(const ActionBlock& b) { return to_string(b.kind) + ":" + b.payload; }

std::optional<ActionBlock> parse_action_block(std::string_view content) {
  auto colon = content.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto kind = parse_action_kind(content.substr(0, colon));
  if (!kind) return std::nullopt;
  return ActionBlock{*kind, std::string(content.substr(colon + 1))};
}

Replayer::Replayer(LogicGuideOptions options) : options_(options) {
  result_.state.strict_symbols = options.strict_symbols;
}

void Replayer::apply(std::string_view content) {
  std::size_t index = applied_++;
  auto& state = result_.state;
  auto reject = [&](std::string reason) { result_.rejected.push_back({index, std::move(reason)}); };

  auto block = parse_action_block(content);
  if (!block) return reject("not an action block");
  const std::string& payload = block->payload;
  try {
    switch (block->kind) {
      case ActionKind::Object:
      case ActionKind::Prop:
      case ActionKind::Relation: {
        if (!logic::is_identifier(payload)) return reject("`" + payload + "` is not an identifier");
        SymbolKind kind = block->kind == ActionKind::Object ? SymbolKind::Object
                          : block->kind == ActionKind::Prop ? SymbolKind::Prop
                                                            : SymbolKind::Relation;
        state.symbols.declare(kind, payload);
        return;
      }
      case ActionKind::Axiom:
        state.add_axiom(logic::parse_rule(payload, &state.symbols));
        return;
      case ActionKind::Goal:
        state.set_goal(logic::parse_literal(payload, &state.symbols));
        return;
      case ActionKind::Infer:
        break;
    }
  } catch (const logic::LogicError& e) {
    return reject(e.what());
  }

  ++result_.infer_count;
  if (payload == kNothing) {
    if (options_.strict_nothing && !logic::step_inferences(state).empty()) {
      throw ReplayMismatch(index, "`nothing` while inferences remain");
    }
    result_.last_infer_nothing = true;
    return;
  }
  result_.last_infer_nothing = false;
  logic::Literal fact;
  try {
    fact = logic::parse_literal(payload, &state.symbols);
  } catch (const logic::SyntaxError& e) {
    throw ReplayMismatch(index, e.what());
  }
  if (logic::to_string(fact) != payload) throw ReplayMismatch(index, "`" + payload + "` is not canonically printed");
  try {
    logic::assert_fact(state, fact);
  } catch (const logic::NotDerivable& e) {
    throw ReplayMismatch(index, e.what());
  }
}

ReplayedTheory replay(const History& history, const LogicGuideOptions& options) {
  Replayer r(options);
  for (const auto& content : history) r.apply(content);
  return r.result();
}

std::vector<std::string> allowed_inferences(const logic::TheoryState& state, const LogicGuideOptions& options) {
  std::vector<std::string> out;
  for (const auto& l : logic::step_inferences(state)) out.push_back(logic::to_string(l));
  if (!options.strict_nothing || out.empty()) out.emplace_back(kNothing);
  return out;
}

namespace {

R formalization_language(const logic::SymbolTable* symbols) {
  R ident = identifier_grammar();
  return R::alternation({
      R::concat({R::literal("object:"), ident}),
      R::concat({R::literal("prop:"), ident}),
      R::concat({R::literal("relation:"), ident}),
      R::concat({R::literal("axiom:"), rule_grammar(symbols)}),
      R::concat({R::literal("goal:"), literal_grammar(symbols, false)}),
  });
}

}  // namespace

lexical::RegularSet block_language(const logic::TheoryState& state, const LogicGuideOptions& options) {
  static const R generic = formalization_language(nullptr);
  R formal = options.strict_symbols ? formalization_language(&state.symbols) : generic;
  R infer = R::concat({R::literal("infer:"), R::one_of(allowed_inferences(state, options))});
  return R::alternation({formal, infer});
}

namespace {

class LogicGuide : public guides::Guide {
 public:
  explicit LogicGuide(LogicGuideOptions options) : options_(options), cache_(options) {}

  RegularSet allowed(const History& history) const override {
    bool extends = history.size() >= seen_.size() && std::equal(seen_.begin(), seen_.end(), history.begin());
    if (!extends) {
      cache_ = Replayer(options_);
      seen_.clear();
    }
    try {
      for (std::size_t i = seen_.size(); i < history.size(); ++i) {
        cache_.apply(history[i]);
        seen_.push_back(history[i]);
      }
    } catch (...) {
      cache_ = Replayer(options_);
      seen_.clear();
      throw;
    }
    return block_language(cache_.result().state, options_);
  }

  std::unique_ptr<guides::Guide> clone() const override { return std::make_unique<LogicGuide>(options_); }

 private:
  LogicGuideOptions options_;
  mutable Replayer cache_;
  mutable History seen_;
};

}  // namespace

std::unique_ptr<guides::Guide> logic_guide(LogicGuideOptions options) { return std::make_unique<LogicGuide>(options); }

guides::GuidedEngine logic_engine(LogicGuideOptions options) { return guides::lift(logic_guide(options)); }

std::string to_string(CertificationReason r) {
  switch (r) {
    case CertificationReason::GoalProved:
      return "goal_proved";
    case CertificationReason::GoalDisproved:
      return "goal_disproved";
    case CertificationReason::InferencesExhausted:
      return "inferences_exhausted";
    case CertificationReason::NoFormalDerivation:
      return "no_formal_derivation";
    case CertificationReason::Aborted:
      return "aborted";
  }
  return "no_formal_derivation";
}

CertificationVerdict certify_history(const History& history, logic::Answer stated, bool aborted,
                                     const LogicGuideOptions& options) {
  ReplayedTheory replayed;
  try {
    replayed = replay(history, options);
  } catch (const ReplayMismatch&) {
    return {stated, false, CertificationReason::NoFormalDerivation};
  }
  if (replayed.state.goal()) {
    switch (logic::check_goal(replayed.state)) {
      case logic::GoalStatus::Proved:
        return {logic::Answer::True, true, CertificationReason::GoalProved};
      case logic::GoalStatus::Disproved:
        return {logic::Answer::False, true, CertificationReason::GoalDisproved};
      case logic::GoalStatus::Open:
        break;
    }
  }
  if (aborted) return {stated, false, CertificationReason::Aborted};
  if (replayed.last_infer_nothing) return {stated, false, CertificationReason::InferencesExhausted};
  return {stated, false, CertificationReason::NoFormalDerivation};
}

CertificationVerdict certify(const csd::Transcript& transcript, logic::Answer stated,
                             const LogicGuideOptions& options) {
  History history;
  for (const auto& b : transcript.blocks) {
    if (b.certified) history.push_back(b.content);
  }
  return certify_history(history, stated, transcript.aborted, options);
}

History parse_theory(std::string_view text) {
  History out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!parse_action_block(line)) {
      throw TheoryFormatError("line " + std::to_string(line_no) + ": expected `kind:payload`, got `" +
                              std::string(line) + "`");
    }
    out.emplace_back(line);
  }
  return out;
}

History load_theory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TheoryFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_theory(ss.str());
}

std::string format_theory(const History& history) {
  std::string out;
  for (const auto& block : history) {
    if (block.find('\n') != std::string::npos) throw TheoryFormatError("block contains a newline");
    out += block;
    out += '\n';
  }
  return out;
}

}  // namespace certguide::logicguide
