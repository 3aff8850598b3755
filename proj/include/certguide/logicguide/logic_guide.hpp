// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/csd/transcript.hpp"
#include "certguide/guides/guide.hpp"
#include "certguide/logic/theory.hpp"

namespace certguide::logicguide {

using guides::History;

enum class ActionKind { Object, Prop, Relation, Axiom, Goal, Infer };

std::string to_string(ActionKind k);
std::optional<ActionKind> parse_action_kind(std::string_view s);

/// One block's content, "kind:payload".
struct ActionBlock {
  ActionKind kind = ActionKind::Object;
  std::string payload;
  friend bool operator==(const ActionBlock&, const ActionBlock&) = default;
};

std::string to_string(const ActionBlock& b);
/// Splits at the first colon; nullopt for an unknown kind or a missing colon.
std::optional<ActionBlock> parse_action_block(std::string_view content);

inline constexpr const char* kNothing = "nothing";

struct LogicGuideOptions {
  /// Allow "nothing" only once no inference is left.
  bool strict_nothing = false;
  /// Restrict axiom and goal atoms to declared symbols, with their arities.
  bool strict_symbols = false;
};

/// An infer block that does not follow at its position in the history.
class ReplayMismatch : public logic::LogicError {
 public:
  ReplayMismatch(std::size_t block, const std::string& what)
      : logic::LogicError("block " + std::to_string(block) + ": " + what), block_(block) {}
  std::size_t block() const { return block_; }

 private:
  std::size_t block_;
};

struct Rejection {
  std::size_t block;
  std::string reason;
};

/**
 * A history folded into a theory. Formalization blocks that the kernel
 * refuses (bad arity, unbound consequent variables, unknown kind) are
 * skipped and listed in `rejected`; they say nothing about soundness.
 */
struct ReplayedTheory {
  logic::TheoryState state;
  std::vector<Rejection> rejected;
  std::size_t infer_count = 0;
  bool last_infer_nothing = false;
};

/// Incremental fold over block contents. Throws ReplayMismatch.
class Replayer {
 public:
  explicit Replayer(LogicGuideOptions options = {});
  void apply(std::string_view content);
  const ReplayedTheory& result() const { return result_; }
  std::size_t blocks_applied() const { return applied_; }

 private:
  LogicGuideOptions options_;
  ReplayedTheory result_;
  std::size_t applied_ = 0;
};

ReplayedTheory replay(const History& history, const LogicGuideOptions& options = {});

/// Canonical strings the next infer block may hold: the step inferences, plus
/// "nothing" (always, or only when there are none under strict_nothing).
std::vector<std::string> allowed_inferences(const logic::TheoryState& state, const LogicGuideOptions& options = {});

/// Language of the next block after `theory`.
lexical::RegularSet block_language(const logic::TheoryState& state, const LogicGuideOptions& options = {});

/// The guide. Keeps a replay of the longest history seen so that extending
/// it costs only the new blocks; copies share nothing.
std::unique_ptr<guides::Guide> logic_guide(LogicGuideOptions options = {});

/// The guide lifted to "[[" / "]]" blocks.
guides::GuidedEngine logic_engine(LogicGuideOptions options = {});

enum class CertificationReason { GoalProved, GoalDisproved, InferencesExhausted, NoFormalDerivation, Aborted };

std::string to_string(CertificationReason r);

struct CertificationVerdict {
  logic::Answer answer = logic::Answer::Unknown;
  bool certified = false;
  CertificationReason reason = CertificationReason::NoFormalDerivation;
  friend bool operator==(const CertificationVerdict&, const CertificationVerdict&) = default;
};

/**
 * Replays the certified blocks of `transcript`. A proved or disproved goal is
 * certified regardless of `stated`. Otherwise the stated answer stands,
 * uncertified, with reason Aborted for an aborted decode,
 * InferencesExhausted after a final "nothing", and NoFormalDerivation else
 * (including a history that fails to replay).
 */
CertificationVerdict certify(const csd::Transcript& transcript, logic::Answer stated,
                             const LogicGuideOptions& options = {});
CertificationVerdict certify_history(const History& history, logic::Answer stated, bool aborted = false,
                                     const LogicGuideOptions& options = {});

class TheoryFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Theory files hold one block per line in "kind:payload" form. Blank lines
 * and lines starting with '#' are ignored. Throws TheoryFormatError with the
 * line number for a line that is not an action block.
 */
History parse_theory(std::string_view text);
History load_theory(const std::filesystem::path& path);
std::string format_theory(const History& history);

}  // namespace certguide::logicguide
