// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/logic/syntax.hpp"
#include "certguide/problems/problem.hpp"

namespace certguide::harness {

using logic::Answer;
using problems::Problem;

/// The answer on the last "Answer:" line, or nullopt when there is none or
/// it is not True/False/Unknown.
std::optional<Answer> extract_answer(std::string_view text);

/**
 * Inference steps of a shortest derivation of the goal or its complement,
 * in an order where each step is available when it is taken. Empty when
 * neither follows.
 */
std::vector<logic::Literal> minimal_proof(const Problem& p);

/// "Formalized context: [[...]] ... " up to and including the goal block.
std::string formalization_text(const Problem& p);

/**
 * A completion that formalizes the problem exactly, takes the steps of
 * minimal_proof and states the answer they establish:
 *   Formalized context: [[object:..]] ... [[axiom:..]]
 *   Formalized goal: [[goal:..]]
 *   Reasoning: [[infer:..]] ...
 *   Answer: True
 * With no derivation it infers "nothing" and answers Unknown.
 */
std::string perfect_formalizer_script(const Problem& p);

/// Formalizes correctly, then gives up with "nothing" and states `guess`.
std::string guess_after_nothing_script(const Problem& p, Answer guess);

/// Just "Answer: X".
std::string answer_only_script(Answer a);

/// Problem statement as it appears in prompts: context, question, and the
/// "Formalized context:" cue is left for the model.
std::string problem_text(const Problem& p);

/// Few-shot prompt: each exemplar with its perfect-formalizer solution, then
/// the problem.
std::string build_prompt(const Problem& p, const std::vector<Problem>& exemplars);

}  // namespace certguide::harness
