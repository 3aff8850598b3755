// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/problems/problem.hpp"

namespace certguide::problems {

struct OntologyConfig {
  std::size_t min_distractors = 3;
  std::size_t max_distractors = 8;
};

/**
 * A chain of `hops` unary rules from a single fact about one entity to the
 * goal predicate, plus distractor rules that leave the answer and the hop
 * count unchanged. TrueOnt follows a common-sense taxonomy upwards; FalseOnt
 * walks it downwards and flips the polarity of property rules; Fictional
 * uses made-up concept names. With `answer` unset the goal is negated with
 * probability 1/2. Throws std::invalid_argument unless 1 <= hops <= 5 and
 * the ontology is not Deontic.
 */
Problem generate_ontology_problem(std::uint64_t seed, std::size_t hops, Ontology ontology,
                                  std::optional<Answer> answer = std::nullopt, const OntologyConfig& config = {});

/// `count` problems with balanced answers. `hops` = 0 cycles through 1..5.
std::vector<Problem> generate_ontology_split(Ontology ontology, std::size_t count, std::uint64_t seed,
                                             std::size_t hops = 0, const OntologyConfig& config = {});

/// Inverse of the sentence templates: the axiom a context sentence states,
/// or nullopt when it matches no template of that ontology's lexicon.
std::optional<std::string> formalize_ontology_sentence(Ontology ontology, std::string_view sentence);

}  // namespace certguide::problems
