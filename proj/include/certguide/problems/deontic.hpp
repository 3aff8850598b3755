// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/problems/problem.hpp"

namespace certguide::problems {

struct DeonticConfig {
  std::size_t min_depth = 1;
  std::size_t max_depth = 5;
  std::size_t min_distractors = 4;
  std::size_t max_distractors = 10;
  std::size_t max_axioms = 28;
  std::size_t max_attempts = 200;
};

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Samples calendar-domain objects, situational facts and rules over the
 * deontic signature, with a derivation of depth min_depth..max_depth whose
 * conclusion is a deontic literal. The goal is that conclusion for True and
 * its complement for False; unset `answer` flips a coin.
 */
Problem generate_deontic_problem(std::uint64_t seed, std::optional<Answer> answer = std::nullopt,
                                 const DeonticConfig& config = {});

/// `count` problems with balanced answers.
std::vector<Problem> generate_deontic_split(std::size_t count, std::uint64_t seed, const DeonticConfig& config = {});

/// Inverse of the deontic sentence templates.
std::optional<std::string> formalize_deontic_sentence(std::string_view sentence);

}  // namespace certguide::problems
