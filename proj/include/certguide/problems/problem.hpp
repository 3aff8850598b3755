// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "certguide/logic/theory.hpp"
#include "certguide/logicguide/logic_guide.hpp"

namespace certguide::problems {

using logic::Answer;
using logicguide::History;

enum class Ontology { TrueOnt, FalseOnt, Fictional, Deontic };

/// "true", "false", "fictional", "deontic".
std::string to_string(Ontology o);
std::optional<Ontology> parse_ontology(std::string_view s);

/**
 * A reasoning problem. `theory` holds action blocks in theory-file form:
 * declarations, then one axiom block per context sentence (sentence i is
 * axiom i), then the goal.
 */
struct Problem {
  std::string id;
  Ontology ontology = Ontology::Fictional;
  std::vector<std::string> context;
  std::string question;
  Answer answer = Answer::True;
  std::size_t hops = 0;
  History theory;
  /// Indices into axioms() of rules that take no part in the derivation.
  std::vector<std::size_t> distractors;

  std::vector<std::string> declarations() const;
  /// Axiom payloads, in context order.
  std::vector<std::string> axioms() const;
  /// Goal payload; empty when there is none.
  std::string goal() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// Replays a ground-truth theory; throws logic::LogicError when a block is
/// rejected, since ground truth has to be well formed.
logic::TheoryState load_ground_truth(const History& theory);

/// Closure, then goal adjudication. Throws logic::GoalUnset.
Answer oracle_answer(const History& theory);
Answer oracle_answer(const logic::TheoryState& state);

/// Rounds of forward chaining needed to derive the goal or its complement,
/// whichever comes first; nullopt when neither follows.
std::optional<std::size_t> shortest_hops(const History& theory);

/// The theory with the given axioms (indices into axioms()) left out.
History without_axioms(const Problem& p, const std::vector<std::size_t>& drop);

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Problem& p);
/// Throws FormatError naming the missing or malformed field.
Problem problem_from_json(const nlohmann::json& j);

/// One JSON record per line; FormatError carries the line number.
std::vector<Problem> parse_dataset(std::string_view text);
std::vector<Problem> load_dataset(const std::filesystem::path& path);
std::string format_dataset(const std::vector<Problem>& problems);
void save_dataset(const std::filesystem::path& path, const std::vector<Problem>& problems);

/// Deterministic per-item seed derived from a batch seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// `count` answers, half True (the odd one out decided by `seed`), shuffled.
std::vector<Answer> balanced_answers(std::size_t count, std::uint64_t seed);

}  // namespace certguide::problems
