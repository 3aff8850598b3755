// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "certguide/csd/transcript.hpp"
#include "certguide/harness/scripts.hpp"
#include "certguide/lm/language_model.hpp"
#include "certguide/lm/tokenizer.hpp"
#include "certguide/logicguide/logic_guide.hpp"

namespace certguide::harness {

/// One decoded problem.
struct EvalRecord {
  std::string problem_id;
  problems::Ontology ontology = problems::Ontology::Fictional;
  std::size_t hops = 0;
  Answer oracle = Answer::Unknown;
  bool guided = false;
  std::string prompt;
  csd::Transcript transcript;
  std::optional<Answer> stated;
  /// Guided runs only.
  std::optional<logicguide::CertificationVerdict> verdict;

  /// Stated answer backed by a certified verdict for the same answer.
  bool certified() const;
  bool correct() const { return stated && stated != Answer::Unknown && *stated == oracle; }
  bool abstained() const { return !transcript.aborted && (!stated || *stated == Answer::Unknown); }
};

nlohmann::json to_json(const EvalRecord& r);
EvalRecord eval_record_from_json(const nlohmann::json& j);

/// Disjoint outcome counts: correct + wrong + abstained + aborted = total.
struct Counts {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t wrong = 0;
  std::size_t abstained = 0;
  std::size_t aborted = 0;
  std::size_t certified_correct = 0;
  std::size_t certified_wrong = 0;

  void add(const EvalRecord& r);
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Interval {
  double low = 0;
  double high = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct GroupStats {
  Counts counts;
  double accuracy = 0;
  double certified = 0;  // (certified_correct + certified_wrong) / total
  Interval accuracy_ci;
  Interval certified_ci;
  friend bool operator==(const GroupStats&, const GroupStats&) = default;
};

struct EvalReport {
  GroupStats overall;
  std::map<std::string, GroupStats> by_split;
  std::map<std::size_t, GroupStats> by_hops;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

nlohmann::json to_json(const EvalReport& r);
/// Plain-text table, one row per group.
std::string format_report(const EvalReport& r);

/// Percentile bootstrap of the mean of 0/1 outcomes. Empty input gives [0, 0].
Interval bootstrap_interval(const std::vector<bool>& outcomes, std::size_t resamples, std::uint64_t seed,
                            double level = 0.95);

struct ScoreOptions {
  std::size_t resamples = 10000;
  std::uint64_t seed = 0;
};

/// Aggregates records; the result does not depend on record order.
EvalReport score(std::vector<EvalRecord> records, const ScoreOptions& options = {});

/// Builds the model that decodes problem `index` of the dataset.
using ModelFactory = std::function<std::unique_ptr<lm::LanguageModel>(const Problem& p, std::size_t index)>;

struct EvalOptions {
  bool guided = true;
  std::size_t max_violations = 20;
  std::vector<Problem> exemplars;
  logicguide::LogicGuideOptions guide;
  std::size_t workers = 1;
  ScoreOptions scoring;
};

struct EvalResult {
  EvalReport report;
  std::vector<EvalRecord> records;  // dataset order
};

/// Decodes one problem; decoding failures come back as aborted transcripts.
EvalRecord decode_problem(const Problem& p, lm::LanguageModel& model, const lm::Tokenizer& tokenizer,
                          const EvalOptions& options);

/// Throws std::invalid_argument on an empty dataset.
EvalResult evaluate(const std::vector<Problem>& dataset, const ModelFactory& factory,
                    std::shared_ptr<const lm::Tokenizer> tokenizer, const EvalOptions& options = {});

}  // namespace certguide::harness
