// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/harness/star.hpp"

namespace certguide::harness {

std::string to_string(TrainingMode m) {
  switch (m) {
    case TrainingMode::Unguided:
      return "unguided";
    case TrainingMode::Guided:
      return "guided";
    case TrainingMode::StrictGuided:
      return "strict";
  }
  return "guided";
}

std::optional<TrainingMode> parse_training_mode(std::string_view s) {
  for (auto m : {TrainingMode::Unguided, TrainingMode::Guided, TrainingMode::StrictGuided}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

nlohmann::json to_json(const TrainingRecord& r) {
  nlohmann::json j;
  j["problem_id"] = r.problem_id;
  j["mode"] = to_string(r.mode);
  csd::put_bytes(j, "prompt", r.prompt);
  csd::put_bytes(j, "completion", r.completion);
  return j;
}

std::vector<TrainingRecord> star_filter(const std::vector<EvalRecord>& records, TrainingMode mode) {
  std::vector<TrainingRecord> out;
  for (const auto& r : records) {
    if (r.transcript.aborted || !r.correct()) continue;
    if (r.guided != (mode != TrainingMode::Unguided)) continue;
    if (mode == TrainingMode::StrictGuided && !r.certified()) continue;
    out.push_back({r.prompt, r.transcript.full_text, mode, r.problem_id});
  }
  return out;
}

}  // namespace certguide::harness
