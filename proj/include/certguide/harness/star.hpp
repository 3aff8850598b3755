// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "certguide/harness/evaluate.hpp"

namespace certguide::harness {

enum class TrainingMode { Unguided, Guided, StrictGuided };

/// "unguided", "guided", "strict".
std::string to_string(TrainingMode m);
std::optional<TrainingMode> parse_training_mode(std::string_view s);

struct TrainingRecord {
  std::string prompt;
  std::string completion;
  TrainingMode mode = TrainingMode::Guided;
  std::string problem_id;
  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

nlohmann::json to_json(const TrainingRecord& r);

/**
 * Unguided keeps unguided records whose stated answer is correct; Guided the
 * same for guided records; StrictGuided only guided records that are also
 * certified. Aborted records are never kept.
 */
std::vector<TrainingRecord> star_filter(const std::vector<EvalRecord>& records, TrainingMode mode);

}  // namespace certguide::harness
