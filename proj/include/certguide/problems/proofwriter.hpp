// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "certguide/problems/problem.hpp"

namespace certguide::problems {

/**
 * Reads one ProofWriter representation, a triple ("bald eagle" "is" "big" "+")
 * or a rule (((triple) ...) -> triple), into kernel syntax. "is" triples
 * become unary literals, other verbs binary relations; "someone" and
 * "something" become 'x; names are lowercased with spaces as underscores;
 * "-" negates. Throws FormatError.
 */
std::string formalize_proofwriter(std::string_view representation);

struct ImportReport {
  std::vector<Problem> problems;
  std::size_t skipped_unknown = 0;   // stated answer Unknown or missing
  std::size_t skipped_mismatch = 0;  // answer needs the closed-world assumption
};

/**
 * Accepts either a single question
 *   {"id", "theory": [{"text", "representation"}], "question": {"text",
 *    "representation"}, "answer"}
 * or a full theory record with "triples", "rules" and "questions" maps,
 * yielding one problem per question. Answers may be booleans or strings.
 */
ImportReport import_proofwriter_record(const nlohmann::json& record);
/// One record per line.
ImportReport import_proofwriter(std::string_view jsonl);
ImportReport load_proofwriter(const std::filesystem::path& path);

}  // namespace certguide::problems
