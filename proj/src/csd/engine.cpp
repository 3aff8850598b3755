// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/csd/engine.hpp"

#include <stdexcept>

#include "certguide/csd/cursor.hpp"

namespace certguide::csd {

DelimitedEngine::DelimitedEngine(std::string open, std::string close, LanguageFn language)
    : open_(std::move(open)), close_(std::move(close)), language_(std::move(language)) {
  if (open_.empty() || close_.empty()) throw std::invalid_argument("delimiters must be non-empty");
  if (open_ == close_) throw std::invalid_argument("open and close delimiters must differ");
}

Region DelimitedEngine::region(std::size_t index, const History& completed_blocks) const {
  if (index % 2 == 0) return Region::unconstrained(open_);
  return Region::constrained_by(language_(completed_blocks), close_);
}

std::unique_ptr<CompletionEngine> DelimitedEngine::clone() const {
  return std::make_unique<DelimitedEngine>(*this);
}

Region region_at(const CompletionEngine& engine, std::string_view prefix) {
  RegionCursor cursor(engine);
  if (cursor.feed(prefix) != prefix.size()) {
    throw std::invalid_argument("prefix is not viable under this engine");
  }
  return cursor.region();
}

}  // namespace certguide::csd
