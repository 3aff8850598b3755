// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "certguide/lexical/regular_set.hpp"

namespace certguide::csd {

using History = std::vector<std::string>;

struct Region {
  enum class Mode { Unconstrained, Constrained };

  Mode mode = Mode::Unconstrained;
  lexical::RegularSet language;  // meaningful for Constrained only
  std::string terminator;

  bool constrained() const { return mode == Mode::Constrained; }

  static Region unconstrained(std::string terminator) {
    return {Mode::Unconstrained, lexical::RegularSet::empty(), std::move(terminator)};
  }
  static Region constrained_by(lexical::RegularSet language, std::string terminator) {
    return {Mode::Constrained, std::move(language), std::move(terminator)};
  }
};

/**
 * Dictates the language of each region of a transcript. A region ends at the
 * first occurrence of its terminator; the engine is then asked for the next
 * one, given the contents of all constrained regions completed so far.
 *
 * Engines may cache internally and are therefore confined to one session;
 * `clone()` gives independent copies for concurrent use.
 */
class CompletionEngine {
 public:
  virtual ~CompletionEngine() = default;
  virtual Region region(std::size_t index, const History& completed_blocks) const = 0;
  virtual std::unique_ptr<CompletionEngine> clone() const = 0;
};

/// Even regions are free text closed by `open`; odd regions are blocks whose
/// language is `language(history)` closed by `close`.
class DelimitedEngine : public CompletionEngine {
 public:
  using LanguageFn = std::function<lexical::RegularSet(const History&)>;

  DelimitedEngine(std::string open, std::string close, LanguageFn language);

  Region region(std::size_t index, const History& completed_blocks) const override;
  std::unique_ptr<CompletionEngine> clone() const override;

  const std::string& open() const { return open_; }
  const std::string& close() const { return close_; }

 private:
  std::string open_;
  std::string close_;
  LanguageFn language_;
};

/// Region directive in force after `prefix`, replaying it from the start.
/// Throws std::invalid_argument when `prefix` already left the language.
Region region_at(const CompletionEngine& engine, std::string_view prefix);

}  // namespace certguide::csd
