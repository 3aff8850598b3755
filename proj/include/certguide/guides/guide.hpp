// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "certguide/csd/engine.hpp"
#include "certguide/lexical/regular_set.hpp"

namespace certguide::guides {

using csd::History;
using lexical::RegularSet;

/// Maps the contents of earlier blocks to the set of allowed next contents.
/// The empty set means no block may be opened.
class Guide {
 public:
  virtual ~Guide() = default;
  virtual RegularSet allowed(const History& history) const = 0;
  virtual std::unique_ptr<Guide> clone() const = 0;
};

class FunctionGuide : public Guide {
 public:
  using Fn = std::function<RegularSet(const History&)>;
  explicit FunctionGuide(Fn fn) : fn_(std::move(fn)) {}
  RegularSet allowed(const History& history) const override { return fn_(history); }
  std::unique_ptr<Guide> clone() const override { return std::make_unique<FunctionGuide>(*this); }

 private:
  Fn fn_;
};

/// Completion engine that asks a guide for the language of every block.
class GuidedEngine : public csd::CompletionEngine {
 public:
  GuidedEngine(std::unique_ptr<Guide> guide, std::string open, std::string close);
  GuidedEngine(const GuidedEngine& other);
  GuidedEngine& operator=(const GuidedEngine& other);
  GuidedEngine(GuidedEngine&&) noexcept = default;
  GuidedEngine& operator=(GuidedEngine&&) noexcept = default;

  csd::Region region(std::size_t index, const History& completed_blocks) const override;
  std::unique_ptr<csd::CompletionEngine> clone() const override;

  const Guide& guide() const { return *guide_; }
  const std::string& open() const { return open_; }
  const std::string& close() const { return close_; }

 private:
  std::unique_ptr<Guide> guide_;
  std::string open_;
  std::string close_;
};

inline constexpr const char* kOpen = "[[";
inline constexpr const char* kClose = "]]";

/// Throws std::invalid_argument for empty or equal delimiters.
GuidedEngine lift(std::unique_ptr<Guide> guide, std::string open = kOpen, std::string close = kClose);

/// "set:K=V" blocks are always allowed (K an identifier, V any bytes without
/// the first byte of `close`); "get:K=V" only for the last value stored
/// under K.
std::unique_ptr<Guide> memory_guide(std::string close = kClose);

/// Exactly the given sentences. Throws std::invalid_argument when empty.
std::unique_ptr<Guide> quote_guide(std::vector<std::string> sentences);

}  // namespace certguide::guides
