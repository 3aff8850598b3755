// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/guides/guide.hpp"

#include <map>
#include <stdexcept>

namespace certguide::guides {

GuidedEngine::GuidedEngine(std::unique_ptr<Guide> guide, std::string open, std::string close)
    : guide_(std::move(guide)), open_(std::move(open)), close_(std::move(close)) {
  if (!guide_) throw std::invalid_argument("guide is null");
  if (open_.empty() || close_.empty()) throw std::invalid_argument("delimiters must be non-empty");
  if (open_ == close_) throw std::invalid_argument("open and close delimiters must differ");
}

GuidedEngine::GuidedEngine(const GuidedEngine& other)
    : guide_(other.guide_->clone()), open_(other.open_), close_(other.close_) {}

GuidedEngine& GuidedEngine::operator=(const GuidedEngine& other) {
  if (this != &other) {
    guide_ = other.guide_->clone();
    open_ = other.open_;
    close_ = other.close_;
  }
  return *this;
}

csd::Region GuidedEngine::region(std::size_t index, const History& completed_blocks) const {
  if (index % 2 == 0) return csd::Region::unconstrained(open_);
  return csd::Region::constrained_by(guide_->allowed(completed_blocks), close_);
}

std::unique_ptr<csd::CompletionEngine> GuidedEngine::clone() const { return std::make_unique<GuidedEngine>(*this); }

GuidedEngine lift(std::unique_ptr<Guide> guide, std::string open, std::string close) {
  return GuidedEngine(std::move(guide), std::move(open), std::move(close));
}

namespace {

RegularSet identifier() {
  lexical::ByteSet head;
  for (int c = 'a'; c <= 'z'; ++c) head.set(c);
  for (int c = 'A'; c <= 'Z'; ++c) head.set(c);
  head.set('_');
  lexical::ByteSet tail = head;
  for (int c = '0'; c <= '9'; ++c) tail.set(c);
  return RegularSet::concat({RegularSet::byte_class(head), RegularSet::star(RegularSet::byte_class(tail))});
}

class MemoryGuide : public Guide {
 public:
  explicit MemoryGuide(std::string close) : close_(std::move(close)) {
    if (close_.empty()) throw std::invalid_argument("close delimiter must be non-empty");
    set_ = RegularSet::concat({RegularSet::literal("set:"), identifier(), RegularSet::literal("="),
                               RegularSet::star(RegularSet::any_except(close_.substr(0, 1)))});
  }

  RegularSet allowed(const History& history) const override {
    std::map<std::string, std::string> store;
    for (const auto& block : history) {
      if (block.rfind("set:", 0) != 0) continue;
      auto eq = block.find('=', 4);
      if (eq == std::string::npos) continue;
      store[block.substr(4, eq - 4)] = block.substr(eq + 1);
    }
    std::vector<std::string> gets;
    for (const auto& [k, v] : store) gets.push_back("get:" + k + "=" + v);
    return RegularSet::alternation({set_, RegularSet::one_of(std::move(gets))});
  }

  std::unique_ptr<Guide> clone() const override { return std::make_unique<MemoryGuide>(*this); }

 private:
  std::string close_;
  RegularSet set_;
};

}  // namespace

std::unique_ptr<Guide> memory_guide(std::string close) { return std::make_unique<MemoryGuide>(std::move(close)); }

std::unique_ptr<Guide> quote_guide(std::vector<std::string> sentences) {
  if (sentences.empty()) throw std::invalid_argument("quote source is empty");
  RegularSet set = RegularSet::one_of(std::move(sentences));
  return std::make_unique<FunctionGuide>([set](const History&) { return set; });
}

}  // namespace certguide::guides
