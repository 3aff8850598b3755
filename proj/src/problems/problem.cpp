// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/problems/problem.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace certguide::problems {

std::string to_string(Ontology o) {
  switch (o) {
    case Ontology::TrueOnt:
      return "true";
    case Ontology::FalseOnt:
      return "false";
    case Ontology::Fictional:
      return "fictional";
    case Ontology::Deontic:
      return "deontic";
  }
  return "fictional";
}

std::optional<Ontology> parse_ontology(std::string_view s) {
  for (auto o : {Ontology::TrueOnt, Ontology::FalseOnt, Ontology::Fictional, Ontology::Deontic}) {
    if (s == to_string(o)) return o;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> payloads(const History& theory, logicguide::ActionKind kind) {
  std::vector<std::string> out;
  for (const auto& b : theory) {
    auto block = logicguide::parse_action_block(b);
    if (block && block->kind == kind) out.push_back(block->payload);
  }
  return out;
}

}  // namespace

std::vector<std::string> Problem::declarations() const {
  std::vector<std::string> out;
  for (const auto& b : theory) {
    auto block = logicguide::parse_action_block(b);
    if (!block) continue;
    auto k = block->kind;
    if (k == logicguide::ActionKind::Object || k == logicguide::ActionKind::Prop ||
        k == logicguide::ActionKind::Relation) {
      out.push_back(b);
    }
  }
  return out;
}

std::vector<std::string> Problem::axioms() const { return payloads(theory, logicguide::ActionKind::Axiom); }

std::string Problem::goal() const {
  auto goals = payloads(theory, logicguide::ActionKind::Goal);
  return goals.empty() ? std::string() : goals.back();
}

logic::TheoryState load_ground_truth(const History& theory) {
  auto replayed = logicguide::replay(theory);
  if (!replayed.rejected.empty()) {
    const auto& r = replayed.rejected.front();
    throw logic::LogicError("ground truth block " + std::to_string(r.block) + " rejected: " + r.reason);
  }
  return std::move(replayed.state);
}

Answer oracle_answer(const logic::TheoryState& state) {
  if (!state.goal()) throw logic::GoalUnset();
  return logic::to_answer(logic::check_goal(logic::close_theory(state)));
}

Answer oracle_answer(const History& theory) { return oracle_answer(load_ground_truth(theory)); }

std::optional<std::size_t> shortest_hops(const History& theory) {
  auto state = load_ground_truth(theory);
  if (!state.goal()) throw logic::GoalUnset();
  auto levels = logic::derivation_levels(state);
  std::optional<std::size_t> best;
  for (const auto& l : {*state.goal(), state.goal()->complement()}) {
    auto it = levels.find(logic::to_string(l));
    if (it != levels.end() && (!best || it->second < *best)) best = it->second;
  }
  return best;
}

History without_axioms(const Problem& p, const std::vector<std::size_t>& drop) {
  History out;
  std::size_t axiom = 0;
  for (const auto& b : p.theory) {
    auto block = logicguide::parse_action_block(b);
    if (block && block->kind == logicguide::ActionKind::Axiom) {
      bool skip = std::find(drop.begin(), drop.end(), axiom) != drop.end();
      ++axiom;
      if (skip) continue;
    }
    out.push_back(b);
  }
  return out;
}

nlohmann::json to_json(const Problem& p) {
  nlohmann::json j;
  j["id"] = p.id;
  j["ontology"] = to_string(p.ontology);
  j["context"] = p.context;
  j["question"] = p.question;
  j["answer"] = logic::to_string(p.answer);
  j["hops"] = p.hops;
  j["theory"] = p.theory;
  j["distractors"] = p.distractors;
  return j;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  if (!j.is_object()) throw FormatError("record is not an object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field `") + name + "`");
  return *it;
}

std::string string_field(const nlohmann::json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) throw FormatError(std::string("field `") + name + "` must be a string");
  return v.get<std::string>();
}

std::vector<std::string> strings_field(const nlohmann::json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_array()) throw FormatError(std::string("field `") + name + "` must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw FormatError(std::string("field `") + name + "` must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Problem problem_from_json(const nlohmann::json& j) {
  Problem p;
  p.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : std::string();
  auto onto = parse_ontology(string_field(j, "ontology"));
  if (!onto) throw FormatError("unknown ontology `" + j["ontology"].get<std::string>() + "`");
  p.ontology = *onto;
  p.context = strings_field(j, "context");
  p.question = string_field(j, "question");
  auto answer = logic::parse_answer(string_field(j, "answer"));
  if (!answer) throw FormatError("answer must be True, False or Unknown");
  p.answer = *answer;
  const auto& hops = field(j, "hops");
  if (!hops.is_number_unsigned()) throw FormatError("field `hops` must be a natural number");
  p.hops = hops.get<std::size_t>();
  p.theory = strings_field(j, "theory");
  for (const auto& b : p.theory) {
    if (!logicguide::parse_action_block(b)) throw FormatError("theory entry `" + b + "` is not an action block");
  }
  if (j.contains("distractors")) {
    const auto& d = j["distractors"];
    if (!d.is_array()) throw FormatError("field `distractors` must be a list");
    for (const auto& e : d) {
      if (!e.is_number_unsigned()) throw FormatError("field `distractors` must hold indices");
      p.distractors.push_back(e.get<std::size_t>());
    }
  }
  return p;
}

std::vector<Problem> parse_dataset(std::string_view text) {
  std::vector<Problem> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(problem_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Problem> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

std::string format_dataset(const std::vector<Problem>& problems) {
  std::string out;
  for (const auto& p : problems) out += to_json(p).dump() + "\n";
  return out;
}

void save_dataset(const std::filesystem::path& path, const std::vector<Problem>& problems) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << format_dataset(problems);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair.
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Answer> balanced_answers(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0xBA1A));
  std::vector<Answer> out(count, Answer::False);
  std::size_t trues = count / 2 + ((count % 2 == 1 && rng() % 2 == 0) ? 1 : 0);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(trues), Answer::True);
  for (std::size_t i = count; i > 1; --i) std::swap(out[i - 1], out[rng() % i]);
  return out;
}

}  // namespace certguide::problems
