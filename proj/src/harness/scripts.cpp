// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/harness/scripts.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace certguide::harness {

std::optional<Answer> extract_answer(std::string_view text) {
  constexpr std::string_view kKey = "Answer:";
  auto pos = text.rfind(kKey);
  if (pos == std::string_view::npos) return std::nullopt;
  auto rest = text.substr(pos + kKey.size());
  auto begin = rest.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return std::nullopt;
  rest = rest.substr(begin);
  auto end = rest.find_first_of(" \t\r\n.");
  auto word = rest.substr(0, end);
  // Nothing but whitespace may follow on the same line.
  if (end != std::string_view::npos) {
    auto tail = rest.substr(end);
    auto eol = tail.find('\n');
    auto line = tail.substr(0, eol);
    if (!line.empty() && line.front() == '.') line.remove_prefix(1);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) return std::nullopt;
  }
  return logic::parse_answer(word);
}

std::vector<logic::Literal> minimal_proof(const Problem& p) {
  auto state = problems::load_ground_truth(p.theory);
  if (!state.goal()) throw logic::GoalUnset();
  auto closed = logic::close_theory(state);

  // First (hence shallowest) justification of every fact.
  std::map<std::string, const logic::Derivation*> first;
  for (const auto& d : closed.derivation_log()) first.emplace(logic::to_string(d.fact), &d);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < closed.derivation_log().size(); ++i) {
    position.emplace(logic::to_string(closed.derivation_log()[i].fact), i);
  }

  auto levels = logic::derivation_levels(state);
  std::optional<logic::Literal> target;
  for (const auto& l : {*state.goal(), state.goal()->complement()}) {
    auto it = levels.find(logic::to_string(l));
    if (it != levels.end() && (!target || it->second < levels.at(logic::to_string(*target)))) target = l;
  }
  if (!target) return {};

  std::set<std::size_t> needed;
  std::vector<logic::Literal> stack{*target};
  while (!stack.empty()) {
    auto l = stack.back();
    stack.pop_back();
    auto key = logic::to_string(l);
    auto it = first.find(key);
    if (it == first.end() || !it->second->axiom) continue;  // assumption
    if (!needed.insert(position.at(key)).second) continue;
    const auto& rule = closed.axioms()[*it->second->axiom];
    for (const auto& a : rule.antecedents) stack.push_back(logic::substitute(a, it->second->substitution));
  }
  std::vector<logic::Literal> out;
  for (auto i : needed) out.push_back(closed.derivation_log()[i].fact);
  return out;
}

std::string formalization_text(const Problem& p) {
  std::string out = "Formalized context:";
  std::string goal;
  for (const auto& b : p.theory) {
    if (b.rfind("goal:", 0) == 0) {
      goal = b;
      continue;
    }
    out += " [[" + b + "]]";
  }
  out += "\nFormalized goal: [[" + goal + "]]";
  return out;
}

namespace {

std::string answer_word(Answer a) { return logic::to_string(a); }

}  // namespace

std::string perfect_formalizer_script(const Problem& p) {
  auto proof = minimal_proof(p);
  std::string out = formalization_text(p) + "\nReasoning:";
  if (proof.empty()) return out + " [[infer:nothing]]\nAnswer: Unknown";
  for (const auto& l : proof) out += " [[infer:" + logic::to_string(l) + "]]";
  auto goal = logic::parse_literal(p.goal());
  Answer a = logic::to_string(proof.back()) == logic::to_string(goal) ? Answer::True : Answer::False;
  return out + "\nAnswer: " + answer_word(a);
}

std::string guess_after_nothing_script(const Problem& p, Answer guess) {
  return formalization_text(p) + "\nReasoning: [[infer:nothing]]\nAnswer: " + answer_word(guess);
}

std::string answer_only_script(Answer a) { return "Answer: " + answer_word(a); }

std::string problem_text(const Problem& p) {
  std::string out = "Context:";
  for (const auto& s : p.context) out += " " + s;
  out += "\nQuestion: " + p.question + "\n";
  return out;
}

std::string build_prompt(const Problem& p, const std::vector<Problem>& exemplars) {
  std::string out;
  for (const auto& e : exemplars) out += problem_text(e) + perfect_formalizer_script(e) + "\n\n";
  return out + problem_text(p);
}

}  // namespace certguide::harness
