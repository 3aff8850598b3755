// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "certguide/harness/evaluate.hpp"
#include "certguide/harness/scripts.hpp"
#include "certguide/harness/star.hpp"
#include "certguide/lm/scripted.hpp"
#include "certguide/problems/deontic.hpp"
#include "certguide/problems/ontology.hpp"

using namespace certguide;
using namespace certguide::harness;
using logic::Answer;
using problems::Ontology;

namespace {

std::shared_ptr<const lm::Tokenizer> tokenizer() {
  static auto tok = lm::make_tokenizer(lm::default_vocabulary());
  return tok;
}

ModelFactory scripted(std::function<std::string(const Problem&, std::size_t)> script,
                      lm::Policy policy = lm::Policy::cooperative()) {
  return [script, policy](const Problem& p, std::size_t i) -> std::unique_ptr<lm::LanguageModel> {
    return std::make_unique<lm::ScriptedLM>(tokenizer(), std::vector<std::string>{script(p, i)},
                                            lm::ScriptOptions{policy});
  };
}

// 40 problems per hop count, splits rotating.
std::vector<Problem> mixed_dataset(std::size_t per_hop, std::uint64_t seed) {
  const Ontology splits[] = {Ontology::TrueOnt, Ontology::FalseOnt, Ontology::Fictional};
  std::vector<Problem> out;
  for (std::size_t h = 1; h <= 5; ++h) {
    for (std::size_t i = 0; i < per_hop; ++i) {
      auto s = problems::derive_seed(seed, h * 1000 + i);
      out.push_back(problems::generate_ontology_problem(s, h, splits[(h + i) % 3]));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("answer extraction") {
  CHECK(extract_answer("blah\nAnswer: True") == Answer::True);
  CHECK(extract_answer("Answer: False.\n") == Answer::False);
  CHECK(extract_answer("Answer: Unknown") == Answer::Unknown);
  CHECK(extract_answer("Answer: True\nmore\nAnswer: False") == Answer::False);
  CHECK_FALSE(extract_answer("no verdict here").has_value());
  CHECK_FALSE(extract_answer("Answer: maybe").has_value());
  CHECK_FALSE(extract_answer("Answer: True, probably").has_value());
  CHECK_FALSE(extract_answer("Answer:").has_value());
}

TEST_CASE("minimal proofs") {
  Problem wren;
  wren.theory = logicguide::load_theory(std::string(CERTGUIDE_TEST_DATA) + "/wren.theory");
  auto proof = minimal_proof(wren);
  REQUIRE(proof.size() == 1);
  CHECK(logic::to_string(proof[0]) == "(orange wren)");

  Problem alex;
  alex.theory = logicguide::load_theory(std::string(CERTGUIDE_TEST_DATA) + "/alex.theory");
  auto ap = minimal_proof(alex);
  REQUIRE_FALSE(ap.empty());
  CHECK(logic::to_string(ap.back()) == "(bitter alex)");

  for (const auto& p : mixed_dataset(10, 5)) {
    auto pr = minimal_proof(p);
    CHECK(pr.size() == p.hops);
    // Each step is available when taken.
    auto replayed = logicguide::replay(p.theory);
    auto state = replayed.state;
    for (const auto& l : pr) CHECK_NOTHROW(logic::assert_fact(state, l));
  }
}

TEST_CASE("perfect formalizer is certified on every problem") {
  auto dataset = mixed_dataset(40, 17);
  REQUIRE(dataset.size() == 200);
  EvalOptions opts;
  opts.exemplars = {problems::generate_ontology_problem(1, 2, Ontology::Fictional)};
  opts.scoring.resamples = 1000;
  auto result = evaluate(dataset, scripted([](const Problem& p, std::size_t) { return perfect_formalizer_script(p); }),
                         tokenizer(), opts);
  const auto& o = result.report.overall;
  CHECK(o.counts.total == 200);
  CHECK(o.accuracy == 1.0);
  CHECK(o.certified == 1.0);
  CHECK(o.counts.certified_correct == 200);
  for (const auto& r : result.records) {
    CHECK(r.transcript.violation_count == 0);
    CHECK(r.prompt.find("Context:") == 0);
  }
  REQUIRE(result.report.by_hops.size() == 5);
  for (const auto& [h, g] : result.report.by_hops) CHECK(g.counts.total == 40);
  CHECK(result.report.by_split.size() == 3);
}

TEST_CASE("deontic problems are certified under the perfect formalizer") {
  auto dataset = problems::generate_deontic_split(20, 8);
  EvalOptions opts;
  opts.scoring.resamples = 100;
  auto result = evaluate(dataset, scripted([](const Problem& p, std::size_t) { return perfect_formalizer_script(p); }),
                         tokenizer(), opts);
  CHECK(result.report.overall.accuracy == 1.0);
  CHECK(result.report.overall.certified == 1.0);
}

TEST_CASE("random answers without guidance sit at chance") {
  auto dataset = problems::generate_ontology_split(Ontology::Fictional, 400, 3);
  EvalOptions opts;
  opts.guided = false;
  auto factory = scripted([](const Problem&, std::size_t i) {
    std::mt19937_64 rng(problems::derive_seed(99, i));
    return answer_only_script(rng() % 2 ? Answer::True : Answer::False);
  });
  auto result = evaluate(dataset, factory, tokenizer(), opts);
  const auto& o = result.report.overall;
  CHECK(o.counts.correct + o.counts.wrong == 400);
  CHECK(o.certified == 0.0);
  CHECK(o.accuracy_ci.low <= 0.5);
  CHECK(o.accuracy_ci.high >= 0.5);
  CHECK(o.accuracy_ci.low <= o.accuracy);
  CHECK(o.accuracy <= o.accuracy_ci.high);
  for (const auto& r : result.records) CHECK_FALSE(r.verdict.has_value());
}

TEST_CASE("apologetic models") {
  auto dataset = mixed_dataset(2, 21);
  // Split every block across two messages so each one forces a fresh message.
  auto split_script = [](const Problem& p) {
    auto s = perfect_formalizer_script(p);
    std::vector<std::string> messages;
    std::size_t start = 0;
    for (auto pos = s.find("[[infer:"); pos != std::string::npos; pos = s.find("[[infer:", pos + 1)) {
      messages.push_back(s.substr(start, pos + 9 - start));
      start = pos + 9;
    }
    messages.push_back(s.substr(start));
    return messages;
  };
  // Every block interrupted right after it opens.
  auto shredded_script = [](const Problem& p) {
    auto s = perfect_formalizer_script(p);
    std::vector<std::string> messages;
    std::size_t start = 0;
    for (auto pos = s.find("[["); pos != std::string::npos; pos = s.find("[[", pos + 1)) {
      messages.push_back(s.substr(start, pos + 2 - start));
      start = pos + 2;
    }
    messages.push_back(s.substr(start));
    return messages;
  };
  auto factory = [&](std::optional<std::size_t> k) -> ModelFactory {
    return [=](const Problem& p, std::size_t) {
      return lm::chat_adapter(std::make_unique<lm::ScriptedLM>(tokenizer(), k ? split_script(p) : shredded_script(p),
                                                               lm::ScriptOptions{lm::Policy::apologetic(k)}));
    };
  };
  EvalOptions opts;
  opts.scoring.resamples = 10;
  for (std::size_t k = 0; k <= 5; ++k) {
    auto result = evaluate(dataset, factory(k), tokenizer(), opts);
    CHECK(result.report.overall.counts.aborted == 0);
    for (const auto& r : result.records) {
      CHECK(r.transcript.violation_count >= 1 + k);
      CHECK(r.certified());
      CHECK_NOTHROW(logicguide::replay(r.transcript.block_contents(), {}));
    }
  }
  auto endless = evaluate(dataset, factory(std::nullopt), tokenizer(), opts);
  CHECK(endless.report.overall.counts.aborted == dataset.size());
  for (const auto& r : endless.records) CHECK(r.transcript.violation_count == 20);
}

TEST_CASE("strict filtering drops accidental correctness") {
  auto dataset = mixed_dataset(4, 33);
  EvalOptions opts;
  opts.scoring.resamples = 10;
  auto perfect = evaluate(dataset, scripted([](const Problem& p, std::size_t) { return perfect_formalizer_script(p); }),
                          tokenizer(), opts);
  auto guess = evaluate(dataset, scripted([](const Problem& p, std::size_t) {
                          return guess_after_nothing_script(p, Answer::True);
                        }),
                        tokenizer(), opts);
  auto wrong = evaluate(dataset, scripted([](const Problem& p, std::size_t) {
                          auto s = perfect_formalizer_script(p);
                          bool t = s.ends_with("True");
                          return s.substr(0, s.rfind("Answer:")) + "Answer: " + (t ? "False" : "True");
                        }),
                        tokenizer(), opts);
  opts.guided = false;
  auto unguided = evaluate(dataset, scripted([](const Problem& p, std::size_t) { return answer_only_script(p.answer); }),
                           tokenizer(), opts);

  std::vector<EvalRecord> pool;
  for (const auto* r : {&perfect, &guess, &wrong, &unguided}) pool.insert(pool.end(), r->records.begin(), r->records.end());

  auto strict = star_filter(pool, TrainingMode::StrictGuided);
  auto guided = star_filter(pool, TrainingMode::Guided);
  auto plain = star_filter(pool, TrainingMode::Unguided);
  CHECK(strict.size() == dataset.size());
  CHECK(guided.size() > strict.size());
  CHECK(plain.size() == dataset.size());
  for (const auto& s : strict) CHECK(std::find(guided.begin(), guided.end(),
                                               TrainingRecord{s.prompt, s.completion, TrainingMode::Guided,
                                                              s.problem_id}) != guided.end());
  for (const auto& r : pool) {
    bool kept = std::any_of(strict.begin(), strict.end(), [&](const TrainingRecord& s) {
      return s.problem_id == r.problem_id && s.completion == r.transcript.full_text;
    });
    if (!kept) continue;
    REQUIRE(r.verdict.has_value());
    CHECK(r.verdict->certified);
    CHECK(r.verdict->answer == r.oracle);
  }
  // Guesses that happen to be right are kept only by the plain guided filter.
  std::size_t lucky = 0;
  for (const auto& r : guess.records) {
    if (r.correct()) {
      ++lucky;
      CHECK_FALSE(r.certified());
      CHECK(r.verdict->reason == logicguide::CertificationReason::InferencesExhausted);
    }
  }
  CHECK(lucky >= 1);
  CHECK(star_filter(wrong.records, TrainingMode::Guided).empty());
  CHECK(star_filter(wrong.records, TrainingMode::StrictGuided).empty());
  CHECK(wrong.report.overall.counts.wrong == dataset.size());
}

TEST_CASE("reports are reproducible and order independent") {
  auto dataset = mixed_dataset(6, 41);
  auto factory = scripted([](const Problem& p, std::size_t i) {
    return i % 3 == 0 ? guess_after_nothing_script(p, Answer::False) : perfect_formalizer_script(p);
  });
  EvalOptions opts;
  opts.scoring.resamples = 2000;
  auto a = evaluate(dataset, factory, tokenizer(), opts);
  auto b = evaluate(dataset, factory, tokenizer(), opts);
  CHECK(a.report == b.report);
  opts.workers = 4;
  auto c = evaluate(dataset, factory, tokenizer(), opts);
  CHECK(a.report == c.report);
  for (std::size_t i = 0; i < dataset.size(); ++i) CHECK(to_json(a.records[i]) == to_json(c.records[i]));

  auto shuffled = a.records;
  std::mt19937_64 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(score(shuffled, opts.scoring) == a.report);

  for (const auto& g : {a.report.overall}) {
    const auto& n = g.counts;
    CHECK(n.correct + n.wrong + n.abstained + n.aborted == n.total);
    CHECK(g.accuracy >= 0.0);
    CHECK(g.accuracy <= 1.0);
    CHECK(g.accuracy_ci.low <= g.accuracy_ci.high);
  }
}

TEST_CASE("bootstrap intervals") {
  CHECK(bootstrap_interval({}, 100, 1) == Interval{0, 0});
  CHECK(bootstrap_interval(std::vector<bool>(50, true), 1000, 1) == Interval{1, 1});
  std::vector<bool> half(200);
  for (std::size_t i = 0; i < half.size(); i += 2) half[i] = true;
  auto ci = bootstrap_interval(half, 10000, 7);
  CHECK(ci.low < 0.5);
  CHECK(ci.high > 0.5);
  // Normal approximation: 1.96 * sqrt(0.25 / 200) ~= 0.069.
  CHECK(ci.high - ci.low == doctest::Approx(0.139).epsilon(0.15));
  CHECK(bootstrap_interval(half, 10000, 7) == ci);
}

TEST_CASE("eval records round trip through json") {
  auto dataset = mixed_dataset(1, 2);
  EvalOptions opts;
  opts.scoring.resamples = 10;
  auto result = evaluate(dataset, scripted([](const Problem& p, std::size_t) { return perfect_formalizer_script(p); }),
                         tokenizer(), opts);
  for (const auto& r : result.records) {
    auto back = eval_record_from_json(to_json(r));
    CHECK(to_json(back) == to_json(r));
    CHECK(back.certified() == r.certified());
  }
  CHECK_THROWS_AS(eval_record_from_json(nlohmann::json::object()), problems::FormatError);
  CHECK_THROWS_AS(evaluate({}, scripted([](const Problem&, std::size_t) { return std::string(); }), tokenizer()),
                  std::invalid_argument);
  CHECK(parse_training_mode("strict") == TrainingMode::StrictGuided);
  CHECK_FALSE(parse_training_mode("loose").has_value());
}
