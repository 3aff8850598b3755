// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "certguide/csd/cursor.hpp"
#include "certguide/csd/sampler.hpp"
#include "certguide/csd/validate.hpp"
#include "certguide/harness/evaluate.hpp"
#include "certguide/harness/scripts.hpp"
#include "certguide/harness/star.hpp"
#include "certguide/lm/scripted.hpp"
#include "certguide/logicguide/logic_guide.hpp"
#include "certguide/problems/deontic.hpp"
#include "certguide/problems/ontology.hpp"
#include "support/ground_oracle.hpp"

using namespace certguide;
using harness::EvalOptions;
using harness::ModelFactory;
using logic::Answer;
using problems::Ontology;
using problems::Problem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::shared_ptr<const lm::Tokenizer> tokenizer() {
  static auto tok = lm::make_tokenizer(lm::default_vocabulary());
  return tok;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

ModelFactory scripted(std::function<std::string(const Problem&)> script) {
  return [script](const Problem& p, std::size_t) -> std::unique_ptr<lm::LanguageModel> {
    return std::make_unique<lm::ScriptedLM>(tokenizer(), std::vector<std::string>{script(p)});
  };
}

std::vector<Problem> mixed_dataset(std::size_t per_hop, std::uint64_t seed) {
  const Ontology splits[] = {Ontology::TrueOnt, Ontology::FalseOnt, Ontology::Fictional};
  std::vector<Problem> out;
  for (std::size_t h = 1; h <= 5; ++h) {
    for (std::size_t i = 0; i < per_hop; ++i) {
      out.push_back(problems::generate_ontology_problem(problems::derive_seed(seed, h * 1000 + i), h, splits[(h + i) % 3]));
    }
  }
  return out;
}

std::set<std::string> strings(const std::vector<logic::Literal>& ls) {
  std::set<std::string> out;
  for (const auto& l : ls) out.insert(logic::to_string(l));
  return out;
}

// Guided decoding of random theories. The script states the theory and then
// a mix of step inferences, deeper consequences, arbitrary literals and
// "nothing"; afterwards every infer block must have been a one-step
// consequence of what preceded it, checked both against the kernel and
// against naive ground evaluation.
Outcome guide_soundness() {
  auto t0 = Clock::now();
  auto tok = tokenizer();
  auto engine = logicguide::logic_engine();
  std::mt19937_64 rng(2601);
  std::size_t infers = 0, exceptions = 0, violations = 0, aborted = 0, theories = 1000;
  for (std::size_t n = 0; n < theories; ++n) {
    auto rt = testing::random_horn_theory(rng, 12, 6);
    std::string script;
    for (const auto& f : rt.facts) script += "[[axiom:" + logic::to_string(f) + "]]\n";
    for (const auto& r : rt.rules) script += "[[axiom:" + logic::to_string(r) + "]]\n";

    auto deep = testing::brute_force_closure(rt.rules, rt.facts);
    std::vector<std::string> pool(deep.begin(), deep.end());
    auto noise = testing::random_horn_theory(rng, 1, 6);
    for (const auto& f : noise.facts) pool.push_back(logic::to_string(f));
    pool.push_back(logicguide::kNothing);
    std::size_t count = 1 + rng() % 8;
    for (std::size_t i = 0; i < count; ++i) script += "[[infer:" + pool[rng() % pool.size()] + "]]\n";
    script += "Answer: Unknown";

    lm::ScriptedLM model(tok, {script});
    csd::SampleOptions opts;
    opts.max_violations = 400;  // keep steering so later blocks are exercised too
    auto t = csd::constrained_sample(model, engine, tok->trie(), "", opts);
    violations += t.violation_count;
    if (t.aborted) ++aborted;

    std::vector<logic::Rule> rules;
    std::vector<logic::Literal> facts;
    logicguide::Replayer replayer;
    for (const auto& content : t.block_contents()) {
      auto block = logicguide::parse_action_block(content);
      if (!block) {
        ++exceptions;
        break;
      }
      if (block->kind == logicguide::ActionKind::Infer) {
        ++infers;
        if (block->payload != logicguide::kNothing) {
          auto kernel = strings(logic::step_inferences(replayer.result().state));
          std::set<std::string> naive;
          for (const auto& [lit, round] : testing::brute_force_rounds(rules, facts)) {
            if (round == 1) naive.insert(lit);
          }
          if (!kernel.count(block->payload) || !naive.count(block->payload)) ++exceptions;
          facts.push_back(std::get<logic::Literal>(logic::parse_sexpr(block->payload)));
        }
      } else if (block->kind == logicguide::ActionKind::Axiom) {
        auto parsed = logic::parse_sexpr(block->payload);
        if (auto* r = std::get_if<logic::Rule>(&parsed)) rules.push_back(*r);
        if (auto* l = std::get_if<logic::Literal>(&parsed)) facts.push_back(*l);
      }
      try {
        replayer.apply(content);
      } catch (const std::exception&) {
        ++exceptions;
        break;
      }
    }
  }
  double s = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu theories, %zu infer blocks, %zu violations, %zu aborted, %zu exceptions, %.1f s",
                theories, infers, violations, aborted, exceptions, s);
  return {exceptions == 0 && infers > 0 && s <= 60.0, buf};
}

Outcome oracle_equivalence() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2602);
  std::size_t theories = 600, mismatches = 0, facts = 0;
  for (std::size_t n = 0; n < theories; ++n) {
    auto rt = testing::random_horn_theory(rng, 12, 6);
    logic::TheoryState state;
    for (const auto& f : rt.facts) state.assume(f);
    for (const auto& r : rt.rules) state.add_axiom(r);
    auto got = strings(logic::closure(state));
    auto want = testing::brute_force_closure(rt.rules, rt.facts);
    facts += want.size();
    if (got != want) ++mismatches;
  }
  double s = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu theories, %zu derived facts, %zu mismatches, %.1f s", theories, facts,
                mismatches, s);
  return {mismatches == 0 && s <= 30.0, buf};
}

std::vector<harness::EvalRecord> g_perfect_records;

Outcome certified_correctness() {
  auto t0 = Clock::now();
  auto dataset = mixed_dataset(40, 2603);
  EvalOptions opts;
  opts.exemplars = {problems::generate_ontology_problem(7, 2, Ontology::Fictional)};
  opts.scoring.resamples = 1000;
  auto result = harness::evaluate(dataset, scripted(harness::perfect_formalizer_script), tokenizer(), opts);
  g_perfect_records = result.records;
  double s = seconds_since(t0);
  const auto& o = result.report.overall;
  bool per_hop = result.report.by_hops.size() == 5;
  for (const auto& [h, g] : result.report.by_hops) per_hop = per_hop && g.counts.total == 40;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu problems over %zu splits, accuracy %.3f, certified %.3f, %.1f s",
                o.counts.total, result.report.by_split.size(), o.accuracy, o.certified, s);
  return {o.counts.total == 200 && per_hop && o.accuracy == 1.0 && o.certified == 1.0 && s <= 120.0, buf};
}

Outcome tokenization_independence() {
  auto tok = tokenizer();
  auto engine = logicguide::logic_engine();
  std::mt19937_64 rng(2604);
  std::size_t texts = 0, ok = 0;
  for (const auto& r : g_perfect_records) {
    if (texts == 100) break;
    const std::string& text = r.transcript.full_text;
    ++texts;
    std::set<std::vector<lexical::TokenId>> seen;
    for (std::size_t tries = 0; seen.size() < 5 && tries < 100; ++tries) seen.insert(tok->random_segmentation(text, rng));
    for (const auto& seg : seen) {
      bool good = tok->decode(seg) == text;
      csd::RegionCursor cursor(engine);
      for (auto id : seg) {
        auto bytes = tok->vocabulary().token(id);
        good = good && cursor.feed(bytes) == bytes.size();
      }
      good = good && !cursor.in_constrained();
      auto report = csd::validate(engine, tok->decode(seg));
      good = good && report.verdict == csd::Verdict::Complete && report.valid_prefix_length == text.size();
      if (good) ++ok;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/%zu segmentations of %zu transcripts complete at full length", ok, texts * 5,
                texts);
  return {texts == 100 && ok == 500, buf};
}

Outcome violation_recovery() {
  auto dataset = mixed_dataset(2, 2605);
  auto cut_after = [](const Problem& p, const std::string& marker) {
    auto s = harness::perfect_formalizer_script(p);
    std::vector<std::string> messages;
    std::size_t start = 0;
    for (auto pos = s.find(marker); pos != std::string::npos; pos = s.find(marker, pos + 1)) {
      std::size_t end = pos + marker.size();
      messages.push_back(s.substr(start, end - start));
      start = end;
    }
    messages.push_back(s.substr(start));
    return messages;
  };
  auto factory = [&](std::optional<std::size_t> k) -> ModelFactory {
    return [=](const Problem& p, std::size_t) {
      auto messages = k ? cut_after(p, "[[infer:(") : cut_after(p, "[[");
      return lm::chat_adapter(
          std::make_unique<lm::ScriptedLM>(tokenizer(), messages, lm::ScriptOptions{lm::Policy::apologetic(k)}));
    };
  };
  auto engine = logicguide::logic_engine();
  EvalOptions opts;
  opts.scoring.resamples = 10;
  std::size_t recovered = 0, runs = 0;
  for (std::size_t k = 0; k <= 5; ++k) {
    for (const auto& r : harness::evaluate(dataset, factory(k), tokenizer(), opts).records) {
      ++runs;
      bool good = !r.transcript.aborted && r.transcript.violation_count >= 1;
      good = good && csd::validate(engine, r.transcript.full_text).verdict == csd::Verdict::Complete;
      try {
        logicguide::replay(r.transcript.block_contents());
      } catch (const std::exception&) {
        good = false;
      }
      if (good) ++recovered;
    }
  }
  std::size_t capped = 0;
  std::set<std::size_t> counts;
  auto endless = harness::evaluate(dataset, factory(std::nullopt), tokenizer(), opts);
  for (const auto& r : endless.records) {
    counts.insert(r.transcript.violation_count);
    if (r.transcript.aborted && r.transcript.violation_count == 20) ++capped;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "apologetic(0..5): %zu/%zu recovered; apologetic(inf): %zu/%zu aborted at 20",
                recovered, runs, capped, endless.records.size());
  return {recovered == runs && capped == endless.records.size(), buf};
}

Outcome strict_filter_purity() {
  auto dataset = mixed_dataset(4, 2606);
  EvalOptions opts;
  opts.scoring.resamples = 10;
  auto perfect = harness::evaluate(dataset, scripted(harness::perfect_formalizer_script), tokenizer(), opts);
  auto guess = harness::evaluate(
      dataset, scripted([](const Problem& p) { return harness::guess_after_nothing_script(p, Answer::True); }),
      tokenizer(), opts);
  std::vector<harness::EvalRecord> pool = perfect.records;
  pool.insert(pool.end(), guess.records.begin(), guess.records.end());

  auto is_uncertified_source = [&](const harness::TrainingRecord& t) {
    return std::any_of(pool.begin(), pool.end(), [&](const harness::EvalRecord& r) {
      return r.problem_id == t.problem_id && r.transcript.full_text == t.completion && !r.certified();
    });
  };
  auto strict = harness::star_filter(pool, harness::TrainingMode::StrictGuided);
  auto guided = harness::star_filter(pool, harness::TrainingMode::Guided);
  std::size_t strict_bad = std::count_if(strict.begin(), strict.end(), is_uncertified_source);
  std::size_t guided_bad = std::count_if(guided.begin(), guided.end(), is_uncertified_source);
  char buf[200];
  std::snprintf(buf, sizeof buf, "strict keeps %zu (%zu uncertified); guided keeps %zu (%zu uncertified)",
                strict.size(), strict_bad, guided.size(), guided_bad);
  return {strict_bad == 0 && !strict.empty() && guided_bad >= 1, buf};
}

Outcome deontic_fidelity() {
  auto set = problems::generate_deontic_split(60, 2024);
  std::size_t solvable = 0, within = 0, trues = 0, max_rules = 0;
  for (const auto& p : set) {
    auto a = problems::oracle_answer(p.theory);
    if (a == p.answer && a != Answer::Unknown) ++solvable;
    std::size_t rules = std::count_if(p.theory.begin(), p.theory.end(),
                                      [](const std::string& b) { return b.rfind("axiom:", 0) == 0; });
    max_rules = std::max(max_rules, rules);
    if (rules <= 28) ++within;
    if (p.answer == Answer::True) ++trues;
  }
  double balance = set.empty() ? 0.0 : double(trues) / double(set.size());
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu problems, %zu oracle-solvable, largest has %zu axioms, True fraction %.3f",
                set.size(), solvable, max_rules, balance);
  return {set.size() == 60 && solvable == 60 && within == 60 && balance >= 0.40 && balance <= 0.60, buf};
}

Outcome trace_replay() {
  struct Case {
    const char* name;
    Answer stated;  // the answer given in the trace when it does not settle the goal
    Answer expected;
  };
  const Case cases[] = {{"wren", Answer::Unknown, Answer::True},
                        {"alex", Answer::Unknown, Answer::False},
                        {"cow_cat", Answer::True, Answer::True}};
  std::size_t exact = 0;
  std::string detail;
  for (const auto& c : cases) {
    auto v = logicguide::certify_history(logicguide::load_theory(std::string(CERTGUIDE_TEST_DATA) + "/" + c.name +
                                                                 ".theory"),
                                         c.stated);
    if (v.answer == c.expected) ++exact;
    detail += std::string(c.name) + "=" + logic::to_string(v.answer) + (v.certified ? " certified" : " uncertified") +
              "; ";
  }
  detail += std::to_string(exact) + "/3 exact";
  return {exact == 3, detail};
}

Outcome performance() {
  auto t0 = Clock::now();
  const Ontology splits[] = {Ontology::TrueOnt, Ontology::FalseOnt, Ontology::Fictional};
  std::size_t agree = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    auto p = problems::generate_ontology_problem(problems::derive_seed(2609, i), 1 + i % 5, splits[i % 3]);
    if (problems::oracle_answer(p.theory) == p.answer && problems::shortest_hops(p.theory) == p.hops) ++agree;
  }
  double bulk = seconds_since(t0);

  auto tok = tokenizer();
  auto engine = logicguide::logic_engine();
  auto p = problems::generate_ontology_problem(2609, 5, Ontology::Fictional);
  auto prompt = harness::build_prompt(p, {});
  double worst = 0.0;
  bool certified = true;
  for (int run = 0; run < 5; ++run) {
    auto t1 = Clock::now();
    lm::ScriptedLM model(tok, {harness::perfect_formalizer_script(p)});
    auto t = csd::constrained_sample(model, engine, tok->trie(), prompt);
    auto v = logicguide::certify(t, harness::extract_answer(t.full_text).value_or(Answer::Unknown));
    worst = std::max(worst, seconds_since(t1) * 1000.0);
    certified = certified && v.certified && v.answer == p.answer;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "1000 problems generated and solved in %.2f s (%zu agree); 5-hop guided decode %.1f ms",
                bulk, agree, worst);
  return {agree == 1000 && bulk <= 60.0 && certified && worst <= 100.0, buf};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"AC1", "guide soundness", guide_soundness},
      {"AC2", "oracle equivalence", oracle_equivalence},
      {"AC3", "certified correctness", certified_correctness},
      {"AC4", "tokenization independence", tokenization_independence},
      {"AC5", "violation recovery and cap", violation_recovery},
      {"AC6", "strict filter purity", strict_filter_purity},
      {"AC7", "deontic generator", deontic_fidelity},
      {"AC8", "trace replay", trace_replay},
      {"AC9", "performance", performance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
