// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/harness/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "certguide/csd/sampler.hpp"

namespace certguide::harness {

bool EvalRecord::certified() const {
  return !transcript.aborted && verdict && verdict->certified && stated && *stated == verdict->answer;
}

namespace {

nlohmann::json verdict_json(const logicguide::CertificationVerdict& v) {
  return {{"answer", logic::to_string(v.answer)}, {"certified", v.certified}, {"reason", logicguide::to_string(v.reason)}};
}

logicguide::CertificationVerdict verdict_from_json(const nlohmann::json& j) {
  logicguide::CertificationVerdict v;
  auto a = logic::parse_answer(j.at("answer").get<std::string>());
  if (!a) throw problems::FormatError("bad verdict answer");
  v.answer = *a;
  v.certified = j.at("certified").get<bool>();
  auto reason = j.at("reason").get<std::string>();
  for (auto r : {logicguide::CertificationReason::GoalProved, logicguide::CertificationReason::GoalDisproved,
                 logicguide::CertificationReason::InferencesExhausted,
                 logicguide::CertificationReason::NoFormalDerivation, logicguide::CertificationReason::Aborted}) {
    if (logicguide::to_string(r) == reason) {
      v.reason = r;
      return v;
    }
  }
  throw problems::FormatError("unknown certification reason `" + reason + "`");
}

}  // namespace

nlohmann::json to_json(const EvalRecord& r) {
  nlohmann::json j;
  j["problem_id"] = r.problem_id;
  j["ontology"] = problems::to_string(r.ontology);
  j["hops"] = r.hops;
  j["oracle"] = logic::to_string(r.oracle);
  j["guided"] = r.guided;
  csd::put_bytes(j, "prompt", r.prompt);
  j["transcript"] = csd::to_json(r.transcript);
  j["stated"] = r.stated ? nlohmann::json(logic::to_string(*r.stated)) : nlohmann::json(nullptr);
  j["verdict"] = r.verdict ? verdict_json(*r.verdict) : nlohmann::json(nullptr);
  return j;
}

EvalRecord eval_record_from_json(const nlohmann::json& j) {
  try {
    EvalRecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    auto o = problems::parse_ontology(j.at("ontology").get<std::string>());
    if (!o) throw problems::FormatError("unknown ontology");
    r.ontology = *o;
    r.hops = j.at("hops").get<std::size_t>();
    auto oracle = logic::parse_answer(j.at("oracle").get<std::string>());
    if (!oracle) throw problems::FormatError("bad oracle answer");
    r.oracle = *oracle;
    r.guided = j.at("guided").get<bool>();
    r.prompt = csd::get_bytes(j, "prompt");
    r.transcript = csd::transcript_from_json(j.at("transcript"));
    if (!j.at("stated").is_null()) r.stated = logic::parse_answer(j["stated"].get<std::string>());
    if (!j.at("verdict").is_null()) r.verdict = verdict_from_json(j["verdict"]);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw problems::FormatError(std::string("transcript record: ") + e.what());
  } catch (const csd::TranscriptFormatError& e) {
    throw problems::FormatError(std::string("transcript record: ") + e.what());
  }
}

void Counts::add(const EvalRecord& r) {
  ++total;
  if (r.transcript.aborted) {
    ++aborted;
  } else if (r.abstained()) {
    ++abstained;
  } else if (r.correct()) {
    ++correct;
    if (r.certified()) ++certified_correct;
  } else {
    ++wrong;
    if (r.certified()) ++certified_wrong;
  }
}

Interval bootstrap_interval(const std::vector<bool>& outcomes, std::size_t resamples, std::uint64_t seed,
                            double level) {
  if (outcomes.empty() || resamples == 0) return {};
  std::mt19937_64 rng(seed);
  const std::size_t n = outcomes.size();
  std::vector<double> means(resamples);
  for (auto& m : means) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += outcomes[rng() % n] ? 1 : 0;
    m = static_cast<double>(hits) / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  double tail = (1.0 - level) / 2.0;
  auto lo = static_cast<std::size_t>(std::floor(tail * static_cast<double>(resamples)));
  auto hi = static_cast<std::size_t>(std::ceil((1.0 - tail) * static_cast<double>(resamples)));
  hi = std::clamp<std::size_t>(hi, 1, resamples) - 1;
  return {means[std::min(lo, resamples - 1)], means[hi]};
}

namespace {

GroupStats stats(const std::vector<const EvalRecord*>& group, const ScoreOptions& options) {
  GroupStats g;
  std::vector<bool> correct, certified;
  for (const auto* r : group) {
    g.counts.add(*r);
    correct.push_back(!r->transcript.aborted && r->correct());
    certified.push_back(r->certified());
  }
  if (g.counts.total > 0) {
    auto n = static_cast<double>(g.counts.total);
    g.accuracy = static_cast<double>(g.counts.correct) / n;
    g.certified = static_cast<double>(g.counts.certified_correct + g.counts.certified_wrong) / n;
  }
  g.accuracy_ci = bootstrap_interval(correct, options.resamples, options.seed);
  g.certified_ci = bootstrap_interval(certified, options.resamples, options.seed + 1);
  return g;
}

}  // namespace

EvalReport score(std::vector<EvalRecord> records, const ScoreOptions& options) {
  std::sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
    return std::tie(a.problem_id, a.guided, a.transcript.full_text) <
           std::tie(b.problem_id, b.guided, b.transcript.full_text);
  });
  std::vector<const EvalRecord*> all;
  std::map<std::string, std::vector<const EvalRecord*>> split;
  std::map<std::size_t, std::vector<const EvalRecord*>> hops;
  for (const auto& r : records) {
    all.push_back(&r);
    split[problems::to_string(r.ontology)].push_back(&r);
    hops[r.hops].push_back(&r);
  }
  EvalReport report;
  report.overall = stats(all, options);
  for (const auto& [k, v] : split) report.by_split[k] = stats(v, options);
  for (const auto& [k, v] : hops) report.by_hops[k] = stats(v, options);
  return report;
}

namespace {

nlohmann::json stats_json(const GroupStats& g) {
  const auto& c = g.counts;
  return {{"total", c.total},
          {"correct", c.correct},
          {"wrong", c.wrong},
          {"abstained", c.abstained},
          {"aborted", c.aborted},
          {"certified_correct", c.certified_correct},
          {"certified_wrong", c.certified_wrong},
          {"accuracy", g.accuracy},
          {"accuracy_ci", {g.accuracy_ci.low, g.accuracy_ci.high}},
          {"certified", g.certified},
          {"certified_ci", {g.certified_ci.low, g.certified_ci.high}}};
}

}  // namespace

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["overall"] = stats_json(r.overall);
  j["by_split"] = nlohmann::json::object();
  for (const auto& [k, v] : r.by_split) j["by_split"][k] = stats_json(v);
  j["by_hops"] = nlohmann::json::object();
  for (const auto& [k, v] : r.by_hops) j["by_hops"][std::to_string(k)] = stats_json(v);
  return j;
}

std::string format_report(const EvalReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %6s %6s %6s %6s %6s %6s %18s %9s\n", "group", "total", "right", "wrong",
                "abst", "abort", "cert", "accuracy [95% CI]", "certified");
  out += line;
  auto row = [&](const std::string& name, const GroupStats& g) {
    const auto& c = g.counts;
    std::snprintf(line, sizeof line, "%-12s %6zu %6zu %6zu %6zu %6zu %6zu  %.3f [%.3f,%.3f] %9.3f\n", name.c_str(),
                  c.total, c.correct, c.wrong, c.abstained, c.aborted, c.certified_correct + c.certified_wrong,
                  g.accuracy, g.accuracy_ci.low, g.accuracy_ci.high, g.certified);
    out += line;
  };
  row("all", r.overall);
  for (const auto& [k, v] : r.by_split) row("split=" + k, v);
  for (const auto& [k, v] : r.by_hops) row("hops=" + std::to_string(k), v);
  return out;
}

EvalRecord decode_problem(const Problem& p, lm::LanguageModel& model, const lm::Tokenizer& tokenizer,
                          const EvalOptions& options) {
  EvalRecord r;
  r.problem_id = p.id;
  r.ontology = p.ontology;
  r.hops = p.hops;
  r.oracle = p.answer;
  r.guided = options.guided;
  r.prompt = build_prompt(p, options.exemplars);
  try {
    if (options.guided) {
      auto engine = logicguide::logic_engine(options.guide);
      csd::SampleOptions so;
      so.max_violations = options.max_violations;
      r.transcript = csd::constrained_sample(model, engine, tokenizer.trie(), r.prompt, so);
    } else {
      r.transcript = csd::unconstrained_sample(model, r.prompt, guides::kOpen, guides::kClose);
    }
  } catch (const std::exception& e) {
    r.transcript = {};
    r.transcript.aborted = true;
    r.transcript.discarded.push_back(e.what());
  }
  r.stated = extract_answer(r.transcript.full_text);
  if (options.guided) r.verdict = logicguide::certify(r.transcript, r.stated.value_or(Answer::Unknown), options.guide);
  return r;
}

EvalResult evaluate(const std::vector<Problem>& dataset, const ModelFactory& factory,
                    std::shared_ptr<const lm::Tokenizer> tokenizer, const EvalOptions& options) {
  if (dataset.empty()) throw std::invalid_argument("evaluate needs a non-empty dataset");
  EvalResult result;
  result.records.resize(dataset.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < dataset.size(); i = next++) {
      auto model = factory(dataset[i], i);
      result.records[i] = decode_problem(dataset[i], *model, *tokenizer, options);
    }
  };
  std::size_t workers = std::clamp<std::size_t>(options.workers, 1, dataset.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  result.report = score(result.records, options.scoring);
  return result;
}

}  // namespace certguide::harness
