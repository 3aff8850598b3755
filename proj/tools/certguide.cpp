// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: dataset generation, oracle solving, scripted
// decoding, certification, evaluation and training-record filtering.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "certguide/harness/evaluate.hpp"
#include "certguide/harness/scripts.hpp"
#include "certguide/harness/star.hpp"
#include "certguide/lm/scripted.hpp"
#include "certguide/problems/deontic.hpp"
#include "certguide/problems/ontology.hpp"
#include "certguide/problems/proofwriter.hpp"

using namespace certguide;

namespace {

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<harness::EvalRecord> load_records(const std::string& path) {
  std::vector<harness::EvalRecord> out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(harness::eval_record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ": line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

struct GenerateArgs {
  std::string split = "fictional";
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::size_t hops = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  auto onto = problems::parse_ontology(a.split);
  if (!onto) throw std::runtime_error("unknown split " + a.split);
  std::vector<problems::Problem> set;
  if (*onto == problems::Ontology::Deontic) {
    set = problems::generate_deontic_split(a.count, a.seed);
  } else {
    set = problems::generate_ontology_split(*onto, a.count, a.seed, a.hops);
  }
  Output out(a.out);
  out.stream() << problems::format_dataset(set);
  return 0;
}

int run_import(const std::string& in, const std::string& out_path) {
  auto report = problems::load_proofwriter(in);
  Output out(out_path);
  out.stream() << problems::format_dataset(report.problems);
  std::cerr << report.problems.size() << " imported, " << report.skipped_unknown << " without a True/False answer, "
            << report.skipped_mismatch << " needing the closed-world assumption\n";
  return 0;
}

int run_solve(const std::string& dataset, bool check) {
  auto set = problems::load_dataset(dataset);
  std::size_t mismatches = 0;
  for (const auto& p : set) {
    auto answer = problems::oracle_answer(p.theory);
    auto hops = problems::shortest_hops(p.theory);
    std::cout << p.id << '\t' << logic::to_string(answer) << '\t' << (hops ? std::to_string(*hops) : "-") << '\n';
    if (answer != p.answer || (hops && *hops != p.hops)) ++mismatches;
  }
  if (check && mismatches > 0) {
    std::cerr << mismatches << " problems disagree with their stored answer or hop count\n";
    return 1;
  }
  return 0;
}

struct DecodeArgs {
  std::string dataset;
  std::string model = "perfect";
  std::string script_file;
  std::string policy = "cooperative";
  bool unguided = false;
  std::size_t max_violations = 20;
  std::size_t exemplars = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool chat = false;
  bool random_tokens = false;
  std::string out;
};

int run_decode(const DecodeArgs& a) {
  auto set = problems::load_dataset(a.dataset);
  auto tok = lm::make_tokenizer(lm::default_vocabulary());
  lm::Policy policy = lm::parse_policy(a.policy);

  std::optional<lm::ScriptFile> file;
  if (!a.script_file.empty()) {
    std::ifstream in(a.script_file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + a.script_file);
    file = lm::load_script(in);
    policy = file->policy;
  }
  std::function<std::vector<std::string>(const problems::Problem&, std::size_t)> script;
  if (file) {
    script = [&](const problems::Problem&, std::size_t) { return file->messages; };
  } else if (a.model == "perfect") {
    script = [](const problems::Problem& p, std::size_t) {
      return std::vector<std::string>{harness::perfect_formalizer_script(p)};
    };
  } else if (a.model == "guess-true" || a.model == "guess-false") {
    auto guess = a.model == "guess-true" ? logic::Answer::True : logic::Answer::False;
    script = [guess](const problems::Problem& p, std::size_t) {
      return std::vector<std::string>{harness::guess_after_nothing_script(p, guess)};
    };
  } else if (a.model == "random") {
    script = [seed = a.seed](const problems::Problem&, std::size_t i) {
      std::mt19937_64 rng(problems::derive_seed(seed, i));
      return std::vector<std::string>{harness::answer_only_script(rng() % 2 ? logic::Answer::True : logic::Answer::False)};
    };
  } else {
    throw std::runtime_error("unknown model " + a.model + " (perfect, guess-true, guess-false, random)");
  }

  harness::ModelFactory factory = [&, policy](const problems::Problem& p, std::size_t i) {
    lm::ScriptOptions opts{policy};
    opts.seed = problems::derive_seed(a.seed, i);
    if (a.random_tokens) opts.segmentation = lm::Segmentation::Random;
    std::unique_ptr<lm::LanguageModel> m = std::make_unique<lm::ScriptedLM>(tok, script(p, i), opts);
    if (a.chat || policy.kind == lm::Policy::Kind::Apologetic) m = lm::chat_adapter(std::move(m));
    return m;
  };

  harness::EvalOptions opts;
  opts.guided = !a.unguided;
  opts.max_violations = a.max_violations;
  opts.workers = a.workers;
  opts.scoring.resamples = 0;
  for (std::size_t i = 0; i < a.exemplars; ++i) {
    opts.exemplars.push_back(problems::generate_ontology_problem(problems::derive_seed(a.seed ^ 0xE5E5, i), 1 + i % 5,
                                                                 problems::Ontology::Fictional));
  }
  auto result = harness::evaluate(set, factory, tok, opts);
  Output out(a.out);
  for (const auto& r : result.records) out.stream() << harness::to_json(r).dump() << '\n';
  return 0;
}

int run_certify(const std::string& transcripts, const std::string& theory, const std::string& answer) {
  if (transcripts.empty() && theory.empty()) throw std::runtime_error("certify needs --transcripts or --theory");
  if (!theory.empty()) {
    auto stated = logic::parse_answer(answer);
    if (!stated) throw std::runtime_error("--answer must be True, False or Unknown");
    auto v = logicguide::certify_history(logicguide::load_theory(theory), *stated);
    std::cout << theory << '\t' << logic::to_string(v.answer) << '\t' << (v.certified ? "certified" : "uncertified")
              << '\t' << logicguide::to_string(v.reason) << '\n';
    return 0;
  }
  for (const auto& r : load_records(transcripts)) {
    auto v = logicguide::certify(r.transcript, r.stated.value_or(logic::Answer::Unknown));
    std::cout << r.problem_id << '\t' << (r.stated ? logic::to_string(*r.stated) : "-") << '\t'
              << logic::to_string(v.answer) << '\t' << (v.certified ? "certified" : "uncertified") << '\t'
              << logicguide::to_string(v.reason) << '\n';
  }
  return 0;
}

int run_eval(const std::string& transcripts, const std::string& dataset, std::size_t resamples, std::uint64_t seed,
             const std::string& json_out) {
  auto records = load_records(transcripts);
  if (!dataset.empty()) {
    std::map<std::string, problems::Problem> by_id;
    for (auto& p : problems::load_dataset(dataset)) by_id[p.id] = std::move(p);
    for (auto& r : records) {
      auto it = by_id.find(r.problem_id);
      if (it == by_id.end()) throw std::runtime_error("problem " + r.problem_id + " is not in the dataset");
      r.oracle = it->second.answer;
    }
  }
  auto report = harness::score(records, {resamples, seed});
  std::cout << harness::format_report(report);
  if (!json_out.empty()) {
    Output out(json_out);
    out.stream() << harness::to_json(report).dump(2) << '\n';
  }
  return 0;
}

int run_star(const std::string& transcripts, const std::string& mode_name, const std::string& out_path) {
  auto mode = harness::parse_training_mode(mode_name);
  if (!mode) throw std::runtime_error("--mode must be unguided, guided or strict");
  auto kept = harness::star_filter(load_records(transcripts), *mode);
  Output out(out_path);
  for (const auto& r : kept) out.stream() << harness::to_json(r).dump() << '\n';
  std::cerr << kept.size() << " records kept\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified reasoning with guided decoding: datasets, decoding and evaluation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a problem split as JSON lines");
  g->add_option("--split", gen.split, "true, false, fictional or deontic")->capture_default_str();
  g->add_option("--count", gen.count, "Number of problems")->capture_default_str();
  g->add_option("--seed", gen.seed, "Batch seed")->capture_default_str();
  g->add_option("--hops", gen.hops, "Hop count 1-5; 0 cycles through all (ontology splits)")->capture_default_str();
  g->add_option("--out", gen.out, "Output file (default stdout)");

  std::string import_in, import_out;
  auto* imp = app.add_subcommand("import-proofwriter", "Convert ProofWriter-style records to the dataset format");
  imp->add_option("--in", import_in, "ProofWriter JSON lines")->required();
  imp->add_option("--out", import_out, "Output file (default stdout)");

  std::string solve_dataset;
  bool solve_check = false;
  auto* s = app.add_subcommand("solve", "Oracle answers and hop counts for a dataset");
  s->add_option("--dataset", solve_dataset, "Dataset file")->required();
  s->add_flag("--check", solve_check, "Fail when an oracle answer differs from the stored one");

  DecodeArgs dec;
  auto* d = app.add_subcommand("decode", "Decode a dataset with a scripted model");
  d->add_option("--dataset", dec.dataset, "Dataset file")->required();
  d->add_option("--model", dec.model, "perfect, guess-true, guess-false or random")->capture_default_str();
  d->add_option("--script-file", dec.script_file, "Script file used for every problem (overrides --model)");
  d->add_option("--policy", dec.policy, "cooperative, adversarial, apologetic:<k> or apologetic:inf")
      ->capture_default_str();
  d->add_flag("--unguided", dec.unguided, "Decode without the logic guide");
  d->add_option("--max-violations", dec.max_violations, "Violation cap")->capture_default_str();
  d->add_option("--exemplars", dec.exemplars, "Few-shot exemplars in each prompt")->capture_default_str();
  d->add_option("--seed", dec.seed, "Seed for segmentation and random answers")->capture_default_str();
  d->add_option("--workers", dec.workers, "Parallel decodes")->capture_default_str();
  d->add_flag("--chat", dec.chat, "Wrap the model as a chat model");
  d->add_flag("--random-tokens", dec.random_tokens, "Segment the script into random tokens instead of greedy ones");
  d->add_option("--out", dec.out, "Transcript file (default stdout)");

  std::string cert_transcripts, cert_theory, cert_answer = "Unknown";
  auto* c = app.add_subcommand("certify", "Certify decoded transcripts or a theory trace");
  auto* ct = c->add_option("--transcripts", cert_transcripts, "Transcript file from decode");
  auto* cth = c->add_option("--theory", cert_theory, "Theory file holding a block trace");
  c->add_option("--answer", cert_answer, "Stated answer for --theory")->capture_default_str();
  ct->excludes(cth);

  std::string eval_transcripts, eval_dataset, eval_json;
  std::size_t eval_resamples = 10000;
  std::uint64_t eval_seed = 0;
  auto* e = app.add_subcommand("eval", "Score transcripts");
  e->add_option("--transcripts", eval_transcripts, "Transcript file from decode")->required();
  e->add_option("--dataset", eval_dataset, "Dataset whose answers override the recorded ones");
  e->add_option("--resamples", eval_resamples, "Bootstrap resamples")->capture_default_str();
  e->add_option("--seed", eval_seed, "Bootstrap seed")->capture_default_str();
  e->add_option("--json", eval_json, "Also write the report as JSON");

  std::string star_transcripts, star_mode = "strict", star_out;
  auto* f = app.add_subcommand("star-filter", "Keep transcripts usable as training data");
  f->add_option("--transcripts", star_transcripts, "Transcript file from decode")->required();
  f->add_option("--mode", star_mode, "unguided, guided or strict")->capture_default_str();
  f->add_option("--out", star_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (g->parsed()) return run_generate(gen);
    if (imp->parsed()) return run_import(import_in, import_out);
    if (s->parsed()) return run_solve(solve_dataset, solve_check);
    if (d->parsed()) return run_decode(dec);
    if (c->parsed()) return run_certify(cert_transcripts, cert_theory, cert_answer);
    if (e->parsed()) return run_eval(eval_transcripts, eval_dataset, eval_resamples, eval_seed, eval_json);
    if (f->parsed()) return run_star(star_transcripts, star_mode, star_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
