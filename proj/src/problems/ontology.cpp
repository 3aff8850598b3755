// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/problems/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace certguide::problems {

namespace {

struct Concept {
  std::string pred;
  std::string singular;  // empty for pure adjectives
  std::string plural;
  std::string adjective;  // preferred as a complement when present
};

struct Lexicon {
  std::map<std::string, Concept> concepts;
  std::map<std::string, std::string> by_singular, by_plural, by_adjective;
  // Taxonomy chains, specific to general, six concepts each.
  std::vector<std::vector<std::string>> chains;
  // Properties that hold of every member of a concept: (pred, positive).
  std::map<std::string, std::vector<std::pair<std::string, bool>>> traits;
  std::vector<std::string> nouns, adjectives;

  void add(Concept c) {
    if (!c.singular.empty()) {
      by_singular[c.singular] = c.pred;
      by_plural[c.plural] = c.pred;
      nouns.push_back(c.pred);
    }
    if (!c.adjective.empty()) {
      by_adjective[c.adjective] = c.pred;
      if (c.singular.empty()) adjectives.push_back(c.pred);
    }
    concepts[c.pred] = std::move(c);
  }
  const Concept& at(const std::string& pred) const { return concepts.at(pred); }
  bool is_noun(const std::string& pred) const { return !at(pred).singular.empty(); }
};

const Lexicon& taxonomy() {
  static const Lexicon lex = [] {
    Lexicon l;
    auto noun = [&](const char* pred, const char* sg, const char* pl, const char* adj = "") {
      l.add({pred, sg, pl, adj});
    };
    auto adj = [&](const char* pred, const char* word) { l.add({pred, "", "", word}); };
    noun("cat", "cat", "cats");
    noun("feline", "feline", "felines");
    noun("carnivore", "carnivore", "carnivores");
    noun("mammal", "mammal", "mammals");
    noun("vertebrate", "vertebrate", "vertebrates");
    noun("animal", "animal", "animals");
    noun("sparrow", "sparrow", "sparrows");
    noun("songbird", "songbird", "songbirds");
    noun("bird", "bird", "birds");
    noun("organism", "organism", "organisms");
    noun("prime", "prime number", "prime numbers", "prime");
    noun("natural", "natural number", "natural numbers");
    noun("integer", "integer", "integers");
    noun("rational", "rational number", "rational numbers", "rational");
    noun("real", "real number", "real numbers", "real");
    noun("number", "number", "numbers");
    noun("daisy", "daisy", "daisies");
    noun("flowering_plant", "flowering plant", "flowering plants");
    noun("seed_plant", "seed plant", "seed plants");
    noun("plant", "plant", "plants");
    noun("eukaryote", "eukaryote", "eukaryotes");
    noun("herbivore", "herbivore", "herbivores");
    noun("reptile", "reptile", "reptiles");
    noun("invertebrate", "invertebrate", "invertebrates");
    noun("composite", "composite number", "composite numbers", "composite");
    noun("fraction", "fraction", "fractions");
    noun("prokaryote", "prokaryote", "prokaryotes");
    adj("furry", "furry");
    adj("warm_blooded", "warm-blooded");
    adj("multicellular", "multicellular");
    adj("small", "small");
    adj("melodic", "melodic");
    adj("feathered", "feathered");
    adj("alive", "alive");
    adj("negative", "negative");
    adj("irrational", "irrational");
    adj("imaginary", "imaginary");
    adj("abstract", "abstract");
    adj("photosynthetic", "photosynthetic");

    l.chains = {
        {"cat", "feline", "carnivore", "mammal", "vertebrate", "animal"},
        {"sparrow", "songbird", "bird", "vertebrate", "animal", "organism"},
        {"prime", "natural", "integer", "rational", "real", "number"},
        {"daisy", "flowering_plant", "seed_plant", "plant", "eukaryote", "organism"},
    };
    l.traits = {
        {"cat", {{"furry", true}, {"reptile", false}}},
        {"feline", {{"herbivore", false}}},
        {"carnivore", {{"herbivore", false}}},
        {"mammal", {{"warm_blooded", true}, {"reptile", false}}},
        {"vertebrate", {{"invertebrate", false}}},
        {"animal", {{"multicellular", true}, {"plant", false}}},
        {"sparrow", {{"small", true}}},
        {"songbird", {{"melodic", true}}},
        {"bird", {{"feathered", true}, {"mammal", false}}},
        {"organism", {{"alive", true}}},
        {"prime", {{"composite", false}}},
        {"natural", {{"negative", false}}},
        {"integer", {{"fraction", false}}},
        {"rational", {{"irrational", false}}},
        {"real", {{"imaginary", false}}},
        {"number", {{"abstract", true}}},
        {"daisy", {{"small", true}}},
        {"plant", {{"photosynthetic", true}, {"animal", false}}},
        {"eukaryote", {{"prokaryote", false}}},
    };
    return l;
  }();
  return lex;
}

const Lexicon& fictional() {
  static const Lexicon lex = [] {
    Lexicon l;
    for (const char* n : {"wumpus", "dumpus", "impus", "vumpus", "jompus", "numpus", "rompus", "zumpus", "tumpus",
                          "yumpus", "lorpus", "gorpus", "shumpus", "sterpus", "grimpus", "brimpus", "lempus",
                          "kompus", "fompus", "timpus"}) {
      l.add({n, n, std::string(n) + "es", ""});
    }
    for (const char* a : {"orange", "bitter", "luminous", "opaque", "dull", "sour", "spicy", "transparent", "fruity",
                          "hot", "cold", "shy", "kind", "happy", "large", "red", "blue", "liquid", "wooden",
                          "metallic", "feisty", "nervous", "bright", "earthy", "floral", "mean", "angry", "amenable",
                          "aggressive", "brown"}) {
      l.add({a, "", "", a});
    }
    return l;
  }();
  return lex;
}

const Lexicon& lexicon_for(Ontology o) { return o == Ontology::Fictional ? fictional() : taxonomy(); }

const std::vector<std::string>& entity_names() {
  static const std::vector<std::string> names{"alex", "fae", "max", "polly", "rex", "sally",
                                              "sam", "stella", "wren", "lucy", "ben", "jo"};
  return names;
}

struct URule {
  std::string ante;
  std::string cons;
  bool negated = false;
  friend bool operator==(const URule&, const URule&) = default;
};

std::string literal(const std::string& pred, const std::string& arg, bool negated) {
  std::string atom = "(" + pred + " " + arg + ")";
  return negated ? "(not " + atom + ")" : atom;
}

std::string axiom(const URule& r) { return literal(r.ante, "'x", false) + " -> " + literal(r.cons, "'x", r.negated); }

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string article(const std::string& noun) {
  bool vowel = std::string("aeiou").find(noun[0]) != std::string::npos;
  if (noun.rfind("eu", 0) == 0 || noun.rfind("uni", 0) == 0) vowel = false;
  return vowel ? "an " : "a ";
}

std::string singular_complement(const Concept& c) {
  if (!c.adjective.empty()) return c.adjective;
  return article(c.singular) + c.singular;
}

std::string plural_complement(const Concept& c) { return c.adjective.empty() ? c.plural : c.adjective; }

std::string realize(const Lexicon& lex, const URule& r, std::size_t form) {
  const Concept& a = lex.at(r.ante);
  const Concept& b = lex.at(r.cons);
  std::string neg = r.negated ? "not " : "";
  switch (form % 3) {
    case 0:
      return "Every " + a.singular + " is " + neg + singular_complement(b) + ".";
    case 1:
      return "Each " + a.singular + " is " + neg + singular_complement(b) + ".";
    default:
      return capitalize(a.plural) + " are " + neg + plural_complement(b) + ".";
  }
}

struct Chain {
  std::vector<std::string> seq;  // antecedent concepts, in derivation order
  std::string final;
  bool final_positive = true;
};

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::optional<Chain> taxonomy_chain(Rng& rng, const Lexicon& lex, std::size_t hops, bool flipped) {
  auto chain = lex.chains[pick(rng, lex.chains.size())];
  if (flipped) std::reverse(chain.begin(), chain.end());
  std::size_t n = chain.size();
  auto traits_of = [&](const std::string& c) {
    std::vector<std::pair<std::string, bool>> out;
    auto it = lex.traits.find(c);
    if (it == lex.traits.end()) return out;
    for (auto [t, positive] : it->second) out.emplace_back(t, flipped ? !positive : positive);
    return out;
  };

  Chain c;
  std::size_t next;  // index in `chain` of the concept after c.seq.back()
  if (flipped && pick(rng, 3) == 0) {
    // Start from a concept the taxonomy excludes from chain[k], then descend.
    std::vector<std::pair<std::size_t, std::string>> starts;
    for (std::size_t k = 0; k + hops <= n; ++k) {
      auto it = lex.traits.find(chain[k]);
      if (it == lex.traits.end()) continue;
      for (auto [t, positive] : it->second) {
        if (!positive && lex.is_noun(t)) starts.emplace_back(k, t);
      }
    }
    if (starts.empty()) return std::nullopt;
    auto [k, t] = starts[pick(rng, starts.size())];
    c.seq.push_back(t);
    for (std::size_t i = 0; i + 1 < hops; ++i) c.seq.push_back(chain[k + i]);
    next = k + hops - 1;
    if (hops == 1) {
      c.final = chain[k];
      return c;
    }
  } else {
    std::size_t s = pick(rng, n - hops + 1);
    for (std::size_t i = 0; i < hops; ++i) c.seq.push_back(chain[s + i]);
    next = s + hops;
  }
  std::vector<std::pair<std::string, bool>> options;
  if (next < n) options.emplace_back(chain[next], true);
  for (auto& t : traits_of(c.seq.back())) options.push_back(t);
  if (options.empty()) return std::nullopt;
  auto [f, positive] = options[pick(rng, options.size())];
  c.final = f;
  c.final_positive = positive;
  return c;
}

Chain fictional_chain(Rng& rng, const Lexicon& lex, std::size_t hops) {
  auto nouns = lex.nouns;
  for (std::size_t i = nouns.size(); i > 1; --i) std::swap(nouns[i - 1], nouns[pick(rng, i)]);
  Chain c;
  c.seq.assign(nouns.begin(), nouns.begin() + static_cast<std::ptrdiff_t>(hops));
  if (pick(rng, 2) == 0) {
    c.final = nouns[hops];
  } else {
    c.final = lex.adjectives[pick(rng, lex.adjectives.size())];
  }
  c.final_positive = pick(rng, 2) == 0;
  return c;
}

// True rules of the taxonomy, or their flipped versions.
std::vector<URule> taxonomy_rules(const Lexicon& lex, bool flipped) {
  std::vector<URule> out;
  auto push = [&](URule r) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
  };
  for (const auto& chain : lex.chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      push(flipped ? URule{chain[i + 1], chain[i], false} : URule{chain[i], chain[i + 1], false});
    }
  }
  for (const auto& [c, traits] : lex.traits) {
    for (auto [t, positive] : traits) {
      push(URule{c, t, flipped ? positive : !positive});
      if (flipped && !positive && lex.is_noun(t)) push(URule{t, c, false});
    }
  }
  return out;
}

struct Draft {
  std::vector<URule> rules;
  std::string entity;
  std::string fact_pred;
  logic::Literal goal;
};

History draft_theory(const Draft& d) {
  History h;
  for (const auto& r : d.rules) h.push_back("axiom:" + axiom(r));
  h.push_back("axiom:" + literal(d.fact_pred, d.entity, false));
  h.push_back("goal:" + logic::to_string(d.goal));
  return h;
}

bool consistent_with(const Draft& d, Answer want, std::size_t hops) {
  auto state = load_ground_truth(draft_theory(d));
  auto closed = logic::close_theory(state);
  if (closed.inconsistent()) return false;
  if (logic::to_answer(logic::check_goal(closed)) != want) return false;
  return shortest_hops(draft_theory(d)) == hops;
}

}  // namespace

Problem generate_ontology_problem(std::uint64_t seed, std::size_t hops, Ontology ontology,
                                  std::optional<Answer> answer, const OntologyConfig& config) {
  if (hops < 1 || hops > 5) throw std::invalid_argument("hops must be between 1 and 5");
  if (ontology == Ontology::Deontic) throw std::invalid_argument("use generate_deontic_problem for deontic problems");
  if (config.min_distractors > config.max_distractors) throw std::invalid_argument("min_distractors > max_distractors");
  if (answer == Answer::Unknown) throw std::invalid_argument("generated answers are True or False");

  Rng rng(seed);
  const Lexicon& lex = lexicon_for(ontology);
  Chain chain;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 1000) throw std::logic_error("no taxonomy chain fits the requested hops");
    std::optional<Chain> c;
    if (ontology == Ontology::Fictional) {
      c = fictional_chain(rng, lex, hops);
    } else {
      c = taxonomy_chain(rng, lex, hops, ontology == Ontology::FalseOnt);
    }
    if (!c) continue;
    std::set<std::string> distinct(c->seq.begin(), c->seq.end());
    distinct.insert(c->final);
    if (distinct.size() == hops + 1) {
      chain = *c;
      break;
    }
  }

  Answer want = answer ? *answer : (pick(rng, 2) == 0 ? Answer::True : Answer::False);
  Draft d;
  d.entity = entity_names()[pick(rng, entity_names().size())];
  d.fact_pred = chain.seq.front();
  for (std::size_t i = 0; i + 1 < hops; ++i) d.rules.push_back({chain.seq[i], chain.seq[i + 1], false});
  d.rules.push_back({chain.seq.back(), chain.final, !chain.final_positive});
  logic::Literal derived{!chain.final_positive, chain.final, {logic::Term::constant(d.entity)}};
  d.goal = want == Answer::True ? derived : derived.complement();
  const std::size_t chain_rules = d.rules.size();

  // Distractors.
  std::size_t wanted = config.min_distractors + pick(rng, config.max_distractors - config.min_distractors + 1);
  std::vector<URule> candidates;
  if (ontology == Ontology::Fictional) {
    std::set<std::string> used(chain.seq.begin(), chain.seq.end());
    used.insert(chain.final);
    std::vector<std::string> free_nouns, free_any;
    for (const auto& n : lex.nouns) {
      if (!used.count(n)) free_nouns.push_back(n);
    }
    for (const auto& [p, c] : lex.concepts) {
      if (!used.count(p)) free_any.push_back(p);
    }
    std::vector<std::string> on_chain(chain.seq.begin(), chain.seq.end());
    on_chain.push_back(chain.final);
    for (int i = 0; i < 64; ++i) {
      URule r;
      switch (pick(rng, 3)) {
        case 0:
          r = {chain.seq[pick(rng, chain.seq.size())], free_any[pick(rng, free_any.size())], pick(rng, 2) == 0};
          break;
        case 1:
          r = {free_nouns[pick(rng, free_nouns.size())], on_chain[pick(rng, on_chain.size())], pick(rng, 2) == 0};
          break;
        default:
          r = {free_nouns[pick(rng, free_nouns.size())], free_any[pick(rng, free_any.size())], pick(rng, 2) == 0};
          break;
      }
      candidates.push_back(r);
    }
  } else {
    candidates = taxonomy_rules(lex, ontology == Ontology::FalseOnt);
    for (std::size_t i = candidates.size(); i > 1; --i) std::swap(candidates[i - 1], candidates[pick(rng, i)]);
  }
  for (const auto& r : candidates) {
    if (d.rules.size() - chain_rules >= wanted) break;
    if (r.ante == r.cons) continue;
    bool clash = std::any_of(d.rules.begin(), d.rules.end(),
                             [&](const URule& e) { return e.ante == r.ante && e.cons == r.cons; });
    if (clash) continue;
    d.rules.push_back(r);
    if (!consistent_with(d, want, hops)) d.rules.pop_back();
  }

  // Shuffle the rules; the fact comes last.
  std::vector<std::size_t> order(d.rules.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[pick(rng, i)]);

  Problem p;
  p.ontology = ontology;
  p.hops = hops;
  p.answer = want;
  p.id = to_string(ontology) + "-h" + std::to_string(hops) + "-" + std::to_string(seed);
  std::vector<std::string> axioms;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const URule& r = d.rules[order[pos]];
    if (order[pos] >= chain_rules) p.distractors.push_back(pos);
    axioms.push_back(axiom(r));
    p.context.push_back(realize(lex, r, pick(rng, 3)));
  }
  axioms.push_back(literal(d.fact_pred, d.entity, false));
  p.context.push_back(capitalize(d.entity) + " is " + singular_complement(lex.at(d.fact_pred)) + ".");
  p.question = "True or false: " + capitalize(d.entity) + " is " + (d.goal.negated ? "not " : "") +
               singular_complement(lex.at(d.goal.predicate)) + ".";

  p.theory.push_back("object:" + d.entity);
  std::set<std::string> declared;
  auto declare = [&](const std::string& pred) {
    if (declared.insert(pred).second) p.theory.push_back("prop:" + pred);
  };
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    declare(d.rules[order[pos]].ante);
    declare(d.rules[order[pos]].cons);
  }
  declare(d.fact_pred);
  for (const auto& a : axioms) p.theory.push_back("axiom:" + a);
  p.theory.push_back("goal:" + logic::to_string(d.goal));
  return p;
}

std::vector<Problem> generate_ontology_split(Ontology ontology, std::size_t count, std::uint64_t seed,
                                             std::size_t hops, const OntologyConfig& config) {
  auto answers = balanced_answers(count, seed);
  std::vector<Problem> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t h = hops == 0 ? 1 + i % 5 : hops;
    out.push_back(generate_ontology_problem(derive_seed(seed, i), h, ontology, answers[i], config));
  }
  return out;
}

std::optional<std::string> formalize_ontology_sentence(Ontology ontology, std::string_view sentence) {
  if (ontology == Ontology::Deontic) return std::nullopt;
  const Lexicon& lex = lexicon_for(ontology);
  std::string s(sentence);
  if (s.empty() || s.back() != '.') return std::nullopt;
  s.pop_back();
  auto lookup = [](const std::map<std::string, std::string>& m, const std::string& k) -> std::optional<std::string> {
    auto it = m.find(k);
    if (it == m.end()) return std::nullopt;
    return it->second;
  };
  // Complement after "is" / "are": (pred, negated).
  auto complement = [&](std::string c, bool plural) -> std::optional<std::pair<std::string, bool>> {
    bool neg = c.rfind("not ", 0) == 0;
    if (neg) c = c.substr(4);
    std::optional<std::string> pred;
    if (plural) {
      pred = lookup(lex.by_plural, c);
    } else if (c.rfind("a ", 0) == 0 || c.rfind("an ", 0) == 0) {
      std::string noun = c.substr(c.find(' ') + 1);
      pred = lookup(lex.by_singular, noun);
      if (pred && article(noun) + noun != c) pred.reset();
    }
    if (!pred) pred = lookup(lex.by_adjective, c);
    if (!pred) return std::nullopt;
    return std::make_pair(*pred, neg);
  };
  auto lower_first = [](std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
    return w;
  };

  for (const char* quant : {"Every ", "Each "}) {
    if (s.rfind(quant, 0) != 0) continue;
    std::string rest = s.substr(std::string(quant).size());
    auto is = rest.find(" is ");
    if (is == std::string::npos) return std::nullopt;
    auto a = lookup(lex.by_singular, rest.substr(0, is));
    auto b = complement(rest.substr(is + 4), false);
    if (!a || !b) return std::nullopt;
    return literal(*a, "'x", false) + " -> " + literal(b->first, "'x", b->second);
  }
  if (auto are = s.find(" are "); are != std::string::npos) {
    std::string head = s.substr(0, are);
    if (capitalize(head) != head) return std::nullopt;
    auto a = lookup(lex.by_plural, lower_first(head));
    auto b = complement(s.substr(are + 5), true);
    if (!a || !b) return std::nullopt;
    return literal(*a, "'x", false) + " -> " + literal(b->first, "'x", b->second);
  }
  if (auto is = s.find(" is "); is != std::string::npos) {
    std::string name = s.substr(0, is);
    if (capitalize(name) != name) return std::nullopt;
    name = lower_first(name);
    const auto& names = entity_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) return std::nullopt;
    auto b = complement(s.substr(is + 4), false);
    if (!b) return std::nullopt;
    return literal(b->first, name, b->second);
  }
  return std::nullopt;
}

}  // namespace certguide::problems
