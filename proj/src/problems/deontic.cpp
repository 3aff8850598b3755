// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/problems/deontic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>

#include "certguide/logic/deontic.hpp"

namespace certguide::problems {

namespace {

using logic::Literal;
using logic::Rule;
using logic::Term;
using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename T>
const T& choose(Rng& rng, const std::vector<T>& v) {
  return v[pick(rng, v.size())];
}

struct Constant {
  std::string name;
  std::string sort;
  std::string surface;
};

const std::vector<Constant>& constants() {
  static const std::vector<Constant> v{
      {"bob", "person", "Bob"},
      {"alice", "person", "Alice"},
      {"carol", "person", "Carol"},
      {"dave", "person", "Dave"},
      {"erin", "person", "Erin"},
      {"frank", "person", "Frank"},
      {"review", "event", "the review"},
      {"standup", "event", "the standup"},
      {"offsite", "event", "the offsite"},
      {"launch", "event", "the launch"},
      {"retro", "event", "the retro"},
      {"kickoff_invite", "invite", "the kickoff invite"},
      {"lunch_invite", "invite", "the lunch invite"},
      {"demo_invite", "invite", "the demo invite"},
      {"dentist_reminder", "reminder", "the dentist reminder"},
      {"report_reminder", "reminder", "the report reminder"},
      {"projector", "entity", "the projector"},
      {"main_room", "entity", "the main room"},
      {"friday", "property", "Friday"},
      {"tomorrow", "property", "tomorrow"},
      {"private", "property", "private"},
      {"public", "property", "public"},
      {"new_agenda", "property", "the new agenda"},
  };
  return v;
}

const Constant* find_constant(const std::string& name) {
  for (const auto& c : constants()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// A phrase with numbered slots "{0}", "{1}".
struct Template {
  std::string name;
  std::vector<std::string> sorts;
  std::string phrase;
};

const std::vector<Template>& situations() {
  static const std::vector<Template> v{
      {"urgent", {"event"}, "{0} is urgent"},
      {"recurring", {"event"}, "{0} is recurring"},
      {"confidential", {"event"}, "{0} is confidential"},
      {"busy", {"person"}, "{0} is busy"},
      {"manager", {"person"}, "{0} is a manager"},
      {"external", {"person"}, "{0} is external"},
      {"pending", {"invite"}, "{0} is pending"},
      {"overdue", {"reminder"}, "{0} is overdue"},
      {"shared", {"entity"}, "{0} is shared"},
      {"organizes", {"person", "event"}, "{0} organizes {1}"},
      {"attends", {"person", "event"}, "{0} attends {1}"},
      {"owns", {"person", "reminder"}, "{0} owns {1}"},
      {"received", {"person", "invite"}, "{0} received {1}"},
      {"needs", {"event", "entity"}, "{0} needs {1}"},
  };
  return v;
}

const std::vector<Template>& actions() {
  static const std::vector<Template> v = [] {
    std::map<std::string, std::string> phrases{
        {"accept", "accepting {0}"},
        {"decline", "declining {0}"},
        {"send_notification", "sending a notification for {0}"},
        {"cancel_event", "cancelling {0}"},
        {"set_reminder", "setting {0}"},
        {"add_participant", "adding {1} to {0}"},
        {"remove_participant", "removing {1} from {0}"},
        {"delegate_event", "delegating {0} to {1}"},
        {"request_event_update", "requesting an update on {0} from {1}"},
        {"suggest_alternative_time", "suggesting another time for {0} to {1}"},
        {"check_availability", "checking the availability of {1} for {0}"},
        {"update_event", "updating {0} with {1}"},
        {"reschedule_event", "rescheduling {0} to {1}"},
        {"change_visibility", "changing the visibility of {0} to {1}"},
    };
    std::vector<Template> out;
    for (const auto& c : logic::deontic_base().constructors) out.push_back({c.name, c.arg_sorts, phrases.at(c.name)});
    return out;
  }();
  return v;
}

const Template* find_template(const std::vector<Template>& ts, const std::string& name) {
  for (const auto& t : ts) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

// Deontic modalities: (predicate, negated) -> phrase suffix.
struct Modality {
  const char* predicate;
  bool negated;
  const char* suffix;
};

constexpr Modality kModalities[] = {
    {"permissible", false, " is permitted"},
    {"permissible", true, " is forbidden"},
    {"obligatory", false, " is required"},
    {"obligatory", true, " is not required"},
};

std::string fill(const std::string& phrase, const std::vector<std::string>& slots) {
  std::string out;
  for (std::size_t i = 0; i < phrase.size(); ++i) {
    if (phrase[i] == '{' && i + 2 < phrase.size() && phrase[i + 2] == '}') {
      out += slots.at(static_cast<std::size_t>(phrase[i + 1] - '0'));
      i += 2;
    } else {
      out += phrase[i];
    }
  }
  return out;
}

std::string term_surface(const Term& t) {
  if (t.kind == Term::Kind::Variable) {
    return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(t.name[0]))));
  }
  return find_constant(t.name)->surface;
}

std::vector<std::string> slot_surfaces(const std::vector<Term>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) out.push_back(term_surface(a));
  return out;
}

std::string phrase(const Literal& l) {
  for (const auto& m : kModalities) {
    if (l.predicate == m.predicate && l.negated == m.negated) {
      const Term& act = l.args[0];
      return fill(find_template(actions(), act.name)->phrase, slot_surfaces(act.args)) + m.suffix;
    }
  }
  return fill(find_template(situations(), l.predicate)->phrase, slot_surfaces(l.args));
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string sentence(const Rule& r) {
  if (r.is_fact()) return capitalize(phrase(r.consequent)) + ".";
  std::string out = "If ";
  for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
    if (i > 0) out += " and ";
    out += phrase(r.antecedents[i]);
  }
  return out + ", then " + phrase(r.consequent) + ".";
}

// Objects available to one problem.
struct Cast {
  std::map<std::string, std::vector<std::string>> by_sort;

  // Constants usable where `sort` is expected.
  std::vector<std::string> of(const std::string& sort, bool allow_subsort) const {
    std::vector<std::string> out;
    if (auto it = by_sort.find(sort); it != by_sort.end()) out = it->second;
    if (allow_subsort && sort == "entity") {
      if (auto it = by_sort.find("person"); it != by_sort.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
  }
};

Cast sample_cast(Rng& rng) {
  std::map<std::string, std::vector<std::string>> pool;
  for (const auto& c : constants()) pool[c.sort].push_back(c.name);
  const std::map<std::string, std::size_t> counts{{"person", 3}, {"event", 2},  {"invite", 1},
                                                  {"reminder", 1}, {"entity", 1}, {"property", 2}};
  Cast cast;
  for (auto [sort, n] : counts) {
    auto names = pool[sort];
    for (std::size_t i = names.size(); i > 1; --i) std::swap(names[i - 1], names[pick(rng, i)]);
    names.resize(n);
    cast.by_sort[sort] = names;
  }
  return cast;
}

std::vector<std::string> constants_of(const std::vector<Literal>& ls) {
  std::vector<std::string> out;
  std::vector<std::string> vars;
  for (const auto& l : ls) {
    for (const auto& a : l.args) {
      if (a.kind == Term::Kind::Constant) out.push_back(a.name);
      for (const auto& b : a.args) {
        if (b.kind == Term::Kind::Constant) out.push_back(b.name);
      }
    }
  }
  return out;
}

// Arguments for `sorts`, preferring constants from `prefer`.
std::vector<Term> sample_args(Rng& rng, const Cast& cast, const std::vector<std::string>& sorts,
                              const std::vector<std::string>& prefer, bool allow_subsort) {
  std::vector<Term> out;
  for (const auto& sort : sorts) {
    auto options = cast.of(sort, allow_subsort);
    std::vector<std::string> preferred;
    for (const auto& p : prefer) {
      if (std::find(options.begin(), options.end(), p) != options.end()) preferred.push_back(p);
    }
    const auto& from = !preferred.empty() && pick(rng, 10) < 7 ? preferred : options;
    out.push_back(Term::constant(choose(rng, from)));
  }
  return out;
}

Literal sample_situation(Rng& rng, const Cast& cast, const std::vector<std::string>& prefer) {
  const Template& t = choose(rng, situations());
  return Literal{false, t.name, sample_args(rng, cast, t.sorts, prefer, false)};
}

Literal sample_deontic(Rng& rng, const Cast& cast, const std::vector<std::string>& prefer, bool allow_negated) {
  const Template& t = choose(rng, actions());
  Term act = Term::compound(t.name, sample_args(rng, cast, t.sorts, prefer, true));
  // permissible, impermissible, obligatory.
  std::size_t m = pick(rng, allow_negated ? 3 : 2);
  if (!allow_negated) m = m == 0 ? 0 : 2;
  return Literal{kModalities[m].negated, kModalities[m].predicate, {std::move(act)}};
}

// Replaces constants of the antecedents by variables (each with probability
// 4/5); variables are named x, y, z, ... in order of first appearance.
Rule generalize(Rng& rng, std::vector<Literal> antecedents, Literal consequent) {
  std::vector<std::string> names;
  for (const auto& c : constants_of(antecedents)) {
    if (std::find(names.begin(), names.end(), c) == names.end()) names.push_back(c);
  }
  std::map<std::string, std::string> to_var;
  static const char* kVars[] = {"x", "y", "z", "w", "v", "u"};
  std::size_t next = 0;
  for (const auto& c : names) {
    if (next < 6 && pick(rng, 5) != 0) to_var[c] = kVars[next++];
  }
  std::function<Term(const Term&)> rewrite = [&](const Term& t) {
    if (t.kind == Term::Kind::Constant) {
      auto it = to_var.find(t.name);
      return it == to_var.end() ? t : Term::variable(it->second);
    }
    Term out = t;
    for (auto& a : out.args) a = rewrite(a);
    return out;
  };
  auto rewrite_literal = [&](Literal l) {
    for (auto& a : l.args) a = rewrite(a);
    return l;
  };
  Rule r;
  for (auto& a : antecedents) r.antecedents.push_back(rewrite_literal(std::move(a)));
  r.consequent = rewrite_literal(std::move(consequent));
  // Rename variables in order of appearance so printing is stable.
  std::map<std::string, std::string> rename;
  for (const auto& v : logic::variables(r)) {
    if (!rename.count(v)) rename[v] = kVars[rename.size()];
  }
  logic::Substitution s;
  for (const auto& [from, to] : rename) s[from] = Term::variable(to);
  for (auto& a : r.antecedents) a = logic::substitute(a, s);
  r.consequent = logic::substitute(r.consequent, s);
  return r;
}

struct Draft {
  std::vector<Rule> axioms;  // rules and facts
  Literal goal;
};

History draft_theory(const Draft& d) {
  History h;
  for (const auto& r : d.axioms) h.push_back("axiom:" + logic::to_string(r));
  h.push_back("goal:" + logic::to_string(d.goal));
  return h;
}

bool acceptable(const Draft& d, Answer want, std::size_t hops) {
  History h = draft_theory(d);
  auto replayed = logicguide::replay(h);
  if (!replayed.rejected.empty()) return false;
  auto closed = logic::close_theory(replayed.state);
  if (closed.inconsistent()) return false;
  if (logic::to_answer(logic::check_goal(closed)) != want) return false;
  return shortest_hops(h) == hops;
}

bool contains(const std::vector<Rule>& axioms, const Rule& r) {
  auto s = logic::to_string(r);
  return std::any_of(axioms.begin(), axioms.end(), [&](const Rule& a) { return logic::to_string(a) == s; });
}

bool mentions(const std::vector<Literal>& ls, const Literal& l) {
  return std::any_of(ls.begin(), ls.end(), [&](const Literal& e) {
    return e.predicate == l.predicate && e.args == l.args;
  });
}

std::optional<Draft> sample_chain(Rng& rng, const Cast& cast, std::size_t depth, Answer want) {
  std::vector<Literal> chain{sample_situation(rng, cast, {})};
  Draft d;
  d.axioms.push_back(Rule{{}, chain.front()});
  for (std::size_t i = 1; i <= depth; ++i) {
    std::vector<Literal> ante{chain.back()};
    if (pick(rng, 10) < 4) {
      Literal extra = sample_situation(rng, cast, constants_of(ante));
      if (mentions(chain, extra)) return std::nullopt;
      ante.push_back(extra);
      d.axioms.push_back(Rule{{}, extra});
    }
    auto prefer = constants_of(ante);
    Literal next;
    if (i == depth) {
      next = sample_deontic(rng, cast, prefer, true);
    } else if (pick(rng, 3) == 0) {
      next = sample_deontic(rng, cast, prefer, false);
    } else {
      next = sample_situation(rng, cast, prefer);
    }
    if (mentions(chain, next) || mentions(ante, next)) return std::nullopt;
    d.axioms.push_back(generalize(rng, ante, next));
    chain.push_back(next);
  }
  d.goal = want == Answer::True ? chain.back() : chain.back().complement();
  return d;
}

Rule sample_distractor(Rng& rng, const Cast& cast, const Draft& d) {
  std::size_t kind = pick(rng, 20);
  if (kind < 6) return Rule{{}, sample_situation(rng, cast, {})};
  std::vector<Literal> ante{sample_situation(rng, cast, {})};
  if (pick(rng, 4) == 0) ante.push_back(sample_situation(rng, cast, constants_of(ante)));
  Literal cons;
  if (kind < 9) {
    // Concludes something about the goal's action from unrelated premises.
    cons = pick(rng, 2) == 0 ? d.goal : d.goal.complement();
  } else if (kind < 15) {
    cons = sample_deontic(rng, cast, constants_of(ante), true);
  } else {
    cons = sample_situation(rng, cast, constants_of(ante));
  }
  return generalize(rng, std::move(ante), std::move(cons));
}

void declare_literal(const Literal& l, History& decls, std::set<std::string>& seen) {
  auto add = [&](const std::string& block) {
    if (seen.insert(block).second) decls.push_back(block);
  };
  std::function<void(const Term&)> objects = [&](const Term& t) {
    if (t.kind == Term::Kind::Constant) add("object:" + t.name);
    for (const auto& a : t.args) objects(a);
  };
  for (const auto& a : l.args) objects(a);
  add((l.args.size() == 2 ? "relation:" : "prop:") + l.predicate);
}

}  // namespace

Problem generate_deontic_problem(std::uint64_t seed, std::optional<Answer> answer, const DeonticConfig& config) {
  if (config.min_depth < 1 || config.min_depth > config.max_depth) throw std::invalid_argument("bad depth range");
  if (config.min_distractors > config.max_distractors) throw std::invalid_argument("bad distractor range");
  if (answer == Answer::Unknown) throw std::invalid_argument("generated answers are True or False");

  Rng rng(seed);
  Answer want = answer ? *answer : (pick(rng, 2) == 0 ? Answer::True : Answer::False);
  std::size_t depth = config.min_depth + pick(rng, config.max_depth - config.min_depth + 1);
  Cast cast = sample_cast(rng);

  std::optional<Draft> draft;
  for (std::size_t attempt = 0; attempt < config.max_attempts && !draft; ++attempt) {
    auto d = sample_chain(rng, cast, depth, want);
    if (d && d->axioms.size() <= config.max_axioms && acceptable(*d, want, depth)) draft = std::move(d);
  }
  if (!draft) throw GenerationExhausted("no derivation found within " + std::to_string(config.max_attempts) + " attempts");
  Draft& d = *draft;
  const std::size_t chain_axioms = d.axioms.size();

  std::size_t wanted = config.min_distractors + pick(rng, config.max_distractors - config.min_distractors + 1);
  wanted = std::min(wanted, config.max_axioms - chain_axioms);
  for (std::size_t tries = 0; tries < 20 * (wanted + 1) && d.axioms.size() - chain_axioms < wanted; ++tries) {
    Rule r = sample_distractor(rng, cast, d);
    if (contains(d.axioms, r)) continue;
    d.axioms.push_back(r);
    if (!acceptable(d, want, depth)) d.axioms.pop_back();
  }

  std::vector<std::size_t> order(d.axioms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[pick(rng, i)]);

  Problem p;
  p.id = "deontic-" + std::to_string(seed);
  p.ontology = Ontology::Deontic;
  p.answer = want;
  p.hops = depth;
  std::set<std::string> seen;
  History axioms;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Rule& r = d.axioms[order[pos]];
    if (order[pos] >= chain_axioms) p.distractors.push_back(pos);
    for (const auto& a : r.antecedents) declare_literal(a, p.theory, seen);
    declare_literal(r.consequent, p.theory, seen);
    axioms.push_back("axiom:" + logic::to_string(r));
    p.context.push_back(sentence(r));
  }
  declare_literal(d.goal, p.theory, seen);
  p.theory.insert(p.theory.end(), axioms.begin(), axioms.end());
  p.theory.push_back("goal:" + logic::to_string(d.goal));
  p.question = "True or false: " + phrase(d.goal) + ".";
  return p;
}

std::vector<Problem> generate_deontic_split(std::size_t count, std::uint64_t seed, const DeonticConfig& config) {
  auto answers = balanced_answers(count, seed);
  std::vector<Problem> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(generate_deontic_problem(derive_seed(seed, i), answers[i], config));
  }
  return out;
}

namespace {

std::string regex_escape(const std::string& s) {
  static const std::regex special(R"([.^$|()\[\]{}*+?\\])");
  return std::regex_replace(s, special, R"(\$&)");
}

// Pattern for a template: literal text escaped, slots captured.
std::regex template_regex(const std::string& phrase) {
  std::string out = "^";
  for (std::size_t i = 0; i < phrase.size(); ++i) {
    if (phrase[i] == '{' && i + 2 < phrase.size() && phrase[i + 2] == '}') {
      out += "(.+?)";
      i += 2;
    } else {
      out += regex_escape(std::string(1, phrase[i]));
    }
  }
  return std::regex(out + "$");
}

std::optional<Term> parse_slot(const std::string& s) {
  if (s.size() == 1 && std::string("XYZWVU").find(s[0]) != std::string::npos) {
    return Term::variable(std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])))));
  }
  for (const auto& c : constants()) {
    if (c.surface == s) return Term::constant(c.name);
  }
  return std::nullopt;
}

std::optional<std::vector<Term>> match_template(const Template& t, const std::string& text) {
  static std::map<std::string, std::regex> cache;
  auto it = cache.find(t.phrase);
  if (it == cache.end()) it = cache.emplace(t.phrase, template_regex(t.phrase)).first;
  std::smatch m;
  if (!std::regex_match(text, m, it->second)) return std::nullopt;
  // Slot k of the phrase is argument number phrase-digit k.
  std::vector<std::optional<Term>> args(t.sorts.size());
  std::size_t group = 1;
  for (std::size_t i = 0; i + 2 < t.phrase.size(); ++i) {
    if (t.phrase[i] == '{' && t.phrase[i + 2] == '}') {
      auto slot = parse_slot(m[group++].str());
      if (!slot) return std::nullopt;
      args[static_cast<std::size_t>(t.phrase[i + 1] - '0')] = *slot;
    }
  }
  std::vector<Term> out;
  for (auto& a : args) out.push_back(*a);
  return out;
}

std::optional<Literal> parse_phrase_exact(const std::string& text) {
  for (const auto& m : kModalities) {
    std::string suffix = m.suffix;
    if (text.size() <= suffix.size() || text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    std::string action = text.substr(0, text.size() - suffix.size());
    for (const auto& t : actions()) {
      if (auto args = match_template(t, action)) {
        return Literal{m.negated, m.predicate, {Term::compound(t.name, *args)}};
      }
    }
  }
  for (const auto& t : situations()) {
    if (auto args = match_template(t, text)) return Literal{false, t.name, *args};
  }
  return std::nullopt;
}

std::optional<Literal> parse_phrase(const std::string& text) {
  if (auto l = parse_phrase_exact(text)) return l;
  if (text.empty()) return std::nullopt;
  std::string lowered = text;
  lowered[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lowered[0])));
  return parse_phrase_exact(lowered);
}

}  // namespace

std::optional<std::string> formalize_deontic_sentence(std::string_view sentence) {
  std::string s(sentence);
  if (s.empty() || s.back() != '.') return std::nullopt;
  s.pop_back();
  if (s.rfind("If ", 0) != 0) {
    auto l = parse_phrase(s);
    if (!l || !l->ground()) return std::nullopt;
    return logic::to_string(*l);
  }
  auto then = s.find(", then ");
  if (then == std::string::npos) return std::nullopt;
  std::string premises = s.substr(3, then - 3);
  Rule r;
  std::size_t pos = 0;
  while (true) {
    auto next = premises.find(" and ", pos);
    auto l = parse_phrase(premises.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (!l) return std::nullopt;
    r.antecedents.push_back(*l);
    if (next == std::string::npos) break;
    pos = next + 5;
  }
  auto c = parse_phrase(s.substr(then + 7));
  if (!c) return std::nullopt;
  r.consequent = *c;
  return logic::to_string(r);
}

}  // namespace certguide::problems
