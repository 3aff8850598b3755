// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "certguide/logic/deontic.hpp"
#include "certguide/logic/theory.hpp"
#include "support/ground_oracle.hpp"

using namespace certguide::logic;

namespace {

std::vector<std::string> strings(const std::vector<Literal>& ls) {
  std::vector<std::string> out;
  for (const auto& l : ls) out.push_back(to_string(l));
  return out;
}

const std::vector<std::string> kWrenAxioms = {
    "(dumpus 'x) -> (impus 'x)",          "(vumpus 'x) -> (not (luminous 'x))", "(dumpus 'x) -> (orange 'x)",
    "(wumpus 'x) -> (bitter 'x)",         "(jompus 'x) -> (not (orange 'x))",   "(wumpus 'x) -> (numpus 'x)",
    "(impus 'x) -> (rompus 'x)",          "(impus 'x) -> (opaque 'x)",          "(numpus 'x) -> (dull 'x)",
    "(vumpus 'x) -> (wumpus 'x)",         "(numpus 'x) -> (dumpus 'x)",         "(dumpus wren)",
};

TheoryState theory_of(const std::vector<std::string>& axioms) {
  TheoryState t;
  for (const auto& a : axioms) t.add_axiom(parse_rule(a));
  return t;
}

TheoryState from_random(const certguide::testing::RandomTheory& rt) {
  TheoryState t;
  for (const auto& f : rt.facts) t.assume(f);
  for (const auto& r : rt.rules) t.add_axiom(r);
  return t;
}

std::set<std::string> as_set(const std::vector<Literal>& ls) {
  auto v = strings(ls);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("parse rule with one antecedent") {
  Rule r = parse_rule("(dumpus 'x) -> (impus 'x)");
  REQUIRE(r.antecedents.size() == 1);
  CHECK(r.antecedents[0].predicate == "dumpus");
  CHECK(r.antecedents[0].args[0] == Term::variable("x"));
  CHECK(r.consequent.predicate == "impus");
  CHECK_FALSE(r.consequent.negated);
  CHECK(std::holds_alternative<Rule>(parse_sexpr("(dumpus 'x) -> (impus 'x)")));
}

TEST_CASE("parse ground negated literal") {
  Statement s = parse_sexpr("(not (needs dog cat))");
  REQUIRE(std::holds_alternative<Literal>(s));
  const Literal& l = std::get<Literal>(s);
  CHECK(l.negated);
  CHECK(l.predicate == "needs");
  CHECK(l.ground());
  CHECK(l.args == std::vector<Term>{Term::constant("dog"), Term::constant("cat")});
}

TEST_CASE("parse rejects arity mismatch against declared relation") {
  SymbolTable symbols;
  symbols.declare(SymbolKind::Relation, "chases");
  CHECK_THROWS_AS(parse_sexpr("(chases lion)", &symbols), SyntaxError);
  CHECK_NOTHROW(parse_sexpr("(chases lion cat)", &symbols));
  CHECK_NOTHROW(parse_sexpr("(chases lion)"));
}

TEST_CASE("parse errors") {
  for (const char* bad : {"(p a", "p a)", "(p)", "(p a b c)", "(not (not (p a)))", "((not p) a)", "(p (not a))",
                          "(p a) ->", "(p a) (q a)", "(P a)", "(p 'X)", "", "(not)", "(p a) -> -> (q a)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_sexpr(bad), SyntaxError);
  }
}

TEST_CASE("curried arrows collect antecedents in order") {
  Rule r = parse_rule("(needs 'x dog) -> (red 'x) -> (chases 'x dog)");
  REQUIRE(r.antecedents.size() == 2);
  CHECK(to_string(r.antecedents[0]) == "(needs 'x dog)");
  CHECK(to_string(r.antecedents[1]) == "(red 'x)");
  CHECK(to_string(r.consequent) == "(chases 'x dog)");
}

TEST_CASE("printing is canonical and round-trips") {
  for (const char* src : {"(dumpus 'x) -> (impus 'x)", "(not (needs dog cat))",
                          "(nice 'x) -> (not (green 'x)) -> (not (visits 'x cat))",
                          "(permissible (suggest_alternative_time review bob))", "(obligatory (accept 'i)) -> (p 'i)"}) {
    CHECK(to_string(parse_rule(src)) == src);
  }
  CHECK(to_string(parse_rule("  ( not(needs   dog cat ) )")) == "(not (needs dog cat))");
  CHECK(to_string(parse_rule("(a 'x)->(b 'x)")) == "(a 'x) -> (b 'x)");
  // `nothing`, `note` and `not_x` are ordinary identifiers.
  CHECK(to_string(parse_rule("(note not_x)")) == "(note not_x)");
}

TEST_CASE("round trip over random theories") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto t = certguide::testing::random_horn_theory(rng);
    for (const auto& r : t.rules) CHECK(parse_rule(to_string(r)) == r);
    for (const auto& f : t.facts) CHECK(parse_literal(to_string(f)) == f);
  }
}

TEST_CASE("range restriction") {
  TheoryState t;
  CHECK_THROWS_AS(t.add_axiom(parse_rule("(p 'x) -> (q 'y)")), RangeError);
  CHECK_THROWS_AS(t.add_axiom(parse_rule("(p 'x)")), RangeError);
  CHECK_NOTHROW(t.add_axiom(parse_rule("(p 'x) -> (q c)")));
  CHECK_NOTHROW(t.add_axiom(parse_rule("(e 'x 'y) -> (p 'y)")));
  CHECK_THROWS_AS(t.set_goal(parse_literal("(p 'x)")), RangeError);
}

TEST_CASE("arity is fixed by first use and errors leave the state untouched") {
  TheoryState t;
  t.add_axiom(parse_rule("(chases a b)"));
  auto before = t.symbols.predicate_arity("chases");
  CHECK(before == 2u);
  CHECK_THROWS_AS(t.add_axiom(parse_rule("(fresh 'x) -> (chases 'x)")), SyntaxError);
  CHECK_FALSE(t.symbols.predicate_arity("fresh").has_value());
  CHECK(t.axioms().size() == 1);
  t.strict_symbols = true;
  CHECK_THROWS_AS(t.assume(parse_literal("(blue bob)")), LogicError);
  t.symbols.declare(SymbolKind::Prop, "blue");
  t.symbols.declare(SymbolKind::Object, "bob");
  CHECK_NOTHROW(t.assume(parse_literal("(blue bob)")));
}

TEST_CASE("step inferences on the wren prefix") {
  TheoryState t = theory_of({"(dumpus 'x) -> (impus 'x)", "(dumpus 'x) -> (orange 'x)", "(impus 'x) -> (rompus 'x)",
                             "(dumpus wren)"});
  CHECK(strings(step_inferences(t)) == std::vector<std::string>{"(impus wren)", "(orange wren)"});
  auto closed = close_theory(t);
  CHECK(step_inferences(closed).empty());
}

TEST_CASE("two antecedents require both facts") {
  TheoryState t = theory_of({"(needs 'x dog) -> (red 'x) -> (chases 'x dog)", "(needs bob dog)"});
  CHECK(step_inferences(t).empty());
  t.assume(parse_literal("(red bob)"));
  CHECK(strings(step_inferences(t)) == std::vector<std::string>{"(chases bob dog)"});
}

TEST_CASE("assert fact") {
  TheoryState t = theory_of({"(dumpus 'x) -> (impus 'x)", "(dumpus 'x) -> (orange 'x)", "(impus 'x) -> (rompus 'x)",
                             "(dumpus wren)"});
  CHECK_THROWS_AS(assert_fact(t, parse_literal("(rompus wren)")), NotDerivable);
  assert_fact(t, parse_literal("(impus wren)"));
  CHECK(t.has_fact(parse_literal("(impus wren)")));
  REQUIRE(t.derivation_log().size() == 2);
  CHECK(t.derivation_log().back().axiom == 0u);
  CHECK(t.derivation_log().back().substitution.at("x") == Term::constant("wren"));
  // Now one step away.
  CHECK_NOTHROW(assert_fact(t, parse_literal("(rompus wren)")));
  // Already a fact, so not a new inference.
  CHECK_THROWS_AS(assert_fact(t, parse_literal("(impus wren)")), NotDerivable);
  // Assumptions are always allowed.
  CHECK_NOTHROW(t.assume(parse_literal("(vumpus wren)")));
}

TEST_CASE("closure of the wren theory") {
  TheoryState t = theory_of(kWrenAxioms);
  auto c = as_set(closure(t));
  for (const char* f : {"(impus wren)", "(rompus wren)", "(opaque wren)", "(orange wren)"}) CHECK(c.count(f));
  CHECK(c.size() == 5);
  t.set_goal(parse_literal("(orange wren)"));
  CHECK(check_goal(close_theory(t)) == GoalStatus::Proved);
  CHECK(to_answer(GoalStatus::Proved) == Answer::True);
}

TEST_CASE("closure with no axioms is the assumptions") {
  TheoryState t;
  t.assume(parse_literal("(blue bob)"));
  t.assume(parse_literal("(not (needs dog cat))"));
  CHECK(as_set(closure(t)) == std::set<std::string>{"(blue bob)", "(not (needs dog cat))"});
  CHECK(closure(TheoryState{}).empty());
}

TEST_CASE("goal adjudication") {
  TheoryState alex = theory_of({"(sheep 'x) -> (bitter 'x)", "(sheep alex)"});
  alex.set_goal(parse_literal("(not (bitter alex))"));
  CHECK(check_goal(alex) == GoalStatus::Open);
  auto closed = close_theory(alex);
  CHECK(check_goal(closed) == GoalStatus::Disproved);
  CHECK(to_answer(check_goal(closed)) == Answer::False);

  TheoryState empty;
  CHECK_THROWS_AS(check_goal(empty), GoalUnset);
  empty.set_goal(parse_literal("(blue bob)"));
  CHECK(check_goal(empty) == GoalStatus::Open);
  CHECK(to_answer(GoalStatus::Open) == Answer::Unknown);

  CHECK(parse_answer("True") == Answer::True);
  CHECK(parse_answer("Unknown") == Answer::Unknown);
  CHECK_FALSE(parse_answer("true").has_value());
}

TEST_CASE("contradictions are recorded, not fatal") {
  TheoryState t = theory_of({"(cat 'x) -> (not (kind 'x))", "(cat tom)", "(kind tom)"});
  CHECK_FALSE(t.inconsistent());
  auto c = close_theory(t);
  CHECK(c.inconsistent());
  CHECK(c.has_fact(parse_literal("(kind tom)")));
  CHECK(c.has_fact(parse_literal("(not (kind tom))")));
}

TEST_CASE("negated antecedents match negated facts only") {
  TheoryState t = theory_of({"(nice 'x) -> (not (green 'x)) -> (not (visits 'x cat))", "(nice sq)", "(green sq)"});
  CHECK(step_inferences(t).empty());
  t.assume(parse_literal("(not (green dog))"));
  t.assume(parse_literal("(nice dog)"));
  CHECK(strings(step_inferences(t)) == std::vector<std::string>{"(not (visits dog cat))"});
}

TEST_CASE("closure agrees with brute-force ground instantiation") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    auto rt = certguide::testing::random_horn_theory(rng);
    CAPTURE(i);
    CHECK(as_set(closure(from_random(rt))) == certguide::testing::brute_force_closure(rt.rules, rt.facts));
  }
}

TEST_CASE("derivation log replays soundly") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto rt = certguide::testing::random_horn_theory(rng);
    auto closed = close_theory(from_random(rt));
    std::set<std::string> prior;
    for (const auto& d : closed.derivation_log()) {
      CHECK(d.fact.ground());
      if (d.axiom) {
        const Rule& r = closed.axioms()[*d.axiom];
        for (const auto& a : r.antecedents) CHECK(prior.count(to_string(substitute(a, d.substitution))));
        CHECK(substitute(r.consequent, d.substitution) == d.fact);
      } else {
        CHECK(std::find(rt.facts.begin(), rt.facts.end(), d.fact) != rt.facts.end());
      }
      CHECK(prior.insert(to_string(d.fact)).second);
    }
    CHECK(prior.size() == closed.fact_count());
  }
}

TEST_CASE("asserting step inferences one at a time reaches the closure") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 150; ++i) {
    auto rt = certguide::testing::random_horn_theory(rng);
    TheoryState t = from_random(rt);
    auto target = as_set(closure(t));
    while (true) {
      auto step = step_inferences(t);
      if (step.empty()) break;
      assert_fact(t, step[rng() % step.size()]);
    }
    CHECK(as_set(t.facts()) == target);
  }
}

TEST_CASE("closure is monotone in the facts") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 150; ++i) {
    auto rt = certguide::testing::random_horn_theory(rng);
    auto base = as_set(closure(from_random(rt)));
    auto bigger = rt;
    auto extra = certguide::testing::random_horn_theory(rng);
    bigger.facts.push_back(extra.facts.front());
    auto grown = as_set(closure(from_random(bigger)));
    CHECK(std::includes(grown.begin(), grown.end(), base.begin(), base.end()));
  }
}

TEST_CASE("step inferences are deterministic and sorted") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto rt = certguide::testing::random_horn_theory(rng);
    auto a = strings(step_inferences(from_random(rt)));
    auto shuffled = rt;
    std::shuffle(shuffled.facts.begin(), shuffled.facts.end(), rng);
    auto b = strings(step_inferences(from_random(shuffled)));
    CHECK(a == b);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
  }
}

TEST_CASE("closure rounds stay within the ground atom bound") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto rt = certguide::testing::random_horn_theory(rng);
    TheoryState t = from_random(rt);
    std::set<std::string> preds, objects;
    for (const auto& f : rt.facts) {
      preds.insert(f.predicate);
      for (const auto& a : f.args) objects.insert(a.name);
    }
    for (const auto& r : rt.rules) {
      preds.insert(r.consequent.predicate);
      for (const auto& a : r.antecedents) preds.insert(a.predicate);
    }
    std::size_t bound = std::max<std::size_t>(1, preds.size() * objects.size() * objects.size() * 2);
    std::size_t rounds = 0;
    for (const auto& [k, level] : derivation_levels(t)) rounds = std::max(rounds, level);
    CHECK(rounds <= bound);
  }
}

TEST_CASE("deontic base") {
  const DeonticBase& d = deontic_base();
  CHECK(d.constructors.size() == 14);
  CHECK(d.object_sorts.size() == 5);
  CHECK(d.predicates == std::vector<std::string>{"permissible", "obligatory"});
  REQUIRE(d.constructor("suggest_alternative_time"));
  CHECK(d.constructor("suggest_alternative_time")->arg_sorts == std::vector<std::string>{"event", "person"});
  CHECK(d.constructor("set_reminder")->arg_sorts == std::vector<std::string>{"reminder"});
  CHECK(d.constructor("change_visibility")->arg_sorts == std::vector<std::string>{"event", "property"});
  CHECK(d.constructor("fly") == nullptr);

  std::map<std::string, std::string> sorts{{"review", "event"}, {"bob", "person"}, {"acme", "entity"},
                                           {"inv", "invite"}, {"public", "property"}};
  SymbolTable symbols;
  d.declare(symbols);
  Literal ok = parse_literal("(permissible (suggest_alternative_time review bob))", &symbols);
  CHECK(d.well_typed(ok, sorts));
  CHECK(d.well_typed(parse_literal("(not (permissible (accept inv)))"), sorts));
  CHECK(d.well_typed(parse_literal("(obligatory (add_participant review bob))"), sorts));
  CHECK(d.well_typed(parse_literal("(obligatory (add_participant review acme))"), sorts));
  CHECK(d.well_typed(parse_literal("(permissible (change_visibility review public))"), sorts));
  CHECK_FALSE(d.well_typed(parse_literal("(permissible (delegate_event review acme))"), sorts));
  CHECK_FALSE(d.well_typed(parse_literal("(permissible (suggest_alternative_time bob review))"), sorts));
  CHECK_FALSE(d.well_typed(parse_literal("(permissible (accept 'i))"), sorts));
  CHECK_FALSE(d.well_typed(parse_literal("(happy bob)"), sorts));
  CHECK_THROWS_AS(parse_literal("(permissible (accept inv review))", &symbols), SyntaxError);
  CHECK_THROWS_AS(parse_literal("(permissible a b)", &symbols), SyntaxError);
}

TEST_CASE("deontic rules bind action terms") {
  TheoryState t;
  deontic_base().declare(t.symbols);
  t.add_axiom(parse_rule("(organizer 'p 'e) -> (obligatory (check_availability 'e 'p))"));
  t.add_axiom(parse_rule("(obligatory (check_availability 'e 'p)) -> (permissible (reschedule_event 'e later))"));
  t.add_axiom(parse_rule("(permissible (reschedule_event 'e 'v)) -> (flexible 'e)"));
  t.assume(parse_literal("(organizer bob review)"));
  auto c = as_set(closure(t));
  CHECK(c.count("(obligatory (check_availability review bob))"));
  CHECK(c.count("(permissible (reschedule_event review later))"));
  CHECK(c.count("(flexible review)"));
  // No bridge from obligation to permission.
  CHECK_FALSE(c.count("(permissible (check_availability review bob))"));
  CHECK_THROWS_AS(t.add_axiom(parse_rule("(permissible (accept a b))")), SyntaxError);
}
