// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "certguide/lexical/regular_set.hpp"
#include "certguide/lexical/token_trie.hpp"
#include "certguide/lexical/vocabulary.hpp"
#include "support/nfa_oracle.hpp"

using namespace certguide::lexical;
using certguide::testing::NfaOracle;

namespace {

RegularSet lower_star() { return RegularSet::star(RegularSet::range('a', 'z')); }

std::set<std::string> token_bytes(const Vocabulary& v, const std::vector<TokenId>& ids) {
  std::set<std::string> out;
  for (auto id : ids) out.insert(v.token(id));
  return out;
}

}  // namespace

TEST_CASE("matches: literal, finite alternation, star") {
  CHECK(matches(RegularSet::literal("nothing"), "nothing"));
  CHECK_FALSE(matches(RegularSet::one_of({"(impus wren)", "(orange wren)"}), "(rompus wren)"));
  CHECK(matches(RegularSet::one_of({"(impus wren)", "(orange wren)"}), "(orange wren)"));
  CHECK(matches(lower_star(), ""));
  CHECK(matches(lower_star(), "abc"));
  CHECK_FALSE(matches(lower_star(), "aBc"));
  CHECK_FALSE(matches(RegularSet::empty(), ""));
  CHECK(matches(RegularSet::epsilon(), ""));
}

TEST_CASE("prefix_status on a literal") {
  auto r = RegularSet::literal("(impus wren)");
  CHECK(prefix_status(r, "(imp") == PrefixStatus::ViablePrefix);
  CHECK(prefix_status(r, "(impus wren)") == PrefixStatus::Match);
  CHECK(prefix_status(r, "(impus wren))") == PrefixStatus::Dead);
  CHECK(prefix_status(r, "") == PrefixStatus::ViablePrefix);
}

TEST_CASE("prefix_status on a finite alternation agrees with direct prefix enumeration") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> members;
    for (int i = 0; i < 10; ++i) members.push_back(certguide::testing::random_bytes(rng, 6));
    auto r = RegularSet::one_of(members);
    for (int q = 0; q < 20; ++q) {
      std::string s = certguide::testing::random_bytes(rng, 7);
      bool member = std::find(members.begin(), members.end(), s) != members.end();
      bool prefix = std::any_of(members.begin(), members.end(),
                                [&](const std::string& m) { return m.compare(0, s.size(), s) == 0 && m.size() >= s.size(); });
      PrefixStatus expect = member ? PrefixStatus::Match : prefix ? PrefixStatus::ViablePrefix : PrefixStatus::Dead;
      CHECK(prefix_status(r, s) == expect);
    }
  }
}

TEST_CASE("derivative matcher agrees with an NFA on random expressions") {
  std::mt19937_64 rng(20260101);
  int positives = 0;
  for (int round = 0; round < 600; ++round) {
    RegularSet r = certguide::testing::random_regular_set(rng, 4);
    NfaOracle nfa(r);
    for (int q = 0; q < 25; ++q) {
      std::string s = certguide::testing::random_bytes(rng, 32);
      if (q % 3 == 0) s = s.substr(0, s.size() % 5);
      bool expect = nfa.accepts(s);
      positives += expect ? 1 : 0;
      REQUIRE_MESSAGE(matches(r, s) == expect, r.debug_string() << " on \"" << s << "\"");
      PrefixStatus st = prefix_status(r, s);
      bool viable = nfa.extendable(s);
      CHECK((st != PrefixStatus::Dead) == viable);
    }
  }
  CHECK(positives > 100);
}

TEST_CASE("normalization keeps the empty language canonical") {
  CHECK(RegularSet::concat({RegularSet::literal("a"), RegularSet::empty()}).is_empty());
  CHECK(RegularSet::alternation({RegularSet::empty(), RegularSet::empty()}).is_empty());
  CHECK(RegularSet::one_of({}).is_empty());
  CHECK(RegularSet::literal("ab").derivative('b').is_empty());
  CHECK(RegularSet::star(RegularSet::empty()).kind() == RegularSet::Kind::Epsilon);
  auto a = RegularSet::alternation({RegularSet::literal("x"), RegularSet::literal("y")});
  auto b = RegularSet::alternation({RegularSet::literal("y"), RegularSet::literal("x"), RegularSet::literal("x")});
  CHECK(a == b);
}

TEST_CASE("star derivatives stay small") {
  auto r = RegularSet::star(RegularSet::alternation({RegularSet::literal("ab"), RegularSet::range('a', 'c')}));
  RegularSet cur = r;
  std::size_t longest = 0;
  for (int i = 0; i < 2000; ++i) {
    cur = cur.derivative(static_cast<unsigned char>("abc"[i % 3]));
    longest = std::max(longest, cur.debug_string().size());
  }
  CHECK(cur.nullable());
  CHECK(longest < 200);
}

TEST_CASE("vocabulary rejects empty and duplicate tokens") {
  CHECK_THROWS_AS(Vocabulary({"a", ""}), VocabularyError);
  CHECK_THROWS_AS(Vocabulary({"a", "b", "a"}), VocabularyError);
  Vocabulary v({"a", "b", "ab"});
  CHECK(v.find("ab") == TokenId{2});
  CHECK_FALSE(v.find("ba").has_value());
}

TEST_CASE("vocabulary file round trip keeps whitespace tokens") {
  Vocabulary v({" ", "\n", "]]", "abc", std::string("\0x", 2)});
  std::stringstream ss;
  v.save(ss);
  Vocabulary back = Vocabulary::load(ss);
  CHECK(back.tokens() == v.tokens());
}

TEST_CASE("vocabulary load reports the failing line") {
  std::stringstream dup("{\"id\":0,\"bytes\":\"61\"}\n{\"id\":1,\"bytes\":\"61\"}\n");
  CHECK_THROWS_AS(Vocabulary::load(dup), VocabularyError);
  std::stringstream bad("{\"id\":0,\"bytes\":\"61\"}\n{\"id\":1}\n");
  try {
    Vocabulary::load(bad);
    FAIL("expected error");
  } catch (const VocabularyError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::stringstream gap("{\"id\":0,\"bytes\":\"61\"}\n{\"id\":2,\"bytes\":\"62\"}\n");
  CHECK_THROWS_AS(Vocabulary::load(gap), VocabularyError);
}

TEST_CASE("trie flattening reproduces the vocabulary") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    std::set<std::string> uniq;
    while (uniq.size() < 40) {
      std::string t = certguide::testing::random_bytes(rng, 5, "ab]( ");
      if (!t.empty()) uniq.insert(t);
    }
    std::vector<std::string> tokens(uniq.begin(), uniq.end());
    std::shuffle(tokens.begin(), tokens.end(), rng);
    Vocabulary v(tokens);
    TokenTrie trie(v);
    auto flat = trie.flatten();
    std::set<std::pair<std::string, TokenId>> got(flat.begin(), flat.end());
    std::set<std::pair<std::string, TokenId>> want;
    for (TokenId id = 0; id < v.size(); ++id) want.insert({v.token(id), id});
    CHECK(got == want);
    for (TokenId id = 0; id < v.size(); ++id) {
      std::uint32_t at = TokenTrie::root();
      for (char c : v.token(id)) at = *trie.child(at, static_cast<unsigned char>(c));
      CHECK(trie.node(at).token == id);
    }
  }
}

TEST_CASE("greedy tokenization") {
  Vocabulary v({"a", "b", "ab", "]]", "]"});
  TokenTrie trie(v);
  CHECK(v.decode(trie.tokenize_greedy("abab]]]")) == "abab]]]");
  CHECK(trie.tokenize_greedy("ab]]").size() == 2);
  CHECK_THROWS_AS(trie.tokenize_greedy("abc"), VocabularyError);
}

TEST_CASE("viable_tokens: small vocabulary against a literal") {
  Vocabulary v({"a", "b", "ab", "]]"});
  TokenTrie trie(v);
  auto r = RegularSet::literal("ab");
  auto res = viable_tokens(r, "", trie);
  CHECK(token_bytes(v, res.viable) == std::set<std::string>{"a", "ab"});
  CHECK_FALSE(res.matched_before_token);
  // Brute force over all tokens.
  for (TokenId id = 0; id < v.size(); ++id) {
    bool brute = prefix_status(r, v.token(id)) != PrefixStatus::Dead;
    CHECK(brute == std::binary_search(res.viable.begin(), res.viable.end(), id));
  }
  auto done = viable_tokens(r, "ab", trie);
  CHECK(done.viable.empty());
  CHECK(done.matched_before_token);
}

TEST_CASE("viable_tokens: byte vocabulary and a digit star") {
  Vocabulary v = Vocabulary::byte_level();
  TokenTrie trie(v);
  auto r = RegularSet::star(RegularSet::range('0', '9'));
  auto res = viable_tokens(r, "4", trie);
  std::vector<TokenId> brute;
  for (TokenId id = 0; id < v.size(); ++id) {
    if (prefix_status(r, "4" + v.token(id)) != PrefixStatus::Dead) brute.push_back(id);
  }
  CHECK(res.viable == brute);
  CHECK(res.viable.size() == 10);
  CHECK(res.matched_before_token);
}

TEST_CASE("viable_tokens reports match offsets inside straddling tokens") {
  Vocabulary v({"a", "b", "b]]", "b]x", "]]"});
  TokenTrie trie(v);
  auto res = viable_tokens(RegularSet::literal("ab"), "a", trie);
  CHECK(token_bytes(v, res.viable) == std::set<std::string>{"b"});
  std::set<std::pair<std::string, std::size_t>> got;
  for (auto m : res.matches) got.insert({v.token(m.token), m.offset});
  CHECK(got == std::set<std::pair<std::string, std::size_t>>{{"b", 1}, {"b]]", 1}, {"b]x", 1}});
}

TEST_CASE("mask completeness against per-byte replay") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 150; ++round) {
    RegularSet r = certguide::testing::random_regular_set(rng, 3);
    std::set<std::string> uniq;
    while (uniq.size() < 30) {
      std::string t = certguide::testing::random_bytes(rng, 4);
      if (!t.empty()) uniq.insert(t);
    }
    Vocabulary v(std::vector<std::string>(uniq.begin(), uniq.end()));
    TokenTrie trie(v);
    std::string consumed = certguide::testing::random_bytes(rng, 3);
    if (prefix_status(r, consumed) == PrefixStatus::Dead) continue;
    NfaOracle nfa(r);
    auto res = viable_tokens(r, consumed, trie);
    for (TokenId id = 0; id < v.size(); ++id) {
      const std::string& t = v.token(id);
      bool ok = true;
      std::optional<std::size_t> first;
      for (std::size_t i = 1; i <= t.size(); ++i) {
        std::string s = consumed + t.substr(0, i);
        if (!first && nfa.accepts(s)) first = i;
        if (!nfa.extendable(s)) ok = false;
      }
      CHECK(ok == std::binary_search(res.viable.begin(), res.viable.end(), id));
      auto it = std::find_if(res.matches.begin(), res.matches.end(), [&](const MatchPoint& m) { return m.token == id; });
      if (first) {
        REQUIRE(it != res.matches.end());
        CHECK(it->offset == *first);
      } else {
        CHECK(it == res.matches.end());
      }
    }
  }
}
