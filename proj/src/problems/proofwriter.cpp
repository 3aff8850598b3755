// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/problems/proofwriter.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

namespace certguide::problems {

namespace {

// Nested lists of quoted strings, with "->" kept as a bare token.
struct Node {
  std::variant<std::string, std::vector<Node>> value;
  bool is_list() const { return value.index() == 1; }
  const std::string& atom() const { return std::get<0>(value); }
  const std::vector<Node>& list() const { return std::get<1>(value); }
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  Node read() {
    Node n = node();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("representation `" + std::string(s_) + "`: " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  Node node() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      std::vector<Node> items;
      while (true) {
        skip();
        if (pos_ >= s_.size()) fail("unbalanced parentheses");
        if (s_[pos_] == ')') {
          ++pos_;
          return Node{items};
        }
        items.push_back(node());
      }
    }
    if (c == '"') {
      auto end = s_.find('"', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated string");
      std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return Node{out};
    }
    if (s_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return Node{std::string("->")};
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string identifier(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '-') {
      out += '_';
    } else {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!logic::is_identifier(out) || out == "not") throw FormatError("`" + name + "` is not a usable name");
  return out;
}

std::string term(const std::string& name) {
  if (name == "someone" || name == "something") return "'x";
  return identifier(name);
}

std::string triple(const Node& n) {
  if (!n.is_list() || n.list().size() != 4) throw FormatError("a triple has four fields");
  for (const auto& f : n.list()) {
    if (f.is_list()) throw FormatError("triple fields are strings");
  }
  const auto& f = n.list();
  const std::string& sign = f[3].atom();
  if (sign != "+" && sign != "-") throw FormatError("triple polarity must be + or -");
  std::string atom = f[1].atom() == "is" ? "(" + identifier(f[2].atom()) + " " + term(f[0].atom()) + ")"
                                         : "(" + identifier(f[1].atom()) + " " + term(f[0].atom()) + " " +
                                               term(f[2].atom()) + ")";
  return sign == "-" ? "(not " + atom + ")" : atom;
}

std::optional<Answer> read_answer(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>() ? Answer::True : Answer::False;
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return logic::parse_answer(s);
  }
  return std::nullopt;
}

const nlohmann::json& need(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field `") + name + "`");
  return *it;
}

std::string need_string(const nlohmann::json& j, const char* name) {
  const auto& v = need(j, name);
  if (!v.is_string()) throw FormatError(std::string("field `") + name + "` must be a string");
  return v.get<std::string>();
}

struct Statement {
  std::string text;
  std::string axiom;
};

void declare(const logic::Literal& l, History& decls, std::set<std::string>& seen) {
  auto add = [&](std::string b) {
    if (seen.insert(b).second) decls.push_back(std::move(b));
  };
  for (const auto& a : l.args) {
    if (a.kind == logic::Term::Kind::Constant) add("object:" + a.name);
  }
  add((l.args.size() == 2 ? "relation:" : "prop:") + l.predicate);
}

void add_question(ImportReport& report, const std::string& id, const std::vector<Statement>& theory,
                  const std::string& question, const std::string& goal, const nlohmann::json* answer) {
  std::optional<Answer> stated = answer ? read_answer(*answer) : std::nullopt;
  if (!stated || *stated == Answer::Unknown) {
    ++report.skipped_unknown;
    return;
  }
  Problem p;
  p.id = id;
  p.ontology = Ontology::Fictional;
  p.question = question;
  p.answer = *stated;
  std::set<std::string> seen;
  for (const auto& s : theory) {
    auto rule = logic::parse_rule(s.axiom);
    for (const auto& a : rule.antecedents) declare(a, p.theory, seen);
    declare(rule.consequent, p.theory, seen);
  }
  declare(logic::parse_literal(goal), p.theory, seen);
  for (const auto& s : theory) {
    p.context.push_back(s.text);
    p.theory.push_back("axiom:" + s.axiom);
  }
  p.theory.push_back("goal:" + goal);
  auto replayed = logicguide::replay(p.theory);
  if (!replayed.rejected.empty()) {
    throw FormatError(id + ": " + p.theory[replayed.rejected.front().block] + " rejected: " +
                      replayed.rejected.front().reason);
  }
  if (oracle_answer(replayed.state) != p.answer) {
    ++report.skipped_mismatch;
    return;
  }
  p.hops = shortest_hops(p.theory).value_or(0);
  report.problems.push_back(std::move(p));
}

// Entries of a {"triple1": {...}, ...} map in numeric key order.
std::vector<std::pair<std::string, const nlohmann::json*>> ordered(const nlohmann::json& m) {
  std::vector<std::pair<std::string, const nlohmann::json*>> out;
  if (!m.is_object()) throw FormatError("expected an object of numbered entries");
  for (auto it = m.begin(); it != m.end(); ++it) out.emplace_back(it.key(), &it.value());
  auto number = [](const std::string& k) {
    auto d = k.find_first_of("0123456789");
    return d == std::string::npos ? 0UL : std::stoul(k.substr(d));
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return number(a.first) < number(b.first); });
  return out;
}

}  // namespace

std::string formalize_proofwriter(std::string_view representation) {
  Node n = Reader(representation).read();
  if (!n.is_list()) throw FormatError("expected a parenthesized representation");
  const auto& items = n.list();
  if (items.size() == 3 && !items[1].is_list() && items[1].atom() == "->") {
    if (!items[0].is_list()) throw FormatError("rule premises must be a list");
    std::string out;
    for (const auto& premise : items[0].list()) out += triple(premise) + " -> ";
    if (out.empty()) throw FormatError("rule without premises");
    auto rule = out + triple(items[2]);
    return logic::to_string(logic::parse_rule(rule));
  }
  return triple(n);
}

ImportReport import_proofwriter_record(const nlohmann::json& record) {
  if (!record.is_object()) throw FormatError("record is not an object");
  ImportReport report;
  std::string id = record.contains("id") && record["id"].is_string() ? record["id"].get<std::string>() : "proofwriter";

  if (record.contains("triples") || record.contains("questions")) {
    std::vector<Statement> theory;
    for (const char* key : {"triples", "rules"}) {
      if (!record.contains(key)) continue;
      for (const auto& [name, entry] : ordered(record[key])) {
        theory.push_back({need_string(*entry, "text"), formalize_proofwriter(need_string(*entry, "representation"))});
      }
    }
    for (const auto& [name, q] : ordered(need(record, "questions"))) {
      auto answer = q->find("answer");
      add_question(report, id + "-" + name, theory, need_string(*q, "question"),
                   formalize_proofwriter(need_string(*q, "representation")),
                   answer == q->end() ? nullptr : &*answer);
    }
    return report;
  }

  const auto& t = need(record, "theory");
  if (!t.is_array()) throw FormatError("field `theory` must be a list");
  std::vector<Statement> theory;
  for (const auto& entry : t) {
    theory.push_back({need_string(entry, "text"), formalize_proofwriter(need_string(entry, "representation"))});
  }
  const auto& q = need(record, "question");
  auto answer = record.find("answer");
  add_question(report, id, theory, need_string(q, "text"), formalize_proofwriter(need_string(q, "representation")),
               answer == record.end() ? nullptr : &*answer);
  return report;
}

ImportReport import_proofwriter(std::string_view jsonl) {
  ImportReport report;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    auto end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto r = import_proofwriter_record(nlohmann::json::parse(line));
      for (auto& p : r.problems) report.problems.push_back(std::move(p));
      report.skipped_unknown += r.skipped_unknown;
      report.skipped_mismatch += r.skipped_mismatch;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const logic::LogicError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return report;
}

ImportReport load_proofwriter(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_proofwriter(ss.str());
}

}  // namespace certguide::problems
