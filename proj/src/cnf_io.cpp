#include <algorithm>
#include <sstream>

#include "g2r/encode.hpp"
#include "g2r/error.hpp"
#include "text_util.hpp"

namespace g2r {

using detail::parse_int;
using detail::split_lines;
using detail::split_ws;
using detail::trim;

std::string serialize_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count() << " " << f.clauses().size() << "\n";
  for (const auto& c : f.clauses()) {
    for (int l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool header = false;
  size_t expected = 0;
  std::vector<int> pending;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    auto words = split_ws(line);
    if (words[0] == "p") {
      int vars = 0;
      if (header || words.size() != 4 || words[1] != "cnf" || !parse_int(words[2], vars) ||
          !parse_int(words[3], expected) || vars < 0)
        throw ParseError(lineno, "bad problem line");
      f.reserve_unnamed(vars);
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "clause before problem line");
    for (const auto& w : words) {
      int lit = 0;
      if (!parse_int(w, lit)) throw ParseError(lineno, "bad literal '" + w + "'");
      if (lit == 0) {
        try {
          f.add_clause(std::move(pending));
        } catch (const InvalidArgument& e) {
          throw ParseError(lineno, e.what());
        }
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!header) throw ParseError(lineno, "missing problem line");
  if (!pending.empty()) throw ParseError(lineno, "unterminated clause");
  if (f.clauses().size() != expected)
    throw ParseError(lineno, "header announces " + std::to_string(expected) + " clauses, found " +
                                 std::to_string(f.clauses().size()));
  return f;
}

std::string serialize_atoms(const CnfFormula& f) {
  std::ostringstream out;
  for (int v = 1; v <= f.variable_count(); ++v)
    if (!f.name(v).empty()) out << "atom " << f.name(v) << " " << v << "\n";
  return out.str();
}

std::vector<std::pair<std::string, int>> parse_atoms(std::string_view text) {
  std::vector<std::pair<std::string, int>> out;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto words = split_ws(line);
    int v = 0;
    if (words.size() != 3 || words[0] != "atom" || !parse_int(words[2], v) || v < 1)
      throw ParseError(lineno, "expected 'atom <name> <index>'");
    out.emplace_back(words[1], v);
  }
  return out;
}

OpbProblem cnf_to_opb(const CnfFormula& f) {
  OpbProblem p;
  p.variables = f.variable_count();
  for (const auto& c : f.clauses()) {
    PbConstraint pc;
    for (int l : c) pc.terms.push_back({1, l});
    pc.rhs = 1;
    p.constraints.push_back(std::move(pc));
  }
  return p;
}

namespace {

void write_terms(std::ostream& out, const std::vector<PbTerm>& terms) {
  for (const auto& t : terms) {
    out << (t.coef >= 0 ? "+" : "") << t.coef << " ";
    if (t.literal < 0) out << "~";
    out << "x" << std::abs(t.literal) << " ";
  }
}

}  // namespace

std::string serialize_opb(const OpbProblem& p) {
  std::ostringstream out;
  out << "* #variable= " << p.variables << " #constraint= " << p.constraints.size() << "\n";
  if (!p.objective.empty()) {
    out << "min: ";
    write_terms(out, p.objective);
    out << ";\n";
  }
  for (const auto& c : p.constraints) {
    write_terms(out, c.terms);
    out << ">= " << c.rhs << " ;\n";
  }
  return out.str();
}

OpbProblem parse_opb(std::string_view text) {
  OpbProblem p;
  int lineno = 0;
  int max_var = 0;
  bool declared = false;
  auto read_terms = [&](const std::vector<std::string>& words, size_t from, size_t to) {
    std::vector<PbTerm> terms;
    if ((to - from) % 2 != 0) throw ParseError(lineno, "terms must be coefficient/literal pairs");
    for (size_t k = from; k < to; k += 2) {
      PbTerm t;
      std::string_view coef = words[k];
      if (!coef.empty() && coef[0] == '+') coef.remove_prefix(1);
      if (!parse_int(coef, t.coef)) throw ParseError(lineno, "bad coefficient '" + words[k] + "'");
      std::string_view lit = words[k + 1];
      bool negated = !lit.empty() && lit[0] == '~';
      if (negated) lit.remove_prefix(1);
      int v = 0;
      if (lit.size() < 2 || lit[0] != 'x' || !parse_int(lit.substr(1), v) || v < 1)
        throw ParseError(lineno, "bad literal '" + words[k + 1] + "'");
      max_var = std::max(max_var, v);
      t.literal = negated ? -v : v;
      terms.push_back(t);
    }
    return terms;
  };
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '*') {
      auto words = split_ws(line.substr(1));
      for (size_t k = 0; k + 1 < words.size(); ++k)
        if (words[k] == "#variable=") {
          if (!parse_int(words[k + 1], p.variables)) throw ParseError(lineno, "bad #variable= count");
          declared = true;
        }
      continue;
    }
    auto words = split_ws(line);
    if (words.back() != ";") throw ParseError(lineno, "missing ';'");
    if (words[0] == "min:") {
      p.objective = read_terms(words, 1, words.size() - 1);
      continue;
    }
    if (words.size() < 3 || words[words.size() - 3] != ">=")
      throw ParseError(lineno, "only '>=' constraints are supported");
    PbConstraint c;
    c.terms = read_terms(words, 0, words.size() - 3);
    if (!parse_int(words[words.size() - 2], c.rhs)) throw ParseError(lineno, "bad right-hand side");
    p.constraints.push_back(std::move(c));
  }
  if (!declared) p.variables = max_var;
  if (max_var > p.variables) throw ParseError(lineno, "literal beyond declared variable count");
  return p;
}

}  // namespace g2r
