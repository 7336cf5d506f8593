#include "g2r/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "g2r/error.hpp"
#include "text_util.hpp"

namespace g2r {

// ---------------------------------------------------------------- domains

DomainVector::DomainVector(int length, int alphabet_size, bool full)
    : alphabet_size_(alphabet_size),
      sets_(static_cast<size_t>(length), std::vector<bool>(static_cast<size_t>(alphabet_size), full)) {}

void DomainVector::assign(int pos, int symbol) {
  clear(pos);
  sets_[pos][symbol] = true;
}

void DomainVector::clear(int pos) { std::fill(sets_[pos].begin(), sets_[pos].end(), false); }

int DomainVector::count(int pos) const {
  return static_cast<int>(std::count(sets_[pos].begin(), sets_[pos].end(), true));
}

bool DomainVector::any_empty() const {
  for (int i = 0; i < size(); ++i)
    if (empty_at(i)) return true;
  return false;
}

bool DomainVector::all_empty() const {
  for (int i = 0; i < size(); ++i)
    if (!empty_at(i)) return false;
  return true;
}

bool DomainVector::subset_of(const DomainVector& other) const {
  if (size() != other.size() || alphabet_size_ != other.alphabet_size_) return false;
  for (int i = 0; i < size(); ++i)
    for (int s = 0; s < alphabet_size_; ++s)
      if (contains(i, s) && !other.contains(i, s)) return false;
  return true;
}

unsigned long long DomainVector::product_size() const {
  constexpr auto kMax = std::numeric_limits<unsigned long long>::max();
  unsigned long long total = 1;
  for (int i = 0; i < size(); ++i) {
    auto c = static_cast<unsigned long long>(count(i));
    if (c == 0) return 0;
    if (total > kMax / c) return kMax;
    total *= c;
  }
  return total;
}

// ---------------------------------------------------------------- predicates

PositionPredicate PositionPredicate::length_between(int lo, int hi) {
  return PositionPredicate({{PredicateAtom::Kind::Length, lo, hi}});
}
PositionPredicate PositionPredicate::length_at_least(int lo) {
  return PositionPredicate({{PredicateAtom::Kind::Length, lo, -1}});
}
PositionPredicate PositionPredicate::start_between(int lo, int hi) {
  return PositionPredicate({{PredicateAtom::Kind::Start, lo, hi}});
}
PositionPredicate PositionPredicate::start_open() {
  return PositionPredicate({{PredicateAtom::Kind::StartOpen, 1, -1}});
}

bool PositionPredicate::accepts(int start, int length, const OpenHours* open) const {
  for (const auto& atom : atoms_) {
    switch (atom.kind) {
      case PredicateAtom::Kind::Length:
        if (length < atom.lo || (atom.hi >= 0 && length > atom.hi)) return false;
        break;
      case PredicateAtom::Kind::Start:
        if (start < atom.lo || (atom.hi >= 0 && start > atom.hi)) return false;
        break;
      case PredicateAtom::Kind::StartOpen:
        if (open != nullptr) {
          auto idx = static_cast<size_t>(start - 1);
          if (idx >= open->size() || !(*open)[idx]) return false;
        }
        break;
    }
  }
  return true;
}

PositionPredicate PositionPredicate::conjoin(const PositionPredicate& other) const {
  std::vector<PredicateAtom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  return PositionPredicate(std::move(atoms));
}

// ---------------------------------------------------------------- grammar

Grammar::Grammar(std::vector<std::string> terminals, std::vector<std::string> nonterminals,
                 std::vector<Production> productions, int start)
    : terminals_(std::move(terminals)),
      nonterminals_(std::move(nonterminals)),
      productions_(std::move(productions)),
      start_(start) {
  auto nt_count = static_cast<int>(nonterminals_.size());
  auto t_count = static_cast<int>(terminals_.size());
  if (start_ < 0 || start_ >= nt_count) throw InvalidArgument("start symbol is not a nonterminal");
  std::set<std::string> seen;
  for (const auto& name : terminals_)
    if (!seen.insert("'" + name).second) throw InvalidArgument("duplicate terminal '" + name + "'");
  for (const auto& name : nonterminals_)
    if (!seen.insert(name).second) throw InvalidArgument("duplicate nonterminal " + name);
  cnf_ = true;
  for (const auto& p : productions_) {
    if (p.lhs < 0 || p.lhs >= nt_count) throw InvalidArgument("production lhs out of range");
    for (const auto& s : p.rhs) {
      if (s.id < 0 || s.id >= (s.terminal ? t_count : nt_count))
        throw InvalidArgument("production symbol out of range");
    }
    cnf_ = cnf_ && p.is_cnf();
  }
}

std::optional<int> Grammar::find_terminal(std::string_view name) const {
  for (size_t i = 0; i < terminals_.size(); ++i)
    if (terminals_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Grammar::find_nonterminal(std::string_view name) const {
  for (size_t i = 0; i < nonterminals_.size(); ++i)
    if (nonterminals_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

bool Grammar::uses_open_hours() const {
  for (const auto& p : productions_)
    for (const auto& a : p.predicate.atoms())
      if (a.kind == PredicateAtom::Kind::StartOpen) return true;
  return false;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum class Kind { Ident, Terminal, Arrow, Bar, Empty };
  Kind kind;
  std::string text;
};

bool valid_terminal_name(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '\'';
  });
}

std::vector<Token> tokenize_rule(std::string_view line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\'') {
      auto close = line.find('\'', i + 1);
      if (close == std::string_view::npos) throw ParseError(lineno, "unterminated terminal literal");
      std::string name(line.substr(i + 1, close - i - 1));
      if (!valid_terminal_name(name)) throw ParseError(lineno, "invalid terminal name '" + name + "'");
      out.push_back({Token::Kind::Terminal, name});
      i = close + 1;
      continue;
    }
    if (c == '|') {
      out.push_back({Token::Kind::Bar, "|"});
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '|' &&
           line[j] != '\'')
      ++j;
    std::string word(line.substr(i, j - i));
    if (word == "->")
      out.push_back({Token::Kind::Arrow, word});
    else if (word == "%empty" || word == "\xCE\xB5")
      out.push_back({Token::Kind::Empty, word});
    else if (word.find("->") != std::string::npos)
      throw ParseError(lineno, "expected whitespace around '->' in '" + word + "'");
    else
      out.push_back({Token::Kind::Ident, word});
    i = j;
  }
  return out;
}

PredicateAtom parse_atom(std::string_view text, int lineno) {
  // len in [lo,hi] | len = k | len >= k | len <= k | start in [lo,hi] | start >= k | start open
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto parse_int = [&](const std::string& v) {
    int value = 0;
    if (!detail::parse_int(v, value) || value < 1)
      throw ParseError(lineno, "bad integer '" + v + "' in restriction");
    return value;
  };
  PredicateAtom atom;
  std::string rest;
  if (s.rfind("len", 0) == 0) {
    atom.kind = PredicateAtom::Kind::Length;
    rest = s.substr(3);
  } else if (s.rfind("start", 0) == 0) {
    atom.kind = PredicateAtom::Kind::Start;
    rest = s.substr(5);
    if (rest == "open") {
      atom.kind = PredicateAtom::Kind::StartOpen;
      return atom;
    }
  } else {
    throw ParseError(lineno, "unknown restriction '" + std::string(text) + "'");
  }
  if (rest.rfind("in[", 0) == 0 && rest.back() == ']') {
    auto body = rest.substr(3, rest.size() - 4);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError(lineno, "expected [lo,hi]");
    atom.lo = parse_int(body.substr(0, comma));
    atom.hi = parse_int(body.substr(comma + 1));
    if (atom.hi < atom.lo) throw ParseError(lineno, "empty interval in restriction");
  } else if (rest.rfind(">=", 0) == 0) {
    atom.lo = parse_int(rest.substr(2));
    atom.hi = -1;
  } else if (rest.rfind("<=", 0) == 0) {
    atom.lo = 1;
    atom.hi = parse_int(rest.substr(2));
  } else if (rest.rfind("=", 0) == 0) {
    atom.lo = atom.hi = parse_int(rest.substr(1));
  } else {
    throw ParseError(lineno, "malformed restriction '" + std::string(text) + "'");
  }
  return atom;
}

struct RawRule {
  std::string lhs;
  std::vector<Token> rhs;
  int line;
};

struct RawRestriction {
  std::string target;
  int alternative;  // -1: every alternative
  PredicateAtom atom;
  int line;
};

}  // namespace

Grammar parse_grammar(std::string_view text) {
  std::vector<RawRule> rules;
  std::vector<RawRestriction> restrictions;
  std::optional<std::pair<std::string, int>> start_decl;
  std::vector<std::string> alphabet_decl;
  std::vector<std::string> nonterminal_decl;
  std::optional<std::string> continuing;

  int lineno = 0;
  for (auto raw : detail::split_lines(text)) {
    ++lineno;
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '@') {
      auto words = detail::split_ws(line);
      const auto& directive = words[0];
      if (directive == "@start") {
        if (words.size() != 2) throw ParseError(lineno, "@start takes one nonterminal");
        start_decl = {words[1], lineno};
      } else if (directive == "@alphabet") {
        for (const auto& tok : tokenize_rule(line.substr(directive.size()), lineno)) {
          if (tok.kind != Token::Kind::Terminal) throw ParseError(lineno, "@alphabet expects quoted terminals");
          alphabet_decl.push_back(tok.text);
        }
      } else if (directive == "@nonterminals") {
        nonterminal_decl.assign(words.begin() + 1, words.end());
      } else if (directive == "@restrict") {
        if (words.size() < 3) throw ParseError(lineno, "@restrict needs a target and a condition");
        RawRestriction r{words[1], -1, {}, lineno};
        if (auto slash = r.target.find('/'); slash != std::string::npos) {
          if (!detail::parse_int(r.target.substr(slash + 1), r.alternative) || r.alternative < 0)
            throw ParseError(lineno, "bad alternative index in '" + r.target + "'");
          r.target = r.target.substr(0, slash);
        }
        auto pos = line.find(words[1]) + words[1].size();
        r.atom = parse_atom(line.substr(pos), lineno);
        restrictions.push_back(r);
      } else {
        throw ParseError(lineno, "unknown directive " + directive);
      }
      continue;
    }
    auto tokens = tokenize_rule(line, lineno);
    std::string lhs;
    size_t body = 0;
    if (tokens[0].kind == Token::Kind::Bar) {
      if (!continuing) throw ParseError(lineno, "continuation line without a preceding rule");
      lhs = *continuing;
      body = 0;
    } else {
      if (tokens.size() < 2 || tokens[0].kind != Token::Kind::Ident || tokens[1].kind != Token::Kind::Arrow)
        throw ParseError(lineno, "expected 'NT -> ...'");
      lhs = tokens[0].text;
      body = 2;
    }
    continuing = lhs;
    std::vector<Token> alt;
    auto flush = [&] {
      rules.push_back({lhs, alt, lineno});
      alt.clear();
    };
    for (size_t i = body; i < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      if (tok.kind == Token::Kind::Bar) {
        if (body == 0 && i == 0) continue;  // leading bar of a continuation line
        if (alt.empty()) throw ParseError(lineno, "empty alternative (use %empty)");
        flush();
        continue;
      }
      if (tok.kind == Token::Kind::Arrow) throw ParseError(lineno, "unexpected '->'");
      alt.push_back(tok);
    }
    if (alt.empty()) throw ParseError(lineno, "empty alternative (use %empty)");
    flush();
  }

  if (rules.empty()) throw ParseError(lineno == 0 ? 1 : lineno, "missing start symbol: grammar has no rules");

  std::vector<std::string> terminals = alphabet_decl;
  std::unordered_map<std::string, int> terminal_ids;
  for (size_t i = 0; i < terminals.size(); ++i)
    if (!terminal_ids.emplace(terminals[i], static_cast<int>(i)).second)
      throw ParseError(1, "duplicate terminal '" + terminals[i] + "' in @alphabet");
  std::vector<std::string> nonterminals = nonterminal_decl;
  std::unordered_map<std::string, int> nt_ids;
  for (size_t i = 0; i < nonterminals.size(); ++i)
    if (!nt_ids.emplace(nonterminals[i], static_cast<int>(i)).second)
      throw ParseError(1, "duplicate nonterminal " + nonterminals[i] + " in @nonterminals");
  for (const auto& r : rules)
    if (!nt_ids.count(r.lhs)) {
      nt_ids.emplace(r.lhs, static_cast<int>(nonterminals.size()));
      nonterminals.push_back(r.lhs);
    }

  std::vector<Production> productions;
  for (const auto& r : rules) {
    Production p;
    p.lhs = nt_ids.at(r.lhs);
    bool has_empty = false;
    for (const auto& tok : r.rhs) {
      if (tok.kind == Token::Kind::Empty) {
        has_empty = true;
        continue;
      }
      if (tok.kind == Token::Kind::Terminal) {
        auto [it, inserted] = terminal_ids.emplace(tok.text, static_cast<int>(terminals.size()));
        if (inserted) terminals.push_back(tok.text);
        p.rhs.push_back({it->second, true});
      } else {
        auto it = nt_ids.find(tok.text);
        if (it == nt_ids.end()) throw ParseError(r.line, "undeclared symbol " + tok.text);
        p.rhs.push_back({it->second, false});
      }
    }
    if (has_empty && !p.rhs.empty()) throw ParseError(r.line, "%empty must stand alone in an alternative");
    productions.push_back(std::move(p));
  }

  std::vector<bool> has_rules(nonterminals.size(), false);
  for (const auto& p : productions) has_rules[p.lhs] = true;
  for (const auto& r : rules)
    for (const auto& tok : r.rhs)
      if (tok.kind == Token::Kind::Ident && !has_rules[nt_ids.at(tok.text)])
        throw ParseError(r.line, "undeclared symbol " + tok.text + " (no productions)");

  for (const auto& r : restrictions) {
    auto it = nt_ids.find(r.target);
    if (it == nt_ids.end()) throw ParseError(r.line, "restriction on unknown nonterminal " + r.target);
    int seen = 0;
    bool applied = false;
    for (auto& p : productions) {
      if (p.lhs != it->second) continue;
      if (r.alternative < 0 || seen == r.alternative) {
        p.predicate = p.predicate.conjoin(PositionPredicate({r.atom}));
        applied = true;
      }
      ++seen;
    }
    if (!applied) throw ParseError(r.line, "restriction names a missing alternative of " + r.target);
  }

  int start = nt_ids.at(rules.front().lhs);
  if (start_decl) {
    auto it = nt_ids.find(start_decl->first);
    if (it == nt_ids.end() || !has_rules[it->second])
      throw ParseError(start_decl->second, "missing start symbol " + start_decl->first);
    start = it->second;
  }
  return Grammar(std::move(terminals), std::move(nonterminals), std::move(productions), start);
}

namespace {

std::string atom_text(const PredicateAtom& a) {
  switch (a.kind) {
    case PredicateAtom::Kind::Length:
      if (a.hi < 0) return "len >= " + std::to_string(a.lo);
      return "len in [" + std::to_string(a.lo) + "," + std::to_string(a.hi) + "]";
    case PredicateAtom::Kind::Start:
      if (a.hi < 0) return "start >= " + std::to_string(a.lo);
      return "start in [" + std::to_string(a.lo) + "," + std::to_string(a.hi) + "]";
    case PredicateAtom::Kind::StartOpen:
      return "start open";
  }
  return {};
}

}  // namespace

std::string serialize_grammar(const Grammar& g) {
  std::ostringstream out;
  const auto& prods = g.productions();
  out << "@start " << g.nonterminals()[g.start()] << "\n";
  out << "@alphabet";
  for (const auto& t : g.terminals()) out << " '" << t << "'";
  out << "\n";

  // Nonterminal ids are assigned by first appearance as a left-hand side.
  std::vector<int> lhs_order;
  std::vector<bool> seen(g.nonterminals().size(), false);
  for (const auto& p : prods)
    if (!seen[p.lhs]) {
      seen[p.lhs] = true;
      lhs_order.push_back(p.lhs);
    }
  bool natural = lhs_order.size() == g.nonterminals().size();
  for (size_t i = 0; natural && i < lhs_order.size(); ++i) natural = lhs_order[i] == static_cast<int>(i);
  if (!natural) {
    out << "@nonterminals";
    for (const auto& n : g.nonterminals()) out << " " << n;
    out << "\n";
  }

  auto symbol_text = [&](const Symbol& s) {
    return s.terminal ? "'" + g.terminals()[s.id] + "'" : g.nonterminals()[s.id];
  };
  for (size_t i = 0; i < prods.size();) {
    size_t j = i;
    out << g.nonterminals()[prods[i].lhs] << " ->";
    while (j < prods.size() && prods[j].lhs == prods[i].lhs) {
      if (j > i) out << " |";
      if (prods[j].rhs.empty()) out << " %empty";
      for (const auto& s : prods[j].rhs) out << " " << symbol_text(s);
      ++j;
    }
    out << "\n";
    i = j;
  }

  for (size_t nt = 0; nt < g.nonterminals().size(); ++nt) {
    std::vector<const Production*> group;
    for (const auto& p : prods)
      if (p.lhs == static_cast<int>(nt)) group.push_back(&p);
    if (group.empty()) continue;
    bool uniform = std::all_of(group.begin(), group.end(),
                               [&](const Production* p) { return p->predicate == group[0]->predicate; });
    const auto& name = g.nonterminals()[nt];
    if (uniform) {
      for (const auto& a : group[0]->predicate.atoms()) out << "@restrict " << name << " " << atom_text(a) << "\n";
    } else {
      for (size_t k = 0; k < group.size(); ++k)
        for (const auto& a : group[k]->predicate.atoms())
          out << "@restrict " << name << "/" << k << " " << atom_text(a) << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- CNF

namespace {

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  for (int k = 2; taken.count(name); ++k) name = base + "_" + std::to_string(k);
  taken.insert(name);
  return name;
}

struct Alternative {
  std::vector<Symbol> rhs;
  PositionPredicate predicate;
  bool operator==(const Alternative&) const = default;
};

}  // namespace

Grammar to_cnf(const Grammar& g) {
  const auto nt_count = g.nonterminals().size();
  std::vector<std::vector<const Production*>> by_lhs(nt_count);
  for (const auto& p : g.productions()) by_lhs[p.lhs].push_back(&p);

  // Reachability from the start symbol.
  std::vector<bool> reachable(nt_count, false);
  std::vector<int> stack{g.start()};
  reachable[g.start()] = true;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (const auto* p : by_lhs[a])
      for (const auto& s : p->rhs)
        if (!s.terminal && !reachable[s.id]) {
          reachable[s.id] = true;
          stack.push_back(s.id);
        }
  }
  for (const auto& p : g.productions())
    if (p.rhs.empty() && reachable[p.lhs])
      throw InvalidArgument("epsilon production for " + g.nonterminals()[p.lhs] + " is reachable from the start symbol");

  if (g.cnf()) return g;

  // Unit elimination: splice the non-unit alternatives of B into A -> B,
  // conjoining predicates along the chain (all are evaluated on the same cell).
  std::vector<std::vector<Alternative>> expanded(nt_count);
  std::vector<int> state(nt_count, 0);  // 0 new, 1 in progress, 2 done
  auto expand = [&](auto&& self, int a) -> void {
    if (state[a] == 2) return;
    if (state[a] == 1) throw InvalidArgument("unit cycle through " + g.nonterminals()[a]);
    state[a] = 1;
    std::vector<Alternative> out;
    auto add = [&](Alternative alt) {
      if (std::find(out.begin(), out.end(), alt) == out.end()) out.push_back(std::move(alt));
    };
    for (const auto* p : by_lhs[a]) {
      if (p->rhs.empty()) continue;
      if (p->rhs.size() == 1 && !p->rhs[0].terminal) {
        int b = p->rhs[0].id;
        self(self, b);
        for (const auto& alt : expanded[b]) add({alt.rhs, p->predicate.conjoin(alt.predicate)});
      } else {
        add({p->rhs, p->predicate});
      }
    }
    expanded[a] = std::move(out);
    state[a] = 2;
  };
  for (size_t a = 0; a < nt_count; ++a) expand(expand, static_cast<int>(a));

  std::vector<std::string> nonterminals = g.nonterminals();
  std::set<std::string> taken(nonterminals.begin(), nonterminals.end());
  for (const auto& t : g.terminals()) taken.insert("'" + t);

  std::vector<Production> result;
  std::vector<Production> helpers;
  std::vector<int> terminal_helper(g.terminals().size(), -1);
  auto helper_for_terminal = [&](int t) {
    if (terminal_helper[t] < 0) {
      terminal_helper[t] = static_cast<int>(nonterminals.size());
      nonterminals.push_back(fresh_name("T_" + g.terminals()[t], taken));
      helpers.push_back({terminal_helper[t], {{t, true}}, {}});
    }
    return terminal_helper[t];
  };

  for (size_t a = 0; a < nt_count; ++a) {
    int split_counter = 0;
    for (const auto& alt : expanded[a]) {
      if (alt.rhs.size() == 1) {
        result.push_back({static_cast<int>(a), alt.rhs, alt.predicate});
        continue;
      }
      std::vector<Symbol> rhs = alt.rhs;
      for (auto& s : rhs)
        if (s.terminal) s = {helper_for_terminal(s.id), false};
      // Binarize: the original predicate stays on the topmost production.
      int lhs = static_cast<int>(a);
      PositionPredicate pred = alt.predicate;
      std::vector<Production>* sink = &result;
      for (size_t i = 0; i + 2 < rhs.size(); ++i) {
        int helper = static_cast<int>(nonterminals.size());
        nonterminals.push_back(fresh_name(g.nonterminals()[a] + "_" + std::to_string(++split_counter), taken));
        sink->push_back({lhs, {rhs[i], {helper, false}}, pred});
        sink = &helpers;
        lhs = helper;
        pred = {};
      }
      sink->push_back({lhs, {rhs[rhs.size() - 2], rhs.back()}, pred});
    }
  }
  result.insert(result.end(), helpers.begin(), helpers.end());
  return Grammar(g.terminals(), std::move(nonterminals), std::move(result), g.start());
}

// ---------------------------------------------------------------- shift grammar

ShiftLimits ShiftLimits::toy() { return {4, 8, 9, 10, 1, 1}; }

Grammar shift_scheduling_grammar(int activities, const ShiftLimits& lim) {
  if (activities < 1) throw InvalidArgument("shift grammar needs at least one activity");
  std::ostringstream g;
  g << "@alphabet";
  for (int k = 1; k <= activities; ++k) g << " 'a" << k << "'";
  g << " 'b' 'l' 'r'\n";
  g << "S -> R P R | R F R\n";
  g << "P -> W 'b' W\n";
  g << "F -> P L P\n";
  g << "L -> Lr\n";
  g << "Lr -> 'l' Lr | 'l'\n";
  g << "R -> 'r' R | 'r'\n";
  g << "W ->";
  for (int k = 1; k <= activities; ++k) g << (k > 1 ? " | A" : " A") << k;
  g << "\n";
  for (int k = 1; k <= activities; ++k) g << "A" << k << " -> 'a" << k << "' A" << k << " | 'a" << k << "'\n";
  g << "@restrict P len in [" << lim.part_lo << "," << lim.part_hi << "]\n";
  g << "@restrict F len in [" << lim.full_lo << "," << lim.full_hi << "]\n";
  g << "@restrict L len in [" << lim.lunch << "," << lim.lunch << "]\n";
  g << "@restrict W len >= " << lim.min_work << "\n";
  for (int k = 1; k <= activities; ++k) g << "@restrict A" << k << " start open\n";
  return parse_grammar(g.str());
}

// ---------------------------------------------------------------- domain files

DomainVector parse_domains(std::string_view text, const std::vector<std::string>& alphabet) {
  std::vector<std::string_view> rows;
  std::vector<int> row_lines;
  int lineno = 0;
  for (auto l : detail::split_lines(text)) {
    ++lineno;
    auto t = detail::trim(l);
    if (t.empty() || t.front() == '#') continue;
    rows.push_back(t);
    row_lines.push_back(lineno);
  }
  auto alpha = static_cast<int>(alphabet.size());
  DomainVector d(static_cast<int>(rows.size()), alpha, false);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == "-") continue;
    for (auto item : detail::split(rows[i], ',')) {
      auto name = detail::trim(item);
      if (name.empty()) continue;
      if (name == "*") {
        for (int s = 0; s < alpha; ++s) d.set(static_cast<int>(i), s, true);
        continue;
      }
      auto it = std::find(alphabet.begin(), alphabet.end(), name);
      if (it == alphabet.end()) throw ParseError(row_lines[i], "unknown terminal '" + std::string(name) + "'");
      d.set(static_cast<int>(i), static_cast<int>(it - alphabet.begin()), true);
    }
  }
  return d;
}

std::string serialize_domains(const DomainVector& d, const std::vector<std::string>& alphabet) {
  std::string out;
  for (int i = 0; i < d.size(); ++i) {
    if (d.count(i) == d.alphabet_size() && d.alphabet_size() > 0) {
      out += "*\n";
      continue;
    }
    if (d.count(i) == 0) {
      out += "-\n";
      continue;
    }
    bool first = true;
    for (int s = 0; s < d.alphabet_size(); ++s)
      if (d.contains(i, s)) {
        if (!first) out += ',';
        out += alphabet[s];
        first = false;
      }
    out += '\n';
  }
  return out;
}

OpenHours parse_open_hours(std::string_view text, int slots) {
  OpenHours open(static_cast<size_t>(slots), false);
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  for (const auto& tok : detail::split_ws(cleaned)) {
    if (tok.front() == '#') break;
    int lo = 0, hi = 0;
    auto dash = tok.find('-');
    bool ok = dash == std::string::npos
                  ? detail::parse_int(tok, lo) && (hi = lo, true)
                  : detail::parse_int(tok.substr(0, dash), lo) && detail::parse_int(tok.substr(dash + 1), hi);
    if (!ok || lo < 1 || hi > slots || lo > hi) throw ParseError(1, "bad open-hours entry '" + tok + "'");
    for (int s = lo; s <= hi; ++s) open[static_cast<size_t>(s - 1)] = true;
  }
  return open;
}

}  // namespace g2r
