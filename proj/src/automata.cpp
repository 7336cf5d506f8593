#include "g2r/automata.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "g2r/error.hpp"
#include "text_util.hpp"

namespace g2r {

Dfa::Dfa(std::vector<std::string> alpha, int count)
    : alphabet(std::move(alpha)),
      states(count),
      accepting(static_cast<size_t>(count), false),
      delta(static_cast<size_t>(count) * alphabet.size(), -1) {}

bool Dfa::accepts(const std::vector<int>& word) const {
  int q = initial;
  for (int s : word) {
    if (q < 0) return false;
    q = next(q, s);
  }
  return q >= 0 && accepting[q];
}

bool LayeredAutomaton::deterministic() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& t : transitions)
    if (!seen.insert({t.src, t.symbol}).second) return false;
  return true;
}

namespace {

std::vector<std::vector<std::pair<int, int>>> out_lists(const LayeredAutomaton& a) {
  std::vector<std::vector<std::pair<int, int>>> out(static_cast<size_t>(a.state_count()));
  for (const auto& t : a.transitions) out[t.src].emplace_back(t.symbol, t.dst);
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

std::vector<bool> accepting_mask(const LayeredAutomaton& a) {
  std::vector<bool> mask(static_cast<size_t>(a.state_count()), false);
  for (int q : a.accepting) mask[q] = true;
  return mask;
}

LayeredAutomaton empty_like(const LayeredAutomaton& a) {
  LayeredAutomaton e;
  e.n = a.n;
  e.alphabet = a.alphabet;
  return e;
}

}  // namespace

bool LayeredAutomaton::accepts(const std::vector<int>& word) const {
  if (empty() || static_cast<int>(word.size()) != n) return false;
  auto out = out_lists(*this);
  std::vector<int> current{initial};
  for (int s : word) {
    std::set<int> next;
    for (int q : current)
      for (auto [sym, dst] : out[q])
        if (sym == s) next.insert(dst);
    current.assign(next.begin(), next.end());
    if (current.empty()) return false;
  }
  auto mask = accepting_mask(*this);
  return std::any_of(current.begin(), current.end(), [&](int q) { return mask[q]; });
}

std::vector<std::vector<int>> LayeredAutomaton::language(size_t limit) const {
  std::vector<std::vector<int>> words;
  if (empty()) return words;
  auto out = out_lists(*this);
  auto mask = accepting_mask(*this);
  const int sigma = static_cast<int>(alphabet.size());
  std::vector<int> word;
  std::function<void(const std::vector<int>&)> walk = [&](const std::vector<int>& current) {
    if (static_cast<int>(word.size()) == n) {
      if (std::any_of(current.begin(), current.end(), [&](int q) { return mask[q]; })) {
        if (words.size() >= limit) throw BudgetExceeded("language enumeration limit reached", std::to_string(limit));
        words.push_back(word);
      }
      return;
    }
    for (int s = 0; s < sigma; ++s) {
      std::set<int> next;
      for (int q : current)
        for (auto [sym, dst] : out[q])
          if (sym == s) next.insert(dst);
      if (next.empty()) continue;
      word.push_back(s);
      walk(std::vector<int>(next.begin(), next.end()));
      word.pop_back();
    }
  };
  walk({initial});
  return words;
}

std::vector<int> LayeredAutomaton::layer_sizes() const {
  std::vector<int> sizes(static_cast<size_t>(n) + 1, 0);
  for (int l : layer) ++sizes[l];
  return sizes;
}

LayeredAutomaton canonicalize(const LayeredAutomaton& a) {
  if (a.empty()) return empty_like(a);
  const int count = a.state_count();
  std::vector<std::vector<int>> in(static_cast<size_t>(count));
  for (const auto& t : a.transitions) in[t.dst].push_back(t.src);
  std::vector<bool> live(static_cast<size_t>(count), false);
  std::deque<int> work;
  for (int q : a.accepting)
    if (!live[q]) {
      live[q] = true;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int p : in[q])
      if (!live[p]) {
        live[p] = true;
        work.push_back(p);
      }
  }
  if (!live[a.initial]) return empty_like(a);

  auto out = out_lists(a);
  std::vector<int> renum(static_cast<size_t>(count), -1);
  std::vector<int> order;
  renum[a.initial] = 0;
  order.push_back(a.initial);
  for (size_t head = 0; head < order.size(); ++head) {
    for (auto [sym, dst] : out[order[head]]) {
      if (!live[dst] || renum[dst] >= 0) continue;
      renum[dst] = static_cast<int>(order.size());
      order.push_back(dst);
    }
  }

  LayeredAutomaton r = empty_like(a);
  r.initial = 0;
  r.layer.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) r.layer[i] = a.layer[order[i]];
  for (const auto& t : a.transitions)
    if (renum[t.src] >= 0 && renum[t.dst] >= 0) r.transitions.push_back({renum[t.src], t.symbol, renum[t.dst]});
  std::sort(r.transitions.begin(), r.transitions.end());
  r.transitions.erase(std::unique(r.transitions.begin(), r.transitions.end()), r.transitions.end());
  for (int q : a.accepting)
    if (renum[q] >= 0) r.accepting.push_back(renum[q]);
  std::sort(r.accepting.begin(), r.accepting.end());
  r.accepting.erase(std::unique(r.accepting.begin(), r.accepting.end()), r.accepting.end());
  return r;
}

LayeredAutomaton unfold(const Dfa& a, int n) {
  if (n < 1) throw InvalidArgument("unfold length must be at least 1");
  LayeredAutomaton r;
  r.n = n;
  r.alphabet = a.alphabet;
  if (a.states == 0 || a.initial < 0) return r;
  const int sigma = static_cast<int>(a.alphabet.size());
  std::vector<int> current{a.initial};
  std::vector<int> current_ids{0};
  r.layer.push_back(0);
  r.initial = 0;
  for (int k = 0; k < n; ++k) {
    std::map<int, int> next_ids;
    for (size_t i = 0; i < current.size(); ++i) {
      for (int s = 0; s < sigma; ++s) {
        int q = a.next(current[i], s);
        if (q < 0) continue;
        auto [it, fresh] = next_ids.try_emplace(q, r.state_count());
        if (fresh) r.layer.push_back(k + 1);
        r.transitions.push_back({current_ids[i], s, it->second});
      }
    }
    current.clear();
    current_ids.clear();
    for (auto [q, id] : next_ids) {
      current.push_back(q);
      current_ids.push_back(id);
    }
  }
  for (size_t i = 0; i < current.size(); ++i)
    if (a.accepting[current[i]]) r.accepting.push_back(current_ids[i]);
  return canonicalize(r);
}

LayeredAutomaton simplify(const LayeredAutomaton& a, const DomainVector& d) {
  if (d.size() != a.n) throw InvalidArgument("domain length does not match automaton layers");
  LayeredAutomaton r = a;
  r.transitions.clear();
  for (const auto& t : a.transitions)
    if (d.contains(a.layer[t.src], t.symbol)) r.transitions.push_back(t);
  return canonicalize(r);
}

LayeredAutomaton subset_construction(const LayeredAutomaton& a, size_t budget) {
  if (a.empty()) return empty_like(a);
  auto out = out_lists(a);
  auto mask = accepting_mask(a);
  const int sigma = static_cast<int>(a.alphabet.size());
  LayeredAutomaton r = empty_like(a);
  r.initial = 0;
  r.layer.push_back(0);
  std::vector<std::vector<int>> current{{a.initial}};
  std::vector<int> current_ids{0};
  for (int k = 0; k < a.n; ++k) {
    std::map<std::vector<int>, int> next_ids;
    for (size_t i = 0; i < current.size(); ++i) {
      for (int s = 0; s < sigma; ++s) {
        std::set<int> target;
        for (int q : current[i])
          for (auto [sym, dst] : out[q])
            if (sym == s) target.insert(dst);
        if (target.empty()) continue;
        std::vector<int> key(target.begin(), target.end());
        auto [it, fresh] = next_ids.try_emplace(std::move(key), r.state_count());
        if (fresh) {
          r.layer.push_back(k + 1);
          if (static_cast<size_t>(r.state_count()) > budget)
            throw BudgetExceeded("subset construction exceeded " + std::to_string(budget) + " states",
                                 std::to_string(r.state_count()));
        }
        r.transitions.push_back({current_ids[i], s, it->second});
      }
    }
    current.clear();
    current_ids.clear();
    for (auto& [set, id] : next_ids) {
      current.push_back(set);
      current_ids.push_back(id);
    }
  }
  for (size_t i = 0; i < current.size(); ++i)
    if (std::any_of(current[i].begin(), current[i].end(), [&](int q) { return mask[q]; }))
      r.accepting.push_back(current_ids[i]);
  return canonicalize(r);
}

namespace {

// Rebuilds `a` with states mapped through `cls` (class representatives).
LayeredAutomaton quotient(const LayeredAutomaton& a, const std::vector<int>& cls) {
  LayeredAutomaton r = a;
  r.transitions.clear();
  for (const auto& t : a.transitions) r.transitions.push_back({cls[t.src], t.symbol, cls[t.dst]});
  r.initial = cls[a.initial];
  r.accepting.clear();
  for (int q : a.accepting) r.accepting.push_back(cls[q]);
  return canonicalize(r);
}

using Signature = std::pair<bool, std::vector<std::pair<int, int>>>;

// One merging sweep. Outgoing mode walks layers n..0 and compares
// (accepting, {(symbol, dst)}); incoming mode walks 0..n and compares
// (initial, {(symbol, src)}). Returns the number of merged states.
int merge_sweep(LayeredAutomaton& a, bool outgoing) {
  const int count = a.state_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(count));
  for (const auto& t : a.transitions) {
    if (outgoing)
      adj[t.src].emplace_back(t.symbol, t.dst);
    else
      adj[t.dst].emplace_back(t.symbol, t.src);
  }
  auto mask = accepting_mask(a);
  std::vector<std::vector<int>> by_layer(static_cast<size_t>(a.n) + 1);
  for (int q = 0; q < count; ++q) by_layer[a.layer[q]].push_back(q);

  std::vector<int> cls(static_cast<size_t>(count));
  std::iota(cls.begin(), cls.end(), 0);
  int merged = 0;
  for (int step = 0; step <= a.n; ++step) {
    int k = outgoing ? a.n - step : step;
    std::map<Signature, int> seen;
    for (int q : by_layer[k]) {
      std::vector<std::pair<int, int>> sig;
      for (auto [sym, other] : adj[q]) sig.emplace_back(sym, cls[other]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      bool flag = outgoing ? static_cast<bool>(mask[q]) : q == a.initial;
      auto [it, fresh] = seen.try_emplace(Signature{flag, std::move(sig)}, q);
      if (!fresh) {
        cls[q] = it->second;
        ++merged;
      }
    }
  }
  if (merged > 0) a = quotient(a, cls);
  return merged;
}

}  // namespace

LayeredAutomaton minimize_layered(const LayeredAutomaton& input) {
  if (!input.deterministic()) throw InvalidArgument("minimize_layered requires a deterministic automaton");
  LayeredAutomaton a = canonicalize(input);
  if (a.empty()) return a;
  merge_sweep(a, true);
  return a;
}

LayeredAutomaton heuristic_minimize_nfa(const LayeredAutomaton& input) {
  LayeredAutomaton a = canonicalize(input);
  if (a.empty()) return a;
  while (true) {
    int merged = merge_sweep(a, true);
    merged += merge_sweep(a, false);
    if (merged == 0) break;
  }
  return a;
}

Dfa minimize_dfa(const Dfa& a) {
  const int sigma = static_cast<int>(a.alphabet.size());
  if (a.states == 0 || a.initial < 0) return Dfa(a.alphabet, 0);

  // Reachable part, completed with a sink at index `sink`.
  std::vector<int> reach_id(static_cast<size_t>(a.states), -1);
  std::vector<int> order{a.initial};
  reach_id[a.initial] = 0;
  for (size_t head = 0; head < order.size(); ++head)
    for (int s = 0; s < sigma; ++s) {
      int q = a.next(order[head], s);
      if (q >= 0 && reach_id[q] < 0) {
        reach_id[q] = static_cast<int>(order.size());
        order.push_back(q);
      }
    }
  const int count = static_cast<int>(order.size());
  const int sink = count;
  auto succ = [&](int q, int s) {
    if (q == sink) return sink;
    int t = a.next(order[q], s);
    return t < 0 ? sink : reach_id[t];
  };
  std::vector<int> cls(static_cast<size_t>(count) + 1);
  for (int q = 0; q < count; ++q) cls[q] = a.accepting[order[q]] ? 1 : 0;
  cls[sink] = 0;
  int classes = 0;
  while (true) {
    std::map<std::vector<int>, int> sigs;
    std::vector<int> next(cls.size());
    for (int q = 0; q <= count; ++q) {
      std::vector<int> sig{cls[q]};
      for (int s = 0; s < sigma; ++s) sig.push_back(cls[succ(q, s)]);
      auto [it, fresh] = sigs.try_emplace(std::move(sig), static_cast<int>(sigs.size()));
      next[q] = it->second;
    }
    int refined = static_cast<int>(sigs.size());
    cls = std::move(next);
    if (refined == classes) break;
    classes = refined;
  }

  // Renumber live classes by BFS from the initial class; the sink's class is dead.
  const int dead = cls[sink];
  std::vector<int> renum(static_cast<size_t>(classes), -1);
  std::vector<int> rep(static_cast<size_t>(classes), -1);
  for (int q = count; q >= 0; --q) rep[cls[q]] = q;
  std::vector<int> bfs;
  if (cls[0] != dead) {
    renum[cls[0]] = 0;
    bfs.push_back(cls[0]);
  }
  for (size_t head = 0; head < bfs.size(); ++head)
    for (int s = 0; s < sigma; ++s) {
      int c = cls[succ(rep[bfs[head]], s)];
      if (c != dead && renum[c] < 0) {
        renum[c] = static_cast<int>(bfs.size());
        bfs.push_back(c);
      }
    }
  // Empty language: a single rejecting state.
  if (bfs.empty()) return Dfa(a.alphabet, 1);
  Dfa r(a.alphabet, static_cast<int>(bfs.size()));
  for (size_t i = 0; i < bfs.size(); ++i) {
    int q = rep[bfs[i]];
    r.accepting[i] = a.accepting[order[q]];
    for (int s = 0; s < sigma; ++s) {
      int c = cls[succ(q, s)];
      r.set(static_cast<int>(i), s, c == dead ? -1 : renum[c]);
    }
  }
  return r;
}

namespace {

// Builds the reachable part of a DFA whose states are integer keys.
template <typename Step, typename Accept>
Dfa build_reachable(std::vector<std::string> alphabet, long long start, Step step, Accept accept) {
  const int sigma = static_cast<int>(alphabet.size());
  std::unordered_map<long long, int> ids{{start, 0}};
  std::vector<long long> keys{start};
  std::vector<std::vector<int>> rows;
  for (size_t head = 0; head < keys.size(); ++head) {
    std::vector<int> row(static_cast<size_t>(sigma));
    for (int s = 0; s < sigma; ++s) {
      long long to = step(keys[head], s);
      auto [it, fresh] = ids.try_emplace(to, static_cast<int>(keys.size()));
      if (fresh) keys.push_back(to);
      row[s] = it->second;
    }
    rows.push_back(std::move(row));
  }
  Dfa d(std::move(alphabet), static_cast<int>(keys.size()));
  for (size_t q = 0; q < keys.size(); ++q) {
    d.accepting[q] = accept(keys[q]);
    for (int s = 0; s < sigma; ++s) d.set(static_cast<int>(q), s, rows[q][s]);
  }
  return d;
}

}  // namespace

Dfa contains_length_mod_dfa(int m) {
  if (m < 1 || m > 20) throw InvalidArgument("contains_length_mod_dfa: m must be in 1..20");
  std::vector<std::string> alphabet;
  for (int s = 0; s < m; ++s) alphabet.push_back(std::to_string(s));
  // key = len_mod << m | seen
  auto step = [m](long long key, int s) {
    long long len = key >> m, seen = key & ((1LL << m) - 1);
    return (((len + 1) % m) << m) | seen | (1LL << s);
  };
  auto accept = [m](long long key) {
    long long len = key >> m, seen = key & ((1LL << m) - 1);
    return ((seen >> len) & 1) != 0;
  };
  return build_reachable(std::move(alphabet), 0, step, accept);
}

Dfa repeat_last_differ_dfa(int m) {
  if (m < 2 || m > 20) throw InvalidArgument("repeat_last_differ_dfa: m must be in 2..20");
  std::vector<std::string> alphabet;
  for (int s = 1; s <= m; ++s) alphabet.push_back(std::to_string(s));
  // key = ((seen * 2 + repeated) * 2 + differ) * (m + 1) + last, last == m means none
  auto unpack = [m](long long key) {
    long long last = key % (m + 1);
    key /= (m + 1);
    long long differ = key % 2;
    key /= 2;
    long long repeated = key % 2;
    long long seen = key / 2;
    return std::array<long long, 4>{seen, repeated, differ, last};
  };
  auto pack = [m](long long seen, long long repeated, long long differ, long long last) {
    return ((seen * 2 + repeated) * 2 + differ) * (m + 1) + last;
  };
  auto step = [=](long long key, int s) {
    auto [seen, repeated, differ, last] = unpack(key);
    long long rep = repeated | ((seen >> s) & 1);
    long long diff = (last != m && last != s) ? 1 : 0;
    return pack(seen | (1LL << s), rep, diff, s);
  };
  auto accept = [=](long long key) {
    auto [seen, repeated, differ, last] = unpack(key);
    return repeated == 1 && differ == 1;
  };
  return build_reachable(std::move(alphabet), pack(0, 0, 0, m), step, accept);
}

namespace {

int symbol_index(const std::vector<std::string>& alphabet, std::string_view name, int line) {
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) throw ParseError(line, "unknown symbol '" + std::string(name) + "'");
  return static_cast<int>(it - alphabet.begin());
}

int parse_id(std::string_view s, int limit, int line, const char* what) {
  int v = 0;
  if (!detail::parse_int(s, v) || v < 0 || v >= limit)
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

LayeredAutomaton parse_fla(std::string_view text) {
  auto lines = detail::split_lines(text);
  LayeredAutomaton a;
  int states = -1;
  size_t expected_transitions = 0;
  bool header = false, saw_initial = false;
  std::vector<int> layer_of;
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const int line = static_cast<int>(ln) + 1;
    auto body = detail::trim(lines[ln]);
    if (body.empty() || body.front() == '#') continue;
    auto words = detail::split_ws(body);
    if (!header) {
      if (words.size() != 4 || words[0] != "fla") throw ParseError(line, "expected 'fla <n> <states> <transitions>'");
      if (!detail::parse_int(words[1], a.n) || a.n < 1) throw ParseError(line, "bad layer count");
      if (!detail::parse_int(words[2], states) || states < 0) throw ParseError(line, "bad state count");
      if (!detail::parse_int(words[3], expected_transitions)) throw ParseError(line, "bad transition count");
      layer_of.assign(static_cast<size_t>(states), -1);
      header = true;
      continue;
    }
    if (words[0] == "alphabet") {
      a.alphabet.assign(words.begin() + 1, words.end());
    } else if (words[0] == "initial") {
      if (words.size() != 2) throw ParseError(line, "expected 'initial <id>'");
      a.initial = words[1] == "-" ? -1 : parse_id(words[1], states, line, "state");
      saw_initial = true;
    } else if (words[0] == "final") {
      for (size_t i = 1; i < words.size(); ++i) a.accepting.push_back(parse_id(words[i], states, line, "state"));
    } else {
      if (words.size() != 4) throw ParseError(line, "expected '<layer> <src> <symbol> <dst>'");
      int k = 0;
      if (!detail::parse_int(words[0], k) || k < 0 || k >= a.n) throw ParseError(line, "bad layer");
      int src = parse_id(words[1], states, line, "state");
      int dst = parse_id(words[3], states, line, "state");
      int sym = symbol_index(a.alphabet, words[2], line);
      for (auto [q, l] : {std::pair{src, k}, std::pair{dst, k + 1}}) {
        if (layer_of[q] >= 0 && layer_of[q] != l) throw ParseError(line, "state " + std::to_string(q) + " in two layers");
        layer_of[q] = l;
      }
      a.transitions.push_back({src, sym, dst});
    }
  }
  if (!header) throw ParseError(1, "missing fla header");
  if (!saw_initial) throw ParseError(static_cast<int>(lines.size()), "missing initial line");
  if (a.transitions.size() != expected_transitions)
    throw ParseError(1, "header announces " + std::to_string(expected_transitions) + " transitions, found " +
                            std::to_string(a.transitions.size()));
  for (int q : a.accepting) {
    if (layer_of[q] >= 0 && layer_of[q] != a.n) throw ParseError(1, "final state outside the last layer");
    layer_of[q] = a.n;
  }
  if (a.initial >= 0) {
    if (layer_of[a.initial] > 0) throw ParseError(1, "initial state outside layer 0");
    layer_of[a.initial] = 0;
  }
  for (auto& l : layer_of)
    if (l < 0) l = 0;
  a.layer = std::move(layer_of);
  return a;
}

std::string serialize_fla(const LayeredAutomaton& a) {
  std::ostringstream out;
  out << "fla " << a.n << " " << a.state_count() << " " << a.transitions.size() << "\n";
  out << "alphabet";
  for (const auto& s : a.alphabet) out << " " << s;
  out << "\n";
  for (const auto& t : a.transitions)
    out << a.layer[t.src] << " " << t.src << " " << a.alphabet[t.symbol] << " " << t.dst << "\n";
  out << "initial ";
  if (a.initial < 0)
    out << "-";
  else
    out << a.initial;
  out << "\nfinal";
  for (int q : a.accepting) out << " " << q;
  out << "\n";
  return out.str();
}

Dfa parse_dfa(std::string_view text) {
  auto lines = detail::split_lines(text);
  Dfa d;
  bool header = false;
  int states = 0, initial = 0;
  std::vector<int> finals;
  std::vector<std::tuple<int, std::string, int, int>> edges;
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const int line = static_cast<int>(ln) + 1;
    auto body = detail::trim(lines[ln]);
    if (body.empty() || body.front() == '#') continue;
    auto words = detail::split_ws(body);
    if (!header) {
      if (words.size() != 3 || words[0] != "dfa") throw ParseError(line, "expected 'dfa <states> <initial>'");
      if (!detail::parse_int(words[1], states) || states < 1) throw ParseError(line, "bad state count");
      initial = parse_id(words[2], states, line, "initial state");
      header = true;
    } else if (words[0] == "alphabet") {
      d.alphabet.assign(words.begin() + 1, words.end());
    } else if (words[0] == "final") {
      for (size_t i = 1; i < words.size(); ++i) finals.push_back(parse_id(words[i], states, line, "state"));
    } else {
      if (words.size() != 3) throw ParseError(line, "expected '<src> <symbol> <dst>'");
      edges.emplace_back(parse_id(words[0], states, line, "state"), words[1], parse_id(words[2], states, line, "state"),
                         line);
    }
  }
  if (!header) throw ParseError(1, "missing dfa header");
  Dfa r(d.alphabet, states);
  r.initial = initial;
  for (int q : finals) r.accepting[q] = true;
  for (const auto& [src, sym, dst, line] : edges) {
    int s = symbol_index(r.alphabet, sym, line);
    if (r.next(src, s) >= 0 && r.next(src, s) != dst) throw ParseError(line, "nondeterministic transition");
    r.set(src, s, dst);
  }
  return r;
}

std::string serialize_dfa(const Dfa& a) {
  std::ostringstream out;
  out << "dfa " << a.states << " " << a.initial << "\nalphabet";
  for (const auto& s : a.alphabet) out << " " << s;
  out << "\nfinal";
  for (int q = 0; q < a.states; ++q)
    if (a.accepting[q]) out << " " << q;
  out << "\n";
  for (int q = 0; q < a.states; ++q)
    for (size_t s = 0; s < a.alphabet.size(); ++s)
      if (a.next(q, static_cast<int>(s)) >= 0) out << q << " " << a.alphabet[s] << " " << a.next(q, static_cast<int>(s)) << "\n";
  return out.str();
}

}  // namespace g2r
