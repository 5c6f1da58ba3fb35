#include "pcjsr/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pcjsr/errors.hpp"

namespace pcjsr {

void validate(const LabeledGraph& g) {
  if (g.m < 1) fail(ErrorCode::InvalidInput, "graph: alphabet size must be at least 1");
  if (g.nodes.empty()) fail(ErrorCode::InvalidInput, "graph: node set must be nonempty");
  std::set<std::string> seen;
  for (const std::string& v : g.nodes) {
    if (v.empty()) fail(ErrorCode::InvalidInput, "graph: empty node id");
    if (!seen.insert(v).second)
      fail(ErrorCode::InvalidInput, "graph: duplicate node id '" + v + "'");
  }
  for (const Edge& e : g.edges) {
    if (!seen.count(e.from))
      fail(ErrorCode::DanglingEdge, "graph: edge tail '" + e.from + "' is not a node");
    if (!seen.count(e.to))
      fail(ErrorCode::DanglingEdge, "graph: edge head '" + e.to + "' is not a node");
    if (e.label.empty())
      fail(ErrorCode::EmptyLabel, "graph: edge " + e.from + "->" + e.to + " has empty label");
    for (int letter : e.label)
      if (letter < 1 || letter > g.m)
        fail(ErrorCode::LetterOutOfRange,
             "graph: edge " + e.from + "->" + e.to + " uses letter " + std::to_string(letter) +
                 " outside 1.." + std::to_string(g.m));
  }
}

bool all_labels_single(const LabeledGraph& g) {
  for (const Edge& e : g.edges)
    if (e.label.size() != 1) return false;
  return true;
}

LabeledGraph expand(const LabeledGraph& g) {
  validate(g);
  LabeledGraph out;
  out.m = g.m;
  out.nodes = g.nodes;
  std::map<std::pair<std::string, std::string>, int> fresh_count;
  for (const Edge& e : g.edges) {
    if (e.label.size() == 1) {
      out.edges.push_back(e);
      continue;
    }
    int& q = fresh_count[{e.from, e.to}];
    std::string prev = e.from;
    for (size_t i = 0; i + 1 < e.label.size(); ++i) {
      std::string fresh = e.from + "~" + e.to + "~" + std::to_string(++q);
      out.nodes.push_back(fresh);
      out.edges.push_back({prev, fresh, {e.label[i]}});
      prev = fresh;
    }
    out.edges.push_back({prev, e.to, {e.label.back()}});
  }
  return out;
}

LabeledGraph dual(const LabeledGraph& g) {
  validate(g);
  LabeledGraph out;
  out.m = g.m;
  out.nodes = g.nodes;
  for (const Edge& e : g.edges) out.edges.push_back({e.to, e.from, reversed_word(e.label)});
  return out;
}

LabeledGraph swap_labels(const LabeledGraph& g) {
  validate(g);
  if (g.m != 2)
    fail(ErrorCode::UnsupportedCombination, "swap_labels: defined only for two-letter alphabets");
  LabeledGraph out = g;
  for (Edge& e : out.edges)
    for (int& letter : e.label) letter = 3 - letter;
  return out;
}

namespace {

// Node subsets as dynamic bitsets over the expanded graph.
using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  size_t operator()(const Bits& b) const {
    size_t h = 1469598103934665603ull;
    for (std::uint64_t w : b) {
      h ^= std::hash<std::uint64_t>()(w);
      h *= 1099511628211ull;
    }
    return h;
  }
};

bool bits_empty(const Bits& b) {
  for (std::uint64_t w : b)
    if (w) return false;
  return true;
}

// Successor bitmasks per (node, letter) of a single-letter graph.
std::vector<std::vector<Bits>> successor_table(const LabeledGraph& ge, int words) {
  std::unordered_map<std::string, int> id;
  for (size_t i = 0; i < ge.nodes.size(); ++i) id[ge.nodes[i]] = static_cast<int>(i);
  std::vector<std::vector<Bits>> succ(
      ge.nodes.size(), std::vector<Bits>(ge.m, Bits(words, 0)));
  for (const Edge& e : ge.edges) {
    int u = id[e.from], v = id[e.to], a = e.label[0] - 1;
    succ[u][a][v / 64] |= std::uint64_t(1) << (v % 64);
  }
  return succ;
}

Bits step(const Bits& S, const std::vector<std::vector<Bits>>& succ, int letter, int words) {
  Bits T(words, 0);
  for (size_t u = 0; u < succ.size(); ++u) {
    if (S[u / 64] >> (u % 64) & 1) {
      const Bits& out = succ[u][letter];
      for (int w = 0; w < words; ++w) T[w] |= out[w];
    }
  }
  return T;
}

}  // namespace

PathCompletenessResult is_path_complete(const LabeledGraph& g, std::uint64_t max_states) {
  LabeledGraph ge = expand(g);
  const int nn = static_cast<int>(ge.nodes.size());
  const int words = (nn + 63) / 64;
  auto succ = successor_table(ge, words);

  Bits start(words, 0);
  for (int v = 0; v < nn; ++v) start[v / 64] |= std::uint64_t(1) << (v % 64);

  // BFS with letters scanned in ascending order discovers each subset by its
  // (length, lexicographic)-minimal word, so the first word reaching the
  // empty set is the required witness.
  struct Entry { int parent; int letter; };
  std::vector<Bits> states;
  std::vector<Entry> meta;
  std::unordered_map<Bits, int, BitsHash> seen;

  states.push_back(start);
  meta.push_back({-1, 0});
  seen[start] = 0;

  PathCompletenessResult res;
  for (size_t head = 0; head < states.size(); ++head) {
    for (int a = 0; a < g.m; ++a) {
      Bits T = step(states[head], succ, a, words);
      if (bits_empty(T)) {
        Word witness;
        witness.push_back(a + 1);
        for (int cur = static_cast<int>(head); meta[cur].parent >= 0; cur = meta[cur].parent)
          witness.push_back(meta[cur].letter);
        std::reverse(witness.begin(), witness.end());
        res.status = PathCompletenessResult::Status::Incomplete;
        res.witness = std::move(witness);
        res.subsets_explored = seen.size() + 1;  // plus the empty set
        return res;
      }
      if (seen.emplace(T, static_cast<int>(states.size())).second) {
        if (seen.size() > max_states) {
          res.status = PathCompletenessResult::Status::Undecided;
          res.subsets_explored = seen.size();
          return res;
        }
        states.push_back(std::move(T));
        meta.push_back({static_cast<int>(head), a + 1});
      }
    }
  }
  res.status = PathCompletenessResult::Status::Complete;
  res.subsets_explored = seen.size();
  return res;
}

PathCompletenessResult is_path_complete_bruteforce(const LabeledGraph& g, int max_len) {
  if (max_len < 1) fail(ErrorCode::InvalidInput, "bruteforce check: max_len must be at least 1");
  LabeledGraph ge = expand(g);
  const int nn = static_cast<int>(ge.nodes.size());
  const int words = (nn + 63) / 64;
  auto succ = successor_table(ge, words);

  Bits start(words, 0);
  for (int v = 0; v < nn; ++v) start[v / 64] |= std::uint64_t(1) << (v % 64);

  PathCompletenessResult res;
  std::uint64_t replayed = 0;
  for (int len = 1; len <= max_len; ++len) {
    Word w(len, 1);
    while (true) {
      Bits S = start;
      bool dead = false;
      for (int letter : w) {
        S = step(S, succ, letter - 1, words);
        if (bits_empty(S)) { dead = true; break; }
      }
      ++replayed;
      if (dead) {
        // No strict prefix can be dead: all shorter words were replayed in
        // earlier rounds, so death happens exactly at the last letter.
        res.status = PathCompletenessResult::Status::Incomplete;
        res.witness = w;
        res.subsets_explored = replayed;
        return res;
      }
      int pos = len - 1;
      while (pos >= 0 && w[pos] == g.m) { w[pos] = 1; --pos; }
      if (pos < 0) break;
      ++w[pos];
    }
  }
  res.status = PathCompletenessResult::Status::Complete;
  res.subsets_explored = replayed;
  return res;
}

bool graphs_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  validate(a);
  validate(b);
  if (a.m != b.m || a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size())
    return false;
  if (a.nodes.size() > 10)
    fail(ErrorCode::InvalidInput, "graphs_isomorphic: too many nodes for exhaustive matching");

  using Triple = std::tuple<int, int, Word>;
  std::unordered_map<std::string, int> ida, idb;
  for (size_t i = 0; i < a.nodes.size(); ++i) ida[a.nodes[i]] = static_cast<int>(i);
  for (size_t i = 0; i < b.nodes.size(); ++i) idb[b.nodes[i]] = static_cast<int>(i);

  std::vector<Triple> eb;
  for (const Edge& e : b.edges) eb.emplace_back(idb[e.from], idb[e.to], e.label);
  std::sort(eb.begin(), eb.end());

  std::vector<int> perm(a.nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<Triple> ea;
    for (const Edge& e : a.edges) ea.emplace_back(perm[ida[e.from]], perm[ida[e.to]], e.label);
    std::sort(ea.begin(), ea.end());
    if (ea == eb) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace pcjsr
