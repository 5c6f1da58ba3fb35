#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcjsr/alphabet.hpp"

namespace pcjsr {

struct Edge {
  std::string from;
  std::string to;
  Word label;  // nonempty word over 1..m, application order
};

// Directed labeled graph over an alphabet of m letters. Multi-letter labels
// are allowed; expand() reduces them to single letters.
struct LabeledGraph {
  int m = 0;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
};

// Throws DanglingEdge / EmptyLabel / LetterOutOfRange / InvalidInput.
void validate(const LabeledGraph& g);

bool all_labels_single(const LabeledGraph& g);

// Replaces each length-k edge (u, v) by a k-edge path through k-1 fresh
// nodes, one letter per edge in application order (the first-applied letter
// leaves u). Fresh ids are "{from}~{to}~{q}" with q counting per (from, to)
// pair across edges, so parallel edges stay distinct. Single-letter edges are
// kept as they are, making the operation idempotent.
LabeledGraph expand(const LabeledGraph& g);

// Reverses every edge and every label word.
LabeledGraph dual(const LabeledGraph& g);

// Exchanges letters 1 and 2 in every label; only defined for m == 2.
LabeledGraph swap_labels(const LabeledGraph& g);

struct PathCompletenessResult {
  enum class Status { Complete, Incomplete, Undecided };
  Status status = Status::Undecided;
  // Shortest word with no admissible path, when Incomplete. Ties among equal
  // lengths are broken toward the lexicographically smallest word.
  std::optional<Word> witness;
  std::uint64_t subsets_explored = 0;
};

// Subset construction over the expanded graph: a word is readable iff the set
// of nodes reachable by spelling it from anywhere is nonempty, so the graph
// is path-complete iff the empty set is unreachable from the full node set.
// Returns Undecided (never a wrong answer) when more than max_states distinct
// subsets would be explored.
PathCompletenessResult is_path_complete(const LabeledGraph& g,
                                        std::uint64_t max_states = std::uint64_t(1) << 20);

// Oracle: replays every word of length 1..max_len through the expanded graph.
// Complete here only means "no counterexample up to the horizon".
PathCompletenessResult is_path_complete_bruteforce(const LabeledGraph& g, int max_len);

// Exact equality up to a bijection of node names (labels must match).
// Intended for small graphs; cost grows factorially in the node count.
bool graphs_isomorphic(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace pcjsr
