#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcjsr/graph.hpp"

namespace pcjsr {

// Built-in graph families. The short names double as the CLI grammar:
//   h1 | h2:t=<int> | h3 | h4 |
//   g1 | g1d | g2 | g2b | g2d | g2bd | g3 | g3b | g4 |
//   debruijn:k=<int> | debruijnd:k=<int> | file:<path>
// where the 'b' suffix swaps the two letters and 'd' takes the dual.
struct FamilySpec {
  enum class Kind {
    CommonLyapunov,   // h1: one node, a self-loop per letter
    CommonPower,      // h2: one node, a self-loop per word of length t
    OneNodeWords,     // one node, a self-loop per given word (h3, h4 presets)
    TwoNodeCatalog,   // one of the nine two-node topologies by name
    DeBruijn,         // nodes are words of length k, shift-register edges
    DeBruijnDual,     // dual of the above
    FromFile,         // JSON graph file
  };
  Kind kind = Kind::CommonLyapunov;
  int t = 0;                 // CommonPower
  std::vector<Word> words;   // OneNodeWords
  std::string name;          // TwoNodeCatalog; also the original spell for display
  int k = 0;                 // DeBruijn / DeBruijnDual
  std::string path;          // FromFile
};

// Parses the grammar above; FromFile specs keep the path unopened.
FamilySpec parse_family(const std::string& text);

// Builds the graph for an alphabet of m letters. Families restricted to two
// letters reject other m with UnsupportedCombination.
LabeledGraph build(const FamilySpec& spec, int m);

// The nine distinct two-node topologies with their short names.
std::vector<std::pair<std::string, LabeledGraph>> catalog_two_node();

// Canonical tag used to key ordering/equality annotations: the family name
// with parameters stripped ("h2:t=3" -> "h2"), or the text itself for files.
std::string family_tag(const FamilySpec& spec);

}  // namespace pcjsr
