#include "pcjsr/families.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "pcjsr/errors.hpp"
#include "pcjsr/io.hpp"

namespace pcjsr {

namespace {

LabeledGraph one_node(int m, const std::vector<Word>& words) {
  LabeledGraph g;
  g.m = m;
  g.nodes = {"1"};
  for (const Word& w : words) g.edges.push_back({"1", "1", w});
  validate(g);
  return g;
}

std::vector<Word> all_words(int m, int t) {
  std::vector<Word> out;
  Word w(t, 1);
  while (true) {
    out.push_back(w);
    int pos = t - 1;
    while (pos >= 0 && w[pos] == m) { w[pos] = 1; --pos; }
    if (pos < 0) break;
    ++w[pos];
  }
  return out;
}

LabeledGraph build_g1(int m) {
  LabeledGraph g;
  g.m = m;
  for (int i = 1; i <= m; ++i) g.nodes.push_back(std::to_string(i));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      g.edges.push_back({std::to_string(i), std::to_string(j), {i}});
  return g;
}

LabeledGraph two_node(std::initializer_list<std::tuple<int, int, int>> edges) {
  LabeledGraph g;
  g.m = 2;
  g.nodes = {"1", "2"};
  for (auto [from, to, letter] : edges)
    g.edges.push_back({std::to_string(from), std::to_string(to), {letter}});
  return g;
}

LabeledGraph build_catalog_entry(const std::string& name, int m) {
  if (name == "g1") return build_g1(m);
  if (name == "g1d") return dual(build_g1(m));
  if (m != 2)
    fail(ErrorCode::UnsupportedCombination,
         "family '" + name + "' is defined for two-letter alphabets only");
  if (name == "g2") return two_node({{1, 1, 1}, {1, 2, 1}, {1, 2, 2}, {2, 1, 2}});
  if (name == "g2b") return swap_labels(build_catalog_entry("g2", 2));
  if (name == "g2d") return dual(build_catalog_entry("g2", 2));
  if (name == "g2bd") return dual(swap_labels(build_catalog_entry("g2", 2)));
  if (name == "g3") return two_node({{1, 1, 1}, {2, 2, 1}, {1, 2, 2}, {2, 1, 2}});
  if (name == "g3b") return swap_labels(build_catalog_entry("g3", 2));
  if (name == "g4") return two_node({{1, 2, 1}, {1, 2, 2}, {2, 1, 1}, {2, 1, 2}});
  fail(ErrorCode::InvalidInput, "unknown two-node family '" + name + "'");
}

LabeledGraph build_de_bruijn(int k, int m) {
  if (k < 1) fail(ErrorCode::InvalidInput, "de Bruijn order must be at least 1");
  if (m > 9)
    fail(ErrorCode::UnsupportedCombination, "de Bruijn node ids use single digits; need m <= 9");
  double count = std::pow(double(m), double(k));
  if (count > double(1 << 15))
    fail(ErrorCode::BudgetExceeded, "de Bruijn graph would have more than 2^15 nodes");

  auto to_id = [](const Word& w) {
    std::string s;
    for (int letter : w) s += std::to_string(letter);
    return s;
  };
  LabeledGraph g;
  g.m = m;
  std::vector<Word> nodes = all_words(m, k);
  for (const Word& w : nodes) g.nodes.push_back(to_id(w));
  for (const Word& w : nodes) {
    for (int j = 1; j <= m; ++j) {
      Word shifted(w.begin() + 1, w.end());
      shifted.push_back(j);
      g.edges.push_back({to_id(w), to_id(shifted), {j}});
    }
  }
  return g;
}

int parse_int_param(const std::string& text, const std::string& key) {
  auto pos = text.find(':');
  if (pos == std::string::npos)
    fail(ErrorCode::InvalidInput, "family '" + text + "' needs parameter " + key + "=<int>");
  std::string params = text.substr(pos + 1);
  std::string prefix = key + "=";
  if (params.rfind(prefix, 0) != 0)
    fail(ErrorCode::InvalidInput, "family '" + text + "': expected " + key + "=<int>");
  try {
    size_t used = 0;
    int value = std::stoi(params.substr(prefix.size()), &used);
    if (used != params.size() - prefix.size())
      fail(ErrorCode::InvalidInput, "family '" + text + "': trailing characters after " + key);
    return value;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidInput, "family '" + text + "': bad integer for " + key);
  }
}

}  // namespace

FamilySpec parse_family(const std::string& text) {
  FamilySpec spec;
  spec.name = text;
  std::string head = text.substr(0, text.find(':'));

  if (head == "h1") {
    spec.kind = FamilySpec::Kind::CommonLyapunov;
  } else if (head == "h2") {
    spec.kind = FamilySpec::Kind::CommonPower;
    spec.t = parse_int_param(text, "t");
    if (spec.t < 1) fail(ErrorCode::InvalidInput, "h2: t must be at least 1");
  } else if (head == "h3") {
    spec.kind = FamilySpec::Kind::OneNodeWords;
    spec.words = {{1}, {1, 2}, {2, 2}};
  } else if (head == "h4") {
    spec.kind = FamilySpec::Kind::OneNodeWords;
    spec.words = {{1}, {1, 2}, {1, 2, 2}, {2, 2, 2}};
  } else if (head == "g1" || head == "g1d" || head == "g2" || head == "g2b" || head == "g2d" ||
             head == "g2bd" || head == "g3" || head == "g3b" || head == "g4") {
    spec.kind = FamilySpec::Kind::TwoNodeCatalog;
  } else if (head == "debruijn") {
    spec.kind = FamilySpec::Kind::DeBruijn;
    spec.k = parse_int_param(text, "k");
    if (spec.k < 1) fail(ErrorCode::InvalidInput, "debruijn: k must be at least 1");
  } else if (head == "debruijnd") {
    spec.kind = FamilySpec::Kind::DeBruijnDual;
    spec.k = parse_int_param(text, "k");
    if (spec.k < 1) fail(ErrorCode::InvalidInput, "debruijnd: k must be at least 1");
  } else if (head == "file") {
    spec.kind = FamilySpec::Kind::FromFile;
    auto pos = text.find(':');
    if (pos == std::string::npos || pos + 1 == text.size())
      fail(ErrorCode::InvalidInput, "family 'file' needs a path: file:<path>");
    spec.path = text.substr(pos + 1);
  } else {
    fail(ErrorCode::InvalidInput, "unknown graph family '" + text + "'");
  }
  return spec;
}

LabeledGraph build(const FamilySpec& spec, int m) {
  if (m < 1 && spec.kind != FamilySpec::Kind::FromFile)
    fail(ErrorCode::InvalidInput, "build: alphabet size must be at least 1");
  switch (spec.kind) {
    case FamilySpec::Kind::CommonLyapunov: {
      std::vector<Word> words;
      for (int i = 1; i <= m; ++i) words.push_back({i});
      return one_node(m, words);
    }
    case FamilySpec::Kind::CommonPower:
      return one_node(m, all_words(m, spec.t));
    case FamilySpec::Kind::OneNodeWords: {
      if (spec.words.empty()) fail(ErrorCode::InvalidInput, "one-node family needs words");
      std::string tag = spec.name.substr(0, spec.name.find(':'));
      if ((tag == "h3" || tag == "h4") && m != 2)
        fail(ErrorCode::UnsupportedCombination,
             "family '" + tag + "' is defined for two-letter alphabets only");
      for (const Word& w : spec.words)
        for (int letter : w)
          if (letter > m)
            fail(ErrorCode::UnsupportedCombination,
                 "family '" + spec.name + "' uses letter " + std::to_string(letter) +
                     " but the alphabet has " + std::to_string(m));
      return one_node(m, spec.words);
    }
    case FamilySpec::Kind::TwoNodeCatalog:
      return build_catalog_entry(spec.name.substr(0, spec.name.find(':')), m);
    case FamilySpec::Kind::DeBruijn:
      return build_de_bruijn(spec.k, m);
    case FamilySpec::Kind::DeBruijnDual:
      return dual(build_de_bruijn(spec.k, m));
    case FamilySpec::Kind::FromFile: {
      LabeledGraph g = load_graph(spec.path);
      if (m > 0 && g.m != m)
        fail(ErrorCode::DimensionMismatch,
             "graph file declares m=" + std::to_string(g.m) + " but the matrix set has m=" +
                 std::to_string(m));
      return g;
    }
  }
  fail(ErrorCode::InvalidInput, "build: unhandled family kind");
}

std::vector<std::pair<std::string, LabeledGraph>> catalog_two_node() {
  std::vector<std::pair<std::string, LabeledGraph>> out;
  for (const char* name : {"g1", "g1d", "g2", "g2b", "g2d", "g2bd", "g3", "g3b", "g4"})
    out.emplace_back(name, build_catalog_entry(name, 2));
  return out;
}

std::string family_tag(const FamilySpec& spec) {
  if (spec.kind == FamilySpec::Kind::FromFile) return "file:" + spec.path;
  return spec.name.substr(0, spec.name.find(':'));
}

}  // namespace pcjsr
