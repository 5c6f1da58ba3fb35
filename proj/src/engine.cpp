#include "pcjsr/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "pcjsr/errors.hpp"

namespace pcjsr {

namespace {

std::uint64_t word_count(int m, int max_len, bool exact_only) {
  // Number of words enumerated; saturates instead of overflowing.
  std::uint64_t total = 0, pow = 1;
  for (int k = 1; k <= max_len; ++k) {
    if (pow > (std::uint64_t(1) << 62) / std::uint64_t(m)) return std::uint64_t(1) << 63;
    pow *= std::uint64_t(m);
    if (!exact_only || k == max_len) total += pow;
  }
  return total;
}

// Prefers the lexicographically-smallest shortest witness among near-equal
// values so floating noise between rotations of a word cannot flip the pick.
struct Incumbent {
  double value = -1.0;
  Word word;

  void offer(double v, const Word& w) {
    if (word.empty() || v > value * (1.0 + 1e-12)) {
      value = v;
      word = w;
      return;
    }
    if (v >= value * (1.0 - 1e-12) &&
        (w.size() < word.size() || (w.size() == word.size() && w < word))) {
      value = v;
      word = w;
    }
  }
};

void enumerate_products(const MatrixSet& A, int max_len, bool leaves_only, Word& w,
                        const Matrix& prefix, std::uint64_t& visited,
                        const std::function<void(const Word&, const Matrix&)>& visit) {
  for (int letter = 1; letter <= A.m(); ++letter) {
    w.push_back(letter);
    Matrix P = A.matrices[letter - 1] * prefix;
    ++visited;
    if (!leaves_only || static_cast<int>(w.size()) == max_len) visit(w, P);
    if (static_cast<int>(w.size()) < max_len)
      enumerate_products(A, max_len, leaves_only, w, P, visited, visit);
    w.pop_back();
  }
}

}  // namespace

LowerBoundReport lower_bound(const MatrixSet& A, int max_len, std::uint64_t budget) {
  if (max_len < 1) fail(ErrorCode::InvalidInput, "lower_bound: max_len must be at least 1");
  if (word_count(A.m(), max_len, false) > budget)
    fail(ErrorCode::BudgetExceeded, "lower_bound: enumeration of " + std::to_string(max_len) +
                                        "-letter words exceeds the budget");
  Incumbent best;
  Word w;
  std::uint64_t visited = 0;
  enumerate_products(A, max_len, /*leaves_only=*/false, w, Matrix::Identity(A.n, A.n), visited,
                     [&](const Word& word, const Matrix& P) {
                       best.offer(std::pow(spectral_radius(P), 1.0 / word.size()), word);
                     });
  LowerBoundReport rep;
  rep.value = std::max(best.value, 0.0);
  rep.witness = best.word;
  rep.words_checked = visited;
  return rep;
}

double norm_upper_bound(const MatrixSet& A, int len, std::uint64_t budget) {
  if (len < 1) fail(ErrorCode::InvalidInput, "norm_upper_bound: len must be at least 1");
  if (word_count(A.m(), len, true) > budget)
    fail(ErrorCode::BudgetExceeded, "norm_upper_bound: enumeration exceeds the budget");
  double best = 0.0;
  Word w;
  std::uint64_t visited = 0;
  enumerate_products(A, len, /*leaves_only=*/true, w, Matrix::Identity(A.n, A.n), visited,
                     [&](const Word& word, const Matrix& P) {
                       best = std::max(best, std::pow(operator_norm(P), 1.0 / word.size()));
                     });
  return best;
}

BoundReport upper_bound(const LabeledGraph& g, const std::string& graph_name, const MatrixSet& A,
                        const LyapunovTemplate& tpl, const UpperBoundOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();

  PathCompletenessResult pc = is_path_complete(g, opts.enum_budget);
  if (pc.status == PathCompletenessResult::Status::Incomplete)
    fail(ErrorCode::GraphNotPathComplete,
         "graph '" + graph_name + "' is not path-complete (word " +
             word_to_string(*pc.witness) + " has no path)");
  if (pc.status == PathCompletenessResult::Status::Undecided)
    fail(ErrorCode::BudgetExceeded,
         "path-completeness of '" + graph_name + "' undecided within the state budget");

  BoundReport rep;
  rep.graph_name = graph_name;
  rep.template_name = tpl.name();

  LowerBoundReport lb = lower_bound(A, opts.lower_bound_len, opts.enum_budget);
  rep.lower_bound_used = lb.value;
  const double nub = norm_upper_bound(A, 1, opts.enum_budget);
  if (!(nub > 0.0)) fail(ErrorCode::InvalidInput, "upper_bound: all matrices are zero");

  auto probe = [&](double gamma) {
    LmiSystem sys = build_lmi(g, A, gamma, tpl);
    SolveResult r = solve(sys, opts.solve);
    rep.trace.push_back({gamma, r.status});
    ++rep.solves;
    return r;
  };

  // Bottom bracket: 1/max_i ||A_i|| is feasible in exact arithmetic; halve
  // away any numerical refusals.
  double gamma_lo = 1.0 / nub;
  std::optional<Certificate> cert;
  double margin = 0.0;
  {
    bool found = false;
    for (int tries = 0; tries < 60; ++tries) {
      SolveResult r = probe(gamma_lo);
      if (r.status == SolveResult::Status::Feasible) {
        cert = std::move(r.certificate);
        margin = r.verify_margin;
        found = true;
        break;
      }
      gamma_lo *= 0.5;
    }
    if (!found)
      fail(ErrorCode::BracketFailure,
           "no feasible scaling found down to gamma = " + std::to_string(gamma_lo));
  }

  double gamma_hi = gamma_lo * std::pow(2.0, 40);
  if (lb.value > 0.0) gamma_hi = std::min(gamma_hi, 1.0 / lb.value);

  while (gamma_hi > gamma_lo * (1.0 + opts.tol)) {
    const double mid = std::sqrt(gamma_lo * gamma_hi);
    if (!(mid > gamma_lo && mid < gamma_hi)) break;  // bracket at rounding resolution
    SolveResult r = probe(mid);
    if (r.status == SolveResult::Status::Feasible) {
      gamma_lo = mid;
      cert = std::move(r.certificate);
      margin = r.verify_margin;
    } else {
      gamma_hi = mid;
    }
  }

  rep.gamma_star = gamma_lo;
  rep.rho_hat = 1.0 / gamma_lo;
  rep.certificate = std::move(*cert);
  rep.verify_margin = margin;
  if (opts.family) rep.factor = guarantee_factor(tpl, *opts.family, A.n, A.m());

  if (rep.rho_hat < lb.value * (1.0 - 1e-9))
    fail(ErrorCode::NumericalFailure,
         "certified upper bound " + std::to_string(rep.rho_hat) +
             " fell below the enumeration lower bound " + std::to_string(lb.value));

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

std::optional<double> guarantee_factor(const LyapunovTemplate& tpl, const FamilySpec& family,
                                       int n, int m) {
  if (n < 1 || m < 1) fail(ErrorCode::InvalidInput, "guarantee_factor: need n >= 1 and m >= 1");
  const bool quad = tpl.kind == LyapunovTemplate::Kind::Quadratic;

  auto shortest_word_factor = [&](int l) { return std::pow(double(n), 1.0 / (2.0 * l)); };

  switch (family.kind) {
    case FamilySpec::Kind::CommonLyapunov: {
      if (quad) return std::sqrt(double(n));
      const int d = tpl.half_degree();
      double dim = 1.0;  // C(n+d-1, d)
      for (int i = 1; i <= d; ++i) dim = dim * (n + d - i) / i;
      const double eta = std::min(double(m), dim);
      return std::pow(eta, 1.0 / tpl.degree);
    }
    case FamilySpec::Kind::CommonPower:
      if (quad) return shortest_word_factor(family.t);
      return std::nullopt;
    case FamilySpec::Kind::OneNodeWords: {
      if (!quad) return std::nullopt;
      size_t l = family.words.front().size();
      for (const Word& w : family.words) l = std::min(l, w.size());
      return shortest_word_factor(static_cast<int>(l));
    }
    case FamilySpec::Kind::TwoNodeCatalog: {
      const std::string tag = family_tag(family);
      if (quad && (tag == "g1" || tag == "g1d")) return std::pow(double(n), 0.25);
      return std::nullopt;
    }
    case FamilySpec::Kind::DeBruijnDual:
      if (quad) return shortest_word_factor(family.k + 1);
      return std::nullopt;
    case FamilySpec::Kind::DeBruijn:
    case FamilySpec::Kind::FromFile:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::string name_tag(const std::string& name) { return name.substr(0, name.find(':')); }

}  // namespace

CompareReport compare(const std::vector<std::pair<std::string, LabeledGraph>>& graphs,
                      const MatrixSet& A, const LyapunovTemplate& tpl,
                      const UpperBoundOptions& opts, double rel_tol) {
  CompareReport rep;
  std::map<std::string, double> by_tag;
  for (const auto& [name, g] : graphs) {
    UpperBoundOptions o = opts;
    try {
      o.family = parse_family(name);
    } catch (const Error&) {
      o.family.reset();
    }
    BoundReport b = upper_bound(g, name, A, tpl, o);
    rep.rows.push_back({name, b.rho_hat, b.factor});
    by_tag[name_tag(name)] = b.rho_hat;
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const CompareRow& a, const CompareRow& b) { return a.rho_hat < b.rho_hat; });

  static const std::vector<std::vector<std::string>> equal_groups = {
      {"g1", "g1d"},
      {"h1", "g3", "g3b", "g4"},
      {"g2", "h3"},
      {"g2b", "h3b"},
      {"g2d", "h3d"},
      {"g2bd", "h3bd"},
  };
  for (const auto& group : equal_groups) {
    std::vector<std::string> present;
    double lo = 0.0, hi = 0.0;
    for (const std::string& tag : group) {
      auto it = by_tag.find(tag);
      if (it == by_tag.end()) continue;
      if (present.empty()) lo = hi = it->second;
      lo = std::min(lo, it->second);
      hi = std::max(hi, it->second);
      present.push_back(tag);
    }
    if (present.size() < 2) continue;
    EqualityCheck chk;
    chk.names = present;
    chk.max_rel_spread = (hi - lo) / std::max(lo, 1e-300);
    chk.ok = chk.max_rel_spread <= rel_tol;
    rep.equalities.push_back(std::move(chk));
  }

  // An arrow from X to Y asserts Y performs at least as well: rho_hat(Y) <=
  // rho_hat(X) up to tolerance.
  static const std::vector<std::pair<std::string, std::string>> arrows = {
      {"h1", "h2"}, {"h2", "g1"},  {"h1", "g1"},   {"h1", "g2"},
      {"h1", "g2b"}, {"h1", "g2d"}, {"h1", "g2bd"},
  };
  for (const auto& [from, to] : arrows) {
    auto fi = by_tag.find(from), ti = by_tag.find(to);
    if (fi == by_tag.end() || ti == by_tag.end()) continue;
    OrderCheck chk;
    chk.from = from;
    chk.to = to;
    chk.ok = ti->second <= fi->second * (1.0 + rel_tol);
    rep.orderings.push_back(std::move(chk));
  }
  return rep;
}

}  // namespace pcjsr
