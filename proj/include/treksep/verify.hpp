#pragma once

// Randomized cross-checks of the combinatorial answers against the exact
// algebraic oracle. Everything is seeded; the same SuiteConfig always gives
// the same SuiteReport.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "treksep/algebra.hpp"
#include "treksep/graph.hpp"
#include "treksep/graph_io.hpp"
#include "treksep/separation.hpp"
#include "treksep/treks.hpp"

namespace treksep {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int max_vertices = 6;
  int graph_count = 200;
  int trials_per_instance = kDefaultTrials;
  double edge_density = 0.4;
  /// Names of the checks to run; empty runs all of them.
  std::vector<std::string> only;
  /// Test hook: replaces the combinatorial rank in the rank checks, so a
  /// broken implementation can be simulated.
  std::function<std::size_t(const MixedGraph&, const VertexSet&, const VertexSet&)> rank_override;
};

inline constexpr std::array<const char*, 12> kCheckNames{
    "trek_rule",       "gvl",          "cauchy_binet",    "rank_directed",    "rank_undirected",  "rank_mixed",
    "subdivision",     "d_separation", "canonical_choke", "canonical_spider", "canonical_tetrad", "menger"};

inline void check_config(const SuiteConfig& cfg) {
  if (cfg.max_vertices < 2) throw InvalidArgument("max_vertices must be at least 2");
  if (cfg.graph_count < 1) throw InvalidArgument("graph_count must be at least 1");
  if (cfg.trials_per_instance < 1) throw InvalidArgument("trials must be at least 1");
  if (!(cfg.edge_density > 0.0 && cfg.edge_density <= 1.0)) throw InvalidArgument("edge density must lie in (0, 1]");
  for (const auto& name : cfg.only)
    if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end())
      throw InvalidArgument("unknown check '" + name + "'");
}

/// Random graph of the given class on [1, n]. Each pair i < j receives an
/// edge with probability `density`. DAG edges point i -> j. Mixed graphs put
/// 1..ceil(n/2) in U and the rest in W, pick the edge kind uniformly among
/// the kinds the sides allow, and occasionally add a bidirected edge parallel
/// to a directed one inside W.
inline MixedGraph random_graph(GraphClass cls, int n, std::uint64_t seed, double density) {
  if (n < 1) throw InvalidArgument("random_graph needs at least one vertex");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  MixedGraph g(n);
  const int u_size = cls == GraphClass::Undirected ? n : cls == GraphClass::Mixed ? (n + 1) / 2 : 0;
  VertexSet u, w;
  for (VertexId v = 1; v <= n; ++v) (v <= u_size ? u : w).insert(v);
  for (VertexId i = 1; i <= n; ++i)
    for (VertexId j = i + 1; j <= n; ++j) {
      if (!coin(rng)) continue;
      if (cls == GraphClass::Dag) {
        g.add_directed(i, j);
      } else if (cls == GraphClass::Undirected) {
        g.add_undirected(i, j);
      } else {
        const bool both_u = i <= u_size && j <= u_size, both_w = i > u_size;
        std::vector<int> kinds{0};
        if (both_u) kinds.push_back(1);
        if (both_w) kinds.push_back(2);
        int kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
        if (kind == 0) g.add_directed(i, j);
        if (kind == 1) g.add_undirected(i, j);
        if (kind == 2) g.add_bidirected(i, j);
        if (kind == 0 && both_w && std::bernoulli_distribution(0.25)(rng)) g.add_bidirected(i, j);
      }
    }
  g.set_sides(std::move(u), std::move(w));
  return g;
}

struct RankCheck {
  bool pass = false;
  std::size_t combinatorial = 0;
  std::size_t oracle = 0;
  /// Largest system of simple treks without sided intersection, when the
  /// brute force stayed within its cap.
  std::optional<std::size_t> noncrossing;
};

/// generic_rank against the sampled algebraic rank and, on small enough
/// graphs, against the brute-force trek-system characterization.
inline RankCheck cross_check_rank(const MixedGraph& g, const VertexSet& A, const VertexSet& B, std::uint64_t seed,
                                  int trials = kDefaultTrials) {
  RankCheck out;
  out.combinatorial = generic_rank(g, A, B);
  out.oracle = generic_rank_oracle(g, A, B, seed, trials);
  out.pass = out.combinatorial == out.oracle;
  try {
    out.noncrossing = max_noncrossing_system_size(g, A, B, 20'000);
    out.pass = out.pass && *out.noncrossing == out.combinatorial;
  } catch (const CapExceeded&) {
    out.noncrossing.reset();
  }
  return out;
}

struct CheckStats {
  std::string name;
  std::size_t passes = 0;
  std::size_t failures = 0;
  std::size_t total() const { return passes + failures; }
};

struct Failure {
  std::string check;
  std::string graph;    ///< serialized graph file
  std::string query;    ///< A, B (and C) sets
  std::string expected;
  std::string actual;
  std::string reproduce;  ///< CLI command, reading the graph from instance.graph
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CheckStats> checks;
  std::vector<Failure> failures;

  std::size_t passes() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passes;
    return n;
  }
  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.failures;
    return n;
  }
  bool ok() const { return failure_count() == 0; }
  const CheckStats* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Comma-separated ids, as the CLI expects them.
inline std::string id_list(const VertexSet& s) {
  std::string out;
  for (VertexId v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

namespace detail {

inline VertexSet random_subset(std::mt19937_64& rng, int n, std::size_t size) {
  std::vector<VertexId> all(n);
  for (int k = 0; k < n; ++k) all[k] = k + 1;
  std::shuffle(all.begin(), all.end(), rng);
  return VertexSet(all.begin(), all.begin() + std::min<std::size_t>(size, n));
}

inline int random_size(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng);
}

// All subsets of `pool` with size in [lo, hi].
inline std::vector<VertexSet> subsets(const std::vector<VertexId>& pool, std::size_t lo, std::size_t hi) {
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pool.size()); ++mask) {
    auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k < lo || k > hi) continue;
    VertexSet s;
    for (std::size_t b = 0; b < pool.size(); ++b)
      if ((mask >> b) & 1) s.insert(pool[b]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Suite {
 public:
  explicit Suite(const SuiteConfig& cfg) : cfg_(cfg) { report_.seed = cfg.seed; }

  SuiteReport run() {
    for (const char* name : kCheckNames) stats(name);
    if (wanted({"trek_rule"})) trek_rule();
    if (wanted({"gvl"})) gvl();
    if (wanted({"cauchy_binet"})) cauchy_binet();
    if (wanted({"rank_directed", "menger"})) rank_family("rank_directed", GraphClass::Dag, 4);
    if (wanted({"rank_undirected", "menger"})) rank_family("rank_undirected", GraphClass::Undirected, 5);
    if (wanted({"rank_mixed", "menger"})) rank_family("rank_mixed", GraphClass::Mixed, 6);
    if (wanted({"subdivision"})) subdivision();
    if (wanted({"d_separation"})) d_separation();
    if (wanted({"canonical_choke", "canonical_spider", "canonical_tetrad"})) canonical();
    if (!cfg_.only.empty())
      std::erase_if(report_.checks, [&](const CheckStats& c) {
        return std::find(cfg_.only.begin(), cfg_.only.end(), c.name) == cfg_.only.end();
      });
    return std::move(report_);
  }

 private:
  bool wanted(std::initializer_list<const char*> names) const {
    if (cfg_.only.empty()) return true;
    for (const char* n : names)
      if (std::find(cfg_.only.begin(), cfg_.only.end(), n) != cfg_.only.end()) return true;
    return false;
  }

  // Each check draws from its own stream so adding instances to one check
  // does not shift the others.
  std::mt19937_64 stream(std::uint64_t salt) const {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
  }

  CheckStats& stats(const std::string& name) {
    for (auto& c : report_.checks)
      if (c.name == name) return c;
    report_.checks.push_back({name, 0, 0});
    return report_.checks.back();
  }

  void record(const std::string& name, bool pass, const MixedGraph& g, const std::string& query,
              const std::string& expected, const std::string& actual, const std::string& command) {
    CheckStats& s = stats(name);
    if (pass) {
      ++s.passes;
      return;
    }
    ++s.failures;
    report_.failures.push_back({name, serialize(g), query, expected, actual, command});
  }

  std::string rank_command(const VertexSet& A, const VertexSet& B, std::uint64_t seed) const {
    return "treksep rank instance.graph --A " + id_list(A) + " --B " + id_list(B) + " --oracle --seed " +
           std::to_string(seed) + " --trials " + std::to_string(cfg_.trials_per_instance);
  }

  MixedGraph draw_graph(std::mt19937_64& rng, GraphClass cls, int lo, int hi) {
    int n = random_size(rng, lo, hi);
    return random_graph(cls, n, rng(), cfg_.edge_density);
  }

  void trek_rule() {
    auto rng = stream(1);
    for (int k = 0; k < cfg_.graph_count; ++k) {
      MixedGraph g = draw_graph(rng, GraphClass::Dag, 1, cfg_.max_vertices);
      std::uint64_t seed = rng();
      ParamAssignment p = sample_parameters(g, seed);
      RationalMatrix sigma = build_covariance(g, p);
      TrekRuleContext ctx = make_trek_rule_context(g, p);
      bool pass = true;
      std::string detail;
      for (VertexId i = 1; i <= g.vertex_count() && pass; ++i)
        for (VertexId j = 1; j <= g.vertex_count() && pass; ++j) {
          Rational full = trek_rule_covariance(g, p, i, j);
          Rational simple = simple_trek_rule_covariance(g, p, ctx, i, j);
          if (full != sigma(i - 1, j - 1) || simple != sigma(i - 1, j - 1)) {
            pass = false;
            detail = "sigma_" + std::to_string(i) + std::to_string(j) + ": trek rule " + full.str() +
                     ", simple trek rule " + simple.str();
            record("trek_rule", false, g, "i=" + std::to_string(i) + " j=" + std::to_string(j),
                   sigma(i - 1, j - 1).str(), detail,
                   "treksep treks instance.graph --i " + std::to_string(i) + " --j " + std::to_string(j));
          }
        }
      if (pass) ++stats("trek_rule").passes;
    }
  }

  void gvl() {
    auto rng = stream(2);
    const int count = std::max(1, cfg_.graph_count / 2);
    for (int k = 0; k < count; ++k) {
      MixedGraph g = draw_graph(rng, GraphClass::Dag, 1, cfg_.max_vertices);
      const int n = g.vertex_count();
      std::size_t size = random_size(rng, 1, std::min(3, n));
      VertexSet R = random_subset(rng, n, size), S = random_subset(rng, n, size);
      ParamAssignment p = sample_parameters(g, rng());
      GvlPair v = gvl_minor_two_ways(g, p, R, S);
      record("gvl", v.determinant == v.path_sum, g, "R=" + format_set(R) + " S=" + format_set(S),
             v.determinant.str(), v.path_sum.str(), "");
    }
  }

  void cauchy_binet() {
    auto rng = stream(3);
    const int count = std::max(1, cfg_.graph_count / 4);
    for (int k = 0; k < count; ++k) {
      MixedGraph g = draw_graph(rng, GraphClass::Dag, 1, std::min(5, cfg_.max_vertices));
      const int n = g.vertex_count();
      std::size_t size = random_size(rng, 1, std::min(3, n));
      VertexSet A = random_subset(rng, n, size), B = random_subset(rng, n, size);
      ParamAssignment p = sample_parameters(g, rng());
      Rational direct = determinant(submatrix(build_covariance(g, p), A, B));
      Rational expanded = cauchy_binet_minor(g, p, A, B);
      record("cauchy_binet", direct == expanded, g, "A=" + format_set(A) + " B=" + format_set(B), direct.str(),
             expanded.str(), "");
    }
  }

  std::pair<VertexSet, VertexSet> draw_query(std::mt19937_64& rng, int n) {
    VertexSet A = random_subset(rng, n, random_size(rng, 1, std::min(3, n)));
    VertexSet B = random_subset(rng, n, random_size(rng, 1, std::min(3, n)));
    return {A, B};
  }

  std::size_t combinatorial_rank(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
    return cfg_.rank_override ? cfg_.rank_override(g, A, B) : generic_rank(g, A, B);
  }

  // Flow value, certificate size and decoded trek system agree; the
  // certificate separates and is minimal.
  void menger(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
    RankResult r = min_t_separator(g, A, B);
    TrekSystem sys = disjoint_trek_system(g, A, B);
    bool pass = static_cast<std::size_t>(r.flow_value) == r.certificate.size() && sys.size() == r.rank &&
                sys.endpoints_distinct() && !has_sided_intersection(sys) &&
                is_t_separating(g, A, B, r.certificate);
    for (const Trek& t : sys.treks) pass = pass && is_trek_of(g, t) && A.count(t.a_end()) && B.count(t.b_end());
    auto drop = [&](SeparationTriple c, VertexSet SeparationTriple::*layer, VertexId v) {
      (c.*layer).erase(v);
      return !is_t_separating(g, A, B, c);
    };
    for (auto layer : {&SeparationTriple::c_left, &SeparationTriple::c_mid, &SeparationTriple::c_right})
      for (VertexId v : r.certificate.*layer) pass = pass && drop(r.certificate, layer, v);
    record("menger", pass, g, "A=" + format_set(A) + " B=" + format_set(B),
           "flow " + std::to_string(r.flow_value) + ", minimal separating certificate",
           to_string(r.certificate) + ", " + std::to_string(sys.size()) + " disjoint treks",
           "treksep rank instance.graph --A " + id_list(A) + " --B " + id_list(B));
  }

  void rank_family(const std::string& name, GraphClass cls, std::uint64_t salt) {
    auto rng = stream(salt);
    for (int k = 0; k < cfg_.graph_count; ++k) {
      MixedGraph g = draw_graph(rng, cls, 1, cfg_.max_vertices);
      auto [A, B] = draw_query(rng, g.vertex_count());
      std::uint64_t seed = rng();
      std::size_t comb = combinatorial_rank(g, A, B);
      std::size_t oracle = generic_rank_oracle(g, A, B, seed, cfg_.trials_per_instance);
      bool pass = comb == oracle;
      std::string actual = "combinatorial " + std::to_string(comb);
      if (!g.bidirected_edges().empty()) {
        std::size_t via_sub = generic_rank(bidirected_subdivision(g), A, B);
        pass = pass && via_sub == oracle;
        actual += ", subdivision " + std::to_string(via_sub);
      }
      if (!cfg_.rank_override) {
        try {
          std::size_t nc = max_noncrossing_system_size(g, A, B, 20'000);
          pass = pass && nc == comb;
          actual += ", noncrossing " + std::to_string(nc);
        } catch (const CapExceeded&) {
        }
      }
      record(name, pass, g, "A=" + format_set(A) + " B=" + format_set(B), "oracle " + std::to_string(oracle),
             actual, rank_command(A, B, seed));
      menger(g, A, B);
    }
  }

  void subdivision() {
    auto rng = stream(7);
    const int target = std::max(1, cfg_.graph_count / 2);
    if (cfg_.max_vertices < 4) return;  // W needs two vertices
    int made = 0;
    for (int attempt = 0; made < target && attempt < 50 * target; ++attempt) {
      MixedGraph g = draw_graph(rng, GraphClass::Mixed, 4, cfg_.max_vertices);
      if (g.bidirected_edges().empty()) continue;
      ++made;
      MixedGraph sub = bidirected_subdivision(g);
      auto [A, B] = draw_query(rng, g.vertex_count());
      std::uint64_t seed = rng();
      std::size_t rg = combinatorial_rank(g, A, B), rs = generic_rank(sub, A, B);
      std::size_t og = generic_rank_oracle(g, A, B, seed, cfg_.trials_per_instance);
      std::size_t os = generic_rank_oracle(sub, A, B, seed, cfg_.trials_per_instance);
      ParamAssignment ps = sample_parameters(sub, seed);
      ParamAssignment pg = translate_subdivision_parameters(g, sub, ps);
      RationalMatrix sg = build_covariance(g, pg), ss = build_covariance(sub, ps);
      VertexSet all;
      for (VertexId v = 1; v <= g.vertex_count(); ++v) all.insert(v);
      bool same_cov = submatrix(ss, all, all) == sg;
      record("subdivision", rg == rs && og == os && rg == og && same_cov, g,
             "A=" + format_set(A) + " B=" + format_set(B), "ranks equal on g and its subdivision",
             "combinatorial " + std::to_string(rg) + "/" + std::to_string(rs) + ", oracle " + std::to_string(og) +
                 "/" + std::to_string(os) + (same_cov ? "" : ", translated covariance differs"),
             rank_command(A, B, seed));
    }
  }

  void d_separation() {
    auto rng = stream(8);
    for (int k = 0; k < cfg_.graph_count; ++k) {
      MixedGraph g = draw_graph(rng, GraphClass::Dag, 1, cfg_.max_vertices);
      const int n = g.vertex_count();
      std::vector<VertexId> all(n);
      for (int v = 0; v < n; ++v) all[v] = v + 1;
      std::size_t passes = 0;
      for (const VertexSet& A : subsets(all, 1, 2)) {
        std::vector<VertexId> rest_a;
        for (VertexId v : all)
          if (!A.count(v)) rest_a.push_back(v);
        for (const VertexSet& B : subsets(rest_a, 1, 2)) {
          std::vector<VertexId> rest_b;
          for (VertexId v : rest_a)
            if (!B.count(v)) rest_b.push_back(v);
          for (const VertexSet& C : subsets(rest_b, 0, 3)) {
            bool classic = d_separates(g, A, B, C);
            bool via_t = d_sep_via_t_sep(g, A, B, C);
            bool ci = ci_implied(g, A, B, C);
            if (classic == via_t && via_t == ci) {
              ++passes;
              continue;
            }
            record("d_separation", false, g, "A=" + format_set(A) + " B=" + format_set(B) + " C=" + format_set(C),
                   std::string("d-separation ") + (classic ? "yes" : "no"),
                   std::string("t-separation partition ") + (via_t ? "yes" : "no") + ", rank test " +
                       (ci ? "yes" : "no"),
                   "treksep dsep instance.graph --A " + id_list(A) + " --B " + id_list(B) + " --C " + id_list(C));
          }
        }
      }
      stats("d_separation").passes += passes;
    }
  }

  void canonical() {
    MixedGraph choke = parse_graph("v 5\ne 1 -> 2\ne 1 -> 3\ne 2 -> 4\ne 3 -> 4\ne 4 -> 5\n");
    MixedGraph spider = parse_graph("v 7\ne 7 -> 1\ne 7 -> 2\ne 3 -> 7\ne 7 -> 4\ne 7 -> 5\ne 6 -> 7\n");
    const std::uint64_t seed = cfg_.seed;
    const int trials = cfg_.trials_per_instance;
    {
      const VertexSet A{1, 3}, B{4, 5};
      RankResult r = min_t_separator(choke, A, B);
      std::size_t oracle = generic_rank_oracle(choke, A, B, seed, trials);
      bool pass = r.rank == 1 && oracle == 1 && r.certificate.size() == 1 && r.certificate.c_right.count(4);
      record("canonical_choke", pass, choke, "A={1,3} B={4,5}", "rank 1, C_R={4}",
             "rank " + std::to_string(r.rank) + " (" + to_string(r.certificate) + "), oracle " +
                 std::to_string(oracle),
             rank_command(A, B, seed));
    }
    {
      const VertexSet A{1, 2, 3}, B{4, 5, 6};
      RankResult r = min_t_separator(spider, A, B);
      std::size_t oracle = generic_rank_oracle(spider, A, B, seed, trials);
      bool hub = is_t_separating(spider, A, B, SeparationTriple{{7}, {}, {7}});
      bool pass = r.rank == 2 && oracle == 2 && hub && is_t_separating(spider, A, B, r.certificate);
      record("canonical_spider", pass, spider, "A={1,2,3} B={4,5,6}", "rank 2, ({7},{},{7}) separates",
             "rank " + std::to_string(r.rank) + " (" + to_string(r.certificate) + "), oracle " +
                 std::to_string(oracle) + (hub ? "" : ", hub triple does not separate"),
             rank_command(A, B, seed));
    }
    {
      auto c = vanishing_tetrad(choke, {1, 3}, {4, 5});
      ParamAssignment p = sample_parameters(choke, seed);
      RationalMatrix s = build_covariance(choke, p);
      Rational tetrad = s(0, 3) * s(2, 4) - s(0, 4) * s(2, 3);
      bool pass = c && c->vertex == 4 && c->side == Layer::Right && tetrad == 0;
      record("canonical_tetrad", pass, choke, "{1,3} vs {4,5}", "choke point 4 on the right, tetrad 0",
             (c ? "choke point " + std::to_string(c->vertex) : std::string("no choke point")) + ", tetrad " +
                 tetrad.str(),
             "");
    }
  }

  SuiteConfig cfg_;
  SuiteReport report_;
};

}  // namespace detail

/// Runs every check: trek rules, path-system and Cauchy–Binet expansions,
/// rank agreement for the three graph classes with per-instance duality
/// checks, subdivision invariance, d-separation equivalence and the
/// canonical instances.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  check_config(cfg);
  return detail::Suite(cfg).run();
}

}  // namespace treksep
