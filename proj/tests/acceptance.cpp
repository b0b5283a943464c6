// Acceptance run: one PASS/FAIL line per criterion, default seed and sizes.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "treksep/treksep.hpp"

using namespace treksep;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<std::string> checks;
  double time_limit_s;  // 0 means no per-criterion limit
};

std::string counts(const SuiteReport& r) {
  std::string s;
  for (const auto& c : r.checks) {
    if (!s.empty()) s += ", ";
    s += c.name + " " + std::to_string(c.passes) + "/" + std::to_string(c.total());
  }
  return s;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "trek rule = simple trek rule = covariance entry (200 DAGs, n<=6, exact)", {"trek_rule"}, 60.0},
      {2, "path-system expansion of minors of the inverse of I-L (100 DAGs, exact)", {"gvl"}, 0},
      {3, "Cauchy-Binet expansion of det Sigma_AB (50 DAGs, n<=5, exact)", {"cauchy_binet"}, 0},
      {4, "directed: min t-separator = oracle rank (200 DAGs, 5 trials, scale 1e6)", {"rank_directed"}, 0},
      {5, "undirected: min vertex separator = oracle rank (200 graphs)", {"rank_undirected"}, 0},
      {6, "mixed: min t-separator = oracle rank, also via subdivision (200 graphs)", {"rank_mixed"}, 0},
      {7, "bidirected subdivision leaves the rank unchanged (100 graphs)", {"subdivision"}, 0},
      {8, "d-separation = t-separation partition = rank test (200 DAGs, all triples)", {"d_separation"}, 0},
      {9, "canonical choke, spider and tetrad instances", {"canonical_choke", "canonical_spider", "canonical_tetrad"}, 0},
      {10, "flow = certificate size, certificate minimal (every rank instance)", {"menger"}, 0},
  };

  bool all = true;
  double total_s = 0;
  for (const auto& c : criteria) {
    SuiteConfig cfg;
    cfg.only = c.checks;
    auto start = std::chrono::steady_clock::now();
    SuiteReport r = run_suite(cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total_s += secs;
    bool pass = r.ok() && (c.time_limit_s == 0 || secs < c.time_limit_s);
    for (const auto& ch : r.checks) pass = pass && ch.total() > 0;
    all = all && pass;
    std::printf("%s [%d] %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.title, counts(r).c_str(), secs);
    for (const auto& f : r.failures)
      std::printf("      %s %s: expected %s, got %s\n%s", f.check.c_str(), f.query.c_str(), f.expected.c_str(),
                  f.actual.c_str(), f.graph.c_str());
  }

  {
    MixedGraph choke = parse_graph("v 5\ne 1 -> 2\ne 1 -> 3\ne 2 -> 4\ne 3 -> 4\ne 4 -> 5\n");
    MixedGraph spider = parse_graph("v 7\ne 7 -> 1\ne 7 -> 2\ne 3 -> 7\ne 7 -> 4\ne 7 -> 5\ne 6 -> 7\n");
    std::printf("      choke  {1,3} x {4,5}: rank %zu, %s\n", generic_rank(choke, {1, 3}, {4, 5}),
                to_string(min_t_separator(choke, {1, 3}, {4, 5}).certificate).c_str());
    std::printf("      spider {1,2,3} x {4,5,6}: rank %zu, %s\n", generic_rank(spider, {1, 2, 3}, {4, 5, 6}),
                to_string(min_t_separator(spider, {1, 2, 3}, {4, 5, 6}).certificate).c_str());
  }

  bool in_time = total_s < 300.0;
  std::printf("%s total runtime %.2f s (limit 300 s)\n", in_time ? "PASS" : "FAIL", total_s);
  return all && in_time ? 0 : 1;
}
