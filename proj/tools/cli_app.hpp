#pragma once

// The `treksep` command line. Lives in a header so tests can drive it with
// captured streams.
//
// Exit codes: 0 success / true, 1 false / failures, 2 usage or input error,
// 3 internal cross-check disagreement, 4 enumeration cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "treksep/treksep.hpp"

namespace treksep::cli {

enum ExitCode : int { kOk = 0, kFalse = 1, kInputError = 2, kDisagreement = 3, kCapExceeded = 4 };

using Json = nlohmann::ordered_json;

/// "1,3,4" -> {1,3,4}; the empty string is the empty set.
inline VertexSet parse_id_list(const std::string& text, const char* name) {
  VertexSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw InvalidArgument(std::string("--") + name + ": '" + tok + "' is not a vertex id");
    out.insert(v);
    pos = end + 1;
  }
  return out;
}

inline Json to_json(const VertexSet& s) { return Json(std::vector<VertexId>(s.begin(), s.end())); }

inline Json to_json(const SeparationTriple& c) {
  return Json{{"cl", to_json(c.c_left)}, {"cm", to_json(c.c_mid)}, {"cr", to_json(c.c_right)}};
}

inline Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passes", c.passes}, {"failures", c.failures}});
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"check", f.check},
                        {"graph", f.graph},
                        {"query", f.query},
                        {"expected", f.expected},
                        {"actual", f.actual},
                        {"reproduce", f.reproduce}});
  return Json{{"seed", r.seed},
              {"passes", r.passes()},
              {"failures_total", r.failure_count()},
              {"ok", r.ok()},
              {"checks", checks},
              {"failures", failures}};
}

struct Options {
  std::string graph_path;
  std::string a, b, c, cl, cm, cr;
  std::string output = "text";
  bool oracle = false;
  std::uint64_t seed = 1;
  int trials = kDefaultTrials;
  int i = 0, j = 0;
  std::size_t cap = kDefaultCap;
  bool all_treks = false;
  int graphs = 200;
  int max_vertices = 6;
  double density = 0.4;
  bool mutate = false;
};

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Trek separation, generic ranks and their algebraic cross-checks", "treksep"};
    app.require_subcommand(1);
    auto graph_arg = [&](CLI::App* sub) { sub->add_option("graph", o_.graph_path, "graph file")->required(); };
    auto sets = [&](CLI::App* sub, bool with_c) {
      sub->add_option("--A", o_.a, "comma-separated vertex ids")->required();
      sub->add_option("--B", o_.b, "comma-separated vertex ids")->required();
      if (with_c) sub->add_option("--C", o_.c, "comma-separated vertex ids (may be empty)");
    };
    auto output = [&](CLI::App* sub) {
      sub->add_option("--output", o_.output, "text or json")->check(CLI::IsMember({"text", "json"}));
    };

    auto* validate_cmd = app.add_subcommand("validate", "check a graph file against the mixed-graph rules");
    graph_arg(validate_cmd);

    auto* rank_cmd = app.add_subcommand("rank", "generic rank of the covariance block and a minimum certificate");
    graph_arg(rank_cmd);
    sets(rank_cmd, false);
    rank_cmd->add_flag("--oracle", o_.oracle, "also compute the rank algebraically from sampled parameters");
    rank_cmd->add_option("--seed", o_.seed, "seed for the algebraic oracle");
    rank_cmd->add_option("--trials", o_.trials, "oracle samples")->check(CLI::PositiveNumber);
    output(rank_cmd);

    auto* tsep_cmd = app.add_subcommand("tsep", "does (C_L, C_M, C_R) t-separate A from B?");
    graph_arg(tsep_cmd);
    sets(tsep_cmd, false);
    tsep_cmd->add_option("--CL", o_.cl, "left blocking set");
    tsep_cmd->add_option("--CM", o_.cm, "middle blocking set");
    tsep_cmd->add_option("--CR", o_.cr, "right blocking set");
    output(tsep_cmd);

    auto* dsep_cmd = app.add_subcommand("dsep", "d-separation, both by path blocking and by t-separation");
    graph_arg(dsep_cmd);
    sets(dsep_cmd, true);
    output(dsep_cmd);

    auto* ci_cmd = app.add_subcommand("ci", "is A independent of B given C on the whole model?");
    graph_arg(ci_cmd);
    sets(ci_cmd, true);
    output(ci_cmd);

    auto* treks_cmd = app.add_subcommand("treks", "list the simple treks between two vertices");
    graph_arg(treks_cmd);
    treks_cmd->add_option("--i", o_.i, "vertex on the left")->required();
    treks_cmd->add_option("--j", o_.j, "vertex on the right")->required();
    treks_cmd->add_option("--cap", o_.cap, "maximum number of treks")->check(CLI::PositiveNumber);
    treks_cmd->add_flag("--all", o_.all_treks, "list every trek, not only the simple ones");

    auto* verify_cmd = app.add_subcommand("verify", "run the randomized cross-check suite");
    verify_cmd->add_option("--seed", o_.seed, "suite seed");
    verify_cmd->add_option("--graphs", o_.graphs, "random graphs per check")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-vertices", o_.max_vertices, "largest random graph")->check(CLI::Range(2, 10));
    verify_cmd->add_option("--trials", o_.trials, "oracle samples per instance")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--density", o_.density, "edge probability")->check(CLI::Range(0.0, 1.0));
    verify_cmd->add_flag("--mutate", o_.mutate, "corrupt the combinatorial rank to check that the suite notices");
    output(verify_cmd);

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kInputError;
    }

    try {
      if (validate_cmd->parsed()) return cmd_validate();
      if (rank_cmd->parsed()) return cmd_rank();
      if (tsep_cmd->parsed()) return cmd_tsep();
      if (dsep_cmd->parsed()) return cmd_dsep();
      if (ci_cmd->parsed()) return cmd_ci();
      if (treks_cmd->parsed()) return cmd_treks();
      if (verify_cmd->parsed()) return cmd_verify();
    } catch (const CapExceeded& e) {
      err_ << "error: " << e.what() << '\n';
      return kCapExceeded;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return kInputError;
    }
    return kInputError;
  }

 private:
  bool json() const { return o_.output == "json"; }

  MixedGraph load() const { return parse_graph(read_text_file(o_.graph_path)); }

  int cmd_validate() {
    MixedGraph g = parse_graph_unchecked(read_text_file(o_.graph_path));
    auto violations = validate(g);
    for (const auto& v : violations) out_ << v << '\n';
    return violations.empty() ? kOk : kFalse;
  }

  int cmd_rank() {
    MixedGraph g = load();
    VertexSet A = parse_id_list(o_.a, "A"), B = parse_id_list(o_.b, "B");
    RankResult r = min_t_separator(g, A, B);
    std::size_t oracle = 0;
    if (o_.oracle) oracle = generic_rank_oracle(g, A, B, o_.seed, o_.trials);
    const bool agrees = !o_.oracle || oracle == r.rank;
    if (json()) {
      Json j{{"rank", r.rank}, {"certificate", to_json(r.certificate)}};
      if (o_.oracle) {
        j["oracle_rank"] = oracle;
        j["agrees"] = agrees;
        j["seed"] = o_.seed;
      }
      out_ << j.dump() << '\n';
    } else {
      out_ << "rank " << r.rank << "; " << to_string(r.certificate) << '\n';
      if (g.is_dag()) {
        auto [ca, cb] = r.certificate.pair_view();
        out_ << "pair view: C_A=" << format_set(ca) << " C_B=" << format_set(cb) << '\n';
      }
      if (o_.oracle)
        out_ << "oracle rank " << oracle << " (seed " << o_.seed << ", trials " << o_.trials << "); "
             << (agrees ? "agrees" : "DISAGREES") << '\n';
    }
    return agrees ? kOk : kDisagreement;
  }

  int cmd_tsep() {
    MixedGraph g = load();
    VertexSet A = parse_id_list(o_.a, "A"), B = parse_id_list(o_.b, "B");
    SeparationTriple c{parse_id_list(o_.cl, "CL"), parse_id_list(o_.cm, "CM"), parse_id_list(o_.cr, "CR")};
    bool sep = is_t_separating(g, A, B, c);
    if (json())
      out_ << Json{{"separates", sep}, {"certificate", to_json(c)}}.dump() << '\n';
    else
      out_ << (sep ? "yes" : "no") << '\n';
    return sep ? kOk : kFalse;
  }

  int cmd_dsep() {
    MixedGraph g = load();
    VertexSet A = parse_id_list(o_.a, "A"), B = parse_id_list(o_.b, "B"), C = parse_id_list(o_.c, "C");
    bool classic = d_separates(g, A, B, C);
    auto partition = t_sep_partition(g, A, B, C);
    bool via = partition.has_value();
    if (json()) {
      Json j{{"d_separated", classic}, {"t_separation_partition", via}};
      if (partition) j["partition"] = {{"ca", to_json(partition->first)}, {"cb", to_json(partition->second)}};
      j["agrees"] = classic == via;
      out_ << j.dump() << '\n';
    } else {
      out_ << "d-separation: " << (classic ? "yes" : "no") << '\n';
      out_ << "t-separation partition: " << (via ? "yes" : "no");
      if (partition) out_ << " (C_A=" << format_set(partition->first) << " C_B=" << format_set(partition->second) << ")";
      out_ << '\n';
    }
    if (classic != via) {
      err_ << "internal disagreement between the two d-separation procedures\n";
      return kDisagreement;
    }
    return classic ? kOk : kFalse;
  }

  int cmd_ci() {
    MixedGraph g = load();
    VertexSet A = parse_id_list(o_.a, "A"), B = parse_id_list(o_.b, "B"), C = parse_id_list(o_.c, "C");
    bool implied = ci_implied(g, A, B, C);
    std::size_t rank = generic_rank(g, detail::set_union(A, C), detail::set_union(B, C));
    if (json())
      out_ << Json{{"implied", implied}, {"rank", rank}, {"conditioning_size", C.size()}}.dump() << '\n';
    else
      out_ << (implied ? "yes" : "no") << " (generic rank " << rank << ", #C = " << C.size() << ")\n";
    return implied ? kOk : kFalse;
  }

  int cmd_treks() {
    MixedGraph g = load();
    auto ts = o_.all_treks ? enumerate_treks(g, o_.i, o_.j, o_.cap) : enumerate_simple_treks(g, o_.i, o_.j, o_.cap);
    out_ << ts.size() << (o_.all_treks ? " treks" : " simple treks") << " between " << o_.i << " and " << o_.j
         << '\n';
    for (const Trek& t : ts) out_ << to_string(t) << "    " << to_string(trek_monomial(g, t)) << '\n';
    return kOk;
  }

  int cmd_verify() {
    SuiteConfig cfg;
    cfg.seed = o_.seed;
    cfg.graph_count = o_.graphs;
    cfg.max_vertices = o_.max_vertices;
    cfg.trials_per_instance = o_.trials;
    cfg.edge_density = o_.density;
    if (o_.mutate)
      cfg.rank_override = [](const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
        std::size_t r = generic_rank(g, A, B);
        return r < std::min(A.size(), B.size()) ? r + 1 : r;
      };
    SuiteReport r = run_suite(cfg);
    if (json()) {
      out_ << to_json(r).dump(2) << '\n';
    } else {
      out_ << "seed " << r.seed << '\n';
      for (const auto& c : r.checks)
        out_ << c.name << std::string(c.name.size() < 18 ? 18 - c.name.size() : 1, ' ') << c.passes << " passed, "
             << c.failures << " failed\n";
      for (const auto& f : r.failures) {
        out_ << "\nFAIL " << f.check << ' ' << f.query << "\n  expected: " << f.expected << "\n  actual:   " << f.actual
             << '\n';
        if (!f.reproduce.empty()) out_ << "  reproduce: " << f.reproduce << '\n';
        out_ << "  instance.graph:\n";
        std::size_t pos = 0;
        while (pos < f.graph.size()) {
          std::size_t end = f.graph.find('\n', pos);
          out_ << "    " << f.graph.substr(pos, end - pos) << '\n';
          pos = end + 1;
        }
      }
      out_ << (r.ok() ? "all checks passed" : std::to_string(r.failure_count()) + " failures") << '\n';
    }
    return r.ok() ? kOk : kFalse;
  }

  std::ostream& out_;
  std::ostream& err_;
  Options o_;
};

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  return App(out, err).run(std::move(args));
}

}  // namespace treksep::cli
