#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shortlist/csv.hpp"
#include "shortlist/dataio.hpp"
#include "shortlist/experiments.hpp"
#include "shortlist/metrics.hpp"
#include "shortlist/table1.hpp"

namespace shortlist::cli {

namespace detail {

/// "start:stop:step", both endpoints included when step divides the range;
/// values snapped at 1e-12 to keep grid points stable in CSV output.
inline std::vector<double> parse_grid(const std::string& text) {
  std::istringstream is(text);
  std::string a, b, c;
  if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, c))
    throw std::invalid_argument("grid must be start:stop:step");
  const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
  if (step <= 0) throw std::invalid_argument("grid step must be positive");
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-12; v += step)
    grid.push_back(std::round(v * 1e12) / 1e12);
  if (grid.empty()) throw std::invalid_argument("grid is empty");
  return grid;
}

inline bool starts_new_spec(const std::string& token) {
  static const std::vector<std::string> families = {
      "av",   "threshold", "msthreshold", "meanthreshold", "firstmajority",
      "next", "qncsa",     "largestgap",  "fgap",          "mfgap",
      "isp",  "sp",        "topfgap",     "cluster"};
  const std::size_t colon = token.find(':');
  const std::string head = shortlist::detail::lower(
      colon == std::string::npos ? token : token.substr(0, colon));
  for (const auto& f : families)
    if (head == f) return true;
  return false;
}

/// Comma-separated rule list; commas inside a spec's parameter list (e.g.
/// topfgap:s=3,k=2) belong to the previous spec because parameter tokens are
/// never family names.
inline std::vector<RuleSpec> parse_rule_list(const std::string& text) {
  std::vector<std::string> pieces;
  std::istringstream is(text);
  std::string token;
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    if (pieces.empty() || starts_new_spec(token))
      pieces.push_back(token);
    else
      pieces.back() += "," + token;
  }
  if (pieces.empty()) throw std::invalid_argument("empty rule list");
  std::vector<RuleSpec> specs;
  for (const auto& p : pieces) specs.push_back(RuleSpec::parse(p));
  return specs;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << content;
}

inline std::string winners_line(const Election& e, const WinnerSet& w) {
  // labels in canonical (descending score) order
  const SortedScores ss = sorted_scores_of(e);
  std::string line;
  for (int i = 0; i < w.cut; ++i) {
    if (i) line += "; ";
    line += e.label(ss.order[static_cast<std::size_t>(i)]);
  }
  return line;
}

inline std::string experiment1_csv(const std::vector<Experiment1Row>& rows) {
  std::ostringstream os;
  os << "rule_spec,model,param,instances,precision,avg_size\n";
  for (const auto& r : rows)
    os << csv_field(r.rule.to_string()) << ',' << r.model << ','
       << format_fixed(r.param) << ',' << r.instances << ','
       << format_fixed(r.precision) << ',' << format_fixed(r.avg_size) << '\n';
  return os.str();
}

inline std::string points_csv(const std::vector<RulePoint>& points,
                              const std::vector<RulePoint>& frontier) {
  auto on_frontier = [&](const RulePoint& p) {
    for (const auto& f : frontier)
      if (f.spec == p.spec) return true;
    return false;
  };
  std::ostringstream os;
  os << "rule_spec,avg_size,precision,instances,on_frontier\n";
  for (const auto& p : points)
    os << csv_field(p.spec.to_string()) << ',' << format_fixed(p.avg_size) << ','
       << format_fixed(p.precision) << ',' << p.instance_count << ','
       << (on_frontier(p) ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Returns the process exit
/// status: 0 success, 1 data error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"approval-based shortlisting with a variable number of winners"};
  app.require_subcommand(1);

  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads (output is identical for any value)");

  // winners
  auto* winners = app.add_subcommand("winners", "compute one rule's winner set");
  winners->fallthrough();
  std::string w_ballots, w_rule;
  winners->add_option("--ballots", w_ballots, "ballot file")->required();
  winners->add_option("--rule", w_rule, "rule spec, e.g. av, fgap:k=2, qncsa:q=0.5")->required();

  // axioms
  auto* axioms = app.add_subcommand("axioms", "randomized axiom audit");
  axioms->fallthrough();
  std::string a_rule, a_axiom, a_out, a_witnesses;
  long a_trials = 10000;
  std::uint64_t a_seed = 0;
  bool a_table1 = false, a_expect = false;
  axioms->add_option("--rule", a_rule, "rule spec to audit");
  axioms->add_option("--axiom", a_axiom, "restrict to one axiom id");
  axioms->add_option("--trials", a_trials, "randomized trials per cell")->required();
  axioms->add_option("--seed", a_seed, "rng seed")->required();
  axioms->add_flag("--table1", a_table1, "audit the full rule/axiom matrix");
  axioms->add_flag("--expect-table1", a_expect,
                   "exit 0 only if results match the documented matrix");
  axioms->add_option("--out", a_out, "write the report CSV here instead of stdout");
  axioms->add_option("--witnesses", a_witnesses, "write violation witnesses to this file");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "noise/bias trend experiment");
  simulate->fallthrough();
  std::string s_model, s_rules, s_grid = "0:1:0.05", s_out;
  long s_instances = 1000;
  std::uint64_t s_seed = 0;
  simulate->add_option("--model", s_model, "noise or bias")->required();
  simulate->add_option("--rules", s_rules, "comma-separated rule specs (default: the trend slate)");
  simulate->add_option("--grid", s_grid, "parameter grid start:stop:step");
  simulate->add_option("--instances", s_instances, "instances per grid point");
  simulate->add_option("--seed", s_seed, "rng seed")->required();
  simulate->add_option("--out", s_out, "output CSV path")->required();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "rule-grid tradeoff experiment");
  sweep_cmd->fallthrough();
  std::string sw_from, sw_out, sw_frontier, sw_grid = "0:0.5:0.05", sw_rules;
  long sw_instances = 1000;
  std::uint64_t sw_seed = 0;
  sweep_cmd->add_option("--instances-from", sw_from,
                        "ballot directory, or synthetic model name (noise|bias)")
      ->required();
  sweep_cmd->add_option("--out", sw_out, "per-point CSV path")->required();
  sweep_cmd->add_option("--frontier", sw_frontier, "frontier CSV path");
  sweep_cmd->add_option("--grid", sw_grid, "model parameter grid (synthetic sources)");
  sweep_cmd->add_option("--instances", sw_instances, "instances per grid point (synthetic)");
  sweep_cmd->add_option("--seed", sw_seed, "rng seed (synthetic sources)");
  sweep_cmd->add_option("--rules", sw_rules, "override the default rule grid");

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "linkage clustering of a score profile");
  cluster_cmd->fallthrough();
  std::string c_ballots, c_config;
  cluster_cmd->add_option("--ballots", c_ballots, "ballot file")->required();
  cluster_cmd->add_option("--config", c_config, "e.g. dist=single,beta=2")->required();

  // hugo
  auto* hugo = app.add_subcommand("hugo", "evaluate a rule on an awards data set");
  hugo->fallthrough();
  std::string h_data, h_rule;
  bool h_eph = false;
  hugo->add_option("--data", h_data, "data directory (<year>/<category>.ballots)")->required();
  hugo->add_option("--rule", h_rule, "rule spec")->required();
  hugo->add_flag("--eph", h_eph, "also report the elimination-rule 6-set per election");

  try {
    std::vector<const char*> argv;
    argv.push_back("shortlist");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*winners) {
      const BallotFile bf = parse_ballot_file(w_ballots);
      const RuleSpec spec = RuleSpec::parse(w_rule);
      const WinnerSet w = evaluate(spec, bf.election);
      out << "rule: " << spec.to_string() << '\n';
      out << "size: " << w.size() << '\n';
      out << "winners: " << detail::winners_line(bf.election, w) << '\n';
      return 0;
    }

    if (*axioms) {
      if (a_table1 || a_rule.empty()) {
        if (!a_table1)
          throw std::invalid_argument("axioms needs --rule <spec> or --table1");
        const table1::Audit audit = table1::run(a_trials, a_seed, jobs);
        const std::string csv = table1::to_csv(audit);
        if (a_out.empty()) out << csv;
        else detail::write_file(a_out, csv);
        if (!a_witnesses.empty())
          detail::write_file(a_witnesses, table1::witness_dump(audit));
        if (a_expect && !audit.matches_expected()) {
          for (const auto& cell : audit.cells)
            if (cell.verdict.violated() != cell.expect_violation)
              err << "unexpected result: " << audit.names[static_cast<std::size_t>(cell.row)]
                  << " / " << cell.axiom.to_string() << ": "
                  << (cell.verdict.violated() ? "violated" : "no violation found") << '\n';
          return 1;
        }
        return 0;
      }
      const RuleSpec spec = RuleSpec::parse(a_rule);

      if (a_expect) {
        // compare this rule's row against the documented matrix
        const auto rows = table1::row_rules();
        int row = -1;
        for (std::size_t r = 0; r < rows.size(); ++r)
          if (rows[r] == spec) row = static_cast<int>(r);
        if (row < 0)
          throw std::invalid_argument(
              "--expect-table1 requires one of the documented representative rules");
        const table1::Audit audit = table1::run(a_trials, a_seed, jobs);
        const int cols = static_cast<int>(audit.axioms.size());
        std::ostringstream csv;
        csv << "rule,axiom,result,expected\n";
        bool match = true;
        for (int c = 0; c < cols; ++c) {
          const auto& cell = audit.at(row, c);
          const bool violated = cell.verdict.violated();
          csv << csv_field(audit.names[static_cast<std::size_t>(row)]) << ','
              << cell.axiom.to_string() << ',' << (violated ? "fail" : "pass") << ','
              << (cell.expect_violation ? "fail" : "pass") << '\n';
          match = match && violated == cell.expect_violation;
        }
        if (a_out.empty()) out << csv.str();
        else detail::write_file(a_out, csv.str());
        return match ? 0 : 1;
      }

      std::vector<AxiomId> ids;
      if (!a_axiom.empty()) {
        ids.push_back(AxiomId::parse(a_axiom));
      } else {
        ids = {{Axiom::Anonymity, 1},       {Axiom::Neutrality, 1},
               {Axiom::Efficiency, 1},      {Axiom::NonTiebreaking, 1},
               {Axiom::Unanimity, 1},       {Axiom::AntiUnanimity, 1},
               {Axiom::Stability, 5},       {Axiom::Determined, 1},
               {Axiom::Independence, 1},    {Axiom::IndependenceOfLosing, 1},
               {Axiom::ResistanceToClones, 1}, {Axiom::SetMonotonicity, 1},
               {Axiom::SupersetMonotonicity, 1}};
      }
      std::vector<AxiomVerdict> verdicts(ids.size());
      parallel_for(static_cast<long>(ids.size()), jobs, [&](long i) {
        verdicts[static_cast<std::size_t>(i)] =
            check_axiom(spec, ids[static_cast<std::size_t>(i)], a_trials,
                        a_seed + static_cast<std::uint64_t>(i) * 0x9e3779b9ULL);
      });
      std::ostringstream csv;
      csv << "rule,axiom,result,trials\n";
      std::ostringstream wit;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        csv << csv_field(spec.to_string()) << ',' << ids[i].to_string() << ','
            << (verdicts[i].violated() ? "fail" : "pass") << ',' << verdicts[i].trials
            << '\n';
        if (verdicts[i].violated()) {
          const Witness& w = *verdicts[i].witness;
          wit << "rule: " << w.rule.to_string() << "\naxiom: " << w.axiom.to_string()
              << "\nelection: " << table1::describe_election(w.before)
              << "\nperturbation: " << w.perturbation << '\n';
          if (w.after) wit << "perturbed: " << table1::describe_election(*w.after) << '\n';
          wit << '\n';
        }
      }
      if (a_out.empty()) out << csv.str();
      else detail::write_file(a_out, csv.str());
      if (!a_witnesses.empty()) detail::write_file(a_witnesses, wit.str());
      return 0;
    }

    if (*simulate) {
      SyntheticModel model;
      if (s_model == "noise") model = SyntheticModel::Noise;
      else if (s_model == "bias") model = SyntheticModel::Bias;
      else throw std::invalid_argument("--model must be noise or bias");
      const std::vector<double> grid = detail::parse_grid(s_grid);
      const std::vector<RuleSpec> rules =
          s_rules.empty() ? experiment1_rules() : detail::parse_rule_list(s_rules);
      const auto rows = run_experiment1(rules, model, grid, s_instances, s_seed, jobs);
      detail::write_file(s_out, detail::experiment1_csv(rows));
      return 0;
    }

    if (*sweep_cmd) {
      std::vector<InstanceRecord> instances;
      if (sw_from == "noise" || sw_from == "bias") {
        if (sweep_cmd->count("--seed") == 0)
          throw std::invalid_argument("synthetic sweep requires --seed");
        const SyntheticModel model =
            sw_from == "noise" ? SyntheticModel::Noise : SyntheticModel::Bias;
        instances = generate_instances(model, detail::parse_grid(sw_grid), sw_instances,
                                       sw_seed, jobs);
      } else {
        instances = to_instances(load_hugo_dataset(sw_from));
        if (instances.empty()) throw ParseError(sw_from + ": no ballot files found");
      }
      int max_m = 0;
      for (const auto& inst : instances)
        max_m = std::max(max_m, inst.election.num_candidates);
      const std::vector<RuleSpec> grid =
          sw_rules.empty() ? experiment2_grid(max_m) : detail::parse_rule_list(sw_rules);
      const auto points = sweep(instances, grid, jobs);
      const auto frontier = pareto_frontier(points);
      detail::write_file(sw_out, detail::points_csv(points, frontier));
      if (!sw_frontier.empty())
        detail::write_file(sw_frontier, detail::points_csv(frontier, frontier));
      return 0;
    }

    if (*cluster_cmd) {
      const BallotFile bf = parse_ballot_file(c_ballots);
      const LinkageConfig cfg = LinkageConfig::parse(c_config);
      const SortedScores ss = sorted_scores_of(bf.election);
      const Partition part = linkage_cluster(ss, cfg);
      out << "config: " << cfg.to_string() << '\n';
      const auto sets = part.candidate_sets(ss);
      for (std::size_t i = 0; i < part.clusters.size(); ++i) {
        const Cluster& cl = part.clusters[i];
        out << "cluster " << (i + 1) << " (scores " << cl.high << ".." << cl.low << "):";
        for (std::size_t j = 0; j < sets[i].size(); ++j)
          out << (j ? "; " : " ") << bf.election.label(sets[i][j]);
        out << '\n';
      }
      const WinnerSet w = cluster_shortlist(ss, cfg);
      out << "winning (" << w.size() << "): " << detail::winners_line(bf.election, w)
          << '\n';
      return 0;
    }

    if (*hugo) {
      const HugoDataset data = load_hugo_dataset(h_data);
      if (data.elections.empty()) throw ParseError(h_data + ": no ballot files found");
      for (const auto& warning : data.warnings) err << "warning: " << warning << '\n';
      const RuleSpec spec = RuleSpec::parse(h_rule);
      const auto instances = to_instances(data);
      const auto points = sweep(instances, {spec}, jobs);
      out << "rule: " << spec.to_string() << '\n';
      out << "elections: " << data.elections.size() << '\n';
      out << "precision: " << format_fixed(points.front().precision) << '\n';
      out << "avg_size: " << format_fixed(points.front().avg_size) << '\n';
      out << "histogram:\nposition,count\n";
      for (const auto& [pos, count] : winner_position_histogram(data.elections))
        out << pos << ',' << count << '\n';
      if (h_eph) {
        for (const auto& h : data.elections) {
          const auto remaining = e_pluribus_hugo(h.election, 6);
          out << "eph: " << h.year << "/" << h.category << ":";
          for (std::size_t i = 0; i < remaining.size(); ++i)
            out << (i ? "; " : " ") << h.election.label(remaining[i]);
          out << '\n';
        }
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace shortlist::cli
