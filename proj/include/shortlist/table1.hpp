#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "shortlist/axioms.hpp"
#include "shortlist/csv.hpp"
#include "shortlist/parallel.hpp"

namespace shortlist::table1 {

/// Rows of the axiomatic-analysis matrix, with the representative
/// parameterizations used by the audit.
inline std::vector<RuleSpec> row_rules() {
  std::vector<int> decisive{2, 1};
  for (int k = 3; k <= 40; ++k) decisive.push_back(k);
  decisive.push_back(0);
  RuleSpec dsp;
  dsp.family = RuleFamily::SizePriority;
  dsp.priority = PriorityOrder::explicit_ranking(decisive);

  std::vector<RuleSpec> rows = {
      RuleSpec::parse("av"),
      RuleSpec::parse("threshold:alpha=0.5"),
      RuleSpec::parse("msthreshold:alpha=0.5"),
      RuleSpec::parse("firstmajority"),
      RuleSpec::parse("qncsa:q=0.5"),
      RuleSpec::parse("next:k=2"),
      RuleSpec::parse("largestgap"),
      RuleSpec::parse("fgap:k=5"),
      dsp,
      RuleSpec::parse("isp:s=4"),
      RuleSpec::parse("topfgap:s=10,k=5"),
  };
  return rows;
}

inline std::vector<std::string> row_names() {
  return {"av",          "threshold:alpha=0.5", "msthreshold:alpha=0.5",
          "firstmajority", "qncsa:q=0.5",       "next:k=2",
          "largestgap",  "fgap:k=5",            "decisivesp",
          "isp:s=4",     "topfgap:s=10,k=5"};
}

inline std::vector<AxiomId> columns() {
  return {{Axiom::Unanimity, 1},
          {Axiom::AntiUnanimity, 1},
          {Axiom::Stability, 5},
          {Axiom::Determined, 1},
          {Axiom::Independence, 1},
          {Axiom::IndependenceOfLosing, 1},
          {Axiom::ResistanceToClones, 1},
          {Axiom::SetMonotonicity, 1},
          {Axiom::SupersetMonotonicity, 1}};
}

/// expected[row][col]: true = the rule family violates the axiom.
inline const std::vector<std::vector<bool>>& expected_violations() {
  static const std::vector<std::vector<bool>> table = {
      // U      AU     LS     D      I      ILA    RC     SM     SSM
      {false, false, true, false, true, false, false, false, false},  // av
      {false, false, true, true, false, false, false, false, true},   // threshold
      {false, false, true, false, true, false, false, false, true},   // msthreshold
      {false, false, true, false, true, true, true, true, true},      // firstmajority
      {false, false, true, true, true, false, true, false, true},     // qncsa
      {false, false, true, false, true, true, true, false, true},     // next-2
      {false, false, true, false, true, true, false, false, true},    // largest gap
      {false, true, false, false, true, false, false, false, false},  // fgap-5
      {false, false, true, false, true, true, true, false, true},     // decisive sp
      {false, true, true, false, true, false, true, false, false},    // isp-4
      {false, true, true, false, true, false, true, false, false},    // topfgap
  };
  return table;
}

namespace detail {

inline Election mk(int m, std::vector<std::vector<int>> ballots) {
  return Election::make(m, std::move(ballots));
}

inline Witness seeded(const char* rule, AxiomId axiom, Election before,
                      std::optional<Election> after = std::nullopt, int focus = -1,
                      std::string what = {}) {
  Witness w;
  w.rule = RuleSpec::parse(rule);
  w.axiom = axiom;
  w.before = std::move(before);
  w.after = std::move(after);
  w.focus_candidate = focus;
  w.perturbation = std::move(what);
  w.winners_before = evaluate(w.rule, w.before);
  if (w.after) w.winners_after = evaluate(w.rule, *w.after);
  return w;
}

}  // namespace detail

/// The certified counterexample for a violated cell, constructed explicitly
/// so the audit does not depend on random search finding it. Most are
/// literal score profiles from the axiomatic analysis; the first-majority
/// set/superset-monotonicity witnesses are corrected constructions (the
/// documented (2,2,1,1,1,1) profile selects all six candidates under the
/// non-tiebreaking first-majority rule, so perturbing it cannot violate
/// monotonicity; see tests).
inline std::optional<Witness> seeded_witness(int row, int col) {
  using detail::mk;
  using detail::seeded;
  const AxiomId LS5{Axiom::Stability, 5};
  const AxiomId LS2{Axiom::Stability, 2};
  const AxiomId U{Axiom::Unanimity, 1};
  const AxiomId AU{Axiom::AntiUnanimity, 1};
  const AxiomId D{Axiom::Determined, 1};
  const AxiomId I{Axiom::Independence, 1};
  const AxiomId ILA{Axiom::IndependenceOfLosing, 1};
  const AxiomId RC{Axiom::ResistanceToClones, 1};
  const AxiomId SM{Axiom::SetMonotonicity, 1};
  const AxiomId SSM{Axiom::SupersetMonotonicity, 1};
  (void)U;

  const std::string dsp = [] {
    std::string s = "sp:order=2,1";
    for (int k = 3; k <= 40; ++k) s += "," + std::to_string(k);
    return s + ",0";
  }();

  switch (row) {
    case 0:  // av
      if (col == 2) return seeded("av", LS5, mk(2, {{0, 1}, {0}}));
      if (col == 4)
        return seeded("av", I, mk(2, {{0, 1}, {0}}), mk(2, {{1}, {}}), 1,
                      "candidate 1 column held, candidate 0 loses both approvals");
      break;
    case 1:  // threshold 0.5
      if (col == 2) return seeded("threshold:alpha=0.5", LS5, mk(2, {{0, 1}, {0}}));
      if (col == 3)
        return seeded("threshold:alpha=0.5", D,
                      mk(2, {{0}, {0}, {1}, {}, {}, {}, {}, {}, {}, {}}));
      if (col == 8)
        return seeded("threshold:alpha=0.5", SSM, mk(2, {{0, 1}, {0}, {}}),
                      mk(2, {{0, 1}, {0}, {0, 1}}), -1,
                      "voter 2 now approves a superset of the winner set");
      break;
    case 2:  // msthreshold 0.5
      if (col == 2) return seeded("msthreshold:alpha=0.5", LS5, mk(2, {{0, 1}, {0}}));
      if (col == 4)
        return seeded("msthreshold:alpha=0.5", I, mk(2, {{0, 1}, {0, 1}, {0}, {0}}),
                      mk(2, {{0, 1}, {0, 1}, {}, {}}), 1,
                      "candidate 1 column held, candidate 0 drops to score 2");
      if (col == 8)
        return seeded("msthreshold:alpha=0.5", SSM,
                      mk(2, {{0, 1}, {0, 1}, {0}, {0}, {}}),
                      mk(2, {{0, 1}, {0, 1}, {0}, {0}, {0, 1}}), -1,
                      "voter 4 now approves a superset of the winner set");
      break;
    case 3:  // firstmajority
      if (col == 2) return seeded("firstmajority", LS5, mk(4, {{0, 1, 2}, {0, 1}, {0}}));
      if (col == 4)
        return seeded("firstmajority", I, mk(4, {{0, 1, 2}, {0, 1}, {0}}),
                      mk(4, {{0, 2}, {1}, {}}), 2,
                      "candidate 2 column held, all others re-randomized");
      if (col == 5)
        return seeded("firstmajority", ILA, mk(4, {{0, 1, 2}, {0, 1}, {0}}),
                      mk(3, {{0, 1}, {0, 1}, {0}}), 2, "losing candidate 2 removed");
      if (col == 6)
        return seeded("firstmajority", RC,
                      mk(6, {{0, 1}, {0, 1}, {2}, {3}, {4}, {5}}),
                      mk(7, {{0, 1, 6}, {0, 1, 6}, {2}, {3}, {4}, {5}}), 0,
                      "candidate 0 cloned as candidate 6");
      if (col == 7)
        return seeded("firstmajority", SM,
                      mk(8, {{0, 1, 2}, {0, 1, 2}, {0, 1}, {0, 3, 4, 5}, {6, 7}}),
                      mk(8, {{0, 1, 2}, {0, 1, 2}, {0, 1}, {0, 3, 4, 5}, {0, 1, 2, 6, 7}}),
                      -1, "voter 4 additionally approves the winner set");
      if (col == 8)
        return seeded("firstmajority", SSM,
                      mk(8, {{0, 1, 2}, {0, 1, 2}, {0, 1}, {0, 3, 4, 5}, {6, 7}}),
                      mk(8, {{0, 1, 2}, {0, 1, 2}, {0, 1}, {0, 3, 4, 5}, {0, 1, 2, 6, 7}}),
                      -1, "voter 4 now approves a superset of the winner set");
      break;
    case 4: {  // qncsa 0.5
      if (col == 2)
        return seeded("qncsa:q=0.5", LS5,
                      mk(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0}, {}, {}, {}, {}}));
      if (col == 3)
        return seeded("qncsa:q=0.5", D, mk(2, {{0}, {0}, {1}, {}, {}, {}, {}, {}, {}, {}}));
      if (col == 4)
        return seeded("qncsa:q=0.5", I,
                      mk(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0}, {0}, {0}}),
                      mk(2, {{1}, {1}, {1}, {1}, {1}, {1}, {1}, {}, {}, {}}), 1,
                      "candidate 1 column held, candidate 0 loses every approval");
      if (col == 6) {
        std::vector<std::vector<int>> b, a;
        for (int v = 0; v < 7; ++v) b.push_back({0, 1, 2});
        for (int v = 7; v < 10; ++v) b.push_back({0});
        for (int v = 0; v < 7; ++v) a.push_back({0, 1, 2, 3});
        for (int v = 7; v < 10; ++v) a.push_back({0, 3});
        return seeded("qncsa:q=0.5", RC, mk(3, b), mk(4, a), 0,
                      "candidate 0 cloned as candidate 3");
      }
      if (col == 8) {
        std::vector<std::vector<int>> b, a;
        for (int v = 0; v < 67; ++v) b.push_back({0, 1, 2});
        for (int v = 67; v < 90; ++v) b.push_back({0, 1});
        for (int v = 90; v < 98; ++v) b.push_back({});
        a = b;
        a[90] = {0, 1, 2};
        return seeded("qncsa:q=0.5", SSM, mk(3, b), mk(3, a), -1,
                      "voter 90 now approves every candidate");
      }
      break;
    }
    case 5:  // next-2
      if (col == 2) return seeded("next:k=2", LS5, mk(3, {{0}, {0}, {0, 1, 2}}));
      if (col == 4)
        return seeded("next:k=2", I, mk(4, {{0, 1, 2}, {0, 1, 2}, {0, 1}, {0}}),
                      mk(4, {{0, 2}, {0, 2}, {}, {}}), 2,
                      "candidate 2 column held, all others re-randomized");
      if (col == 5)
        return seeded("next:k=2", ILA, mk(4, {{0, 1, 2}, {0, 1, 2}, {0, 1}, {0}}),
                      mk(3, {{0, 1}, {0, 1}, {0, 1}, {0}}), 2, "losing candidate 2 removed");
      if (col == 6)
        return seeded("next:k=2", RC, mk(3, {{0, 1}, {0}}), mk(4, {{0, 1, 3}, {0}}), 1,
                      "candidate 1 cloned as candidate 3");
      if (col == 8)
        return seeded("next:k=2", SSM, mk(3, {{0, 1}, {0, 2}, {0}, {}}),
                      mk(3, {{0, 1}, {0, 2}, {0}, {0, 1, 2}}), -1,
                      "voter 3 now approves a superset of the winner set");
      break;
    case 6:  // largest gap
      if (col == 2) return seeded("largestgap", LS5, mk(4, {{0, 1, 2}, {0, 1}, {0}}));
      if (col == 4)
        return seeded("largestgap", I, mk(3, {{0, 1}, {0}, {0}, {0}}),
                      mk(3, {{0, 1}, {}, {}, {}}), 1,
                      "candidate 1 column held, candidate 0 drops to score 1");
      if (col == 5)
        return seeded("largestgap", ILA, mk(4, {{0, 1, 2}, {0, 1}, {0}}),
                      mk(3, {{0, 1}, {0, 1}, {0}}), 2, "losing candidate 2 removed");
      if (col == 8)
        return seeded("largestgap", SSM, mk(3, {{0}, {0, 1}, {}}),
                      mk(3, {{0}, {0, 1}, {0, 1}}), -1,
                      "voter 2 now approves a superset of the winner set");
      break;
    case 7:  // fgap-5
      if (col == 1) return seeded("fgap:k=5", AU, mk(4, {{0, 1, 2}, {0, 1}, {0}}));
      if (col == 4)
        return seeded("fgap:k=5", I, mk(2, {{0, 1}, {0}, {0}, {0}, {0}, {0}, {0}}),
                      mk(2, {{0, 1}, {0}, {}, {}, {}, {}, {}}), 1,
                      "candidate 1 column held, candidate 0 drops to score 2");
      break;
    case 8:  // decisive size priority
      if (col == 2) return seeded(dsp.c_str(), LS5, mk(3, {{0, 1}, {0, 2}}));
      if (col == 4)
        return seeded(dsp.c_str(), I, mk(3, {{0, 1}, {0}}), mk(3, {{0, 1, 2}, {0, 2}}), 1,
                      "candidate 1 column held, candidate 2 gains approvals");
      if (col == 5)
        return seeded(dsp.c_str(), ILA, mk(3, {{0, 1}, {0, 2}}), mk(2, {{0, 1}, {0}}), 2,
                      "losing candidate 2 removed");
      if (col == 6)
        return seeded(dsp.c_str(), RC, mk(3, {{0, 1}, {0}}), mk(4, {{0, 1, 3}, {0, 3}}), 0,
                      "candidate 0 cloned as candidate 3");
      if (col == 8)
        return seeded(dsp.c_str(), SSM, mk(3, {{0, 1}, {0, 2}, {}}),
                      mk(3, {{0, 1}, {0, 2}, {0, 1}}), -1,
                      "voter 2 now approves a superset of the winner set");
      break;
    case 9:  // isp-4
      if (col == 1) return seeded("isp:s=4", AU, mk(4, {{0, 1, 2}}));
      if (col == 2)
        return seeded("isp:s=4", LS5,
                      mk(5, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 2, 3}}));
      if (col == 4)
        return seeded("isp:s=4", I,
                      mk(5, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 2, 3}}),
                      mk(5, {{0, 4}, {1, 4}, {2, 3}}), 4,
                      "candidate 4 column held, all others re-randomized");
      if (col == 6)
        return seeded("isp:s=4", RC, mk(5, {{0, 1, 2, 3}, {0, 1, 2}}),
                      mk(6, {{0, 1, 2, 3, 5}, {0, 1, 2, 5}}), 0,
                      "candidate 0 cloned as candidate 5");
      break;
    case 10:  // top-s-first-k-gap
      if (col == 1)
        return seeded("topfgap:s=3,k=3", AU, mk(4, {{0, 1}, {0, 1}, {0}}));
      if (col == 2)
        return seeded("topfgap:s=1,k=2", LS2, mk(4, {{0, 1}, {0, 1}, {0}}));
      if (col == 4)
        return seeded("topfgap:s=1,k=2", I, mk(4, {{0, 1}, {0, 1}, {0}}),
                      mk(4, {{1}, {0, 1}, {}}), 1,
                      "candidate 1 column held, all others re-randomized");
      if (col == 6)
        return seeded("topfgap:s=2,k=2", RC, mk(3, {{0, 1}, {0}}),
                      mk(4, {{0, 1, 3}, {0, 3}}), 0, "candidate 0 cloned as candidate 3");
      break;
    default: break;
  }
  return std::nullopt;
}

struct Cell {
  int row = 0, col = 0;
  RuleSpec rule;
  AxiomId axiom;
  bool expect_violation = false;
  AxiomVerdict verdict;
};

struct Audit {
  std::vector<std::string> names;
  std::vector<AxiomId> axioms;
  std::vector<Cell> cells;  // row-major

  const Cell& at(int row, int col) const {
    return cells[static_cast<std::size_t>(row * static_cast<int>(axioms.size()) + col)];
  }

  bool matches_expected() const {
    for (const Cell& c : cells)
      if (c.verdict.violated() != c.expect_violation) return false;
    return true;
  }
};

/// Full axiomatic audit: every expected violation is certified by its seeded
/// witness (replayed through witness_violates); every expected pass runs
/// `trials` randomized perturbation tests.
inline Audit run(long trials, std::uint64_t seed, int jobs = 1) {
  Audit audit;
  audit.names = row_names();
  audit.axioms = columns();
  const auto rules = row_rules();
  const auto& expected = expected_violations();
  const int cols = static_cast<int>(audit.axioms.size());
  audit.cells.resize(rules.size() * static_cast<std::size_t>(cols));

  parallel_for(static_cast<long>(audit.cells.size()), jobs, [&](long idx) {
    const int row = static_cast<int>(idx) / cols;
    const int col = static_cast<int>(idx) % cols;
    Cell cell;
    cell.row = row;
    cell.col = col;
    cell.rule = rules[static_cast<std::size_t>(row)];
    cell.axiom = audit.axioms[static_cast<std::size_t>(col)];
    cell.expect_violation = expected[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    AuditConfig cfg;
    if (audit.names[static_cast<std::size_t>(row)] == "decisivesp") cfg.min_m = 3;

    if (auto w = seeded_witness(row, col)) {
      cell.verdict.axiom = w->axiom;
      cell.verdict.seed = seed;
      cell.verdict.trials = 1;
      if (witness_violates(*w)) {
        cell.verdict.outcome = AxiomVerdict::Outcome::Violated;
        cell.verdict.witness = std::move(*w);
      } else {
        cell.verdict.outcome = AxiomVerdict::Outcome::NoViolationFound;
      }
    } else {
      cell.verdict = check_axiom(cell.rule, cell.axiom, trials,
                                 seed + static_cast<std::uint64_t>(idx) * 0x9e3779b9ULL, cfg);
    }
    audit.cells[static_cast<std::size_t>(idx)] = std::move(cell);
  });
  return audit;
}

inline std::string to_csv(const Audit& audit) {
  std::ostringstream os;
  os << "rule";
  for (const AxiomId& a : audit.axioms) os << ',' << a.to_string();
  os << '\n';
  const int cols = static_cast<int>(audit.axioms.size());
  for (int r = 0; r < static_cast<int>(audit.names.size()); ++r) {
    os << csv_field(audit.names[static_cast<std::size_t>(r)]);
    for (int c = 0; c < cols; ++c)
      os << ',' << (audit.at(r, c).verdict.violated() ? "fail" : "pass");
    os << '\n';
  }
  return os.str();
}

inline std::string describe_election(const Election& e) {
  std::ostringstream os;
  const SortedScores ss = sorted_scores_of(e);
  os << "m=" << e.num_candidates << " n=" << e.num_voters() << " sorted-scores=";
  for (int i = 0; i < ss.count(); ++i) os << (i ? "," : "") << ss.sorted[static_cast<std::size_t>(i)];
  return os.str();
}

inline std::string witness_dump(const Audit& audit) {
  std::ostringstream os;
  for (const Cell& cell : audit.cells) {
    if (!cell.verdict.violated()) continue;
    const Witness& w = *cell.verdict.witness;
    os << "rule: " << w.rule.to_string() << '\n';
    os << "axiom: " << w.axiom.to_string() << '\n';
    os << "election: " << describe_election(w.before) << '\n';
    os << "perturbation: " << (w.perturbation.empty() ? "none" : w.perturbation) << '\n';
    if (w.after) os << "perturbed: " << describe_election(*w.after) << '\n';
    os << "winners-before:";
    for (int c : w.winners_before.members) os << ' ' << c;
    os << '\n';
    if (w.after) {
      os << "winners-after:";
      for (int c : w.winners_after.members) os << ' ' << c;
      os << '\n';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace shortlist::table1
