#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shortlist/parallel.hpp"
#include "shortlist/rules.hpp"
#include "shortlist/synthetic.hpp"

namespace shortlist {

/// One rule instance's (average size, precision) over an instance set.
struct RulePoint {
  RuleSpec spec;
  double avg_size = 0.0;
  double precision = 0.0;
  long instance_count = 0;
};

/// Fraction of instances whose true winner is shortlisted.
inline double precision(const std::vector<WinnerSet>& outputs,
                        const std::vector<int>& true_winners) {
  if (outputs.size() != true_winners.size())
    throw std::invalid_argument("precision: outputs and true winners differ in length");
  if (outputs.empty()) throw std::invalid_argument("precision of an empty instance set");
  long hits = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i)
    if (outputs[i].contains(true_winners[i])) ++hits;
  return static_cast<double>(hits) / static_cast<double>(outputs.size());
}

inline double average_size(const std::vector<WinnerSet>& outputs) {
  if (outputs.empty()) throw std::invalid_argument("average size of an empty instance set");
  long total = 0;
  for (const WinnerSet& w : outputs) total += w.size();
  return static_cast<double>(total) / static_cast<double>(outputs.size());
}

/// Evaluates every spec on every instance. Instances without a true winner
/// count toward average size but are excluded from precision.
inline std::vector<RulePoint> sweep(const std::vector<InstanceRecord>& instances,
                                    const std::vector<RuleSpec>& specs, int jobs = 1) {
  std::vector<SortedScores> sorted;
  sorted.reserve(instances.size());
  for (const auto& inst : instances) sorted.push_back(sorted_scores_of(inst.election));

  std::vector<RulePoint> points(specs.size());
  parallel_for(static_cast<long>(specs.size()), jobs, [&](long si) {
    const RuleSpec& spec = specs[static_cast<std::size_t>(si)];
    long size_sum = 0, hits = 0, with_winner = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const WinnerSet w =
          evaluate(spec, sorted[i], instances[i].election.num_voters());
      size_sum += w.size();
      if (instances[i].true_winner >= 0) {
        ++with_winner;
        if (w.contains(instances[i].true_winner)) ++hits;
      }
    }
    RulePoint& p = points[static_cast<std::size_t>(si)];
    p.spec = spec;
    p.instance_count = static_cast<long>(instances.size());
    p.avg_size = instances.empty()
                     ? 0.0
                     : static_cast<double>(size_sum) / static_cast<double>(instances.size());
    p.precision =
        with_winner == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(with_winner);
  });
  return points;
}

/// The parameter grid of the tradeoff experiment, for elections with at most
/// max_m candidates: next-k for k in {2,3}; both threshold families, q-NCSA,
/// and first-k-gap (k = floor(alpha*n) and floor(alpha*max score)) over
/// alpha in {0, 0.01, ..., 1}; increasing size priority for 2 <= s <= m; and
/// top-s-first-k-gap crossing 2 <= s <= m with both k selectors.
inline std::vector<RuleSpec> experiment2_grid(int max_m) {
  std::vector<RuleSpec> grid;
  grid.push_back(RuleSpec::parse("next:k=2"));
  grid.push_back(RuleSpec::parse("next:k=3"));
  for (int i = 0; i <= 100; ++i) {
    const Rational alpha = Rational::of(i, 100);
    RuleSpec t;
    t.family = RuleFamily::Threshold;
    t.alpha = alpha;
    grid.push_back(t);
    t.family = RuleFamily::MaxScoreThreshold;
    grid.push_back(t);
  }
  for (int i = 0; i <= 100; ++i) {
    RuleSpec t;
    t.family = RuleFamily::QNCSA;
    t.q = static_cast<double>(i) / 100.0;
    grid.push_back(t);
  }
  for (int i = 0; i <= 100; ++i) {
    const Rational alpha = Rational::of(i, 100);
    RuleSpec t;
    t.family = RuleFamily::FirstKGap;
    t.k = KSelector::fraction_of_voters(alpha);
    grid.push_back(t);
    t.k = KSelector::fraction_of_max_score(alpha);
    grid.push_back(t);
  }
  for (int s = 2; s <= max_m; ++s) {
    RuleSpec t;
    t.family = RuleFamily::SizePriority;
    t.priority = PriorityOrder::increasing(s);
    grid.push_back(t);
  }
  for (int s = 2; s <= max_m; ++s)
    for (int i = 0; i <= 100; ++i) {
      const Rational alpha = Rational::of(i, 100);
      RuleSpec t;
      t.family = RuleFamily::TopSFirstKGap;
      t.s = s;
      t.k = KSelector::fraction_of_voters(alpha);
      grid.push_back(t);
      t.k = KSelector::fraction_of_max_score(alpha);
      grid.push_back(t);
    }
  return grid;
}

/// Points not dominated by any other point (dominance: weakly better on both
/// axes, strictly on at least one). Coincident points survive together.
/// Sorted by average size ascending, precision descending within ties.
inline std::vector<RulePoint> pareto_frontier(const std::vector<RulePoint>& points) {
  std::vector<RulePoint> frontier;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j == i) continue;
      const bool weakly = points[j].precision >= points[i].precision &&
                          points[j].avg_size <= points[i].avg_size;
      const bool strictly = points[j].precision > points[i].precision ||
                            points[j].avg_size < points[i].avg_size;
      dominated = weakly && strictly;
    }
    if (!dominated) frontier.push_back(points[i]);
  }
  std::stable_sort(frontier.begin(), frontier.end(),
                   [](const RulePoint& a, const RulePoint& b) {
                     if (a.avg_size != b.avg_size) return a.avg_size < b.avg_size;
                     return a.precision > b.precision;
                   });
  return frontier;
}

inline bool dominated_or_equal(const RulePoint& p, const RulePoint& q) {
  return q.precision >= p.precision && q.avg_size <= p.avg_size;
}

}  // namespace shortlist
