#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace shortlist {

/// An approval election: m candidates (indices 0..m-1) and an ordered list
/// of ballots, each a set of approved candidate indices.
struct Election {
  int num_candidates = 0;
  std::vector<std::vector<int>> ballots;  // each sorted ascending, no duplicates
  std::vector<std::string> labels;        // optional; empty or one per candidate

  int num_voters() const { return static_cast<int>(ballots.size()); }

  bool approves(int voter, int candidate) const {
    const auto& b = ballots[static_cast<std::size_t>(voter)];
    return std::binary_search(b.begin(), b.end(), candidate);
  }

  std::string label(int candidate) const {
    if (!labels.empty()) return labels[static_cast<std::size_t>(candidate)];
    return "c" + std::to_string(candidate + 1);
  }

  /// Validates ranges, sorts each ballot and drops duplicates (set semantics).
  static Election make(int m, std::vector<std::vector<int>> ballots,
                       std::vector<std::string> labels = {}) {
    if (m < 1) throw std::invalid_argument("election needs at least one candidate");
    if (ballots.empty()) throw std::invalid_argument("election needs at least one ballot");
    if (!labels.empty() && static_cast<int>(labels.size()) != m)
      throw std::invalid_argument("label count does not match candidate count");
    for (auto& b : ballots) {
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      if (!b.empty() && (b.front() < 0 || b.back() >= m))
        throw std::invalid_argument("ballot references candidate outside 0..m-1");
    }
    return Election{m, std::move(ballots), std::move(labels)};
  }
};

using ScoreVector = std::vector<int>;

/// scores[j] = number of ballots containing candidate j.
inline ScoreVector approval_scores(const Election& e) {
  ScoreVector scores(static_cast<std::size_t>(e.num_candidates), 0);
  for (const auto& ballot : e.ballots)
    for (int c : ballot) ++scores[static_cast<std::size_t>(c)];
  return scores;
}

/// true iff all candidates have the same approval score.
inline bool is_degenerate(const ScoreVector& s) {
  return std::all_of(s.begin(), s.end(), [&](int x) { return x == s.front(); });
}

/// Canonical enumeration c_1..c_m: descending score, ascending original index
/// inside equal scores. Every rule consumes this; the tie order is
/// deterministic but never observable in rule outputs (rules are
/// non-tiebreaking).
struct SortedScores {
  std::vector<int> order;   // candidate indices, canonical order
  std::vector<int> sorted;  // scores in that order, non-increasing

  int count() const { return static_cast<int>(sorted.size()); }
  int max_score() const { return sorted.front(); }
  int total() const { return std::accumulate(sorted.begin(), sorted.end(), 0); }
  bool degenerate() const { return sorted.front() == sorted.back(); }
};

inline SortedScores sort_scores(const ScoreVector& scores) {
  SortedScores ss;
  ss.order.resize(scores.size());
  std::iota(ss.order.begin(), ss.order.end(), 0);
  std::stable_sort(ss.order.begin(), ss.order.end(), [&](int a, int b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  ss.sorted.reserve(scores.size());
  for (int c : ss.order) ss.sorted.push_back(scores[static_cast<std::size_t>(c)]);
  return ss;
}

inline SortedScores sorted_scores_of(const Election& e) {
  return sort_scores(approval_scores(e));
}

/// A prefix of the canonical enumeration. `members` holds the original
/// candidate indices, ascending.
struct WinnerSet {
  int cut = 0;
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
  bool empty() const { return members.empty(); }
  bool contains(int c) const {
    return std::binary_search(members.begin(), members.end(), c);
  }
  friend bool operator==(const WinnerSet& a, const WinnerSet& b) {
    return a.members == b.members;
  }
};

inline WinnerSet winner_set_for_cut(const SortedScores& ss, int cut) {
  WinnerSet w;
  w.cut = cut;
  w.members.assign(ss.order.begin(), ss.order.begin() + cut);
  std::sort(w.members.begin(), w.members.end());
  return w;
}

/// All candidates whose score is at least `min_score` (a full tie group,
/// so the resulting set is non-tiebreaking by construction).
inline WinnerSet prefix_with_score_at_least(const SortedScores& ss, int min_score) {
  int cut = 0;
  while (cut < ss.count() && ss.sorted[static_cast<std::size_t>(cut)] >= min_score) ++cut;
  return winner_set_for_cut(ss, cut);
}

/// Cuts k with no tie split at the boundary: 0, m, and every interior k
/// with sorted[k-1] != sorted[k]. Ascending.
inline std::vector<int> feasible_cuts(const SortedScores& ss) {
  std::vector<int> cuts{0};
  const int m = ss.count();
  for (int k = 1; k < m; ++k)
    if (ss.sorted[static_cast<std::size_t>(k - 1)] != ss.sorted[static_cast<std::size_t>(k)])
      cuts.push_back(k);
  cuts.push_back(m);
  return cuts;
}

/// The at most m+1 sets any shortlisting rule may output, ascending by size.
inline std::vector<WinnerSet> feasible_winner_sets(const SortedScores& ss) {
  std::vector<WinnerSet> sets;
  for (int k : feasible_cuts(ss)) sets.push_back(winner_set_for_cut(ss, k));
  return sets;
}

}  // namespace shortlist
