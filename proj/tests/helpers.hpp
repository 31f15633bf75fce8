#pragma once

#include <vector>

#include "shortlist/core.hpp"

namespace testutil {

using shortlist::Election;

inline Election mk(int m, std::vector<std::vector<int>> ballots) {
  return Election::make(m, std::move(ballots));
}

/// Staircase election realizing a score vector: voter i approves candidate c
/// iff i < scores[c]. Voter count is max(scores) unless given.
inline Election from_scores(const std::vector<int>& scores, int n = -1) {
  int maxsc = 0;
  for (int s : scores) maxsc = std::max(maxsc, s);
  if (n < 0) n = std::max(maxsc, 1);
  std::vector<std::vector<int>> ballots(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < static_cast<int>(scores.size()); ++c)
      if (v < scores[static_cast<std::size_t>(c)])
        ballots[static_cast<std::size_t>(v)].push_back(c);
  return Election::make(static_cast<int>(scores.size()), std::move(ballots));
}

inline std::vector<int> members(const shortlist::WinnerSet& w) { return w.members; }

}  // namespace testutil
