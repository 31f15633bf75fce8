#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shortlist/core.hpp"

namespace shortlist {

enum class LinkageDistance { Single, Average, Max };

/// Agglomerative linkage clustering over the score multiset: distance
/// measure plus one of two stopping criteria (merge down to `beta`
/// clusters, or merge until every pairwise distance is >= `min_distance`).
struct LinkageConfig {
  LinkageDistance distance = LinkageDistance::Single;
  enum class Stop { ClusterCount, MinDistance };
  Stop stop = Stop::ClusterCount;
  int beta = 2;          // Stop::ClusterCount
  int min_distance = 1;  // Stop::MinDistance

  void check() const {
    if (stop == Stop::ClusterCount && beta < 1)
      throw std::invalid_argument("cluster count beta must be >= 1");
    if (stop == Stop::MinDistance && min_distance < 1)
      throw std::invalid_argument("min-distance alpha must be >= 1");
  }

  std::string to_string() const {
    std::string d = distance == LinkageDistance::Single    ? "single"
                    : distance == LinkageDistance::Average ? "average"
                                                           : "max";
    if (stop == Stop::ClusterCount)
      return "cluster:dist=" + d + ",beta=" + std::to_string(beta);
    return "cluster:dist=" + d + ",mindist=" + std::to_string(min_distance);
  }

  /// Accepts "cluster:dist=single,beta=2", "dist=single,mindist=3", etc.
  static LinkageConfig parse(std::string_view text) {
    std::string s;
    for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s.rfind("cluster:", 0) == 0) s = s.substr(8);
    LinkageConfig cfg;
    bool have_stop = false;
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t comma = s.find(',', start);
      std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                   : comma - start);
      if (!tok.empty()) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("expected key=value in cluster config: " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "dist") {
          if (val == "single") cfg.distance = LinkageDistance::Single;
          else if (val == "average") cfg.distance = LinkageDistance::Average;
          else if (val == "max") cfg.distance = LinkageDistance::Max;
          else throw std::invalid_argument("unknown linkage distance: " + val);
        } else if (key == "beta") {
          cfg.stop = Stop::ClusterCount;
          cfg.beta = std::stoi(val);
          have_stop = true;
        } else if (key == "mindist") {
          cfg.stop = Stop::MinDistance;
          cfg.min_distance = std::stoi(val);
          have_stop = true;
        } else {
          throw std::invalid_argument("unknown cluster parameter: " + key);
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!have_stop)
      throw std::invalid_argument("cluster config needs beta=... or mindist=...");
    cfg.check();
    return cfg;
  }

  bool operator==(const LinkageConfig& o) const {
    if (distance != o.distance || stop != o.stop) return false;
    return stop == Stop::ClusterCount ? beta == o.beta : min_distance == o.min_distance;
  }
};

/// Contiguous run [begin, end) of sorted positions, annotated with its score
/// interval. Clusters stay intervals of the sorted sequence throughout.
struct Cluster {
  int begin = 0;
  int end = 0;
  int high = 0;  // score at begin
  int low = 0;   // score at end-1
};

struct Partition {
  std::vector<Cluster> clusters;  // descending score order

  /// Original candidate indices per cluster, each ascending.
  std::vector<std::vector<int>> candidate_sets(const SortedScores& ss) const {
    std::vector<std::vector<int>> out;
    for (const Cluster& cl : clusters) {
      std::vector<int> set(ss.order.begin() + cl.begin, ss.order.begin() + cl.end);
      std::sort(set.begin(), set.end());
      out.push_back(std::move(set));
    }
    return out;
  }
};

namespace detail {

inline double linkage_distance(const SortedScores& ss, const Cluster& a,
                               const Cluster& b, LinkageDistance d) {
  // a above b in sorted order: every score in a >= every score in b
  switch (d) {
    case LinkageDistance::Single:
      return ss.sorted[static_cast<std::size_t>(a.end - 1)] -
             ss.sorted[static_cast<std::size_t>(b.begin)];
    case LinkageDistance::Max:
      return ss.sorted[static_cast<std::size_t>(a.begin)] -
             ss.sorted[static_cast<std::size_t>(b.end - 1)];
    case LinkageDistance::Average: {
      double sa = 0, sb = 0;
      for (int i = a.begin; i < a.end; ++i) sa += ss.sorted[static_cast<std::size_t>(i)];
      for (int i = b.begin; i < b.end; ++i) sb += ss.sorted[static_cast<std::size_t>(i)];
      return sa / (a.end - a.begin) - sb / (b.end - b.begin);
    }
  }
  return 0;
}

}  // namespace detail

/// Bottom-up merging from singletons. Only adjacent cluster pairs can attain
/// the minimum distance for interval clusters on a line, so merging scans
/// adjacent pairs; ties go to the pair containing the smallest score, then
/// to the pair whose union has the smaller maximum score, then to the
/// bottom-most pair.
inline Partition linkage_cluster(const SortedScores& ss, const LinkageConfig& cfg) {
  cfg.check();
  const int m = ss.count();
  std::vector<Cluster> cl;
  cl.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    cl.push_back(Cluster{i, i + 1, ss.sorted[static_cast<std::size_t>(i)],
                         ss.sorted[static_cast<std::size_t>(i)]});

  auto pick_merge = [&]() -> int {
    int best = -1;
    double best_d = 0;
    for (int i = 0; i + 1 < static_cast<int>(cl.size()); ++i) {
      const double d = detail::linkage_distance(ss, cl[static_cast<std::size_t>(i)],
                                                cl[static_cast<std::size_t>(i + 1)],
                                                cfg.distance);
      if (best < 0 || d < best_d) {
        best = i;
        best_d = d;
      } else if (d == best_d) {
        // union min score: low of the lower cluster; union max: high of upper
        const auto& cand_lo = cl[static_cast<std::size_t>(i + 1)];
        const auto& best_lo = cl[static_cast<std::size_t>(best + 1)];
        const auto& cand_hi = cl[static_cast<std::size_t>(i)];
        const auto& best_hi = cl[static_cast<std::size_t>(best)];
        if (cand_lo.low < best_lo.low ||
            (cand_lo.low == best_lo.low && cand_hi.high < best_hi.high) ||
            (cand_lo.low == best_lo.low && cand_hi.high == best_hi.high && i > best))
          best = i;
      }
    }
    return best;
  };

  auto merge_at = [&](int i) {
    cl[static_cast<std::size_t>(i)].end = cl[static_cast<std::size_t>(i + 1)].end;
    cl[static_cast<std::size_t>(i)].low = cl[static_cast<std::size_t>(i + 1)].low;
    cl.erase(cl.begin() + i + 1);
  };

  if (cfg.stop == LinkageConfig::Stop::ClusterCount) {
    while (static_cast<int>(cl.size()) > cfg.beta) merge_at(pick_merge());
  } else {
    while (cl.size() > 1) {
      const int i = pick_merge();
      const double d = detail::linkage_distance(ss, cl[static_cast<std::size_t>(i)],
                                                cl[static_cast<std::size_t>(i + 1)],
                                                cfg.distance);
      if (d >= cfg.min_distance) break;
      merge_at(i);
    }
  }
  return Partition{std::move(cl)};
}

/// Candidates whose scores lie in the cluster containing the maximum score.
/// If that cluster's lower boundary splits a tie (possible for average/max
/// linkage, and for cluster-count stopping on tied scores), the winning
/// cluster absorbs the whole tie group so the result is non-tiebreaking.
inline WinnerSet cluster_shortlist(const SortedScores& ss, const LinkageConfig& cfg) {
  const Partition part = linkage_cluster(ss, cfg);
  int cut = part.clusters.front().end;
  while (cut < ss.count() && ss.sorted[static_cast<std::size_t>(cut - 1)] ==
                                 ss.sorted[static_cast<std::size_t>(cut)])
    ++cut;
  return winner_set_for_cut(ss, cut);
}

}  // namespace shortlist
