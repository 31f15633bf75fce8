#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "shortlist/axioms.hpp"
#include "shortlist/clustering.hpp"
#include "shortlist/rules.hpp"

using namespace shortlist;

namespace {

LinkageConfig cfg(LinkageDistance d, int beta) {
  LinkageConfig c;
  c.distance = d;
  c.stop = LinkageConfig::Stop::ClusterCount;
  c.beta = beta;
  return c;
}

LinkageConfig cfg_mindist(LinkageDistance d, int alpha) {
  LinkageConfig c;
  c.distance = d;
  c.stop = LinkageConfig::Stop::MinDistance;
  c.min_distance = alpha;
  return c;
}

}  // namespace

TEST_CASE("single linkage with two clusters on the running example") {
  const SortedScores ss = sort_scores({10, 10, 9, 8, 6, 3, 3, 0});
  const Partition p = linkage_cluster(ss, cfg(LinkageDistance::Single, 2));
  REQUIRE(p.clusters.size() == 2);
  CHECK(p.clusters[0].begin == 0);
  CHECK(p.clusters[0].end == 5);  // scores 10..6
  CHECK(cluster_shortlist(ss, cfg(LinkageDistance::Single, 2)).members ==
        std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("single linkage with min-distance stopping on the running example") {
  const SortedScores ss = sort_scores({10, 10, 9, 8, 6, 3, 3, 0});
  CHECK(cluster_shortlist(ss, cfg_mindist(LinkageDistance::Single, 2)).members ==
        std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("everything merges into one cluster") {
  const SortedScores ss = sort_scores({5, 5, 5});
  for (auto d : {LinkageDistance::Single, LinkageDistance::Average, LinkageDistance::Max}) {
    const Partition p = linkage_cluster(ss, cfg(d, 1));
    REQUIRE(p.clusters.size() == 1);
    CHECK(p.clusters[0].end == 3);
  }
}

TEST_CASE("beta larger than m keeps all singletons") {
  const SortedScores ss = sort_scores({3, 2, 1});
  const Partition p = linkage_cluster(ss, cfg(LinkageDistance::Single, 7));
  CHECK(p.clusters.size() == 3);
}

TEST_CASE("tied scores never split across the winning cluster") {
  // cluster-count stopping can cut inside the tie group; the shortlist
  // absorbs it
  const SortedScores ss = sort_scores({5, 5, 5});
  const WinnerSet w = cluster_shortlist(ss, cfg(LinkageDistance::Single, 2));
  CHECK(w.members == std::vector<int>{0, 1, 2});
}

TEST_CASE("interval structure is preserved after every merge") {
  RandomStream rng(2424);
  for (int t = 0; t < 1500; ++t) {
    const Election e = random_election(rng);
    const SortedScores ss = sorted_scores_of(e);
    for (auto d : {LinkageDistance::Single, LinkageDistance::Average, LinkageDistance::Max}) {
      const int beta = rng.uniform_int(1, ss.count());
      const Partition p = linkage_cluster(ss, cfg(d, beta));
      REQUIRE(static_cast<int>(p.clusters.size()) <= std::max(beta, 1));
      int pos = 0;
      for (const Cluster& cl : p.clusters) {
        CHECK(cl.begin == pos);
        CHECK(cl.end > cl.begin);
        CHECK(cl.high == ss.sorted[static_cast<std::size_t>(cl.begin)]);
        CHECK(cl.low == ss.sorted[static_cast<std::size_t>(cl.end - 1)]);
        pos = cl.end;
      }
      CHECK(pos == ss.count());
    }
  }
}

TEST_CASE("single linkage with beta=2 equals the largest-gap rule") {
  RandomStream rng(87);
  const LinkageConfig c = cfg(LinkageDistance::Single, 2);
  for (int t = 0; t < 4000; ++t) {
    const Election e = random_election(rng);
    const SortedScores ss = sorted_scores_of(e);
    CHECK(cluster_shortlist(ss, c) == largest_gap(ss));
  }
}

TEST_CASE("single linkage with min-distance k equals the first-k-gap rule") {
  RandomStream rng(88);
  for (int t = 0; t < 4000; ++t) {
    const Election e = random_election(rng);
    const SortedScores ss = sorted_scores_of(e);
    const int k = rng.uniform_int(1, 8);
    CHECK(cluster_shortlist(ss, cfg_mindist(LinkageDistance::Single, k)) ==
          first_k_gap(ss, k));
  }
}

TEST_CASE("merging reduces the cluster count by one per step") {
  // with cluster-count stopping the final count is exactly min(beta, m)
  RandomStream rng(89);
  for (int t = 0; t < 500; ++t) {
    const Election e = random_election(rng);
    const SortedScores ss = sorted_scores_of(e);
    const int beta = rng.uniform_int(1, ss.count() + 2);
    const Partition p = linkage_cluster(ss, cfg(LinkageDistance::Average, beta));
    CHECK(static_cast<int>(p.clusters.size()) == std::min(beta, ss.count()));
  }
}

TEST_CASE("linkage config text round-trips") {
  for (const char* text : {"cluster:dist=single,beta=2", "cluster:dist=single,mindist=3",
                           "cluster:dist=average,beta=4", "cluster:dist=max,mindist=1"}) {
    const LinkageConfig c = LinkageConfig::parse(text);
    CHECK(c.to_string() == text);
  }
  CHECK(LinkageConfig::parse("dist=single,beta=2") ==
        LinkageConfig::parse("cluster:dist=single,beta=2"));
  CHECK_THROWS_AS(LinkageConfig::parse("dist=fancy,beta=2"), std::invalid_argument);
  CHECK_THROWS_AS(LinkageConfig::parse("dist=single"), std::invalid_argument);
  CHECK_THROWS_AS(LinkageConfig::parse("dist=single,beta=0"), std::invalid_argument);
}
