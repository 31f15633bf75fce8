#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "shortlist/axioms.hpp"
#include "shortlist/core.hpp"
#include "shortlist/rng.hpp"

using namespace shortlist;
using testutil::from_scores;
using testutil::mk;

TEST_CASE("approval scores count ballot membership") {
  // the running example: 10 ballots realizing (10,10,9,8,6,3,3,0)
  const Election e = from_scores({10, 10, 9, 8, 6, 3, 3, 0});
  CHECK(approval_scores(e) == ScoreVector{10, 10, 9, 8, 6, 3, 3, 0});

  const Election empty = mk(3, {{}, {}, {}});
  CHECK(approval_scores(empty) == ScoreVector{0, 0, 0});

  const Election full = mk(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  CHECK(approval_scores(full) == ScoreVector{4, 4});
}

TEST_CASE("election validation") {
  CHECK_THROWS_AS(Election::make(0, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(Election::make(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Election::make(2, {{0, 2}}), std::invalid_argument);
  // duplicates collapse (set semantics)
  const Election e = Election::make(2, {{1, 0, 1}});
  CHECK(e.ballots[0] == std::vector<int>{0, 1});
}

TEST_CASE("sort_scores canonical order") {
  const SortedScores ss = sort_scores({3, 5, 5, 1});
  CHECK(ss.order == std::vector<int>{1, 2, 0, 3});
  CHECK(ss.sorted == std::vector<int>{5, 5, 3, 1});

  const SortedScores id = sort_scores({10, 10, 9, 8, 6, 3, 3, 0});
  CHECK(id.order == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});

  const SortedScores tied = sort_scores({0, 0});
  CHECK(tied.order == std::vector<int>{0, 1});
}

TEST_CASE("degenerate profiles") {
  CHECK(is_degenerate({5, 5, 5}));
  CHECK_FALSE(is_degenerate({10, 10, 9, 8, 6, 3, 3, 0}));
  CHECK(is_degenerate({7}));
}

TEST_CASE("feasible winner sets") {
  const SortedScores ex1 = sort_scores({10, 10, 9, 8, 6, 3, 3, 0});
  std::vector<int> cuts = feasible_cuts(ex1);
  CHECK(cuts == std::vector<int>{0, 2, 3, 4, 5, 7, 8});

  CHECK(feasible_cuts(sort_scores({3, 2, 1})) == std::vector<int>{0, 1, 2, 3});
  CHECK(feasible_cuts(sort_scores({5, 5, 5, 5})) == std::vector<int>{0, 4});

  const auto sets = feasible_winner_sets(ex1);
  REQUIRE(sets.size() == 7);
  CHECK(sets[1].members == std::vector<int>{0, 1});
  CHECK(sets.back().members.size() == 8);
}

TEST_CASE("feasible set count is between 2 and m+1 and contains 0 and m") {
  RandomStream rng(20240601);
  for (int t = 0; t < 2000; ++t) {
    const int m = rng.uniform_int(1, 12);
    const int n = rng.uniform_int(1, 30);
    ScoreVector sc;
    for (int c = 0; c < m; ++c) sc.push_back(rng.uniform_int(0, n));
    const auto cuts = feasible_cuts(sort_scores(sc));
    REQUIRE(cuts.size() >= (m == 1 ? 2u : 2u));
    REQUIRE(cuts.size() <= static_cast<std::size_t>(m) + 1);
    CHECK(cuts.front() == 0);
    CHECK(cuts.back() == m);
  }
}

TEST_CASE("scores are invariant under ballot permutation") {
  RandomStream rng(7);
  for (int t = 0; t < 500; ++t) {
    Election e = random_election(rng);
    ScoreVector before = approval_scores(e);
    for (int i = e.num_voters() - 1; i > 0; --i)
      std::swap(e.ballots[static_cast<std::size_t>(i)],
                e.ballots[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    CHECK(approval_scores(e) == before);
  }
}
