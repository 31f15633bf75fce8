#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "shortlist/axioms.hpp"
#include "shortlist/dataio.hpp"
#include "shortlist/rules.hpp"

using namespace shortlist;
using testutil::mk;

namespace {

BallotFile parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_ballot_stream(in, "test");
}

}  // namespace

TEST_CASE("ballot file parsing") {
  const BallotFile bf = parse_text(
      "# header comment\n"
      "candidate: Alice\n"
      "candidate: Bob\n"
      "winner: Bob\n"
      "\n"
      "ballot: Alice; Bob\n"
      "ballot: Bob\n"
      "ballot:\n");
  CHECK(bf.election.num_candidates == 2);
  CHECK(bf.election.num_voters() == 3);
  CHECK(bf.election.labels == std::vector<std::string>{"Alice", "Bob"});
  CHECK(approval_scores(bf.election) == ScoreVector{1, 2});
  REQUIRE(bf.winner.has_value());
  CHECK(*bf.winner == 1);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH(parse_text("candidate: A\nballot: B\n"),
                    Catch::Matchers::ContainsSubstring("test:2"));
  CHECK_THROWS_WITH(parse_text("candidate: A\ncandidate: A\nballot: A\n"),
                    Catch::Matchers::ContainsSubstring("declared twice"));
  CHECK_THROWS_WITH(parse_text("candidate: A\nwinner: Z\nballot: A\n"),
                    Catch::Matchers::ContainsSubstring("not a declared candidate"));
  CHECK_THROWS_WITH(parse_text("candidate: A\nnonsense: A\nballot: A\n"),
                    Catch::Matchers::ContainsSubstring("unknown directive"));
  CHECK_THROWS_AS(parse_text("candidate: A\n"), ParseError);
  CHECK_THROWS_AS(parse_ballot_file("/nonexistent/path.ballots"), ParseError);
}

TEST_CASE("missing winner directive loads without a true winner") {
  const BallotFile bf = parse_text("candidate: A\nballot: A\n");
  CHECK_FALSE(bf.winner.has_value());
}

TEST_CASE("write then parse reproduces the election") {
  Election e = mk(3, {{0, 1}, {2}, {}, {0}});
  e.labels = {"North", "South", "East"};
  std::ostringstream out;
  write_ballot_stream(out, e, 1);
  const BallotFile bf = parse_text(out.str());
  CHECK(bf.election.num_candidates == 3);
  CHECK(bf.election.ballots == e.ballots);
  CHECK(bf.election.labels == e.labels);
  CHECK(bf.winner == std::optional<int>(1));
}

TEST_CASE("round-trip across random elections") {
  RandomStream rng(3939);
  for (int t = 0; t < 200; ++t) {
    const Election e = random_election(rng);
    std::ostringstream out;
    write_ballot_stream(out, e);
    const BallotFile bf = parse_text(out.str());
    CHECK(bf.election.ballots == e.ballots);
    CHECK(bf.election.num_candidates == e.num_candidates);
  }
}

TEST_CASE("the running example encodes and parses to its score profile") {
  const Election e = testutil::from_scores({10, 10, 9, 8, 6, 3, 3, 0});
  std::ostringstream out;
  write_ballot_stream(out, e);
  const BallotFile bf = parse_text(out.str());
  CHECK(approval_scores(bf.election) == ScoreVector{10, 10, 9, 8, 6, 3, 3, 0});
}

TEST_CASE("elimination rule hand example") {
  // ballots {a},{a},{b}: fractional scores a=2, b=1; b is eliminated
  const Election e = mk(2, {{0}, {0}, {1}});
  CHECK(e_pluribus_hugo(e, 1) == std::vector<int>{0});
  CHECK(e_pluribus_hugo(e, 2) == std::vector<int>{0, 1});  // target >= m: identity
  CHECK(e_pluribus_hugo(e, 5) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(e_pluribus_hugo(e, 0), std::invalid_argument);
}

TEST_CASE("elimination rule is not a shortlisting rule") {
  // two candidates approved together by three voters outscore a singleton
  // candidate, yet fractional scores eliminate one of them: the survivor set
  // breaks both efficiency and non-tiebreaking
  const Election e = mk(3, {{0}, {0}, {1, 2}, {1, 2}, {1, 2}});
  const ScoreVector sc = approval_scores(e);
  REQUIRE(sc == ScoreVector{2, 3, 3});
  const auto kept = e_pluribus_hugo(e, 2);
  REQUIRE(kept.size() == 2);
  // candidate 2 (score 3) eliminated while candidate 0 (score 2) stays
  CHECK(kept == std::vector<int>{0, 1});
}

TEST_CASE("elimination is anonymous") {
  RandomStream rng(61);
  for (int t = 0; t < 300; ++t) {
    Election e = random_election(rng);
    const int target = rng.uniform_int(1, e.num_candidates);
    const auto before = e_pluribus_hugo(e, target);
    for (int i = e.num_voters() - 1; i > 0; --i)
      std::swap(e.ballots[static_cast<std::size_t>(i)],
                e.ballots[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    CHECK(e_pluribus_hugo(e, target) == before);
  }
}

TEST_CASE("fractional scores sum to at most the live ballot count") {
  RandomStream rng(62);
  for (int t = 0; t < 300; ++t) {
    const Election e = random_election(rng);
    std::vector<int> remaining;
    for (int c = 0; c < e.num_candidates; ++c)
      if (rng.bernoulli(0.7)) remaining.push_back(c);
    if (remaining.empty()) remaining.push_back(0);
    const auto fsc = fractional_scores(e, remaining);
    double total = 0;
    for (double f : fsc) total += f;
    long live = 0;
    for (const auto& b : e.ballots) {
      bool hit = false;
      for (int c : b)
        hit = hit || std::find(remaining.begin(), remaining.end(), c) != remaining.end();
      live += hit;
    }
    CHECK(total <= static_cast<double>(live) + 1e-9);
  }
}

TEST_CASE("winner positions resolve ties to the best position") {
  const Election e = testutil::from_scores({5, 5, 3, 3, 1});
  CHECK(winner_position(e, 0) == 1);
  CHECK(winner_position(e, 1) == 1);
  CHECK(winner_position(e, 2) == 3);
  CHECK(winner_position(e, 4) == 5);
}

TEST_CASE("histogram over a fixture directory") {
  const std::string dir = std::string(SHORTLIST_DATA_DIR) + "/hugo_fixture";
  const HugoDataset data = load_hugo_dataset(dir);
  REQUIRE(data.elections.size() == 6);
  CHECK(data.warnings.empty());
  const auto hist = winner_position_histogram(data.elections);
  CHECK(hist.at(1) == 2);
  CHECK(hist.at(2) == 1);
  CHECK(hist.at(3) == 2);
  CHECK(hist.at(7) == 1);
  // year/category tags come from the directory layout
  bool found = false;
  for (const auto& h : data.elections)
    found = found || (h.year == "2018" && h.category == "best-novel");
  CHECK(found);
}

TEST_CASE("empty histogram for no input") {
  CHECK(winner_position_histogram({}).empty());
}

TEST_CASE("loader reports missing directories and collects bad files") {
  CHECK_THROWS_AS(load_hugo_dataset("/nonexistent"), ParseError);
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "shortlist_badset";
  fs::create_directories(tmp / "2020");
  {
    std::ofstream bad(tmp / "2020" / "broken.ballots");
    bad << "candidate: A\nballot: Z\n";
  }
  CHECK_THROWS_WITH(load_hugo_dataset(tmp.string()),
                    Catch::Matchers::ContainsSubstring("broken.ballots:2"));
  fs::remove_all(tmp);
}

TEST_CASE("elimination keeps a top-scores subset on the fixture") {
  const std::string dir = std::string(SHORTLIST_DATA_DIR) + "/hugo_fixture";
  const HugoDataset data = load_hugo_dataset(dir);
  for (const auto& h : data.elections) {
    const auto kept = e_pluribus_hugo(h.election, 6);
    CHECK(static_cast<int>(kept.size()) == std::min(6, h.election.num_candidates));
    // every survivor is within the top 7 by approval score on this fixture
    for (int c : kept) CHECK(winner_position(h.election, c) <= 7);
  }
}

TEST_CASE("loader warns when a winner sits below the top seven") {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "shortlist_deepwinner";
  fs::create_directories(tmp / "2021");
  {
    std::ofstream f(tmp / "2021" / "deep.ballots");
    f << "candidate: A\ncandidate: B\ncandidate: C\ncandidate: D\n"
         "candidate: E\ncandidate: F\ncandidate: G\ncandidate: H\n"
         "winner: H\n";
    // descending scores 8..1: H is last (position 8)
    for (int v = 0; v < 8; ++v) {
      f << "ballot:";
      const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
      bool first = true;
      for (int c = 0; c < 8 - v; ++c) {
        f << (first ? " " : "; ") << names[c];
        first = false;
      }
      f << "\n";
    }
  }
  const HugoDataset data = load_hugo_dataset(tmp.string());
  REQUIRE(data.elections.size() == 1);
  bool warned = false;
  for (const auto& w : data.warnings)
    warned = warned || w.find("beyond the top seven") != std::string::npos;
  CHECK(warned);
  fs::remove_all(tmp);
}
