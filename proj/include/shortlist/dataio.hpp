#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shortlist/core.hpp"
#include "shortlist/synthetic.hpp"

namespace shortlist {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed ballot file: election with candidate labels, plus the optional
/// declared true winner.
struct BallotFile {
  std::string path;
  Election election;
  std::optional<int> winner;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline void check_name(const std::string& name, const std::string& where) {
  if (name.empty()) throw ParseError(where + ": empty candidate name");
  if (name.find(';') != std::string::npos)
    throw ParseError(where + ": candidate name may not contain ';'");
}

}  // namespace detail

/// Line-oriented ballot format:
///   # comment
///   candidate: <name>
///   winner: <name>            (optional)
///   ballot: <name>; <name>; ...
/// Names are trimmed and may not contain ';' or newlines. Ballots may only
/// reference declared candidates; an empty "ballot:" line is an abstaining
/// voter.
inline BallotFile parse_ballot_stream(std::istream& in, const std::string& path) {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<std::vector<int>> ballots;
  std::optional<std::string> winner_name;
  std::optional<int> winner_line;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    const std::string text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
      throw ParseError(where + ": expected 'candidate:', 'winner:' or 'ballot:'");
    const std::string key = detail::trim(text.substr(0, colon));
    const std::string rest = detail::trim(text.substr(colon + 1));
    if (key == "candidate") {
      detail::check_name(rest, where);
      if (index.count(rest))
        throw ParseError(where + ": candidate '" + rest + "' declared twice");
      index[rest] = static_cast<int>(names.size());
      names.push_back(rest);
    } else if (key == "winner") {
      detail::check_name(rest, where);
      winner_name = rest;
      winner_line = lineno;
    } else if (key == "ballot") {
      std::vector<int> ballot;
      if (!rest.empty()) {
        std::istringstream parts(rest);
        std::string part;
        while (std::getline(parts, part, ';')) {
          const std::string name = detail::trim(part);
          detail::check_name(name, where);
          auto it = index.find(name);
          if (it == index.end())
            throw ParseError(where + ": ballot references undeclared candidate '" + name + "'");
          ballot.push_back(it->second);
        }
      }
      ballots.push_back(std::move(ballot));
    } else {
      throw ParseError(where + ": unknown directive '" + key + "'");
    }
  }
  if (names.empty()) throw ParseError(path + ": no candidates declared");
  if (ballots.empty()) throw ParseError(path + ": no ballots");

  BallotFile out;
  out.path = path;
  out.election = Election::make(static_cast<int>(names.size()), std::move(ballots), names);
  if (winner_name) {
    auto it = index.find(*winner_name);
    if (it == index.end())
      throw ParseError(path + ":" + std::to_string(*winner_line) +
                       ": winner '" + *winner_name + "' is not a declared candidate");
    out.winner = it->second;
  }
  return out;
}

inline BallotFile parse_ballot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return parse_ballot_stream(in, path);
}

inline void write_ballot_stream(std::ostream& out, const Election& e,
                                std::optional<int> winner = std::nullopt) {
  for (int c = 0; c < e.num_candidates; ++c) out << "candidate: " << e.label(c) << '\n';
  if (winner) out << "winner: " << e.label(*winner) << '\n';
  for (const auto& ballot : e.ballots) {
    out << "ballot:";
    for (std::size_t i = 0; i < ballot.size(); ++i)
      out << (i ? "; " : " ") << e.label(ballot[i]);
    out << '\n';
  }
}

inline void write_ballot_file(const std::string& path, const Election& e,
                              std::optional<int> winner = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  write_ballot_stream(out, e, winner);
}

// --- the awards data set ------------------------------------------------------

/// One shortlisting election from the awards data: the nomination-stage
/// ballots plus the candidate that won the final stage.
struct HugoElection {
  Election election;
  int actual_winner = -1;  // -1 when the file carries no winner directive
  std::string year;
  std::string category;
};

struct HugoDataset {
  std::vector<HugoElection> elections;
  std::vector<std::string> warnings;
};

/// 1-based sorted position of the actual winner; candidates with equal
/// scores share the best position any of them attains (1 + number of
/// strictly higher scores).
inline int winner_position(const Election& e, int winner) {
  const ScoreVector sc = approval_scores(e);
  int better = 0;
  for (int c = 0; c < e.num_candidates; ++c)
    if (sc[static_cast<std::size_t>(c)] > sc[static_cast<std::size_t>(winner)]) ++better;
  return better + 1;
}

/// Loads every *.ballots file under root (layout: <year>/<category>.ballots).
/// Unparsable files are reported together; files without a winner directive
/// load with a warning and are excluded from precision metrics.
inline HugoDataset load_hugo_dataset(const std::string& root) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) throw ParseError(root + ": no such directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".ballots")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  HugoDataset out;
  std::vector<std::string> errors;
  for (const auto& path : files) {
    try {
      BallotFile bf = parse_ballot_file(path.string());
      HugoElection h;
      h.election = std::move(bf.election);
      h.actual_winner = bf.winner.value_or(-1);
      h.category = path.stem().string();
      h.year = path.parent_path().filename().string();
      if (!bf.winner)
        out.warnings.push_back(path.string() +
                               ": no winner directive; excluded from precision metrics");
      out.elections.push_back(std::move(h));
    } catch (const ParseError& err) {
      errors.push_back(err.what());
    }
  }
  // winners are expected near the top of the approval ranking; report (but
  // keep) any election where that does not hold
  for (const auto& h : out.elections) {
    if (h.actual_winner < 0) continue;
    const int pos = winner_position(h.election, h.actual_winner);
    if (pos > 7)
      out.warnings.push_back(h.year + "/" + h.category + ": winner at sorted position " +
                             std::to_string(pos) + ", beyond the top seven");
  }
  if (!errors.empty()) {
    std::string msg = "failed to parse " + std::to_string(errors.size()) + " file(s):";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ParseError(msg);
  }
  return out;
}

inline std::vector<InstanceRecord> to_instances(const HugoDataset& data) {
  std::vector<InstanceRecord> out;
  for (const auto& h : data.elections) {
    InstanceRecord rec;
    rec.election = h.election;
    rec.true_winner = h.actual_winner;
    rec.model = "hugo:" + h.year + "/" + h.category;
    out.push_back(std::move(rec));
  }
  return out;
}

// --- elimination rule used by the awards' nomination stage --------------------

/// Fractional approval scores over the remaining candidates: each ballot
/// contributes 1/|ballot ∩ remaining| to each remaining candidate it
/// approves (nothing when the intersection is empty).
inline std::vector<double> fractional_scores(const Election& e,
                                             const std::vector<int>& remaining) {
  std::vector<bool> active(static_cast<std::size_t>(e.num_candidates), false);
  for (int c : remaining) active[static_cast<std::size_t>(c)] = true;
  std::vector<double> fsc(static_cast<std::size_t>(e.num_candidates), 0.0);
  for (const auto& ballot : e.ballots) {
    int live = 0;
    for (int c : ballot)
      if (active[static_cast<std::size_t>(c)]) ++live;
    if (live == 0) continue;
    const double share = 1.0 / live;
    for (int c : ballot)
      if (active[static_cast<std::size_t>(c)]) fsc[static_cast<std::size_t>(c)] += share;
  }
  return fsc;
}

namespace detail {

inline __int128 gcd128(__int128 a, __int128 b) {
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Exact fractional-score accumulator: counts of each ballot-share size, so
/// comparisons avoid floating-point ties. share_counts[s] = number of live
/// ballots of size s approving the candidate.
struct FracScore {
  std::vector<long> share_counts;

  void add(int size) {
    if (static_cast<std::size_t>(size) >= share_counts.size())
      share_counts.resize(static_cast<std::size_t>(size) + 1, 0);
    ++share_counts[static_cast<std::size_t>(size)];
  }

  // compares a = sum(count_s / s) exactly via a common denominator
  static int compare(const FracScore& a, const FracScore& b) {
    const std::size_t top = std::max(a.share_counts.size(), b.share_counts.size());
    // lcm(1..top-1); for realistic ballot sizes this stays far below the
    // __int128 range (lcm(1..50) ~ 3e21)
    __int128 lcm = 1;
    for (std::size_t s = 1; s < top; ++s) {
      const __int128 g = gcd128(lcm, static_cast<__int128>(s));
      lcm = lcm / g * static_cast<__int128>(s);
    }
    __int128 na = 0, nb = 0;
    for (std::size_t s = 1; s < a.share_counts.size(); ++s)
      na += static_cast<__int128>(a.share_counts[s]) * (lcm / static_cast<__int128>(s));
    for (std::size_t s = 1; s < b.share_counts.size(); ++s)
      nb += static_cast<__int128>(b.share_counts[s]) * (lcm / static_cast<__int128>(s));
    if (na < nb) return -1;
    if (na > nb) return 1;
    return 0;
  }
};

}  // namespace detail

/// Repeated elimination: each round the two candidates with the lowest
/// fractional scores are paired and the one with the lower approval score is
/// eliminated, until `target` candidates remain. Ties: the pair is chosen by
/// (fractional score, then approval score, then larger index eliminated
/// first); within the pair, equal approval scores eliminate the
/// larger-index candidate. This deterministic tie handling is a stand-in;
/// the source procedure leaves ties unspecified.
inline std::vector<int> e_pluribus_hugo(const Election& e, int target) {
  if (target < 1) throw std::invalid_argument("elimination target must be >= 1");
  std::vector<int> remaining(static_cast<std::size_t>(e.num_candidates));
  std::iota(remaining.begin(), remaining.end(), 0);
  if (target >= e.num_candidates) return remaining;

  const ScoreVector approvals = approval_scores(e);
  std::vector<bool> active(static_cast<std::size_t>(e.num_candidates), true);

  while (static_cast<int>(remaining.size()) > target) {
    // exact fractional scores over the remaining candidates
    std::vector<detail::FracScore> fsc(static_cast<std::size_t>(e.num_candidates));
    for (const auto& ballot : e.ballots) {
      int live = 0;
      for (int c : ballot)
        if (active[static_cast<std::size_t>(c)]) ++live;
      if (live == 0) continue;
      for (int c : ballot)
        if (active[static_cast<std::size_t>(c)]) fsc[static_cast<std::size_t>(c)].add(live);
    }
    auto lower = [&](int a, int b) {
      const int cmp = detail::FracScore::compare(fsc[static_cast<std::size_t>(a)],
                                                 fsc[static_cast<std::size_t>(b)]);
      if (cmp != 0) return cmp < 0;
      if (approvals[static_cast<std::size_t>(a)] != approvals[static_cast<std::size_t>(b)])
        return approvals[static_cast<std::size_t>(a)] < approvals[static_cast<std::size_t>(b)];
      return a > b;
    };
    std::vector<int> order = remaining;
    std::sort(order.begin(), order.end(), lower);
    const int first = order[0], second = order[1];
    int eliminated;
    if (approvals[static_cast<std::size_t>(first)] != approvals[static_cast<std::size_t>(second)])
      eliminated = approvals[static_cast<std::size_t>(first)] <
                           approvals[static_cast<std::size_t>(second)]
                       ? first
                       : second;
    else
      eliminated = std::max(first, second);
    active[static_cast<std::size_t>(eliminated)] = false;
    remaining.erase(std::remove(remaining.begin(), remaining.end(), eliminated),
                    remaining.end());
  }
  return remaining;
}

/// Histogram of winner positions over elections that carry a winner.
inline std::map<int, long> winner_position_histogram(const std::vector<HugoElection>& data) {
  std::map<int, long> hist;
  for (const auto& h : data)
    if (h.actual_winner >= 0) ++hist[winner_position(h.election, h.actual_winner)];
  return hist;
}

}  // namespace shortlist
