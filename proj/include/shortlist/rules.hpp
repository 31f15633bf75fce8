#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shortlist/clustering.hpp"
#include "shortlist/core.hpp"

namespace shortlist {

/// Non-negative rational with exact decimal parse/print. Rule parameters
/// like alpha arrive as decimal text; keeping them exact makes expressions
/// such as floor(alpha * n) integer arithmetic instead of float flooring
/// (0.29 * 100 in doubles is 28.999... and would floor wrong).
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational parse(std::string_view text) {
    Rational r;
    std::size_t dot = text.find('.');
    std::string digits;
    if (dot == std::string_view::npos) {
      digits = std::string(text);
    } else {
      if (text.size() - dot - 1 > 12)
        throw std::invalid_argument("too many decimal places: " + std::string(text));
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      for (std::size_t i = dot + 1; i < text.size(); ++i) r.den *= 10;
    }
    if (digits.empty() || digits.size() > 15)
      throw std::invalid_argument("invalid number: " + std::string(text));
    for (char ch : digits)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("invalid number: " + std::string(text));
    r.num = std::stoll(digits);
    return r;
  }

  static Rational of(long long num, long long den) { return Rational{num, den}; }

  long long floor_times(long long x) const { return (num * x) / den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool operator==(const Rational& o) const { return num * o.den == o.num * den; }

  /// Decimal form; den is always a power of ten by construction.
  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    std::size_t digits = 0;
    for (long long v = den; v > 1; v /= 10) ++digits;
    std::string frac = std::to_string(num % den);
    frac.insert(frac.begin(), digits - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return std::to_string(num / den) + "." + frac;
  }
};

// ---------------------------------------------------------------------------
// Shortlisting rules. Each maps the canonical sorted scores to a winner set
// that is a full tie group prefix, so Efficiency and Non-tiebreaking hold by
// construction.
// ---------------------------------------------------------------------------

/// All candidates with maximal approval score.
inline WinnerSet av(const SortedScores& ss) {
  return prefix_with_score_at_least(ss, ss.max_score());
}

/// Winners: sc(c) > floor(alpha * n). May be empty.
inline WinnerSet threshold_rule(const SortedScores& ss, int num_voters,
                                const Rational& alpha) {
  const int t = static_cast<int>(alpha.floor_times(num_voters));
  return prefix_with_score_at_least(ss, t + 1);
}

/// Winners: sc(c) > floor(alpha * max score). Contains every max-score
/// candidate whenever the maximum is positive.
inline WinnerSet max_score_threshold(const SortedScores& ss, const Rational& alpha) {
  const int t = static_cast<int>(alpha.floor_times(ss.max_score()));
  return prefix_with_score_at_least(ss, t + 1);
}

/// Winners: sc(c) strictly above the mean score (exact integer comparison).
inline WinnerSet mean_threshold(const SortedScores& ss) {
  const long long total = ss.total();
  const long long m = ss.count();
  int cut = 0;
  while (cut < ss.count() &&
         static_cast<long long>(ss.sorted[static_cast<std::size_t>(cut)]) * m > total)
    ++cut;
  return winner_set_for_cut(ss, cut);
}

/// Smallest prefix holding a strict majority of all approvals, extended to
/// the full tie group. An all-zero profile has no such prefix; returns the
/// empty set there.
inline WinnerSet first_majority(const SortedScores& ss) {
  const long long total = ss.total();
  if (total == 0) return winner_set_for_cut(ss, 0);
  long long prefix = 0;
  for (int i = 0; i < ss.count(); ++i) {
    prefix += ss.sorted[static_cast<std::size_t>(i)];
    if (2 * prefix > total)
      return prefix_with_score_at_least(ss, ss.sorted[static_cast<std::size_t>(i)]);
  }
  return winner_set_for_cut(ss, ss.count());  // unreachable for total > 0
}

/// c_i wins iff no earlier candidate's score exceeds the sum of the k scores
/// following it (zero-padded past the end).
inline WinnerSet next_k(const SortedScores& ss, int k) {
  if (k < 1) throw std::invalid_argument("next-k requires k >= 1");
  const int m = ss.count();
  for (int i = 1; i <= m; ++i) {
    long long window = 0;
    for (int j = 1; j <= k; ++j)
      if (i - 1 + j < m) window += ss.sorted[static_cast<std::size_t>(i - 1 + j)];
    if (ss.sorted[static_cast<std::size_t>(i - 1)] > window)
      return winner_set_for_cut(ss, i);
  }
  return winner_set_for_cut(ss, m);
}

/// Score of the prefix of the first `cut` candidates:
///   (sum of 2*sc(c) - n over the prefix) / cut^q,  and 0 for the empty set.
inline double qncsa_score(const SortedScores& ss, int num_voters, double q, int cut) {
  if (cut == 0) return 0.0;
  long long s = 0;
  for (int j = 0; j < cut; ++j)
    s += 2LL * ss.sorted[static_cast<std::size_t>(j)] - num_voters;
  return static_cast<double>(s) / std::pow(static_cast<double>(cut), q);
}

namespace detail {
inline bool qncsa_close(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}
}  // namespace detail

/// Largest feasible prefix with maximal q-NCSA score. Scores are compared
/// in doubles with a relative 1e-9 tie tolerance; among tied maxima the
/// largest cut wins.
inline WinnerSet qncsa(const SortedScores& ss, int num_voters, double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("q-ncsa requires q in [0,1]");
  double best = 0.0;
  int best_cut = 0;
  for (int cut : feasible_cuts(ss)) {
    const double s = qncsa_score(ss, num_voters, q, cut);
    if (s > best && !detail::qncsa_close(s, best)) {
      best = s;
      best_cut = cut;
    } else if (detail::qncsa_close(s, best) && cut > best_cut) {
      best_cut = cut;
      if (s > best) best = s;
    }
  }
  return winner_set_for_cut(ss, best_cut);
}

/// Cut at the smallest index attaining the maximum consecutive gap.
/// A degenerate profile has no gap; every candidate wins.
inline WinnerSet largest_gap(const SortedScores& ss) {
  const int m = ss.count();
  if (ss.degenerate()) return winner_set_for_cut(ss, m);
  int best_gap = -1, best_i = 0;
  for (int i = 1; i < m; ++i) {
    const int gap = ss.sorted[static_cast<std::size_t>(i - 1)] -
                    ss.sorted[static_cast<std::size_t>(i)];
    if (gap > best_gap) {
      best_gap = gap;
      best_i = i;
    }
  }
  return prefix_with_score_at_least(ss, ss.sorted[static_cast<std::size_t>(best_i - 1)]);
}

/// Cut at the first consecutive gap of size >= k; if none exists every
/// candidate wins. k = 0 is accepted (parameter sweeps produce it via
/// floor(alpha * n)); the first ">= 0 gap" is position one, so the result
/// is the approval-voting set.
inline WinnerSet first_k_gap(const SortedScores& ss, int k) {
  if (k < 0) throw std::invalid_argument("first-k-gap requires k >= 0");
  const int m = ss.count();
  for (int i = 1; i < m; ++i) {
    if (ss.sorted[static_cast<std::size_t>(i - 1)] -
            ss.sorted[static_cast<std::size_t>(i)] >=
        k)
      return prefix_with_score_at_least(ss, ss.sorted[static_cast<std::size_t>(i - 1)]);
  }
  return winner_set_for_cut(ss, m);
}

/// As first_k_gap, except when no gap of size >= min_gap exists: the empty
/// set if some candidate has score zero, all candidates otherwise.
inline WinnerSet modified_first_k_gap(const SortedScores& ss, int min_gap) {
  if (min_gap < 1) throw std::invalid_argument("modified first-k-gap requires k >= 1");
  const int m = ss.count();
  for (int i = 1; i < m; ++i) {
    if (ss.sorted[static_cast<std::size_t>(i - 1)] -
            ss.sorted[static_cast<std::size_t>(i)] >=
        min_gap)
      return prefix_with_score_at_least(ss, ss.sorted[static_cast<std::size_t>(i - 1)]);
  }
  if (ss.sorted.back() == 0) return winner_set_for_cut(ss, 0);
  return winner_set_for_cut(ss, m);
}

/// A strict total order over shortlist sizes, restrictable to {0..m} for any
/// m. Two realizations: the increasing family s |> s+1 |> ... |> m |> 0 |>
/// ... |> s-1, and an explicit ranking list (a partial list is completed
/// with the unlisted sizes ascending, below everything listed).
class PriorityOrder {
 public:
  static PriorityOrder increasing(int s) {
    if (s < 1) throw std::invalid_argument("increasing size priority requires s >= 1");
    PriorityOrder p;
    p.increasing_s_ = s;
    return p;
  }

  static PriorityOrder explicit_ranking(std::vector<int> ranking) {
    PriorityOrder p;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      if (ranking[i] < 0) throw std::invalid_argument("priority order entries must be >= 0");
      for (std::size_t j = i + 1; j < ranking.size(); ++j)
        if (ranking[i] == ranking[j])
          throw std::invalid_argument("priority order lists a size twice");
    }
    p.ranking_ = std::move(ranking);
    return p;
  }

  bool is_increasing() const { return increasing_s_.has_value(); }
  int increasing_s() const { return *increasing_s_; }

  /// Permutation of {0..m}, most preferred first.
  std::vector<int> restrict_to(int m) const {
    std::vector<int> out;
    if (increasing_s_) {
      const int s = *increasing_s_;
      if (m >= s) {
        for (int k = s; k <= m; ++k) out.push_back(k);
        for (int k = 0; k < s; ++k) out.push_back(k);
      } else {
        // Below the preferred size range: the k = m instance (select all).
        out.push_back(m);
        for (int k = 0; k < m; ++k) out.push_back(k);
      }
      return out;
    }
    std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
    for (int k : ranking_)
      if (k <= m) {
        out.push_back(k);
        seen[static_cast<std::size_t>(k)] = true;
      }
    for (int k = 0; k <= m; ++k)
      if (!seen[static_cast<std::size_t>(k)]) out.push_back(k);
    return out;
  }

  std::string to_string() const {
    if (increasing_s_) return "isp:s=" + std::to_string(*increasing_s_);
    std::string s = "sp:order=";
    for (std::size_t i = 0; i < ranking_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(ranking_[i]);
    }
    return s;
  }

  bool operator==(const PriorityOrder& o) const {
    return increasing_s_ == o.increasing_s_ && ranking_ == o.ranking_;
  }

 private:
  std::optional<int> increasing_s_;
  std::vector<int> ranking_;
};

/// The most preferred size among the feasible (non-tiebreaking) cuts.
inline WinnerSet size_priority(const SortedScores& ss, const PriorityOrder& order) {
  const auto cuts = feasible_cuts(ss);
  std::vector<bool> feasible(static_cast<std::size_t>(ss.count()) + 1, false);
  for (int k : cuts) feasible[static_cast<std::size_t>(k)] = true;
  for (int k : order.restrict_to(ss.count()))
    if (feasible[static_cast<std::size_t>(k)]) return winner_set_for_cut(ss, k);
  throw std::logic_error("priority order exhausted");  // 0 and m are always feasible
}

/// first_k_gap result if it has at most s members, otherwise the increasing
/// size-priority result for s.
inline WinnerSet top_s_first_k_gap(const SortedScores& ss, int s, int k) {
  if (s < 1) throw std::invalid_argument("top-s-first-k-gap requires s >= 1");
  WinnerSet w = first_k_gap(ss, k);
  if (w.size() <= s) return w;
  return size_priority(ss, PriorityOrder::increasing(s));
}

// ---------------------------------------------------------------------------
// RuleSpec: closed description of a rule instance, with a canonical text
// encoding for the CLI and CSV outputs.
// ---------------------------------------------------------------------------

enum class RuleFamily {
  AV,
  Threshold,
  MaxScoreThreshold,
  MeanThreshold,
  FirstMajority,
  NextK,
  QNCSA,
  LargestGap,
  FirstKGap,
  ModifiedFirstKGap,
  SizePriority,
  TopSFirstKGap,
  ClusterRule,
};

/// k given directly, or resolved per election as floor(alpha*n) /
/// floor(alpha*max score) for the experiment sweeps.
struct KSelector {
  enum class Kind { Fixed, FractionOfVoters, FractionOfMaxScore };
  Kind kind = Kind::Fixed;
  int k = 1;
  Rational alpha{0, 1};

  static KSelector fixed(int k) { return {Kind::Fixed, k, Rational{0, 1}}; }
  static KSelector fraction_of_voters(Rational a) {
    return {Kind::FractionOfVoters, 0, a};
  }
  static KSelector fraction_of_max_score(Rational a) {
    return {Kind::FractionOfMaxScore, 0, a};
  }

  int resolve(int num_voters, int max_score) const {
    switch (kind) {
      case Kind::Fixed: return k;
      case Kind::FractionOfVoters: return static_cast<int>(alpha.floor_times(num_voters));
      case Kind::FractionOfMaxScore: return static_cast<int>(alpha.floor_times(max_score));
    }
    return k;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Fixed: return std::to_string(k);
      case Kind::FractionOfVoters: return alpha.to_string() + "n";
      case Kind::FractionOfMaxScore: return alpha.to_string() + "max";
    }
    return {};
  }

  bool operator==(const KSelector& o) const {
    return kind == o.kind && (kind != Kind::Fixed || k == o.k) &&
           (kind == Kind::Fixed || alpha == o.alpha);
  }
};

struct RuleSpec {
  RuleFamily family = RuleFamily::AV;
  Rational alpha{0, 1};                              // threshold families
  double q = 0.5;                                    // q-NCSA
  KSelector k = KSelector::fixed(1);                 // next / fgap / mfgap / topfgap
  int s = 1;                                         // topfgap / isp (via priority)
  PriorityOrder priority = PriorityOrder::increasing(1);  // size priority
  LinkageConfig cluster;                             // cluster rule

  std::string to_string() const;
  static RuleSpec parse(std::string_view text);

  bool operator==(const RuleSpec& o) const {
    if (family != o.family) return false;
    switch (family) {
      case RuleFamily::AV:
      case RuleFamily::MeanThreshold:
      case RuleFamily::FirstMajority:
      case RuleFamily::LargestGap: return true;
      case RuleFamily::Threshold:
      case RuleFamily::MaxScoreThreshold: return alpha == o.alpha;
      case RuleFamily::QNCSA: return q == o.q;
      case RuleFamily::NextK:
      case RuleFamily::FirstKGap:
      case RuleFamily::ModifiedFirstKGap: return k == o.k;
      case RuleFamily::SizePriority: return priority == o.priority;
      case RuleFamily::TopSFirstKGap: return s == o.s && k == o.k;
      case RuleFamily::ClusterRule: return cluster == o.cluster;
    }
    return false;
  }
};

inline void validate(const RuleSpec& spec) {
  auto check_alpha = [](const Rational& a) {
    if (a.num < 0 || a.num > a.den)
      throw std::invalid_argument("parameter alpha must lie in [0,1]");
  };
  switch (spec.family) {
    case RuleFamily::Threshold:
    case RuleFamily::MaxScoreThreshold: check_alpha(spec.alpha); break;
    case RuleFamily::QNCSA:
      if (spec.q < 0.0 || spec.q > 1.0)
        throw std::invalid_argument("parameter q must lie in [0,1]");
      break;
    case RuleFamily::NextK:
      if (spec.k.kind == KSelector::Kind::Fixed && spec.k.k < 1)
        throw std::invalid_argument("parameter k must be >= 1");
      break;
    case RuleFamily::ModifiedFirstKGap:
      if (spec.k.kind == KSelector::Kind::Fixed && spec.k.k < 1)
        throw std::invalid_argument("parameter k must be >= 1");
      break;
    case RuleFamily::FirstKGap:
    case RuleFamily::TopSFirstKGap:
      if (spec.k.kind == KSelector::Kind::Fixed && spec.k.k < 0)
        throw std::invalid_argument("parameter k must be >= 0");
      if (spec.k.kind != KSelector::Kind::Fixed) check_alpha(spec.k.alpha);
      if (spec.family == RuleFamily::TopSFirstKGap && spec.s < 1)
        throw std::invalid_argument("parameter s must be >= 1");
      break;
    default: break;
  }
}

/// Dispatch a rule instance on precomputed sorted scores.
inline WinnerSet evaluate(const RuleSpec& spec, const SortedScores& ss, int num_voters) {
  validate(spec);
  switch (spec.family) {
    case RuleFamily::AV: return av(ss);
    case RuleFamily::Threshold: return threshold_rule(ss, num_voters, spec.alpha);
    case RuleFamily::MaxScoreThreshold: return max_score_threshold(ss, spec.alpha);
    case RuleFamily::MeanThreshold: return mean_threshold(ss);
    case RuleFamily::FirstMajority: return first_majority(ss);
    case RuleFamily::NextK:
      return next_k(ss, spec.k.resolve(num_voters, ss.max_score()));
    case RuleFamily::QNCSA: return qncsa(ss, num_voters, spec.q);
    case RuleFamily::LargestGap: return largest_gap(ss);
    case RuleFamily::FirstKGap:
      return first_k_gap(ss, spec.k.resolve(num_voters, ss.max_score()));
    case RuleFamily::ModifiedFirstKGap:
      return modified_first_k_gap(ss, spec.k.resolve(num_voters, ss.max_score()));
    case RuleFamily::SizePriority: return size_priority(ss, spec.priority);
    case RuleFamily::TopSFirstKGap:
      return top_s_first_k_gap(ss, spec.s, spec.k.resolve(num_voters, ss.max_score()));
    case RuleFamily::ClusterRule: return cluster_shortlist(ss, spec.cluster);
  }
  throw std::logic_error("unknown rule family");
}

inline WinnerSet evaluate(const RuleSpec& spec, const Election& e) {
  return evaluate(spec, sorted_scores_of(e), e.num_voters());
}

// --- text encoding ---------------------------------------------------------

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> parse_params(
    std::string_view text) {
  // comma-separated key=value; a bare value continues the previous key's
  // list (used by sp:order=1,6,0)
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view tok = text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!tok.empty()) {
      std::size_t eq = tok.find('=');
      if (eq != std::string_view::npos) {
        out.emplace_back(lower(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
      } else if (!out.empty()) {
        out.back().second += ",";
        out.back().second += std::string(tok);
      } else {
        throw std::invalid_argument("expected key=value in rule parameters");
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline KSelector parse_k_selector(std::string_view v) {
  std::string s = lower(v);
  if (s.size() > 1 && s.back() == 'n')
    return KSelector::fraction_of_voters(Rational::parse(s.substr(0, s.size() - 1)));
  if (s.size() > 3 && s.substr(s.size() - 3) == "max")
    return KSelector::fraction_of_max_score(Rational::parse(s.substr(0, s.size() - 3)));
  return KSelector::fixed(std::stoi(s));
}

}  // namespace detail

inline std::string RuleSpec::to_string() const {
  switch (family) {
    case RuleFamily::AV: return "av";
    case RuleFamily::Threshold: return "threshold:alpha=" + alpha.to_string();
    case RuleFamily::MaxScoreThreshold: return "msthreshold:alpha=" + alpha.to_string();
    case RuleFamily::MeanThreshold: return "meanthreshold";
    case RuleFamily::FirstMajority: return "firstmajority";
    case RuleFamily::NextK: return "next:k=" + k.to_string();
    case RuleFamily::QNCSA: {
      std::ostringstream os;
      os << "qncsa:q=" << q;
      return os.str();
    }
    case RuleFamily::LargestGap: return "largestgap";
    case RuleFamily::FirstKGap: return "fgap:k=" + k.to_string();
    case RuleFamily::ModifiedFirstKGap: return "mfgap:k=" + k.to_string();
    case RuleFamily::SizePriority: return priority.to_string();
    case RuleFamily::TopSFirstKGap:
      return "topfgap:s=" + std::to_string(s) + ",k=" + k.to_string();
    case RuleFamily::ClusterRule: return cluster.to_string();
  }
  return {};
}

inline RuleSpec RuleSpec::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string name = detail::lower(text.substr(0, colon));
  const auto params = colon == std::string_view::npos
                          ? std::vector<std::pair<std::string, std::string>>{}
                          : detail::parse_params(text.substr(colon + 1));
  auto get = [&](const std::string& key) -> const std::string& {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    throw std::invalid_argument("rule '" + name + "' is missing parameter '" + key + "'");
  };

  RuleSpec spec;
  if (name == "av") {
    spec.family = RuleFamily::AV;
  } else if (name == "threshold") {
    spec.family = RuleFamily::Threshold;
    spec.alpha = Rational::parse(get("alpha"));
  } else if (name == "msthreshold") {
    spec.family = RuleFamily::MaxScoreThreshold;
    spec.alpha = Rational::parse(get("alpha"));
  } else if (name == "meanthreshold") {
    spec.family = RuleFamily::MeanThreshold;
  } else if (name == "firstmajority") {
    spec.family = RuleFamily::FirstMajority;
  } else if (name == "next") {
    spec.family = RuleFamily::NextK;
    spec.k = detail::parse_k_selector(get("k"));
  } else if (name == "qncsa") {
    spec.family = RuleFamily::QNCSA;
    spec.q = std::stod(get("q"));
  } else if (name == "largestgap") {
    spec.family = RuleFamily::LargestGap;
  } else if (name == "fgap") {
    spec.family = RuleFamily::FirstKGap;
    spec.k = detail::parse_k_selector(get("k"));
  } else if (name == "mfgap") {
    spec.family = RuleFamily::ModifiedFirstKGap;
    spec.k = detail::parse_k_selector(get("k"));
  } else if (name == "isp") {
    spec.family = RuleFamily::SizePriority;
    spec.priority = PriorityOrder::increasing(std::stoi(get("s")));
  } else if (name == "sp") {
    spec.family = RuleFamily::SizePriority;
    std::vector<int> ranking;
    std::istringstream is(get("order"));
    std::string part;
    while (std::getline(is, part, ',')) ranking.push_back(std::stoi(part));
    spec.priority = PriorityOrder::explicit_ranking(std::move(ranking));
  } else if (name == "topfgap") {
    spec.family = RuleFamily::TopSFirstKGap;
    spec.s = std::stoi(get("s"));
    spec.k = detail::parse_k_selector(get("k"));
  } else if (name == "cluster") {
    spec.family = RuleFamily::ClusterRule;
    spec.cluster = LinkageConfig::parse(text);
  } else {
    throw std::invalid_argument("unknown rule: " + std::string(text));
  }
  validate(spec);
  return spec;
}

}  // namespace shortlist
