#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shortlist/core.hpp"
#include "shortlist/rng.hpp"
#include "shortlist/rules.hpp"

namespace shortlist {

enum class Axiom {
  Anonymity,
  Neutrality,
  Efficiency,
  NonTiebreaking,
  Unanimity,
  AntiUnanimity,
  Stability,  // carries l
  Determined,
  Independence,
  IndependenceOfLosing,
  ResistanceToClones,
  SetMonotonicity,
  SupersetMonotonicity,
  MinimalityInclusion,  // reference rule contained in every constrained rule's output
};

struct AxiomId {
  Axiom kind = Axiom::Unanimity;
  int stability_l = 1;  // meaningful for Stability only

  std::string to_string() const {
    switch (kind) {
      case Axiom::Anonymity: return "anonymity";
      case Axiom::Neutrality: return "neutrality";
      case Axiom::Efficiency: return "efficiency";
      case Axiom::NonTiebreaking: return "nontiebreaking";
      case Axiom::Unanimity: return "unanimity";
      case Axiom::AntiUnanimity: return "antiunanimity";
      case Axiom::Stability: return "stability:l=" + std::to_string(stability_l);
      case Axiom::Determined: return "determined";
      case Axiom::Independence: return "independence";
      case Axiom::IndependenceOfLosing: return "ila";
      case Axiom::ResistanceToClones: return "clones";
      case Axiom::SetMonotonicity: return "setmono";
      case Axiom::SupersetMonotonicity: return "supersetmono";
      case Axiom::MinimalityInclusion: return "minimality";
    }
    return {};
  }

  static AxiomId parse(std::string_view text) {
    std::string s = detail::lower(text);
    if (s.rfind("stability", 0) == 0) {
      std::size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("stability axiom needs l=<value>");
      return {Axiom::Stability, std::stoi(s.substr(eq + 1))};
    }
    for (Axiom a : {Axiom::Anonymity, Axiom::Neutrality, Axiom::Efficiency,
                    Axiom::NonTiebreaking, Axiom::Unanimity, Axiom::AntiUnanimity,
                    Axiom::Determined, Axiom::Independence, Axiom::IndependenceOfLosing,
                    Axiom::ResistanceToClones, Axiom::SetMonotonicity,
                    Axiom::SupersetMonotonicity}) {
      if (AxiomId{a, 1}.to_string() == s) return {a, 1};
    }
    throw std::invalid_argument("unknown axiom: " + std::string(text));
  }
};

/// Minimal reproducible evidence of a violation. Replaying a witness through
/// `witness_violates` re-derives the violation with no randomness involved.
struct Witness {
  RuleSpec rule;
  AxiomId axiom;
  Election before;
  std::optional<Election> after;   // pairwise axioms
  int focus_candidate = -1;        // planted / held / removed / cloned candidate
  std::vector<int> relabeling;     // neutrality only
  std::string perturbation;        // human-readable description
  WinnerSet winners_before;
  WinnerSet winners_after;
};

struct AxiomVerdict {
  AxiomId axiom;
  enum class Outcome { NoViolationFound, Violated } outcome = Outcome::NoViolationFound;
  std::optional<Witness> witness;
  long trials = 0;
  std::uint64_t seed = 0;

  bool violated() const { return outcome == Outcome::Violated; }
};

/// Random election model for audits: m ~ U[2,12], n ~ U[2,30], per-election
/// approval probability U[0.1,0.9], i.i.d. approvals; degenerate profiles
/// are redrawn.
struct AuditConfig {
  int min_m = 2, max_m = 12;
  int min_n = 2, max_n = 30;
  double p_lo = 0.1, p_hi = 0.9;
};

inline Election random_election(RandomStream& rng, const AuditConfig& cfg = {}) {
  for (;;) {
    const int m = rng.uniform_int(cfg.min_m, cfg.max_m);
    const int n = rng.uniform_int(cfg.min_n, cfg.max_n);
    const double p = rng.uniform(cfg.p_lo, cfg.p_hi);
    std::vector<std::vector<int>> ballots(static_cast<std::size_t>(n));
    for (auto& b : ballots)
      for (int c = 0; c < m; ++c)
        if (rng.bernoulli(p)) b.push_back(c);
    Election e = Election::make(m, std::move(ballots));
    if (!is_degenerate(approval_scores(e))) return e;
  }
}

// --- helpers over elections --------------------------------------------------

namespace detail {

inline Election with_candidate_everywhere(const Election& e, int c) {
  Election out = e;
  for (auto& b : out.ballots)
    if (!std::binary_search(b.begin(), b.end(), c)) {
      b.push_back(c);
      std::sort(b.begin(), b.end());
    }
  return out;
}

inline Election with_candidate_nowhere(const Election& e, int c) {
  Election out = e;
  for (auto& b : out.ballots)
    b.erase(std::remove(b.begin(), b.end(), c), b.end());
  return out;
}

inline Election without_candidate(const Election& e, int c) {
  Election out;
  out.num_candidates = e.num_candidates - 1;
  for (const auto& b : e.ballots) {
    std::vector<int> nb;
    for (int x : b)
      if (x != c) nb.push_back(x < c ? x : x - 1);
    out.ballots.push_back(std::move(nb));
  }
  return out;
}

inline Election with_clone(const Election& e, int c) {
  Election out = e;
  out.labels.clear();
  out.num_candidates = e.num_candidates + 1;
  for (auto& b : out.ballots)
    if (std::binary_search(b.begin(), b.end(), c)) b.push_back(e.num_candidates);
  return out;
}

inline std::vector<int> shift_down(const std::vector<int>& members, int removed) {
  std::vector<int> out;
  for (int x : members)
    if (x != removed) out.push_back(x < removed ? x : x - 1);
  return out;
}

inline bool same_ballots(const Election& a, const Election& b) {
  return a.num_candidates == b.num_candidates && a.ballots == b.ballots;
}

/// Index of the single differing ballot, or -1 if zero or several differ.
inline int single_changed_ballot(const Election& a, const Election& b) {
  if (a.num_voters() != b.num_voters() || a.num_candidates != b.num_candidates) return -1;
  int changed = -1;
  for (int v = 0; v < a.num_voters(); ++v) {
    if (a.ballots[static_cast<std::size_t>(v)] != b.ballots[static_cast<std::size_t>(v)]) {
      if (changed >= 0) return -1;
      changed = v;
    }
  }
  return changed;
}

}  // namespace detail

// --- violation predicates ----------------------------------------------------

/// Re-derives the stored violation: true iff the witness still falsifies its
/// axiom for its rule. Used both to certify seeded counterexamples and to
/// replay search results.
inline bool witness_violates(const Witness& w) {
  const WinnerSet before = evaluate(w.rule, w.before);
  switch (w.axiom.kind) {
    case Axiom::Unanimity: {
      const ScoreVector sc = approval_scores(w.before);
      const int n = w.before.num_voters();
      for (int c = 0; c < w.before.num_candidates; ++c)
        if (sc[static_cast<std::size_t>(c)] == n && !before.contains(c)) return true;
      return false;
    }
    case Axiom::AntiUnanimity: {
      const ScoreVector sc = approval_scores(w.before);
      for (int c = 0; c < w.before.num_candidates; ++c)
        if (sc[static_cast<std::size_t>(c)] == 0 && before.contains(c)) return true;
      return false;
    }
    case Axiom::Stability: {
      const ScoreVector sc = approval_scores(w.before);
      for (int a = 0; a < w.before.num_candidates; ++a)
        for (int b = a + 1; b < w.before.num_candidates; ++b)
          if (std::abs(sc[static_cast<std::size_t>(a)] - sc[static_cast<std::size_t>(b)]) <
                  w.axiom.stability_l &&
              before.contains(a) != before.contains(b))
            return true;
      return false;
    }
    case Axiom::Determined: return before.empty();
    case Axiom::Efficiency: {
      const ScoreVector sc = approval_scores(w.before);
      for (int a = 0; a < w.before.num_candidates; ++a)
        for (int b = 0; b < w.before.num_candidates; ++b)
          if (before.contains(a) && !before.contains(b) &&
              sc[static_cast<std::size_t>(a)] < sc[static_cast<std::size_t>(b)])
            return true;
      return false;
    }
    case Axiom::NonTiebreaking: {
      const ScoreVector sc = approval_scores(w.before);
      for (int a = 0; a < w.before.num_candidates; ++a)
        for (int b = a + 1; b < w.before.num_candidates; ++b)
          if (sc[static_cast<std::size_t>(a)] == sc[static_cast<std::size_t>(b)] &&
              before.contains(a) != before.contains(b))
            return true;
      return false;
    }
    case Axiom::Anonymity: {
      // premise: the perturbed election permutes the ballots
      auto sorted_ballots = [](const Election& e) {
        auto b = e.ballots;
        std::sort(b.begin(), b.end());
        return b;
      };
      if (!w.after || sorted_ballots(w.before) != sorted_ballots(*w.after)) return false;
      const WinnerSet after = evaluate(w.rule, *w.after);
      return !(after == before);
    }
    case Axiom::SetMonotonicity:
    case Axiom::SupersetMonotonicity: {
      // premise: exactly one voter changed, previously approved no winner,
      // and now approves (at least) the whole winner set
      if (!w.after) return false;
      const int v = detail::single_changed_ballot(w.before, *w.after);
      if (v < 0) return false;
      const auto& old_ballot = w.before.ballots[static_cast<std::size_t>(v)];
      const auto& new_ballot = w.after->ballots[static_cast<std::size_t>(v)];
      for (int c : old_ballot)
        if (before.contains(c)) return false;
      for (int c : before.members)
        if (!std::binary_search(new_ballot.begin(), new_ballot.end(), c)) return false;
      if (w.axiom.kind == Axiom::SetMonotonicity) {
        std::vector<int> expected_ballot = old_ballot;
        expected_ballot.insert(expected_ballot.end(), before.members.begin(),
                               before.members.end());
        std::sort(expected_ballot.begin(), expected_ballot.end());
        if (new_ballot != expected_ballot) return false;
      }
      const WinnerSet after = evaluate(w.rule, *w.after);
      return !(after == before);
    }
    case Axiom::Neutrality: {
      if (!w.after) return false;
      const WinnerSet after = evaluate(w.rule, *w.after);
      WinnerSet expected;
      for (int c : before.members)
        expected.members.push_back(w.relabeling[static_cast<std::size_t>(c)]);
      std::sort(expected.members.begin(), expected.members.end());
      return !(after == expected);
    }
    case Axiom::Independence: {
      // premise: the focus candidate is approved by exactly the same voters
      if (!w.after || w.after->num_voters() != w.before.num_voters()) return false;
      for (int v = 0; v < w.before.num_voters(); ++v)
        if (w.before.approves(v, w.focus_candidate) !=
            w.after->approves(v, w.focus_candidate))
          return false;
      const WinnerSet after = evaluate(w.rule, *w.after);
      return before.contains(w.focus_candidate) != after.contains(w.focus_candidate);
    }
    case Axiom::IndependenceOfLosing: {
      // premise: the removed candidate lost, and the perturbed election is
      // exactly the original without it
      if (!w.after || before.contains(w.focus_candidate)) return false;
      if (!detail::same_ballots(*w.after,
                                detail::without_candidate(w.before, w.focus_candidate)))
        return false;
      const WinnerSet after = evaluate(w.rule, *w.after);
      WinnerSet expected;
      expected.members = detail::shift_down(before.members, w.focus_candidate);
      return !(after == expected);
    }
    case Axiom::ResistanceToClones: {
      if (!w.after ||
          !detail::same_ballots(*w.after, detail::with_clone(w.before, w.focus_candidate)))
        return false;
      const WinnerSet after = evaluate(w.rule, *w.after);
      WinnerSet expected = before;
      if (before.contains(w.focus_candidate))
        expected.members.push_back(w.before.num_candidates);
      std::sort(expected.members.begin(), expected.members.end());
      return !(after == expected);
    }
    case Axiom::MinimalityInclusion: {
      const WinnerSet after = evaluate(w.rule, w.before);
      (void)after;
      return false;  // minimality witnesses are replayed by minimality_check
    }
  }
  return false;
}

namespace detail {

/// One randomized perturbation test on one sampled election. nullopt means
/// no violation found on this trial (including trials where no valid
/// perturbation exists).
inline std::optional<Witness> check_once(const RuleSpec& rule, const AxiomId& axiom,
                                         const Election& e, RandomStream& rng) {
  Witness w;
  w.rule = rule;
  w.axiom = axiom;

  auto finish = [&](Witness&& wit) -> std::optional<Witness> {
    if (!witness_violates(wit)) return std::nullopt;
    wit.winners_before = evaluate(rule, wit.before);
    if (wit.after) wit.winners_after = evaluate(rule, *wit.after);
    return std::move(wit);
  };

  switch (axiom.kind) {
    case Axiom::Unanimity: {
      const int c = rng.uniform_int(0, e.num_candidates - 1);
      Election planted = with_candidate_everywhere(e, c);
      if (is_degenerate(approval_scores(planted))) return std::nullopt;
      w.before = std::move(planted);
      w.focus_candidate = c;
      w.perturbation = "candidate " + std::to_string(c) + " approved by everyone";
      return finish(std::move(w));
    }
    case Axiom::AntiUnanimity: {
      const int c = rng.uniform_int(0, e.num_candidates - 1);
      Election planted = with_candidate_nowhere(e, c);
      if (is_degenerate(approval_scores(planted))) return std::nullopt;
      w.before = std::move(planted);
      w.focus_candidate = c;
      w.perturbation = "candidate " + std::to_string(c) + " approved by no one";
      return finish(std::move(w));
    }
    case Axiom::Stability:
    case Axiom::Determined:
    case Axiom::Efficiency:
    case Axiom::NonTiebreaking: {
      w.before = e;
      w.perturbation = "none";
      return finish(std::move(w));
    }
    case Axiom::Anonymity: {
      Election shuffled = e;
      for (int i = static_cast<int>(shuffled.ballots.size()) - 1; i > 0; --i)
        std::swap(shuffled.ballots[static_cast<std::size_t>(i)],
                  shuffled.ballots[static_cast<std::size_t>(rng.uniform_int(0, i))]);
      w.before = e;
      w.after = std::move(shuffled);
      w.perturbation = "ballots permuted";
      return finish(std::move(w));
    }
    case Axiom::Neutrality: {
      std::vector<int> perm(static_cast<std::size_t>(e.num_candidates));
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = e.num_candidates - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
      Election relabeled = e;
      relabeled.labels.clear();
      for (auto& b : relabeled.ballots) {
        for (int& c : b) c = perm[static_cast<std::size_t>(c)];
        std::sort(b.begin(), b.end());
      }
      w.before = e;
      w.after = std::move(relabeled);
      w.relabeling = std::move(perm);
      w.perturbation = "candidates relabeled";
      return finish(std::move(w));
    }
    case Axiom::Independence: {
      const int c = rng.uniform_int(0, e.num_candidates - 1);
      const double p = rng.uniform(0.1, 0.9);
      Election other = e;
      for (auto& b : other.ballots) {
        const bool keeps = std::binary_search(b.begin(), b.end(), c);
        b.clear();
        for (int x = 0; x < e.num_candidates; ++x) {
          if (x == c) {
            if (keeps) b.push_back(x);
          } else if (rng.bernoulli(p)) {
            b.push_back(x);
          }
        }
      }
      if (is_degenerate(approval_scores(other))) return std::nullopt;
      w.before = e;
      w.after = std::move(other);
      w.focus_candidate = c;
      w.perturbation =
          "candidate " + std::to_string(c) + " column held, all others re-randomized";
      return finish(std::move(w));
    }
    case Axiom::IndependenceOfLosing: {
      const WinnerSet winners = evaluate(rule, e);
      std::vector<int> losers;
      for (int c = 0; c < e.num_candidates; ++c)
        if (!winners.contains(c)) losers.push_back(c);
      if (losers.empty() || e.num_candidates < 2) return std::nullopt;
      const int c = losers[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(losers.size()) - 1))];
      w.before = e;
      w.after = without_candidate(e, c);
      w.focus_candidate = c;
      w.perturbation = "losing candidate " + std::to_string(c) + " removed";
      return finish(std::move(w));
    }
    case Axiom::ResistanceToClones: {
      const int c = rng.uniform_int(0, e.num_candidates - 1);
      w.before = e;
      w.after = with_clone(e, c);
      w.focus_candidate = c;
      w.perturbation = "candidate " + std::to_string(c) + " cloned as candidate " +
                       std::to_string(e.num_candidates);
      return finish(std::move(w));
    }
    case Axiom::SetMonotonicity:
    case Axiom::SupersetMonotonicity: {
      const WinnerSet winners = evaluate(rule, e);
      if (winners.empty()) return std::nullopt;
      std::vector<int> eligible;
      for (int v = 0; v < e.num_voters(); ++v) {
        bool disjoint = true;
        for (int c : e.ballots[static_cast<std::size_t>(v)])
          if (winners.contains(c)) {
            disjoint = false;
            break;
          }
        if (disjoint) eligible.push_back(v);
      }
      if (eligible.empty()) return std::nullopt;
      const int v = eligible[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(eligible.size()) - 1))];
      Election other = e;
      auto& ballot = other.ballots[static_cast<std::size_t>(v)];
      if (axiom.kind == Axiom::SetMonotonicity) {
        for (int c : winners.members) ballot.push_back(c);
        std::sort(ballot.begin(), ballot.end());
        w.perturbation = "voter " + std::to_string(v) + " additionally approves the winner set";
      } else {
        ballot = winners.members;
        for (int c = 0; c < e.num_candidates; ++c)
          if (!winners.contains(c) && rng.bernoulli(0.5)) ballot.push_back(c);
        std::sort(ballot.begin(), ballot.end());
        w.perturbation = "voter " + std::to_string(v) + " now approves a superset of the winner set";
      }
      w.before = e;
      w.after = std::move(other);
      return finish(std::move(w));
    }
    default: return std::nullopt;
  }
}

}  // namespace detail

/// Randomized falsification: `trials` perturbation tests on independently
/// sampled elections; stops at the first violation.
inline AxiomVerdict check_axiom(const RuleSpec& rule, const AxiomId& axiom, long trials,
                                std::uint64_t seed, const AuditConfig& cfg = {}) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (axiom.kind == Axiom::Stability &&
      (axiom.stability_l < 1 || axiom.stability_l > cfg.max_n))
    throw std::invalid_argument("stability parameter l must lie in [1, max voters]");
  AxiomVerdict verdict;
  verdict.axiom = axiom;
  verdict.seed = seed;
  for (long t = 0; t < trials; ++t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const Election e = random_election(rng, cfg);
    verdict.trials = t + 1;
    if (auto w = detail::check_once(rule, axiom, e, rng)) {
      verdict.outcome = AxiomVerdict::Outcome::Violated;
      verdict.witness = std::move(*w);
      return verdict;
    }
  }
  verdict.outcome = AxiomVerdict::Outcome::NoViolationFound;
  return verdict;
}

// --- minimal-rule subset oracles ---------------------------------------------

enum class MinimalityConstraint {
  DeterminedNonTiebreaking,  // reference: approval voting
  StableDetermined,          // reference: first-k-gap, with its k as stability bound
};

/// The rule instances a minimality audit quantifies over. The theorems range
/// over all rules satisfying the constraints; the executable check is
/// restricted to this implemented inventory.
inline std::vector<RuleSpec> default_rule_universe() {
  std::vector<RuleSpec> u;
  for (const char* text :
       {"av", "threshold:alpha=0", "threshold:alpha=0.3", "threshold:alpha=0.5",
        "msthreshold:alpha=0.3", "msthreshold:alpha=0.5", "meanthreshold",
        "firstmajority", "next:k=1", "next:k=2", "next:k=3", "qncsa:q=0",
        "qncsa:q=0.5", "qncsa:q=1", "largestgap", "fgap:k=1", "fgap:k=2", "fgap:k=3",
        "fgap:k=5", "mfgap:k=2", "mfgap:k=3", "isp:s=1", "isp:s=2", "isp:s=4",
        "sp:order=2,1,3,4,5,6,7,8,9,10,11,12,13,0", "topfgap:s=3,k=2",
        "topfgap:s=10,k=5", "cluster:dist=single,beta=2", "cluster:dist=single,mindist=3"})
    u.push_back(RuleSpec::parse(text));
  return u;
}

namespace detail {

inline bool output_is_stable(const ScoreVector& sc, const WinnerSet& w, int l) {
  for (int a = 0; a < static_cast<int>(sc.size()); ++a)
    for (int b = a + 1; b < static_cast<int>(sc.size()); ++b)
      if (std::abs(sc[static_cast<std::size_t>(a)] - sc[static_cast<std::size_t>(b)]) < l &&
          w.contains(a) != w.contains(b))
        return false;
  return true;
}

}  // namespace detail

/// Per-instance subset audit: on every sampled election, the reference
/// rule's winner set must be contained in the winner set of every universe
/// rule whose output satisfies the constraint set on that election
/// (non-empty and non-tiebreaking, plus stability within the reference k for
/// StableDetermined).
inline AxiomVerdict minimality_check(const RuleSpec& reference, MinimalityConstraint c,
                                     long trials, std::uint64_t seed,
                                     const std::vector<RuleSpec>& universe =
                                         default_rule_universe(),
                                     const AuditConfig& cfg = {}) {
  if (c == MinimalityConstraint::StableDetermined &&
      (reference.family != RuleFamily::FirstKGap ||
       reference.k.kind != KSelector::Kind::Fixed || reference.k.k < 1))
    throw std::invalid_argument("stable-determined minimality expects a fixed-k first-k-gap reference");
  if (c == MinimalityConstraint::DeterminedNonTiebreaking &&
      reference.family != RuleFamily::AV)
    throw std::invalid_argument("determined-nontiebreaking minimality expects approval voting");
  const int stability_l =
      c == MinimalityConstraint::StableDetermined ? reference.k.k : 1;

  AxiomVerdict verdict;
  verdict.axiom = {Axiom::MinimalityInclusion, stability_l};
  verdict.seed = seed;
  for (long t = 0; t < trials; ++t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const Election e = random_election(rng, cfg);
    verdict.trials = t + 1;
    const SortedScores ss = sorted_scores_of(e);
    const ScoreVector sc = approval_scores(e);
    const WinnerSet ref = evaluate(reference, ss, e.num_voters());
    for (const RuleSpec& other : universe) {
      const WinnerSet w = evaluate(other, ss, e.num_voters());
      if (w.empty()) continue;  // not determined on this instance
      if (!detail::output_is_stable(sc, w, stability_l)) continue;
      const bool subset = std::includes(w.members.begin(), w.members.end(),
                                        ref.members.begin(), ref.members.end());
      if (!subset) {
        Witness wit;
        wit.rule = other;
        wit.axiom = verdict.axiom;
        wit.before = e;
        wit.perturbation = "reference " + reference.to_string() +
                           " not contained in " + other.to_string();
        wit.winners_before = ref;
        wit.winners_after = w;
        verdict.outcome = AxiomVerdict::Outcome::Violated;
        verdict.witness = std::move(wit);
        return verdict;
      }
    }
  }
  verdict.outcome = AxiomVerdict::Outcome::NoViolationFound;
  return verdict;
}

// --- joint satisfiability bound for unanimity/anti-unanimity/stability --------

struct StabilityBoundResult {
  AxiomVerdict audit;        // modified first-l-gap on elections with n > (l-1)(m-1)
  bool tightness_certified;  // boundary election admits no winner set meeting all three
  std::string tightness_detail;
};

/// (a) Audits that the modified first-l-gap rule satisfies Unanimity,
/// Anti-Unanimity and l-Stability on random elections meeting the voter
/// bound n > (l-1)(m-1); (b) certifies by enumeration that on the boundary
/// election with two candidates and scores (l-1, 0) every feasible winner
/// set breaks one of the three axioms.
inline StabilityBoundResult stability_bound_check(int l, long trials, std::uint64_t seed) {
  if (l < 1) throw std::invalid_argument("stability bound check requires l >= 1");
  RuleSpec rule;
  rule.family = RuleFamily::ModifiedFirstKGap;
  rule.k = KSelector::fixed(l);

  StabilityBoundResult result;
  result.audit.axiom = {Axiom::Stability, l};
  result.audit.seed = seed;
  result.audit.outcome = AxiomVerdict::Outcome::NoViolationFound;

  const AxiomId axioms[3] = {{Axiom::Unanimity, 1}, {Axiom::AntiUnanimity, 1},
                             {Axiom::Stability, l}};
  for (long t = 0; t < trials && !result.audit.violated(); ++t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    AuditConfig cfg;
    Election e = random_election(rng, cfg);
    // enforce the voter bound by adding empty ballots if needed
    const int need = (l - 1) * (e.num_candidates - 1) + 1;
    while (e.num_voters() < need) e.ballots.push_back({});
    result.audit.trials = t + 1;
    for (const AxiomId& axiom : axioms) {
      if (auto w = detail::check_once(rule, axiom, e, rng)) {
        result.audit.outcome = AxiomVerdict::Outcome::Violated;
        result.audit.witness = std::move(*w);
        break;
      }
    }
  }

  if (l >= 2) {
    // two candidates, l-1 voters all approving only the first
    std::vector<std::vector<int>> ballots(static_cast<std::size_t>(l - 1), {0});
    const Election boundary = Election::make(2, std::move(ballots));
    const SortedScores ss = sorted_scores_of(boundary);
    const int n = boundary.num_voters();
    std::ostringstream detail_os;
    bool all_fail = true;
    for (const WinnerSet& w : feasible_winner_sets(ss)) {
      std::string failed;
      if (!w.contains(0) && ss.sorted[0] == n) failed = "unanimity";
      else if (w.contains(1) && ss.sorted[1] == 0) failed = "antiunanimity";
      else if (!detail::output_is_stable(approval_scores(boundary), w, l))
        failed = "stability";
      if (failed.empty()) all_fail = false;
      detail_os << "cut " << w.cut << ": "
                << (failed.empty() ? "satisfies all three" : "fails " + failed) << "; ";
    }
    result.tightness_certified = all_fail;
    result.tightness_detail = detail_os.str();
  } else {
    // l = 1: stability equals non-tiebreaking; approval voting satisfies all
    // three on any non-degenerate election, so there is no boundary instance
    result.tightness_certified = true;
    result.tightness_detail = "no boundary instance for l=1";
  }
  return result;
}

}  // namespace shortlist
