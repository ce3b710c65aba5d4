#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cohsys/curve.hpp"
#include "cohsys/sheaf.hpp"

namespace cohsys {

// Coherent system class: sheaf numerics plus the dimension k of the space
// of sections.
struct SystemType {
    SheafClass sheaf;
    long long k = 0;
};

// Numerical subsystem candidate: a subsheaf class plus a section count h.
struct SubsystemCandidate {
    SheafClass sheaf;
    long long sections = 0;
};

// mu_alpha(F, h) = wdeg(F)/wrank(F) + alpha * h / wrank(F), alpha >= 0.
Rat alpha_slope(const SheafClass& sheaf, long long sections, const Rat& alpha,
                const NodalCurve& curve);
Rat alpha_slope(const SystemType& sys, const Rat& alpha, const NodalCurve& curve);
Rat alpha_slope(const SubsystemCandidate& cand, const Rat& alpha, const NodalCurve& curve);

// Parameter threshold for a uniform rank r, total degree d system with k
// sections, and its k-fold multiple.
struct AlphaG {
    Rat value;
    Rat k_fold;
};
AlphaG alpha_g(const NodalCurve& curve, long long rank, long long degree, long long k);

// Where (on alpha >= 0) a candidate's alpha-slope strictly exceeds the
// system's.
enum class Region { kNowhere, kEverywhere, kBelowWall, kAboveWall };

struct SlopeComparison {
    Region exceeds = Region::kNowhere;
    std::optional<Rat> wall;      // tie point in [0, inf); absent for parallel slopes
    bool tie_everywhere = false;  // slopes agree for every alpha
};

SlopeComparison compare_slopes(const SystemType& sys, const SubsystemCandidate& cand,
                               const NodalCurve& curve);
std::optional<Rat> wall_for_candidate(const SystemType& sys, const SubsystemCandidate& cand,
                                      const NodalCurve& curve);

bool exceeds_at(const SlopeComparison& cmp, const Rat& alpha);
bool ties_at(const SlopeComparison& cmp, const Rat& alpha);

// Section-density shape test for proper subobjects.
struct StarClassification {
    bool density_drop = false;        // h/wrank(F) <  k/wrank(E)
    bool tie_strict_slope = false;    // density tie and wslope(F) <  wslope(E)
    bool tie_weak_slope = false;      // density tie and wslope(F) <= wslope(E)
    bool satisfied = false;           // density_drop or the selected tie case
};
StarClassification property_star(const SystemType& sys, const SubsystemCandidate& cand,
                                 const NodalCurve& curve, bool strict);

// h/wrank(F) > k/wrank(E): the candidate destabilizes every large alpha.
bool strong_instability_check(const SystemType& sys, const SubsystemCandidate& cand,
                              const NodalCurve& curve);

// Enumeration box for numerical subsystem candidates.
struct CandidateBounds {
    std::optional<std::vector<long long>> degree_floor;  // per component; default all 0
    std::optional<std::vector<long long>> degree_ceil;   // default: the system's degrees
    std::optional<long long> max_sections;               // default: k (always clamped to k)
    std::uint64_t max_candidates = 100000000;            // enumeration cap
    int workers = 1;
    int max_witnesses = 64;  // retained per wall and per summary list
};

// Closed-form candidate count for the box (no enumeration). Throws
// BoundsError when the box is empty or the count exceeds the cap.
std::uint64_t count_candidates(const SystemType& sys, const NodalCurve& curve,
                               const CandidateBounds& bounds = {});

// Streams every candidate in deterministic lexicographic order
// (multirank, degrees, gluings, sections); returns the total visited.
std::uint64_t enumerate_candidates(
    const SystemType& sys, const NodalCurve& curve, const CandidateBounds& bounds,
    const std::function<void(const SubsystemCandidate&, std::uint64_t)>& visit);

// Serialized witness for report output.
struct CandidateRef {
    std::uint64_t index = 0;  // position in enumeration order
    std::vector<long long> multirank;
    std::vector<long long> degrees;
    std::vector<long long> gluings;
    long long sections = 0;
    long long chi = 0;
    Rat wrank;
    Rat wdeg;
};

enum class Side { kBelow, kAbove };

struct WallWitness {
    CandidateRef cand;
    Side side = Side::kBelow;
};

struct WallEntry {
    Rat alpha;
    std::vector<WallWitness> witnesses;  // lowest enumeration indices first
    std::uint64_t witness_count = 0;     // total, including omitted ones
    std::uint64_t below_count = 0;
    std::uint64_t above_count = 0;
    bool destabilized_at_wall = false;   // some other candidate strictly exceeds here
};

struct ChamberEntry {
    Rat lo;
    std::optional<Rat> hi;  // absent for the unbounded chamber
    Rat sample;             // interior point used for reporting
    bool destabilized = false;
    std::optional<CandidateRef> witness;
};

struct WallReport {
    std::uint64_t candidate_count = 0;
    std::vector<WallEntry> walls;
    std::vector<ChamberEntry> chambers;
    std::optional<Rat> alpha_g_value;  // absent when k = 0 or multirank is not uniform
    std::optional<Rat> k_alpha_g;
    std::optional<Rat> max_wall;
    std::optional<bool> stabilizes_beyond_threshold;  // every wall <= k*alpha_g
    std::vector<CandidateRef> always_exceeding;
    std::uint64_t always_exceeding_count = 0;
    std::vector<CandidateRef> everywhere_tied;
    std::uint64_t everywhere_tied_count = 0;
    std::vector<CandidateRef> strongly_unstable;
    std::uint64_t strongly_unstable_count = 0;
    bool threshold_bound_checked = false;  // wall <= k*alpha_g asserted over the whole box
    std::vector<std::string> notes;
    // effective box, echoed for reproducibility
    std::vector<long long> floor_used;
    std::vector<long long> ceil_used;
    long long max_sections_used = 0;
    std::uint64_t max_candidates_used = 0;
    int workers_used = 1;
};

WallReport walls(const SystemType& sys, const NodalCurve& curve,
                 const CandidateBounds& bounds = {});

// Verdict of the numerical semistability test at a fixed alpha >= 0.
struct PointCheck {
    Rat alpha;
    std::string verdict;  // "destabilized" | "on-wall" | "no-numerical-destabilizer"
    std::optional<CandidateRef> witness;       // strict destabilizer, lowest index
    std::optional<CandidateRef> tie_witness;   // slope tie, lowest index
    std::uint64_t exceeding_count = 0;
    std::uint64_t tie_count = 0;
    std::uint64_t candidate_count = 0;
};

PointCheck check_at_alpha(const SystemType& sys, const NodalCurve& curve, const Rat& alpha,
                          const CandidateBounds& bounds = {});

// Sheaf-level hypotheses that cannot be decided from numerics alone; the
// caller asserts them and the verdict is conditional on that assertion.
struct StabHypotheses {
    bool generically_generated = false;
    bool restrictions_full_sections = false;  // every restriction keeps all k sections
    bool restrictions_alpha_stable = false;   // stable for alpha > d_i (r - 1) on each component
    bool w_stable = false;                    // used when gcd(r, k) != 1
};

struct StabVerdict {
    bool applicable = false;  // all hypotheses in place
    bool coprime = false;     // gcd(r, k) == 1 (checked, not assumed)
    std::optional<Rat> threshold;  // k * alpha_g when applicable
    std::vector<std::string> missing;  // failed hypotheses, by name
    std::string statement;
};

StabVerdict stability_criterion(const SystemType& sys, const NodalCurve& curve,
                                const StabHypotheses& hyp);

// dim V_i >= w_i * k: the section-space dimension a component restriction
// must retain.
bool restriction_dimension_bound(const NodalCurve& curve, int component, long long k,
                                 long long dim_vi);
Rat restriction_dimension_floor(const NodalCurve& curve, int component, long long k);

}  // namespace cohsys
