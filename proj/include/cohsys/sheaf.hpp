#pragma once

#include <vector>

#include "cohsys/curve.hpp"
#include "cohsys/rational.hpp"

namespace cohsys {

// Numerical class of a depth-1 sheaf on a curve of compact type: ranks and
// degrees of the component restrictions plus the gluing rank at each node
// (in curve edge order).
struct SheafClass {
    std::vector<long long> multirank;
    std::vector<long long> degrees;
    std::vector<long long> gluings;
    bool locally_free = false;
};

// Validates a class against a curve and normalizes degrees on zero-rank
// components to 0.
SheafClass make_sheaf_class(const NodalCurve& curve, std::vector<long long> multirank,
                            std::vector<long long> degrees, std::vector<long long> gluings,
                            bool locally_free);

// Locally free class of uniform rank r: all gluings equal r.
SheafClass locally_free_class(const NodalCurve& curve, long long rank,
                              std::vector<long long> degrees);

// Euler characteristic of a rank r, degree d sheaf on a smooth genus g curve.
long long chi_component(long long genus, long long rank, long long degree);

// Sum of the gluing ranks over the nodes.
long long total_gluing(const SheafClass& sheaf);

long long chi_total(const SheafClass& sheaf, const NodalCurve& curve);

Rat w_rank(const SheafClass& sheaf, const NodalCurve& curve);
Rat w_deg(const SheafClass& sheaf, const NodalCurve& curve);
Rat w_slope(const SheafClass& sheaf, const NodalCurve& curve);

// General bounds on chi for given multirank/degrees over all gluings, and
// the locally free specialization where they collapse to equalities.
struct ChiBounds {
    long long lower = 0;          // all gluings maximal
    long long upper = 0;          // all gluings zero
    bool locally_free_equality = false;
};
ChiBounds chi_bounds(const SheafClass& sheaf, const NodalCurve& curve);

// Degree thresholds guaranteeing vanishing of higher cohomology / global
// generation for a multidegree line bundle, checked per component.
struct LineBundleCriteria {
    bool positive = false;              // d_i > 0 on every component
    bool h1_vanishing = false;          // d_i >= 2 g_i on every component
    bool globally_generated = false;    // d_i >= 2 g_i + 1 on every component
};
LineBundleCriteria line_bundle_criteria(const NodalCurve& curve,
                                        const std::vector<long long>& degrees);

// Propagation of section vanishing across components: with every component
// flag true and a locally free class, sections vanish globally. Requires
// locally_free; throws HypothesisError otherwise.
bool h0_vanishing_propagation(const SheafClass& sheaf, const NodalCurve& curve,
                              const std::vector<bool>& component_h0_zero);

}  // namespace cohsys
