#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cohsys/curve.hpp"
#include "cohsys/stability.hpp"

namespace cohsys {

// Generated line-bundle system (L, W) with dim W = k, recorded through its
// component degrees; r_zero flags the components where the evaluation kernel
// has no twisted sections.
struct LineSystemType {
    std::vector<long long> degrees;
    long long k = 0;
    bool generated = false;
    std::vector<bool> r_zero;
};

struct DestabWitness {
    long long sub_rank = 0;   // s
    long long degree = 0;     // d_i
    long long sections = 0;   // s + 1
    bool verified = false;    // slope inequality checked exactly
};

struct ComponentRestrictionVerdict {
    int component = 0;                   // 0-based
    bool stable = false;                 // above the threshold; else unstable at every alpha
    std::optional<Rat> alpha_threshold;  // (r - 1) * d_i when stable
    std::vector<DestabWitness> witnesses;
};

struct DualSpanResult {
    SystemType system;        // locally free, uniform rank k - 1, same degrees
    long long chi = 0;
    Rat wdeg;
    Rat stability_threshold;  // (rank + 1) * alpha_g of the transformed system
    bool conditionally_stable = false;  // generated and every r_zero flag set
    std::vector<ComponentRestrictionVerdict> restrictions;
};

// Dual-span transform of a generated line-bundle system: rank k-1, the same
// component degrees, full gluings, and the dual section space.
DualSpanResult dual_span(const LineSystemType& ls, const NodalCurve& curve);

// Recovers the line-system data from a transformed system (round trip).
std::pair<std::vector<long long>, long long> dual_span_inverse(const DualSpanResult& res);

ComponentRestrictionVerdict restriction_dual_span_verdict(const LineSystemType& ls, int component,
                                                          const NodalCurve& curve);

// Per-component degree thresholds d_i >= max(2 g_i + 1, g_i + r); with these
// a general section space is generated with vanishing twisted kernels.
struct DegreeHypotheses {
    std::vector<bool> component_ok;
    bool all = false;
};
DegreeHypotheses degree_hypotheses(const NodalCurve& curve, const std::vector<long long>& degrees,
                                   long long rank);

// Total-degree threshold d >= max(2 pa + gamma, pa + r gamma) guaranteeing a
// nonempty stable locus above the alpha threshold.
bool nonemptiness_threshold(const NodalCurve& curve, long long rank, long long degree);

// Expected dimension r^2 (pa - 1) + 1 - k (k - d + r (pa - 1)).
long long brill_noether(const NodalCurve& curve, long long rank, long long degree, long long k);

struct DimensionReport {
    long long rank = 0;
    long long total_degree = 0;
    long long k = 0;              // rank + 1
    long long dim_x = 0;          // expected dimension on the line-system side
    long long bn_dual = 0;        // expected dimension on the transformed side
    long long dim_product = 0;    // product-of-components contribution
    long long fiber_dim = 0;      // gluing fiber dimension
    long long section_space_dim = 0;
    long long grassmann_fiber = 0;
    bool identity_product_fiber = false;  // dim_x == dim_product + fiber_dim
    bool identity_grassmann = false;      // fiber_dim == (k)(section_space - k) form
    bool identity_bn_symmetry = false;    // dim_x == bn_dual
    bool degree_hypotheses_ok = false;
    bool nonemptiness_ok = false;
};

DimensionReport dimension_report(const NodalCurve& curve, long long rank,
                                 const std::vector<long long>& degrees);

}  // namespace cohsys
