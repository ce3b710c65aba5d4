#pragma once

#include <json.hpp>

#include <string>

#include "cohsys/curve.hpp"
#include "cohsys/dual_span.hpp"
#include "cohsys/sheaf.hpp"
#include "cohsys/stability.hpp"
#include "cohsys/verify.hpp"

namespace cohsys {

using ordered_json = nlohmann::ordered_json;

// ---- input schemas (component ids are 1-based on the wire) ----

NodalCurve parse_curve(const ordered_json& j, const BuildOptions& opts, int max_components = 64);
SheafClass parse_sheaf(const ordered_json& j, const NodalCurve& curve);
SystemType parse_system(const ordered_json& j, const NodalCurve& curve);
LineSystemType parse_line_system(const ordered_json& j, const NodalCurve& curve);
Subcurve parse_subcurve(const ordered_json& j, const NodalCurve& curve);

// Re-serializations in the input schema (used for reproducer files).
ordered_json curve_input_json(const NodalCurve& curve);
ordered_json system_input_json(const SystemType& sys);

// ---- report serialization ----

std::string rat_str(const Rat& r);

ordered_json curve_report_json(const NodalCurve& curve);
ordered_json subcurve_report_json(const NodalCurve& curve, const Subcurve& b,
                                  const SubcurveData& data);
ordered_json invariants_report_json(const NodalCurve& curve, const SheafClass& sheaf);
ordered_json candidate_json(const CandidateRef& ref);
ordered_json wall_report_json(const SystemType& sys, const WallReport& rep);
ordered_json point_check_json(const SystemType& sys, const PointCheck& pc);
ordered_json alpha_g_report_json(long long rank, long long degree, long long k, const AlphaG& ag);
ordered_json star_report_json(const StarClassification& sc, bool strict);
ordered_json stab_verdict_json(const StabVerdict& v);
ordered_json dual_span_report_json(const LineSystemType& ls, const DualSpanResult& res);
ordered_json bn_report_json(long long rank, long long degree, long long k, long long beta);
ordered_json dims_report_json(const DimensionReport& rep);
ordered_json verify_report_json(const VerifyReport& rep);

}  // namespace cohsys
