#include "cohsys/json_io.hpp"

#include <algorithm>

namespace cohsys {

namespace {

const ordered_json& need(const ordered_json& j, const char* key, const char* ctx) {
    if (!j.is_object()) throw ParseError(std::string(ctx) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string(ctx) + ": missing field '" + key + "'");
    return *it;
}

long long as_int(const ordered_json& j, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(std::string(what) + " must be an integer");
    return j.get<long long>();
}

bool as_bool(const ordered_json& j, const char* what) {
    if (!j.is_boolean()) throw ParseError(std::string(what) + " must be a boolean");
    return j.get<bool>();
}

std::vector<long long> as_int_array(const ordered_json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
    std::vector<long long> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_int(v, what));
    return out;
}

ordered_json side_str(Side s) { return s == Side::kBelow ? "below" : "above"; }

ordered_json witness_block(const std::vector<CandidateRef>& refs, std::uint64_t total) {
    ordered_json out;
    out["count"] = total;
    ordered_json arr = ordered_json::array();
    for (const auto& r : refs) arr.push_back(candidate_json(r));
    out["witnesses"] = std::move(arr);
    out["witnesses_omitted"] = total - refs.size();
    return out;
}

}  // namespace

NodalCurve parse_curve(const ordered_json& j, const BuildOptions& opts, int max_components) {
    const auto& comps = need(j, "components", "curve");
    if (!comps.is_array() || comps.empty())
        throw ParseError("curve: 'components' must be a nonempty array");
    if (static_cast<int>(comps.size()) > max_components)
        throw BoundsError("curve: more than " + std::to_string(max_components) +
                          " components are not supported here");
    const int n = static_cast<int>(comps.size());
    std::vector<long long> genera(n, -1);
    std::vector<char> seen(n, 0);
    for (const auto& c : comps) {
        long long id = as_int(need(c, "id", "curve component"), "curve: component 'id'");
        long long g = as_int(need(c, "genus", "curve component"), "curve: component 'genus'");
        if (id < 1 || id > n)
            throw ParseError("curve: component ids must be exactly 1.." + std::to_string(n));
        if (seen[id - 1]) throw ParseError("curve: duplicate component id " + std::to_string(id));
        seen[id - 1] = 1;
        genera[id - 1] = g;
    }

    const auto& ej = need(j, "edges", "curve");
    if (!ej.is_array()) throw ParseError("curve: 'edges' must be an array of [i, j] pairs");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : ej) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("curve: each edge must be a pair [i, j]");
        long long u = as_int(e[0], "curve: edge endpoint");
        long long v = as_int(e[1], "curve: edge endpoint");
        if (u < 1 || u > n || v < 1 || v > n)
            throw ParseError("curve: edge endpoints must be component ids in 1.." + std::to_string(n));
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }

    std::vector<long long> ample = as_int_array(need(j, "ample_degrees", "curve"),
                                                "curve: 'ample_degrees'");
    return NodalCurve::build(std::move(genera), std::move(edges), std::move(ample), opts);
}

SheafClass parse_sheaf(const ordered_json& j, const NodalCurve& curve) {
    std::vector<long long> mr = as_int_array(need(j, "multirank", "sheaf"), "sheaf: 'multirank'");
    std::vector<long long> dg = as_int_array(need(j, "degrees", "sheaf"), "sheaf: 'degrees'");
    std::vector<long long> gl = as_int_array(need(j, "gluings", "sheaf"), "sheaf: 'gluings'");
    bool lf = as_bool(need(j, "locally_free", "sheaf"), "sheaf: 'locally_free'");
    return make_sheaf_class(curve, std::move(mr), std::move(dg), std::move(gl), lf);
}

SystemType parse_system(const ordered_json& j, const NodalCurve& curve) {
    SystemType sys;
    sys.sheaf = parse_sheaf(j, curve);
    sys.k = as_int(need(j, "k", "system"), "system: 'k'");
    if (sys.k < 0) throw ValidationError("system: k must be >= 0");
    return sys;
}

LineSystemType parse_line_system(const ordered_json& j, const NodalCurve& curve) {
    LineSystemType ls;
    ls.degrees = as_int_array(need(j, "degrees", "line system"), "line system: 'degrees'");
    ls.k = as_int(need(j, "k", "line system"), "line system: 'k'");
    ls.generated = as_bool(need(j, "generated", "line system"), "line system: 'generated'");
    const auto& rz = need(j, "R_zero", "line system");
    if (!rz.is_array()) throw ParseError("line system: 'R_zero' must be an array of booleans");
    for (const auto& v : rz) ls.r_zero.push_back(as_bool(v, "line system: 'R_zero'"));
    if (ls.degrees.size() != static_cast<std::size_t>(curve.component_count()) ||
        ls.r_zero.size() != static_cast<std::size_t>(curve.component_count()))
        throw ShapeError("line system: array lengths must match the component count");
    return ls;
}

Subcurve parse_subcurve(const ordered_json& j, const NodalCurve& curve) {
    std::vector<long long> ids = as_int_array(j, "subcurve components");
    Subcurve b;
    for (long long id : ids) {
        if (id < 1 || id > curve.component_count())
            throw ParseError("subcurve: component ids must lie in 1.." +
                             std::to_string(curve.component_count()));
        b.members.push_back(static_cast<int>(id - 1));
    }
    std::sort(b.members.begin(), b.members.end());
    b.members.erase(std::unique(b.members.begin(), b.members.end()), b.members.end());
    return b;
}

ordered_json curve_input_json(const NodalCurve& curve) {
    ordered_json out;
    ordered_json comps = ordered_json::array();
    for (int i = 0; i < curve.component_count(); ++i)
        comps.push_back({{"id", i + 1}, {"genus", curve.genus(i)}});
    out["components"] = std::move(comps);
    ordered_json edges = ordered_json::array();
    for (auto [u, v] : curve.edges()) edges.push_back({u + 1, v + 1});
    out["edges"] = std::move(edges);
    out["ample_degrees"] = curve.ample_degrees();
    return out;
}

ordered_json system_input_json(const SystemType& sys) {
    ordered_json out;
    out["multirank"] = sys.sheaf.multirank;
    out["degrees"] = sys.sheaf.degrees;
    out["gluings"] = sys.sheaf.gluings;
    out["locally_free"] = sys.sheaf.locally_free;
    out["k"] = sys.k;
    return out;
}

std::string rat_str(const Rat& r) { return r.str(); }

ordered_json curve_report_json(const NodalCurve& curve) {
    ordered_json out;
    out["components"] = curve.component_count();
    out["nodes"] = curve.node_count();
    out["arithmetic_genus"] = curve.arithmetic_genus();
    out["chi_structure_sheaf"] = curve.chi_structure_sheaf();
    out["polarization_total"] = curve.polarization().total;
    ordered_json comps = ordered_json::array();
    for (int i = 0; i < curve.component_count(); ++i) {
        ordered_json c;
        c["id"] = i + 1;
        c["genus"] = curve.genus(i);
        c["ample_degree"] = curve.ample_degree(i);
        c["weight"] = rat_str(curve.polarization().weights[i]);
        c["nodes_on_component"] = curve.vertex_degree(i);
        comps.push_back(std::move(c));
    }
    out["component_data"] = std::move(comps);
    if (curve.component_count() >= 2) out["leaf_component"] = curve.leaf_component() + 1;
    else out["leaf_component"] = nullptr;
    return out;
}

ordered_json subcurve_report_json(const NodalCurve& curve, const Subcurve& b,
                                  const SubcurveData& data) {
    ordered_json out;
    ordered_json mem = ordered_json::array();
    for (int i : b.members) mem.push_back(i + 1);
    out["members"] = std::move(mem);
    out["genus"] = data.genus;
    out["connected_pieces"] = data.connected_pieces;
    ordered_json bn = ordered_json::array();
    for (int e : data.boundary_nodes) {
        auto [u, v] = curve.edges()[e];
        bn.push_back({u + 1, v + 1});
    }
    out["boundary_nodes"] = std::move(bn);
    out["boundary_node_count"] = data.boundary_nodes.size();
    if (data.complement) {
        ordered_json cm = ordered_json::array();
        for (int i : data.complement->members) cm.push_back(i + 1);
        out["complement"] = std::move(cm);
        out["complement_genus"] = data.complement_genus;
        out["genus_additivity_holds"] =
            curve.arithmetic_genus() ==
            data.genus + data.complement_genus +
                static_cast<long long>(data.boundary_nodes.size()) - 1;
    } else {
        out["complement"] = nullptr;
        out["complement_genus"] = nullptr;
        out["genus_additivity_holds"] = nullptr;
    }
    return out;
}

ordered_json invariants_report_json(const NodalCurve& curve, const SheafClass& sheaf) {
    ordered_json out;
    out["multirank"] = sheaf.multirank;
    out["degrees"] = sheaf.degrees;
    out["gluings"] = sheaf.gluings;
    out["locally_free"] = sheaf.locally_free;
    ordered_json chis = ordered_json::array();
    for (int i = 0; i < curve.component_count(); ++i)
        chis.push_back(chi_component(curve.genus(i), sheaf.multirank[i], sheaf.degrees[i]));
    out["chi_components"] = std::move(chis);
    out["total_gluing"] = total_gluing(sheaf);
    out["chi"] = chi_total(sheaf, curve);
    ChiBounds cb = chi_bounds(sheaf, curve);
    out["chi_lower_bound"] = cb.lower;
    out["chi_upper_bound"] = cb.upper;
    out["chi_bounds_are_equalities_when_locally_free"] = cb.locally_free_equality;
    Rat wr = w_rank(sheaf, curve);
    out["wrank"] = rat_str(wr);
    out["wdeg"] = rat_str(w_deg(sheaf, curve));
    if (wr.sgn() > 0) out["wslope"] = rat_str(w_slope(sheaf, curve));
    else out["wslope"] = nullptr;
    if (sheaf.locally_free) {
        long long sum = 0;
        for (long long d : sheaf.degrees) sum += d;
        out["degree_sum"] = sum;
        out["wdeg_equals_degree_sum"] = w_deg(sheaf, curve) == Rat(sum);
    }
    bool line_bundle = sheaf.locally_free && !sheaf.multirank.empty() && sheaf.multirank[0] == 1;
    if (line_bundle) {
        LineBundleCriteria lc = line_bundle_criteria(curve, sheaf.degrees);
        ordered_json c;
        c["positive"] = lc.positive;
        c["h1_vanishing"] = lc.h1_vanishing;
        c["globally_generated"] = lc.globally_generated;
        out["line_bundle_criteria"] = std::move(c);
    }
    return out;
}

ordered_json candidate_json(const CandidateRef& ref) {
    ordered_json out;
    out["index"] = ref.index;
    out["multirank"] = ref.multirank;
    out["degrees"] = ref.degrees;
    out["gluings"] = ref.gluings;
    out["sections"] = ref.sections;
    out["chi"] = ref.chi;
    out["wrank"] = rat_str(ref.wrank);
    out["wdeg"] = rat_str(ref.wdeg);
    return out;
}

ordered_json wall_report_json(const SystemType& sys, const WallReport& rep) {
    ordered_json out;
    out["system"] = system_input_json(sys);
    ordered_json box;
    box["degree_floor"] = rep.floor_used;
    box["degree_ceil"] = rep.ceil_used;
    box["max_sections"] = rep.max_sections_used;
    box["max_candidates"] = rep.max_candidates_used;
    out["box"] = std::move(box);
    out["candidate_count"] = rep.candidate_count;
    out["alpha_g"] = rep.alpha_g_value ? ordered_json(rat_str(*rep.alpha_g_value)) : ordered_json();
    out["k_alpha_g"] = rep.k_alpha_g ? ordered_json(rat_str(*rep.k_alpha_g)) : ordered_json();
    out["max_wall"] = rep.max_wall ? ordered_json(rat_str(*rep.max_wall)) : ordered_json();
    out["stabilizes_beyond_k_alpha_g"] =
        rep.stabilizes_beyond_threshold ? ordered_json(*rep.stabilizes_beyond_threshold)
                                        : ordered_json();
    out["threshold_bound_checked"] = rep.threshold_bound_checked;

    ordered_json walls = ordered_json::array();
    for (const auto& w : rep.walls) {
        ordered_json e;
        e["alpha"] = rat_str(w.alpha);
        e["witness_count"] = w.witness_count;
        e["below_count"] = w.below_count;
        e["above_count"] = w.above_count;
        e["at_wall"] = w.destabilized_at_wall ? "destabilized" : "on-wall";
        ordered_json ws = ordered_json::array();
        for (const auto& wit : w.witnesses) {
            ordered_json one = candidate_json(wit.cand);
            one["side"] = side_str(wit.side);
            ws.push_back(std::move(one));
        }
        e["witnesses"] = std::move(ws);
        e["witnesses_omitted"] = w.witness_count - w.witnesses.size();
        walls.push_back(std::move(e));
    }
    out["walls"] = std::move(walls);

    ordered_json chambers = ordered_json::array();
    for (const auto& ch : rep.chambers) {
        ordered_json e;
        e["lo"] = rat_str(ch.lo);
        e["hi"] = ch.hi ? ordered_json(rat_str(*ch.hi)) : ordered_json();
        e["sample"] = rat_str(ch.sample);
        e["verdict"] = ch.destabilized ? "destabilized" : "no-numerical-destabilizer";
        e["witness"] = ch.witness ? candidate_json(*ch.witness) : ordered_json();
        chambers.push_back(std::move(e));
    }
    out["chambers"] = std::move(chambers);

    out["always_destabilizing"] = witness_block(rep.always_exceeding, rep.always_exceeding_count);
    out["everywhere_tied"] = witness_block(rep.everywhere_tied, rep.everywhere_tied_count);
    out["strongly_unstable"] = witness_block(rep.strongly_unstable, rep.strongly_unstable_count);
    out["notes"] = rep.notes;
    return out;
}

ordered_json point_check_json(const SystemType& sys, const PointCheck& pc) {
    ordered_json out;
    out["system"] = system_input_json(sys);
    out["alpha"] = rat_str(pc.alpha);
    out["verdict"] = pc.verdict;
    out["witness"] = pc.witness ? candidate_json(*pc.witness) : ordered_json();
    out["tie_witness"] = pc.tie_witness ? candidate_json(*pc.tie_witness) : ordered_json();
    out["exceeding_count"] = pc.exceeding_count;
    out["tie_count"] = pc.tie_count;
    out["candidate_count"] = pc.candidate_count;
    return out;
}

ordered_json alpha_g_report_json(long long rank, long long degree, long long k, const AlphaG& ag) {
    ordered_json out;
    out["rank"] = rank;
    out["degree"] = degree;
    out["k"] = k;
    out["alpha_g"] = rat_str(ag.value);
    out["k_alpha_g"] = rat_str(ag.k_fold);
    return out;
}

ordered_json star_report_json(const StarClassification& sc, bool strict) {
    ordered_json out;
    out["strict"] = strict;
    out["density_drop"] = sc.density_drop;
    out["tie_strict_slope"] = sc.tie_strict_slope;
    out["tie_weak_slope"] = sc.tie_weak_slope;
    out["satisfied"] = sc.satisfied;
    return out;
}

ordered_json stab_verdict_json(const StabVerdict& v) {
    ordered_json out;
    out["applicable"] = v.applicable;
    out["coprime"] = v.coprime;
    out["threshold"] = v.threshold ? ordered_json(rat_str(*v.threshold)) : ordered_json();
    out["missing_hypotheses"] = v.missing;
    out["statement"] = v.statement;
    return out;
}

ordered_json dual_span_report_json(const LineSystemType& ls, const DualSpanResult& res) {
    ordered_json out;
    ordered_json in;
    in["degrees"] = ls.degrees;
    in["k"] = ls.k;
    in["generated"] = ls.generated;
    in["R_zero"] = ls.r_zero;
    out["input"] = std::move(in);
    out["rank"] = res.system.sheaf.multirank.empty() ? 0 : res.system.sheaf.multirank[0];
    out["system"] = system_input_json(res.system);
    out["chi"] = res.chi;
    out["wdeg"] = rat_str(res.wdeg);
    out["stability_threshold"] = rat_str(res.stability_threshold);
    out["conditionally_stable"] = res.conditionally_stable;
    ordered_json rs = ordered_json::array();
    for (const auto& r : res.restrictions) {
        ordered_json e;
        e["component"] = r.component + 1;
        e["verdict"] = r.stable ? "stable-above-threshold" : "unstable-at-every-alpha";
        e["alpha_threshold"] =
            r.alpha_threshold ? ordered_json(rat_str(*r.alpha_threshold)) : ordered_json();
        ordered_json ws = ordered_json::array();
        for (const auto& w : r.witnesses) {
            ordered_json one;
            one["sub_rank"] = w.sub_rank;
            one["degree"] = w.degree;
            one["sections"] = w.sections;
            one["verified"] = w.verified;
            ws.push_back(std::move(one));
        }
        e["witnesses"] = std::move(ws);
        rs.push_back(std::move(e));
    }
    out["restrictions"] = std::move(rs);
    auto [degrees, k] = dual_span_inverse(res);
    ordered_json inv;
    inv["degrees"] = degrees;
    inv["k"] = k;
    out["inverse"] = std::move(inv);
    return out;
}

ordered_json bn_report_json(long long rank, long long degree, long long k, long long beta) {
    ordered_json out;
    out["rank"] = rank;
    out["degree"] = degree;
    out["k"] = k;
    out["expected_dimension"] = beta;
    return out;
}

ordered_json dims_report_json(const DimensionReport& rep) {
    ordered_json out;
    out["rank"] = rep.rank;
    out["total_degree"] = rep.total_degree;
    out["k"] = rep.k;
    out["dim_x"] = rep.dim_x;
    out["bn_dual"] = rep.bn_dual;
    out["dim_product"] = rep.dim_product;
    out["fiber_dim"] = rep.fiber_dim;
    out["section_space_dim"] = rep.section_space_dim;
    out["grassmann_fiber"] = rep.grassmann_fiber;
    out["identity_product_fiber"] = rep.identity_product_fiber;
    out["identity_grassmann"] = rep.identity_grassmann;
    out["identity_bn_symmetry"] = rep.identity_bn_symmetry;
    out["degree_hypotheses_ok"] = rep.degree_hypotheses_ok;
    out["nonemptiness_ok"] = rep.nonemptiness_ok;
    return out;
}

ordered_json verify_report_json(const VerifyReport& rep) {
    ordered_json out;
    out["seed"] = rep.seed;
    out["ok"] = rep.ok;
    ordered_json suites = ordered_json::array();
    for (const auto& s : rep.suites) {
        ordered_json js;
        js["name"] = s.name;
        js["pass"] = s.failures == 0;
        js["trials"] = s.trials;
        js["checks"] = s.checks;
        js["failures"] = s.failures;
        js["redraws"] = s.redraws;
        js["seconds"] = s.seconds;
        js["messages"] = s.messages;
        js["counterexample_files"] = s.counterexample_files;
        suites.push_back(std::move(js));
    }
    out["suites"] = std::move(suites);
    return out;
}

}  // namespace cohsys
