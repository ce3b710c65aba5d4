// cohsys: exact-arithmetic reports on coherent systems over nodal curves of
// compact type. Every numeric field is computed in exact rational arithmetic;
// text and JSON output carry identical values.
#include <CLI11.hpp>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cohsys/curve.hpp"
#include "cohsys/dual_span.hpp"
#include "cohsys/errors.hpp"
#include "cohsys/json_io.hpp"
#include "cohsys/sheaf.hpp"
#include "cohsys/stability.hpp"
#include "cohsys/verify.hpp"

namespace {

using namespace cohsys;

struct Opts {
    std::string curve_path;
    std::string system_path;
    std::string sub_path;
    std::string subcurve_csv;
    std::string degrees_csv;
    std::string alpha_str;
    std::string alpha_max_str;
    std::string suite = "all";
    std::string counterexample_dir = ".";
    long long rank = 0;
    long long degree = 0;
    long long k = 0;
    long long degree_floor = LLONG_MIN;  // sentinel: not set
    std::uint64_t seed = 1;
    std::uint64_t trials = 100;
    int workers = 1;
    bool json = false;
    bool allow_smooth = false;
    bool allow_low_genus = false;
    bool assume_generic = false;
    bool weak = false;
};

// ---- output rendering ----

bool is_scalar(const ordered_json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_str(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool inlineable(const ordered_json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (!is_scalar(e)) return false;
    return true;
}

std::string inline_str(const ordered_json& v) {
    std::string out = "[";
    bool first = true;
    for (const auto& e : v) {
        if (!first) out += ", ";
        out += scalar_str(e);
        first = false;
    }
    return out + "]";
}

void render_text(const ordered_json& j, std::ostream& os, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        std::size_t width = 0;
        for (const auto& [key, v] : j.items())
            if (is_scalar(v) || inlineable(v)) width = std::max(width, key.size());
        for (const auto& [key, v] : j.items()) {
            if (is_scalar(v)) {
                os << pad << key << std::string(width - key.size() + 2, ' ') << scalar_str(v)
                   << "\n";
            } else if (inlineable(v)) {
                os << pad << key << std::string(width - key.size() + 2, ' ') << inline_str(v)
                   << "\n";
            } else {
                os << pad << key << ":\n";
                render_text(v, os, indent + 2);
            }
        }
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) {
            ++i;
            if (is_scalar(v)) {
                os << pad << "- " << scalar_str(v) << "\n";
            } else if (inlineable(v)) {
                os << pad << "- " << inline_str(v) << "\n";
            } else {
                os << pad << "[" << i << "]\n";
                render_text(v, os, indent + 2);
            }
        }
        if (i == 0) os << pad << "(none)\n";
    } else {
        os << pad << scalar_str(j) << "\n";
    }
}

int emit(const ordered_json& j, bool json_mode) {
    if (json_mode)
        std::cout << j.dump(2) << "\n";
    else
        render_text(j, std::cout);
    return 0;
}

// ---- input helpers ----

ordered_json load_json(const std::string& path, const char* what) {
    if (path.empty()) throw ValidationError(std::string(what) + " file is required");
    std::ifstream in(path);
    if (!in) throw ValidationError(std::string(what) + ": cannot open '" + path + "'");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": invalid JSON in '" + path + "': " + e.what());
    }
}

NodalCurve load_curve(const Opts& o) {
    BuildOptions b{o.allow_smooth, o.allow_low_genus};
    return parse_curve(load_json(o.curve_path, "curve"), b);
}

SystemType load_system(const Opts& o, const NodalCurve& curve) {
    return parse_system(load_json(o.system_path, "system"), curve);
}

std::vector<long long> split_ll(const std::string& csv, const char* field) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ValidationError(std::string(field) + ": expected a comma-separated integer list");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ValidationError(std::string(field) + ": empty list");
    return out;
}

Rat parse_nonneg_rat(const std::string& s, const char* field) {
    auto r = Rat::parse(s);
    if (!r) throw ValidationError(std::string(field) + ": expected a rational like '3/4'");
    if (r->sgn() < 0) throw ValidationError(std::string(field) + " must be a nonnegative rational");
    return *r;
}

std::optional<std::uint64_t> env_candidate_cap() {
    const char* s = std::getenv("COHSYS_MAX_CANDIDATES");
    if (s == nullptr || *s == '\0') return std::nullopt;
    std::uint64_t v = 0;
    for (const char* p = s; *p; ++p) {
        if (*p < '0' || *p > '9')
            throw ValidationError("COHSYS_MAX_CANDIDATES must be a positive integer");
        if (v > (UINT64_MAX - static_cast<std::uint64_t>(*p - '0')) / 10)
            throw ValidationError("COHSYS_MAX_CANDIDATES is too large");
        v = v * 10 + static_cast<std::uint64_t>(*p - '0');
    }
    if (v == 0) throw ValidationError("COHSYS_MAX_CANDIDATES must be a positive integer");
    return v;
}

CandidateBounds make_bounds(const Opts& o, const NodalCurve& curve) {
    CandidateBounds b;
    if (o.degree_floor != LLONG_MIN)
        b.degree_floor =
            std::vector<long long>(static_cast<std::size_t>(curve.component_count()),
                                   o.degree_floor);
    if (o.workers < 1) throw ValidationError("workers must be >= 1");
    b.workers = o.workers;
    if (auto cap = env_candidate_cap()) b.max_candidates = *cap;
    return b;
}

// ---- subcommand bodies ----

int run_genus(const Opts& o) {
    NodalCurve curve = load_curve(o);
    ordered_json rep = curve_report_json(curve);
    if (!o.subcurve_csv.empty()) {
        ordered_json ids = ordered_json::array();
        for (long long v : split_ll(o.subcurve_csv, "subcurve")) ids.push_back(v);
        Subcurve b = parse_subcurve(ids, curve);
        rep["subcurve"] = subcurve_report_json(curve, b, subcurve_data(curve, b));
    }
    return emit(rep, o.json);
}

int run_invariants(const Opts& o) {
    NodalCurve curve = load_curve(o);
    ordered_json j = load_json(o.system_path, "system");
    SheafClass sheaf = j.contains("k") ? parse_system(j, curve).sheaf : parse_sheaf(j, curve);
    return emit(invariants_report_json(curve, sheaf), o.json);
}

int run_check(const Opts& o) {
    // validate alpha before touching any file so a bad value is reported
    // even when the file options are missing
    Rat alpha = parse_nonneg_rat(o.alpha_str, "alpha");
    NodalCurve curve = load_curve(o);
    SystemType sys = load_system(o, curve);
    PointCheck pc = check_at_alpha(sys, curve, alpha, make_bounds(o, curve));
    return emit(point_check_json(sys, pc), o.json);
}

int run_walls(const Opts& o) {
    NodalCurve curve = load_curve(o);
    SystemType sys = load_system(o, curve);
    WallReport rep = walls(sys, curve, make_bounds(o, curve));
    if (!o.alpha_max_str.empty()) {
        Rat amax = parse_nonneg_rat(o.alpha_max_str, "alpha-max");
        std::size_t nw = rep.walls.size();
        rep.walls.erase(std::remove_if(rep.walls.begin(), rep.walls.end(),
                                       [&](const WallEntry& w) { return w.alpha > amax; }),
                        rep.walls.end());
        std::size_t nc = rep.chambers.size();
        rep.chambers.erase(std::remove_if(rep.chambers.begin(), rep.chambers.end(),
                                          [&](const ChamberEntry& c) { return c.lo >= amax; }),
                           rep.chambers.end());
        std::size_t ow = nw - rep.walls.size();
        std::size_t oc = nc - rep.chambers.size();
        if (ow > 0 || oc > 0)
            rep.notes.push_back("display: " + std::to_string(ow) + " wall(s) and " +
                                std::to_string(oc) + " chamber(s) above alpha-max " + amax.str() +
                                " omitted; summary fields still cover the full range");
    }
    return emit(wall_report_json(sys, rep), o.json);
}

int run_alpha_g(const Opts& o) {
    NodalCurve curve = load_curve(o);
    AlphaG ag = alpha_g(curve, o.rank, o.degree, o.k);
    return emit(alpha_g_report_json(o.rank, o.degree, o.k, ag), o.json);
}

int run_star(const Opts& o) {
    NodalCurve curve = load_curve(o);
    SystemType sys = load_system(o, curve);
    SystemType sub = parse_system(load_json(o.sub_path, "sub"), curve);
    SubsystemCandidate cand{sub.sheaf, sub.k};
    StarClassification sc = property_star(sys, cand, curve, !o.weak);
    return emit(star_report_json(sc, !o.weak), o.json);
}

int run_dual_span(const Opts& o) {
    NodalCurve curve = load_curve(o);
    LineSystemType ls = parse_line_system(load_json(o.system_path, "system"), curve);
    if (o.assume_generic && ls.k >= 2) {
        DegreeHypotheses h = degree_hypotheses(curve, ls.degrees, ls.k - 1);
        if (h.all) {
            ls.generated = true;
            ls.r_zero.assign(static_cast<std::size_t>(curve.component_count()), true);
        }
    }
    DualSpanResult res = dual_span(ls, curve);
    return emit(dual_span_report_json(ls, res), o.json);
}

int run_bn(const Opts& o) {
    NodalCurve curve = load_curve(o);
    long long beta = brill_noether(curve, o.rank, o.degree, o.k);
    if (o.json) return emit(bn_report_json(o.rank, o.degree, o.k, beta), true);
    std::cout << beta << "\n";
    return 0;
}

int run_dims(const Opts& o) {
    NodalCurve curve = load_curve(o);
    long long rank = 0;
    std::vector<long long> degrees;
    if (!o.system_path.empty()) {
        LineSystemType ls = parse_line_system(load_json(o.system_path, "system"), curve);
        rank = ls.k - 1;
        degrees = ls.degrees;
    } else {
        if (o.rank == 0 || o.degrees_csv.empty())
            throw ValidationError("dims needs either --system or both --rank and --degrees");
        rank = o.rank;
        degrees = split_ll(o.degrees_csv, "degrees");
        if (degrees.size() != static_cast<std::size_t>(curve.component_count()))
            throw ValidationError("degrees: expected one entry per component (" +
                                  std::to_string(curve.component_count()) + ")");
    }
    return emit(dims_report_json(dimension_report(curve, rank, degrees)), o.json);
}

int run_verify(const Opts& o) {
    TrialConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.suite = o.suite;
    cfg.counterexample_dir = o.counterexample_dir;
    VerifyReport rep = cohsys::run_verify(cfg);
    if (o.json) {
        emit(verify_report_json(rep), true);
    } else {
        for (const auto& s : rep.suites) {
            std::string name = s.name;
            name.resize(std::max<std::size_t>(name.size(), 24), ' ');
            std::cout << name << (s.failures == 0 ? " PASS" : " FAIL") << "  trials=" << s.trials
                      << " checks=" << s.checks << " failures=" << s.failures
                      << " redraws=" << s.redraws << "\n";
            for (const auto& m : s.messages) std::cout << "    " << m << "\n";
            for (const auto& f : s.counterexample_files)
                std::cout << "    counterexample: " << f << "\n";
        }
        std::cout << (rep.ok ? "ok" : "FAILED") << " (seed " << rep.seed << ")\n";
    }
    return rep.ok ? 0 : 1;
}

// Long options whose value can begin with '-': fold the value into the same
// token so the parser never mistakes it for a flag.
std::vector<std::string> preprocess_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const std::vector<std::string> fold_long = {"--alpha", "--alpha-max", "--degree", "--degrees",
                                               "--degree-floor"};
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "-d") {
            args[i] += args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        } else if (std::find(fold_long.begin(), fold_long.end(), args[i]) != fold_long.end()) {
            args[i] += "=" + args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic analysis of coherent systems on nodal curves of compact type"};
    app.require_subcommand(1);
    Opts o;

    // file options are validated in the handlers (with field-naming errors and
    // exit code 2) so value checks like a negative --alpha can fire first
    auto add_curve_flags = [&](CLI::App* sub) {
        sub->add_option("--curve", o.curve_path, "curve JSON file");
        sub->add_flag("--json", o.json, "emit the report as JSON");
        sub->add_flag("--allow-smooth", o.allow_smooth, "accept a single-component curve");
        sub->add_flag("--allow-low-genus", o.allow_low_genus, "accept components of genus 0 or 1");
    };

    CLI::App* sc_genus = app.add_subcommand("genus", "arithmetic-genus and weight report");
    add_curve_flags(sc_genus);
    sc_genus->add_option("--subcurve", o.subcurve_csv,
                         "comma-separated component ids of a subcurve to analyze");

    CLI::App* sc_inv = app.add_subcommand("invariants", "chi, w-rank, w-degree, w-slope report");
    add_curve_flags(sc_inv);
    sc_inv->add_option("--system", o.system_path, "sheaf or system JSON file");

    CLI::App* sc_check = app.add_subcommand("check", "numerical verdict at a fixed alpha");
    add_curve_flags(sc_check);
    sc_check->add_option("--system", o.system_path, "system JSON file");
    sc_check->add_option("--alpha", o.alpha_str, "evaluation point, a nonnegative rational p/q");
    sc_check->add_option("--degree-floor", o.degree_floor,
                         "lower bound applied to every candidate degree (default 0)");
    sc_check->add_option("--workers", o.workers, "worker threads for the enumeration");

    CLI::App* sc_walls = app.add_subcommand("walls", "wall-and-chamber report over alpha >= 0");
    add_curve_flags(sc_walls);
    sc_walls->add_option("--system", o.system_path, "system JSON file");
    sc_walls->add_option("--alpha-max", o.alpha_max_str,
                         "display filter: omit walls/chambers beyond this alpha");
    sc_walls->add_option("--degree-floor", o.degree_floor,
                         "lower bound applied to every candidate degree (default 0)");
    sc_walls->add_option("--workers", o.workers, "worker threads for the enumeration");

    CLI::App* sc_ag = app.add_subcommand("alpha-g", "parameter threshold alpha_g and k*alpha_g");
    add_curve_flags(sc_ag);
    sc_ag->add_option("-r,--rank", o.rank, "rank")->required();
    sc_ag->add_option("-d,--degree", o.degree, "total degree")->required();
    sc_ag->add_option("-k,--sections", o.k, "section-space dimension")->required();

    CLI::App* sc_star = app.add_subcommand("star", "section-density shape test for a candidate");
    add_curve_flags(sc_star);
    sc_star->add_option("--system", o.system_path, "system JSON file");
    sc_star->add_option("--sub", o.sub_path, "candidate subsystem JSON file (k = its sections)");
    sc_star->add_flag("--weak", o.weak, "use the weak tie-breaking variant");

    CLI::App* sc_ds = app.add_subcommand("dual-span", "dual-span transform of a line system");
    add_curve_flags(sc_ds);
    sc_ds->add_option("--system", o.system_path, "line-system JSON file");
    sc_ds->add_flag("--assume-generic", o.assume_generic,
                    "assert generated + vanishing kernels when the degree thresholds hold");

    CLI::App* sc_bn = app.add_subcommand("bn", "expected dimension of the line-system locus");
    add_curve_flags(sc_bn);
    sc_bn->add_option("-r,--rank", o.rank, "rank")->required();
    sc_bn->add_option("-d,--degree", o.degree, "total degree")->required();
    sc_bn->add_option("-k,--sections", o.k, "section-space dimension")->required();

    CLI::App* sc_dims = app.add_subcommand("dims", "dimension identities report");
    add_curve_flags(sc_dims);
    sc_dims->add_option("--system", o.system_path, "line-system JSON file (rank = k - 1)");
    sc_dims->add_option("-r,--rank", o.rank, "rank of the transformed systems");
    sc_dims->add_option("--degrees", o.degrees_csv, "comma-separated degree per component");

    CLI::App* sc_verify = app.add_subcommand("verify", "randomized property-check suites");
    sc_verify->add_flag("--json", o.json, "emit the report as JSON");
    sc_verify->add_option("--seed", o.seed, "RNG seed");
    sc_verify->add_option("--trials", o.trials, "trials per suite");
    sc_verify->add_option("--suite", o.suite, "suite name, or 'all'");
    sc_verify->add_option("--counterexample-dir", o.counterexample_dir,
                          "where failing inputs are written ('' disables)");

    std::vector<std::string> args = preprocess_args(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_genus->parsed()) return run_genus(o);
        if (sc_inv->parsed()) return run_invariants(o);
        if (sc_check->parsed()) return run_check(o);
        if (sc_walls->parsed()) return run_walls(o);
        if (sc_ag->parsed()) return run_alpha_g(o);
        if (sc_star->parsed()) return run_star(o);
        if (sc_ds->parsed()) return run_dual_span(o);
        if (sc_bn->parsed()) return run_bn(o);
        if (sc_dims->parsed()) return run_dims(o);
        if (sc_verify->parsed()) return run_verify(o);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const BoundsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
