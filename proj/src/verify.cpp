#include "cohsys/verify.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "cohsys/curve.hpp"
#include "cohsys/dual_span.hpp"
#include "cohsys/json_io.hpp"
#include "cohsys/sheaf.hpp"
#include "cohsys/stability.hpp"

namespace cohsys {

namespace {

// Deterministic across platforms: the mt19937_64 stream is pinned by the
// standard and the bounded draw below avoids implementation-defined
// distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    long long uniform(long long lo, long long hi) {  // inclusive
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return lo + static_cast<long long>(gen_());
        std::uint64_t zone = UINT64_MAX - (UINT64_MAX % span + 1) % span;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x > zone);
        return lo + static_cast<long long>(x % span);
    }

private:
    std::mt19937_64 gen_;
};

struct Checker {
    SuiteResult& res;
    const TrialConfig& cfg;
    std::uint64_t trial = 0;
    const NodalCurve* curve = nullptr;
    const SystemType* sys = nullptr;
    std::uint64_t last_written = UINT64_MAX;

    void instance(const NodalCurve* c, const SystemType* s) {
        curve = c;
        sys = s;
    }

    bool check(bool ok, const std::string& msg) {
        ++res.checks;
        if (ok) return true;
        ++res.failures;
        if (res.messages.size() < 8)
            res.messages.push_back("trial " + std::to_string(trial) + ": " + msg);
        write_reproducer();
        return false;
    }

    void write_reproducer() {
        if (cfg.counterexample_dir.empty() || !curve || last_written == trial ||
            res.counterexample_files.size() >= 8)
            return;
        last_written = trial;
        std::string base =
            cfg.counterexample_dir + "/" + res.name + "-trial" + std::to_string(trial);
        {
            std::ofstream f(base + "-curve.json");
            f << curve_input_json(*curve).dump(2) << "\n";
        }
        res.counterexample_files.push_back(base + "-curve.json");
        if (sys) {
            std::ofstream f(base + "-system.json");
            f << system_input_json(*sys).dump(2) << "\n";
            res.counterexample_files.push_back(base + "-system.json");
        }
    }
};

std::vector<std::pair<int, int>> random_tree(Rng& rng, int n) {
    if (n <= 1) return {};
    if (n == 2) return {{0, 1}};
    std::vector<int> seq(n - 2);
    for (auto& v : seq) v = static_cast<int>(rng.uniform(0, n - 1));
    std::vector<int> deg(n, 1);
    for (int v : seq) ++deg[v];
    std::set<int> leaves;
    for (int i = 0; i < n; ++i)
        if (deg[i] == 1) leaves.insert(i);
    std::vector<std::pair<int, int>> edges;
    for (int v : seq) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, v);
        if (--deg[v] == 1) leaves.insert(v);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edges.emplace_back(a, b);
    return edges;
}

NodalCurve random_curve(Rng& rng, const TrialConfig& cfg, int min_comps = 2, int max_comps = 0) {
    int hi = max_comps > 0 ? max_comps : cfg.max_components;
    int n = static_cast<int>(rng.uniform(min_comps, std::max(min_comps, hi)));
    auto edges = random_tree(rng, n);
    std::vector<long long> genera(n);
    for (auto& g : genera) g = rng.uniform(2, std::max<long long>(2, cfg.max_genus));
    std::vector<long long> ample(n);
    for (;;) {
        long long g = 0;
        for (auto& a : ample) {
            a = rng.uniform(1, 6);
            g = std::gcd(g, a);
        }
        if (g == 1) break;
    }
    return NodalCurve::build(std::move(genera), std::move(edges), std::move(ample), {});
}

SheafClass random_sheaf(Rng& rng, const NodalCurve& curve, const TrialConfig& cfg) {
    int n = curve.component_count();
    std::vector<long long> rk(n), dg(n), gl(curve.node_count());
    for (;;) {
        bool any = false;
        for (auto& r : rk) {
            r = rng.uniform(0, cfg.max_rank);
            any = any || r > 0;
        }
        if (any) break;
    }
    for (int i = 0; i < n; ++i) dg[i] = rk[i] ? rng.uniform(-cfg.max_degree, cfg.max_degree) : 0;
    for (int p = 0; p < curve.node_count(); ++p) {
        auto [u, v] = curve.edges()[p];
        gl[p] = rng.uniform(0, std::min(rk[u], rk[v]));
    }
    return make_sheaf_class(curve, rk, dg, gl, false);
}

// (mu_F - mu_E)(alpha) = a + b*alpha, reconstructed from two slope
// evaluations; this is the oracle route, independent of the scaled engine.
struct Affine {
    Rat a, b;
};

Affine affine_of(const SystemType& sys, const SubsystemCandidate& cand, const NodalCurve& curve) {
    Rat zero(0), one(1);
    Rat at0 = alpha_slope(cand, zero, curve) - alpha_slope(sys, zero, curve);
    Rat at1 = alpha_slope(cand, one, curve) - alpha_slope(sys, one, curve);
    return {at0, at1 - at0};
}

long long ceil_rat(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    if (!q.fits_slong_p()) throw BoundsError("ceiling exceeds 64-bit range");
    return q.get_si();
}

// ---------------- suites ----------------

void trial_chi_bounds(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    NodalCurve curve = random_curve(rng, cfg);
    SheafClass sheaf = random_sheaf(rng, curve, cfg);
    SystemType repro{sheaf, 0};
    ck.instance(&curve, &repro);

    long long chi = chi_total(sheaf, curve);
    ChiBounds b = chi_bounds(sheaf, curve);
    ck.check(b.lower <= chi && chi <= b.upper, "chi outside its gluing bounds");

    SheafClass zero_glue = sheaf;
    std::fill(zero_glue.gluings.begin(), zero_glue.gluings.end(), 0LL);
    zero_glue.locally_free = false;
    ck.check(chi_total(zero_glue, curve) == b.upper, "zero gluing must attain the upper bound");

    SheafClass max_glue = sheaf;
    for (int p = 0; p < curve.node_count(); ++p) {
        auto [u, v] = curve.edges()[p];
        max_glue.gluings[p] = std::min(sheaf.multirank[u], sheaf.multirank[v]);
    }
    max_glue.locally_free = false;
    ck.check(chi_total(max_glue, curve) == b.lower, "maximal gluing must attain the lower bound");

    // exhaustive sweep over every gluing vector; tiny at the default caps
    std::vector<long long> caps(curve.node_count());
    unsigned long long combos = 1;
    for (int p = 0; p < curve.node_count(); ++p)
        combos *= static_cast<unsigned long long>(caps[p] = max_glue.gluings[p]) + 1;
    if (combos <= 4096) {
        long long lo_seen = LLONG_MAX, hi_seen = LLONG_MIN;
        SheafClass probe = sheaf;
        probe.locally_free = false;
        std::vector<long long> g(curve.node_count(), 0);
        for (;;) {
            probe.gluings = g;
            long long c = chi_total(probe, curve);
            lo_seen = std::min(lo_seen, c);
            hi_seen = std::max(hi_seen, c);
            ck.check(b.lower <= c && c <= b.upper, "a gluing vector escapes the chi bounds");
            int p = 0;
            while (p < curve.node_count() && g[p] == caps[p]) g[p++] = 0;
            if (p == curve.node_count()) break;
            ++g[p];
        }
        ck.check(lo_seen == b.lower && hi_seen == b.upper,
                 "chi bounds must be attained over the exhaustive gluing sweep");
    }

    SheafClass other = random_sheaf(rng, curve, cfg);
    SheafClass sum = sheaf;
    for (std::size_t i = 0; i < sum.multirank.size(); ++i) {
        sum.multirank[i] += other.multirank[i];
        sum.degrees[i] += other.degrees[i];
    }
    for (std::size_t p = 0; p < sum.gluings.size(); ++p) sum.gluings[p] += other.gluings[p];
    sum.locally_free = false;
    ck.check(chi_total(sum, curve) == chi + chi_total(other, curve), "chi must be additive");
    ck.check(w_rank(sum, curve) == w_rank(sheaf, curve) + w_rank(other, curve),
             "w-rank must be additive");
    ck.check(w_deg(sum, curve) == w_deg(sheaf, curve) + w_deg(other, curve),
             "w-degree must be additive");
    ck.check(w_rank(sheaf, curve).sgn() > 0, "w-rank of a nonzero class must be positive");
}

void trial_locally_free(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    NodalCurve curve = random_curve(rng, cfg);
    long long r = rng.uniform(1, std::max<long long>(1, cfg.max_rank));
    std::vector<long long> dg(curve.component_count());
    for (auto& d : dg) d = rng.uniform(-cfg.max_degree, cfg.max_degree);
    SheafClass lf = locally_free_class(curve, r, dg);
    SystemType repro{lf, 0};
    ck.instance(&curve, &repro);

    long long chis = 0;
    for (int i = 0; i < curve.component_count(); ++i)
        chis += chi_component(curve.genus(i), r, dg[i]);
    long long delta = curve.node_count();
    ck.check(chi_total(lf, curve) == chis - r * delta,
             "locally free chi must equal the component sum minus r*delta");

    long long dsum = std::accumulate(dg.begin(), dg.end(), 0LL);
    ck.check(w_deg(lf, curve) == Rat(dsum), "locally free w-degree must equal the degree sum");
    ck.check(w_rank(lf, curve) == Rat(r), "locally free w-rank must equal the rank");
    ck.check(w_slope(lf, curve) == Rat(dsum, r), "locally free w-slope must equal d/r");
    ChiBounds b = chi_bounds(lf, curve);
    ck.check(chi_total(lf, curve) == b.lower, "full gluing must attain the chi lower bound");
}

void trial_genus_identity(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    NodalCurve curve = random_curve(rng, cfg, 2, std::min(cfg.max_components, 10));
    ck.instance(&curve, nullptr);
    const int n = curve.component_count();

    long long pa = 0;
    for (int i = 0; i < n; ++i) pa += curve.genus(i);
    ck.check(curve.arithmetic_genus() == pa, "arithmetic genus must be the genus sum");
    ck.check(curve.chi_structure_sheaf() == 1 - pa, "chi(O) must equal 1 - pa");

    int handshake = 0;
    for (int i = 0; i < n; ++i) handshake += curve.vertex_degree(i);
    ck.check(handshake == 2 * curve.node_count(), "vertex degrees must sum to twice the nodes");

    int leaf = curve.leaf_component();
    ck.check(curve.vertex_degree(leaf) == 1, "leaf component must meet exactly one node");
    for (int i = 0; i < leaf; ++i)
        ck.check(curve.vertex_degree(i) != 1, "leaf component must be the smallest such index");

    Rat wsum(0);
    for (const Rat& w : curve.polarization().weights) {
        ck.check(w.sgn() > 0 && w < Rat(1), "weights must lie in (0,1)");
        wsum += w;
    }
    ck.check(wsum == Rat(1), "weights must sum to 1");

    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        Subcurve b;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) b.members.push_back(i);
        SubcurveData data = subcurve_data(curve, b);
        long long rhs = data.genus + data.complement_genus +
                        static_cast<long long>(data.boundary_nodes.size()) - 1;
        ck.check(curve.arithmetic_genus() == rhs, "subcurve genus additivity failed");

        // boundary count equals pieces(B) + pieces(complement) - 1
        SubcurveData cdata = subcurve_data(curve, *data.complement);
        ck.check(static_cast<long long>(data.boundary_nodes.size()) ==
                     data.connected_pieces + cdata.connected_pieces - 1,
                 "boundary node count must match the connectivity formula");
        ck.check(cdata.boundary_nodes == data.boundary_nodes,
                 "complement must see the same boundary nodes");
    }
}

struct OracleCand {
    std::uint64_t idx = 0;
    SubsystemCandidate cand;
    Rat a, b;
};

struct OracleScan {
    std::vector<OracleCand> cands;
    std::map<Rat, std::pair<std::uint64_t, std::uint64_t>> walls;  // below, above
    std::uint64_t ev = 0, tie = 0, strong = 0;
};

OracleScan oracle_scan(const SystemType& sys, const NodalCurve& curve, Checker& ck) {
    OracleScan os;
    enumerate_candidates(sys, curve, {}, [&](const SubsystemCandidate& cand, std::uint64_t idx) {
        OracleCand oc;
        oc.idx = idx;
        oc.cand = cand;
        Affine af = affine_of(sys, cand, curve);
        oc.a = af.a;
        oc.b = af.b;
        os.cands.push_back(oc);

        if (af.b.sgn() > 0) ++os.strong;
        if (af.b.sgn() == 0) {
            if (af.a.sgn() > 0) ++os.ev;
            if (af.a.sgn() == 0) ++os.tie;
        } else {
            Rat w = -af.a / af.b;
            if (w.sgn() >= 0) {
                auto& slot = os.walls[w];
                if (af.b.sgn() < 0) ++slot.first;
                else ++slot.second;
            } else if (af.b.sgn() > 0) {
                ++os.ev;
            }
        }

        SlopeComparison sc = compare_slopes(sys, cand, curve);
        bool agree;
        if (af.b.sgn() == 0) {
            agree = !sc.wall && sc.tie_everywhere == (af.a.sgn() == 0) &&
                    sc.exceeds == (af.a.sgn() > 0 ? Region::kEverywhere : Region::kNowhere);
        } else {
            Rat w = -af.a / af.b;
            if (w.sgn() < 0)
                agree = !sc.wall && !sc.tie_everywhere &&
                        sc.exceeds ==
                            (af.b.sgn() > 0 ? Region::kEverywhere : Region::kNowhere);
            else
                agree = sc.wall && *sc.wall == w && !sc.tie_everywhere &&
                        sc.exceeds ==
                            (af.b.sgn() > 0 ? Region::kAboveWall : Region::kBelowWall);
        }
        ck.check(agree, "compare_slopes disagrees with the two-point reconstruction");
        ck.check(strong_instability_check(sys, cand, curve) == (af.b.sgn() > 0),
                 "strong instability must match the slope coefficient sign");
    });
    return os;
}

void check_report_against_oracle(const WallReport& rep, const OracleScan& os, Checker& ck) {
    ck.check(rep.candidate_count == os.cands.size(), "candidate count mismatch");
    ck.check(rep.walls.size() == os.walls.size(), "wall count mismatch");
    {
        std::size_t i = 0;
        for (const auto& [w, sides] : os.walls) {
            if (i >= rep.walls.size()) break;
            ck.check(rep.walls[i].alpha == w, "wall value mismatch");
            ck.check(rep.walls[i].below_count == sides.first, "below-side count mismatch");
            ck.check(rep.walls[i].above_count == sides.second, "above-side count mismatch");
            ++i;
        }
    }
    ck.check(rep.always_exceeding_count == os.ev, "always-exceeding count mismatch");
    ck.check(rep.everywhere_tied_count == os.tie, "tie-everywhere count mismatch");
    ck.check(rep.strongly_unstable_count == os.strong, "strongly-unstable count mismatch");

    auto destab_at = [&](const Rat& alpha) {
        for (const auto& oc : os.cands)
            if ((oc.a + alpha * oc.b).sgn() > 0) return true;
        return false;
    };
    auto min_destab_index = [&](const Rat& alpha) -> std::optional<std::uint64_t> {
        for (const auto& oc : os.cands)
            if ((oc.a + alpha * oc.b).sgn() > 0) return oc.idx;
        return std::nullopt;
    };

    for (const auto& w : rep.walls) {
        bool tie_seen = false;
        for (const auto& oc : os.cands)
            if ((oc.a + w.alpha * oc.b).sgn() == 0) {
                tie_seen = true;
                break;
            }
        ck.check(tie_seen, "a reported wall must tie some candidate");
        ck.check(w.destabilized_at_wall == destab_at(w.alpha), "at-wall verdict mismatch");
        std::uint64_t prev = 0;
        bool first = true;
        for (const auto& wit : w.witnesses) {
            ck.check(first || wit.cand.index > prev, "wall witnesses must be index-sorted");
            prev = wit.cand.index;
            first = false;
        }
    }

    for (const auto& ch : rep.chambers) {
        ck.check(ch.sample > ch.lo && (!ch.hi || ch.sample < *ch.hi),
                 "chamber sample must be interior");
        bool destab = destab_at(ch.sample);
        ck.check(destab == ch.destabilized, "chamber verdict mismatch");
        if (ch.destabilized) {
            auto want = min_destab_index(ch.sample);
            ck.check(ch.witness && want && ch.witness->index == *want,
                     "chamber witness must be the smallest destabilizing index");
        } else {
            ck.check(!ch.witness, "clean chambers carry no witness");
        }
    }

    if (!os.walls.empty()) {
        ck.check(rep.max_wall && *rep.max_wall == os.walls.rbegin()->first, "max wall mismatch");
    } else {
        ck.check(!rep.max_wall, "no walls means no max wall");
    }
}

// Literal grid scan over alpha = n/D with D = lcm of the wall denominators;
// checks wall detection and per-point verdicts against the report.
void grid_scan(const WallReport& rep, const OracleScan& os, Checker& ck) {
    if (!rep.k_alpha_g) return;
    mpz_class D(1);
    for (const auto& w : rep.walls) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), w.alpha.den().get_mpz_t());
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), rep.k_alpha_g->den().get_mpz_t());
    if (!D.fits_slong_p()) return;
    long long d = D.get_si();
    Rat span = *rep.k_alpha_g + Rat(1);
    if (span.sgn() <= 0) span = Rat(1);
    long long n_max = ceil_rat(span * Rat(d));
    if (d <= 0 || n_max <= 0) return;
    if (static_cast<double>(n_max) * static_cast<double>(os.cands.size()) > 5e7) return;

    struct IntAff {
        __int128 ad;  // a * D, integerized
        __int128 b;
        bool ok;
    };
    std::vector<IntAff> ints;
    ints.reserve(os.cands.size());
    for (const auto& oc : os.cands) {
        IntAff ia{0, 0, false};
        Rat ad = oc.a * Rat(d);
        mpz_class cm;
        mpz_lcm(cm.get_mpz_t(), ad.den().get_mpz_t(), oc.b.den().get_mpz_t());
        Rat scale(cm, mpz_class(1));
        Rat adi = ad * scale, bi = oc.b * scale;
        if (adi.is_integer() && bi.is_integer() && adi.num().fits_slong_p() &&
            bi.num().fits_slong_p()) {
            ia.ad = adi.num().get_si();
            ia.b = bi.num().get_si();
            ia.ok = true;
        }
        ints.push_back(ia);
    }
    for (const auto& ia : ints)
        if (!ia.ok) return;  // fall back silently; the affine oracle already ran

    std::set<long long> grid_wall_nums;
    std::vector<char> destab_at_n(static_cast<std::size_t>(n_max) + 1, 0);
    for (long long n = 0; n <= n_max; ++n) {
        bool destab = false;
        for (std::size_t i = 0; i < ints.size(); ++i) {
            __int128 v = ints[i].ad + __int128(n) * ints[i].b;
            if (v > 0) destab = true;
            if (v == 0 && ints[i].b != 0) grid_wall_nums.insert(n);
        }
        destab_at_n[static_cast<std::size_t>(n)] = destab ? 1 : 0;
    }

    std::set<long long> report_wall_nums;
    bool rep_on_grid = true;
    for (const auto& w : rep.walls) {
        Rat scaled = w.alpha * Rat(d);
        if (!scaled.is_integer() || !scaled.num().fits_slong_p()) {
            rep_on_grid = false;
            break;
        }
        long long n = scaled.num().get_si();
        if (n > n_max) continue;  // beyond the scanned window
        report_wall_nums.insert(n);
    }
    ck.check(rep_on_grid, "every wall must lie on the lcm grid");
    if (rep_on_grid)
        ck.check(grid_wall_nums == report_wall_nums, "grid scan wall set mismatch");

    // verdict must be constant between consecutive walls and match the report
    std::size_t chamber_i = 0;
    for (long long n = 0; n <= n_max; ++n) {
        Rat alpha(n, d);
        if (grid_wall_nums.count(n)) continue;
        if (alpha.sgn() == 0) continue;  // alpha = 0 boundary point
        while (chamber_i < rep.chambers.size() && rep.chambers[chamber_i].hi &&
               alpha > *rep.chambers[chamber_i].hi)
            ++chamber_i;
        if (chamber_i >= rep.chambers.size()) break;
        const auto& ch = rep.chambers[chamber_i];
        if (!(alpha > ch.lo) || (ch.hi && !(alpha < *ch.hi))) continue;
        ck.check(static_cast<bool>(destab_at_n[static_cast<std::size_t>(n)]) == ch.destabilized,
                 "grid verdict differs from the chamber verdict");
    }
}

CandidateBounds budget_only(std::uint64_t cap) {
    CandidateBounds b;
    b.max_candidates = cap;
    return b;
}

SystemType small_lf_system(Rng& rng, const NodalCurve& curve, long long max_rank,
                           long long max_degree, long long k_lo_min) {
    long long r = rng.uniform(1, max_rank);
    std::vector<long long> dg(curve.component_count());
    for (auto& d : dg) d = rng.uniform(0, max_degree);
    SystemType sys;
    sys.sheaf = locally_free_class(curve, r, dg);
    sys.k = rng.uniform(std::max(k_lo_min, 1LL), r + 2);
    return sys;
}

void walls_oracle_instance(const NodalCurve& curve, const SystemType& sys, Checker& ck) {
    WallReport rep = walls(sys, curve, {});
    OracleScan os = oracle_scan(sys, curve, ck);
    check_report_against_oracle(rep, os, ck);

    long long r = sys.sheaf.multirank[0];
    long long dsum = std::accumulate(sys.sheaf.degrees.begin(), sys.sheaf.degrees.end(), 0LL);
    AlphaG ag = alpha_g(curve, r, dsum, sys.k);
    ck.check(rep.alpha_g_value && *rep.alpha_g_value == ag.value, "alpha_g mismatch");
    ck.check(rep.k_alpha_g && *rep.k_alpha_g == ag.k_fold, "k*alpha_g mismatch");
    bool stab = true;
    if (!os.walls.empty() && os.walls.rbegin()->first > ag.k_fold) stab = false;
    ck.check(rep.stabilizes_beyond_threshold && *rep.stabilizes_beyond_threshold == stab,
             "threshold verdict mismatch");

    grid_scan(rep, os, ck);

    // spot-check the fixed-alpha verdicts against the oracle
    std::vector<Rat> probes;
    for (const auto& ch : rep.chambers) probes.push_back(ch.sample);
    for (const auto& w : rep.walls) probes.push_back(w.alpha);
    for (const auto& alpha : probes) {
        PointCheck pc = check_at_alpha(sys, curve, alpha, {});
        bool destab = false, tie = false;
        std::uint64_t exceed = 0, ties = 0;
        for (const auto& oc : os.cands) {
            int sgn = (oc.a + alpha * oc.b).sgn();
            if (sgn > 0) {
                destab = true;
                ++exceed;
            } else if (sgn == 0) {
                tie = true;
                ++ties;
            }
        }
        std::string want = destab ? "destabilized" : (tie ? "on-wall" : "no-numerical-destabilizer");
        ck.check(pc.verdict == want, "point check verdict mismatch");
        ck.check(pc.exceeding_count == exceed && pc.tie_count == ties,
                 "point check counts mismatch");
    }
}

void trial_walls_oracle(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    if (ck.trial == 0) {
        // pinned two-component instance: rank 2, degrees (5,5), k = 3
        NodalCurve curve = NodalCurve::build({2, 2}, {{0, 1}}, {1, 1}, {});
        SystemType sys;
        sys.sheaf = locally_free_class(curve, 2, {5, 5});
        sys.k = 3;
        ck.instance(&curve, &sys);
        walls_oracle_instance(curve, sys, ck);
        return;
    }
    for (;;) {
        NodalCurve curve = random_curve(rng, cfg, 2, std::min(cfg.max_components, 3));
        SystemType sys = small_lf_system(rng, curve, std::min<long long>(cfg.max_rank, 2), 4, 1);
        ck.instance(&curve, &sys);
        try {
            count_candidates(sys, curve, budget_only(cfg.candidate_budget));
        } catch (const BoundsError&) {
            ++ck.res.redraws;
            continue;
        }
        walls_oracle_instance(curve, sys, ck);
        break;
    }
}

void trial_threshold_shadow(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    for (;;) {
        NodalCurve curve = random_curve(rng, cfg, 2, std::min(cfg.max_components, 3));
        SystemType sys = small_lf_system(rng, curve, std::min<long long>(cfg.max_rank, 2), 6, 1);
        ck.instance(&curve, &sys);
        try {
            count_candidates(sys, curve, budget_only(cfg.candidate_budget));
        } catch (const BoundsError&) {
            ++ck.res.redraws;
            continue;
        }
        WallReport rep = walls(sys, curve, {});
        ck.check(rep.threshold_bound_checked, "the threshold bound must be asserted on default boxes");
        long long r = sys.sheaf.multirank[0];
        long long dsum = std::accumulate(sys.sheaf.degrees.begin(), sys.sheaf.degrees.end(), 0LL);
        AlphaG ag = alpha_g(curve, r, dsum, sys.k);
        for (const auto& w : rep.walls)
            ck.check(w.alpha <= ag.k_fold, "a wall exceeds k*alpha_g on a default box");
        ck.check(rep.stabilizes_beyond_threshold && *rep.stabilizes_beyond_threshold,
                 "default boxes must stabilize beyond the threshold");
        break;
    }
}

void trial_strong_instability(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    for (;;) {
        NodalCurve curve = random_curve(rng, cfg, 2, std::min(cfg.max_components, 3));
        SystemType sys = small_lf_system(rng, curve, std::min<long long>(cfg.max_rank, 2), 4, 1);
        ck.instance(&curve, &sys);
        try {
            count_candidates(sys, curve, budget_only(cfg.candidate_budget));
        } catch (const BoundsError&) {
            ++ck.res.redraws;
            continue;
        }
        long long r = sys.sheaf.multirank[0];
        long long dsum = std::accumulate(sys.sheaf.degrees.begin(), sys.sheaf.degrees.end(), 0LL);
        AlphaG ag = alpha_g(curve, r, dsum, sys.k);
        Rat big = ag.k_fold + Rat(1);
        if (big.sgn() <= 0) big = Rat(1);

        enumerate_candidates(sys, curve, {}, [&](const SubsystemCandidate& cand, std::uint64_t) {
            Affine af = affine_of(sys, cand, curve);
            bool strong = strong_instability_check(sys, cand, curve);
            ck.check(strong == (af.b.sgn() > 0), "strong instability sign mismatch");
            if (strong)
                ck.check(alpha_slope(cand, big, curve) > alpha_slope(sys, big, curve),
                         "a strongly unstable candidate must win beyond the threshold");
            SlopeComparison sc = compare_slopes(sys, cand, curve);
            for (const Rat& alpha : {Rat(0), Rat(1), big}) {
                bool want_exceeds = (af.a + alpha * af.b).sgn() > 0;
                bool want_tie = (af.a + alpha * af.b).sgn() == 0;
                ck.check(exceeds_at(sc, alpha) == want_exceeds, "exceeds_at mismatch");
                ck.check(ties_at(sc, alpha) == want_tie, "ties_at mismatch");
            }
        });
        break;
    }
}

void trial_bn_identity(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    NodalCurve curve = random_curve(rng, cfg);
    ck.instance(&curve, nullptr);
    long long pa = curve.arithmetic_genus();
    long long r = rng.uniform(1, 20);
    long long d = rng.uniform(-10000, 10000);

    long long b_line = brill_noether(curve, 1, d, r + 1);
    long long b_dual = brill_noether(curve, r, d, r + 1);
    long long closed_a = pa + (r + 1) * (d - r - pa);
    long long closed_b = (r + 1) * d - r * (pa + r + 1);
    ck.check(b_line == b_dual, "expected dimensions must agree across the transform");
    ck.check(b_line == closed_a, "closed form (a) mismatch");
    ck.check(b_line == closed_b, "closed form (b) mismatch");

    long long k = rng.uniform(0, r + 3);
    long long beta = brill_noether(curve, r, d, k);
    mpz_class ref = mpz_class(static_cast<long>(r)) * static_cast<long>(r) *
                        static_cast<long>(pa - 1) +
                    1 -
                    mpz_class(static_cast<long>(k)) *
                        (static_cast<long>(k) - static_cast<long>(d) +
                         mpz_class(static_cast<long>(r)) * static_cast<long>(pa - 1));
    ck.check(ref.fits_slong_p() && ref.get_si() == beta, "expected dimension formula mismatch");
}

void trial_dimension_identities(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    NodalCurve curve = random_curve(rng, cfg);
    ck.instance(&curve, nullptr);
    long long r = rng.uniform(1, 4);
    std::vector<long long> dg(curve.component_count());
    for (auto& d : dg) d = rng.uniform(1, 12);
    DimensionReport rep = dimension_report(curve, r, dg);

    long long pa = curve.arithmetic_genus();
    long long gamma = curve.component_count();
    long long delta = curve.node_count();
    long long d = std::accumulate(dg.begin(), dg.end(), 0LL);
    ck.check(rep.identity_product_fiber, "product + fiber identity must hold");
    ck.check(rep.identity_grassmann, "grassmann fiber identity must hold");
    ck.check(rep.identity_bn_symmetry, "expected-dimension symmetry must hold");
    ck.check(rep.dim_x == brill_noether(curve, 1, d, r + 1), "dim_x route mismatch");
    ck.check(rep.dim_product == pa + (r + 1) * (d - pa - r * gamma), "product dimension mismatch");
    ck.check(rep.fiber_dim == delta * r * (r + 1), "fiber dimension mismatch");
    ck.check(rep.dim_product == rep.dim_x - (r + 1) * r * delta,
             "product dimension alternate route mismatch");
    ck.check(rep.section_space_dim == delta * r + r + 1, "section space dimension mismatch");
}

void trial_weight_floor(Rng& rng, Checker& ck, const TrialConfig& cfg) {
    NodalCurve curve = random_curve(rng, cfg);
    ck.instance(&curve, nullptr);
    long long k = rng.uniform(0, 12);
    long long S = curve.polarization().total;
    Rat total(0);
    for (int i = 0; i < curve.component_count(); ++i) {
        Rat floor_i = restriction_dimension_floor(curve, i, k);
        Rat independent(curve.ample_degree(i) * k, S);
        ck.check(floor_i == independent, "dimension floor must equal a_i k / total");
        total += floor_i;
        long long c = ceil_rat(floor_i);
        ck.check(restriction_dimension_bound(curve, i, k, c), "ceiling must satisfy the bound");
        ck.check(!restriction_dimension_bound(curve, i, k, c - 1),
                 "one below the ceiling must fail the bound");
        // a restriction keeping all k sections always clears the floor
        ck.check(restriction_dimension_bound(curve, i, k, k), "dim k must clear the w_i k floor");
    }
    ck.check(total == Rat(k), "dimension floors must sum to k");

    // the conditional criterion applies exactly when every hypothesis is asserted
    SystemType sys = small_lf_system(rng, curve, 3, 6, 1);
    StabHypotheses all{true, true, true, true};
    StabVerdict v = stability_criterion(sys, curve, all);
    ck.check(v.applicable && v.missing.empty(), "full hypotheses must make the criterion apply");
    long long r = sys.sheaf.multirank[0];
    long long dsum = std::accumulate(sys.sheaf.degrees.begin(), sys.sheaf.degrees.end(), 0LL);
    ck.check(v.threshold && *v.threshold == alpha_g(curve, r, dsum, sys.k).k_fold,
             "criterion threshold must equal k*alpha_g");
    ck.check(v.coprime == (std::gcd(r, sys.k) == 1), "coprimality flag mismatch");

    StabHypotheses partial{true, false, true, true};
    StabVerdict w = stability_criterion(sys, curve, partial);
    ck.check(!w.applicable && !w.missing.empty() && !w.threshold,
             "a missing hypothesis must block the criterion");
}

struct SuiteDef {
    const char* name;
    void (*fn)(Rng&, Checker&, const TrialConfig&);
};

const SuiteDef kSuites[] = {
    {"chi-bounds", trial_chi_bounds},
    {"locally-free-equalities", trial_locally_free},
    {"genus-identity", trial_genus_identity},
    {"walls-oracle", trial_walls_oracle},
    {"threshold-shadow", trial_threshold_shadow},
    {"strong-instability", trial_strong_instability},
    {"bn-identity", trial_bn_identity},
    {"dimension-identities", trial_dimension_identities},
    {"weight-floor", trial_weight_floor},
};

}  // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.push_back(s.name);
    return out;
}

VerifyReport run_verify(const TrialConfig& cfg) {
    VerifyReport report;
    report.seed = cfg.seed;

    bool matched = false;
    for (std::size_t si = 0; si < std::size(kSuites); ++si) {
        const auto& def = kSuites[si];
        if (cfg.suite != "all" && cfg.suite != def.name) continue;
        matched = true;

        SuiteResult res;
        res.name = def.name;
        Checker ck{res, cfg};
        Rng rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (si + 1));
        auto start = std::chrono::steady_clock::now();
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            ck.trial = t;
            ck.instance(nullptr, nullptr);
            try {
                def.fn(rng, ck, cfg);
            } catch (const Error& e) {
                ck.check(false, std::string("unexpected exception: ") + e.what());
            }
            ++res.trials;
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.ok = report.ok && res.failures == 0;
        report.suites.push_back(std::move(res));
    }
    if (!matched) {
        std::string names;
        for (const auto& s : kSuites) names += std::string(" ") + s.name;
        throw ValidationError("verify: unknown suite '" + cfg.suite + "'; valid suites are:" + names);
    }
    return report;
}

}  // namespace cohsys
