#include "cohsys/stability.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace cohsys {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd_u128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Reduced fraction with positive denominator; exact bookkeeping for walls.
struct Frac {
    i128 num = 0;
    i128 den = 1;
};

Frac make_frac(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd_u128(n < 0 ? u128(-(n + 1)) + 1 : u128(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    return {n, d};
}

// Value order; falls back to exact big arithmetic if the cross products
// overflow 128 bits.
int cmp_frac(const Frac& a, const Frac& b) {
    i128 x = 0, y = 0;
    if (!__builtin_mul_overflow(a.num, b.den, &x) && !__builtin_mul_overflow(b.num, a.den, &y))
        return x < y ? -1 : (x > y ? 1 : 0);
    Rat ra = rat_from_i128(a.num, a.den);
    Rat rb = rat_from_i128(b.num, b.den);
    return ra < rb ? -1 : (ra > rb ? 1 : 0);
}

struct FracLexLess {  // structural order for map keys (not value order)
    bool operator()(const Frac& a, const Frac& b) const {
        return a.num != b.num ? a.num < b.num : a.den < b.den;
    }
};

Rat frac_to_rat(const Frac& f) { return rat_from_i128(f.num, f.den); }

void validate_system(const SystemType& sys, const NodalCurve& curve) {
    // reuse class validation; also normalizes nothing (copy semantics applied
    // by make_sheaf_class at construction time)
    make_sheaf_class(curve, sys.sheaf.multirank, sys.sheaf.degrees, sys.sheaf.gluings,
                     sys.sheaf.locally_free);
    if (sys.k < 0) throw ValidationError("system: k must be >= 0");
}

// Magnitude guards keeping the 128-bit fast path exact.
void check_desk_scale(const SystemType& sys, const NodalCurve& curve) {
    if (curve.component_count() > 1000)
        throw BoundsError("enumeration: component count exceeds the supported 1000");
    if (curve.polarization().total > 1000000)
        throw BoundsError("enumeration: polarization total exceeds the supported 1e6");
    for (int i = 0; i < curve.component_count(); ++i)
        if (curve.genus(i) > 1000000000LL)
            throw BoundsError("enumeration: component genus exceeds the supported 1e9");
    for (std::size_t i = 0; i < sys.sheaf.multirank.size(); ++i) {
        if (sys.sheaf.multirank[i] > 1000000LL)
            throw BoundsError("enumeration: multirank exceeds the supported 1e6");
        if (sys.sheaf.degrees[i] > 1000000000LL || sys.sheaf.degrees[i] < -1000000000LL)
            throw BoundsError("enumeration: degree magnitude exceeds the supported 1e9");
    }
    if (sys.k > 1000000000LL) throw BoundsError("enumeration: k exceeds the supported 1e9");
}

// Resolved enumeration context shared by counting and scanning.
struct Ctx {
    int n = 0;                          // components
    int m = 0;                          // nodes
    const NodalCurve* curve = nullptr;
    std::vector<long long> rk;          // parent multirank
    std::vector<long long> dg;          // parent degrees (normalized)
    std::vector<long long> fl, ce;      // degree box per component
    std::vector<long long> a;           // ample degrees
    std::vector<long long> g;           // genera
    long long S = 0;                    // polarization total
    long long chiO = 0;                 // 1 - pa
    long long k = 0;
    long long hmax = 0;
    i128 wrankE = 0;                    // sum a_i r_i
    i128 wdegE = 0;                     // S*chi(E) - wrankE*chiO
    std::vector<char> fopen;            // s_i > 0 admissible
    std::vector<u128> fsize;
    bool excl_possible = false;         // parent degrees lie inside the box
    std::uint64_t cap = 0;
    int workers = 1;
    int max_witnesses = 64;
};

Ctx resolve_ctx(const SystemType& sys, const NodalCurve& curve, const CandidateBounds& bounds) {
    validate_system(sys, curve);
    check_desk_scale(sys, curve);

    Ctx c;
    c.n = curve.component_count();
    c.m = curve.node_count();
    c.curve = &curve;
    c.rk = sys.sheaf.multirank;
    c.dg = sys.sheaf.degrees;
    for (int i = 0; i < c.n; ++i)
        if (c.rk[i] == 0) c.dg[i] = 0;
    c.a = curve.ample_degrees();
    c.g = curve.genera();
    c.S = curve.polarization().total;
    c.chiO = curve.chi_structure_sheaf();
    c.k = sys.k;

    if (bounds.degree_floor) {
        if (bounds.degree_floor->size() != static_cast<std::size_t>(c.n))
            throw ShapeError("enumeration: degree_floor length does not match component count");
        c.fl = *bounds.degree_floor;
    } else {
        c.fl.assign(c.n, 0);
    }
    if (bounds.degree_ceil) {
        if (bounds.degree_ceil->size() != static_cast<std::size_t>(c.n))
            throw ShapeError("enumeration: degree_ceil length does not match component count");
        c.ce = *bounds.degree_ceil;
    } else {
        c.ce = c.dg;
    }
    for (int i = 0; i < c.n; ++i)
        if (c.fl[i] < -1000000000LL || c.fl[i] > 1000000000LL || c.ce[i] < -1000000000LL ||
            c.ce[i] > 1000000000LL)
            throw BoundsError("enumeration: degree box magnitude exceeds the supported 1e9");

    long long hm = bounds.max_sections.value_or(sys.k);
    if (hm < 0) throw ValidationError("enumeration: max_sections must be >= 0");
    c.hmax = std::min(hm, sys.k);

    c.fopen.assign(c.n, 0);
    c.fsize.assign(c.n, 0);
    for (int i = 0; i < c.n; ++i) {
        if (c.rk[i] >= 1 && c.fl[i] <= c.ce[i]) {
            c.fopen[i] = 1;
            c.fsize[i] = u128(c.ce[i] - c.fl[i] + 1);
        }
    }
    c.excl_possible = true;
    for (int i = 0; i < c.n; ++i)
        if (c.rk[i] > 0 && !(c.fl[i] <= c.dg[i] && c.dg[i] <= c.ce[i])) c.excl_possible = false;

    long long chiE = chi_total(sys.sheaf, curve);
    c.wrankE = 0;
    for (int i = 0; i < c.n; ++i) c.wrankE += i128(c.a[i]) * c.rk[i];
    if (c.wrankE == 0) throw ZeroRankError("system: w-rank must be positive");
    c.wdegE = i128(c.S) * chiE - c.wrankE * c.chiO;

    c.cap = bounds.max_candidates;
    c.workers = std::clamp(bounds.workers, 1, 256);
    c.max_witnesses = std::clamp(bounds.max_witnesses, 0, 4096);
    return c;
}

constexpr u128 kSat = u128(1) << 100;

u128 sat_add(u128 a, u128 b) {
    u128 s = a + b;
    if (s < a || s > kSat) return kSat;
    return s;
}

u128 sat_mul(u128 a, u128 b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    u128 m = a * b;
    return m > kSat ? kSat : m;
}

// Sum over admissible sub-multiranks of (choices for degrees) * (choices for
// gluings), by dynamic programming over the dual tree; saturates at 2^100.
u128 dp_block_sum(const Ctx& c) {
    u128 entries = 0;
    for (int i = 0; i < c.n; ++i) entries += u128(c.rk[i]) + 1;
    if (entries > u128(8000000))
        throw BoundsError("enumeration: sub-multirank state space is too large to count");

    std::vector<std::vector<std::pair<int, int>>> adj(c.n);  // (neighbor, unused)
    for (auto [u, v] : c.curve->edges()) {
        adj[u].push_back({v, 0});
        adj[v].push_back({u, 0});
    }
    std::vector<int> order, parent(c.n, -1);
    order.reserve(c.n);
    order.push_back(0);
    parent[0] = 0;
    for (std::size_t q = 0; q < order.size(); ++q) {
        int u = order[q];
        for (auto [v, e] : adj[u])
            if (parent[v] == -1) {
                parent[v] = u;
                order.push_back(v);
            }
    }

    std::vector<std::vector<u128>> up(c.n);
    for (int q = c.n - 1; q >= 0; --q) {
        int u = order[q];
        auto& mine = up[u];
        mine.assign(static_cast<std::size_t>(c.rk[u]) + 1, 0);
        for (long long s = 0; s <= c.rk[u]; ++s) {
            if (s == 0) mine[0] = 1;
            else if (c.fopen[u]) mine[s] = c.fsize[u];
        }
        for (auto [v, e] : adj[u]) {
            if (parent[v] != u || v == u) continue;
            const auto& ch = up[v];
            const long long rc = c.rk[v];
            // pre[j] = sum_{i<=j} (i+1) ch[i]; tot - plain[j] = sum_{i>j} ch[i]
            std::vector<u128> pre(rc + 1), plain(rc + 1);
            u128 acc = 0, accp = 0;
            for (long long j = 0; j <= rc; ++j) {
                acc = sat_add(acc, sat_mul(ch[j], u128(j + 1)));
                accp = sat_add(accp, ch[j]);
                pre[j] = acc;
                plain[j] = accp;
            }
            u128 tot = accp;
            for (long long s = 0; s <= c.rk[u]; ++s) {
                if (mine[s] == 0) continue;
                long long mcut = std::min(s, rc);
                u128 tail = tot - plain[mcut];  // exact: plain[mcut] <= tot, both saturate together
                if (plain[mcut] == kSat || tot == kSat) tail = kSat;
                u128 factor = sat_add(pre[mcut], sat_mul(tail, u128(s + 1)));
                mine[s] = sat_mul(mine[s], factor);
            }
            up[v].clear();
            up[v].shrink_to_fit();
        }
    }
    u128 total = 0;
    for (u128 v : up[order[0]]) total = sat_add(total, v);
    return total;
}

// Closed-form candidate count for the resolved box (saturating).
u128 box_count(const Ctx& c) {
    u128 tree_sum = dp_block_sum(c);   // includes the all-zero sub-multirank
    u128 per_sf = u128(c.hmax) + 1;    // section-count choices
    u128 total = sat_mul(sat_add(tree_sum, u128(0)) - 1, per_sf);
    if (tree_sum == kSat) total = kSat;
    if (c.excl_possible) {
        u128 glue = 1;
        for (auto [u, v] : c.curve->edges())
            glue = sat_mul(glue, u128(std::min(c.rk[u], c.rk[v])) + 1);
        u128 excl = sat_mul(glue, per_sf);
        total = total >= excl ? total - excl : 0;
        if (tree_sum == kSat) total = kSat;
    }
    return total;
}

std::uint64_t checked_count(const Ctx& c) {
    u128 total = box_count(c);
    if (total == 0)
        throw BoundsError("enumeration: the candidate box is empty (every tuple is excluded)");
    if (total > u128(c.cap)) {
        std::string n = total == kSat ? std::string("more than 2^100")
                                      : std::to_string(static_cast<unsigned long long>(total));
        throw BoundsError("enumeration: " + n + " candidates exceed the cap of " +
                          std::to_string(c.cap) +
                          " (raise COHSYS_MAX_CANDIDATES or shrink the box)");
    }
    return static_cast<std::uint64_t>(total);
}

// Hands out sub-multirank blocks in deterministic lexicographic order with
// precomputed index bases. Not thread-safe; callers serialize access.
class BlockCursor {
public:
    explicit BlockCursor(const Ctx& c) : c_(c), s_(c.n, 0) {}

    struct Block {
        std::vector<long long> s;
        std::uint64_t base = 0;
        std::uint64_t size = 0;
        bool excl = false;
    };

    std::optional<Block> next() {
        if (done_) return std::nullopt;
        while (advance()) {
            bool is_parent = true;
            for (int i = 0; i < c_.n; ++i)
                if (s_[i] != c_.rk[i]) {
                    is_parent = false;
                    break;
                }
            bool excl = is_parent && c_.excl_possible;
            u128 fpart = 1, tpart = 1;
            for (int i = 0; i < c_.n; ++i)
                if (s_[i] > 0) fpart = sat_mul(fpart, c_.fsize[i]);
            for (auto [u, v] : c_.curve->edges())
                tpart = sat_mul(tpart, u128(std::min(s_[u], s_[v])) + 1);
            u128 per_sf = u128(c_.hmax) + 1;
            u128 size = sat_mul(sat_mul(fpart, tpart), per_sf);
            if (excl) size -= sat_mul(tpart, per_sf);
            if (size == 0) continue;
            Block b;
            b.s = s_;
            b.base = base_;
            b.size = static_cast<std::uint64_t>(size);
            b.excl = excl;
            base_ += b.size;
            return b;
        }
        done_ = true;  // the odometer rolled over; do not restart on a later call
        return std::nullopt;
    }

    std::uint64_t emitted() const { return base_; }

private:
    bool advance() {  // next admissible sub-multirank, least-significant last
        for (int i = c_.n - 1; i >= 0; --i) {
            long long cap = c_.fopen[i] ? c_.rk[i] : 0;
            if (s_[i] < cap) {
                ++s_[i];
                return true;
            }
            s_[i] = 0;
        }
        return false;
    }

    const Ctx& c_;
    std::vector<long long> s_;
    std::uint64_t base_ = 0;
    bool done_ = false;
};

// Raw view of one candidate during a scan; pointers stay valid only inside
// the sink invocation.
struct CandView {
    const std::vector<long long>* s;
    const std::vector<long long>* f;
    const std::vector<long long>* t;
    long long h;
    long long chi;
    long long wrankS;  // sum a_i s_i
    i128 wdegS;        // S*chi - wrankS*chiO
    i128 p, q;         // sign(mu_F - mu_E)(alpha) = sign(p + alpha q)
};

template <class Sink>
void scan_block(const Ctx& c, const BlockCursor::Block& blk, Sink&& sink) {
    const auto& s = blk.s;
    long long wrankS = 0, rankpart = 0;
    for (int i = 0; i < c.n; ++i) {
        wrankS += c.a[i] * s[i];
        rankpart += s[i] * (1 - c.g[i]);
    }
    std::vector<int> open;
    for (int i = 0; i < c.n; ++i)
        if (s[i] > 0) open.push_back(i);
    std::vector<long long> tcap(c.m);
    for (int p = 0; p < c.m; ++p) {
        auto [u, v] = c.curve->edges()[p];
        tcap[p] = std::min(s[u], s[v]);
    }

    std::vector<long long> f(c.n, 0), t(c.m, 0);
    long long fsum = 0;
    for (int i : open) {
        f[i] = c.fl[i];
        fsum += f[i];
    }

    const i128 dq = i128(c.S) * c.wrankE;
    const i128 qbase = -i128(c.S) * c.k * wrankS;
    std::uint64_t idx = blk.base;

    bool more_f = true;
    while (more_f) {
        bool skip = false;
        if (blk.excl) {
            skip = true;
            for (int i = 0; i < c.n; ++i)
                if (f[i] != c.dg[i]) {
                    skip = false;
                    break;
                }
        }
        if (!skip) {
            std::fill(t.begin(), t.end(), 0LL);
            long long tsum = 0;
            bool more_t = true;
            while (more_t) {
                CandView cv;
                cv.s = &s;
                cv.f = &f;
                cv.t = &t;
                cv.chi = rankpart + fsum - tsum;
                cv.wrankS = wrankS;
                cv.wdegS = i128(c.S) * cv.chi - i128(wrankS) * c.chiO;
                cv.p = cv.wdegS * c.wrankE - c.wdegE * i128(wrankS);
                for (long long h = 0; h <= c.hmax; ++h) {
                    cv.h = h;
                    cv.q = qbase + i128(h) * dq;
                    sink(idx++, cv);
                }
                more_t = false;
                for (int p = c.m - 1; p >= 0; --p) {
                    if (t[p] < tcap[p]) {
                        ++t[p];
                        ++tsum;
                        more_t = true;
                        break;
                    }
                    tsum -= t[p];
                    t[p] = 0;
                }
            }
        }
        more_f = false;
        for (int oi = static_cast<int>(open.size()) - 1; oi >= 0; --oi) {
            int i = open[oi];
            if (f[i] < c.ce[i]) {
                ++f[i];
                ++fsum;
                more_f = true;
                break;
            }
            fsum -= f[i] - c.fl[i];
            f[i] = c.fl[i];
        }
    }
    if (idx != blk.base + blk.size)
        throw InternalError("enumeration: block size mismatch");
}

// Where the candidate's slope strictly exceeds the system's, from the sign
// line p + alpha q.
struct RawCmp {
    Region region = Region::kNowhere;
    bool has_wall = false;
    Frac wall;
    bool tie = false;
};

RawCmp classify(i128 p, i128 q) {
    RawCmp out;
    if (q == 0) {
        out.region = p > 0 ? Region::kEverywhere : Region::kNowhere;
        out.tie = (p == 0);
        return out;
    }
    Frac w = make_frac(-p, q);
    if (w.num < 0) {
        out.region = q > 0 ? Region::kEverywhere : Region::kNowhere;
        return out;
    }
    out.has_wall = true;
    out.wall = w;
    out.region = q > 0 ? Region::kAboveWall : Region::kBelowWall;
    return out;
}

CandidateRef materialize(const Ctx& c, std::uint64_t idx, const CandView& cv) {
    CandidateRef ref;
    ref.index = idx;
    ref.multirank = *cv.s;
    ref.degrees = *cv.f;
    ref.gluings = *cv.t;
    ref.sections = cv.h;
    ref.chi = cv.chi;
    ref.wrank = Rat(cv.wrankS, c.S);
    ref.wdeg = rat_from_i128(cv.wdegS, c.S);
    return ref;
}

struct WallAgg {
    std::uint64_t below = 0, above = 0;
    std::vector<WallWitness> wit;                 // ascending index within a worker
    std::optional<CandidateRef> min_below, min_above;
};

struct ScanAgg {
    std::map<Frac, WallAgg, FracLexLess> walls;
    std::vector<CandidateRef> everywhere, tied, strong;
    std::uint64_t ev_count = 0, tie_count = 0, strong_count = 0;
    std::uint64_t visited = 0;
};

void aggregate_candidate(const Ctx& c, ScanAgg& agg, std::uint64_t idx, const CandView& cv) {
    ++agg.visited;
    RawCmp rc = classify(cv.p, cv.q);
    if (cv.q > 0) {
        ++agg.strong_count;
        if (agg.strong.size() < static_cast<std::size_t>(c.max_witnesses))
            agg.strong.push_back(materialize(c, idx, cv));
    }
    if (rc.tie) {
        ++agg.tie_count;
        if (agg.tied.size() < static_cast<std::size_t>(c.max_witnesses))
            agg.tied.push_back(materialize(c, idx, cv));
        return;
    }
    if (rc.has_wall) {
        WallAgg& wa = agg.walls[rc.wall];
        bool below = rc.region == Region::kBelowWall;
        if (below) {
            ++wa.below;
            if (!wa.min_below) wa.min_below = materialize(c, idx, cv);
        } else {
            ++wa.above;
            if (!wa.min_above) wa.min_above = materialize(c, idx, cv);
        }
        if (wa.wit.size() < static_cast<std::size_t>(c.max_witnesses))
            wa.wit.push_back({materialize(c, idx, cv), below ? Side::kBelow : Side::kAbove});
        return;
    }
    if (rc.region == Region::kEverywhere) {
        ++agg.ev_count;
        if (agg.everywhere.size() < static_cast<std::size_t>(c.max_witnesses))
            agg.everywhere.push_back(materialize(c, idx, cv));
    }
}

void merge_refs(std::vector<CandidateRef>& into, std::vector<CandidateRef>&& from, int cap) {
    into.insert(into.end(), std::make_move_iterator(from.begin()),
                std::make_move_iterator(from.end()));
    std::sort(into.begin(), into.end(),
              [](const CandidateRef& a, const CandidateRef& b) { return a.index < b.index; });
    if (into.size() > static_cast<std::size_t>(cap)) into.resize(cap);
}

void merge_agg(const Ctx& c, ScanAgg& into, ScanAgg&& from) {
    into.visited += from.visited;
    into.ev_count += from.ev_count;
    into.tie_count += from.tie_count;
    into.strong_count += from.strong_count;
    merge_refs(into.everywhere, std::move(from.everywhere), c.max_witnesses);
    merge_refs(into.tied, std::move(from.tied), c.max_witnesses);
    merge_refs(into.strong, std::move(from.strong), c.max_witnesses);
    for (auto& [wall, wa] : from.walls) {
        WallAgg& g = into.walls[wall];
        g.below += wa.below;
        g.above += wa.above;
        auto take_min = [](std::optional<CandidateRef>& dst, std::optional<CandidateRef>&& src) {
            if (src && (!dst || src->index < dst->index)) dst = std::move(src);
        };
        take_min(g.min_below, std::move(wa.min_below));
        take_min(g.min_above, std::move(wa.min_above));
        g.wit.insert(g.wit.end(), std::make_move_iterator(wa.wit.begin()),
                     std::make_move_iterator(wa.wit.end()));
    }
}

ScanAgg parallel_scan(const Ctx& c) {
    BlockCursor cursor(c);
    std::mutex cursor_mu, merge_mu;
    ScanAgg global;
    std::exception_ptr failure;
    int workers = c.workers;
    auto work = [&]() {
        try {
            ScanAgg local;
            for (;;) {
                std::optional<BlockCursor::Block> blk;
                {
                    std::lock_guard<std::mutex> lk(cursor_mu);
                    blk = cursor.next();
                }
                if (!blk) break;
                scan_block(c, *blk, [&](std::uint64_t idx, const CandView& cv) {
                    aggregate_candidate(c, local, idx, cv);
                });
            }
            std::lock_guard<std::mutex> lk(merge_mu);
            merge_agg(c, global, std::move(local));
        } catch (...) {
            std::lock_guard<std::mutex> lk(merge_mu);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return global;
}

bool uniform_rank(const std::vector<long long>& rk, long long& r_out) {
    long long r = rk.empty() ? 0 : rk[0];
    for (long long v : rk)
        if (v != r) return false;
    r_out = r;
    return r >= 1;
}

}  // namespace

Rat alpha_slope(const SheafClass& sheaf, long long sections, const Rat& alpha,
                const NodalCurve& curve) {
    if (alpha.sgn() < 0) throw ValidationError("alpha must be a nonnegative rational");
    if (sections < 0) throw ValidationError("section count must be >= 0");
    Rat wr = w_rank(sheaf, curve);
    if (wr.sgn() == 0) throw ZeroRankError("alpha-slope needs positive w-rank");
    return w_deg(sheaf, curve) / wr + alpha * Rat(sections) / wr;
}

Rat alpha_slope(const SystemType& sys, const Rat& alpha, const NodalCurve& curve) {
    return alpha_slope(sys.sheaf, sys.k, alpha, curve);
}

Rat alpha_slope(const SubsystemCandidate& cand, const Rat& alpha, const NodalCurve& curve) {
    return alpha_slope(cand.sheaf, cand.sections, alpha, curve);
}

AlphaG alpha_g(const NodalCurve& curve, long long rank, long long degree, long long k) {
    if (rank < 1) throw ZeroRankError("alpha-threshold: rank must be >= 1");
    if (k < 1) throw ZeroKError("alpha-threshold: k must be >= 1");
    mpz_class term = mpz_class(static_cast<long>(degree)) * static_cast<long>(rank) +
                     mpz_class(static_cast<long>(rank)) * static_cast<long>(rank) *
                         static_cast<long>(curve.arithmetic_genus() - 1);
    mpz_class s(static_cast<long>(curve.polarization().total));
    AlphaG out;
    out.k_fold = Rat(mpz_class(s * term), mpz_class(1));
    out.value = Rat(mpz_class(s * term), mpz_class(static_cast<long>(k)));
    return out;
}

SlopeComparison compare_slopes(const SystemType& sys, const SubsystemCandidate& cand,
                               const NodalCurve& curve) {
    Rat wrE = w_rank(sys.sheaf, curve);
    Rat wrF = w_rank(cand.sheaf, curve);
    if (wrE.sgn() == 0) throw ZeroRankError("system: w-slope needs positive w-rank");
    if (wrF.sgn() == 0) throw ZeroRankError("candidate: w-slope needs positive w-rank");
    if (sys.k < 0 || cand.sections < 0) throw ValidationError("section counts must be >= 0");

    Rat a = w_deg(cand.sheaf, curve) / wrF - w_deg(sys.sheaf, curve) / wrE;
    Rat b = Rat(cand.sections) / wrF - Rat(sys.k) / wrE;

    SlopeComparison out;
    if (b.sgn() == 0) {
        out.exceeds = a.sgn() > 0 ? Region::kEverywhere : Region::kNowhere;
        out.tie_everywhere = (a.sgn() == 0);
        return out;
    }
    Rat wall = -a / b;
    if (wall.sgn() < 0) {
        out.exceeds = b.sgn() > 0 ? Region::kEverywhere : Region::kNowhere;
        return out;
    }
    out.wall = wall;
    out.exceeds = b.sgn() > 0 ? Region::kAboveWall : Region::kBelowWall;
    return out;
}

std::optional<Rat> wall_for_candidate(const SystemType& sys, const SubsystemCandidate& cand,
                                      const NodalCurve& curve) {
    return compare_slopes(sys, cand, curve).wall;
}

bool exceeds_at(const SlopeComparison& cmp, const Rat& alpha) {
    switch (cmp.exceeds) {
        case Region::kNowhere: return false;
        case Region::kEverywhere: return true;
        case Region::kBelowWall: return alpha < *cmp.wall;
        case Region::kAboveWall: return alpha > *cmp.wall;
    }
    return false;
}

bool ties_at(const SlopeComparison& cmp, const Rat& alpha) {
    if (cmp.tie_everywhere) return true;
    return cmp.wall && alpha == *cmp.wall;
}

StarClassification property_star(const SystemType& sys, const SubsystemCandidate& cand,
                                 const NodalCurve& curve, bool strict) {
    Rat wrE = w_rank(sys.sheaf, curve);
    Rat wrF = w_rank(cand.sheaf, curve);
    if (wrE.sgn() == 0) throw ZeroRankError("system: section density needs positive w-rank");
    if (wrF.sgn() == 0) throw ZeroRankError("candidate: section density needs positive w-rank");

    Rat lhs = Rat(cand.sections) / wrF;
    Rat rhs = Rat(sys.k) / wrE;
    StarClassification out;
    out.density_drop = lhs < rhs;
    if (lhs == rhs) {
        Rat sf = w_deg(cand.sheaf, curve) / wrF;
        Rat se = w_deg(sys.sheaf, curve) / wrE;
        out.tie_strict_slope = sf < se;
        out.tie_weak_slope = sf <= se;
    }
    out.satisfied = out.density_drop || (strict ? out.tie_strict_slope : out.tie_weak_slope);
    return out;
}

bool strong_instability_check(const SystemType& sys, const SubsystemCandidate& cand,
                              const NodalCurve& curve) {
    Rat wrE = w_rank(sys.sheaf, curve);
    Rat wrF = w_rank(cand.sheaf, curve);
    if (wrE.sgn() == 0) throw ZeroRankError("system: section density needs positive w-rank");
    if (wrF.sgn() == 0) throw ZeroRankError("candidate: section density needs positive w-rank");
    return Rat(cand.sections) / wrF > Rat(sys.k) / wrE;
}

std::uint64_t count_candidates(const SystemType& sys, const NodalCurve& curve,
                               const CandidateBounds& bounds) {
    Ctx c = resolve_ctx(sys, curve, bounds);
    return checked_count(c);
}

std::uint64_t enumerate_candidates(
    const SystemType& sys, const NodalCurve& curve, const CandidateBounds& bounds,
    const std::function<void(const SubsystemCandidate&, std::uint64_t)>& visit) {
    Ctx c = resolve_ctx(sys, curve, bounds);
    std::uint64_t expected = checked_count(c);
    BlockCursor cursor(c);
    std::uint64_t seen = 0;
    while (auto blk = cursor.next()) {
        scan_block(c, *blk, [&](std::uint64_t idx, const CandView& cv) {
            SubsystemCandidate cand;
            cand.sheaf.multirank = *cv.s;
            cand.sheaf.degrees = *cv.f;
            cand.sheaf.gluings = *cv.t;
            long long r0 = (*cv.s)[0];
            bool lf = r0 >= 1;
            for (long long v : *cv.s)
                if (v != r0) lf = false;
            if (lf)
                for (long long t : *cv.t)
                    if (t != r0) lf = false;
            cand.sheaf.locally_free = lf;
            cand.sections = cv.h;
            visit(cand, idx);
            ++seen;
        });
    }
    if (seen != expected) throw InternalError("enumeration: candidate count mismatch");
    return seen;
}

WallReport walls(const SystemType& sys, const NodalCurve& curve, const CandidateBounds& bounds) {
    Ctx c = resolve_ctx(sys, curve, bounds);
    std::uint64_t expected = checked_count(c);
    ScanAgg agg = parallel_scan(c);
    if (agg.visited != expected)
        throw InternalError("enumeration: scanned count does not match the closed form");

    WallReport rep;
    rep.candidate_count = expected;
    rep.floor_used = c.fl;
    rep.ceil_used = c.ce;
    rep.max_sections_used = c.hmax;
    rep.max_candidates_used = c.cap;
    rep.workers_used = c.workers;

    rep.always_exceeding = std::move(agg.everywhere);
    rep.always_exceeding_count = agg.ev_count;
    rep.everywhere_tied = std::move(agg.tied);
    rep.everywhere_tied_count = agg.tie_count;
    rep.strongly_unstable = std::move(agg.strong);
    rep.strongly_unstable_count = agg.strong_count;

    std::vector<std::pair<Frac, WallAgg>> sorted;
    sorted.reserve(agg.walls.size());
    for (auto& [wall, wa] : agg.walls) sorted.emplace_back(wall, std::move(wa));
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return cmp_frac(x.first, y.first) < 0; });

    for (auto& [wall, wa] : sorted) {
        std::sort(wa.wit.begin(), wa.wit.end(), [](const WallWitness& x, const WallWitness& y) {
            return x.cand.index < y.cand.index;
        });
        if (wa.wit.size() > static_cast<std::size_t>(c.max_witnesses)) wa.wit.resize(c.max_witnesses);
        WallEntry e;
        e.alpha = frac_to_rat(wall);
        e.witnesses = std::move(wa.wit);
        e.below_count = wa.below;
        e.above_count = wa.above;
        e.witness_count = wa.below + wa.above;
        rep.walls.push_back(std::move(e));
    }

    // at-wall verdicts: a different candidate strictly exceeds at the wall
    // iff some below-side wall lies strictly above it, some above-side wall
    // strictly below it, or a candidate exceeds everywhere
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        bool hit = rep.always_exceeding_count > 0;
        for (std::size_t j = 0; j < sorted.size() && !hit; ++j) {
            if (j == i) continue;
            int rel = cmp_frac(sorted[j].first, sorted[i].first);
            if (rel > 0 && sorted[j].second.below > 0) hit = true;
            if (rel < 0 && sorted[j].second.above > 0) hit = true;
        }
        rep.walls[i].destabilized_at_wall = hit;
    }

    if (!sorted.empty()) rep.max_wall = rep.walls.back().alpha;

    // chambers between consecutive positive walls
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i].first.num > 0) pos.push_back(i);
    Rat zero(0);
    auto chamber_witness = [&](const std::optional<Rat>& lo, const std::optional<Rat>& hi,
                               ChamberEntry& ch) {
        std::optional<CandidateRef> best;
        auto consider = [&](const std::optional<CandidateRef>& ref) {
            if (ref && (!best || ref->index < best->index)) best = *ref;
        };
        if (rep.always_exceeding_count > 0 && !rep.always_exceeding.empty())
            consider(rep.always_exceeding.front());
        for (std::size_t j = 0; j < sorted.size(); ++j) {
            Rat w = frac_to_rat(sorted[j].first);
            if (hi && sorted[j].second.below > 0 && w >= *hi) consider(sorted[j].second.min_below);
            if (lo && sorted[j].second.above > 0 && w <= *lo) consider(sorted[j].second.min_above);
        }
        ch.destabilized = best.has_value();
        ch.witness = std::move(best);
    };
    std::vector<Rat> cuts;
    for (std::size_t i : pos) cuts.push_back(frac_to_rat(sorted[i].first));
    for (std::size_t i = 0; i + 1 <= cuts.size(); ++i) {
        ChamberEntry ch;
        ch.lo = i == 0 ? zero : cuts[i - 1];
        ch.hi = cuts[i];
        ch.sample = (ch.lo + *ch.hi) * Rat(1, 2);
        chamber_witness(ch.lo, ch.hi, ch);
        rep.chambers.push_back(std::move(ch));
    }
    {
        ChamberEntry last;
        last.lo = cuts.empty() ? zero : cuts.back();
        last.sample = last.lo + Rat(1);
        chamber_witness(last.lo, std::nullopt, last);
        rep.chambers.push_back(std::move(last));
    }

    long long r = 0;
    bool uniform = uniform_rank(c.rk, r);
    if (uniform && c.k >= 1) {
        Rat wd = w_deg(sys.sheaf, curve);
        if (!wd.is_integer()) throw InternalError("uniform rank w-degree is not an integer");
        AlphaG ag = alpha_g(curve, r, wd.num_ll(), c.k);
        rep.alpha_g_value = ag.value;
        rep.k_alpha_g = ag.k_fold;
        bool stab = true;
        if (rep.max_wall && *rep.max_wall > ag.k_fold) stab = false;
        rep.stabilizes_beyond_threshold = stab;
    } else if (c.k == 0) {
        rep.notes.push_back("alpha_g is undefined for k = 0; no threshold is reported");
    } else {
        rep.notes.push_back("alpha_g needs a uniform multirank; no threshold is reported");
    }

    // threshold bound assertion over the default-style box
    bool neg_floor = false, high_ceil = false, genus_or_degree_low = false;
    for (int i = 0; i < c.n; ++i) {
        if (c.fl[i] < 0) neg_floor = true;
        if (c.ce[i] > c.dg[i]) high_ceil = true;
        if (c.g[i] < 1 || c.dg[i] < 0) genus_or_degree_low = true;
    }
    if (neg_floor)
        rep.notes.push_back("degree floor below 0 weakens the threshold bound; it is not asserted");
    if (high_ceil)
        rep.notes.push_back(
            "degree ceiling above the system degrees weakens the threshold bound; it is not asserted");
    bool assertable_box = uniform && c.k >= 1 && sys.sheaf.locally_free && !neg_floor &&
                          !high_ceil && !genus_or_degree_low;
    if (assertable_box) {
        rep.threshold_bound_checked = true;
        if (rep.max_wall && rep.k_alpha_g && *rep.max_wall > *rep.k_alpha_g)
            throw InternalError("a wall exceeds k*alpha_g on a box where that is impossible");
    }

    rep.notes.push_back(
        "verdicts are numerical: no-numerical-destabilizer certifies only the absence of a "
        "destabilizing candidate in the enumerated box");
    rep.notes.push_back("candidate section counts range over 0.." + std::to_string(c.hmax));
    return rep;
}

PointCheck check_at_alpha(const SystemType& sys, const NodalCurve& curve, const Rat& alpha,
                          const CandidateBounds& bounds) {
    if (alpha.sgn() < 0) throw ValidationError("alpha must be a nonnegative rational");
    Ctx c = resolve_ctx(sys, curve, bounds);
    std::uint64_t expected = checked_count(c);

    std::optional<Frac> afast;
    if (alpha.num().fits_slong_p() && alpha.den().fits_slong_p())
        afast = Frac{alpha.num().get_si(), alpha.den().get_si()};
    Rat arat = alpha;

    PointCheck out;
    out.alpha = alpha;
    out.candidate_count = expected;

    BlockCursor cursor(c);
    std::uint64_t seen = 0;
    while (auto blk = cursor.next()) {
        scan_block(c, *blk, [&](std::uint64_t idx, const CandView& cv) {
            ++seen;
            RawCmp rc = classify(cv.p, cv.q);
            int rel;  // candidate slope vs system slope at alpha
            if (rc.tie) rel = 0;
            else if (!rc.has_wall) rel = rc.region == Region::kEverywhere ? 1 : -1;
            else {
                int avw = afast ? cmp_frac(*afast, rc.wall)
                                : (arat < frac_to_rat(rc.wall) ? -1
                                                               : (arat == frac_to_rat(rc.wall) ? 0 : 1));
                if (avw == 0) rel = 0;
                else if (rc.region == Region::kBelowWall) rel = avw < 0 ? 1 : -1;
                else rel = avw > 0 ? 1 : -1;
            }
            if (rel > 0) {
                if (!out.witness) out.witness = materialize(c, idx, cv);
                ++out.exceeding_count;
            } else if (rel == 0) {
                if (!out.tie_witness) out.tie_witness = materialize(c, idx, cv);
                ++out.tie_count;
            }
        });
    }
    if (seen != expected) throw InternalError("enumeration: scanned count does not match the closed form");

    if (out.exceeding_count > 0) out.verdict = "destabilized";
    else if (out.tie_count > 0) out.verdict = "on-wall";
    else out.verdict = "no-numerical-destabilizer";
    return out;
}

StabVerdict stability_criterion(const SystemType& sys, const NodalCurve& curve,
                                const StabHypotheses& hyp) {
    validate_system(sys, curve);
    long long r = 0;
    if (!uniform_rank(sys.sheaf.multirank, r))
        throw ValidationError("stability criterion: multirank must be uniform and >= 1");
    if (sys.k < 1) throw ZeroKError("stability criterion: k must be >= 1");

    StabVerdict v;
    v.coprime = std::gcd(r, sys.k) == 1;
    if (!hyp.generically_generated) v.missing.push_back("generically_generated");
    if (!hyp.restrictions_full_sections) v.missing.push_back("restrictions_full_sections");
    if (!hyp.restrictions_alpha_stable) v.missing.push_back("restrictions_alpha_stable");
    if (!v.coprime && !hyp.w_stable) v.missing.push_back("w_stable_or_coprime");
    v.applicable = v.missing.empty();
    if (v.applicable) {
        Rat wd = w_deg(sys.sheaf, curve);
        if (!wd.is_integer()) throw InternalError("uniform rank w-degree is not an integer");
        AlphaG ag = alpha_g(curve, r, wd.num_ll(), sys.k);
        v.threshold = ag.k_fold;
        v.statement = "conditionally (w,alpha)-stable for every alpha > " + ag.k_fold.str() +
                      ", granting the asserted sheaf-level hypotheses";
    } else {
        v.statement = "inconclusive: hypotheses not asserted:";
        for (const auto& m : v.missing) v.statement += " " + m;
    }
    return v;
}

Rat restriction_dimension_floor(const NodalCurve& curve, int component, long long k) {
    if (component < 0 || component >= curve.component_count())
        throw ShapeError("restriction bound: component index out of range");
    if (k < 0) throw ValidationError("restriction bound: k must be >= 0");
    return curve.polarization().weights[component] * Rat(k);
}

bool restriction_dimension_bound(const NodalCurve& curve, int component, long long k,
                                 long long dim_vi) {
    return Rat(dim_vi) >= restriction_dimension_floor(curve, component, k);
}

}  // namespace cohsys
