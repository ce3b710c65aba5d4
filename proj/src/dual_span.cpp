#include "cohsys/dual_span.hpp"

#include <numeric>
#include <string>

namespace cohsys {

namespace {

void validate_line_system(const LineSystemType& ls, const NodalCurve& curve) {
    const std::size_t n = static_cast<std::size_t>(curve.component_count());
    if (ls.degrees.size() != n)
        throw ShapeError("line system: degrees length does not match component count");
    if (!ls.r_zero.empty() && ls.r_zero.size() != n)
        throw ShapeError("line system: r_zero length does not match component count");
    if (ls.k < 2) throw ValidationError("line system: k must be >= 2");
}

long long ll_from_mpz(const mpz_class& v, const char* what) {
    if (!v.fits_slong_p()) throw BoundsError(std::string(what) + " exceeds 64-bit range");
    return v.get_si();
}

mpz_class beta_mpz(long long pa, long long r, long long d, long long k) {
    mpz_class rr(static_cast<long>(r)), kk(static_cast<long>(k));
    mpz_class pam1(static_cast<long>(pa - 1));
    return rr * rr * pam1 + 1 - kk * (kk - static_cast<long>(d) + rr * pam1);
}

}  // namespace

ComponentRestrictionVerdict restriction_dual_span_verdict(const LineSystemType& ls, int component,
                                                          const NodalCurve& curve) {
    validate_line_system(ls, curve);
    if (component < 0 || component >= curve.component_count())
        throw ShapeError("line system: component index out of range");
    if (ls.degrees[component] < 1)
        throw HypothesisError("line system: degree on component " + std::to_string(component + 1) +
                              " must be >= 1");

    const long long r = ls.k - 1;
    const long long d = ls.degrees[component];
    bool rz = ls.r_zero.empty() ? false : static_cast<bool>(ls.r_zero[component]);

    ComponentRestrictionVerdict v;
    v.component = component;
    if (r == 1 || rz) {
        v.stable = true;
        v.alpha_threshold = Rat((r - 1) * d);
        return v;
    }
    // A vanishing obstruction yields a rank-s subobject of type (s, d, s+1)
    // for each s in 1..r-1 whose slope beats the restriction at every alpha:
    // d/s + a (s+1)/s > d/r + a (r+1)/r, exactly because d(r-s) > 0 and
    // r(s+1) - s(r+1) = r - s > 0.
    v.stable = false;
    for (long long s = 1; s <= r - 1; ++s) {
        DestabWitness w;
        w.sub_rank = s;
        w.degree = d;
        w.sections = s + 1;
        bool const_part = d * (r - s) > 0;
        bool slope_part = r * (s + 1) - s * (r + 1) > 0;
        w.verified = const_part && slope_part;
        if (!w.verified) throw InternalError("restriction witness inequality failed");
        v.witnesses.push_back(w);
    }
    return v;
}

DualSpanResult dual_span(const LineSystemType& ls, const NodalCurve& curve) {
    validate_line_system(ls, curve);
    if (!ls.generated)
        throw HypothesisError("dual span: the line system must be generated");
    for (int i = 0; i < curve.component_count(); ++i)
        if (ls.degrees[i] < 1)
            throw HypothesisError("dual span: degree on component " + std::to_string(i + 1) +
                                  " must be >= 1");

    const long long r = ls.k - 1;
    DualSpanResult out;
    out.system.sheaf = locally_free_class(curve, r, ls.degrees);
    out.system.k = ls.k;
    out.chi = chi_total(out.system.sheaf, curve);
    out.wdeg = w_deg(out.system.sheaf, curve);

    long long d = std::accumulate(ls.degrees.begin(), ls.degrees.end(), 0LL);
    if (out.wdeg != Rat(d)) throw InternalError("dual span: w-degree does not match total degree");

    AlphaG ag = alpha_g(curve, r, d, ls.k);
    out.stability_threshold = Rat(r + 1) * ag.value;

    out.conditionally_stable = true;
    for (int i = 0; i < curve.component_count(); ++i) {
        bool rz = ls.r_zero.empty() ? false : static_cast<bool>(ls.r_zero[i]);
        if (!rz) out.conditionally_stable = false;
        out.restrictions.push_back(restriction_dual_span_verdict(ls, i, curve));
    }
    return out;
}

std::pair<std::vector<long long>, long long> dual_span_inverse(const DualSpanResult& res) {
    long long r = res.system.sheaf.multirank.empty() ? 0 : res.system.sheaf.multirank[0];
    return {res.system.sheaf.degrees, r + 1};
}

DegreeHypotheses degree_hypotheses(const NodalCurve& curve, const std::vector<long long>& degrees,
                                   long long rank) {
    if (degrees.size() != static_cast<std::size_t>(curve.component_count()))
        throw ShapeError("degree thresholds: degrees length does not match component count");
    if (rank < 1) throw ZeroRankError("degree thresholds: rank must be >= 1");
    DegreeHypotheses out;
    out.all = true;
    for (int i = 0; i < curve.component_count(); ++i) {
        long long g = curve.genus(i);
        bool ok = degrees[i] >= std::max(2 * g + 1, g + rank);
        out.component_ok.push_back(ok);
        out.all = out.all && ok;
    }
    return out;
}

bool nonemptiness_threshold(const NodalCurve& curve, long long rank, long long degree) {
    if (rank < 1) throw ZeroRankError("nonemptiness threshold: rank must be >= 1");
    long long pa = curve.arithmetic_genus();
    long long gamma = curve.component_count();
    return degree >= std::max(2 * pa + gamma, pa + rank * gamma);
}

long long brill_noether(const NodalCurve& curve, long long rank, long long degree, long long k) {
    if (rank < 1) throw ZeroRankError("expected dimension: rank must be >= 1");
    if (k < 0) throw ValidationError("expected dimension: k must be >= 0");
    return ll_from_mpz(beta_mpz(curve.arithmetic_genus(), rank, degree, k), "expected dimension");
}

DimensionReport dimension_report(const NodalCurve& curve, long long rank,
                                 const std::vector<long long>& degrees) {
    if (degrees.size() != static_cast<std::size_t>(curve.component_count()))
        throw ShapeError("dimension report: degrees length does not match component count");
    if (rank < 1) throw ZeroRankError("dimension report: rank must be >= 1");

    const long long pa = curve.arithmetic_genus();
    const long long gamma = curve.component_count();
    const long long delta = curve.node_count();
    const long long d = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    const long long k = rank + 1;

    DimensionReport rep;
    rep.rank = rank;
    rep.total_degree = d;
    rep.k = k;
    rep.dim_x = ll_from_mpz(beta_mpz(pa, 1, d, k), "expected dimension");
    rep.bn_dual = ll_from_mpz(beta_mpz(pa, rank, d, k), "expected dimension");

    mpz_class prod = mpz_class(static_cast<long>(pa)) +
                     mpz_class(static_cast<long>(k)) *
                         (static_cast<long>(d) - mpz_class(static_cast<long>(pa)) -
                          static_cast<long>(rank) * mpz_class(static_cast<long>(gamma)));
    rep.dim_product = ll_from_mpz(prod, "product dimension");
    rep.fiber_dim = ll_from_mpz(
        mpz_class(static_cast<long>(delta)) * static_cast<long>(rank) * static_cast<long>(k),
        "fiber dimension");
    rep.section_space_dim = delta * rank + rank + 1;
    rep.grassmann_fiber =
        ll_from_mpz(mpz_class(static_cast<long>(k)) * (static_cast<long>(rep.section_space_dim) -
                                                       static_cast<long>(k)),
                    "fiber dimension");

    rep.identity_product_fiber = rep.dim_x == rep.dim_product + rep.fiber_dim;
    rep.identity_grassmann = rep.fiber_dim == rep.grassmann_fiber;
    rep.identity_bn_symmetry = rep.dim_x == rep.bn_dual;
    rep.degree_hypotheses_ok = degree_hypotheses(curve, degrees, rank).all;
    rep.nonemptiness_ok = nonemptiness_threshold(curve, rank, d);
    return rep;
}

}  // namespace cohsys
