#include "cohsys/sheaf.hpp"

#include <algorithm>
#include <string>

namespace cohsys {

namespace {

void check_shape(const SheafClass& sheaf, const NodalCurve& curve) {
    const std::size_t n = static_cast<std::size_t>(curve.component_count());
    const std::size_t e = static_cast<std::size_t>(curve.node_count());
    if (sheaf.multirank.size() != n)
        throw ShapeError("sheaf: multirank length " + std::to_string(sheaf.multirank.size()) +
                         " does not match component count " + std::to_string(n));
    if (sheaf.degrees.size() != n)
        throw ShapeError("sheaf: degrees length " + std::to_string(sheaf.degrees.size()) +
                         " does not match component count " + std::to_string(n));
    if (sheaf.gluings.size() != e)
        throw ShapeError("sheaf: gluings length " + std::to_string(sheaf.gluings.size()) +
                         " does not match node count " + std::to_string(e));
}

}  // namespace

SheafClass make_sheaf_class(const NodalCurve& curve, std::vector<long long> multirank,
                            std::vector<long long> degrees, std::vector<long long> gluings,
                            bool locally_free) {
    SheafClass s;
    s.multirank = std::move(multirank);
    s.degrees = std::move(degrees);
    s.gluings = std::move(gluings);
    s.locally_free = locally_free;
    check_shape(s, curve);

    bool any_rank = false;
    for (std::size_t i = 0; i < s.multirank.size(); ++i) {
        if (s.multirank[i] < 0)
            throw ValidationError("sheaf: multirank on component " + std::to_string(i + 1) +
                                  " must be >= 0");
        if (s.multirank[i] > 0) any_rank = true;
        else s.degrees[i] = 0;  // degree carries no information on a zero-rank component
    }
    if (!any_rank) throw ZeroRankError("sheaf: multirank must not vanish on every component");

    for (int p = 0; p < curve.node_count(); ++p) {
        auto [u, v] = curve.edges()[p];
        long long cap = std::min(s.multirank[u], s.multirank[v]);
        if (s.gluings[p] < 0 || s.gluings[p] > cap)
            throw ValidationError("sheaf: gluing at node " + std::to_string(p + 1) +
                                  " must lie in 0.." + std::to_string(cap));
    }

    if (locally_free) {
        long long r = s.multirank[0];
        for (std::size_t i = 0; i < s.multirank.size(); ++i)
            if (s.multirank[i] != r)
                throw ValidationError("sheaf: locally free classes need uniform multirank, but component " +
                                      std::to_string(i + 1) + " differs");
        if (r < 1) throw ZeroRankError("sheaf: locally free classes need rank >= 1");
        for (int p = 0; p < curve.node_count(); ++p)
            if (s.gluings[p] != r)
                throw ValidationError("sheaf: locally free classes need full gluing at node " +
                                      std::to_string(p + 1));
    }
    return s;
}

SheafClass locally_free_class(const NodalCurve& curve, long long rank,
                              std::vector<long long> degrees) {
    if (rank < 1) throw ZeroRankError("sheaf: locally free classes need rank >= 1");
    std::vector<long long> ranks(curve.component_count(), rank);
    std::vector<long long> glue(curve.node_count(), rank);
    return make_sheaf_class(curve, std::move(ranks), std::move(degrees), std::move(glue), true);
}

long long chi_component(long long genus, long long rank, long long degree) {
    return degree + rank * (1 - genus);
}

long long total_gluing(const SheafClass& sheaf) {
    long long t = 0;
    for (long long g : sheaf.gluings) t += g;
    return t;
}

long long chi_total(const SheafClass& sheaf, const NodalCurve& curve) {
    check_shape(sheaf, curve);
    long long chi = 0;
    for (int i = 0; i < curve.component_count(); ++i)
        chi += chi_component(curve.genus(i), sheaf.multirank[i], sheaf.degrees[i]);
    return chi - total_gluing(sheaf);
}

Rat w_rank(const SheafClass& sheaf, const NodalCurve& curve) {
    check_shape(sheaf, curve);
    Rat out(0);
    for (int i = 0; i < curve.component_count(); ++i)
        out += curve.polarization().weights[i] * Rat(sheaf.multirank[i]);
    return out;
}

Rat w_deg(const SheafClass& sheaf, const NodalCurve& curve) {
    return Rat(chi_total(sheaf, curve)) - w_rank(sheaf, curve) * Rat(curve.chi_structure_sheaf());
}

Rat w_slope(const SheafClass& sheaf, const NodalCurve& curve) {
    Rat wr = w_rank(sheaf, curve);
    if (wr.sgn() == 0) throw ZeroRankError("sheaf: w-slope needs positive w-rank");
    return w_deg(sheaf, curve) / wr;
}

ChiBounds chi_bounds(const SheafClass& sheaf, const NodalCurve& curve) {
    check_shape(sheaf, curve);
    long long top = 0;
    for (int i = 0; i < curve.component_count(); ++i)
        top += chi_component(curve.genus(i), sheaf.multirank[i], sheaf.degrees[i]);
    long long max_glue = 0;
    for (int p = 0; p < curve.node_count(); ++p) {
        auto [u, v] = curve.edges()[p];
        max_glue += std::min(sheaf.multirank[u], sheaf.multirank[v]);
    }
    ChiBounds b;
    b.upper = top;
    b.lower = top - max_glue;
    b.locally_free_equality = sheaf.locally_free;
    return b;
}

LineBundleCriteria line_bundle_criteria(const NodalCurve& curve,
                                        const std::vector<long long>& degrees) {
    if (degrees.size() != static_cast<std::size_t>(curve.component_count()))
        throw ShapeError("line bundle: degrees length does not match component count");
    LineBundleCriteria c;
    c.positive = true;
    c.h1_vanishing = true;
    c.globally_generated = true;
    for (int i = 0; i < curve.component_count(); ++i) {
        long long g = curve.genus(i), d = degrees[i];
        c.positive = c.positive && d > 0;
        c.h1_vanishing = c.h1_vanishing && d >= 2 * g;
        c.globally_generated = c.globally_generated && d >= 2 * g + 1;
    }
    return c;
}

bool h0_vanishing_propagation(const SheafClass& sheaf, const NodalCurve& curve,
                              const std::vector<bool>& component_h0_zero) {
    check_shape(sheaf, curve);
    if (!sheaf.locally_free)
        throw HypothesisError("section vanishing propagates only for locally free classes");
    if (component_h0_zero.size() != static_cast<std::size_t>(curve.component_count()))
        throw ShapeError("propagation: flag list does not match component count");
    for (bool f : component_h0_zero)
        if (!f) return false;
    return true;
}

}  // namespace cohsys
