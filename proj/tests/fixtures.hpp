#pragma once

#include "cohsys/curve.hpp"
#include "cohsys/sheaf.hpp"
#include "cohsys/stability.hpp"

// Shared reference curves.
//
// t1: two genus-2 components joined at one node, ample multidegree (1, 1).
//     pa = 4, chi(O) = -3, weights (1/2, 1/2).
// p3: chain of genera (2, 2, 3) with ample multidegree (1, 1, 2).
//     pa = 7, chi(O) = -6, weights (1/4, 1/4, 1/2).
inline cohsys::NodalCurve t1_curve() {
    return cohsys::NodalCurve::build({2, 2}, {{0, 1}}, {1, 1});
}

inline cohsys::NodalCurve p3_curve() {
    return cohsys::NodalCurve::build({2, 2, 3}, {{0, 1}, {1, 2}}, {1, 1, 2});
}

// Rank-2 locally free system of degrees (5, 5) with k = 3 sections on t1.
inline cohsys::SystemType t1_rank2_system() {
    cohsys::SystemType sys;
    sys.sheaf = cohsys::locally_free_class(t1_curve(), 2, {5, 5});
    sys.k = 3;
    return sys;
}

// Rank-1 system of degrees (1, 1) with k = 1 on t1; its candidate box has
// exactly 20 entries and walls at 0 and 1.
inline cohsys::SystemType t1_rank1_system() {
    cohsys::SystemType sys;
    sys.sheaf = cohsys::locally_free_class(t1_curve(), 1, {1, 1});
    sys.k = 1;
    return sys;
}
