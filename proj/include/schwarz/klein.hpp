#pragma once

#include "schwarz/group.hpp"
#include "schwarz/invariant.hpp"

namespace schwarz {

struct KleinPreset {
    GroupSpec group;
    InvariantBasis basis;
};

// Klein's simple group of order 168 inside SL_3(C), together with the
// generators F4, F6, F14, F21 of its invariant ring and their degree-42
// relation.  F6, F14, F21 are produced from F4 by the Hessian, bordered
// Hessian and Jacobian determinant constructions; the relation is verified
// by full expansion at load.
const KleinPreset& klein_preset();

// Hessian matrix of a polynomial (second partials).
template <class C>
Mat<MPoly<C>> hessian(const MPoly<C>& p) {
    const int n = p.nvars();
    Mat<MPoly<C>> h(n, n, MPoly<C>(n));
    for (int i = 0; i < n; ++i) {
        MPoly<C> pi = p.partial(i);
        for (int j = 0; j < n; ++j) h(i, j) = pi.partial(j);
    }
    return h;
}

}  // namespace schwarz
