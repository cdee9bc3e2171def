#pragma once

#include <optional>
#include <vector>

#include "schwarz/cyclotomic.hpp"
#include "schwarz/matrix.hpp"
#include "schwarz/mpoly.hpp"

namespace schwarz {

// Finite linear group given by generator matrices over a cyclotomic field.
// The group order is user-declared (it feeds the geometric formulas); the
// determinant-1 flag is verified against the stored generators at load.
struct GroupSpec {
    int dim = 0;
    std::vector<Mat<CycNum>> gens;
    long order = 1;
    bool det_one = false;

    static GroupSpec make(int dim, std::vector<Mat<CycNum>> gens, long order, bool claim_det_one) {
        GroupSpec g;
        g.dim = dim;
        g.gens = std::move(gens);
        g.order = order;
        for (const auto& m : g.gens) {
            if (m.rows() != dim || m.cols() != dim)
                throw ValidationError("group generator is not " + std::to_string(dim) + "x" +
                                      std::to_string(dim));
            CycNum d = det(m);
            if (d.is_zero()) throw ValidationError("group generator is singular");
            if (claim_det_one && !d.is_one())
                throw ValidationError("generator determinant is not 1 but the det-1 flag is set");
        }
        g.det_one = claim_det_one;
        return g;
    }

    static GroupSpec trivial(int dim) {
        Mat<CycNum> id(dim, dim);
        for (int i = 0; i < dim; ++i) id(i, i) = CycNum::one();
        return make(dim, {id}, 1, true);
    }
};

// p(g X) as a polynomial: substitute X_i -> sum_j g_{ij} X_j.
template <class C>
MPoly<C> apply_group_element(const MPoly<C>& p, const Mat<C>& g) {
    const int n = p.nvars();
    std::vector<MPoly<C>> forms;
    forms.reserve(n);
    for (int i = 0; i < n; ++i) {
        MPoly<C> f(n);
        for (int j = 0; j < n; ++j) f += MPoly<C>::variable(n, j).scaled(g(i, j));
        forms.push_back(std::move(f));
    }
    return p.template eval<MPoly<C>>(forms, [&](const C& c) { return MPoly<C>::constant(n, c); });
}

// Returns lambda with p(g X) = lambda * p(X) if one exists (lambda = 1 means
// strict invariance); nullopt when p is not even semi-invariant under g.
template <class C>
std::optional<C> check_invariance(const MPoly<C>& p, const Mat<C>& g) {
    if (p.is_zero()) return C::one();
    MPoly<C> q = apply_group_element(p, g);
    const auto& [m0, c0] = p.leading();
    C qc = q.coeff(m0);
    if (qc.is_zero()) return std::nullopt;
    C lambda = qc / c0;
    if (q == p.scaled(lambda)) return lambda;
    return std::nullopt;
}

inline Mat<CycNum> lift_matrix(const Mat<CycNum>& m) { return m; }

// convenience for checking rational polynomials against cyclotomic matrices
inline MPoly<CycNum> to_cyclotomic(const MPoly<Rat>& p) {
    return p.lift<CycNum>([](const Rat& r) { return CycNum(r); });
}

}  // namespace schwarz
