#include "schwarz/klein.hpp"

#include <mutex>

namespace schwarz {

namespace {

MPoly<Rat> mono3(int a, int b, int c, long coef) {
    Mono m;
    m.e[0] = static_cast<uint16_t>(a);
    m.e[1] = static_cast<uint16_t>(b);
    m.e[2] = static_cast<uint16_t>(c);
    return MPoly<Rat>::monomial(3, m, Rat(coef));
}

MPoly<Rat> sym_mono4(int e4, int e6, int e14, int e21, long coef) {
    Mono m;
    m.e[0] = static_cast<uint16_t>(e4);
    m.e[1] = static_cast<uint16_t>(e6);
    m.e[2] = static_cast<uint16_t>(e14);
    m.e[3] = static_cast<uint16_t>(e21);
    return MPoly<Rat>::monomial(4, m, Rat(coef));
}

Mat<CycNum> normalize_third_generator(Mat<CycNum> m) {
    CycNum d = det(m);
    if (d.is_one()) return m;
    // Try lambda = +-(a + b + c) = +-sqrt(-7); the classical normalization is
    // 1/sqrt(-7) and sqrt(-7) lies in Q(zeta_7).
    CycNum s = m(0, 0) + m(0, 1) + m(0, 2);
    for (const CycNum& lambda : {s, -s}) {
        if (lambda.pow(3) == d) {
            CycNum inv = lambda.inverse();
            Mat<CycNum> out(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) out(i, j) = m(i, j) * inv;
            return out;
        }
    }
    throw ValidationError("third Klein generator: determinant is not the cube of a known scalar");
}

KleinPreset build() {
    const CycNum beta = CycNum::zeta(7);

    // The exponent pairing of the diagonal generator and the orientation of
    // the symmetric circulant are fixed by requiring that they stabilize
    // F4 = X1^3 X2 + X2^3 X3 + X3^3 X1 (the quoted matrices stabilize the
    // mirror quartic; conjugating by the X2 <-> X3 swap lands them here).
    Mat<CycNum> g1(3, 3);
    g1(0, 0) = beta;
    g1(1, 1) = beta.pow(4);
    g1(2, 2) = beta.pow(2);

    Mat<CycNum> g2(3, 3);
    g2(0, 1) = CycNum::one();
    g2(1, 2) = CycNum::one();
    g2(2, 0) = CycNum::one();

    CycNum a = beta.pow(4) - beta.pow(3);
    CycNum b = beta.pow(2) - beta.pow(5);
    CycNum c = beta - beta.pow(6);
    Mat<CycNum> g3(3, 3);
    g3(0, 0) = a, g3(0, 1) = c, g3(0, 2) = b;
    g3(1, 0) = c, g3(1, 1) = b, g3(1, 2) = a;
    g3(2, 0) = b, g3(2, 1) = a, g3(2, 2) = c;
    g3 = normalize_third_generator(g3);

    GroupSpec group = GroupSpec::make(3, {g1, g2, g3}, 168, /*claim_det_one=*/true);

    // F4 = X1^3 X2 + X2^3 X3 + X3^3 X1
    MPoly<Rat> f4 = mono3(3, 1, 0, 1) + mono3(0, 3, 1, 1) + mono3(1, 0, 3, 1);

    // F6 = 1/54 * det Hessian(F4)
    Mat<MPoly<Rat>> h = hessian(f4);
    MPoly<Rat> f6 = det(h).scaled_rat(Rat(1, 54));

    // F14 = 1/9 * det of the Hessian bordered by grad(F6)
    Mat<MPoly<Rat>> bh(4, 4, MPoly<Rat>(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) bh(i, j) = h(i, j);
        MPoly<Rat> gi = f6.partial(i);
        bh(i, 3) = gi;
        bh(3, i) = gi;
    }
    MPoly<Rat> f14 = det(bh).scaled_rat(Rat(1, 9));

    // F21 = 1/14 * Jacobian determinant of (F4, F6, F14)
    Mat<MPoly<Rat>> jac(3, 3, MPoly<Rat>(3));
    const MPoly<Rat>* fs[3] = {&f4, &f6, &f14};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) jac(i, j) = fs[i]->partial(j);
    MPoly<Rat> f21 = det(jac).scaled_rat(Rat(1, 14));

    // The degree-42 relation among F4, F6, F14, F21 for this normalization of
    // F6 (+1/54 times the Hessian determinant).  The relation is often quoted
    // for the opposite sign of F6, which flips every term odd in Phi6; the
    // form below is verified by full expansion in make().
    MPoly<Rat> t = sym_mono4(9, 1, 0, 0, -2048) + sym_mono4(6, 3, 0, 0, 22016) +
                   sym_mono4(7, 0, 1, 0, -256) + sym_mono4(3, 5, 0, 0, -60032) +
                   sym_mono4(4, 2, 1, 0, 1088) + sym_mono4(0, 7, 0, 0, 1728) +
                   sym_mono4(1, 4, 1, 0, 1008) + sym_mono4(2, 1, 2, 0, -88) +
                   sym_mono4(0, 0, 3, 0, 1) + sym_mono4(0, 0, 0, 2, -1);

    InvariantBasis basis = InvariantBasis::make(3, {f4, f6, f14, f21}, {4, 6, 14, 21}, {0, 1, 2},
                                                {t});  // make() verifies T(F) == 0
    return {std::move(group), std::move(basis)};
}

}  // namespace

const KleinPreset& klein_preset() {
    static const KleinPreset preset = build();
    return preset;
}

}  // namespace schwarz
