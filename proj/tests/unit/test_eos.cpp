#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"

using namespace mcf;

namespace {

MaterialPair two_gases(double g1, double cv1, double g2, double cv2) {
    MaterialPair m;
    m[0] = {"a", g1, cv1, 0, 0, 0};
    m[1] = {"b", g2, cv2, 0, 0, 0};
    return m;
}

CellState random_state(std::mt19937& rng, const MaterialPair& mats) {
    std::uniform_real_distribution<double> ua(0.05, 0.95), ur(0.1, 50.0), uu(-200.0, 200.0),
        up(1e3, 1e6);
    PrimitiveState w;
    w.alpha1 = ua(rng);
    w.rho1 = ur(rng);
    w.rho2 = ur(rng);
    w.u = uu(rng);
    w.v = uu(rng);
    w.p = up(rng);
    return prim_to_cons(w, mats);
}

}  // namespace

TEST_CASE("mixture pressure closed form") {
    auto mats = two_gases(2.0, 100.0, 1.4, 5000.0);
    // single phase limit
    CHECK(mixture_pressure(1, 0, 2.5, 1.0 - kAlphaFloor, two_gases(1.4, 700, 1.4, 700)) ==
          doctest::Approx(1.0).epsilon(1e-7));
    // hand value: sum alpha/(gamma-1) = 0.5/1 + 0.5/0.4 = 1.75
    CHECK(mixture_pressure(0.5, 0.5, 3.5, 0.5, mats) == doctest::Approx(2.0).epsilon(1e-14));
    // identical gases: p = (gamma-1) rho_e for any alpha
    auto same = two_gases(1.4, 700, 1.4, 700);
    for (double a : {0.1, 0.5, 0.9})
        CHECK(mixture_pressure(1, 1, 10.0, a, same) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("phase temperatures") {
    auto mats = two_gases(2.0, 100.0, 1.4, 5000.0);
    double T1, T2;
    phase_temperatures(1e4, 20.0, 1.0, mats, T1, T2);
    CHECK(T1 == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(T2 == doctest::Approx(5.0).epsilon(1e-14));
    double T1b, T2b;
    phase_temperatures(2e4, 20.0, 1.0, mats, T1b, T2b);
    CHECK(T1b == doctest::Approx(2 * T1).epsilon(1e-14));
    CHECK(T2b == doctest::Approx(2 * T2).epsilon(1e-14));
}

TEST_CASE("cons_to_prim hand values and round trip") {
    auto mats = two_gases(2.0, 100.0, 1.4, 5000.0);
    CellState c{0.5, 0.5, 0.0, 0.0, 3.5, 0.5};
    PrimitiveState w = cons_to_prim(c, mats);
    CHECK(w.p == doctest::Approx(2.0).epsilon(1e-14));

    // prim_to_cons hand value: rho_e = 1e4*(0.5/1 + 0.5/0.4) = 1.75e4
    PrimitiveState w2;
    w2.rho1 = 20.0; w2.rho2 = 1.0; w2.u = 100.0; w2.p = 1e4; w2.alpha1 = 0.5;
    CellState c2 = prim_to_cons(w2, mats);
    CHECK(c2.rhoE == doctest::Approx(1.75e4 + 0.5 * 10.5 * 1e4).epsilon(1e-14));

    // zero velocity: rhoE = rho_e exactly
    PrimitiveState w3 = w2;
    w3.u = 0.0;
    CHECK(prim_to_cons(w3, mats).rhoE == doctest::Approx(1.75e4).epsilon(1e-14));

    // round trip on random states
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        CellState a = random_state(rng, mats);
        PrimitiveState mid = cons_to_prim(a, mats);
        CellState b = prim_to_cons(mid, mats);
        CHECK(b.m1 == doctest::Approx(a.m1).epsilon(1e-13));
        CHECK(b.m2 == doctest::Approx(a.m2).epsilon(1e-13));
        CHECK(b.mx == doctest::Approx(a.mx).epsilon(1e-13));
        CHECK(b.rhoE == doctest::Approx(a.rhoE).epsilon(1e-13));
        CHECK(b.alpha1 == doctest::Approx(a.alpha1).epsilon(1e-13));
    }

    // non-positive internal energy
    CellState bad{1.0, 1.0, 10.0, 0.0, 0.1, 0.5};
    CHECK_THROWS_AS(cons_to_prim(bad, mats), PositivityError);
}

TEST_CASE("temperature relaxation") {
    // T' = (y1 cv1 T1 + y2 cv2 T2)/(y1 cv1 + y2 cv2) = 400 for the hand case
    auto mats = two_gases(2.0, 1000.0, 1.4, 500.0);
    // y1 = y2 = 0.5, T1 = 300, T2 = 600: build the state directly
    // rho_e = m1 cv1 T1 + m2 cv2 T2
    CellState c;
    c.m1 = 0.5;
    c.m2 = 0.5;
    const double rho_e = 0.5 * 1000 * 300 + 0.5 * 500 * 600;
    c.rhoE = rho_e;
    // alpha consistent with pressure equilibrium at T1, T2:
    // p = (g1-1) rho1 cv1 T1 = (g2-1) rho2 cv2 T2 and m_k = alpha_k rho_k
    // alpha1/(alpha1 + ...): solve p alpha1 = m1 R1 T1, p alpha2 = m2 R2 T2
    const double x1 = 0.5 * 1000.0 * 300.0;   // m1 R1 T1 with R1 = cv1 (gamma=2)
    const double x2 = 0.5 * 0.4 * 500.0 * 600.0;
    c.alpha1 = x1 / (x1 + x2);
    const PrimitiveState before = cons_to_prim(c, mats);
    CHECK(before.T1 == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(before.T2 == doctest::Approx(600.0).epsilon(1e-12));

    CellState r = relax_temperatures(c, mats);
    CHECK(r.m1 == c.m1);
    CHECK(r.m2 == c.m2);
    CHECK(r.mx == c.mx);
    CHECK(r.rhoE == c.rhoE);
    const PrimitiveState after = cons_to_prim(r, mats);
    CHECK(after.T1 == doctest::Approx(400.0).epsilon(1e-12));
    CHECK(after.T2 == doctest::Approx(400.0).epsilon(1e-12));
    // hand values: p' = sum m_k (g_k-1) cv_k T' = 1.8e5... here:
    CHECK(after.p == doctest::Approx(400.0 * (0.5 * 1000.0 + 0.5 * 0.4 * 500.0)).epsilon(1e-12));

    // already relaxed: PVT fixed point
    CellState r2 = relax_temperatures(r, mats);
    CHECK(r2.alpha1 == doctest::Approx(r.alpha1).epsilon(1e-15));
    // idempotence is exact: alpha depends only on m_k
    CHECK(relax_temperatures(r2, mats).alpha1 == r2.alpha1);

    // relaxed alpha hand value: m1=m2=0.5, cv1=1000, cv2=500, g1=2, g2=1.4
    // -> alpha1 = 5/6, p' = 1.8e5 at T' = 300
    CellState h;
    h.m1 = 0.5;
    h.m2 = 0.5;
    h.rhoE = 0.5 * 1000 * 300 + 0.5 * 500 * 300;  // T1 = T2 = 300
    h.alpha1 = 0.4;                               // inconsistent on purpose
    CellState hr = relax_temperatures(h, mats);
    CHECK(hr.alpha1 == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(cons_to_prim(hr, mats).p == doctest::Approx(1.8e5).epsilon(1e-12));
}

TEST_CASE("equilibrium reconstruct") {
    auto mats = two_gases(2.0, 1000.0, 1.4, 500.0);
    EquilibriumState s = equilibrium_reconstruct(0.5, 0.5, 225000.0, mats);
    CHECK(s.T == doctest::Approx(300.0).epsilon(1e-14));
    CHECK(s.p == doctest::Approx(1.8e5).epsilon(1e-14));
    CHECK(s.alpha1 == doctest::Approx(5.0 / 6.0).epsilon(1e-14));

    // single-component limit
    EquilibriumState s1 = equilibrium_reconstruct(1.0, 1e-12, 1000.0 * 300.0, mats);
    CHECK(s1.T == doctest::Approx(300.0).epsilon(1e-9));
    CHECK(s1.alpha1 == doctest::Approx(1.0).epsilon(1e-7));

    // invariants on random inputs: pressure equality and volume saturation
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> um(0.01, 10.0), ue(1e4, 1e7);
    for (int t = 0; t < 200; ++t) {
        const double m1 = um(rng), m2 = um(rng), e = ue(rng);
        EquilibriumState q = equilibrium_reconstruct(m1, m2, e, mats);
        const double p1 = (mats[0].gamma - 1) * q.rho1 * mats[0].cv * q.T;
        const double p2 = (mats[1].gamma - 1) * q.rho2 * mats[1].cv * q.T;
        CHECK(p1 == doctest::Approx(q.p).epsilon(1e-12));
        CHECK(p2 == doctest::Approx(q.p).epsilon(1e-12));
        CHECK(m1 / q.rho1 + m2 / q.rho2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("wood sound speed") {
    auto mats = two_gases(1.4, 700.0, 2.0, 700.0);
    // single phase: a = sqrt(gamma1 p / rho)
    AcousticBundle b1 = wood_sound_speed(1.0 - kAlphaFloor, 1e5, 1.0, mats);
    CHECK(b1.a_wood == doctest::Approx(std::sqrt(1.4e5)).epsilon(1e-7));
    // hand value: A = 1/(0.5/1.4e5 + 0.5/2e5)
    AcousticBundle b = wood_sound_speed(0.5, 1e5, 1.0, mats);
    CHECK(b.A == doctest::Approx(164705.882352941).epsilon(1e-12));
    // harmonic mean bounds
    for (double a = 0.01; a < 1.0; a += 0.07) {
        AcousticBundle bb = wood_sound_speed(a, 1e5, 1.0, mats);
        CHECK(bb.A <= std::max(bb.A1, bb.A2) * (1 + 1e-14));
        CHECK(bb.A >= std::min(bb.A1, bb.A2) * (1 - 1e-14));
    }
}

TEST_CASE("mixture entropy") {
    auto mats = two_gases(1.4, 700.0, 1.4, 700.0);
    // isentropic compression of a single-phase cell leaves s unchanged
    PrimitiveState w;
    w.alpha1 = 1.0 - kAlphaFloor;
    w.rho1 = 1.0; w.rho2 = 1.0; w.p = 1e5;
    CellState c0 = prim_to_cons(w, mats);
    const double s0 = mixture_entropy(c0, mats) / c0.rho();
    w.rho1 = 2.0; w.rho2 = 2.0;
    w.p = 1e5 * std::pow(2.0, 1.4);
    CellState c1 = prim_to_cons(w, mats);
    const double s1 = mixture_entropy(c1, mats) / c1.rho();
    CHECK(s1 == doctest::Approx(s0).epsilon(1e-12));

    // relaxation strictly increases entropy for unequal temperatures
    auto mats2 = two_gases(2.0, 1000.0, 1.4, 500.0);
    CellState c;
    c.m1 = 0.5; c.m2 = 0.5;
    c.rhoE = 0.5 * 1000 * 300 + 0.5 * 500 * 600;
    const double x1 = 0.5 * 1000.0 * 300.0, x2 = 0.5 * 0.4 * 500.0 * 600.0;
    c.alpha1 = x1 / (x1 + x2);
    const double sb = mixture_entropy(c, mats2);
    const double sa = mixture_entropy(relax_temperatures(c, mats2), mats2);
    CHECK(sa > sb);

    // scaling both T_k by factor c adds sum m_k cv_k ln c
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        std::uniform_real_distribution<double> um(0.1, 5.0), uT(10, 1000), uc(1.1, 4.0);
        const double m1 = um(rng), m2 = um(rng), T1 = uT(rng), T2 = uT(rng), fac = uc(rng);
        // build states sharing rho_k and alpha, temperatures T and fac*T
        auto build = [&](double t1, double t2) {
            CellState s;
            s.m1 = m1; s.m2 = m2;
            s.alpha1 = 0.4;
            s.rhoE = m1 * mats2[0].cv * t1 + m2 * mats2[1].cv * t2;
            return s;
        };
        const double ds = mixture_entropy(build(fac * T1, fac * T2), mats2) -
                          mixture_entropy(build(T1, T2), mats2);
        CHECK(ds == doctest::Approx((m1 * mats2[0].cv + m2 * mats2[1].cv) * std::log(fac))
                        .epsilon(1e-11));
    }
}

TEST_CASE("relaxation never decreases entropy on random states") {
    auto mats = two_gases(1.9, 850.0, 1.25, 2400.0);
    std::mt19937 rng(23);
    for (int t = 0; t < 500; ++t) {
        CellState c = random_state(rng, mats);
        const double sb = mixture_entropy(c, mats);
        const double sa = mixture_entropy(relax_temperatures(c, mats), mats);
        CHECK(sa - sb >= -1e-12 * std::abs(sb));
    }
}
