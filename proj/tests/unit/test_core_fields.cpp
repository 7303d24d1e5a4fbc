#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mcflow/fields.hpp"

using namespace mcf;

namespace {

MaterialPair gases() {
    MaterialPair m;
    m[0] = {"a", 1.4, 700, 0, 0, 0};
    m[1] = {"b", 1.6, 500, 0, 0, 0};
    return m;
}

FieldSet fill_sequence_1d(const Grid& g) {
    FieldSet f(g);
    for (int i = g.ng; i < g.ng + g.nx; ++i) {
        const std::size_t q = g.idx(i, 0);
        f.m1[q] = 1.0 + i;
        f.m2[q] = 100.0 + i;
        f.mx[q] = 5.0;
        f.my[q] = 0.0;
        f.rhoE[q] = 1e5;
        f.alpha1[q] = 0.5;
    }
    return f;
}

}  // namespace

TEST_CASE("periodic ghost fill wraps") {
    Grid g = make_grid_1d(4, 0, 1, 2, BcType::Periodic, BcType::Periodic);
    FieldSet f = fill_sequence_1d(g);
    apply_boundary(f);
    // interior values a,b,c,d at i=2..5 -> left ghosts c,d; right ghosts a,b
    CHECK(f.m1[g.idx(0, 0)] == f.m1[g.idx(4, 0)]);
    CHECK(f.m1[g.idx(1, 0)] == f.m1[g.idx(5, 0)]);
    CHECK(f.m1[g.idx(6, 0)] == f.m1[g.idx(2, 0)]);
    CHECK(f.m1[g.idx(7, 0)] == f.m1[g.idx(3, 0)]);
}

TEST_CASE("zero gradient copies nearest interior") {
    Grid g = make_grid_1d(4, 0, 1, 2, BcType::ZeroGradient, BcType::ZeroGradient);
    FieldSet f = fill_sequence_1d(g);
    apply_boundary(f);
    CHECK(f.m1[g.idx(0, 0)] == f.m1[g.idx(2, 0)]);
    CHECK(f.m1[g.idx(1, 0)] == f.m1[g.idx(2, 0)]);
    CHECK(f.m1[g.idx(6, 0)] == f.m1[g.idx(5, 0)]);
    CHECK(f.m1[g.idx(7, 0)] == f.m1[g.idx(5, 0)]);
}

TEST_CASE("reflective wall mirrors with negated normal velocity") {
    Grid g = make_grid_1d(4, 0, 1, 2, BcType::Reflective, BcType::Reflective);
    FieldSet f = fill_sequence_1d(g);
    apply_boundary(f);
    CHECK(f.mx[g.idx(1, 0)] == -f.mx[g.idx(2, 0)]);
    CHECK(f.mx[g.idx(0, 0)] == -f.mx[g.idx(3, 0)]);
    CHECK(f.m1[g.idx(1, 0)] == f.m1[g.idx(2, 0)]);  // scalars copied
    CHECK(f.rhoE[g.idx(0, 0)] == f.rhoE[g.idx(3, 0)]);
}

TEST_CASE("uniform field is a fixed point of every BC") {
    for (BcType bc : {BcType::Periodic, BcType::ZeroGradient, BcType::Reflective}) {
        Grid g = make_grid_2d(4, 3, 0, 1, 0, 1, 2, bc, bc, bc, bc);
        FieldSet f(g);
        for (std::size_t q = 0; q < g.size(); ++q) {
            f.m1[q] = 1.0; f.m2[q] = 2.0; f.mx[q] = 0.0; f.my[q] = 0.0;
            f.rhoE[q] = 1e4; f.alpha1[q] = 0.3;
        }
        apply_boundary(f);
        for (std::size_t q = 0; q < g.size(); ++q) {
            CHECK(f.m1[q] == 1.0);
            CHECK(f.rhoE[q] == 1e4);
        }
    }
}

TEST_CASE("apply_boundary is idempotent") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(0.1, 10.0);
    for (BcType bc : {BcType::Periodic, BcType::ZeroGradient, BcType::Reflective}) {
        Grid g = make_grid_2d(5, 4, 0, 1, 0, 1, 3, bc, bc, bc, bc);
        FieldSet f(g);
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i) {
                const std::size_t q = g.idx(i, j);
                f.m1[q] = ur(rng); f.m2[q] = ur(rng); f.mx[q] = ur(rng) - 5.0;
                f.my[q] = ur(rng) - 5.0; f.rhoE[q] = 1e4 * ur(rng); f.alpha1[q] = 0.4;
            }
        apply_boundary(f);
        FieldSet copy = f;
        apply_boundary(f);
        for (std::size_t q = 0; q < g.size(); ++q) {
            CHECK(f.m1[q] == copy.m1[q]);
            CHECK(f.mx[q] == copy.mx[q]);
            CHECK(f.my[q] == copy.my[q]);
        }
    }
}

TEST_CASE("mismatched periodic pairing is rejected") {
    CHECK_THROWS_AS(make_grid_1d(8, 0, 1, 2, BcType::Periodic, BcType::ZeroGradient), ConfigError);
}

TEST_CASE("state floors clip and count") {
    Grid g = make_grid_1d(4, 0, 1, 2, BcType::Periodic, BcType::Periodic);
    FieldSet f = fill_sequence_1d(g);
    f.alpha1[g.idx(2, 0)] = -0.1;
    f.alpha1[g.idx(3, 0)] = 1.2;
    f.m1[g.idx(4, 0)] = 0.0;
    CHECK(apply_state_floors(f) == 3);
    CHECK(f.alpha1[g.idx(2, 0)] == kAlphaFloor);
    CHECK(f.alpha1[g.idx(3, 0)] == 1.0 - kAlphaFloor);
    CHECK(f.m1[g.idx(4, 0)] > 0.0);
    CHECK(apply_state_floors(f) == 0);
}

TEST_CASE("validate_fields flags bad cells with the stage name") {
    Grid g = make_grid_1d(4, 0, 1, 2, BcType::Periodic, BcType::Periodic);
    FieldSet f = fill_sequence_1d(g);
    f.rhoE[g.idx(3, 0)] = -1.0;
    try {
        validate_fields(f, gases(), "unit");
        CHECK(false);
    } catch (const PositivityError& e) {
        CHECK(std::string(e.what()).find("unit") != std::string::npos);
    }
}
