#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace latfour;
using testutil::vec;

TEST_CASE("parallelotope membership on pinned points", "[domain]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    Parallelotope box(z2);
    CHECK(box.membership(vec({0.25, 0.75})));
    CHECK(box.membership(vec({0.0, 0.0})));
    CHECK_FALSE(box.membership(vec({1.25, -0.25})));
    CHECK_FALSE(box.membership(vec({1.0, 0.5})));

    Matrix shear(2, 2);
    shear << 1, 1, 0, 1;
    Parallelotope slab(new_lattice(shear));
    CHECK(slab.membership(vec({1.5, 0.75})));
    CHECK_FALSE(slab.membership(vec({0.5, 0.75})));
}

TEST_CASE("reduce hits pinned representatives", "[domain]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    Parallelotope box(z2);
    Vector r = reduce(box, vec({0.25, 0.75}));
    CHECK((r - vec({0.25, 0.75})).cwiseAbs().maxCoeff() < 1e-15);
    r = reduce(box, vec({1.25, -0.25}));
    CHECK((r - vec({0.25, 0.75})).cwiseAbs().maxCoeff() < 1e-12);

    Matrix d21(2, 2);
    d21 << 2, 0, 0, 1;
    Parallelotope wide(new_lattice(d21));
    r = reduce(wide, vec({2.5, 0.0}));
    CHECK((r - vec({0.5, 0.0})).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reduce lands in the domain and is idempotent", "[domain]") {
    rng::Stream st(314159ull);
    for (int rep = 0; rep < 4; ++rep) {
        int d = 1 + rep % 3;
        Matrix a = testutil::random_generator(d, st);
        Parallelotope dom(new_lattice(a));
        for (int t = 0; t < 2500; ++t) {
            Vector x(d);
            for (int i = 0; i < d; ++i) x(i) = st.uniform(-10.0, 10.0);
            Vector r1 = reduce(dom, x);
            REQUIRE(dom.membership(r1));
            Vector r2 = reduce(dom, r1);
            REQUIRE((r2 - r1).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("reduce respects lattice periodicity", "[domain]") {
    rng::Stream st(2718ull);
    Matrix a = testutil::random_generator(2, st);
    Parallelotope dom(new_lattice(a));
    for (int t = 0; t < 50; ++t) {
        Vector x(2);
        x << st.uniform(-3.0, 3.0), st.uniform(-3.0, 3.0);
        Vector base = reduce(dom, x);
        for (int m1 = -5; m1 <= 5; ++m1)
            for (int m2 = -5; m2 <= 5; ++m2) {
                Vector shifted = x + a.col(0) * m1 + a.col(1) * m2;
                REQUIRE((reduce(dom, shifted) - base).cwiseAbs().maxCoeff() < 1e-10);
            }
    }
}

TEST_CASE("hexagonal domain membership for d=2", "[domain]") {
    HexDomainAd hex(2);
    CHECK(hex.membership(vec({0.0, 0.0, 0.0})));
    CHECK(hex.membership(vec({0.5, -0.5, 0.0})));
    // Vertex with t_i - t_j = 1 is kept, its antipode is excluded.
    CHECK(hex.membership(vec({2.0 / 3, -1.0 / 3, -1.0 / 3})));
    CHECK_FALSE(hex.membership(vec({-2.0 / 3, 1.0 / 3, 1.0 / 3})));
    CHECK_FALSE(hex.membership(vec({0.7, -0.7, 0.0})));
    CHECK_FALSE(hex.membership(vec({0.1, 0.1, 0.1})));
    CHECK_FALSE(hex.membership(vec({0.0, 0.0})));
}

TEST_CASE("measures of pinned domains", "[domain]") {
    Matrix d21(2, 2);
    d21 << 2, 0, 0, 1;
    Parallelotope wide(new_lattice(d21));
    CHECK(measure(wide) == Catch::Approx(2.0));
    CHECK(measure(Parallelotope(new_lattice(Matrix::Identity(3, 3)))) == Catch::Approx(1.0));
    CHECK(measure(HexDomainAd(1)) == Catch::Approx(std::sqrt(2.0)));
    CHECK(measure(HexDomainAd(2)) == Catch::Approx(std::sqrt(3.0)));
    CHECK(measure(HexDomainAd(3)) == Catch::Approx(2.0));
}

TEST_CASE("monte carlo measure of the hexagon matches the closed form", "[domain]") {
    double est = mc_measure(HexDomainAd(2), 400000, 99ull);
    CHECK(std::abs(est - std::sqrt(3.0)) / std::sqrt(3.0) < 0.01);
}

TEST_CASE("parallelotope tiling fraction is one for pinned lattices", "[domain]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    TilingReport rep = tiling_check(Parallelotope(z2), z2, 10000,
                                    suggested_shift_radius(z2), 11ull);
    CHECK(rep.domain_id == "parallelotope");
    CHECK(rep.n_samples == 10000);
    CHECK(rep.seed == 11ull);
    CHECK(rep.fraction_exactly_one >= 0.999);

    rng::Stream st(808ull);
    Matrix a = testutil::random_generator(2, st);
    Lattice lat = new_lattice(a);
    TilingReport rnd = tiling_check(Parallelotope(lat), lat, 4000,
                                    suggested_shift_radius(lat), 12ull);
    CHECK(rnd.fraction_exactly_one >= 0.999);
}

TEST_CASE("hexagonal tiling fraction is one for d=1,2,3", "[domain]") {
    for (int d : {1, 2, 3}) {
        EmbeddedLattice lat = a_d_lattice(d);
        HexDomainAd dom(d);
        std::int64_t n = d == 3 ? 1500 : 5000;
        TilingReport rep = tiling_check(dom, lat, n, suggested_shift_radius(lat),
                                        21ull + std::uint64_t(d));
        INFO("d = " << d);
        CHECK(rep.domain_id == "hex_a" + std::to_string(d));
        CHECK(rep.fraction_exactly_one >= 0.999);
    }
}

TEST_CASE("shrunken hexagon leaves visible gaps", "[domain]") {
    EmbeddedLattice lat = a_d_lattice(2);
    HexDomainAd hex(2);
    auto shrunk = [&hex](const Vector& t) { return hex.membership(t / 0.9); };
    TilingReport rep = tiling_check("hex_shrunk", shrunk, lat, 5000,
                                    suggested_shift_radius(lat), 31ull);
    CHECK(rep.fraction_exactly_one < 0.9);
    CHECK(rep.fraction_exactly_one > 0.5);
}

TEST_CASE("undersized shift radius is reported, not silently scored", "[domain]") {
    EmbeddedLattice lat = a_d_lattice(2);
    HexDomainAd hex(2);
    CHECK_THROWS_AS(tiling_check(hex, lat, 1000, 0, 5ull), InsufficientShiftRadius);

    Matrix shear(2, 2);
    shear << 1, 1, 0, 1;
    Lattice lat2 = new_lattice(shear);
    CHECK_THROWS_AS(tiling_check(Parallelotope(lat2), lat2, 500, 0, 5ull),
                    InsufficientShiftRadius);
}
