#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace latfour;
using testutil::ivec;

namespace {

WeightFunction table_weight(std::initializer_list<double> values) {
    WeightFunction::Map m;
    int i = 0;
    for (double v : values) m[{i++}] = v;
    return WeightFunction(std::move(m));
}

/// Sup over a dense s-grid joined with every breakpoint value.
double weak_constant_brute(const WeightFunction& phi) {
    std::vector<double> values;
    for (const auto& [k, v] : phi.values()) values.push_back(v);
    double vmax = *std::max_element(values.begin(), values.end());
    std::vector<double> candidates = values;
    for (int i = 1; i <= 1000; ++i) candidates.push_back(vmax * double(i) / 1000.0);
    double best = 0.0;
    for (double s : candidates) {
        std::size_t count = 0;
        for (double v : values)
            if (v >= s) ++count;
        best = std::max(best, s * double(count));
    }
    return best;
}

GridFunction random_band_limited(const Lattice& lat, int band, int n,
                                 std::uint64_t seed, int trial) {
    return inverse(random_spectrum(lat, band, seed, trial), n);
}

} // namespace

TEST_CASE("conjugate exponents", "[inequalities]") {
    CHECK(conj_exponent(2.0) == Catch::Approx(2.0));
    CHECK(conj_exponent(1.5) == Catch::Approx(3.0));
    CHECK(conj_exponent(4.0 / 3.0) == Catch::Approx(4.0));
    CHECK(conj_exponent(1.0) == kInf);
    CHECK(conj_exponent(kInf) == Catch::Approx(1.0));
}

TEST_CASE("domain norms on pinned functions", "[inequalities]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    GridFunction f = GridFunction::zero(z2, 6);
    for (auto& v : f.samples()) v = Complex(-2.0, 0.0);
    for (double p : {1.0, 1.5, 2.0, 7.0}) CHECK(lp_norm_domain(f, p) == Catch::Approx(2.0));
    CHECK(lp_norm_domain(f, kInf) == Catch::Approx(2.0));

    GridFunction mode = inverse(single_mode_spectrum(z2, 2, ivec({1, -1})), 8);
    for (double p : {1.0, 2.0, 3.0})
        CHECK(lp_norm_domain(mode, p) == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(lp_norm_domain(f, 0.5), BadExponent);
}

TEST_CASE("dual norms on pinned spectra", "[inequalities]") {
    Lattice z1 = new_lattice(Matrix::Identity(1, 1));
    Spectrum s = Spectrum::zero(z1, 1);
    s[ivec({-1})] = Complex(3.0, 0.0);
    s[ivec({1})] = Complex(0.0, -4.0);
    CHECK(lp_norm_dual(s, 2.0) == Catch::Approx(5.0));
    CHECK(lp_norm_dual(s, 1.0) == Catch::Approx(7.0));
    CHECK(lp_norm_dual(s, kInf) == Catch::Approx(4.0));
    CHECK(lp_norm_dual(Spectrum::zero(z1, 2), 2.0) == 0.0);
    CHECK_THROWS_AS(lp_norm_dual(s, 0.9), BadExponent);

    // Plancherel ties the two norm scales together.
    Spectrum r = random_spectrum(z1, 5, 88ull, 0);
    GridFunction f = inverse(r, 16);
    CHECK(lp_norm_domain(f, 2.0) ==
          Catch::Approx(lp_norm_dual(r, 2.0)).epsilon(1e-12));
}

TEST_CASE("weight functions validate and index", "[inequalities]") {
    CHECK_THROWS_AS(table_weight({1.0, -2.0}), Error);
    CHECK_THROWS_AS(table_weight({0.0}), Error);
    WeightFunction w = table_weight({2.0, 5.0});
    CHECK(w.at(ivec({1})) == 5.0);
    CHECK_THROWS_AS(w.at(ivec({3})), MissingWeight);

    Lattice z1 = new_lattice(Matrix::Identity(1, 1));
    WeightFunction phi = make_power_weight(z1, 3, 1.0);
    CHECK(phi.size() == 7);
    CHECK(phi.at(ivec({0})) == Catch::Approx(1.0));
    CHECK(phi.at(ivec({-3})) == Catch::Approx(4.0));
    WeightFunction phi2 = make_power_weight(z1, 2, 2.0);
    CHECK(phi2.at(ivec({2})) == Catch::Approx(9.0));
}

TEST_CASE("weak constant pinned values", "[inequalities]") {
    CHECK(weak_constant(table_weight({3.0, 2.0, 1.0})) == Catch::Approx(4.0));
    CHECK(weak_constant(table_weight({7.5})) == Catch::Approx(7.5));
    CHECK(weak_constant(table_weight({1.0, 1.0, 1.0, 1.0})) == Catch::Approx(4.0));
    // Constant weight on n points has weak constant exactly n.
    WeightFunction::Map m;
    for (int i = 0; i < 23; ++i) m[{i}] = 1.0;
    CHECK(weak_constant(WeightFunction(std::move(m))) == 23.0);
}

TEST_CASE("weak constant equals the brute-force supremum", "[inequalities]") {
    rng::Stream st(5050ull);
    for (int t = 0; t < 100; ++t) {
        WeightFunction::Map m;
        int n = st.uniform_int(1, 40);
        for (int i = 0; i < n; ++i) m[{i}] = st.uniform(0.05, 10.0);
        WeightFunction w(std::move(m));
        REQUIRE(weak_constant(w) == weak_constant_brute(w));
    }
}

TEST_CASE("weak constant is monotone in the weight", "[inequalities]") {
    rng::Stream st(6060ull);
    for (int t = 0; t < 50; ++t) {
        WeightFunction::Map lo, hi;
        int n = st.uniform_int(1, 30);
        for (int i = 0; i < n; ++i) {
            double v = st.uniform(0.1, 5.0);
            lo[{i}] = v;
            hi[{i}] = v + st.uniform(0.0, 3.0) + 1e-12;
        }
        REQUIRE(weak_constant(WeightFunction(lo)) <= weak_constant(WeightFunction(hi)));
    }
}

TEST_CASE("hausdorff-young holds with sharp single modes", "[inequalities]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    const int band = 5, n = 16;
    for (double p : {1.0, 1.25, 4.0 / 3.0, 1.5, 2.0}) {
        for (int t = 0; t < 50; ++t) {
            GridFunction f = random_band_limited(z2, band, n, 111ull, t);
            InequalityReport r = check_hausdorff_young(f, band, p);
            REQUIRE(r.ratio <= 1.0 + 1e-9);
            REQUIRE(r.hard_pass());
        }
        GridFunction mode = inverse(single_mode_spectrum(z2, band, ivec({2, -4})), n);
        CHECK(std::abs(check_hausdorff_young(mode, band, p).ratio - 1.0) < 1e-10);
    }
    GridFunction f = random_band_limited(z2, band, n, 111ull, 0);
    CHECK_THROWS_AS(check_hausdorff_young(f, band, 2.5), BadExponent);
    CHECK_THROWS_AS(check_hausdorff_young(f, band, 0.99), BadExponent);

    // p = 2 coincides with Plancherel, bit for bit.
    InequalityReport hy2 = check_hausdorff_young(f, band, 2.0);
    InequalityReport pl = check_plancherel(f, band);
    CHECK(hy2.ratio == pl.ratio);
    CHECK(pl.hard_pass());
}

TEST_CASE("inverse hausdorff-young holds on synthesized grids", "[inequalities]") {
    Lattice z1 = new_lattice(Matrix::Identity(1, 1));
    const int band = 8;
    for (double p : {1.0, 1.5, 2.0}) {
        for (int t = 0; t < 50; ++t) {
            Spectrum s = random_spectrum(z1, band, 222ull, t);
            InequalityReport r = check_hy_inverse(s, p, 4);
            REQUIRE(r.ratio <= 1.0 + 1e-6);
            REQUIRE(r.hard_pass());
        }
    }
    InequalityReport delta = check_hy_inverse(single_mode_spectrum(z1, band, ivec({3})), 1.5);
    CHECK(std::abs(delta.ratio - 1.0) < 1e-12);
    CHECK_THROWS_AS(check_hy_inverse(Spectrum::zero(z1, 2), 3.0), BadExponent);
}

TEST_CASE("paley on a single mode matches the closed form", "[inequalities]") {
    Lattice z1 = new_lattice(Matrix::Identity(1, 1));
    const int band = 6, n = 16;
    WeightFunction phi = make_power_weight(z1, band, 1.0);
    IVector k0 = ivec({4});
    GridFunction mode = inverse(single_mode_spectrum(z1, band, k0), n);
    InequalityReport r = check_paley(mode, band, 1.5, phi);
    const double want_lhs = std::pow(phi.at(k0), 1.0 / 3.0);
    CHECK(std::abs(r.lhs - want_lhs) < 1e-12 * want_lhs);
    const double want_rhs = std::pow(r.m_phi, 1.0 / 3.0);
    CHECK(std::abs(r.rhs_scaffold - want_rhs) < 1e-12 * want_rhs);
    CHECK(r.ratio <= 1.0);
    CHECK(r.hard_pass());

    CHECK_THROWS_AS(check_paley(mode, band, 1.0, phi), BadExponent);
    WeightFunction short_phi = make_power_weight(z1, band - 1, 1.0);
    CHECK_THROWS_AS(check_paley(mode, band, 1.5, short_phi), MissingWeight);
}

TEST_CASE("paley at p=2 reduces to plancherel", "[inequalities]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    WeightFunction phi = make_power_weight(z2, 4, 1.0);
    GridFunction f = random_band_limited(z2, 4, 12, 333ull, 0);
    InequalityReport r = check_paley(f, 4, 2.0, phi);
    InequalityReport pl = check_plancherel(f, 4);
    CHECK(r.lhs == Catch::Approx(pl.lhs).epsilon(1e-14));
    CHECK(r.rhs_scaffold == Catch::Approx(pl.rhs_scaffold).epsilon(1e-14));
}

TEST_CASE("hardy-littlewood classical weight wiring is exact", "[inequalities]") {
    Lattice z1 = new_lattice(Matrix::Identity(1, 1));
    const int band = 8, n = 24;
    WeightFunction phi = make_power_weight(z1, band, 1.0);
    CHECK(phi.at(ivec({-5})) == 6.0);

    for (double p : {1.25, 1.5, 1.75}) {
        GridFunction f = random_band_limited(z1, band, n, 444ull, int(p * 100));
        InequalityReport r = check_hardy_littlewood(f, band, p, phi, 1.0);

        Spectrum s = forward(f, band);
        double acc = 0.0, c = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            acc += std::pow(std::abs(s.entries()[i]), p) *
                   std::pow(phi.at(s.points()[i].index), p - 2.0);
        for (const auto& [k, v] : phi.values()) c += std::pow(v, -1.0);
        // beta = 1 must reproduce the direct exponent p-2 bit for bit.
        REQUIRE(r.lhs == std::pow(acc, 1.0 / p));
        REQUIRE(r.c_weight == c);
        REQUIRE(std::isfinite(r.ratio));
        REQUIRE(r.hard_pass());
    }
    GridFunction f = random_band_limited(z1, band, n, 444ull, 0);
    CHECK_THROWS_AS(check_hardy_littlewood(f, band, 1.5, phi, 0.0), BadExponent);
    CHECK_THROWS_AS(check_hardy_littlewood(f, band, 1.0, phi, 1.0), BadExponent);
}

TEST_CASE("hyp endpoints collapse onto hausdorff-young and paley", "[inequalities]") {
    Lattice z2 = new_lattice(Matrix::Identity(2, 2));
    const int band = 4, n = 12;
    WeightFunction phi = make_power_weight(z2, band, 1.0);
    for (double p : {1.25, 1.5, 1.8}) {
        const double pp = conj_exponent(p);
        for (int t = 0; t < 25; ++t) {
            GridFunction f = random_band_limited(z2, band, n, 555ull, t);
            InequalityReport at_pp = check_hyp(f, band, p, pp, phi);
            InequalityReport hy = check_hausdorff_young(f, band, p);
            REQUIRE(std::abs(at_pp.lhs - hy.lhs) <= 1e-12 * hy.lhs);

            InequalityReport at_p = check_hyp(f, band, p, p, phi);
            InequalityReport pv = check_paley(f, band, p, phi);
            REQUIRE(std::abs(at_p.lhs - pv.lhs) <= 1e-12 * pv.lhs);

            InequalityReport mid = check_hyp(f, band, p, 0.5 * (p + pp), phi);
            REQUIRE(std::isfinite(mid.ratio));
            REQUIRE(mid.hard_pass());
        }
        GridFunction f = random_band_limited(z2, band, n, 555ull, 0);
        CHECK_THROWS_AS(check_hyp(f, band, p, p - 0.1, phi), BadExponent);
        CHECK_THROWS_AS(check_hyp(f, band, p, pp + 0.1, phi), BadExponent);
    }
}

TEST_CASE("report fields flag the constant-free checks", "[inequalities]") {
    InequalityReport r;
    r.name = InequalityName::hy;
    r.ratio = 1.0 + 1e-10;
    CHECK(r.hard_pass());
    r.ratio = 1.0 + 1e-8;
    CHECK_FALSE(r.hard_pass());
    r.name = InequalityName::paley;
    CHECK(r.hard_pass());
    r.ratio = kInf;
    CHECK_FALSE(r.hard_pass());
    CHECK(std::string(to_string(InequalityName::hardy_littlewood)) == "hardy_littlewood");
}
