#include <doctest.h>

#include <random>

#include "nsi/ktheory.hpp"

using namespace nsi;

namespace {

Fan p2() { return fan2({{1, 0}, {0, 1}, {-1, -1}}); }
Fan p1xp1() { return fan2({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
Fan quadric_cone() { return fan2({{1, 0}, {0, 1}, {-1, -2}}); }
Fan third_point() { return fan2({{1, 0}, {0, 1}, {-1, -3}}); }
Fan two_sing() { return fan2({{1, 0}, {0, 1}, {-2, -1}, {-3, -2}}); }
Fan p3() {
    return fan3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
Fan p1112() {
    return fan3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -2}},
                {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

TorusDivisor random_divisor(std::mt19937_64& rng, std::size_t n, int bound) {
    std::uniform_int_distribution<int> coef(-bound, bound);
    TorusDivisor d(n);
    for (auto& c : d) c = coef(rng);
    return d;
}

} // namespace

TEST_SUITE("ktheory-limits") {

TEST_CASE("formal class normalization") {
    Fan f = p2();
    FormalClass a = FormalClass::structure_sheaf(f);
    CHECK(a.size() == 1);
    CHECK(a.terms()[0].mult == 1);

    a.add({1, 0, 0}, 2);
    a.add({1, 0, 0}, 3);
    CHECK(a.size() == 2);

    a.add({1, 0, 0}, -5); // cancels entirely
    CHECK(a.size() == 1);

    FormalClass d = FormalClass::divisor_sheaf(f, {1, 0, 0});
    CHECK(d.size() == 2);
    CHECK(chi_formal(f, d) == 2); // chi(O(H)) - chi(O) = 3 - 1
}

TEST_CASE("first Chern operator on the plane") {
    Fan f = p2();
    TorusDivisor h = {1, 0, 0};
    // chi(c1(H) [O_H]) = 3 - 1 - (1 - 0) = 1 = H^2
    FormalClass num = c1_apply(f, FormalClass::divisor_sheaf(f, h), h);
    CHECK(chi_formal(f, num) == 1);

    // c1 of the trivial divisor kills nothing but contributes zero
    FormalClass z = c1_apply(f, FormalClass::structure_sheaf(f), {0, 0, 0});
    CHECK(chi_formal(f, z) == 0);

    CHECK_THROWS_AS(c1_apply(f, FormalClass::structure_sheaf(f), {1, 0}),
                    DimensionMismatch);
    CHECK_THROWS_AS(
        c1_apply(quadric_cone(), FormalClass::structure_sheaf(quadric_cone()),
                 {0, 0, 1}),
        NotCartier);
}

TEST_CASE("cartier products of invariant divisors") {
    CHECK(cartier_product(p2(), {{1, 0, 0}, {1, 0, 0}}) == Rat(1));
    CHECK(cartier_product(p2(), {{2, 0, 0}, {3, 0, 0}}) == Rat(6));
    CHECK(cartier_product(p1xp1(), {{1, 0, 0, 0}, {0, 1, 0, 0}}) == Rat(1));
    CHECK(cartier_product(p1xp1(), {{1, 0, 0, 0}, {1, 0, 0, 0}}) == Rat(0));
    CHECK(cartier_product(quadric_cone(), {{0, 0, 2}, {0, 0, 2}}) == Rat(2));
    CHECK(cartier_product(p3(), {{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}}) ==
          Rat(1));
    // O(2)^3 = 8 * (1/2) on the weighted space
    CHECK(cartier_product(p1112(), {{0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 1, 0}}) ==
          Rat(4));
    CHECK_THROWS_AS(cartier_product(quadric_cone(), {{0, 0, 1}, {0, 0, 1}}),
                    NotCartier);
    CHECK_THROWS_AS(cartier_product(p2(), {{1, 0, 0}}), DimensionMismatch);
}

TEST_CASE("self pair limit on smooth surfaces") {
    LimitResult r = self_pair_limit(p2(), {1, 0, 0}, {});
    CHECK(r.value == Rat(1));
    CHECK(r.period_used == 1);
    CHECK(r.samples.size() == 5); // three fit points plus two held out
    REQUIRE(r.residue_leading_coefficients.size() == 1);
    CHECK(r.residue_leading_coefficients[0] == Rat(1, 2));

    CHECK(self_pair_limit(p1xp1(), {1, 1, 0, 0}, {}).value == Rat(2));
    CHECK(self_pair_limit(p2(), {0, 0, 0}, {}).value == Rat(0));
    CHECK(self_pair_limit(p2(), {-2, 0, 0}, {}).value == Rat(4));
}

TEST_CASE("self pair limit picks up fractional squares") {
    LimitResult r = self_pair_limit(quadric_cone(), {0, 0, 1}, {});
    CHECK(r.value == Rat(1, 2));
    CHECK(r.period_used == 2);
    CHECK(r.samples.size() == 8);
    for (const Rat& c : r.residue_leading_coefficients) CHECK(c == Rat(1, 4));

    r = self_pair_limit(third_point(), {1, 0, 0}, {});
    CHECK(r.value == Rat(1, 3));
    CHECK(r.period_used == 3);

    // Cartier multiple has period 1
    r = self_pair_limit(quadric_cone(), {0, 0, 2}, {});
    CHECK(r.value == Rat(2));
    CHECK(r.period_used == 1);
}

TEST_CASE("limit equals the model pairing on random divisors") {
    std::mt19937_64 rng(23);
    for (const Fan& f : {quadric_cone(), third_point(), two_sing()}) {
        ToricSurface ts = make_toric_surface(f);
        for (int t = 0; t < 6; ++t) {
            TorusDivisor d = random_divisor(rng, f.rays.size(), 2);
            CHECK(self_pair_limit(f, d, {}).value == ts.pair_divisors(d, d));
        }
    }
}

TEST_CASE("pair limit polarization") {
    CHECK(pair_limit(p2(), {1, 0, 0}, {2, 0, 0}, {}) == Rat(2));
    CHECK(pair_limit(p1xp1(), {1, 0, 0, 0}, {0, 1, 0, 0}, {}) == Rat(1));
    CHECK(pair_limit(quadric_cone(), {0, 0, 1}, {0, 0, 2}, {}) == Rat(1));
    ToricSurface ts = make_toric_surface(two_sing());
    std::mt19937_64 rng(29);
    for (int t = 0; t < 4; ++t) {
        TorusDivisor a = random_divisor(rng, 4, 2);
        TorusDivisor b = random_divisor(rng, 4, 2);
        CHECK(pair_limit(two_sing(), a, b, {}) == ts.pair_divisors(a, b));
    }
}

TEST_CASE("rank-3 limits need one Cartier insertion") {
    Fan f = p3();
    TorusDivisor h = {1, 0, 0, 0};
    CHECK(self_pair_limit(f, h, {h}).value == Rat(1));

    Fan w = p1112();
    TorusDivisor o1 = {0, 0, 0, 1}; // O(1), index 2
    TorusDivisor o2 = {0, 0, 1, 0}; // O(2), Cartier
    LimitResult r = self_pair_limit(w, o1, {o2});
    CHECK(r.value == Rat(1)); // (1/2) * 2
    CHECK(r.period_used == 2);
    CHECK(self_pair_limit(w, o2, {o2}).value == Rat(4));
    CHECK(pair_limit(w, o1, o2, {o2}) == Rat(2));

    CHECK_THROWS_AS(self_pair_limit(f, h, {}), DimensionMismatch);
    CHECK_THROWS_AS(self_pair_limit(p2(), {1, 0, 0}, {{1, 0, 0}}),
                    DimensionMismatch);
    CHECK_THROWS_AS(self_pair_limit(w, o1, {o1}), NotCartier);
}

TEST_CASE("period overrides") {
    // any multiple of the true period works
    LimitResult r = self_pair_limit(quadric_cone(), {0, 0, 1}, {}, 4);
    CHECK(r.value == Rat(1, 2));
    CHECK(r.period_used == 4);
    // a wrong period is caught by the held-out samples
    CHECK_THROWS_AS(self_pair_limit(quadric_cone(), {0, 0, 1}, {}, 1),
                    QuasiPolynomialMismatch);
    CHECK_THROWS_AS(self_pair_limit(p2(), {1, 0, 0}, {}, -1), InvalidPair);
}

TEST_CASE("frobenius rescaling limit") {
    for (long long p : {2LL, 3LL, 5LL})
        CHECK(frobenius_ch2_limit(p2(), {1, 0, 0}, p, {}) == Rat(1, 2));
    CHECK(frobenius_ch2_limit(quadric_cone(), {0, 0, 1}, 2, {}) == Rat(1, 4));
    CHECK(frobenius_ch2_limit(third_point(), {1, 0, 0}, 3, {}) == Rat(1, 6));
    CHECK(frobenius_ch2_limit(third_point(), {1, 0, 0}, 2, {}) == Rat(1, 6));
    CHECK(frobenius_ch2_limit(p3(), {1, 0, 0, 0}, 2, {{1, 0, 0, 0}}) ==
          Rat(1, 2));
    CHECK_THROWS_AS(frobenius_ch2_limit(p2(), {1, 0, 0}, 1, {}), InvalidPair);
}

TEST_CASE("limit samples match the direct oracle") {
    Fan f = quadric_cone();
    LimitResult r = self_pair_limit(f, {0, 0, 1}, {});
    for (const auto& [m, v] : r.samples) {
        FormalClass cls = FormalClass::sheaf({0, 0, m});
        CHECK(chi_formal(f, cls) == v);
    }
}

} // TEST_SUITE
