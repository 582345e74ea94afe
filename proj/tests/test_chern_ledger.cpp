#include <doctest.h>

#include <random>

#include "nsi/chern.hpp"
#include "nsi/cohomology.hpp"

using namespace nsi;

namespace {

Fan p2() { return fan2({{1, 0}, {0, 1}, {-1, -1}}); }
Fan quadric_cone() { return fan2({{1, 0}, {0, 1}, {-1, -2}}); }
Fan third_point() { return fan2({{1, 0}, {0, 1}, {-1, -3}}); }
Fan two_sing() { return fan2({{1, 0}, {0, 1}, {-2, -1}, {-3, -2}}); }

SheafData quadric_example(const NormalSurfaceModel& m) {
    SheafData s;
    s.rank = 2;
    s.c1 = {Rat(1), Rat(0), Rat(1), Rat(0)};
    s.local_c2 = {{0, Rat(1, 4)}};
    s.smooth_c2 = Rat(2);
    validate(s, m);
    return s;
}

SheafData random_sheaf(std::mt19937_64& rng, const NormalSurfaceModel& m) {
    std::uniform_int_distribution<int> rank(1, 3);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> den(1, 4);
    SheafData s;
    s.rank = rank(rng);
    for (std::size_t i = 0; i < m.basis.size(); ++i) s.c1.push_back(Rat(coef(rng)));
    s.smooth_c2 = Rat(coef(rng), den(rng));
    if (s.rank > 1)
        for (std::size_t g = 0; g < m.exceptional_groups.size(); ++g)
            s.local_c2[static_cast<int>(g)] = Rat(coef(rng), den(rng));
    validate(s, m);
    return s;
}

QVector random_line_class(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> coef(-3, 3);
    QVector L(n);
    for (auto& c : L) c = Rat(coef(rng));
    return L;
}

} // namespace

TEST_SUITE("chern-ledger") {

TEST_CASE("line bundles carry no second Chern data") {
    NormalSurfaceModel m = export_surface_model(quadric_cone());
    SheafData s = line_bundle(m, {Rat(0), Rat(0), Rat(1), Rat(0)});
    CHECK(int_c2(s, m) == Rat(0));
    CHECK(delta(s, m) == Rat(0));
    CHECK(ch2(s, m) == Rat(1, 4)); // (1/2)/2
    CHECK(bogomolov_check(s, m));
}

TEST_CASE("ledger frozen values on the quadric cone model") {
    NormalSurfaceModel m = export_surface_model(quadric_cone());
    SheafData s = quadric_example(m);
    CHECK(pair(m, s.c1, s.c1) == Rat(2)); // O(2) squared
    CHECK(int_c2(s, m) == Rat(7, 4));
    CHECK(delta(s, m) == Rat(5));
    CHECK(ch2(s, m) == Rat(-3, 4));
    CHECK(bogomolov_check(s, m));
}

TEST_CASE("sheaf validation") {
    NormalSurfaceModel m = export_surface_model(quadric_cone());
    SheafData s = quadric_example(m);

    SheafData bad = s;
    bad.rank = 0;
    CHECK_THROWS_AS(validate(bad, m), ModelMismatch);

    bad = s;
    bad.c1.pop_back();
    CHECK_THROWS_AS(validate(bad, m), ModelMismatch);

    bad = s;
    bad.local_c2[5] = Rat(1);
    CHECK_THROWS_AS(validate(bad, m), ModelMismatch);

    bad = s;
    bad.rank = 1;
    CHECK_THROWS_AS(validate(bad, m), ModelMismatch); // nonzero local at rank 1
}

TEST_CASE("twisting by a line class preserves the discriminant") {
    std::mt19937_64 rng(31);
    for (const Fan& f : {quadric_cone(), two_sing()}) {
        NormalSurfaceModel m = export_surface_model(f);
        for (int t = 0; t < 20; ++t) {
            SheafData s = random_sheaf(rng, m);
            QVector L = random_line_class(rng, m.basis.size());
            SheafData tw = twist(s, m, L);
            CHECK(tw.rank == s.rank);
            CHECK(delta(tw, m) == delta(s, m));
            // twisting twice composes
            SheafData tw2 = twist(tw, m, L);
            CHECK(delta(tw2, m) == delta(s, m));
        }
    }
}

TEST_CASE("direct sums add ranks, c1, and second Chern characters") {
    std::mt19937_64 rng(37);
    NormalSurfaceModel m = export_surface_model(two_sing());
    for (int t = 0; t < 20; ++t) {
        SheafData a = random_sheaf(rng, m);
        SheafData b = random_sheaf(rng, m);
        SheafData s = direct_sum(a, b, m);
        CHECK(s.rank == a.rank + b.rank);
        CHECK(s.c1 == add(a.c1, b.c1));
        CHECK(ch2(s, m) == ch2(a, m) + ch2(b, m));
    }
}

TEST_CASE("c2 of a split rank-2 bundle is the intersection number") {
    NormalSurfaceModel m = export_surface_model(quadric_cone());
    SheafData a = line_bundle(m, {Rat(0), Rat(0), Rat(1), Rat(0)});
    SheafData b = line_bundle(m, {Rat(0), Rat(1), Rat(0), Rat(0)});
    SheafData s = direct_sum(a, b, m);
    CHECK(int_c2(s, m) == pair(m, a.c1, b.c1));
    CHECK(int_c2(s, m) == Rat(1));
}

TEST_CASE("frobenius rescaling scales the ledger exactly") {
    NormalSurfaceModel m = export_surface_model(quadric_cone());
    SheafData s = quadric_example(m);
    SheafData f1 = frobenius_scale(s, 2, 1);
    CHECK(f1.c1 == scale(Rat(2), s.c1));
    CHECK(delta(f1, m) == Rat(4) * delta(s, m));
    CHECK(ch2(f1, m) == Rat(4) * ch2(s, m));
    SheafData f2 = frobenius_scale(s, 3, 2);
    CHECK(delta(f2, m) == Rat(81) * delta(s, m));
    CHECK(frobenius_scale(s, 5, 0) == s);
    CHECK_THROWS_AS(frobenius_scale(s, 0, 1), InvalidPair);
    CHECK_THROWS_AS(frobenius_scale(s, 2, -1), InvalidPair);
}

TEST_CASE("discriminant, ch2 and c1^2 are consistent") {
    std::mt19937_64 rng(41);
    NormalSurfaceModel m = export_surface_model(third_point());
    for (int t = 0; t < 20; ++t) {
        SheafData s = random_sheaf(rng, m);
        CHECK(delta(s, m) ==
              pair(m, s.c1, s.c1) - Rat(2 * s.rank) * ch2(s, m));
    }
}

TEST_CASE("bogomolov check flags negative discriminants") {
    NormalSurfaceModel m = export_surface_model(quadric_cone());
    SheafData s;
    s.rank = 2;
    s.c1 = {Rat(2), Rat(0), Rat(2), Rat(0)}; // c1^2 = 8
    s.smooth_c2 = Rat(1);
    CHECK(delta(s, m) == Rat(-4));
    CHECK(!bogomolov_check(s, m));
}

TEST_CASE("defect report frozen values") {
    DefectReport r = rr_defect(quadric_cone(), {0, 0, 1});
    CHECK(r.total == Rat(-1, 4));
    CHECK(r.per_point == std::map<int, Rat>{{0, Rat(-1, 4)}});
    CHECK(rr_defect(quadric_cone(), {0, 0, 2}).total == Rat(0));

    CHECK(rr_defect(third_point(), {1, 0, 0}).total == Rat(0));
    CHECK(rr_defect(third_point(), {2, 0, 0}).total == Rat(-1, 3));

    r = rr_defect(two_sing(), {0, 1, 0, 0});
    CHECK(r.per_point == std::map<int, Rat>{{0, Rat(-1, 4)}, {1, Rat(0)}});
    CHECK(r.total == Rat(-1, 4));

    r = rr_defect(p2(), {2, -1, 3});
    CHECK(r.total == Rat(0));
    CHECK(r.per_point.empty());
}

TEST_CASE("cartier divisors have no defect") {
    for (const Fan& f : {quadric_cone(), third_point(), two_sing()}) {
        ToricSurface ts = make_toric_surface(f);
        std::mt19937_64 rng(43);
        std::uniform_int_distribution<int> coef(-2, 2);
        for (int t = 0; t < 10; ++t) {
            TorusDivisor d(f.rays.size());
            for (auto& c : d) c = coef(rng);
            if (!is_cartier(f, d)) continue;
            DefectReport r = rr_defect(ts, d);
            CHECK(r.total == Rat(0));
            for (const auto& [g, v] : r.per_point) CHECK(v == Rat(0));
        }
    }
}

TEST_CASE("riemann-roch with oracle defects reproduces chi") {
    for (const Fan& f : {quadric_cone(), third_point()}) {
        ToricSurface ts = make_toric_surface(f);
        TorusDivisor d(3);
        for (d[0] = -2; d[0] <= 2; ++d[0])
            for (d[1] = -2; d[1] <= 2; ++d[1])
                for (d[2] = -2; d[2] <= 2; ++d[2]) {
                    SheafData s = line_bundle(ts.model, ts.strict_class(d));
                    Rat rr = riemann_roch(s, ts.model, rr_defect(ts, d));
                    CHECK(rr == Rat(chi(f, d)));
                }
    }
}

TEST_CASE("riemann-roch needs chi(O)") {
    ToricSurface ts = make_toric_surface(quadric_cone());
    NormalSurfaceModel m = ts.model;
    m.chi_o.reset();
    SheafData s = line_bundle(m, {Rat(0), Rat(0), Rat(1), Rat(0)});
    CHECK_THROWS_AS(riemann_roch(s, m, DefectReport{}), MissingChiO);
    ts.model.chi_o.reset();
    CHECK_THROWS_AS(rr_defect(ts, {0, 0, 1}), MissingChiO);
}

TEST_CASE("defect sweeps") {
    DefectSweep s = defect_sweep(quadric_cone(), 2);
    CHECK(s.values == std::vector<Rat>{Rat(-1, 4), Rat(0)});
    CHECK(s.min == Rat(-1, 4));
    CHECK(s.max == Rat(0));

    s = defect_sweep(third_point(), 2);
    CHECK(s.values == std::vector<Rat>{Rat(-1, 3), Rat(0)});

    s = defect_sweep(two_sing(), 2);
    CHECK(s.values == std::vector<Rat>{Rat(-1, 2), Rat(-1, 4), Rat(0)});

    // the realized value set stabilizes once every residue pattern appears
    CHECK(defect_sweep(two_sing(), 3).values == s.values);

    s = defect_sweep(quadric_cone(), 0);
    CHECK(s.values == std::vector<Rat>{Rat(0)});

    CHECK_THROWS_AS(defect_sweep(quadric_cone(), -1), InvalidPair);
    Fan f3 = fan3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK_THROWS_AS(defect_sweep(f3, 1), DimensionMismatch);
}

} // TEST_SUITE
