#include <chabauty/blownball.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace chabauty;
using namespace chabauty::blownball;

TEST_CASE("signed square-root coordinate change round-trips") {
    Rng rng(1);
    for (int t = 0; t < 200; ++t) {
        double z = rng.uniform_real(-50, 50);
        REQUIRE_THAT(from_zprime(to_zprime(z)), Catch::Matchers::WithinULP(z, 1));
    }
    REQUIRE(to_zprime(4) == 2.0);
    REQUIRE(to_zprime(-9) == -3.0);
}

TEST_CASE("collapse maps on the stated points") {
    auto v = f_map(Root3::AlphaBeta, Point::interior(3, 4, 0.37));
    REQUIRE_FALSE(v.boundary);
    REQUIRE(v.u == 3.0);
    REQUIRE(v.v == 4.0);

    auto w = f_map(Root3::Alpha, Point::interior(17.5, 0, 0));
    REQUIRE(w.u == 0.0);
    REQUIRE(w.v == 0.0);

    auto s = f_map(Root3::Alpha, Point::sphere(0, 1, 0));
    REQUIRE(s.boundary);
    REQUIRE_THAT(s.u, Catch::Matchers::WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(s.v, Catch::Matchers::WithinAbs(0.0, 1e-15));

    // the blown antipodal pair is outside the domain
    REQUIRE_THROWS_AS(f_map(Root3::Alpha, Point::sphere(1, 0, 0)), std::invalid_argument);
    REQUIRE_THROWS_AS(f_map(Root3::AlphaBeta, Point::sphere(0, 0, 1)), std::invalid_argument);
}

TEST_CASE("collapse maps are positively homogeneous on the sphere") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        double x = rng.uniform_real(-1, 1), y = rng.uniform_real(-1, 1),
               zp = rng.uniform_real(-1, 1);
        if (std::fabs(y) < 0.1 && std::fabs(zp) < 0.1) continue;
        Point p = Point::sphere(x, y, zp);
        auto a = f_map(Root3::Alpha, p);
        // scaling the representative does not move the image
        Point q = p;
        for (auto& c : q.xyz) c *= 3.0;
        auto b = f_map(Root3::Alpha, q);
        REQUIRE_THAT(a.u, Catch::Matchers::WithinAbs(b.u, 1e-12));
        REQUIRE_THAT(a.v, Catch::Matchers::WithinAbs(b.v, 1e-12));
    }
}

TEST_CASE("boundary maps on the stated points") {
    REQUIRE(p1_distance(g_map(Point::disk_boundary(Root3::Alpha, 1, 0)),
                        p1_from_ratio(0, 1)) < 1e-12);
    REQUIRE(p1_distance(g_map(Point::disk_boundary(Root3::AlphaBeta, 1, 1)),
                        p1_from_ratio(-1, 1)) < 1e-12);

    double c = 1 / std::sqrt(3.0);
    REQUIRE(p1_distance(g_map(Point::sphere(c, c, c)), p1_from_ratio(3, -1)) < 1e-12);

    REQUIRE_THROWS_AS(g_map(Point::interior(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("phi on the stated points") {
    REQUIRE(distance(phi(Point::interior(0, 0, 0)), to_float(sl3::cartan())) < 1e-12);
    REQUIRE(distance(phi(Point::disk(Root3::AlphaBeta, 0, 0)),
                     to_float(sl3::l_root(Root3::AlphaBeta))) < 1e-12);
    // the circle point [1:1] of the long-root disk lands on l_[-1:1]
    REQUIRE(distance(phi(Point::disk_boundary(Root3::AlphaBeta, 1, 1)),
                     to_float(sl3::l_proj(Rat(-1), Rat(1)))) < 1e-12);
}

TEST_CASE("phi agrees with the exact conjugation on rational interior points") {
    Rng rng(12);
    for (int t = 0; t < 30; ++t) {
        Rat x = rng.rational(5), y = rng.rational(5), z = rng.rational(5);
        Point p = Point::interior(to_double(x), to_double(y), to_zprime(to_double(z)));
        REQUIRE(distance(phi(p), to_float(phi_exact(x, y, z))) < 1e-9);
    }
    // disk strata against the exact wall conjugates
    for (int t = 0; t < 10; ++t) {
        Rat u = rng.rational(5), v = rng.rational(5);
        Point p = Point::disk(Root3::Alpha, to_double(u), to_zprime(to_double(v)));
        REQUIRE(distance(phi(p), to_float(phi_exact_disk(Root3::Alpha, u, v))) < 1e-9);
    }
}

TEST_CASE("attaching degrees") {
    REQUIRE(circle_degree(Root3::Alpha) == 0);
    REQUIRE(circle_degree(Root3::Beta) == 0);
    REQUIRE(circle_degree(Root3::AlphaBeta) == 2);
    // sampling stability
    REQUIRE(circle_degree(Root3::AlphaBeta, 256) == circle_degree(Root3::AlphaBeta, 512));
    REQUIRE(circle_degree(Root3::Alpha, 256) == circle_degree(Root3::Alpha, 1024));
}

TEST_CASE("cell census derived from the orbit dimensions") {
    auto census = cell_census();
    REQUIRE(census == std::map<long, long>{{0, 2}, {1, 2}, {2, 3}, {3, 1}});
}

TEST_CASE("fundamental group order from attaching degrees") {
    REQUIRE(pi1_from_degrees({0, 0, 2}) == 2ULL);
    REQUIRE(pi1_from_degrees({1}) == 1ULL);
    REQUIRE_FALSE(pi1_from_degrees({0, 0}).has_value());
    REQUIRE(pi1_from_degrees({4, 6}) == 2ULL);
}

TEST_CASE("continuity probes at stratified targets") {
    Rng rng(99);
    std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<Point> targets{
        Point::interior(0.5, -1.5, 0.25),
        Point::disk(Root3::Alpha, 0, 0),
        Point::disk(Root3::Beta, -2, 1),
        Point::disk_boundary(Root3::AlphaBeta, 1, 1),
        Point::sphere(0.5, 0.5, 0.7),
    };
    for (const auto& t : targets) {
        auto rep = continuity_probe(t, 12, radii, 1e-3, rng);
        REQUIRE(rep.pass);
        REQUIRE(rep.phi_deviation.back() < 1e-3);
        if (!rep.g_deviation.empty()) REQUIRE(rep.g_deviation.back() < 1e-2);
    }
    // constant approach: the degenerate probe of a point against itself
    auto rep = continuity_probe(Point::interior(1, 1, 1), 12, {0.0, 0.0, 0.0}, 1e-3, rng);
    REQUIRE(rep.phi_deviation.back() == 0.0);
}

TEST_CASE("injectivity after the boundary quotient") {
    Rng rng(123);
    auto rep = injectivity_probe(200, 1e-6, rng);
    REQUIRE(rep.pass);
    REQUIRE(rep.compared + rep.identified == 200);
}
