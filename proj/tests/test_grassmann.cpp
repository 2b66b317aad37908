#include <chabauty/grassmann.hpp>
#include <chabauty/lie.hpp>
#include <chabauty/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace chabauty;

namespace {

std::vector<Rat> vec(std::initializer_list<long long> xs) {
    std::vector<Rat> v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

SubspaceQ random_subspace(Rng& rng, long ambient, long r, long long h) {
    for (;;) {
        MatQ m(r, ambient);
        for (auto& x : m.a) x = rng.rational(h);
        SubspaceQ s = span_of(m);
        if (s.r() == r) return s;
    }
}

} // namespace

TEST_CASE("from_spanning_set canonicalizes") {
    // standard Cartan of sl3 from its dual basis
    SubspaceQ a = from_spanning_set({sl_coords(H3(Root3::Alpha).m), sl_coords(H3(Root3::Beta).m)}, 8);
    REQUIRE(a == standard_cartan(3));
    REQUIRE(a.r() == 2);

    // dependent spanning set reduces the dimension silently
    auto ua = sl_coords(U3(Root3::Alpha).m), ub = sl_coords(U3(Root3::Beta).m);
    std::vector<Rat> sum(8), dbl(8);
    for (int i = 0; i < 8; ++i) {
        sum[i] = ua[i] + ub[i];
        dbl[i] = 2 * sum[i];
    }
    SubspaceQ l11 = from_spanning_set({sum, dbl, sl_coords(U3(Root3::AlphaBeta).m)}, 8);
    REQUIRE(l11.r() == 2);

    SubspaceQ zero = from_spanning_set({std::vector<Rat>(8)}, 8);
    REQUIRE(zero.r() == 0);
}

TEST_CASE("basis scaling and shuffling leave the subspace unchanged") {
    Rng rng(1001);
    for (int t = 0; t < 40; ++t) {
        SubspaceQ s = random_subspace(rng, 6, 3, 5);
        std::vector<std::vector<Rat>> rows;
        for (long i = 0; i < 3; ++i) rows.push_back(s.basis_row(i));
        std::swap(rows[0], rows[2]);
        Rat c = rng.nonzero_rational(7);
        for (auto& x : rows[1]) x *= c;
        // add a multiple of another row
        for (int j = 0; j < 6; ++j) rows[0][j] += Rat(3) * rows[1][j];
        REQUIRE(from_spanning_set(rows, 6) == s);
    }
}

TEST_CASE("plucker on the stated small cases") {
    SubspaceQ s = from_spanning_set({vec({1, 0, 0}), vec({0, 1, 0})}, 3);
    REQUIRE(plucker(s).coords == std::vector<Int>{1, 0, 0});

    SubspaceQ t = from_spanning_set({vec({1, 0, 1}), vec({0, 1, 0})}, 3);
    REQUIRE(plucker(t).coords == std::vector<Int>{1, 0, -1});

    SubspaceQ a = standard_cartan(3);
    REQUIRE(plucker(adjoint_subspace(GroupElement::identity(3), a)) == plucker(a));

    REQUIRE_THROWS_AS(plucker(from_spanning_set({std::vector<Rat>(3)}, 3)),
                      std::invalid_argument);
}

TEST_CASE("subspace equality iff plucker equality") {
    Rng rng(555);
    std::vector<SubspaceQ> pool;
    std::vector<PluckerVec> pv;
    for (int t = 0; t < 60; ++t) {
        SubspaceQ s = random_subspace(rng, 7, 3, 4);
        // re-spanned copy must produce an identical vector
        std::vector<std::vector<Rat>> rows;
        for (long i = 0; i < 3; ++i) rows.push_back(s.basis_row(i));
        for (int j = 0; j < 7; ++j) rows[0][j] = rows[0][j] * rat(3, 2) + rows[2][j];
        SubspaceQ copy = from_spanning_set(rows, 7);
        REQUIRE(copy == s);
        REQUIRE(plucker(copy) == plucker(s));
        pool.push_back(s);
        pv.push_back(plucker(s));
    }
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i + 1; j < pool.size(); ++j)
            REQUIRE((pool[i] == pool[j]) == (pv[i] == pv[j]));
}

TEST_CASE("projector distance: axioms and the closed-form line case") {
    SubspaceQ e1 = from_spanning_set({vec({1, 0})}, 2);
    SubspaceQ e2 = from_spanning_set({vec({0, 1})}, 2);
    REQUIRE(distance(to_float(e1), to_float(e1)) == 0.0);
    REQUIRE_THAT(distance(to_float(e1), to_float(e2)),
                 Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-12));

    Rng rng(777);
    for (int t = 0; t < 20; ++t) {
        SubspaceF a = to_float(random_subspace(rng, 5, 2, 5));
        SubspaceF b = to_float(random_subspace(rng, 5, 2, 5));
        SubspaceF c = to_float(random_subspace(rng, 5, 2, 5));
        REQUIRE_THAT(distance(a, b), Catch::Matchers::WithinAbs(distance(b, a), 1e-13));
        REQUIRE(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
    }
    REQUIRE_THROWS_AS(distance(to_float(e1), to_float(from_spanning_set({vec({1, 0, 0})}, 3))),
                      std::invalid_argument);
}

TEST_CASE("distance is invariant under orthogonal ambient change") {
    // a rational rotation (3-4-5 triangle) applied to both subspaces
    Rng rng(778);
    MatQ rot = MatQ::identity(5);
    rot(0, 0) = rat(3, 5);
    rot(0, 1) = rat(-4, 5);
    rot(1, 0) = rat(4, 5);
    rot(1, 1) = rat(3, 5);
    for (int t = 0; t < 10; ++t) {
        SubspaceQ s1 = random_subspace(rng, 5, 2, 4);
        SubspaceQ s2 = random_subspace(rng, 5, 2, 4);
        SubspaceQ r1 = span_of(s1.basis * rot.transpose());
        SubspaceQ r2 = span_of(s2.basis * rot.transpose());
        REQUIRE_THAT(distance(to_float(r1), to_float(r2)),
                     Catch::Matchers::WithinAbs(distance(to_float(s1), to_float(s2)), 1e-10));
    }
}

TEST_CASE("float projector detects exact equality on sampled pairs") {
    Rng rng(91);
    for (int t = 0; t < 30; ++t) {
        SubspaceQ s = random_subspace(rng, 8, 2, 6);
        SubspaceQ u = random_subspace(rng, 8, 2, 6);
        REQUIRE(distance(to_float(s), to_float(s)) < 1e-9);
        if (!(s == u)) REQUIRE(distance(to_float(s), to_float(u)) > 1e-9);
    }
}

TEST_CASE("limit_estimate: constant family converges with zero gaps") {
    SubspaceQ a = standard_cartan(3);
    SeqFamily f{"constant", [a](long) { return a; }};
    auto est = limit_estimate(f, {10, 100, 1000}, 1e-3);
    REQUIRE(est.certified);
    for (double g : est.gaps) REQUIRE(g == 0.0);
}

TEST_CASE("limit_estimate: conjugated sl3 Cartan family reaches l_alpha") {
    // Ad b(n^3, 0, 0) applied to the diagonal Cartan; the n^3 clock makes the
    // consecutive gaps fall below 1e-4 by the last index.
    SubspaceQ a = standard_cartan(3);
    SeqFamily f{"cartan-to-alpha", [a](long n) {
                    Rat t = Rat(n) * Rat(n) * Rat(n);
                    return adjoint_subspace(b_family(t, Rat(0), Rat(0)), a);
                }};
    auto est = limit_estimate(f, {10, 100, 1000}, 1e-4);
    REQUIRE(est.certified);

    SubspaceQ l_alpha = from_spanning_set(
        {sl_coords(H3(Root3::Beta).m), sl_coords(U3(Root3::Alpha).m)}, 8);
    REQUIRE(distance(est.limit, to_float(l_alpha)) < 1e-4);
}

TEST_CASE("limit_estimate: sl2 line family reaches the nilpotent line") {
    // Ad exp(tU)(H) = H - 2tU, so the line tends to R.U
    MatQ h(2, 2), u(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    u(0, 1) = 1;
    SeqFamily f{"sl2-line", [&](long n) {
                    Rat t = Rat(n) * Rat(n);
                    MatQ img = h - (2 * t) * u;
                    return from_spanning_set({sl_coords(img)}, 3);
                }};
    auto est = limit_estimate(f, {10, 100, 1000}, 1e-4);
    REQUIRE(est.certified);
    REQUIRE(distance(est.limit, to_float(from_spanning_set({sl_coords(u)}, 3))) < 1e-4);
}

TEST_CASE("limit_estimate refuses a non-monotone family") {
    SubspaceQ e1 = from_spanning_set({vec({1, 0})}, 2);
    SubspaceQ e2 = from_spanning_set({vec({0, 1})}, 2);
    SubspaceQ mix = from_spanning_set({vec({1, 1})}, 2);
    SeqFamily f{"drifting", [&](long n) { return n <= 4 ? e1 : (n <= 6 ? mix : e2); }};
    auto est = limit_estimate(f, {2, 3, 4, 6, 8}, 1e-3);
    REQUIRE_FALSE(est.certified);
    REQUIRE(est.note == "no convergence certificate");
}
