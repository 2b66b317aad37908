#include <chabauty/membership.hpp>
#include <chabauty/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace chabauty;

namespace {

bool upper_triangular_subspace(const SubspaceQ& s) {
    int n = n_from_ambient(s.ambient);
    for (long i = 0; i < s.r(); ++i) {
        MatQ m = sl_matrix(n, s.basis_row(i));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < r; ++c)
                if (!m(r, c).is_zero()) return false;
    }
    return true;
}

SubspaceQ l_proj_11() {
    auto ua = sl_coords(U3(Root3::Alpha).m), ub = sl_coords(U3(Root3::Beta).m);
    std::vector<Rat> sum(8);
    for (int i = 0; i < 8; ++i) sum[i] = ua[i] + ub[i];
    return from_spanning_set({sum, sl_coords(U3(Root3::AlphaBeta).m)}, 8);
}

// random conjugator with unipotent lower and upper parts, exact
MatQ random_conjugator(Rng& rng, int n) {
    MatQ lo = MatQ::identity(n), up = MatQ::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i > j) lo(i, j) = rng.rational(4);
            if (i < j) up(i, j) = rng.rational(4);
        }
    return lo * up;
}

} // namespace

TEST_CASE("is_abelian") {
    REQUIRE(is_abelian(standard_cartan(3)));
    REQUIRE_FALSE(is_abelian(nilradical(3))); // [U_a, U_b] = U_{a+b} != 0

    // the 4-dimensional block algebra in sl4
    REQUIRE(is_abelian(block_abelian_subalgebra(4)));
    REQUIRE(block_abelian_subalgebra(4).r() == 4);
}

TEST_CASE("triangularization: diagonal and nilpotent representatives") {
    auto t = simultaneous_real_triangularization(standard_cartan(3));
    REQUIRE(t.kind == WitnessKind::Rational);
    REQUIRE(upper_triangular_subspace(adjoint_subspace(*t.witness, standard_cartan(3))));

    auto t2 = simultaneous_real_triangularization(l_proj_11());
    REQUIRE(t2.kind == WitnessKind::Rational);
    REQUIRE(upper_triangular_subspace(adjoint_subspace(*t2.witness, l_proj_11())));
}

TEST_CASE("triangularization rejects a rotation line") {
    MatQ j(2, 2);
    j(0, 1) = 1;
    j(1, 0) = -1;
    SubspaceQ rot = from_spanning_set({sl_coords(j)}, 3);
    auto t = simultaneous_real_triangularization(rot);
    REQUIRE(t.kind == WitnessKind::None);
    REQUIRE_FALSE(is_in_A(rot, 1));
    REQUIRE_FALSE(is_real_rooted(charpoly(j)));
}

TEST_CASE("triangularization falls back to a verified float witness") {
    // eigenvalues +-sqrt(2): no rational eigenvector exists
    MatQ x(3, 3);
    x(0, 1) = 1;
    x(1, 0) = 2;
    MatQ d = diag({Rat(1), Rat(1), Rat(-2)});
    SubspaceQ s = from_spanning_set({sl_coords(x), sl_coords(d)}, 8);
    REQUIRE(is_abelian(s));
    auto t = simultaneous_real_triangularization(s);
    REQUIRE(t.kind == WitnessKind::Float);
    REQUIRE(is_in_A(s, 2));
}

TEST_CASE("triangularization requires an abelian input") {
    REQUIRE_THROWS_AS(simultaneous_real_triangularization(nilradical(3)), std::invalid_argument);
}

TEST_CASE("Borel-contained abelian subalgebras triangularize after conjugation") {
    Rng rng(2718);
    SubspaceQ a3 = standard_cartan(3);
    for (int t = 0; t < 20; ++t) {
        MatQ g = random_conjugator(rng, 3);
        SubspaceQ s = conjugate_subspace(g, t % 2 == 0 ? a3 : l_proj_11());
        auto tri = simultaneous_real_triangularization(s);
        REQUIRE(tri.kind == WitnessKind::Rational);
        REQUIRE(upper_triangular_subspace(adjoint_subspace(*tri.witness, s)));
    }
}

TEST_CASE("rotation-contaminated planes fail both tests") {
    Rng rng(321);
    MatQ j(3, 3);
    j(1, 2) = 1;
    j(2, 1) = -1;
    MatQ d = diag({Rat(-2), Rat(1), Rat(1)}); // commutes with the embedded rotation
    SubspaceQ s0 = from_spanning_set({sl_coords(j), sl_coords(d)}, 8);
    REQUIRE(is_abelian(s0));
    for (int t = 0; t < 10; ++t) {
        SubspaceQ s = conjugate_subspace(random_conjugator(rng, 3), s0);
        REQUIRE(is_abelian(s));
        REQUIRE(simultaneous_real_triangularization(s).kind == WitnessKind::None);
        bool some_complex = false;
        for (long i = 0; i < s.r(); ++i)
            some_complex = some_complex || !is_real_rooted(charpoly(sl_matrix(3, s.basis_row(i))));
        REQUIRE(some_complex);
    }
}

TEST_CASE("spectrum in the fundamental rep matches spectrum of ad") {
    Rng rng(424242);
    auto random_sl = [&](int n) {
        MatQ m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) m(i, j) = rng.rational(3);
        Rat acc = 0;
        for (int i = 0; i + 1 < n; ++i) {
            m(i, i) = rng.rational(3);
            acc += m(i, i);
        }
        m(n - 1, n - 1) = -acc;
        return SlElement(n, std::move(m));
    };
    for (int t = 0; t < 30; ++t) {
        SlElement x = random_sl(3);
        REQUIRE(is_real_rooted(charpoly(x.m)) == is_real_rooted(charpoly(ad_matrix(x))));
    }
    for (int t = 0; t < 10; ++t) {
        SlElement x = random_sl(4);
        REQUIRE(is_real_rooted(charpoly(x.m)) == is_real_rooted(charpoly(ad_matrix(x))));
    }
}

TEST_CASE("is_in_A on mixed examples") {
    REQUIRE(is_in_A(standard_cartan(3), 2));
    REQUIRE_FALSE(is_in_A(standard_cartan(3), 3)); // wrong dimension

    MatQ j(3, 3);
    j(1, 2) = 1;
    j(2, 1) = -1;
    SubspaceQ s = from_spanning_set({sl_coords(H3(Root3::Alpha).m), sl_coords(j)}, 8);
    REQUIRE(is_abelian(s));
    REQUIRE_FALSE(is_in_A(s, 2));

    auto m = a_membership(s);
    REQUIRE(m.abelian);
    REQUIRE_FALSE(m.real_spectrum);
    REQUIRE(m.borel_witness.kind == WitnessKind::None);
}

TEST_CASE("sl2 closure membership is the determinant sign test") {
    MatQ h(2, 2), u(2, 2), j(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    u(0, 1) = 1;
    j(0, 1) = 1;
    j(1, 0) = -1;
    REQUIRE(sl2_closure_membership(SlElement(2, h)));       // det = -1
    REQUIRE(sl2_closure_membership(SlElement(2, u)));       // det = 0, boundary
    REQUIRE_FALSE(sl2_closure_membership(SlElement(2, j))); // det = 1
    REQUIRE_THROWS_AS(sl2_closure_membership(SlElement(2, MatQ(2, 2))), std::invalid_argument);
}

TEST_CASE("sl2 membership is preserved along sampled limits") {
    // limits of member lines are members: the limit of R.(H - 2tU) is R.U
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        Rat c = rng.rational(5);
        MatQ g = MatQ::identity(2);
        g(1, 0) = c;
        MatQ h(2, 2), u(2, 2);
        h(0, 0) = 1;
        h(1, 1) = -1;
        u(0, 1) = 1;
        auto gi = *inverse(g);
        for (long k : {1L, 10L, 100L}) {
            MatQ img = g * (h - (2 * Rat(k)) * u) * gi;
            REQUIRE(sl2_closure_membership(SlElement(2, img)));
        }
        MatQ lim = g * u * gi;
        REQUIRE(sl2_closure_membership(SlElement(2, lim)));
    }
}

TEST_CASE("sl2 rank-one boundary report") {
    auto rep = sl2_rank_one_boundary(9001, 6, {10, 100, 1000});
    REQUIRE(rep.pass);
    REQUIRE(rep.cases.size() == 8);
    REQUIRE(rep.cases.front().id == "line-to-RU");
    REQUIRE(std::abs(rep.cases.front().limit_det) < 1e-8);
    REQUIRE(rep.cases.back().limit_det < -1e-3); // constant family stays Cartan
}

TEST_CASE("dimension gap arithmetic and threshold") {
    auto g7 = dimension_gap(7);
    REQUIRE(g7.candidate == 48);
    REQUIRE(g7.cartan == 42);
    auto g6 = dimension_gap(6);
    REQUIRE(g6.candidate == 29);
    REQUIRE(g6.cartan == 30);
    auto g2 = dimension_gap(2);
    REQUIRE(g2.candidate == 1);
    REQUIRE(g2.cartan == 2);
    for (long m = 2; m <= 12; ++m)
        REQUIRE((dimension_gap(m).candidate > dimension_gap(m).cartan) == (m >= 7));
    REQUIRE_THROWS_AS(dimension_gap(1), std::invalid_argument);
}

TEST_CASE("block abelian family dimensions and abelianity") {
    SubspaceQ x2 = block_abelian_subalgebra(2);
    REQUIRE(x2.r() == 1);
    MatQ e12(2, 2);
    e12(0, 1) = 1;
    REQUIRE(x2 == from_spanning_set({sl_coords(e12)}, 3));

    SubspaceQ x4 = block_abelian_subalgebra(4);
    REQUIRE(x4.r() == 4);
    REQUIRE(is_abelian(x4));
    REQUIRE(upper_triangular_subspace(x4));

    SubspaceQ x7 = block_abelian_subalgebra(7);
    REQUIRE(x7.r() == 12); // p(m-p) = 3*4
    REQUIRE(is_abelian(x7));
    REQUIRE(upper_triangular_subspace(x7));
}

TEST_CASE("flat space fundamental group order") {
    REQUIRE(flats_pi1_order(3) == Int(48));
    REQUIRE(flats_pi1_order(4) == Int(384));
    REQUIRE(flats_pi1_order(5) == Int(3840));
    REQUIRE_THROWS_AS(flats_pi1_order(2), std::invalid_argument);
}
