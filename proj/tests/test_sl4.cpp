#include <chabauty/sl4.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace chabauty;
using namespace chabauty::sl4;

namespace {

SubspaceQ random_member(Rng& rng, Tag tag) {
    auto nz = [&] { return rng.nonzero_rational(10); };
    switch (tag) {
    case Tag::T1: return cartan4();
    case Tag::T2: {
        Root4 d[] = {Root4::Alpha, Root4::Beta, Root4::Gamma};
        return t2_rep(d[rng.uniform(0, 2)]);
    }
    case Tag::T3: return t3_rep(rng.rational(10), nz());
    case Tag::T4: return t4_rep();
    case Tag::T5: return t5_rep(nz(), rng.rational(10));
    case Tag::T6: return l_xyz(nz(), rng.rational(10), nz());
    case Tag::T7: return l_alpha_yt(rng.rational(10), rng.rational(10));
    case Tag::T8: return l_gamma_yt(rng.rational(10), rng.rational(10));
    case Tag::T9: {
        std::array<Rat, 4> f{rng.rational(10), rng.rational(10), rng.rational(10), rng.rational(10)};
        bool all_zero = true;
        for (const auto& q : f) all_zero = all_zero && q.is_zero();
        if (all_zero) f[0] = 1;
        return l0_hyperplane(f[0], f[1], f[2], f[3]);
    }
    case Tag::T10: return l_xy(rng.rational(10), rng.rational(10));
    }
    throw std::logic_error("random_member");
}

} // namespace

TEST_CASE("all family members are abelian planes inside the Borel") {
    Rng rng(8881);
    SubspaceQ b = borel(4);
    for (int t = 0; t < 40; ++t) {
        Tag tag = static_cast<Tag>(rng.uniform(0, 9));
        SubspaceQ s = random_member(rng, tag);
        REQUIRE(s.r() == 3);
        REQUIRE(is_abelian(s));
        REQUIRE(b.contains(s));
        REQUIRE(is_in_A(s, 3));
    }
}

TEST_CASE("stated family examples") {
    // l_[1:1:1] is spanned by the three displayed sums
    SubspaceQ s = l_xyz(Rat(1), Rat(1), Rat(1));
    REQUIRE(s.contains(root_sum_coords(
        {{Root4::Alpha, Rat(1)}, {Root4::Beta, Rat(1)}, {Root4::Gamma, Rat(1)}})));
    REQUIRE(s.contains(root_sum_coords(
        {{Root4::AlphaBeta, Rat(1)}, {Root4::BetaGamma, Rat(1)}})));
    REQUIRE(s.contains(sl_coords(U4(Root4::AlphaBetaGamma).m)));

    // the trace hyperplane of l0
    SubspaceQ h = l0_hyperplane(Rat(1), Rat(0), Rat(0), Rat(1));
    REQUIRE(h.r() == 3);
    REQUIRE(l0().contains(h));
    REQUIRE(h.contains(root_sum_coords({{Root4::AlphaBeta, Rat(1)}, {Root4::BetaGamma, Rat(-1)}})));

    // l_{0,0}
    SubspaceQ q = l_xy(Rat(0), Rat(0));
    REQUIRE(q.contains(sl_coords(U4(Root4::Alpha).m)));
    REQUIRE(q.contains(sl_coords(U4(Root4::Gamma).m)));
    REQUIRE(q.contains(sl_coords(U4(Root4::AlphaBetaGamma).m)));
}

TEST_CASE("classify the Cartan and pure normal forms") {
    auto c = classify(cartan4());
    REQUIRE(c.tag == Tag::T1);
    REQUIRE(c.witness.m == MatQ::identity(4));

    auto c9 = classify(l0_hyperplane(Rat(0), Rat(0), Rat(1), Rat(0)));
    REQUIRE(c9.tag == Tag::T9);
    REQUIRE(c9.p3 == ProjPoint3({Rat(0), Rat(0), Rat(1), Rat(0)}));

    auto c6 = classify(l_xyz(Rat(1), Rat(2), Rat(3)));
    REQUIRE(c6.tag == Tag::T6);
    REQUIRE(c6.p2 == ProjPoint2(Rat(1), Rat(2), Rat(3)));
    REQUIRE(c6.shear.is_zero());

    auto c7 = classify(l_alpha_yt(rat(2, 3), Rat(-4)));
    REQUIRE(c7.tag == Tag::T7);
    REQUIRE(c7.pair_params.first == rat(2, 3));
    REQUIRE(c7.pair_params.second == Rat(-4));

    auto c8 = classify(l_gamma_yt(Rat(5), Rat(0)));
    REQUIRE(c8.tag == Tag::T8);
    REQUIRE(c8.pair_params.first == Rat(5));
    REQUIRE(c8.pair_params.second == Rat(0));

    auto c10 = classify(l_xy(Rat(-2), Rat(7)));
    REQUIRE(c10.tag == Tag::T10);
    REQUIRE(c10.pair_params.first == Rat(-2));
    REQUIRE(c10.pair_params.second == Rat(7));
}

TEST_CASE("classify a conjugated pair-wall plane with the exact witness") {
    GroupElement b = exp_root_sum<Root4>(4, {{Root4::AlphaBeta, Rat(1)}});
    SubspaceQ s = adjoint_subspace(b, t4_rep());
    auto c = classify(s);
    REQUIRE(c.tag == Tag::T4);
    REQUIRE(c.witness.m == b.m);
    REQUIRE(c.reconstruction == s);
}

TEST_CASE("beta-shear conjugates of type 6 and 10 normal forms classify back") {
    // these conjugates leave the displayed normal-form families, and the
    // classification recovers the shear witness exactly
    Rng rng(5150);
    for (int t = 0; t < 20; ++t) {
        Rat sshear = rng.rational(8);
        GroupElement g = exp_root_sum<Root4>(4, {{Root4::Beta, sshear}});

        SubspaceQ s6 = adjoint_subspace(g, l_xyz(Rat(1), rng.rational(8), Rat(-2)));
        auto c6 = classify(s6);
        REQUIRE(c6.tag == Tag::T6);
        REQUIRE(c6.reconstruction == s6);

        SubspaceQ s10 = adjoint_subspace(g, l_xy(rng.rational(8), rng.rational(8)));
        auto c10 = classify(s10);
        REQUIRE(c10.tag == Tag::T10);
        REQUIRE(c10.shear == sshear);
        REQUIRE(c10.reconstruction == s10);
    }
}

TEST_CASE("classification totality over random Borel conjugates") {
    Rng rng(314159);
    for (int t = 0; t < 120; ++t) {
        Tag tag = static_cast<Tag>(rng.uniform(0, 9));
        SubspaceQ rep = random_member(rng, tag);
        GroupElement g = sl3::random_b0(rng, 6, 4);
        SubspaceQ s = adjoint_subspace(g, rep);
        auto c = classify(s);
        REQUIRE(c.tag == tag);
        REQUIRE(plucker(c.reconstruction) == plucker(s));
    }
}

TEST_CASE("parameter uniqueness under reclassification") {
    Rng rng(2713);
    for (int t = 0; t < 25; ++t) {
        Tag tag = static_cast<Tag>(rng.uniform(0, 9));
        SubspaceQ rep = random_member(rng, tag);
        GroupElement g = sl3::random_b0(rng, 5, 4);
        auto c1 = classify(adjoint_subspace(g, rep));
        auto c2 = classify(c1.reconstruction);
        REQUIRE(c1.tag == c2.tag);
        REQUIRE(c1.witness.m == c2.witness.m);
        REQUIRE(c1.p1 == c2.p1);
        REQUIRE(c1.p2 == c2.p2);
        REQUIRE(c1.p3 == c2.p3);
        REQUIRE(c1.pair_params == c2.pair_params);
        REQUIRE(c1.shear == c2.shear);
    }
}

TEST_CASE("classify rejects bad inputs") {
    REQUIRE_THROWS_WITH(classify(l0()), Catch::Matchers::ContainsSubstring("dimension 3"));
    REQUIRE_THROWS_WITH(classify(nilradical(3)), Catch::Matchers::ContainsSubstring("ambient"));
    SubspaceQ nonabelian = from_spanning_set({sl_coords(U4(Root4::Alpha).m),
                                              sl_coords(U4(Root4::Beta).m),
                                              sl_coords(U4(Root4::AlphaBeta).m)},
                                             15);
    REQUIRE_THROWS_WITH(classify(nonabelian), Catch::Matchers::ContainsSubstring("abelian"));
}

TEST_CASE("maximality: every type but T9 is maximal abelian in the Borel") {
    REQUIRE(is_maximal_abelian_in_b(l0()));
    REQUIRE(is_maximal_abelian_in_b(cartan4()));
    REQUIRE_FALSE(is_maximal_abelian_in_b(l0_hyperplane(Rat(1), Rat(0), Rat(0), Rat(1))));
    REQUIRE_FALSE(is_maximal_abelian_in_b(l0_hyperplane(Rat(0), Rat(0), Rat(1), Rat(0))));

    Rng rng(1123);
    for (int t = 0; t < 20; ++t) {
        Tag tag = static_cast<Tag>(rng.uniform(0, 9));
        SubspaceQ rep = random_member(rng, tag);
        REQUIRE(is_maximal_abelian_in_b(rep) == (tag != Tag::T9));
    }
}

TEST_CASE("explicit Cartan sequences converge to their classified targets") {
    std::vector<SubspaceQ> targets{
        t2_rep(Root4::Alpha),
        l_xyz(Rat(2), Rat(-1), Rat(3)),
        l_xyz(Rat(1), Rat(0), Rat(-2)),                  // degenerate middle parameter
        l0_hyperplane(Rat(1), Rat(2), Rat(3), Rat(4)),   // full-rank functional, negative det
        l0_hyperplane(Rat(1), Rat(0), Rat(0), Rat(1)),   // positive det
        l0_hyperplane(Rat(1), Rat(2), Rat(2), Rat(4)),   // rank-one functional
        l_xy(Rat(0), Rat(-2)),
    };
    for (const auto& target : targets) {
        auto c = classify(target);
        auto est = limit_estimate(thm62_sequence(c), {10, 100, 500, 1000}, 1e-3);
        INFO(tag_name(c.tag));
        REQUIRE(est.certified);
        REQUIRE(distance(est.limit, to_float(target)) < 1e-3);
    }
}

TEST_CASE("degenerate-parameter continuity of the yt families") {
    // l_{alpha,y,t_k} approaches l_{alpha,y,0} as t_k -> 0
    Rat y = rat(3, 2);
    SubspaceF target = to_float(l_alpha_yt(y, Rat(0)));
    double prev = 1e9;
    for (long k : {10L, 100L, 1000L}) {
        double d = distance(to_float(l_alpha_yt(y, Rat(1) / Rat(k))), target);
        REQUIRE(d < prev);
        prev = d;
    }
    REQUIRE(prev < 1e-3);
}
