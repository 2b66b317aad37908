#pragma once

#include <chabauty/sl3.hpp>

#include <array>
#include <optional>
#include <utility>

namespace chabauty::sl4 {

using sl3::ProjPoint1;

/// Primitive-integer point of P^2(Q), first nonzero entry positive.
struct ProjPoint2 {
    Int x = 0, y = 0, z = 0;

    ProjPoint2() = default;
    ProjPoint2(const Rat& rx, const Rat& ry, const Rat& rz) {
        Int den = boost::multiprecision::lcm(boost::multiprecision::lcm(denominator(rx), denominator(ry)),
                                             denominator(rz));
        x = numerator(rx * Rat(den));
        y = numerator(ry * Rat(den));
        z = numerator(rz * Rat(den));
        Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(x, y), z);
        if (g.is_zero()) throw std::invalid_argument("ProjPoint2: zero vector");
        x /= g;
        y /= g;
        z /= g;
        Int lead = !x.is_zero() ? x : (!y.is_zero() ? y : z);
        if (lead < 0) {
            x = -x;
            y = -y;
            z = -z;
        }
    }

    bool operator==(const ProjPoint2& o) const { return x == o.x && y == o.y && z == o.z; }
};

/// Primitive-integer point of P^3(Q), first nonzero entry positive.
struct ProjPoint3 {
    std::array<Int, 4> v{};

    ProjPoint3() = default;
    explicit ProjPoint3(std::array<Rat, 4> r) {
        Int den = 1;
        for (const auto& q : r) den = boost::multiprecision::lcm(den, denominator(q));
        Int g = 0;
        for (int i = 0; i < 4; ++i) {
            v[i] = numerator(r[i] * Rat(den));
            g = boost::multiprecision::gcd(g, v[i]);
        }
        if (g.is_zero()) throw std::invalid_argument("ProjPoint3: zero vector");
        Int lead = 0;
        for (auto& c : v) {
            c /= g;
            if (lead.is_zero()) lead = c;
        }
        if (lead < 0)
            for (auto& c : v) c = -c;
    }

    bool operator==(const ProjPoint3& o) const { return v == o.v; }
};

enum class Tag { T1, T2, T3, T4, T5, T6, T7, T8, T9, T10 };

inline std::string tag_name(Tag t) {
    static const char* names[] = {"T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10"};
    return names[static_cast<int>(t)];
}

// ---------------------------------------------------------------------------
// The named families of three-dimensional abelian subalgebras of the Borel.
// ---------------------------------------------------------------------------

inline SubspaceQ cartan4() { return standard_cartan(4); }

inline std::vector<Rat> root_sum_coords(std::initializer_list<std::pair<Root4, Rat>> terms) {
    MatQ m(4, 4);
    for (const auto& [r, c] : terms) {
        auto [i, j] = root_position(r);
        m(i, j) += c;
    }
    return sl_coords(m);
}

/// a_delta + the delta root line (type 2 representative).
inline SubspaceQ t2_rep(Root4 delta) {
    return subspace_sum(a_kernel4({delta}),
                        from_spanning_set({sl_coords(U4(delta).m)}, 15));
}

/// a_{alpha,beta} + the projective plane in the upper sl3 block (type 3).
inline SubspaceQ t3_rep(const Rat& x, const Rat& y) {
    if (x.is_zero() && y.is_zero()) throw std::invalid_argument("t3_rep: [0:0]");
    return from_spanning_set({sl_coords(H4(Root4::Gamma).m),
                              root_sum_coords({{Root4::Alpha, x}, {Root4::Beta, y}}),
                              sl_coords(U4(Root4::AlphaBeta).m)},
                             15);
}

/// a_{alpha,gamma} + the two commuting simple root lines (type 4).
inline SubspaceQ t4_rep() {
    return from_spanning_set({sl_coords(H4(Root4::Beta).m), sl_coords(U4(Root4::Alpha).m),
                              sl_coords(U4(Root4::Gamma).m)},
                             15);
}

/// a_{beta,gamma} + the projective plane in the lower sl3 block (type 5).
inline SubspaceQ t5_rep(const Rat& x, const Rat& y) {
    if (x.is_zero() && y.is_zero()) throw std::invalid_argument("t5_rep: [0:0]");
    return from_spanning_set({sl_coords(H4(Root4::Alpha).m),
                              root_sum_coords({{Root4::Beta, x}, {Root4::Gamma, y}}),
                              sl_coords(U4(Root4::BetaGamma).m)},
                             15);
}

/// l_[x:y:z], x and z nonzero (type 6 normal form).
inline SubspaceQ l_xyz(const Rat& x, const Rat& y, const Rat& z) {
    if (x.is_zero() || z.is_zero()) throw std::invalid_argument("l_xyz: x and z must be nonzero");
    return from_spanning_set(
        {root_sum_coords({{Root4::Alpha, x}, {Root4::Beta, y}, {Root4::Gamma, z}}),
         root_sum_coords({{Root4::AlphaBeta, x}, {Root4::BetaGamma, z}}),
         sl_coords(U4(Root4::AlphaBetaGamma).m)},
        15);
}

inline SubspaceQ l_xyz(const ProjPoint2& p) { return l_xyz(Rat(p.x), Rat(p.y), Rat(p.z)); }

/// l_{alpha,y,t} (type 7 normal form).
inline SubspaceQ l_alpha_yt(const Rat& y, const Rat& t) {
    return from_spanning_set(
        {root_sum_coords({{Root4::Alpha, Rat(1)}, {Root4::Beta, y}, {Root4::BetaGamma, t}}),
         sl_coords(U4(Root4::AlphaBeta).m), sl_coords(U4(Root4::AlphaBetaGamma).m)},
        15);
}

/// l_{gamma,y,t} (type 8 normal form).
inline SubspaceQ l_gamma_yt(const Rat& y, const Rat& t) {
    return from_spanning_set(
        {root_sum_coords({{Root4::Gamma, Rat(1)}, {Root4::Beta, y}, {Root4::AlphaBeta, t}}),
         sl_coords(U4(Root4::BetaGamma).m), sl_coords(U4(Root4::AlphaBetaGamma).m)},
        15);
}

/// The exceptional four-dimensional abelian algebra (upper-right 2x2 block).
inline SubspaceQ l0() {
    return from_spanning_set({sl_coords(U4(Root4::AlphaBeta).m), sl_coords(U4(Root4::AlphaBetaGamma).m),
                              sl_coords(U4(Root4::Beta).m), sl_coords(U4(Root4::BetaGamma).m)},
                             15);
}

/// Hyperplane of l0 cut out by x a + y b + z c + t d = 0 in the coordinates
/// (a, b, c, d) = (E13, E14, E23, E24) (type 9 normal form).
inline SubspaceQ l0_hyperplane(const Rat& x, const Rat& y, const Rat& z, const Rat& t) {
    MatQ row(1, 4);
    row(0, 0) = x;
    row(0, 1) = y;
    row(0, 2) = z;
    row(0, 3) = t;
    if (row.is_zero()) throw std::invalid_argument("l0_hyperplane: zero functional");
    auto coeffs = kernel(row); // 3 vectors (a, b, c, d)
    std::vector<std::vector<Rat>> rows;
    for (const auto& c : coeffs)
        rows.push_back(root_sum_coords({{Root4::AlphaBeta, c[0]},
                                        {Root4::AlphaBetaGamma, c[1]},
                                        {Root4::Beta, c[2]},
                                        {Root4::BetaGamma, c[3]}}));
    return from_spanning_set(rows, 15);
}

inline SubspaceQ l0_hyperplane(const ProjPoint3& p) {
    return l0_hyperplane(Rat(p.v[0]), Rat(p.v[1]), Rat(p.v[2]), Rat(p.v[3]));
}

/// l_{x,y} (type 10 normal form).
inline SubspaceQ l_xy(const Rat& x, const Rat& y) {
    return from_spanning_set(
        {root_sum_coords({{Root4::Alpha, Rat(1)}, {Root4::BetaGamma, x}}),
         root_sum_coords({{Root4::Gamma, Rat(1)}, {Root4::AlphaBeta, y}}),
         sl_coords(U4(Root4::AlphaBetaGamma).m)},
        15);
}

// ---------------------------------------------------------------------------
// Classification.
// ---------------------------------------------------------------------------

struct Classification {
    Tag tag = Tag::T1;
    GroupElement witness = GroupElement::identity(4);
    Root4 delta = Root4::Alpha;                 // T2
    ProjPoint1 p1;                              // T3 / T5
    ProjPoint2 p2;                              // T6
    std::pair<Rat, Rat> pair_params{Rat(0), Rat(0)}; // T7/T8: (y, t); T10: (x, y)
    ProjPoint3 p3;                              // T9
    Rat shear = 0;                              // T6/T10: witness is exp(shear * U_beta)
    SubspaceQ reconstruction;
};

namespace detail {

inline void require(bool cond, const char* predicate) {
    if (!cond)
        throw std::invalid_argument(std::string("classify: input violates '") + predicate + "'");
}

inline Rat coeff(const MatQ& m, Root4 r) {
    auto [i, j] = root_position(r);
    return m(i, j);
}

/// Partial-sum coordinates of the diagonal part.
inline std::array<Rat, 3> hcoords(const MatQ& m) {
    return {m(0, 0), m(0, 0) + m(1, 1), m(0, 0) + m(1, 1) + m(2, 2)};
}

/// Solve for the unique element of s whose matrix satisfies the given linear
/// coordinate constraints (pairs of coordinate index and target value).
inline std::optional<MatQ> element_with(const SubspaceQ& s,
                                        const std::vector<std::pair<long, Rat>>& constraints) {
    MatQ sys(static_cast<long>(constraints.size()), s.r());
    std::vector<Rat> rhs;
    for (size_t c = 0; c < constraints.size(); ++c) {
        for (long i = 0; i < s.r(); ++i) sys(static_cast<long>(c), i) = s.basis(i, constraints[c].first);
        rhs.push_back(constraints[c].second);
    }
    auto x = solve(sys, rhs);
    if (!x) return std::nullopt;
    std::vector<Rat> combo(s.ambient);
    for (long i = 0; i < s.r(); ++i)
        for (long j = 0; j < s.ambient; ++j) combo[j] += (*x)[i] * s.basis(i, j);
    // verify: solve() only guarantees the stacked system, which is exactly the
    // constraint list, so membership is by construction
    return sl_matrix(4, combo);
}

/// Coordinate indices of the diagonal (partial sums) in the sl4 coordinate map.
inline std::array<long, 3> diag_indices() {
    return {cartan_index(4, 0), cartan_index(4, 1), cartan_index(4, 2)};
}

/// Intersection with the nilradical: the combinations whose diagonal vanishes.
inline SubspaceQ nil_intersection(const SubspaceQ& s) {
    auto di = diag_indices();
    MatQ hmat(3, s.r());
    for (long i = 0; i < s.r(); ++i)
        for (int k = 0; k < 3; ++k) hmat(k, i) = s.basis(i, di[k]);
    auto combos = kernel(hmat);
    MatQ rows(static_cast<long>(combos.size()), s.ambient);
    for (size_t c = 0; c < combos.size(); ++c)
        for (long j = 0; j < s.ambient; ++j)
            for (long i = 0; i < s.r(); ++i) rows(static_cast<long>(c), j) += combos[c][i] * s.basis(i, j);
    return span_of(std::move(rows));
}

inline long rc(Root4 r) {
    auto [i, j] = root_position(r);
    return upper_index(4, i, j);
}

inline GroupElement inverse_of(const GroupElement& g) { return GroupElement(g.minv, g.m); }

/// Group element acting as an sl3 block (upper or lower 3x3).
inline GroupElement embed_block_group(const GroupElement& g3, bool upper) {
    MatQ m = MatQ::identity(4), mi = MatQ::identity(4);
    int off = upper ? 0 : 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            m(i + off, j + off) = g3.m(i, j);
            mi(i + off, j + off) = g3.minv(i, j);
        }
    return GroupElement(std::move(m), std::move(mi));
}

/// Projection of a traceless 4x4 matrix onto an sl3 block (Killing-orthogonal).
inline MatQ block_part(const MatQ& m, bool upper) {
    MatQ b(3, 3);
    int off = upper ? 0 : 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = m(i + off, j + off);
    Rat tr = b.trace() / 3;
    for (int i = 0; i < 3; ++i) b(i, i) -= tr;
    return b;
}

} // namespace detail

/// Classification of a three-dimensional abelian subalgebra of the standard
/// Borel of sl4 into the ten mutually exclusive types, with an exact witness.
///
/// Types 6 and 10 carry an extra one-parameter unipotent witness exp(s U_beta):
/// conjugating their normal forms by the beta root group produces subalgebras
/// of the same type with sheared second-level coefficients, and the shear is
/// recovered and normalized away here so that reconstruction is exact.
inline Classification classify(const SubspaceQ& s) {
    detail::require(s.ambient == 15, "ambient is sl4");
    detail::require(s.r() == 3, "dimension 3");
    detail::require(borel(4).contains(s), "contained in the standard Borel");
    detail::require(is_abelian(s), "abelian");

    Classification out;

    MatQ hpart(3, 3);
    for (int i = 0; i < 3; ++i) {
        auto h = detail::hcoords(sl_matrix(4, s.basis_row(i)));
        for (int j = 0; j < 3; ++j) hpart(i, j) = h[j];
    }
    long adim = rref(hpart).rank;

    auto diag_idx = detail::diag_indices();

    if (adim == 3) {
        // the regular-element route: an element with distinct diagonal entries
        // is diagonalized by a unique unipotent, which then conjugates the
        // whole Cartan onto s
        auto hc = detail::hcoords(H4(Root4::Alpha).m + H4(Root4::Beta).m + H4(Root4::Gamma).m);
        auto xreg = detail::element_with(
            s, {{diag_idx[0], hc[0]}, {diag_idx[1], hc[1]}, {diag_idx[2], hc[2]}});
        detail::require(xreg.has_value(), "projects onto the full Cartan");
        MatQ x = *xreg;
        MatQ f = MatQ::identity(4);
        for (int k = 1; k < 4; ++k) {
            // eigenvector for eigenvalue x(k,k), unit leading coordinate
            for (int i = k - 1; i >= 0; --i) {
                Rat acc = 0;
                for (int j = i + 1; j <= k; ++j) acc += x(i, j) * f(j, k);
                f(i, k) = -acc / (x(i, i) - x(k, k));
            }
        }
        out.tag = Tag::T1;
        out.witness = GroupElement(f);
        out.reconstruction = adjoint_subspace(out.witness, cartan4());
    } else if (adim == 2) {
        std::optional<Root4> delta;
        SubspaceQ pa = span_of([&] {
            MatQ rows(3, 15);
            for (int i = 0; i < 3; ++i) {
                auto h = detail::hcoords(sl_matrix(4, s.basis_row(i)));
                MatQ d(4, 4);
                d(0, 0) = h[0];
                d(1, 1) = h[1] - h[0];
                d(2, 2) = h[2] - h[1];
                d(3, 3) = -h[2];
                auto c = sl_coords(d);
                for (int j = 0; j < 15; ++j) rows(i, j) = c[j];
            }
            return rows;
        }());
        for (Root4 d : {Root4::Alpha, Root4::Beta, Root4::Gamma})
            if (pa == a_kernel4({d})) delta = d;
        detail::require(delta.has_value(), "Cartan projection is a simple-root wall");
        out.tag = Tag::T2;
        out.delta = *delta;

        GroupElement bprime = GroupElement::identity(4);
        if (*delta == Root4::Alpha || *delta == Root4::Gamma) {
            bool upper = *delta == Root4::Gamma;
            MatQ rows(3, 8);
            for (int i = 0; i < 3; ++i) {
                auto c = sl_coords(detail::block_part(sl_matrix(4, s.basis_row(i)), upper));
                for (int j = 0; j < 8; ++j) rows(i, j) = c[j];
            }
            SubspaceQ lprime = span_of(std::move(rows));
            detail::require(lprime.r() == 2, "block projection is a plane");
            auto c3 = sl3::classify(lprime);
            detail::require(c3.tag == sl3::Tag::CartanConj, "block projection is a Cartan conjugate");
            bprime = detail::embed_block_group(c3.witness(), upper);
        } else {
            // the middle wall: two sl2 blocks, the block Cartans are the
            // projections of H_alpha and H_gamma
            MatQ pzha(4, 4), pzhg(4, 4);
            pzha(0, 0) = rat(1, 2);
            pzha(1, 1) = rat(-1, 2);
            pzhg(2, 2) = rat(1, 2);
            pzhg(3, 3) = rat(-1, 2);
            auto block_diag = [&](const MatQ& m) {
                // z-projection for the sl2+sl2 block pair
                MatQ b(4, 4);
                Rat t0 = (m(0, 0) + m(1, 1)) / 2, t1 = (m(2, 2) + m(3, 3)) / 2;
                b(0, 0) = m(0, 0) - t0;
                b(1, 1) = m(1, 1) - t0;
                b(0, 1) = m(0, 1);
                b(2, 2) = m(2, 2) - t1;
                b(3, 3) = m(3, 3) - t1;
                b(2, 3) = m(2, 3);
                return b;
            };
            // the lifts of H_alpha and H_gamma project onto the two block
            // Cartan generators
            auto hca = detail::hcoords(H4(Root4::Alpha).m);
            auto hcg = detail::hcoords(H4(Root4::Gamma).m);
            auto xi_a = detail::element_with(
                s, {{diag_idx[0], hca[0]}, {diag_idx[1], hca[1]}, {diag_idx[2], hca[2]}});
            auto xi_c = detail::element_with(
                s, {{diag_idx[0], hcg[0]}, {diag_idx[1], hcg[1]}, {diag_idx[2], hcg[2]}});
            detail::require(xi_a.has_value() && xi_c.has_value(),
                            "projection spans the two sl2 block Cartans");
            MatQ ba = block_diag(*xi_a), bc = block_diag(*xi_c);
            detail::require(ba(2, 3).is_zero() && bc(0, 1).is_zero(),
                            "cross root coefficients vanish in the sl2 blocks");
            MatQ w(4, 4);
            w(0, 1) = -ba(0, 1);
            w(2, 3) = -bc(2, 3);
            bprime = exp_unipotent(SlElement(4, w));
        }

        SubspaceQ m = adjoint_subspace(detail::inverse_of(bprime), s);

        // read the residual coefficients on the roots outside the block
        Root4 first = *delta == Root4::Alpha ? Root4::Beta : Root4::Alpha;
        Root4 second = *delta == Root4::Gamma ? Root4::Beta : Root4::Gamma;
        auto hc1 = detail::hcoords(H4(first).m);
        auto hc2 = detail::hcoords(H4(second).m);
        auto x1 = detail::element_with(
            m, {{diag_idx[0], hc1[0]}, {diag_idx[1], hc1[1]}, {diag_idx[2], hc1[2]}});
        auto x2 = detail::element_with(
            m, {{diag_idx[0], hc2[0]}, {diag_idx[1], hc2[1]}, {diag_idx[2], hc2[2]}});
        auto y = detail::element_with(
            m, {{diag_idx[0], Rat(0)}, {diag_idx[1], Rat(0)}, {diag_idx[2], Rat(0)},
                {detail::rc(*delta), Rat(1)}});
        detail::require(x1 && x2 && y, "wall reduction yields the expected basis");

        // clear the delta-line component of the Cartan lifts
        MatQ w(4, 4);
        MatQ x1c = *x1 - detail::coeff(*x1, *delta) * *y;
        MatQ x2c = *x2 - detail::coeff(*x2, *delta) * *y;

        if (*delta == Root4::Alpha) {
            Rat xx = detail::coeff(x1c, Root4::AlphaBeta);      // on H_beta
            Rat yy = detail::coeff(x1c, Root4::AlphaBetaGamma); // shared coefficient
            detail::require(detail::coeff(x2c, Root4::AlphaBetaGamma) == yy &&
                                detail::coeff(x2c, Root4::AlphaBeta).is_zero(),
                            "wall residuals have the derived shape");
            w(0, 2) = -xx;
            w(0, 3) = -yy;
        } else if (*delta == Root4::Gamma) {
            Rat yy = detail::coeff(x1c, Root4::AlphaBetaGamma); // on H_alpha
            Rat xx = detail::coeff(x2c, Root4::BetaGamma);      // on H_beta
            detail::require(detail::coeff(x2c, Root4::AlphaBetaGamma) == yy &&
                                detail::coeff(x1c, Root4::BetaGamma).is_zero(),
                            "wall residuals have the derived shape");
            w(1, 3) = -xx;
            w(0, 3) = -yy;
        } else {
            Rat xx = detail::coeff(x1c, Root4::AlphaBeta);      // on H_alpha
            Rat yy = detail::coeff(x2c, Root4::BetaGamma);      // on H_gamma
            Rat zz = detail::coeff(x1c, Root4::AlphaBetaGamma);
            detail::require(detail::coeff(x2c, Root4::AlphaBetaGamma) == zz &&
                                detail::coeff(x1c, Root4::BetaGamma).is_zero() &&
                                detail::coeff(x2c, Root4::AlphaBeta).is_zero(),
                            "wall residuals have the derived shape");
            w(0, 2) = -xx;
            w(1, 3) = -yy;
            w(0, 3) = -zz;
        }
        out.witness = bprime * exp_unipotent(SlElement(4, w));
        out.reconstruction = adjoint_subspace(out.witness, t2_rep(*delta));
    } else if (adim == 1) {
        // which pair wall: p_a(l) is the line spanned by the dual vector of
        // the remaining simple root; the lift is additionally constrained to
        // miss the nilpotent part of the corresponding derived centralizer
        auto pair_lift = [&](Root4 rem,
                             std::initializer_list<Root4> zero_roots) -> std::optional<MatQ> {
            auto hc = detail::hcoords(H4(rem).m);
            std::vector<std::pair<long, Rat>> cons{
                {diag_idx[0], hc[0]}, {diag_idx[1], hc[1]}, {diag_idx[2], hc[2]}};
            for (Root4 r : zero_roots) cons.emplace_back(detail::rc(r), Rat(0));
            return detail::element_with(s, cons);
        };
        if (auto x = pair_lift(Root4::Gamma,
                               {Root4::Alpha, Root4::Beta, Root4::AlphaBeta})) {
            MatQ w = *x - H4(Root4::Gamma).m;
            GroupElement b = exp_unipotent(SlElement(4, -w));
            SubspaceQ m = adjoint_subspace(detail::inverse_of(b), s);
            SubspaceQ mn = detail::nil_intersection(m);
            detail::require(mn.r() == 2 && mn.contains(sl_coords(U4(Root4::AlphaBeta).m)),
                            "block plane contains its highest root line");
            std::optional<MatQ> v;
            for (long i = 0; i < mn.r(); ++i) {
                MatQ cand = sl_matrix(4, mn.basis_row(i));
                if (!detail::coeff(cand, Root4::Alpha).is_zero() ||
                    !detail::coeff(cand, Root4::Beta).is_zero())
                    v = cand;
            }
            detail::require(v.has_value(), "block plane has a simple-root direction");
            out.tag = Tag::T3;
            out.p1 = ProjPoint1(detail::coeff(*v, Root4::Alpha), detail::coeff(*v, Root4::Beta));
            out.witness = b;
            out.reconstruction =
                adjoint_subspace(b, t3_rep(Rat(out.p1.x), Rat(out.p1.y)));
        } else if (auto xb = pair_lift(Root4::Beta, {Root4::Alpha, Root4::Gamma})) {
            MatQ w = *xb - H4(Root4::Beta).m;
            GroupElement b = exp_unipotent(SlElement(4, -w));
            out.tag = Tag::T4;
            out.witness = b;
            out.reconstruction = adjoint_subspace(b, t4_rep());
        } else if (auto xc = pair_lift(Root4::Alpha,
                                       {Root4::Beta, Root4::Gamma, Root4::BetaGamma})) {
            MatQ w = *xc - H4(Root4::Alpha).m;
            GroupElement b = exp_unipotent(SlElement(4, -w));
            SubspaceQ m = adjoint_subspace(detail::inverse_of(b), s);
            SubspaceQ mn = detail::nil_intersection(m);
            detail::require(mn.r() == 2 && mn.contains(sl_coords(U4(Root4::BetaGamma).m)),
                            "block plane contains its highest root line");
            std::optional<MatQ> v;
            for (long i = 0; i < mn.r(); ++i) {
                MatQ cand = sl_matrix(4, mn.basis_row(i));
                if (!detail::coeff(cand, Root4::Beta).is_zero() ||
                    !detail::coeff(cand, Root4::Gamma).is_zero())
                    v = cand;
            }
            detail::require(v.has_value(), "block plane has a simple-root direction");
            out.tag = Tag::T5;
            out.p1 = ProjPoint1(detail::coeff(*v, Root4::Beta), detail::coeff(*v, Root4::Gamma));
            out.witness = b;
            out.reconstruction =
                adjoint_subspace(b, t5_rep(Rat(out.p1.x), Rat(out.p1.y)));
        } else {
            detail::require(false, "Cartan projection is a pair wall");
        }
    } else {
        // s is contained in the nilradical
        MatQ ag(3, 2);
        for (int i = 0; i < 3; ++i) {
            MatQ m = sl_matrix(4, s.basis_row(i));
            ag(i, 0) = detail::coeff(m, Root4::Alpha);
            ag(i, 1) = detail::coeff(m, Root4::Gamma);
        }
        long d = rref(ag).rank;
        if (d == 0) {
            detail::require(l0().contains(s), "no alpha/gamma component means contained in l0");
            MatQ rows(3, 4);
            for (int i = 0; i < 3; ++i) {
                MatQ m = sl_matrix(4, s.basis_row(i));
                rows(i, 0) = detail::coeff(m, Root4::AlphaBeta);
                rows(i, 1) = detail::coeff(m, Root4::AlphaBetaGamma);
                rows(i, 2) = detail::coeff(m, Root4::Beta);
                rows(i, 3) = detail::coeff(m, Root4::BetaGamma);
            }
            auto normal = kernel(rows);
            detail::require(normal.size() == 1, "hyperplane of l0 has a unique normal line");
            out.tag = Tag::T9;
            out.p3 = ProjPoint3({normal[0][0], normal[0][1], normal[0][2], normal[0][3]});
            out.reconstruction = l0_hyperplane(out.p3);
        } else if (d == 2) {
            auto x = detail::element_with(s, {{detail::rc(Root4::Alpha), Rat(1)},
                                              {detail::rc(Root4::Gamma), Rat(0)}});
            auto y = detail::element_with(s, {{detail::rc(Root4::Alpha), Rat(0)},
                                              {detail::rc(Root4::Gamma), Rat(1)}});
            detail::require(x && y, "two independent alpha/gamma directions");
            detail::require(detail::coeff(*x, Root4::Beta).is_zero() &&
                                detail::coeff(*y, Root4::Beta).is_zero(),
                            "beta components vanish in the rank-two case");
            Rat tau = detail::coeff(*x, Root4::AlphaBeta);
            detail::require(detail::coeff(*y, Root4::BetaGamma) == -tau,
                            "shear coefficients are opposite");
            out.tag = Tag::T10;
            out.shear = -tau;
            out.pair_params = {detail::coeff(*x, Root4::BetaGamma),
                               detail::coeff(*y, Root4::AlphaBeta)};
            MatQ w(4, 4);
            w(1, 2) = out.shear;
            out.witness = exp_unipotent(SlElement(4, w));
            out.reconstruction = adjoint_subspace(
                out.witness, l_xy(out.pair_params.first, out.pair_params.second));
        } else {
            // d == 1: one alpha/gamma direction; split on the vanishing pattern
            MatQ x(4, 4);
            bool found = false;
            for (int i = 0; i < 3 && !found; ++i) {
                MatQ m = sl_matrix(4, s.basis_row(i));
                if (!detail::coeff(m, Root4::Alpha).is_zero() ||
                    !detail::coeff(m, Root4::Gamma).is_zero()) {
                    x = m;
                    found = true;
                }
            }
            Rat cx = detail::coeff(x, Root4::Alpha), cz = detail::coeff(x, Root4::Gamma);
            if (!cx.is_zero() && !cz.is_zero()) {
                Rat cy = detail::coeff(x, Root4::Beta);
                Rat u = detail::coeff(x, Root4::AlphaBeta), v = detail::coeff(x, Root4::BetaGamma);
                Rat kappa = u * cz - v * cx;
                Rat tau = kappa / (2 * cx * cz);
                out.tag = Tag::T6;
                out.shear = -tau;
                out.p2 = ProjPoint2(cx, cy, cz);
                MatQ w(4, 4);
                w(1, 2) = out.shear;
                out.witness = exp_unipotent(SlElement(4, w));
                out.reconstruction = adjoint_subspace(out.witness, l_xyz(out.p2));
            } else if (!cx.is_zero()) {
                MatQ xs = (Rat(1) / cx) * x;
                out.tag = Tag::T7;
                out.pair_params = {detail::coeff(xs, Root4::Beta),
                                   detail::coeff(xs, Root4::BetaGamma)};
                out.reconstruction = l_alpha_yt(out.pair_params.first, out.pair_params.second);
            } else {
                MatQ xs = (Rat(1) / cz) * x;
                out.tag = Tag::T8;
                out.pair_params = {detail::coeff(xs, Root4::Beta),
                                   detail::coeff(xs, Root4::AlphaBeta)};
                out.reconstruction = l_gamma_yt(out.pair_params.first, out.pair_params.second);
            }
        }
    }

    if (!(out.reconstruction == s))
        throw std::logic_error("classify: witness reconstruction does not match the input");
    return out;
}

// ---------------------------------------------------------------------------
// Explicit Cartan sequences converging to each classified target.
// ---------------------------------------------------------------------------

namespace detail {

inline SlElement root_sum4(std::initializer_list<std::pair<Root4, Rat>> terms) {
    MatQ m(4, 4);
    for (const auto& [r, c] : terms) {
        auto [i, j] = root_position(r);
        m(i, j) += c;
    }
    return SlElement(4, std::move(m));
}

/// sl3 parameter triple whose Cartan conjugates converge to the block plane
/// l_[x:y] while avoiding the three wall regimes.
inline std::array<Rat, 3> block_proj_params(const ProjPoint1& p, long n) {
    Rat n2 = Rat(n) * Rat(n), n4 = n2 * n2;
    Rat x(p.x), y(p.y);
    if (!x.is_zero() && !y.is_zero()) return {x * n2, y * n2, Rat(0)};
    if (y.is_zero()) return {n2, Rat(0), n4};
    return {Rat(0), n2, n4};
}

/// Block-diagonal rational conjugator moving the canonical hyperplane of l0
/// onto the requested one; its conjugation agrees with an element of the
/// normalizer of l0 in SL4(R).
struct L0Normalization {
    MatQ conjugator = MatQ::identity(4);
    int rank = 0;    // rank of the coefficient matrix [[x,y],[z,t]]
    int det_sign = 0; // sign of its determinant when rank is 2
};

inline L0Normalization l0_normalization(const ProjPoint3& p) {
    L0Normalization out;
    MatQ phi(2, 2);
    phi(0, 0) = Rat(p.v[0]);
    phi(0, 1) = Rat(p.v[1]);
    phi(1, 0) = Rat(p.v[2]);
    phi(1, 1) = Rat(p.v[3]);
    Rat d = phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0);
    if (!d.is_zero()) {
        out.rank = 2;
        out.det_sign = d > 0 ? 1 : -1;
        // S^T = Phi0^-1 Phi with Phi0 = Diag(1, det_sign); det(diag(I,S)) > 0
        MatQ g = MatQ::identity(4);
        g(2, 2) = phi(0, 0);
        g(2, 3) = out.det_sign < 0 ? -phi(1, 0) : phi(1, 0);
        g(3, 2) = phi(0, 1);
        g(3, 3) = out.det_sign < 0 ? -phi(1, 1) : phi(1, 1);
        out.conjugator = std::move(g);
        return out;
    }
    out.rank = 1;
    // phi = u v^T; pick the generating column and row
    std::array<Rat, 2> u{}, v{};
    if (!phi(0, 0).is_zero() || !phi(1, 0).is_zero()) {
        u = {phi(0, 0), phi(1, 0)};
        Rat pivot = !phi(0, 0).is_zero() ? phi(0, 0) : phi(1, 0);
        int prow = !phi(0, 0).is_zero() ? 0 : 1;
        v = {Rat(1), phi(prow, 1) / pivot};
    } else {
        u = {phi(0, 1), phi(1, 1)};
        v = {Rat(0), Rat(1)};
    }
    // want P^-T e2 = u and S e1 = v, det of the block pair positive
    MatQ pinv_t(2, 2); // columns: complement, u
    if (!u[0].is_zero()) {
        pinv_t(0, 0) = Rat(0);
        pinv_t(1, 0) = Rat(1);
    } else {
        pinv_t(0, 0) = Rat(1);
        pinv_t(1, 0) = Rat(0);
    }
    pinv_t(0, 1) = u[0];
    pinv_t(1, 1) = u[1];
    MatQ smat(2, 2); // columns: v, complement
    smat(0, 0) = v[0];
    smat(1, 0) = v[1];
    if (!v[1].is_zero()) {
        smat(0, 1) = Rat(1);
        smat(1, 1) = Rat(0);
    } else {
        smat(0, 1) = Rat(0);
        smat(1, 1) = Rat(1);
    }
    MatQ pmat = *inverse(pinv_t.transpose());
    Rat det_total = (pmat(0, 0) * pmat(1, 1) - pmat(0, 1) * pmat(1, 0)) *
                    (smat(0, 0) * smat(1, 1) - smat(0, 1) * smat(1, 0));
    if (det_total < 0)
        for (int i = 0; i < 2; ++i) smat(i, 1) = -smat(i, 1);
    MatQ g(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            g(i, j) = pmat(i, j);
            g(i + 2, j + 2) = smat(i, j);
        }
    out.conjugator = std::move(g);
    return out;
}

} // namespace detail

/// The explicit sequence of Cartan subspaces converging to the classified
/// target: Ad of the witness composed with the per-type escape family.
inline SeqFamily thm62_sequence(const Classification& target) {
    SubspaceQ a = cartan4();
    GroupElement w = target.witness;
    auto conj = [w](SubspaceQ s) { return adjoint_subspace(w, s); };

    switch (target.tag) {
    case Tag::T1:
        return {"thm62-T1", [conj, a](long) { return conj(a); }};
    case Tag::T2: {
        Root4 d = target.delta;
        return {"thm62-T2", [conj, a, d](long n) {
                    Rat k = Rat(n) * Rat(n); // quadratic subschedule of the escape
                    return conj(adjoint_subspace(exp_root_sum<Root4>(4, {{d, k}}), a));
                }};
    }
    case Tag::T3: {
        ProjPoint1 p = target.p1;
        return {"thm62-T3", [conj, a, p](long n) {
                    auto [x, y, z] = detail::block_proj_params(p, n);
                    GroupElement g3 = b_family(x, y, z);
                    return conj(adjoint_subspace(detail::embed_block_group(g3, true), a));
                }};
    }
    case Tag::T4:
        return {"thm62-T4", [conj, a](long n) {
                    Rat k = Rat(n) * Rat(n);
                    return conj(adjoint_subspace(
                        exp_root_sum<Root4>(4, {{Root4::Alpha, k}, {Root4::Gamma, k}}), a));
                }};
    case Tag::T5: {
        ProjPoint1 p = target.p1;
        return {"thm62-T5", [conj, a, p](long n) {
                    auto [x, y, z] = detail::block_proj_params(p, n);
                    GroupElement g3 = b_family(x, y, z);
                    return conj(adjoint_subspace(detail::embed_block_group(g3, false), a));
                }};
    }
    case Tag::T6: {
        Rat x(target.p2.x), y(target.p2.y), z(target.p2.z);
        return {"thm62-T6", [conj, a, x, y, z](long n) {
                    Rat k = Rat(n) * Rat(n);
                    SlElement wn = y.is_zero()
                                       ? detail::root_sum4({{Root4::Alpha, x * k * k},
                                                            {Root4::Beta, k},
                                                            {Root4::Gamma, z * k * k}})
                                       : detail::root_sum4({{Root4::Alpha, x * k},
                                                            {Root4::Beta, y * k},
                                                            {Root4::Gamma, z * k}});
                    return conj(adjoint_subspace(exp_unipotent(wn), a));
                }};
    }
    case Tag::T7: {
        Rat y = target.pair_params.first, t = target.pair_params.second;
        return {"thm62-T7", [conj, a, y, t](long n) {
                    Rat k = Rat(n) * Rat(n), k2 = k * k;
                    bool degenerate = y.is_zero() || t.is_zero();
                    Rat lead = degenerate ? k2 : k; // two-scale diagonal when a parameter vanishes
                    SlElement wn = detail::root_sum4(
                        {{Root4::Alpha, lead},
                         {Root4::Beta, y.is_zero() ? (degenerate ? k : Rat(0)) : y * lead},
                         {Root4::BetaGamma, t.is_zero() ? (degenerate ? k : Rat(0)) : t * lead}});
                    return conj(adjoint_subspace(exp_unipotent(wn), a));
                }};
    }
    case Tag::T8: {
        Rat y = target.pair_params.first, t = target.pair_params.second;
        return {"thm62-T8", [conj, a, y, t](long n) {
                    Rat k = Rat(n) * Rat(n), k2 = k * k;
                    bool degenerate = y.is_zero() || t.is_zero();
                    Rat lead = degenerate ? k2 : k;
                    SlElement wn = detail::root_sum4(
                        {{Root4::Gamma, lead},
                         {Root4::Beta, y.is_zero() ? (degenerate ? k : Rat(0)) : y * lead},
                         {Root4::AlphaBeta, t.is_zero() ? (degenerate ? k : Rat(0)) : t * lead}});
                    return conj(adjoint_subspace(exp_unipotent(wn), a));
                }};
    }
    case Tag::T9: {
        auto norm = detail::l0_normalization(target.p3);
        MatQ g = norm.conjugator;
        if (norm.rank == 2) {
            Rat zsign(-norm.det_sign);
            return {"thm62-T9", [a, g, zsign](long n) {
                        Rat k = Rat(n) * Rat(n);
                        Rat m = k * k * k;
                        SlElement wn = detail::root_sum4({{Root4::Alpha, m},
                                                          {Root4::Beta, m * k},
                                                          {Root4::Gamma, zsign * m}});
                        return conjugate_subspace(g, adjoint_subspace(exp_unipotent(wn), a));
                    }};
        }
        return {"thm62-T9", [a, g](long n) {
                    Rat k = Rat(n) * Rat(n);
                    Rat m = k * k * k * k;
                    SlElement wn = detail::root_sum4(
                        {{Root4::Alpha, m}, {Root4::Beta, m * k}, {Root4::Gamma, -m}});
                    GroupElement outer = exp_root_sum<Root4>(4, {{Root4::Gamma, k}});
                    return conjugate_subspace(
                        g, adjoint_subspace(outer * exp_unipotent(wn), a));
                }};
    }
    case Tag::T10: {
        Rat x = target.pair_params.first, y = target.pair_params.second;
        Rat shear = target.shear;
        return {"thm62-T10", [a, x, y, shear](long n) {
                    Rat k = Rat(n) * Rat(n);
                    bool degenerate = x.is_zero() || y.is_zero();
                    Rat lead = degenerate ? k * k : k;
                    Rat top = lead * lead * lead * lead;
                    SlElement wn = detail::root_sum4(
                        {{Root4::Alpha, lead},
                         {Root4::Gamma, lead},
                         {Root4::AlphaBeta, y.is_zero() ? (degenerate ? -k : Rat(0)) : -y * lead},
                         {Root4::BetaGamma, x.is_zero() ? (degenerate ? -k : Rat(0)) : -x * lead},
                         {Root4::AlphaBetaGamma, top}});
                    GroupElement sh = exp_root_sum<Root4>(4, {{Root4::Beta, shear}});
                    return adjoint_subspace(sh * exp_unipotent(wn), a);
                }};
    }
    }
    throw std::logic_error("thm62_sequence");
}

/// The exact subspace a thm62 sequence is expected to reach.
inline SubspaceQ thm62_target(const Classification& c) { return c.reconstruction; }

/// True iff the centralizer of S inside the Borel equals S.
inline bool is_maximal_abelian_in_b(const SubspaceQ& s) {
    SubspaceQ b = borel(4);
    MatQ binc(15, b.r());
    for (long i = 0; i < b.r(); ++i)
        for (long j = 0; j < 15; ++j) binc(j, i) = b.basis(i, j);
    MatQ sys(s.r() * 15, b.r());
    for (long k = 0; k < s.r(); ++k) {
        SlElement sk(4, sl_matrix(4, s.basis_row(k)));
        MatQ block = ad_matrix(sk) * binc;
        for (long i = 0; i < 15; ++i)
            for (long j = 0; j < b.r(); ++j) sys(k * 15 + i, j) = block(i, j);
    }
    auto ker = kernel(sys);
    MatQ rows(static_cast<long>(ker.size()), 15);
    for (size_t i = 0; i < ker.size(); ++i) {
        std::vector<Rat> amb(15);
        for (long j = 0; j < b.r(); ++j)
            for (long c = 0; c < 15; ++c) amb[c] += ker[i][j] * b.basis(j, c);
        for (long c = 0; c < 15; ++c) rows(static_cast<long>(i), c) = amb[c];
    }
    return span_of(std::move(rows)) == s;
}

} // namespace chabauty::sl4
