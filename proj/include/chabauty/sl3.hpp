#pragma once

#include <chabauty/membership.hpp>

#include <array>
#include <utility>

namespace chabauty::sl3 {

/// Point of P^1(Q): primitive coprime integers, first nonzero entry positive.
struct ProjPoint1 {
    Int x = 0, y = 0;

    ProjPoint1() = default;
    ProjPoint1(const Rat& rx, const Rat& ry) {
        if (rx.is_zero() && ry.is_zero())
            throw std::invalid_argument("ProjPoint1: zero vector");
        Int den = boost::multiprecision::lcm(denominator(rx), denominator(ry));
        x = numerator(rx * Rat(den));
        y = numerator(ry * Rat(den));
        Int g = boost::multiprecision::gcd(x, y);
        x /= g;
        y /= g;
        if (x < 0 || (x.is_zero() && y < 0)) {
            x = -x;
            y = -y;
        }
    }

    bool operator==(const ProjPoint1& o) const { return x == o.x && y == o.y; }
};

enum class Tag { CartanConj, Lproj, LRoot };
enum class OrbitLabel { Cartan, L10, L01, L11, L1m1, LAlpha, LBeta, LAlphaBeta };

inline std::string orbit_name(OrbitLabel l) {
    switch (l) {
    case OrbitLabel::Cartan: return "a";
    case OrbitLabel::L10: return "l[1:0]";
    case OrbitLabel::L01: return "l[0:1]";
    case OrbitLabel::L11: return "l[1:1]";
    case OrbitLabel::L1m1: return "l[1:-1]";
    case OrbitLabel::LAlpha: return "l_alpha";
    case OrbitLabel::LBeta: return "l_beta";
    case OrbitLabel::LAlphaBeta: return "l_alpha+beta";
    }
    throw std::logic_error("orbit_name");
}

// Named planes of the boundary family.

inline SubspaceQ cartan() { return standard_cartan(3); }

/// l_[x:y] = span{ x U_alpha + y U_beta, U_{alpha+beta} }
inline SubspaceQ l_proj(const Rat& x, const Rat& y) {
    if (x.is_zero() && y.is_zero()) throw std::invalid_argument("l_proj: [0:0] is not projective");
    std::vector<Rat> v(8);
    std::vector<Rat> ua = sl_coords(U3(Root3::Alpha).m), ub = sl_coords(U3(Root3::Beta).m);
    for (int i = 0; i < 8; ++i) v[i] = x * ua[i] + y * ub[i];
    return from_spanning_set({v, sl_coords(U3(Root3::AlphaBeta).m)}, 8);
}

inline SubspaceQ l_proj(const ProjPoint1& p) { return l_proj(Rat(p.x), Rat(p.y)); }

/// l_gamma = Ker(gamma) + the gamma root line
inline SubspaceQ l_root(Root3 g) {
    return subspace_sum(a_kernel3(g), from_spanning_set({sl_coords(U3(g).m)}, 8));
}

struct Classification {
    Tag tag = Tag::CartanConj;
    std::array<Rat, 3> cartan_xyz{Rat(0), Rat(0), Rat(0)}; // CartanConj: b = b(x, y, z)
    ProjPoint1 point;                                      // Lproj
    Root3 root = Root3::Alpha;                             // LRoot
    std::pair<Rat, Rat> root_params{Rat(0), Rat(0)};       // LRoot: free coordinates of b
    SubspaceQ reconstruction;

    [[nodiscard]] GroupElement witness() const {
        switch (tag) {
        case Tag::CartanConj:
            return b_family(cartan_xyz[0], cartan_xyz[1], cartan_xyz[2]);
        case Tag::Lproj:
            return GroupElement::identity(3);
        case Tag::LRoot:
            switch (root) {
            case Root3::Alpha: return b_family(Rat(0), root_params.first, root_params.second);
            case Root3::Beta: return b_family(root_params.first, Rat(0), root_params.second);
            case Root3::AlphaBeta: return b_family(root_params.first, root_params.second, Rat(0));
            }
        }
        throw std::logic_error("witness");
    }
};

namespace detail {

struct Decomp {
    MatQ m;         // full matrix
    Rat a, b, ab;   // coordinates on the three positive root lines
    MatQ diag_part; // projection to the Cartan

    explicit Decomp(const MatQ& mat) : m(mat), diag_part(3, 3) {
        a = m(0, 1);
        b = m(1, 2);
        ab = m(0, 2);
        for (int i = 0; i < 3; ++i) diag_part(i, i) = m(i, i);
    }
};

inline void require(bool cond, const char* predicate) {
    if (!cond) throw std::invalid_argument(std::string("classify: input violates '") + predicate + "'");
}

} // namespace detail

/// Classification of a two-dimensional abelian subalgebra of the standard
/// Borel: Cartan conjugate, projective nilpotent plane, or conjugate of a
/// root-kernel plane. The witness is reconstructed and compared exactly.
inline Classification classify(const SubspaceQ& s) {
    detail::require(s.ambient == 8, "ambient is sl3");
    detail::require(s.r() == 2, "dimension 2");
    detail::require(borel(3).contains(s), "contained in the standard Borel");
    detail::require(is_abelian(s), "abelian");

    std::array<detail::Decomp, 2> rows{detail::Decomp(sl_matrix(3, s.basis_row(0))),
                                       detail::Decomp(sl_matrix(3, s.basis_row(1)))};

    MatQ hpart(2, 2); // rows: partial-sum coordinates of the diagonal parts
    for (int i = 0; i < 2; ++i) {
        hpart(i, 0) = rows[i].m(0, 0);
        hpart(i, 1) = rows[i].m(0, 0) + rows[i].m(1, 1);
    }
    long adim = rref(hpart).rank;

    Classification out;
    if (adim == 2) {
        // solve for the basis pair projecting onto (H_alpha, H_beta)
        MatQ sys = hpart.transpose();
        auto to_halpha = solve(sys, {rat(2, 3), rat(1, 3)});
        auto to_hbeta = solve(sys, {rat(1, 3), rat(2, 3)});
        if (!to_halpha || !to_hbeta) throw std::logic_error("classify: projection solve failed");
        auto combine = [&](const std::vector<Rat>& c) {
            return detail::Decomp(MatQ(c[0] * rows[0].m + c[1] * rows[1].m));
        };
        detail::Decomp x1 = combine(*to_halpha), x2 = combine(*to_hbeta);
        out.tag = Tag::CartanConj;
        out.cartan_xyz = {-x1.a, -x2.b, -(x1.ab + x2.ab) / 2};
        out.reconstruction = adjoint_subspace(out.witness(), cartan());
    } else if (adim == 0) {
        detail::require(s.contains(sl_coords(U3(Root3::AlphaBeta).m)),
                        "nilpotent plane contains the highest root line");
        const detail::Decomp* w = nullptr;
        for (const auto& r : rows)
            if (!r.a.is_zero() || !r.b.is_zero()) {
                w = &r;
                break;
            }
        detail::require(w != nullptr, "nilpotent plane maps onto a simple-root direction");
        out.tag = Tag::Lproj;
        out.point = ProjPoint1(w->a, w->b);
        out.reconstruction = l_proj(out.point);
    } else {
        // X spans the image of the projection to the Cartan; Y spans its kernel
        MatQ xm(3, 3), ym(3, 3);
        if (hpart(0, 0).is_zero() && hpart(0, 1).is_zero()) {
            xm = rows[1].m;
            ym = rows[0].m;
        } else {
            xm = rows[0].m;
            Rat h0 = hpart(0, 0), h1 = hpart(0, 1);
            Rat g0 = hpart(1, 0), g1 = hpart(1, 1);
            // common scalar c with (g0, g1) = c (h0, h1)
            Rat c = h0.is_zero() ? g1 / h1 : g0 / h0;
            ym = rows[1].m - c * rows[0].m;
        }
        detail::Decomp y(ym);
        detail::require(!ym.is_zero(), "root-kernel case has a nilpotent direction");

        Rat av = root_value3(Root3::Alpha, xm), bv = root_value3(Root3::Beta, xm);
        out.tag = Tag::LRoot;
        if (av.is_zero()) {
            out.root = Root3::Alpha;
            detail::Decomp x(Rat(1) / bv * xm);
            detail::require(!y.a.is_zero(), "kernel direction hits the alpha root line");
            detail::Decomp yn(Rat(1) / y.a * y.m);
            x = detail::Decomp(x.m - x.a * yn.m);
            out.root_params = {-x.b, -x.ab};
        } else if (bv.is_zero()) {
            out.root = Root3::Beta;
            detail::Decomp x(Rat(1) / av * xm);
            detail::require(!y.b.is_zero(), "kernel direction hits the beta root line");
            detail::Decomp yn(Rat(1) / y.b * y.m);
            x = detail::Decomp(x.m - x.b * yn.m);
            out.root_params = {-x.a, -x.ab};
        } else {
            detail::require(Rat(av + bv).is_zero(), "diagonal part lies in a root kernel");
            out.root = Root3::AlphaBeta;
            detail::Decomp x(Rat(1) / av * xm);
            detail::require(y.a.is_zero() && y.b.is_zero(),
                            "kernel direction is the highest root line");
            detail::Decomp yn(Rat(1) / y.ab * y.m);
            x = detail::Decomp(x.m - x.ab * yn.m);
            out.root_params = {-x.a, x.b};
        }
        out.reconstruction = adjoint_subspace(out.witness(), l_root(out.root));
    }

    if (!(out.reconstruction == s))
        throw std::logic_error("classify: witness reconstruction does not match the input");
    return out;
}

inline OrbitLabel orbit_label(const Classification& c) {
    switch (c.tag) {
    case Tag::CartanConj: return OrbitLabel::Cartan;
    case Tag::LRoot:
        switch (c.root) {
        case Root3::Alpha: return OrbitLabel::LAlpha;
        case Root3::Beta: return OrbitLabel::LBeta;
        case Root3::AlphaBeta: return OrbitLabel::LAlphaBeta;
        }
        throw std::logic_error("orbit_label");
    case Tag::Lproj:
        if (c.point.y.is_zero()) return OrbitLabel::L10;
        if (c.point.x.is_zero()) return OrbitLabel::L01;
        return c.point.x * c.point.y > 0 ? OrbitLabel::L11 : OrbitLabel::L1m1;
    }
    throw std::logic_error("orbit_label");
}

/// dim { X in g : [X, S] inside S }, exactly.
inline long normalizer_dim(const SubspaceQ& s) {
    MatQ q = quotient_matrix(s);
    std::vector<MatQ> stacked;
    for (long i = 0; i < s.r(); ++i) {
        SlElement si(3, sl_matrix(3, s.basis_row(i)));
        stacked.push_back(q * ad_matrix(si));
    }
    MatQ sys(stacked.size() * q.rows, 8);
    for (size_t b = 0; b < stacked.size(); ++b)
        for (long i = 0; i < q.rows; ++i)
            for (long j = 0; j < 8; ++j) sys(b * q.rows + i, j) = stacked[b](i, j);
    return 8 - rref(std::move(sys)).rank;
}

/// Orbit dimension under the connected Borel subgroup: dim b minus the
/// dimension of the stabilizer of S inside b.
inline long b0_orbit_dim(const SubspaceQ& s) {
    MatQ q = quotient_matrix(s);
    SubspaceQ b = borel(3);
    MatQ binc(8, b.r()); // columns: basis of the Borel
    for (long i = 0; i < b.r(); ++i)
        for (long j = 0; j < 8; ++j) binc(j, i) = b.basis(i, j);
    MatQ sys(s.r() * q.rows, b.r());
    for (long k = 0; k < s.r(); ++k) {
        SlElement sk(3, sl_matrix(3, s.basis_row(k)));
        MatQ block = q * ad_matrix(sk) * binc;
        for (long i = 0; i < q.rows; ++i)
            for (long j = 0; j < b.r(); ++j) sys(k * q.rows + i, j) = block(i, j);
    }
    long stabilizer = b.r() - rref(std::move(sys)).rank;
    return b.r() - stabilizer;
}

enum class CartanLimitCase { ToAlpha = 1, ToBeta = 2, ToAlphaBeta = 3, ToProjective = 4 };

/// Predicted limit of Ad b(x_n, y_n, z_n)(a) in each escape regime.
inline SubspaceQ predicted_limit_cartan(CartanLimitCase c, const Rat& p, const Rat& q) {
    switch (c) {
    case CartanLimitCase::ToAlpha:
        return adjoint_subspace(b_family(Rat(0), p, q), l_root(Root3::Alpha));
    case CartanLimitCase::ToBeta:
        return adjoint_subspace(b_family(p, Rat(0), q), l_root(Root3::Beta));
    case CartanLimitCase::ToAlphaBeta:
        return adjoint_subspace(b_family(p, q, Rat(0)), l_root(Root3::AlphaBeta));
    case CartanLimitCase::ToProjective:
        return l_proj(p, q);
    }
    throw std::invalid_argument("predicted_limit_cartan: unknown case");
}

/// Predicted limits of the non-Cartan orbits.
inline SubspaceQ predicted_limit_proj_pair(bool lambda_to_infinity) {
    return lambda_to_infinity ? l_proj(Rat(1), Rat(0)) : l_proj(Rat(0), Rat(1));
}

inline SubspaceQ predicted_limit_orbit(Root3 rep, const ProjPoint1& ab) {
    (void)rep; // the limit point is already expressed in the rep's clock
    return l_proj(ab);
}

/// Ad Diag(-1,-1,1) maps l_[1:1] onto l_[1:-1] (projectively [-1:1]).
inline bool sigma_involution_check() {
    SubspaceQ img = adjoint_subspace(sigma3(), l_proj(Rat(1), Rat(1)));
    return img == l_proj(Rat(1), Rat(-1));
}

// Deterministic random elements of the boundary set, used by the suites.

inline const std::array<OrbitLabel, 8>& orbit_labels() {
    static const std::array<OrbitLabel, 8> l{OrbitLabel::Cartan, OrbitLabel::L10, OrbitLabel::L01,
                                             OrbitLabel::L11, OrbitLabel::L1m1, OrbitLabel::LAlpha,
                                             OrbitLabel::LBeta, OrbitLabel::LAlphaBeta};
    return l;
}

inline SubspaceQ orbit_representative(OrbitLabel l) {
    switch (l) {
    case OrbitLabel::Cartan: return cartan();
    case OrbitLabel::L10: return l_proj(Rat(1), Rat(0));
    case OrbitLabel::L01: return l_proj(Rat(0), Rat(1));
    case OrbitLabel::L11: return l_proj(Rat(1), Rat(1));
    case OrbitLabel::L1m1: return l_proj(Rat(1), Rat(-1));
    case OrbitLabel::LAlpha: return l_root(Root3::Alpha);
    case OrbitLabel::LBeta: return l_root(Root3::Beta);
    case OrbitLabel::LAlphaBeta: return l_root(Root3::AlphaBeta);
    }
    throw std::logic_error("orbit_representative");
}

/// Random element of the connected Borel subgroup with rational entries of
/// height at most h: positive diagonal (det 1) times upper unipotent.
inline GroupElement random_b0(Rng& rng, long long h, int n = 3) {
    MatQ d(n, n);
    Rat prod = 1;
    for (int i = 0; i + 1 < n; ++i) {
        d(i, i) = rng.positive_rational(h);
        prod *= d(i, i);
    }
    d(n - 1, n - 1) = Rat(1) / prod;
    MatQ u = MatQ::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u(i, j) = rng.rational(h);
    return GroupElement(d * u);
}

struct YSample {
    SubspaceQ s;
    OrbitLabel label;
};

inline YSample random_y_element(Rng& rng, long long h) {
    OrbitLabel label = orbit_labels()[static_cast<size_t>(rng.uniform(0, 7))];
    SubspaceQ rep = orbit_representative(label);
    return {adjoint_subspace(random_b0(rng, h), rep), label};
}

} // namespace chabauty::sl3
