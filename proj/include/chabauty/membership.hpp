#pragma once

#include <chabauty/grassmann.hpp>
#include <chabauty/lie.hpp>
#include <chabauty/rng.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <vector>

namespace chabauty {

inline int n_from_ambient(long ambient) {
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(ambient + 1))));
    if (sl_dim(n) != ambient) throw std::invalid_argument("ambient dimension is not n^2-1");
    return n;
}

/// True iff the bracket of every basis pair vanishes exactly.
inline bool is_abelian(const SubspaceQ& s) {
    int n = n_from_ambient(s.ambient);
    std::vector<MatQ> mats;
    for (long i = 0; i < s.r(); ++i) mats.push_back(sl_matrix(n, s.basis_row(i)));
    for (size_t i = 0; i < mats.size(); ++i)
        for (size_t j = i + 1; j < mats.size(); ++j)
            if (!(mats[i] * mats[j] - mats[j] * mats[i]).is_zero()) return false;
    return true;
}

enum class WitnessKind { Rational, Float, None };

struct Triangularization {
    WitnessKind kind = WitnessKind::None;
    std::optional<GroupElement> witness; // rational path: Ad(witness) maps S into upper triangulars
    Eigen::MatrixXd float_witness;       // float path, verified to sub-diagonal < 1e-8
};

namespace detail {

struct NeedFloatPath {};

inline bool is_scalar(const MatQ& m) {
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j)
            if (i != j ? !m(i, j).is_zero() : m(i, i) != m(0, 0)) return false;
    return true;
}

/// Common eigenvector of a commuting family, over Q. Throws NeedFloatPath if
/// the search hits an operator without rational eigenvalues.
inline std::vector<Rat> common_eigenvector(const std::vector<MatQ>& mats, long dim) {
    const MatQ* pick = nullptr;
    for (const auto& m : mats)
        if (!is_scalar(m)) {
            pick = &m;
            break;
        }
    if (!pick) {
        std::vector<Rat> e(dim);
        e[0] = 1;
        return e;
    }
    for (const Rat& lambda : rational_roots(charpoly(*pick))) {
        MatQ shifted = *pick;
        for (long i = 0; i < dim; ++i) shifted(i, i) -= lambda;
        auto eig = kernel(shifted);
        long k = static_cast<long>(eig.size());
        if (k == 0) continue;
        // restrict the family to the eigenspace (commuting operators preserve it)
        MatQ basis(dim, k); // columns span the eigenspace
        for (long j = 0; j < k; ++j)
            for (long i = 0; i < dim; ++i) basis(i, j) = eig[j][i];
        std::vector<MatQ> restricted;
        restricted.reserve(mats.size());
        bool ok = true;
        for (const auto& m : mats) {
            MatQ r(k, k);
            for (long j = 0; j < k && ok; ++j) {
                std::vector<Rat> col(dim);
                for (long i = 0; i < dim; ++i) col[i] = 0;
                std::vector<Rat> img = m * eig[j];
                auto x = solve(basis, img);
                if (!x) {
                    ok = false;
                    break;
                }
                for (long i = 0; i < k; ++i) r(i, j) = (*x)[i];
            }
            if (!ok) break;
            restricted.push_back(std::move(r));
        }
        if (!ok) throw std::logic_error("common_eigenvector: eigenspace not invariant");
        std::vector<Rat> w = common_eigenvector(restricted, k);
        std::vector<Rat> lifted(dim);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < k; ++j) lifted[i] += basis(i, j) * w[j];
        return lifted;
    }
    throw NeedFloatPath{};
}

/// Full flag adapted to every operator in the commuting family.
inline std::vector<std::vector<Rat>> common_flag(const std::vector<MatQ>& mats, long dim) {
    if (dim == 0) return {};
    std::vector<Rat> v = common_eigenvector(mats, dim);
    long p = 0;
    while (v[p].is_zero()) ++p;

    MatQ basis(dim, dim); // [v | standard complement]
    for (long i = 0; i < dim; ++i) basis(i, 0) = v[i];
    long col = 1;
    for (long j = 0; j < dim; ++j) {
        if (j == p) continue;
        basis(j, col++) = 1;
    }
    MatQ binv = *inverse(basis);

    std::vector<MatQ> quotients;
    quotients.reserve(mats.size());
    for (const auto& m : mats) {
        MatQ t = binv * m * basis;
        MatQ q(dim - 1, dim - 1);
        for (long i = 1; i < dim; ++i)
            for (long j = 1; j < dim; ++j) q(i - 1, j - 1) = t(i, j);
        quotients.push_back(std::move(q));
    }
    auto sub = common_flag(quotients, dim - 1);

    std::vector<std::vector<Rat>> flag{v};
    for (const auto& w : sub) {
        std::vector<Rat> lifted(dim);
        for (long i = 0; i < dim; ++i)
            for (long j = 1; j < dim; ++j) lifted[i] += basis(i, j) * w[j - 1];
        flag.push_back(std::move(lifted));
    }
    return flag;
}

inline bool all_real_spectrum(const std::vector<MatQ>& mats) {
    for (const auto& m : mats)
        if (!is_real_rooted(charpoly(m))) return false;
    return true;
}

inline Eigen::MatrixXd to_eigen(const MatQ& m) {
    Eigen::MatrixXd f(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) f(i, j) = to_double(m(i, j));
    return f;
}

} // namespace detail

/// Simultaneous real triangularization of an abelian subalgebra, in the
/// fundamental representation. Rational witness when the common-eigenvector
/// recursion stays over Q; verified float witness otherwise.
inline Triangularization simultaneous_real_triangularization(const SubspaceQ& s) {
    if (!is_abelian(s)) throw std::invalid_argument("simultaneous_real_triangularization: input is not abelian");
    int n = n_from_ambient(s.ambient);
    std::vector<MatQ> mats;
    for (long i = 0; i < s.r(); ++i) mats.push_back(sl_matrix(n, s.basis_row(i)));

    Triangularization out;
    if (!detail::all_real_spectrum(mats)) return out; // kind = None

    try {
        auto flag = detail::common_flag(mats, n);
        MatQ f(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) f(i, j) = flag[j][i];
        Rat d = det(f);
        for (int i = 0; i < n; ++i) f(i, 0) /= d; // rescale one flag line: det 1
        GroupElement g(*inverse(f), f);
        out.kind = WitnessKind::Rational;
        out.witness = std::move(g);
        return out;
    } catch (const detail::NeedFloatPath&) {
        // fall through to the float witness
    }

    Rng rng(0x5eed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
        for (const auto& m : mats) z += rng.uniform_real(-1.0, 1.0) * detail::to_eigen(m);
        Eigen::RealSchur<Eigen::MatrixXd> schur(z);
        Eigen::MatrixXd q = schur.matrixU().transpose();
        double worst = 0;
        for (const auto& m : mats) {
            Eigen::MatrixXd t = q * detail::to_eigen(m) * q.transpose();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) worst = std::max(worst, std::abs(t(i, j)));
        }
        if (worst < 1e-8) {
            out.kind = WitnessKind::Float;
            out.float_witness = q;
            return out;
        }
    }
    throw std::logic_error("simultaneous_real_triangularization: float fallback failed to verify");
}

/// Membership in the closed set of r-dimensional abelian subalgebras with
/// real ad-spectrum (equivalently, contained in a Borel subalgebra).
inline bool is_in_A(const SubspaceQ& s, long r) {
    if (s.r() != r) return false;
    if (!is_abelian(s)) return false;
    return simultaneous_real_triangularization(s).kind != WitnessKind::None;
}

struct AMembership {
    SubspaceQ subspace;
    bool abelian = false;
    bool real_spectrum = false;
    Triangularization borel_witness;
};

inline AMembership a_membership(const SubspaceQ& s) {
    AMembership m;
    m.subspace = s;
    m.abelian = is_abelian(s);
    if (!m.abelian) return m;
    m.borel_witness = simultaneous_real_triangularization(s);
    m.real_spectrum = m.borel_witness.kind != WitnessKind::None;
    return m;
}

// ---------------------------------------------------------------------------
// The sl_2 boundary: lines in the closure of the Cartan lines.
// ---------------------------------------------------------------------------

/// A trace-zero 2x2 matrix has real eigenvalues iff det <= 0; this decides
/// whether the line R.X lies in the closure of the set of Cartan lines.
inline bool sl2_closure_membership(const SlElement& x) {
    if (x.n != 2) throw std::invalid_argument("sl2_closure_membership: need n = 2");
    if (x.m.is_zero()) throw std::invalid_argument("sl2_closure_membership: zero element");
    return det(x.m) <= Rat(0);
}

/// Unit representative of a one-dimensional float subspace.
inline Eigen::VectorXd line_representative(const SubspaceF& s) {
    if (s.r != 1) throw std::invalid_argument("line_representative: rank != 1");
    Eigen::Index best = 0;
    s.P.diagonal().maxCoeff(&best);
    Eigen::VectorXd v = s.P.col(best);
    return v / v.norm();
}

inline Eigen::MatrixXd sl_matrix_d(int n, const Eigen::VectorXd& v) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j) m(i, j) = v[upper_index(n, i, j)];
            else if (i > j) m(i, j) = v[lower_index(n, i, j)];
        }
    double prev = 0;
    for (int k = 0; k < n - 1; ++k) {
        m(k, k) = v[cartan_index(n, k)] - prev;
        prev = v[cartan_index(n, k)];
    }
    m(n - 1, n - 1) = -prev;
    return m;
}

struct Sl2BoundaryCase {
    std::string id;
    bool certified = false;
    double final_gap = 0;
    double limit_det = 0;
    bool pass = false;
};

struct Sl2BoundaryReport {
    std::vector<Sl2BoundaryCase> cases;
    bool pass = true;
};

/// Rank-one instance of the boundary description: every certified limit of
/// unipotent-conjugated Cartan lines is a nilpotent line.
inline Sl2BoundaryReport sl2_rank_one_boundary(std::uint64_t seed, int random_cases,
                                               const std::vector<long>& schedule,
                                               double det_tol = 1e-8) {
    MatQ h(2, 2), u(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    u(0, 1) = 1;
    SubspaceQ cartan_line = from_spanning_set({sl_coords(h)}, 3);
    SubspaceQ nil_line = from_spanning_set({sl_coords(u)}, 3);

    Sl2BoundaryReport rep;
    auto add_case = [&rep](Sl2BoundaryCase c) {
        rep.pass = rep.pass && c.pass;
        rep.cases.push_back(std::move(c));
    };

    auto conjugated_family = [&](const MatQ& g) {
        return SeqFamily{"sl2-conjugated-cartan-line", [g, h, u](long t) {
                             Rat tt = Rat(t) * Rat(t); // quadratic clock
                             MatQ img = h - (2 * tt) * u;
                             return conjugate_subspace(g, from_spanning_set({sl_coords(img)}, 3));
                         }};
    };

    // explicit line: Ad exp(tU)(R.H) = R.(H - 2tU) -> R.U
    {
        auto est = limit_estimate(conjugated_family(MatQ::identity(2)), schedule, 1e-4);
        Sl2BoundaryCase c{"line-to-RU"};
        c.certified = est.certified;
        c.final_gap = est.gaps.back();
        c.limit_det = sl_matrix_d(2, line_representative(est.limit)).determinant();
        c.pass = est.certified && distance(est.limit, to_float(nil_line)) < 1e-4 &&
                 std::abs(c.limit_det) < det_tol;
        add_case(std::move(c));
    }

    Rng rng(seed);
    for (int i = 0; i < random_cases; ++i) {
        MatQ g = MatQ::identity(2);
        g(1, 0) = rng.nonzero_rational(10); // lower unipotent conjugation
        auto est = limit_estimate(conjugated_family(g), schedule, 1e-4);
        Sl2BoundaryCase c{"random-" + std::to_string(i)};
        c.certified = est.certified;
        c.final_gap = est.gaps.back();
        c.limit_det = sl_matrix_d(2, line_representative(est.limit)).determinant();
        c.pass = est.certified && std::abs(c.limit_det) < det_tol;
        add_case(std::move(c));
    }

    // constant family: stays a Cartan line, det of the unit representative < 0
    {
        SeqFamily f{"constant-cartan-line", [cartan_line](long) { return cartan_line; }};
        auto est = limit_estimate(f, schedule, 1e-4);
        Sl2BoundaryCase c{"constant"};
        c.certified = est.certified;
        c.final_gap = est.gaps.back();
        c.limit_det = sl_matrix_d(2, line_representative(est.limit)).determinant();
        c.pass = est.certified && distance(est.limit, to_float(cartan_line)) < 1e-9 &&
                 c.limit_det < -1e-3;
        add_case(std::move(c));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Dimension arithmetic for the non-density threshold, and the block family.
// ---------------------------------------------------------------------------

struct DimensionGap {
    long candidate = 0; // dim of the family of (m-1)-planes inside the block algebras
    long cartan = 0;    // dim of the space of Cartan subspaces of sl_m
};

inline DimensionGap dimension_gap(long m) {
    if (m < 2) throw std::invalid_argument("dimension_gap: need m >= 2");
    long p = m / 2;
    long block = p * (m - p);
    return {(m - 1) * (block - m + 1) + block, m * (m - 1)};
}

/// The abelian algebra {f : Im f inside V inside Ker f} for V = first p
/// coordinates: matrices supported on the upper-right p x (m-p) block.
inline SubspaceQ block_abelian_subalgebra(long m) {
    if (m < 2) throw std::invalid_argument("block_abelian_subalgebra: need m >= 2");
    long p = m / 2;
    int n = static_cast<int>(m);
    std::vector<std::vector<Rat>> rows;
    for (long i = 0; i < p; ++i)
        for (long j = p; j < m; ++j) {
            MatQ e(n, n);
            e(i, j) = 1;
            rows.push_back(sl_coords(e));
        }
    return from_spanning_set(rows, sl_dim(n));
}

/// Order of the fundamental group of the space of maximal flats: n! * 2^n.
inline Int flats_pi1_order(int n) {
    if (n < 3) throw std::invalid_argument("flats_pi1_order: stated for n >= 3");
    Int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f << n;
}

} // namespace chabauty
