#pragma once

#include <chabauty/grassmann.hpp>
#include <chabauty/matrix.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace chabauty {

inline long sl_dim(int n) { return static_cast<long>(n) * n - 1; }

// ---------------------------------------------------------------------------
// Coordinates on sl_n.
//
// Fixed ordered basis, so Pluecker vectors are reproducible bit-exactly:
//   E_ij for i<j (row-major), H_k = E_kk - E_{k+1,k+1} for k=0..n-2,
//   E_ij for i>j (row-major).
// ---------------------------------------------------------------------------

inline long upper_index(int n, int i, int j) { // i < j, 0-based
    long idx = 0;
    for (int r = 0; r < i; ++r) idx += n - 1 - r;
    return idx + (j - i - 1);
}

inline long cartan_index(int n, int k) { return static_cast<long>(n) * (n - 1) / 2 + k; }

inline long lower_index(int n, int i, int j) { // i > j
    long base = static_cast<long>(n) * (n - 1) / 2 + (n - 1);
    return base + static_cast<long>(i) * (i - 1) / 2 + j;
}

inline std::vector<Rat> sl_coords(const MatQ& m) {
    if (!m.is_square()) throw std::invalid_argument("sl_coords: non-square matrix");
    if (!m.trace().is_zero()) throw std::invalid_argument("sl_coords: nonzero trace");
    int n = static_cast<int>(m.rows);
    std::vector<Rat> v(sl_dim(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j) v[upper_index(n, i, j)] = m(i, j);
            else if (i > j) v[lower_index(n, i, j)] = m(i, j);
        }
    Rat partial = 0;
    for (int k = 0; k < n - 1; ++k) {
        partial += m(k, k);
        v[cartan_index(n, k)] = partial;
    }
    return v;
}

inline MatQ sl_matrix(int n, const std::vector<Rat>& v) {
    if (static_cast<long>(v.size()) != sl_dim(n))
        throw std::invalid_argument("sl_matrix: coordinate length mismatch");
    MatQ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j) m(i, j) = v[upper_index(n, i, j)];
            else if (i > j) m(i, j) = v[lower_index(n, i, j)];
        }
    Rat prev = 0;
    for (int k = 0; k < n - 1; ++k) {
        m(k, k) = v[cartan_index(n, k)] - prev;
        prev = v[cartan_index(n, k)];
    }
    m(n - 1, n - 1) = -prev;
    return m;
}

inline MatQ sl_basis_matrix(int n, long idx) {
    std::vector<Rat> v(sl_dim(n));
    v[idx] = 1;
    return sl_matrix(n, v);
}

// ---------------------------------------------------------------------------
// Elements.
// ---------------------------------------------------------------------------

/// Trace-zero exact matrix.
struct SlElement {
    int n = 0;
    MatQ m;

    SlElement() = default;
    SlElement(int n_, MatQ m_) : n(n_), m(std::move(m_)) {
        if (m.rows != n || m.cols != n) throw std::invalid_argument("SlElement: shape mismatch");
        if (!m.trace().is_zero()) throw std::invalid_argument("SlElement: nonzero trace");
    }

    bool operator==(const SlElement& o) const { return n == o.n && m == o.m; }
};

/// Determinant-one exact matrix with its inverse cached at construction.
struct GroupElement {
    int n = 0;
    MatQ m;
    MatQ minv;

    GroupElement() = default;
    explicit GroupElement(MatQ m_) : n(static_cast<int>(m_.rows)), m(std::move(m_)) {
        if (!m.is_square()) throw std::invalid_argument("GroupElement: non-square matrix");
        if (det(m) != Rat(1)) throw std::invalid_argument("GroupElement: determinant is not 1");
        minv = *inverse(m);
    }
    GroupElement(MatQ m_, MatQ minv_) : n(static_cast<int>(m_.rows)), m(std::move(m_)), minv(std::move(minv_)) {
        if (!(m * minv == MatQ::identity(n)))
            throw std::invalid_argument("GroupElement: cached inverse is wrong");
        if (det(m) != Rat(1)) throw std::invalid_argument("GroupElement: determinant is not 1");
    }

    static GroupElement identity(int n) { return GroupElement(MatQ::identity(n), MatQ::identity(n)); }

    bool operator==(const GroupElement& o) const { return n == o.n && m == o.m; }

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        return GroupElement(g.m * h.m, h.minv * g.minv);
    }
};

inline SlElement bracket(const SlElement& x, const SlElement& y) {
    if (x.n != y.n) throw std::invalid_argument("bracket: size mismatch");
    return SlElement(x.n, x.m * y.m - y.m * x.m);
}

/// Matrix of ad X = [X, .] in the fixed coordinate basis.
inline MatQ ad_matrix(const SlElement& x) {
    long d = sl_dim(x.n);
    MatQ ad(d, d);
    for (long j = 0; j < d; ++j) {
        MatQ ej = sl_basis_matrix(x.n, j);
        std::vector<Rat> col = sl_coords(x.m * ej - ej * x.m);
        for (long i = 0; i < d; ++i) ad(i, j) = col[i];
    }
    return ad;
}

/// Exact exp of a nilpotent element (X^n must vanish; checked).
inline GroupElement exp_unipotent(const SlElement& x) {
    int n = x.n;
    MatQ pw = MatQ::identity(n), sum = MatQ::identity(n), neg = MatQ::identity(n);
    Rat fact = 1;
    for (int k = 1; k < n; ++k) {
        pw = pw * x.m;
        fact *= Rat(k);
        Rat inv_fact = Rat(1) / fact;
        sum = sum + inv_fact * pw;
        neg = neg + ((k % 2 == 0) ? inv_fact : -inv_fact) * pw;
    }
    if (!(pw * x.m).is_zero()) throw std::invalid_argument("exp_unipotent: X^n != 0");
    return GroupElement(std::move(sum), std::move(neg));
}

inline SlElement adjoint(const GroupElement& g, const SlElement& x) {
    if (g.n != x.n) throw std::invalid_argument("adjoint: size mismatch");
    return SlElement(x.n, g.m * x.m * g.minv);
}

/// Conjugation action on a subspace of sl_n (coordinates of the ambient).
inline SubspaceQ adjoint_subspace(const GroupElement& g, const SubspaceQ& s) {
    int n = g.n;
    if (s.ambient != sl_dim(n)) throw std::invalid_argument("adjoint_subspace: ambient mismatch");
    MatQ rows(s.r(), s.ambient);
    for (long i = 0; i < s.r(); ++i) {
        MatQ xm = sl_matrix(n, s.basis_row(i));
        std::vector<Rat> img = sl_coords(g.m * xm * g.minv);
        for (long j = 0; j < s.ambient; ++j) rows(i, j) = img[j];
    }
    return span_of(std::move(rows));
}

/// Conjugation by an arbitrary invertible rational matrix. On subspaces this
/// coincides with the adjoint action of the corresponding element of SL_n(R)
/// (rescaling a conjugator does not change the map), so rational conjugators
/// can realize normalizations whose det-1 representatives are irrational.
inline SubspaceQ conjugate_subspace(const MatQ& g, const SubspaceQ& s) {
    auto gi = inverse(g);
    if (!gi) throw std::invalid_argument("conjugate_subspace: singular conjugator");
    int n = static_cast<int>(g.rows);
    MatQ rows(s.r(), s.ambient);
    for (long i = 0; i < s.r(); ++i) {
        MatQ xm = sl_matrix(n, s.basis_row(i));
        std::vector<Rat> img = sl_coords(g * xm * *gi);
        for (long j = 0; j < s.ambient; ++j) rows(i, j) = img[j];
    }
    return span_of(std::move(rows));
}

// ---------------------------------------------------------------------------
// Root data for sl_3 and sl_4 (hard-coded; the constructions are rank-specific).
// ---------------------------------------------------------------------------

enum class Root3 { Alpha, Beta, AlphaBeta };
enum class Root4 { Alpha, Beta, Gamma, AlphaBeta, BetaGamma, AlphaBetaGamma };

inline const std::array<Root3, 3>& positive_roots3() {
    static const std::array<Root3, 3> r{Root3::Alpha, Root3::Beta, Root3::AlphaBeta};
    return r;
}

inline const std::array<Root4, 6>& positive_roots4() {
    static const std::array<Root4, 6> r{Root4::Alpha, Root4::Beta, Root4::Gamma,
                                        Root4::AlphaBeta, Root4::BetaGamma,
                                        Root4::AlphaBetaGamma};
    return r;
}

/// Matrix position (i, j) of the root space, 0-based.
inline std::pair<int, int> root_position(Root3 r) {
    switch (r) {
    case Root3::Alpha: return {0, 1};
    case Root3::Beta: return {1, 2};
    case Root3::AlphaBeta: return {0, 2};
    }
    throw std::logic_error("root_position");
}

inline std::pair<int, int> root_position(Root4 r) {
    switch (r) {
    case Root4::Alpha: return {0, 1};
    case Root4::Beta: return {1, 2};
    case Root4::Gamma: return {2, 3};
    case Root4::AlphaBeta: return {0, 2};
    case Root4::BetaGamma: return {1, 3};
    case Root4::AlphaBetaGamma: return {0, 3};
    }
    throw std::logic_error("root_position");
}

inline std::string root_name(Root3 r) {
    switch (r) {
    case Root3::Alpha: return "alpha";
    case Root3::Beta: return "beta";
    case Root3::AlphaBeta: return "alpha+beta";
    }
    throw std::logic_error("root_name");
}

inline std::string root_name(Root4 r) {
    switch (r) {
    case Root4::Alpha: return "alpha";
    case Root4::Beta: return "beta";
    case Root4::Gamma: return "gamma";
    case Root4::AlphaBeta: return "alpha+beta";
    case Root4::BetaGamma: return "beta+gamma";
    case Root4::AlphaBetaGamma: return "alpha+beta+gamma";
    }
    throw std::logic_error("root_name");
}

template <typename Root> SlElement root_vector(int n, Root r) {
    auto [i, j] = root_position(r);
    MatQ m(n, n);
    m(i, j) = 1;
    return SlElement(n, std::move(m));
}

inline SlElement U3(Root3 r) { return root_vector(3, r); }
inline SlElement U4(Root4 r) { return root_vector(4, r); }

/// Root value on (the diagonal part of) an sl_n matrix: entry(i,i)-entry(j,j).
inline Rat root_value3(Root3 r, const MatQ& h) {
    auto [i, j] = root_position(r);
    return h(i, i) - h(j, j);
}

inline Rat root_value4(Root4 r, const MatQ& h) {
    auto [i, j] = root_position(r);
    return h(i, i) - h(j, j);
}

inline MatQ diag(std::vector<Rat> d) {
    MatQ m(static_cast<long>(d.size()), static_cast<long>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<long>(i), static_cast<long>(i)) = d[i];
    return m;
}

/// Dual basis of the simple roots on the diagonal Cartan.
inline SlElement H3(Root3 r) {
    switch (r) {
    case Root3::Alpha: return SlElement(3, diag({rat(2, 3), rat(-1, 3), rat(-1, 3)}));
    case Root3::Beta: return SlElement(3, diag({rat(1, 3), rat(1, 3), rat(-2, 3)}));
    case Root3::AlphaBeta: // H_alpha + H_beta
        return SlElement(3, diag({Rat(1), Rat(0), Rat(-1)}));
    }
    throw std::logic_error("H3");
}

inline SlElement H4(Root4 r) {
    switch (r) {
    case Root4::Alpha: return SlElement(4, diag({rat(3, 4), rat(-1, 4), rat(-1, 4), rat(-1, 4)}));
    case Root4::Beta: return SlElement(4, diag({rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2)}));
    case Root4::Gamma: return SlElement(4, diag({rat(1, 4), rat(1, 4), rat(1, 4), rat(-3, 4)}));
    default: throw std::invalid_argument("H4: dual basis is defined for simple roots");
    }
}

/// b(x, y, z): unipotent upper-triangular with top-right entry z + xy/2.
inline GroupElement b_family(const Rat& x, const Rat& y, const Rat& z) {
    MatQ m = MatQ::identity(3), mi = MatQ::identity(3);
    m(0, 1) = x;
    m(1, 2) = y;
    m(0, 2) = z + x * y / 2;
    mi(0, 1) = -x;
    mi(1, 2) = -y;
    mi(0, 2) = -z + x * y / 2;
    return GroupElement(std::move(m), std::move(mi));
}

/// exp of a sum of positive root vectors, sum_d coeff_d * U_d.
template <typename Root>
GroupElement exp_root_sum(int n, const std::vector<std::pair<Root, Rat>>& terms) {
    MatQ w(n, n);
    for (const auto& [r, c] : terms) {
        auto [i, j] = root_position(r);
        w(i, j) += c;
    }
    return exp_unipotent(SlElement(n, std::move(w)));
}

// Standard subspaces, in ambient coordinates.

inline SubspaceQ standard_cartan(int n) {
    std::vector<std::vector<Rat>> rows;
    for (int k = 0; k < n - 1; ++k) {
        MatQ h(n, n);
        h(k, k) = 1;
        h(k + 1, k + 1) = -1;
        rows.push_back(sl_coords(h));
    }
    return from_spanning_set(rows, sl_dim(n));
}

inline SubspaceQ nilradical(int n) {
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            MatQ e(n, n);
            e(i, j) = 1;
            rows.push_back(sl_coords(e));
        }
    return from_spanning_set(rows, sl_dim(n));
}

inline SubspaceQ borel(int n) { return subspace_sum(standard_cartan(n), nilradical(n)); }

/// a_gamma = Ker(gamma) inside the standard Cartan of sl_3.
inline SubspaceQ a_kernel3(Root3 r) {
    switch (r) {
    case Root3::Alpha: return from_spanning_set({sl_coords(H3(Root3::Beta).m)}, 8);
    case Root3::Beta: return from_spanning_set({sl_coords(H3(Root3::Alpha).m)}, 8);
    case Root3::AlphaBeta:
        return from_spanning_set({sl_coords((H3(Root3::Alpha).m - H3(Root3::Beta).m))}, 8);
    }
    throw std::logic_error("a_kernel3");
}

/// Intersection of the kernels of a set of simple roots inside the sl_4 Cartan;
/// equals the span of the dual vectors of the complementary simple roots.
inline SubspaceQ a_kernel4(const std::vector<Root4>& simple) {
    std::vector<std::vector<Rat>> rows;
    for (Root4 s : {Root4::Alpha, Root4::Beta, Root4::Gamma}) {
        bool killed = false;
        for (Root4 k : simple) killed = killed || k == s;
        if (!killed) rows.push_back(sl_coords(H4(s).m));
    }
    return from_spanning_set(rows, 15);
}

/// sigma = Diag(-1,-1,1), the order-two element exchanging the two middle cells.
inline GroupElement sigma3() {
    MatQ m = diag({Rat(-1), Rat(-1), Rat(1)});
    return GroupElement(m, m);
}

// Block embeddings of sl_3 into sl_4 (exact fixed isomorphisms).

/// Upper-left 3x3 block (derived centralizer for the {alpha, beta} pair).
inline MatQ embed_upper_block(const MatQ& m3) {
    MatQ m(4, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = m3(i, j);
    return m;
}

/// Lower-right 3x3 block (derived centralizer for the {beta, gamma} pair).
inline MatQ embed_lower_block(const MatQ& m3) {
    MatQ m(4, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = m3(i, j);
    return m;
}

/// Named elements addressable from CLI inputs ("H_alpha", "U_beta+gamma", ...).
inline SlElement named_element(int n, const std::string& key) {
    auto fail = [&] { throw std::invalid_argument("unknown element name: " + key); };
    if (key.size() < 3 || key[1] != '_') fail();
    std::string kind = key.substr(0, 1), root = key.substr(2);
    if (n == 3) {
        for (Root3 r : positive_roots3())
            if (root_name(r) == root) {
                if (kind == "U") return U3(r);
                if (kind == "H") return H3(r);
            }
    } else if (n == 4) {
        for (Root4 r : positive_roots4())
            if (root_name(r) == root) {
                if (kind == "U") return U4(r);
                if (kind == "H") return H4(r);
            }
    }
    fail();
    return SlElement{};
}

} // namespace chabauty
