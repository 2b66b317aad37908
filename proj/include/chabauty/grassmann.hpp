#pragma once

#include <chabauty/matrix.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace chabauty {

/// A point of Gr_r(Q^d): canonical reduced-echelon basis rows. Two values
/// compare equal iff they are the same subspace.
struct SubspaceQ {
    long ambient = 0;
    MatQ basis; // r x ambient, RREF rows

    SubspaceQ() = default;

    [[nodiscard]] long r() const { return basis.rows; }

    [[nodiscard]] bool contains(const std::vector<Rat>& v) const {
        MatQ m(basis.rows + 1, ambient);
        for (long i = 0; i < basis.rows; ++i)
            for (long j = 0; j < ambient; ++j) m(i, j) = basis(i, j);
        for (long j = 0; j < ambient; ++j) m(basis.rows, j) = v[j];
        return rref(std::move(m)).rank == basis.rows;
    }

    [[nodiscard]] bool contains(const SubspaceQ& other) const {
        for (long i = 0; i < other.basis.rows; ++i) {
            std::vector<Rat> v(ambient);
            for (long j = 0; j < ambient; ++j) v[j] = other.basis(i, j);
            if (!contains(v)) return false;
        }
        return true;
    }

    [[nodiscard]] std::vector<Rat> basis_row(long i) const {
        std::vector<Rat> v(ambient);
        for (long j = 0; j < ambient; ++j) v[j] = basis(i, j);
        return v;
    }

    bool operator==(const SubspaceQ& o) const { return ambient == o.ambient && basis == o.basis; }
};

/// Canonical subspace spanned by the rows of m. Dependent spanning sets
/// just reduce the dimension.
inline SubspaceQ span_of(MatQ m) {
    SubspaceQ s;
    s.ambient = m.cols;
    RrefResult r = rref(std::move(m));
    MatQ b(r.rank, r.reduced.cols);
    for (long i = 0; i < r.rank; ++i)
        for (long j = 0; j < r.reduced.cols; ++j) b(i, j) = r.reduced(i, j);
    s.basis = std::move(b);
    return s;
}

inline SubspaceQ from_spanning_set(const std::vector<std::vector<Rat>>& vectors, long ambient) {
    if (vectors.empty()) throw std::invalid_argument("from_spanning_set: empty spanning set");
    MatQ m(static_cast<long>(vectors.size()), ambient);
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (static_cast<long>(vectors[i].size()) != ambient)
            throw std::invalid_argument("from_spanning_set: vector length != ambient");
        for (long j = 0; j < ambient; ++j) m(static_cast<long>(i), j) = vectors[i][j];
    }
    return span_of(std::move(m));
}

inline SubspaceQ subspace_sum(const SubspaceQ& a, const SubspaceQ& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_sum: ambient mismatch");
    MatQ m(a.basis.rows + b.basis.rows, a.ambient);
    for (long i = 0; i < a.basis.rows; ++i)
        for (long j = 0; j < a.ambient; ++j) m(i, j) = a.basis(i, j);
    for (long i = 0; i < b.basis.rows; ++i)
        for (long j = 0; j < a.ambient; ++j) m(a.basis.rows + i, j) = b.basis(i, j);
    return span_of(std::move(m));
}

/// (d-r) x d matrix whose kernel is exactly s; rows express the residual of a
/// vector after eliminating along the pivot columns of the canonical basis.
inline MatQ quotient_matrix(const SubspaceQ& s) {
    RrefResult rr = rref(s.basis);
    std::vector<bool> is_pivot(s.ambient, false);
    for (long p : rr.pivot_columns) is_pivot[p] = true;
    MatQ q(s.ambient - s.r(), s.ambient);
    long row = 0;
    for (long j = 0; j < s.ambient; ++j) {
        if (is_pivot[j]) continue;
        q(row, j) = 1;
        for (long k = 0; k < s.r(); ++k) q(row, rr.pivot_columns[k]) = -s.basis(k, j);
        ++row;
    }
    return q;
}

/// Primitive integer vector of maximal minors in lexicographic column-subset
/// order, sign-normalized so the first nonzero entry is positive.
struct PluckerVec {
    long ambient = 0;
    long r = 0;
    std::vector<Int> coords;

    bool operator==(const PluckerVec& o) const {
        return ambient == o.ambient && r == o.r && coords == o.coords;
    }
};

namespace detail {

inline Int int_det(const std::vector<Int>& e, long k) {
    if (k == 1) return e[0];
    if (k == 2) return e[0] * e[3] - e[1] * e[2];
    Int acc = 0;
    int sgn = 1;
    for (long row = 0; row < k; ++row) {
        if (!e[row * k].is_zero()) {
            std::vector<Int> minor;
            minor.reserve((k - 1) * (k - 1));
            for (long i = 0; i < k; ++i) {
                if (i == row) continue;
                for (long j = 1; j < k; ++j) minor.push_back(e[i * k + j]);
            }
            Int term = e[row * k] * int_det(minor, k - 1);
            acc += sgn > 0 ? term : -term;
        }
        sgn = -sgn;
    }
    return acc;
}

inline bool next_combination(std::vector<long>& c, long n) {
    long k = static_cast<long>(c.size());
    long i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (long j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

} // namespace detail

inline PluckerVec plucker(const SubspaceQ& s) {
    if (s.r() < 1) throw std::invalid_argument("plucker: zero-dimensional subspace");
    long r = s.r(), d = s.ambient;

    // integer row rescaling only changes the vector by a positive factor
    MatQ b = s.basis;
    std::vector<Int> ib(b.a.size());
    for (long i = 0; i < r; ++i) {
        Int den = 1;
        for (long j = 0; j < d; ++j) den = boost::multiprecision::lcm(den, denominator(b(i, j)));
        for (long j = 0; j < d; ++j) ib[i * d + j] = numerator(b(i, j) * Rat(den));
    }

    PluckerVec p;
    p.ambient = d;
    p.r = r;
    std::vector<long> cols(r);
    for (long i = 0; i < r; ++i) cols[i] = i;
    do {
        std::vector<Int> sub(r * r);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) sub[i * r + j] = ib[i * d + cols[j]];
        p.coords.push_back(detail::int_det(sub, r));
    } while (detail::next_combination(cols, d));

    Int g = 0;
    for (const auto& x : p.coords) g = boost::multiprecision::gcd(g, x);
    if (g.is_zero()) throw std::logic_error("plucker: zero vector from independent rows");
    int lead = 0;
    for (auto& x : p.coords) {
        x /= g;
        if (lead == 0 && !x.is_zero()) lead = x < 0 ? -1 : 1;
    }
    if (lead < 0)
        for (auto& x : p.coords) x = -x;
    return p;
}

/// Floating Grassmannian point, stored as its orthogonal projector.
struct SubspaceF {
    long ambient = 0;
    long r = 0;
    Eigen::MatrixXd P;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass.
inline SubspaceF to_float(const SubspaceQ& s) {
    long r = s.r(), d = s.ambient;
    std::vector<Eigen::VectorXd> q;
    q.reserve(r);
    for (long i = 0; i < r; ++i) {
        Eigen::VectorXd v(d);
        for (long j = 0; j < d; ++j) v[j] = to_double(s.basis(i, j));
        double m = v.cwiseAbs().maxCoeff();
        if (m > 0) v /= m;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : q) v -= u.dot(v) * u;
        double n = v.norm();
        if (!(n > 1e-250)) throw std::logic_error("to_float: numerically dependent basis");
        q.push_back(v / n);
    }
    SubspaceF f;
    f.ambient = d;
    f.r = r;
    f.P = Eigen::MatrixXd::Zero(d, d);
    for (const auto& u : q) f.P += u * u.transpose();
    return f;
}

/// Frobenius distance between projectors.
inline double distance(const SubspaceF& a, const SubspaceF& b) {
    if (a.ambient != b.ambient || a.r != b.r)
        throw std::invalid_argument("distance: dimension mismatch");
    return (a.P - b.P).norm();
}

inline double distance(const SubspaceQ& a, const SubspaceQ& b) {
    return distance(to_float(a), to_float(b));
}

/// A family of exact subspaces indexed by n >= 1.
struct SeqFamily {
    std::string name;
    std::function<SubspaceQ(long)> generate;
};

struct LimitEstimate {
    SubspaceF limit;
    SubspaceQ last_exact;
    std::vector<double> gaps; // consecutive projector distances along the schedule
    bool certified = false;
    std::string note;
};

/// Convergence is certified, not proven: consecutive distances must be
/// non-increasing and the final gap below tol.
inline LimitEstimate limit_estimate(const SeqFamily& f, const std::vector<long>& schedule,
                                    double tol) {
    if (schedule.size() < 3) throw std::invalid_argument("limit_estimate: schedule too short");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("limit_estimate: schedule not increasing");

    LimitEstimate est;
    std::vector<SubspaceF> pts;
    pts.reserve(schedule.size());
    for (long idx : schedule) {
        est.last_exact = f.generate(idx);
        pts.push_back(to_float(est.last_exact));
    }
    for (size_t i = 1; i < pts.size(); ++i) est.gaps.push_back(distance(pts[i - 1], pts[i]));
    est.limit = pts.back();

    bool monotone = true;
    for (size_t i = 1; i < est.gaps.size(); ++i)
        if (est.gaps[i] > est.gaps[i - 1] + 1e-12) monotone = false;
    if (!monotone) {
        est.note = "no convergence certificate";
        return est;
    }
    est.certified = est.gaps.back() < tol;
    if (!est.certified) est.note = "final gap above tolerance";
    return est;
}

} // namespace chabauty
