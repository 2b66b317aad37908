#pragma once

#include <chabauty/polynomial.hpp>
#include <chabauty/rational.hpp>

#include <optional>
#include <vector>

namespace chabauty {

/// Dense exact rational matrix, row-major.
struct MatQ {
    long rows = 0, cols = 0;
    std::vector<Rat> a;

    MatQ() = default;
    MatQ(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    MatQ(long r, long c, std::vector<Rat> entries) : rows(r), cols(c), a(std::move(entries)) {
        if (a.size() != static_cast<size_t>(r) * c)
            throw std::invalid_argument("MatQ: entry count does not match shape");
    }

    Rat& operator()(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& operator()(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static MatQ identity(long n) {
        MatQ m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    [[nodiscard]] bool is_square() const { return rows == cols; }
    [[nodiscard]] bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    [[nodiscard]] Rat trace() const {
        Rat t = 0;
        for (long i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
        return t;
    }

    [[nodiscard]] MatQ transpose() const {
        MatQ t(cols, rows);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const MatQ& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    // hidden friends: found by ADL on MatQ only, so they never participate in
    // overload resolution for foreign (e.g. Eigen expression) types
    friend MatQ operator+(const MatQ& x, const MatQ& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("MatQ: shape mismatch in +");
        MatQ r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }

    friend MatQ operator-(const MatQ& x, const MatQ& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("MatQ: shape mismatch in -");
        MatQ r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }

    friend MatQ operator-(const MatQ& x) {
        MatQ r = x;
        for (auto& v : r.a) v = -v;
        return r;
    }

    friend MatQ operator*(const Rat& s, const MatQ& x) {
        MatQ r = x;
        for (auto& v : r.a) v *= s;
        return r;
    }

    friend MatQ operator*(const MatQ& x, const MatQ& y) {
        if (x.cols != y.rows) throw std::invalid_argument("MatQ: shape mismatch in *");
        MatQ r(x.rows, y.cols);
        for (long i = 0; i < x.rows; ++i)
            for (long k = 0; k < x.cols; ++k) {
                const Rat& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (long j = 0; j < y.cols; ++j) {
                    const Rat& ykj = y(k, j);
                    if (!ykj.is_zero()) r(i, j) += xik * ykj;
                }
            }
        return r;
    }

    friend std::vector<Rat> operator*(const MatQ& m, const std::vector<Rat>& v) {
        if (m.cols != static_cast<long>(v.size()))
            throw std::invalid_argument("MatQ: shape mismatch in m*v");
        std::vector<Rat> r(m.rows);
        for (long i = 0; i < m.rows; ++i)
            for (long j = 0; j < m.cols; ++j)
                if (!m(i, j).is_zero()) r[i] += m(i, j) * v[j];
        return r;
    }
};

struct RrefResult {
    MatQ reduced;
    std::vector<long> pivot_columns;
    long rank = 0;
};

/// Unique reduced row-echelon form: pivots 1, pivot columns cleared.
inline RrefResult rref(MatQ m) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < m.cols && row < m.rows; ++col) {
        long sel = -1;
        for (long i = row; i < m.rows; ++i)
            if (!m(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (long j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(row, j));
        Rat inv = Rat(1) / m(row, col);
        for (long j = col; j < m.cols; ++j) m(row, j) *= inv;
        for (long i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Rat f = m(i, col);
            for (long j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots), row};
}

/// Canonical echelon basis of the null space {v : m v = 0}.
inline std::vector<std::vector<Rat>> kernel(const MatQ& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (long p : r.pivot_columns) is_pivot[p] = true;

    MatQ raw(m.cols - r.rank, m.cols);
    long k = 0;
    for (long j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        raw(k, j) = 1;
        for (long i = 0; i < r.rank; ++i) raw(k, r.pivot_columns[i]) = -r.reduced(i, j);
        ++k;
    }
    RrefResult canon = rref(std::move(raw));
    std::vector<std::vector<Rat>> basis;
    basis.reserve(canon.rank);
    for (long i = 0; i < canon.rank; ++i) {
        std::vector<Rat> v(m.cols);
        for (long j = 0; j < m.cols; ++j) v[j] = canon.reduced(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of m x = b, if any.
inline std::optional<std::vector<Rat>> solve(const MatQ& m, const std::vector<Rat>& b) {
    if (m.rows != static_cast<long>(b.size())) throw std::invalid_argument("solve: shape mismatch");
    MatQ aug(m.rows, m.cols + 1);
    for (long i = 0; i < m.rows; ++i) {
        for (long j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    RrefResult r = rref(std::move(aug));
    for (long p : r.pivot_columns)
        if (p == m.cols) return std::nullopt;
    std::vector<Rat> x(m.cols);
    for (long i = 0; i < r.rank; ++i) x[r.pivot_columns[i]] = r.reduced(i, m.cols);
    return x;
}

inline std::optional<MatQ> inverse(const MatQ& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square matrix");
    long n = m.rows;
    MatQ aug(n, 2 * n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RrefResult r = rref(std::move(aug));
    if (r.rank < n || r.pivot_columns[n - 1] != n - 1) return std::nullopt;
    MatQ inv(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
    return inv;
}

/// Monic characteristic polynomial det(lambda I - m), by the
/// Faddeev-LeVerrier recurrence run on an integer rescaling of m
/// (division-free except by the step index).
inline PolyQ charpoly(const MatQ& m) {
    if (!m.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
    long n = m.rows;
    if (n == 0) return PolyQ({Rat(1)});

    Int den = 1;
    for (const auto& q : m.a) den = boost::multiprecision::lcm(den, denominator(q));
    std::vector<Int> im(m.a.size());
    for (size_t i = 0; i < m.a.size(); ++i) im[i] = numerator(m.a[i] * Rat(den));

    auto imul = [n](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r(static_cast<size_t>(n) * n);
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                const Int& xik = x[i * n + k];
                if (xik.is_zero()) continue;
                for (long j = 0; j < n; ++j) r[i * n + j] += xik * y[k * n + j];
            }
        return r;
    };
    auto itrace = [n](const std::vector<Int>& x) {
        Int t = 0;
        for (long i = 0; i < n; ++i) t += x[i * n + i];
        return t;
    };

    // coefficients of det(lambda I - dm), dm = den*m, descending: 1, c1, ..., cn
    std::vector<Int> coeff(n + 1);
    coeff[0] = 1;
    std::vector<Int> mk = im;
    for (long k = 1; k <= n; ++k) {
        Int ck = -itrace(mk) / k;
        coeff[k] = ck;
        if (k == n) break;
        for (long i = 0; i < n; ++i) mk[i * n + i] += ck;
        mk = imul(im, mk);
    }

    // det(lambda I - m) = det((lambda*den) I - dm) / den^n
    std::vector<Rat> out(n + 1);
    Int dpow = 1;
    for (long k = 0; k <= n; ++k) {
        out[n - k] = make_rat(coeff[k], dpow); // coefficient of lambda^(n-k)
        dpow *= den;
    }
    return PolyQ(std::move(out));
}

inline Rat det(const MatQ& m) {
    PolyQ p = charpoly(m);
    Rat d = p(Rat(0)); // det(-m)
    return (m.rows % 2 == 0) ? d : -d;
}

} // namespace chabauty
