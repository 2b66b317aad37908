#include <chabauty/matrix.hpp>
#include <chabauty/polynomial.hpp>
#include <chabauty/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

using namespace chabauty;

namespace {

MatQ mat(long r, long c, std::initializer_list<long long> vals) {
    MatQ m(r, c);
    auto it = vals.begin();
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = Rat(*it++);
    return m;
}

MatQ random_mat(Rng& rng, long r, long c, long long h) {
    MatQ m(r, c);
    for (auto& x : m.a) x = rng.rational(h);
    return m;
}

// Independent oracle: cofactor expansion of det(lambda I - m) over
// polynomial entries.
PolyQ charpoly_oracle(const MatQ& m) {
    long n = m.rows;
    std::vector<PolyQ> entries(n * n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            std::vector<Rat> c{-m(i, j)};
            if (i == j) c.push_back(Rat(1));
            entries[i * n + j] = PolyQ(c);
        }
    std::function<PolyQ(std::vector<PolyQ>, long)> detp = [&](std::vector<PolyQ> e, long k) {
        if (k == 1) return e[0];
        PolyQ acc;
        int sgn = 1;
        for (long r = 0; r < k; ++r) {
            std::vector<PolyQ> minor;
            minor.reserve((k - 1) * (k - 1));
            for (long i = 0; i < k; ++i) {
                if (i == r) continue;
                for (long j = 1; j < k; ++j) minor.push_back(e[i * k + j]);
            }
            PolyQ term = poly_mul(e[r * k], detp(minor, k - 1));
            acc = poly_add(acc, sgn > 0 ? term : poly_neg(term));
            sgn = -sgn;
        }
        return acc;
    };
    return detp(entries, n);
}

} // namespace

TEST_CASE("rref on the stated examples") {
    auto id = rref(MatQ::identity(2));
    REQUIRE(id.reduced == MatQ::identity(2));
    REQUIRE(id.pivot_columns == std::vector<long>{0, 1});
    REQUIRE(id.rank == 2);

    // hand row-reduction: R2 -> R2 - 2 R1
    auto r = rref(mat(2, 2, {1, 2, 2, 4}));
    REQUIRE(r.reduced == mat(2, 2, {1, 2, 0, 0}));
    REQUIRE(r.pivot_columns == std::vector<long>{0});
    REQUIRE(r.rank == 1);

    auto z = rref(MatQ(3, 3));
    REQUIRE(z.reduced.is_zero());
    REQUIRE(z.pivot_columns.empty());
    REQUIRE(z.rank == 0);
}

TEST_CASE("rref is idempotent on random matrices") {
    Rng rng(2024);
    for (int t = 0; t < 50; ++t) {
        MatQ m = random_mat(rng, rng.uniform(1, 5), rng.uniform(1, 6), 6);
        MatQ once = rref(m).reduced;
        REQUIRE(rref(once).reduced == once);
    }
}

TEST_CASE("kernel basics") {
    REQUIRE(kernel(MatQ::identity(3)).empty());

    auto k = kernel(mat(1, 2, {1, 1}));
    REQUIRE(k.size() == 1);
    REQUIRE(k[0] == std::vector<Rat>{Rat(1), Rat(-1)});

    REQUIRE(kernel(MatQ(2, 3)).size() == 3);
}

TEST_CASE("kernel vectors annihilate and complete the rank") {
    Rng rng(99);
    for (int t = 0; t < 60; ++t) {
        MatQ m = random_mat(rng, rng.uniform(1, 5), rng.uniform(1, 6), 5);
        auto basis = kernel(m);
        long rank = rref(m).rank;
        REQUIRE(static_cast<long>(basis.size()) + rank == m.cols);
        for (const auto& v : basis) {
            auto mv = m * v;
            for (const auto& x : mv) REQUIRE(x.is_zero());
        }
    }
}

TEST_CASE("charpoly on the stated examples") {
    REQUIRE(charpoly(mat(2, 2, {1, 0, 0, -1})) == PolyQ({Rat(-1), Rat(0), Rat(1)}));
    REQUIRE(charpoly(mat(2, 2, {0, 1, 0, 0})) == PolyQ({Rat(0), Rat(0), Rat(1)}));
    REQUIRE(charpoly(mat(2, 2, {0, 1, -1, 0})) == PolyQ({Rat(1), Rat(0), Rat(1)}));
}

TEST_CASE("charpoly agrees with the cofactor oracle") {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        long n = rng.uniform(1, 5);
        MatQ m = random_mat(rng, n, n, 5);
        REQUIRE(charpoly(m) == charpoly_oracle(m));
    }
}

TEST_CASE("charpoly is similarity invariant") {
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        long n = rng.uniform(2, 5);
        MatQ m = random_mat(rng, n, n, 5);
        MatQ p = random_mat(rng, n, n, 5);
        auto pinv = inverse(p);
        while (!pinv) {
            p = random_mat(rng, n, n, 5);
            pinv = inverse(p);
        }
        REQUIRE(charpoly(p * m * *pinv) == charpoly(m));
    }
}

TEST_CASE("is_real_rooted on the stated examples") {
    REQUIRE(is_real_rooted(PolyQ({Rat(-1), Rat(0), Rat(1)})));      // x^2 - 1
    REQUIRE_FALSE(is_real_rooted(PolyQ({Rat(1), Rat(0), Rat(1)}))); // x^2 + 1
    REQUIRE(is_real_rooted(PolyQ({Rat(0), Rat(0), Rat(0), Rat(1)}))); // x^3
    REQUIRE_THROWS_AS(is_real_rooted(PolyQ{}), std::invalid_argument);
}

TEST_CASE("is_real_rooted handles repeated and mixed factors") {
    // (x-1)^2 (x+3)
    PolyQ p = poly_mul(poly_mul(PolyQ({Rat(-1), Rat(1)}), PolyQ({Rat(-1), Rat(1)})),
                       PolyQ({Rat(3), Rat(1)}));
    REQUIRE(is_real_rooted(p));
    // (x-1)^2 (x^2+1)
    PolyQ q = poly_mul(poly_mul(PolyQ({Rat(-1), Rat(1)}), PolyQ({Rat(-1), Rat(1)})),
                       PolyQ({Rat(1), Rat(0), Rat(1)}));
    REQUIRE_FALSE(is_real_rooted(q));
    REQUIRE(real_root_count(p) == 3);
    REQUIRE(real_root_count(q) == 2);
}

TEST_CASE("is_real_rooted agrees with a float eigenvalue oracle") {
    Rng rng(31337);
    int real_cases = 0;
    for (int t = 0; t < 500; ++t) {
        long n = rng.uniform(2, 6);
        MatQ m = random_mat(rng, n, n, 5);
        // occasionally symmetrize so the real-rooted branch is exercised
        if (t % 3 == 0) m = m + m.transpose();
        Eigen::MatrixXd mf(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) mf(i, j) = to_double(m(i, j));
        Eigen::EigenSolver<Eigen::MatrixXd> es(mf, false);
        double max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
        bool oracle = max_imag < 1e-9;
        bool exact = is_real_rooted(charpoly(m));
        REQUIRE(exact == oracle);
        if (exact) ++real_cases;
    }
    REQUIRE(real_cases > 50);
}

TEST_CASE("rational root extraction") {
    // (x - 2)(x + 3/2) x
    PolyQ p = poly_mul(poly_mul(PolyQ({Rat(-2), Rat(1)}), PolyQ({rat(3, 2), Rat(1)})),
                       PolyQ({Rat(0), Rat(1)}));
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    REQUIRE(std::find(roots.begin(), roots.end(), Rat(2)) != roots.end());
    REQUIRE(std::find(roots.begin(), roots.end(), rat(-3, 2)) != roots.end());
    REQUIRE(std::find(roots.begin(), roots.end(), Rat(0)) != roots.end());
}

TEST_CASE("det and inverse") {
    MatQ m = mat(3, 3, {2, 0, 1, 0, 1, 0, 1, 0, 1});
    REQUIRE(det(m) == Rat(1));
    auto mi = inverse(m);
    REQUIRE(mi);
    REQUIRE((*mi * m) == MatQ::identity(3));
    REQUIRE_FALSE(inverse(mat(2, 2, {1, 2, 2, 4})));
    REQUIRE(det(mat(2, 2, {0, 1, -1, 0})) == Rat(1));
    REQUIRE(det(mat(2, 2, {1, 0, 0, -1})) == Rat(-1));
}
