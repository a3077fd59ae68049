#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "modrep/linalg.hpp"

using namespace modrep;

namespace {

Mat random_mat(const Ring& R, int r, int c, std::mt19937_64& rng, int min_val = 0) {
    Mat A(R, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            std::array<std::int64_t, kMaxRamification> a{};
            for (int k = 0; k < R.e(); ++k) a[k] = static_cast<std::int64_t>(rng() % 1000003);
            Elem x = R.from_coeffs(a);
            int shift = static_cast<int>(rng() % 3) == 0 ? static_cast<int>(rng() % (R.w() + 1)) : min_val;
            A(i, j) = R.mul(R.pi_pow(shift), x);
        }
    return A;
}

Mat random_unimodular(const Ring& R, int n, std::mt19937_64& rng) {
    while (true) {
        Mat A = random_mat(R, n, n, rng);
        if (is_invertible(A)) return A;
    }
}

bool is_diag(const Mat& D, const std::vector<int>& d) {
    const Ring& R = D.ring();
    for (int i = 0; i < D.rows(); ++i)
        for (int j = 0; j < D.cols(); ++j) {
            Elem want = i == j ? R.pi_pow(d[i]) : R.zero();
            if (!(D(i, j) == want)) return false;
        }
    return true;
}

}  // namespace

TEST(Linalg, SmithOfWorkedExample) {
    Ring R(ring_make(2, 1, 6), 6);
    Mat A = Mat::from_ints(R, {{1, 3}, {3, 1}});
    SmithForm S = smith(A);
    EXPECT_EQ(S.d, (std::vector<int>{0, 3}));
    EXPECT_EQ(S.U * A * S.V, S.D);
    EXPECT_TRUE(is_diag(S.D, S.d));
}

TEST(Linalg, SmithIdentityAndZero) {
    Ring R(ring_make(3, 2, 3), 6);
    SmithForm S = smith(Mat::identity(R, 4));
    EXPECT_EQ(S.d, (std::vector<int>(4, 0)));
    SmithForm Z = smith(Mat(R, 2, 3));
    EXPECT_EQ(Z.d, (std::vector<int>(2, 6)));
}

TEST(Linalg, SmithReconstructionRandom) {
    std::mt19937_64 rng(11);
    const RingSpec cfgs[] = {{2, 1, 6}, {3, 2, 3}, {2, 2, 4}, {5, 1, 3}};
    for (const auto& s : cfgs) {
        Ring R(s, s.N());
        for (int t = 0; t < 250; ++t) {
            int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
            Mat A = random_mat(R, r, c, rng, static_cast<int>(rng() % 3));
            SmithForm S = smith(A);
            ASSERT_EQ(S.U * A * S.V, S.D);
            ASSERT_TRUE(is_diag(S.D, S.d));
            ASSERT_TRUE(std::is_sorted(S.d.begin(), S.d.end()));
            ASSERT_EQ(S.U * S.Uinv, Mat::identity(R, r));
            ASSERT_EQ(S.V * S.Vinv, Mat::identity(R, c));
            ASSERT_TRUE(is_invertible(S.U));
            ASSERT_TRUE(is_invertible(S.V));
        }
    }
}

TEST(Linalg, SmithInvariantUnderEquivalence) {
    std::mt19937_64 rng(12);
    Ring R(ring_make(3, 2, 3), 6);
    for (int t = 0; t < 100; ++t) {
        Mat A = random_mat(R, 4, 4, rng, 1);
        Mat P = random_unimodular(R, 4, rng), Q = random_unimodular(R, 4, rng);
        ASSERT_EQ(smith(A).d, smith(P * A * Q).d);
    }
}

TEST(Linalg, SolveBasics) {
    Ring R(ring_make(2, 1, 4), 4);
    Mat b = Mat::from_ints(R, {{3}, {5}});
    auto x = solve(Mat::identity(R, 2), b);
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, b);
    Mat A = Mat::scalar(R, 1, R.pi_pow(1));
    EXPECT_FALSE(solve(A, Mat::from_ints(R, {{1}})));
}

TEST(Linalg, SolveConstructedSystems) {
    std::mt19937_64 rng(13);
    Ring R(ring_make(3, 2, 3), 6);
    for (int t = 0; t < 200; ++t) {
        Mat A = random_mat(R, 3 + static_cast<int>(rng() % 3), 3, rng, 1);
        Mat x = random_mat(R, 3, 2, rng);
        Mat b = A * x;
        auto y = solve(A, b);
        ASSERT_TRUE(y);
        ASSERT_EQ(A * *y, b);
    }
}

TEST(Linalg, KernelExamples) {
    Ring R(ring_make(2, 1, 6), 6);
    Mat K0 = kernel_basis(Mat(R, 2, 2));
    EXPECT_EQ(K0, Mat::identity(R, 2));
    Mat K1 = kernel_basis(Mat::scalar(R, 1, R.pi_pow(2)));
    ASSERT_EQ(K1.rows(), 1);
    EXPECT_EQ(K1(0, 0), R.pi_pow(4));
    Mat A = Mat::from_ints(R, {{1, 3}, {3, 1}});
    Mat K = kernel_basis(A);
    ASSERT_EQ(K.rows(), 1);
    EXPECT_EQ(K.min_val(), 3);
    EXPECT_TRUE((K * A).is_zero());
}

TEST(Linalg, KernelMatchesBruteForce) {
    // p = 2, N <= 3, at most two rows: enumerate every x with x A = 0.
    std::mt19937_64 rng(14);
    for (int N = 1; N <= 3; ++N) {
        Ring R(ring_make(2, 1, N), N);
        const int q = 1 << N;
        for (int t = 0; t < 60; ++t) {
            int rows = 1 + static_cast<int>(rng() % 2), cols = 1 + static_cast<int>(rng() % 3);
            Mat A = random_mat(R, rows, cols, rng);
            AdaptedModule K = left_kernel(A);
            Mat G = K.generators();
            for (int x0 = 0; x0 < q; ++x0)
                for (int x1 = 0; x1 < (rows > 1 ? q : 1); ++x1) {
                    Mat x(R, 1, rows);
                    x(0, 0) = R.from_int(x0);
                    if (rows > 1) x(0, 1) = R.from_int(x1);
                    bool in_kernel = (x * A).is_zero();
                    ASSERT_EQ(in_kernel, K.contains(x));
                }
            ASSERT_TRUE((G * A).is_zero());
        }
    }
}

TEST(Linalg, InvariantFactorsExamples) {
    Ring R(ring_make(2, 1, 6), 6);
    Mat rels = Mat(R, 2, 2);
    rels(0, 0) = R.pi_pow(1);
    rels(1, 1) = R.pi_pow(3);
    EXPECT_EQ(invariant_factors(Mat::identity(R, 2), rels), (std::vector<int>{1, 3}));
    EXPECT_TRUE(invariant_factors(Mat::identity(R, 3), Mat::identity(R, 3)).empty());
    Mat bad = Mat::from_ints(R, {{1, 0}});
    EXPECT_THROW(invariant_factors(Mat::from_ints(R, {{0, 1}}), bad), std::invalid_argument);
}

TEST(Linalg, InvariantFactorsMatchEnumeration) {
    // Enumerate <gens> / <rels> inside (Z/2^N)^n and compare the order
    // multiset: a module sum Z/2^{d_i} has exactly prod min(2^k, 2^{d_i})
    // elements killed by 2^k.
    std::mt19937_64 rng(15);
    const int N = 3;
    Ring R(ring_make(2, 1, N), N);
    const int q = 1 << N;
    for (int t = 0; t < 40; ++t) {
        const int n = 2;
        Mat gens = random_mat(R, 2, n, rng);
        Mat rc = random_mat(R, 2, 2, rng, 1);
        Mat rels = rc * gens;
        auto d = invariant_factors(gens, rels);
        // elements of span(gens) and span(rels)
        auto span = [&](const Mat& G) {
            std::set<std::vector<std::int64_t>> S;
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b) {
                    std::vector<std::int64_t> v(n, 0);
                    for (int j = 0; j < n; ++j) v[j] = (a * G(0, j).c[0] + b * G(1, j).c[0]) % q;
                    S.insert(v);
                }
            return S;
        };
        auto SG = span(gens), SR = span(rels);
        // cosets: count elements x of the quotient with 2^k x = 0
        for (int k = 0; k <= N; ++k) {
            std::set<std::vector<std::int64_t>> killed;  // coset representatives
            std::set<std::vector<std::int64_t>> seen;
            int count = 0;
            for (const auto& x : SG) {
                std::vector<std::int64_t> canon = x;
                // canonical coset rep: min over x + r
                for (const auto& r : SR) {
                    std::vector<std::int64_t> y(n);
                    for (int j = 0; j < n; ++j) y[j] = (x[j] + r[j]) % q;
                    canon = std::min(canon, y);
                }
                if (seen.count(canon)) continue;
                seen.insert(canon);
                std::vector<std::int64_t> kx(n);
                for (int j = 0; j < n; ++j) kx[j] = (x[j] << k) % q;
                if (SR.count(kx)) ++count;
            }
            long long expect = 1;
            for (int di : d) expect *= 1LL << std::min(k, di);
            ASSERT_EQ(count, expect) << "k=" << k;
        }
    }
}

TEST(Linalg, FpHelpers) {
    fp::Matrix A{{1, 2, 0}, {2, 4, 0}, {0, 0, 1}};
    EXPECT_EQ(fp::rank(A, 5), 2);
    auto ns = fp::nullspace(A, 3, 5);
    ASSERT_EQ(ns.size(), 1u);
    auto prod = fp::mul(A, fp::transpose(ns, 3), 5);
    for (auto& r : prod) EXPECT_EQ(r[0], 0);
    auto x = fp::solve(A, {3, 1, 2}, 3, 5);
    ASSERT_TRUE(x);
    EXPECT_FALSE(fp::solve(A, {1, 0, 0}, 3, 5));
}
