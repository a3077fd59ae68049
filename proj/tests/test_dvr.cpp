#include <gtest/gtest.h>

#include <random>

#include "modrep/dvr.hpp"

using namespace modrep;

namespace {

// Oracle: an element sum a_i pi^i acts on Z/p^m[x]/(x^e - p) by an e x e
// integer matrix (powers of the companion matrix).  Full precision only.
using IMat = std::vector<std::vector<std::int64_t>>;

IMat companion_rep(const Elem& x, const RingSpec& s) {
    std::int64_t q = ipow(s.p, s.m);
    IMat C(s.e, std::vector<std::int64_t>(s.e, 0));
    for (int i = 0; i + 1 < s.e; ++i) C[i + 1][i] = 1;
    C[0][s.e - 1] = s.p % q;
    auto mm = [&](const IMat& a, const IMat& b) {
        IMat r(s.e, std::vector<std::int64_t>(s.e, 0));
        for (int i = 0; i < s.e; ++i)
            for (int k = 0; k < s.e; ++k)
                for (int j = 0; j < s.e; ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % q;
        return r;
    };
    IMat acc(s.e, std::vector<std::int64_t>(s.e, 0)), P(s.e, std::vector<std::int64_t>(s.e, 0));
    for (int i = 0; i < s.e; ++i) P[i][i] = 1;
    for (int t = 0; t < s.e; ++t) {
        for (int i = 0; i < s.e; ++i)
            for (int j = 0; j < s.e; ++j) acc[i][j] = (acc[i][j] + x.c[t] * P[i][j]) % q;
        P = mm(P, C);
    }
    return acc;
}

Elem random_elem(const Ring& R, std::mt19937_64& rng) {
    std::array<std::int64_t, kMaxRamification> a{};
    for (int i = 0; i < R.e(); ++i) a[i] = static_cast<std::int64_t>(rng() % (1u << 30));
    return R.from_coeffs(a);
}

const RingSpec kConfigs[] = {{2, 1, 6}, {3, 2, 4}, {2, 2, 5}, {5, 1, 4}, {3, 3, 3}};

}  // namespace

TEST(Dvr, RingMakeValidates) {
    EXPECT_EQ(ring_make(2, 1, 6).N(), 6);
    EXPECT_EQ(ring_make(3, 2, 4).N(), 8);
    EXPECT_THROW(ring_make(4, 1, 3), std::invalid_argument);
    EXPECT_THROW(ring_make(2, 0, 3), std::invalid_argument);
    EXPECT_THROW(ring_make(2, 1, 0), std::invalid_argument);
}

TEST(Dvr, EisensteinRelation) {
    Ring R(ring_make(3, 2, 4), 8);
    Elem pi = R.pi_pow(1);
    EXPECT_EQ(R.mul(pi, pi), R.from_int(3));
}

TEST(Dvr, Valuations) {
    Ring Z64(ring_make(2, 1, 6), 6);
    EXPECT_EQ(Z64.val(Z64.from_int(8)), 3);
    EXPECT_EQ(Z64.val(Z64.zero()), 6);
    Ring R(ring_make(3, 2, 4), 8);
    EXPECT_EQ(R.val(R.from_int(3)), 2);
    EXPECT_EQ(R.val(R.add(R.pi_pow(1), R.from_int(3))), 1);
    EXPECT_EQ(R.val(R.pi_pow(5)), 5);
}

TEST(Dvr, Inverse) {
    Ring R16(ring_make(2, 1, 4), 4);
    EXPECT_EQ(R16.inv(R16.from_int(5)), R16.from_int(13));
    EXPECT_EQ(R16.inv(R16.one()), R16.one());
    Ring R(ring_make(3, 2, 4), 8);
    EXPECT_THROW(R.inv(R.pi_pow(1)), std::domain_error);
}

TEST(Dvr, DivPi) {
    Ring Z64(ring_make(2, 1, 6), 6);
    EXPECT_EQ(Z64.div_pi(Z64.from_int(8), 3), Z64.one());
    EXPECT_TRUE(Z64.is_zero(Z64.div_pi(Z64.zero(), 4)));
    EXPECT_THROW(Z64.div_pi(Z64.from_int(4), 3), std::domain_error);
    Ring R(ring_make(3, 2, 4), 8);
    Elem u = R.from_coeffs({7, 5});
    Elem y = R.div_pi(R.mul(R.pi_pow(1), u), 1);
    Ring R7 = R.at(7);
    EXPECT_EQ(R7.reduce(y), R7.reduce(u));
}

TEST(Dvr, MultiplicationMatchesCompanionOracle) {
    std::mt19937_64 rng(1);
    for (const auto& s : kConfigs) {
        Ring R(s, s.N());
        for (int t = 0; t < 300; ++t) {
            Elem a = random_elem(R, rng), b = random_elem(R, rng);
            auto lhs = companion_rep(R.mul(a, b), s);
            auto A = companion_rep(a, s), B = companion_rep(b, s);
            std::int64_t q = ipow(s.p, s.m);
            for (int i = 0; i < s.e; ++i)
                for (int j = 0; j < s.e; ++j) {
                    std::int64_t v = 0;
                    for (int k = 0; k < s.e; ++k) v = (v + A[i][k] * B[k][j]) % q;
                    ASSERT_EQ(lhs[i][j], v);
                }
        }
    }
}

TEST(Dvr, RingAxiomsAndValuationRules) {
    std::mt19937_64 rng(2);
    for (const auto& s : kConfigs) {
        for (int w = 1; w <= s.N(); ++w) {
            Ring R(s, w);
            for (int t = 0; t < 200; ++t) {
                Elem a = random_elem(R, rng), b = random_elem(R, rng), c = random_elem(R, rng);
                ASSERT_EQ(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)));
                ASSERT_EQ(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)));
                ASSERT_EQ(R.mul(a, b), R.mul(b, a));
                int va = R.val(a), vb = R.val(b);
                ASSERT_EQ(R.val(R.mul(a, b)), std::min(va + vb, w));
                ASSERT_GE(R.val(R.add(a, b)), std::min(va, vb));
            }
        }
    }
}

TEST(Dvr, InverseExactOnRandomUnits) {
    std::mt19937_64 rng(3);
    for (const auto& s : kConfigs) {
        Ring R(s, s.N());
        int done = 0;
        while (done < 1000) {
            Elem a = random_elem(R, rng);
            if (!R.is_unit(a)) continue;
            ASSERT_EQ(R.mul(a, R.inv(a)), R.one());
            ++done;
        }
    }
}

TEST(Dvr, DivPiRoundTrip) {
    std::mt19937_64 rng(4);
    for (const auto& s : kConfigs) {
        Ring R(s, s.N());
        for (int v = 0; v <= s.N(); ++v) {
            Ring Rlow = R.at(s.N() - v);
            for (int t = 0; t < 50; ++t) {
                Elem x = random_elem(R, rng);
                Elem y = R.div_pi(R.mul(R.pi_pow(v), x), v);
                ASSERT_EQ(Rlow.reduce(y), Rlow.reduce(x));
                ASSERT_EQ(R.mul(R.pi_pow(v), y), R.mul(R.pi_pow(v), x));
            }
        }
    }
}
