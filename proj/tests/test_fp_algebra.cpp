#include <gtest/gtest.h>

#include <random>

#include "modrep/fp_algebra.hpp"
#include "modrep/groups.hpp"

using namespace modrep;

namespace {

FpAlgebra group_algebra(const GroupTable& G, int p) {
    FpAlgebra A;
    A.p = p;
    A.dim = G.n;
    A.c.assign(std::size_t(G.n) * G.n * G.n, 0);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) A.at(a, b, G.mul[a][b]) = 1;
    A.one = A.unit(G.id);
    return A;
}

// Upper-triangular n x n matrices over F_p.
FpAlgebra upper_triangular(int n, int p) {
    std::vector<fp::Matrix> span;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            fp::Matrix E(n, fp::Vec(n, 0));
            E[i][j] = 1;
            span.push_back(E);
        }
    return algebra_from_matrices(span, p);
}

FpAlgebra full_matrices(int n, int p) {
    std::vector<fp::Matrix> span;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            fp::Matrix E(n, fp::Vec(n, 0));
            E[i][j] = 1;
            span.push_back(E);
        }
    return algebra_from_matrices(span, p);
}

bool nilpotent(const FpAlgebra& A, const fp::Vec& x) { return FpAlgebra::is_zero(A.pow(x, A.dim + 1)); }

// Brute force radical: x in J iff x*y is nilpotent for every y.  Returns the
// number of such elements.
long long brute_radical_size(const FpAlgebra& A) {
    long long total = 1;
    for (int i = 0; i < A.dim; ++i) total *= A.p;
    auto elem = [&](long long idx) {
        fp::Vec v(A.dim);
        for (int i = 0; i < A.dim; ++i) {
            v[i] = static_cast<int>(idx % A.p);
            idx /= A.p;
        }
        return v;
    };
    long long count = 0;
    for (long long i = 0; i < total; ++i) {
        fp::Vec x = elem(i);
        bool ok = true;
        for (long long j = 0; j < total && ok; ++j) ok = nilpotent(A, A.mul(x, elem(j)));
        if (ok) ++count;
    }
    return count;
}

long long pow_ll(int p, int k) {
    long long r = 1;
    while (k-- > 0) r *= p;
    return r;
}

}  // namespace

TEST(FpAlgebra, StructureConstantsConsistent) {
    EXPECT_TRUE(group_algebra(*group_cyclic(4), 2).check());
    EXPECT_TRUE(upper_triangular(3, 3).check());
}

TEST(FpAlgebra, RadicalOfGroupAlgebras) {
    // p-groups: J = augmentation ideal, codim 1
    EXPECT_EQ(radical_basis(group_algebra(*group_cyclic(3), 3)).size(), 2u);
    EXPECT_EQ(radical_basis(group_algebra(*group_cyclic(4), 2)).size(), 3u);
    EXPECT_EQ(radical_basis(group_algebra(*group_product(*group_cyclic(2), *group_cyclic(2)), 2)).size(), 3u);
    // semisimple: p does not divide |G|
    EXPECT_EQ(radical_basis(group_algebra(*group_cyclic(3), 2)).size(), 0u);
    // S3 at p = 2: kS3 = M_2(k) x kC2, J has dim 1; at p = 3: dim 4
    auto S3 = group_from_perms({{1, 0, 2}, {1, 2, 0}});
    EXPECT_EQ(radical_basis(group_algebra(*S3, 2)).size(), 1u);
    EXPECT_EQ(radical_basis(group_algebra(*S3, 3)).size(), 4u);
}

TEST(FpAlgebra, RadicalMatchesBruteForce) {
    std::vector<FpAlgebra> algs{group_algebra(*group_cyclic(2), 2),  group_algebra(*group_cyclic(3), 3),
                                group_algebra(*group_cyclic(4), 2),  group_algebra(*group_cyclic(3), 2),
                                upper_triangular(2, 2),              upper_triangular(2, 3),
                                upper_triangular(3, 2),              full_matrices(2, 2),
                                group_algebra(*group_cyclic(5), 2),  group_algebra(*group_cyclic(6), 2)};
    for (const auto& A : algs) {
        auto J = radical_basis(A);
        EXPECT_EQ(pow_ll(A.p, static_cast<int>(J.size())), brute_radical_size(A)) << "dim " << A.dim;
        for (auto& x : J) EXPECT_TRUE(nilpotent(A, x));
    }
}

TEST(FpAlgebra, LocalityAndIdempotents) {
    std::mt19937_64 rng(5);
    EXPECT_EQ(find_idempotent(group_algebra(*group_cyclic(9), 3), rng).verdict, Locality::Local);
    auto s = find_idempotent(group_algebra(*group_cyclic(6), 2), rng);
    ASSERT_EQ(s.verdict, Locality::Split);
    auto A = group_algebra(*group_cyclic(6), 2);
    EXPECT_EQ(A.mul(s.idempotent, s.idempotent), s.idempotent);
    // F_4 = F_2[C3]/(1 + g + g^2) piece: kC3 over F_2 = F_2 x F_4; split found
    auto B = group_algebra(*group_cyclic(3), 2);
    EXPECT_EQ(find_idempotent(B, rng).verdict, Locality::Split);
    auto M2 = full_matrices(2, 3);
    auto t = find_idempotent(M2, rng);
    ASSERT_EQ(t.verdict, Locality::Split);
    EXPECT_EQ(M2.mul(t.idempotent, t.idempotent), t.idempotent);
}

TEST(FpAlgebra, FieldExtensionIsLocal) {
    // F_4 inside M_2(F_2) spanned by I and the companion matrix of x^2+x+1
    fp::Matrix I{{1, 0}, {0, 1}}, C{{0, 1}, {1, 1}};
    auto F4 = algebra_from_matrices({I, C}, 2);
    std::mt19937_64 rng(6);
    EXPECT_EQ(find_idempotent(F4, rng).verdict, Locality::Local);
    EXPECT_EQ(radical_basis(F4).size(), 0u);
}

TEST(FpAlgebra, PrimitiveIdempotentsSumToOne) {
    std::mt19937_64 rng(7);
    auto S3 = group_from_perms({{1, 0, 2}, {1, 2, 0}});
    for (int p : {2, 3}) {
        auto A = group_algebra(*S3, p);
        auto es = primitive_idempotents(A, rng);
        fp::Vec sum = A.zero();
        for (auto& e : es) {
            EXPECT_EQ(A.mul(e, e), e);
            sum = A.add(sum, e);
        }
        EXPECT_EQ(sum, A.one);
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = 0; j < es.size(); ++j)
                if (i != j) EXPECT_TRUE(FpAlgebra::is_zero(A.mul(es[i], es[j])));
        // p = 2: M_2(k) x kC2 has 3 primitive idempotents; p = 3: two (trivial, sign)
        EXPECT_EQ(es.size(), p == 2 ? 3u : 2u);
    }
}

TEST(FpAlgebra, FittingIdempotent) {
    auto A = group_algebra(*group_cyclic(6), 2);
    // x = 1 + g^3 is nilpotent-ish on the C2 part
    fp::Vec x = A.zero();
    x[0] = 1;
    x[3] = 1;
    fp::Vec e = fitting_idempotent(A, x);
    EXPECT_EQ(A.mul(e, e), e);
    EXPECT_TRUE(FpAlgebra::is_zero(e));  // 1 + g^3 is nilpotent in char 2
    EXPECT_EQ(fitting_idempotent(A, A.one), A.one);
}
