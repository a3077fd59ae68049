#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "modrep/stable.hpp"

using namespace modrep;

namespace {

std::vector<int> ranks(const std::vector<Summand>& parts) {
    std::vector<int> r;
    for (auto& s : parts) r.push_back(s.module.rank());
    std::sort(r.begin(), r.end());
    return r;
}

Mat random_unimodular(const Ring& R, int n, std::mt19937_64& rng) {
    while (true) {
        Mat A(R, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = R.from_int(static_cast<std::int64_t>(rng() % 97));
        if (is_invertible(A)) return A;
    }
}

GroupPtr s3() { return group_from_perms({{1, 2, 0}, {1, 0, 2}}); }
GroupPtr c2xc2() { return group_product(*group_cyclic(2), *group_cyclic(2)); }

}  // namespace

// Stable End(O) = O / |G| O, so the exponent of the trivial lattice is e nu_p(|G|).
TEST(Stable, TrivialLatticeExponent) {
    struct Case {
        GroupPtr G;
        std::int64_t p;
        int e;
    };
    for (auto& c : {Case{group_cyclic(2), 2, 1}, Case{group_cyclic(4), 2, 2}, Case{group_cyclic(9), 3, 1}, Case{c2xc2(), 2, 2},
                    Case{s3(), 3, 2}, Case{s3(), 2, 1}}) {
        RingSpec spec = ring_make(c.p, c.e, default_m(c.p, c.e, *c.G));
        GModule O = module_trivial(spec, c.G, spec.N());
        EXPECT_EQ(exponent(O), c.e * vp(c.G->order(), c.p)) << c.G->name << " p=" << c.p << " e=" << c.e;
        StableHomData S = stable_hom(O, O);
        EXPECT_EQ(S.dim_k(), 1);
    }
}

TEST(Stable, RegularModuleIsWeaklyInjective) {
    RingSpec spec = ring_make(3, 2, 3);
    auto G = s3();
    EXPECT_TRUE(is_weakly_injective(module_regular(spec, G, spec.N())));
    EXPECT_TRUE(is_weakly_injective(module_regular(spec, G, 1)));
    EXPECT_FALSE(is_weakly_injective(module_trivial(spec, G, spec.N())));
    EXPECT_FALSE(is_weakly_injective(module_trivial(spec, G, 1)));
    EXPECT_TRUE(stable_hom(module_regular(spec, G, spec.N()), module_trivial(spec, G, spec.N())).is_zero());
}

// Block decomposition of kG over F_p: ranks are the PIM dimensions with multiplicity.
TEST(Stable, GroupAlgebraSplitsIntoPims) {
    struct Case {
        GroupPtr G;
        std::int64_t p;
        std::vector<int> ranks;
    };
    for (auto& c : {Case{group_cyclic(4), 2, {4}}, Case{c2xc2(), 2, {4}}, Case{group_cyclic(3), 2, {1, 2}},
                    Case{s3(), 3, {3, 3}}, Case{s3(), 2, {2, 2, 2}}, Case{group_cyclic(6), 3, {3, 3}}}) {
        RingSpec spec = ring_make(c.p, 1, 3);
        GModule kG = module_regular(spec, c.G, 1);
        EXPECT_EQ(ranks(decompose(kG)), c.ranks) << c.G->name << " p=" << c.p;
    }
}

TEST(Stable, DecompositionReassembles) {
    RingSpec spec = ring_make(2, 1, 5);
    auto G = c2xc2();
    GModule M = direct_sum(module_trivial(spec, G, spec.N()), module_regular(spec, G, spec.N()));
    auto parts = decompose(M);
    ASSERT_EQ(ranks(parts), (std::vector<int>{1, 4}));
    GModule back = direct_sum(summand_modules(parts), M);
    EXPECT_TRUE(is_isomorphic(back, M));
    for (auto& s : parts) {
        EXPECT_TRUE(intertwines(s.module, M, s.incl, M.trust()));
        EXPECT_TRUE(intertwines(M, s.module, s.proj, M.trust()));
        EXPECT_EQ((s.proj * s.incl).at(M.trust()), Mat::identity(M.ring(), s.module.rank()));
    }
}

TEST(Stable, IsomorphismWitnessUnderBaseChange) {
    std::mt19937_64 rng(11);
    RingSpec spec = ring_make(3, 1, 4);
    auto G = group_cyclic(3);
    GModule M = direct_sum(module_trivial(spec, G, spec.N()), module_regular(spec, G, spec.N()));
    for (int t = 0; t < 5; ++t) {
        Mat T = random_unimodular(M.ring(), M.rank(), rng);
        GModule N = conjugate(M, T, inverse(T));
        IsoResult iso = is_isomorphic(M, N, 1 + t);
        ASSERT_TRUE(iso);
        ASSERT_TRUE(iso.witness.has_value());
        EXPECT_TRUE(intertwines(M, N, *iso.witness, M.trust()));
        EXPECT_TRUE(is_invertible(*iso.witness));
    }
    EXPECT_FALSE(is_isomorphic(M, direct_sum(module_trivial(spec, G, spec.N()), direct_sum(module_trivial(spec, G, spec.N()),
                                                                                         module_trivial(spec, G, spec.N())))));
}

TEST(Stable, JordanModulesIndecomposableAndDistinct) {
    RingSpec spec = ring_make(2, 1, 4);
    auto G = group_cyclic(4);
    std::vector<GModule> J;
    for (int l = 1; l <= 4; ++l) J.push_back(module_jordan(spec, G, l));
    for (int a = 0; a < 4; ++a) {
        EXPECT_TRUE(is_indecomposable(J[a]));
        EXPECT_EQ(is_weakly_injective(J[a]), a == 3);
        for (int b = 0; b < 4; ++b)
            if (J[a].rank() == J[b].rank()) EXPECT_EQ(static_cast<bool>(is_isomorphic(J[a], J[b])), a == b);
    }
    // stable End of the length-l module for C_4 has dimension min(l, 4 - l)
    for (int l = 1; l <= 3; ++l) EXPECT_EQ(stable_hom(J[l - 1], J[l - 1]).dim_k(), std::min(l, 4 - l));
}

TEST(Stable, StableCoordinatesVanishOnProjectiveMaps) {
    RingSpec spec = ring_make(2, 1, 5);
    auto G = group_cyclic(4);
    GModule O = module_trivial(spec, G, spec.N());
    StableHomData S = stable_hom(O, O);
    Ring R(spec, S.hom.w);
    Mat four = Mat::scalar(R, 1, R.from_int(4));
    EXPECT_TRUE(S.stably_zero(four));
    EXPECT_FALSE(S.stably_zero(Mat::scalar(R, 1, R.from_int(2))));
    auto c = S.stable_coords(Mat::scalar(R, 1, R.from_int(6)));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(Ring(spec, 2).val(Ring(spec, 2).reduce(c[0])), 1);
}

TEST(Stable, StripProjectivesKeepsNonProjectivePart) {
    RingSpec spec = ring_make(3, 1, 4);
    auto G = s3();
    GModule M = direct_sum(module_regular(spec, G, spec.N()), module_trivial(spec, G, spec.N()));
    Stripped s = strip_projectives(M);
    EXPECT_EQ(s.module.rank(), 1);
    EXPECT_EQ(s.projective_rank, 6);
}

TEST(Stable, DecompositionIsSeedIndependentUpToIso) {
    RingSpec spec = ring_make(2, 1, 3);
    auto G = c2xc2();
    GModule kG = module_regular(spec, G, 1);
    GModule M = direct_sum(kG, module_trivial(spec, G, 1));
    auto a = summand_modules(decompose(M, 1)), b = summand_modules(decompose(M, 99));
    EXPECT_TRUE(same_summands(a, b));
}

// Restriction of the regular module to H is [G:H] copies of the regular module of H.
TEST(Stable, RestrictedRegularModule) {
    RingSpec spec = ring_make(2, 1, 5);
    auto G = s3();
    for (int gen : G->gens) {
        Restriction r = restrict_to(module_regular(spec, G, spec.N()), {gen});
        const GroupPtr& H = r.subgroup.group;
        GModule reg = module_regular(spec, H, spec.N());
        std::vector<GModule> copies(G->n / H->n, reg);
        EXPECT_TRUE(is_isomorphic(r.module, direct_sum(copies, reg)));
    }
    GModule O = module_trivial(spec, G, spec.N());
    EXPECT_EQ(restrict(O, G->gens).rank(), 1);
}
