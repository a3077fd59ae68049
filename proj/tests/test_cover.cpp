#include <gtest/gtest.h>

#include "modrep/cover.hpp"
#include "modrep/stable.hpp"

using namespace modrep;

namespace {

GroupPtr s3() { return group_from_perms({{1, 2, 0}, {1, 0, 2}}); }
GroupPtr c2xc2() { return group_product(*group_cyclic(2), *group_cyclic(2)); }

bool surjective_mod_pi(const Mat& F) {
    return fp::rank(F.residues(), static_cast<int>(F.ring().p())) == F.rows();
}

}  // namespace

// kG is the sum of its PIMs with multiplicity; grouped by simple head,
// |G| = sum_S dim(P_S) dim(S) / dim End(S) (the End factor is 1 over a splitting field).
TEST(Cover, PimDimensionsSumToGroupOrder) {
    struct Case {
        GroupPtr G;
        std::int64_t p;
        int simples;
    };
    for (auto& c : {Case{s3(), 3, 2}, Case{s3(), 2, 2}, Case{group_cyclic(4), 2, 1}, Case{c2xc2(), 2, 1},
                    Case{group_cyclic(6), 2, 2}}) {
        RingSpec spec = ring_make(c.p, 1, default_m(c.p, 1, *c.G));
        auto C = kg_catalog(spec, c.G);
        ASSERT_EQ(static_cast<int>(C->simples.size()), c.simples) << c.G->name;
        int with_mult = 0;
        for (auto& pim : C->pims) with_mult += pim.lattice.rank();
        EXPECT_EQ(with_mult, c.G->order()) << c.G->name << " p=" << c.p;
        int by_simple = 0;
        for (std::size_t s = 0; s < C->simples.size(); ++s) {
            const int P = C->pims[C->pim_of_simple[s]].lattice.rank(), d = C->simples[s].rank();
            by_simple += P * d / end_algebra(C->simples[s]).dim();
        }
        EXPECT_EQ(by_simple, c.G->order()) << c.G->name << " p=" << c.p;
    }
}

TEST(Cover, PimLatticesAreProjectiveWithThetaWitness) {
    RingSpec spec = ring_make(3, 2, 3);
    auto G = s3();
    auto C = kg_catalog(spec, G);
    for (auto& pim : C->pims) {
        const GModule& P = pim.lattice;
        EXPECT_EQ(trace_map(pim.theta, P, P, P.trust()), Mat::identity(P.ring(), P.rank()));
    }
}

TEST(Cover, CoverIsSurjectiveGMap) {
    RingSpec spec = ring_make(2, 1, 5);
    auto G = group_cyclic(4);
    for (int len = 1; len <= 4; ++len) {
        GModule J = module_jordan(spec, G, len);
        Cover c = projective_cover(J);
        EXPECT_TRUE(intertwines(c.P, J, c.surj, 1));
        EXPECT_TRUE(surjective_mod_pi(c.surj.at(1)));
        EXPECT_EQ(c.P.rank(), 4);  // one PIM for a cyclic 2-group
    }
    GModule O = module_trivial(spec, G, spec.N());
    Cover c = projective_cover(O);
    EXPECT_TRUE(intertwines(c.P, O, c.surj, O.trust()));
}

TEST(Cover, SyzygyRankAndInclusion) {
    auto G = s3();
    RingSpec spec = ring_make(3, 1, default_m(3, 1, *G));
    auto C = kg_catalog(spec, G);
    for (auto& S : C->simples) {
        SyzygyResult s = syzygy_full(S, false);
        EXPECT_EQ(s.full.rank(), s.cover.P.rank());  // torsion input: Omega is a lattice of full rank
        EXPECT_TRUE(s.full.is_lattice());
        EXPECT_TRUE(intertwines(s.full, s.cover.P, s.incl, s.full.trust()));
    }
    GModule O = module_trivial(spec, G, spec.N());
    SyzygyResult s = syzygy_full(O, false);
    EXPECT_EQ(s.full.rank(), s.cover.P.rank() - 1);
}

// Omega of k over O is the kernel of OG -> k (rank p, no projective summand);
// Omega of O is the augmentation ideal (rank p - 1).
TEST(Cover, HellerOfTrivialModuleForCyclicPrime) {
    for (std::int64_t p : {2, 3, 5}) {
        auto G = group_cyclic(static_cast<int>(p));
        RingSpec spec = ring_make(p, 1, default_m(p, 1, *G));
        GModule k = module_trivial(spec, G, 1);
        GModule H = syzygy(k);
        EXPECT_EQ(H.rank(), static_cast<int>(p)) << p;
        GModule Ok = syzygy(module_trivial(spec, G, spec.N()));
        EXPECT_EQ(Ok.rank(), static_cast<int>(p) - 1) << p;
    }
}

TEST(Cover, CosyzygyInvertsSyzygyOnLattices) {
    auto G = c2xc2();
    RingSpec spec = ring_make(2, 2, default_m(2, 2, *G));
    GModule O = module_trivial(spec, G, spec.N());
    GModule OmO = syzygy(O);
    GModule back = cosyzygy(OmO);
    ASSERT_EQ(back.rank(), 1);
    EXPECT_TRUE(is_isomorphic(back, O));
    GModule fwd = syzygy(cosyzygy(O));
    ASSERT_EQ(fwd.rank(), 1);
    EXPECT_TRUE(is_isomorphic(fwd, O));
}

TEST(Cover, LocalSyzygyOfJordanModules) {
    RingSpec spec = ring_make(3, 1, 3);
    auto G = group_cyclic(9);
    for (int len = 1; len < 9; ++len) {
        GModule J = module_jordan(spec, G, len);
        GModule Om = local_syzygy(J);
        EXPECT_EQ(Om.rank(), 9 - len);
        EXPECT_TRUE(is_isomorphic(Om, module_jordan(spec, G, 9 - len)));
        EXPECT_TRUE(is_isomorphic(local_cosyzygy(Om), J));
    }
}

TEST(Cover, PimMultiplicitiesMatchTopOfModule) {
    RingSpec spec = ring_make(3, 1, 3);
    auto G = s3();
    auto C = kg_catalog(spec, G);
    GModule kG = module_regular(spec, G, 1);
    Cover c = projective_cover(kG);
    auto mult = pim_multiplicities(c, *C);
    // each PIM appears dim(S) = 1 times for S3 at p = 3
    for (int m : mult) EXPECT_EQ(m, 1);
    EXPECT_EQ(c.P.rank(), 6);
}
