#include <gtest/gtest.h>

#include <algorithm>

#include "modrep/groups.hpp"

using namespace modrep;

namespace {

std::vector<int> order_multiset(const GroupTable& G) {
    std::vector<int> o;
    for (int g = 0; g < G.n; ++g) o.push_back(G.element_order(g));
    std::sort(o.begin(), o.end());
    return o;
}

}  // namespace

TEST(Groups, Cyclic) {
    auto C2 = group_cyclic(2), C3 = group_cyclic(3), C4 = group_cyclic(4);
    EXPECT_EQ(C2->order(), 2);
    EXPECT_EQ(C3->order(), 3);
    EXPECT_EQ(C4->gens.size(), 1u);
    EXPECT_EQ(C4->element_order(C4->gens[0]), 4);
    EXPECT_EQ(group_cyclic(1)->order(), 1);
    EXPECT_THROW(group_cyclic(0), std::invalid_argument);
}

TEST(Groups, Products) {
    auto V = group_product(*group_cyclic(2), *group_cyclic(2));
    EXPECT_EQ(V->order(), 4);
    EXPECT_EQ(V->gens.size(), 2u);
    EXPECT_EQ(order_multiset(*V), (std::vector<int>{1, 2, 2, 2}));
    auto G = group_cyclic(5);
    auto T = group_product(*group_cyclic(1), *G);
    EXPECT_EQ(order_multiset(*T), order_multiset(*G));
    auto C6 = group_product(*group_cyclic(2), *group_cyclic(3));
    EXPECT_EQ(order_multiset(*C6), order_multiset(*group_cyclic(6)));
}

TEST(Groups, FromPerms) {
    auto S3 = group_from_perms({{1, 0, 2}, {1, 2, 0}});
    EXPECT_EQ(S3->order(), 6);
    EXPECT_EQ(order_multiset(*S3), (std::vector<int>{1, 2, 2, 2, 3, 3}));
    EXPECT_EQ(group_from_perms({})->order(), 1);
    auto C5 = group_from_perms({{1, 2, 3, 4, 0}});
    EXPECT_EQ(order_multiset(*C5), order_multiset(*group_cyclic(5)));
    EXPECT_THROW(group_from_perms({{1, 2, 3, 4, 5, 6, 7, 0}, {1, 0}}, 100), std::length_error);
    EXPECT_THROW(group_from_perms({{0, 0}}), std::invalid_argument);
}

TEST(Groups, SubgroupClosureIsValid) {
    auto S3 = group_from_perms({{1, 0, 2}, {1, 2, 0}});
    for (int g = 0; g < S3->n; ++g) {
        Subgroup H = subgroup(*S3, {g});
        EXPECT_EQ(H.group->order(), S3->element_order(g));
        EXPECT_NO_THROW(H.group->validate());
    }
    Subgroup full = subgroup(*S3, S3->gens);
    EXPECT_EQ(full.group->order(), 6);
}

TEST(Groups, BfsWordsReachEverything) {
    auto G = group_product(*group_cyclic(3), *group_cyclic(3));
    auto w = G->bfs_words();
    ASSERT_EQ(static_cast<int>(w.size()), G->n);
    for (const auto& x : w)
        if (x.gen >= 0) EXPECT_EQ(G->mul[G->gens[x.gen]][x.parent], x.element);
}

TEST(Groups, Sylow) {
    auto S3 = group_from_perms({{1, 0, 2}, {1, 2, 0}});
    EXPECT_EQ(S3->closure(sylow_generators(*S3, 2)).size(), 2u);
    EXPECT_EQ(S3->closure(sylow_generators(*S3, 3)).size(), 3u);
    auto C12 = group_cyclic(12);
    EXPECT_EQ(C12->closure(sylow_generators(*C12, 2)).size(), 4u);
}
