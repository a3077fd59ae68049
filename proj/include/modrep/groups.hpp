#pragma once

// Finite groups as explicit multiplication tables.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace modrep {

struct GroupTable {
    int n = 1;
    std::vector<std::vector<int>> mul{{0}};
    std::vector<int> inv{0};
    int id = 0;
    std::vector<int> gens;
    std::string name = "C1";

    int order() const { return n; }
    int operator()(int a, int b) const { return mul[a][b]; }

    int element_order(int g) const {
        int k = 1, x = g;
        while (x != id) {
            x = mul[x][g];
            ++k;
        }
        return k;
    }

    /// Elements in BFS order from the identity along left multiplication by
    /// generators, together with (generator, predecessor) so that
    /// g = gens[via] * parent.
    struct Word {
        int element, gen, parent;
    };
    std::vector<Word> bfs_words() const {
        std::vector<Word> out;
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(id);
        seen[id] = 1;
        out.push_back({id, -1, -1});
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int s = 0; s < static_cast<int>(gens.size()); ++s) {
                int y = mul[gens[s]][x];
                if (!seen[y]) {
                    seen[y] = 1;
                    out.push_back({y, s, x});
                    q.push(y);
                }
            }
        }
        return out;
    }

    std::vector<int> closure(const std::vector<int>& gs) const {
        std::vector<char> in(n, 0);
        std::vector<int> elems{id};
        in[id] = 1;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (int s : gs) {
                int y = mul[s][elems[i]];
                if (!in[y]) {
                    in[y] = 1;
                    elems.push_back(y);
                }
            }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    /// Full group-law check for n <= 64, otherwise `samples` random triples.
    void validate(int samples = 100000) const {
        if (static_cast<int>(mul.size()) != n || static_cast<int>(inv.size()) != n)
            throw std::invalid_argument("GroupTable: table size mismatch");
        for (int a = 0; a < n; ++a) {
            if (mul[id][a] != a || mul[a][id] != a) throw std::invalid_argument("GroupTable: bad identity");
            if (mul[a][inv[a]] != id || mul[inv[a]][a] != id) throw std::invalid_argument("GroupTable: bad inverse");
        }
        auto assoc = [&](int a, int b, int c) {
            if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) throw std::invalid_argument("GroupTable: not associative");
        };
        if (n <= 64) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) assoc(a, b, c);
        } else {
            unsigned long long s = 88172645463325252ULL;
            auto next = [&]() {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                return static_cast<int>(s % static_cast<unsigned long long>(n));
            };
            for (int t = 0; t < samples; ++t) assoc(next(), next(), next());
        }
        if (static_cast<int>(closure(gens).size()) != n)
            throw std::invalid_argument("GroupTable: generators do not generate");
    }
};

using GroupPtr = std::shared_ptr<const GroupTable>;

inline GroupPtr group_cyclic(int n) {
    if (n < 1) throw std::invalid_argument("group_cyclic: n must be positive");
    auto G = std::make_shared<GroupTable>();
    G->n = n;
    G->mul.assign(n, std::vector<int>(n));
    G->inv.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) G->mul[a][b] = (a + b) % n;
        G->inv[a] = (n - a) % n;
    }
    G->id = 0;
    if (n > 1) G->gens = {1};
    G->name = "C" + std::to_string(n);
    G->validate();
    return G;
}

/// Direct product; element (a, b) has index a * |B| + b.
inline GroupPtr group_product(const GroupTable& A, const GroupTable& B) {
    auto G = std::make_shared<GroupTable>();
    const int n = A.n * B.n;
    G->n = n;
    G->mul.assign(n, std::vector<int>(n));
    G->inv.resize(n);
    for (int x = 0; x < n; ++x) {
        int a = x / B.n, b = x % B.n;
        G->inv[x] = A.inv[a] * B.n + B.inv[b];
        for (int y = 0; y < n; ++y) {
            int c = y / B.n, d = y % B.n;
            G->mul[x][y] = A.mul[a][c] * B.n + B.mul[b][d];
        }
    }
    G->id = A.id * B.n + B.id;
    for (int g : A.gens) G->gens.push_back(g * B.n + B.id);
    for (int g : B.gens) G->gens.push_back(A.id * B.n + g);
    G->name = A.name + "x" + B.name;
    G->validate();
    return G;
}

/// Closure of a set of permutations (0-based images) under composition.
/// Composition convention: (s*t)(x) = s(t(x)).
inline GroupPtr group_from_perms(std::vector<std::vector<int>> perms, int bound = 10000) {
    int deg = 0;
    for (auto& p : perms) deg = std::max(deg, static_cast<int>(p.size()));
    for (auto& p : perms) {
        for (int x = static_cast<int>(p.size()); x < deg; ++x) p.push_back(x);
        std::vector<int> s = p;
        std::sort(s.begin(), s.end());
        for (int x = 0; x < deg; ++x)
            if (s[x] != x) throw std::invalid_argument("group_from_perms: not a permutation");
    }
    std::vector<int> idp(deg);
    std::iota(idp.begin(), idp.end(), 0);
    std::map<std::vector<int>, int> index{{idp, 0}};
    std::vector<std::vector<int>> elems{idp};
    auto compose = [&](const std::vector<int>& s, const std::vector<int>& t) {
        std::vector<int> r(deg);
        for (int x = 0; x < deg; ++x) r[x] = s[t[x]];
        return r;
    };
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto& s : perms) {
            auto y = compose(s, elems[i]);
            if (!index.count(y)) {
                if (static_cast<int>(elems.size()) >= bound)
                    throw std::length_error("group_from_perms: closure exceeds bound " + std::to_string(bound));
                index[y] = static_cast<int>(elems.size());
                elems.push_back(y);
            }
        }
    auto G = std::make_shared<GroupTable>();
    const int n = static_cast<int>(elems.size());
    G->n = n;
    G->mul.assign(n, std::vector<int>(n));
    G->inv.resize(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            G->mul[a][b] = index.at(compose(elems[a], elems[b]));
            if (G->mul[a][b] == 0) G->inv[a] = b;
        }
    G->id = 0;
    for (auto& s : perms) {
        int g = index.at(s);
        if (g != 0 && std::find(G->gens.begin(), G->gens.end(), g) == G->gens.end()) G->gens.push_back(g);
    }
    G->name = "Perm" + std::to_string(n);
    G->validate();
    return G;
}

/// Subgroup generated by the given elements, relabelled 0..|H|-1.
/// `embedding[i]` is the element of G with label i.
struct Subgroup {
    GroupPtr group;
    std::vector<int> embedding;
};

inline Subgroup subgroup(const GroupTable& G, const std::vector<int>& gens) {
    for (int g : gens)
        if (g < 0 || g >= G.n) throw std::invalid_argument("subgroup: element out of range");
    Subgroup S;
    S.embedding = G.closure(gens);
    const int n = static_cast<int>(S.embedding.size());
    std::vector<int> label(G.n, -1);
    for (int i = 0; i < n; ++i) label[S.embedding[i]] = i;
    auto H = std::make_shared<GroupTable>();
    H->n = n;
    H->mul.assign(n, std::vector<int>(n));
    H->inv.resize(n);
    for (int a = 0; a < n; ++a) {
        H->inv[a] = label[G.inv[S.embedding[a]]];
        for (int b = 0; b < n; ++b) H->mul[a][b] = label[G.mul[S.embedding[a]][S.embedding[b]]];
    }
    H->id = label[G.id];
    for (int g : gens)
        if (g != G.id && std::find(H->gens.begin(), H->gens.end(), label[g]) == H->gens.end())
            H->gens.push_back(label[g]);
    H->name = G.name + "_sub" + std::to_string(n);
    H->validate();
    S.group = H;
    return S;
}

/// Generators of a Sylow p-subgroup (brute force; fine for desk-scale orders).
inline std::vector<int> sylow_generators(const GroupTable& G, int p) {
    int target = 1;
    for (int n = G.n; n % p == 0; n /= p) target *= p;
    std::vector<int> pel;
    for (int g = 0; g < G.n; ++g) {
        int o = G.element_order(g);
        while (o % p == 0) o /= p;
        if (o == 1 && g != G.id) pel.push_back(g);
    }
    // grow greedily by p-elements, backtracking over the first choice
    for (int start : pel) {
        std::vector<int> gens{start};
        auto cur = G.closure(gens);
        bool grown = true;
        while (static_cast<int>(cur.size()) < target && grown) {
            grown = false;
            for (int x : pel) {
                if (std::binary_search(cur.begin(), cur.end(), x)) continue;
                auto cand = gens;
                cand.push_back(x);
                auto c = G.closure(cand);
                int sz = static_cast<int>(c.size());
                bool ppow = true;
                for (int t = sz; t > 1; t /= p)
                    if (t % p) ppow = false;
                if (ppow) {
                    gens = cand;
                    cur = c;
                    grown = true;
                    break;
                }
            }
        }
        if (static_cast<int>(cur.size()) == target) return gens;
    }
    return {};
}

}  // namespace modrep
