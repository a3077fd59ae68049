#pragma once

// Projective indecomposables, simple modules, projective covers, syzygies and
// cosyzygies.

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "modrep/fp_algebra.hpp"
#include "modrep/module.hpp"
#include "modrep/stable.hpp"

namespace modrep {

// ---- F_p-level helpers for kG-modules ----


/// rho(x) for x in kG (coordinates indexed by group elements), mod pi.
inline fp::Matrix act_k(const GModule& X, const fp::Vec& x) {
    const int r = X.rank(), p = static_cast<int>(X.spec().p);
    fp::Matrix out(r, fp::Vec(r, 0));
    for (int g = 0; g < X.group()->n; ++g) {
        if (!x[g]) continue;
        auto m = X.act(g).residues();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) out[i][j] = fp::norm(out[i][j] + 1LL * x[g] * m[i][j], p);
    }
    return out;
}

inline fp::Matrix columns_as_rows(const fp::Matrix& A) { return fp::transpose(A, A.empty() ? 0 : static_cast<int>(A[0].size())); }

/// The k-module on the quotient X / W, W a G-stable subspace (row basis).
inline GModule kmodule_quotient(const GModule& X, const fp::Matrix& W) {
    const int r = X.rank(), p = static_cast<int>(X.spec().p);
    fp::Matrix full = fp::row_basis(W, p);
    const int wd = static_cast<int>(full.size());
    fp::Matrix comp;
    for (int i = 0; i < r; ++i) {
        fp::Matrix t = full;
        fp::Vec u(r, 0);
        u[i] = 1;
        t.push_back(u);
        if (fp::rank(t, p) > static_cast<int>(full.size())) {
            full.push_back(u);
            comp.push_back(u);
        }
    }
    const int d = r - wd;
    fp::Matrix FT = fp::transpose(full, r);
    Ring R(X.spec(), 1);
    std::vector<Mat> rho;
    for (std::size_t s = 0; s < X.rho().size(); ++s) {
        auto g = X.rho()[s].residues();
        Mat m(R, d, d);
        for (int j = 0; j < d; ++j) {
            fp::Vec v(r, 0);
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < r; ++k) v[i] = fp::norm(v[i] + 1LL * g[i][k] * comp[j][k], p);
            auto c = fp::solve(FT, v, r, p);
            if (!c) throw std::logic_error("kmodule_quotient: basis incomplete");
            for (int i = 0; i < d; ++i) m(i, j) = R.from_int((*c)[wd + i]);
        }
        rho.push_back(m);
    }
    return GModule::with_rank(X.spec(), X.group(), 1, 1, d, rho);
}

/// The k-module on a G-stable subspace W (row basis) of X.
inline GModule kmodule_sub(const GModule& X, const fp::Matrix& W) {
    const int r = X.rank(), p = static_cast<int>(X.spec().p);
    fp::Matrix B = fp::row_basis(W, p);
    const int d = static_cast<int>(B.size());
    fp::Matrix BT = fp::transpose(B, r);
    Ring R(X.spec(), 1);
    std::vector<Mat> rho;
    for (std::size_t s = 0; s < X.rho().size(); ++s) {
        auto g = X.rho()[s].residues();
        Mat m(R, d, d);
        for (int j = 0; j < d; ++j) {
            fp::Vec v(r, 0);
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < r; ++k) v[i] = fp::norm(v[i] + 1LL * g[i][k] * B[j][k], p);
            auto c = fp::solve(BT, v, d, p);
            if (!c) throw std::invalid_argument("kmodule_sub: subspace not G-stable");
            for (int i = 0; i < d; ++i) m(i, j) = R.from_int((*c)[i]);
        }
        rho.push_back(m);
    }
    return GModule::with_rank(X.spec(), X.group(), 1, 1, d, rho);
}

// ---- catalog of projective indecomposables and simples ----

struct PimData {
    fp::Vec idem_k;             // primitive idempotent of kG
    std::vector<Elem> idem_O;   // its lift to O_N G
    GModule lattice;            // O_N G * idempotent
    Mat embed;                  // |G| x rank: basis of the lattice inside O_N G
    Mat theta;                  // rank x rank, Tr_G(theta) = Id (relative projectivity)
    int simple = -1;            // index into KGCatalog::simples
};

struct KGCatalog {
    RingSpec spec;
    GroupPtr group;
    FpAlgebra kG;
    fp::Matrix radical;
    std::vector<PimData> pims;
    std::vector<GModule> simples;  // b = 1
    std::vector<int> pim_of_simple;

    /// x in J(kG) acting on X mod pi: the subspace J X.
    fp::Matrix radical_image(const GModule& X) const {
        fp::Matrix W;
        for (const auto& j : radical) {
            auto m = act_k(X, j);
            auto rows = columns_as_rows(m);
            W.insert(W.end(), rows.begin(), rows.end());
        }
        return fp::row_basis(W, kG.p);
    }
};

inline FpAlgebra group_algebra_fp(const GroupTable& G, int p) {
    FpAlgebra A;
    A.p = p;
    A.dim = G.n;
    A.c.assign(std::size_t(G.n) * G.n * G.n, 0);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) A.at(a, b, G.mul[a][b]) = 1;
    A.one = A.unit(G.id);
    return A;
}

namespace detail {

inline std::vector<Elem> group_algebra_mul(const GroupTable& G, const Ring& R, const std::vector<Elem>& a,
                                           const std::vector<Elem>& b) {
    std::vector<Elem> c(G.n, R.zero());
    for (int g = 0; g < G.n; ++g) {
        if (R.is_zero(a[g])) continue;
        for (int h = 0; h < G.n; ++h)
            if (!R.is_zero(b[h])) c[G.mul[g][h]] = R.add(c[G.mul[g][h]], R.mul(a[g], b[h]));
    }
    return c;
}

inline std::vector<Elem> lift_group_idempotent(const GroupTable& G, const Ring& R, const fp::Vec& e) {
    std::vector<Elem> x(G.n);
    for (int g = 0; g < G.n; ++g) x[g] = R.from_int(e[g]);
    for (int it = 0; it < 64; ++it) {
        auto x2 = group_algebra_mul(G, R, x, x);
        if (x2 == x) return x;
        auto x3 = group_algebra_mul(G, R, x2, x);
        for (int g = 0; g < G.n; ++g) x[g] = R.sub(R.mul(R.from_int(3), x2[g]), R.mul(R.from_int(2), x3[g]));
    }
    throw std::logic_error("lift_group_idempotent: no convergence");
}

inline std::shared_ptr<const KGCatalog> build_catalog(const RingSpec& spec, const GroupPtr& G) {
    auto C = std::make_shared<KGCatalog>();
    C->spec = spec;
    C->group = G;
    const int p = static_cast<int>(spec.p);
    C->kG = group_algebra_fp(*G, p);
    C->radical = radical_basis(C->kG);
    std::mt19937_64 rng(kDefaultSeed);
    auto idems = primitive_idempotents(C->kG, rng);
    Ring RN(spec, spec.N());
    GModule reg = module_regular(spec, G, spec.N());
    for (auto& e : idems) {
        PimData P;
        P.idem_k = e;
        P.idem_O = lift_group_idempotent(*G, RN, e);
        // right multiplication by the idempotent: e_h -> sum_g e_g e_{hg}
        Mat E(RN, G->n, G->n);
        for (int h = 0; h < G->n; ++h)
            for (int g = 0; g < G->n; ++g) E(G->mul[h][g], h) = RN.add(E(G->mul[h][g], h), P.idem_O[g]);
        IdempotentSplit sp = split_idempotent(E);
        P.embed = sp.T.col_block(0, sp.k);
        Mat L = sp.Tinv.row_block(0, sp.k);
        P.lattice = submodule_on(reg, P.embed, L, spec.N());
        // on OG, Tr_G(E_{1,1}) = Id; compress through the idempotent split
        P.theta = L.col_block(G->id, 1) * P.embed.row_block(G->id, 1);
        C->pims.push_back(std::move(P));
    }
    for (auto& P : C->pims) {
        GModule Pk = reduce(P.lattice, 1);
        GModule S = kmodule_quotient(Pk, C->radical_image(Pk));
        int idx = -1;
        for (std::size_t i = 0; i < C->simples.size(); ++i)
            if (C->simples[i].rank() == S.rank() && is_isomorphic(S, C->simples[i])) idx = static_cast<int>(i);
        if (idx < 0) {
            idx = static_cast<int>(C->simples.size());
            C->simples.push_back(S);
            C->pim_of_simple.push_back(static_cast<int>(&P - &C->pims[0]));
        }
        P.simple = idx;
    }
    return C;
}

}  // namespace detail

/// Catalog for (spec, group), computed once and shared.
inline std::shared_ptr<const KGCatalog> kg_catalog(const RingSpec& spec, const GroupPtr& G) {
    static std::mutex mu;
    static std::map<std::tuple<const GroupTable*, std::int64_t, int, int>, std::shared_ptr<const KGCatalog>> cache;
    auto key = std::make_tuple(G.get(), spec.p, spec.e, spec.m);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto C = detail::build_catalog(spec, G);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, C);
    return it->second;
}

/// Projective indecomposable cover of a simple module, over O_b.
inline GModule pim_module(const KGCatalog& C, int pim, int b) { return reduce(C.pims[pim].lattice, b); }

// ---- projective cover ----

struct Cover {
    GModule P;
    Mat surj;                   // X.rank x P.rank, a G-map P -> X
    std::vector<int> pim_index; // summands of P
};

inline Cover projective_cover(const GModule& X) {
    auto C = kg_catalog(X.spec(), X.group());
    const GroupTable& G = *X.group();
    const int r = X.rank(), p = static_cast<int>(X.spec().p), t = X.trust();
    Ring R(X.spec(), t);
    Cover out;
    fp::Matrix W = C->radical_image(X);
    std::vector<std::pair<int, int>> gens;  // (pim, column)
    for (std::size_t i = 0; i < C->pims.size() && static_cast<int>(W.size()) < r; ++i) {
        auto E = act_k(X, C->pims[i].idem_k);
        for (int c = 0; c < r && static_cast<int>(W.size()) < r; ++c) {
            fp::Vec v(r);
            for (int a = 0; a < r; ++a) v[a] = E[a][c];
            fp::Matrix test = W;
            test.push_back(v);
            if (fp::rank(test, p) == static_cast<int>(W.size())) continue;
            gens.push_back({static_cast<int>(i), c});
            // W += kG v
            for (int g = 0; g < G.n; ++g) {
                auto m = X.act(g).residues();
                fp::Vec gv(r, 0);
                for (int a = 0; a < r; ++a)
                    for (int k = 0; k < r; ++k) gv[a] = fp::norm(gv[a] + 1LL * m[a][k] * v[k], p);
                W.push_back(gv);
            }
            W = fp::row_basis(W, p);
        }
    }
    if (static_cast<int>(W.size()) < r) throw std::logic_error("projective_cover: head not exhausted");
    std::vector<GModule> parts;
    Mat surj(R, r, 0);
    for (auto [i, c] : gens) {
        const PimData& P = C->pims[i];
        // v = rho(e) u with u the c-th unit vector; the basis column b of the
        // PIM (coordinates in OG) maps to sum_g b_g rho(g) v
        Mat rhoE(R, r, r);
        for (int g = 0; g < G.n; ++g) rhoE = rhoE + X.act(g).at(t).scaled(R.reduce(P.idem_O[g]));
        Mat v = rhoE.col_block(c, 1);
        const int k = P.lattice.rank();
        Mat f(R, r, k);
        for (int g = 0; g < G.n; ++g) {
            Mat gv = X.act(g).at(t) * v;
            for (int col = 0; col < k; ++col) {
                Elem bg = R.reduce(P.embed(g, col));
                if (R.is_zero(bg)) continue;
                for (int a = 0; a < r; ++a) f(a, col) = R.add(f(a, col), R.mul(bg, gv(a, 0)));
            }
        }
        GModule Pb = X.b() == P.lattice.b() ? P.lattice : reduce(P.lattice, X.b());
        if (Pb.trust() > t) Pb = with_trust(Pb, t);
        parts.push_back(Pb);
        out.pim_index.push_back(i);
        surj = hstack(surj, f);
    }
    out.P = direct_sum(parts, GModule::with_rank(X.spec(), X.group(), X.b(), t, 0, {}));
    out.surj = surj;
    if (fp::rank(surj.residues(), p) != r) throw std::logic_error("projective_cover: map not surjective");
    return out;
}

/// theta with sum_g rho_P(g) theta rho_P(g)^{-1} = Id for the cover module.
inline Mat projectivity_witness(const Cover& c) {
    auto C = kg_catalog(c.P.spec(), c.P.group());
    Ring R = c.P.ring();
    Mat theta(R, 0, 0);
    for (int i : c.pim_index) theta = block_diag(theta, C->pims[i].theta.at(R.w()));
    return theta;
}

/// Projective modules up to isomorphism are sums of PIMs; this returns the
/// PIM multiplicities of a cover.
inline std::vector<int> pim_multiplicities(const Cover& c, const KGCatalog& C) {
    std::vector<int> m(C.simples.size(), 0);
    for (int i : c.pim_index) ++m[C.pims[i].simple];
    return m;
}

// ---- syzygies ----

/// Kernel of a surjection F: O_w^n -> O_w^r (r <= n) between free modules:
/// columns K (n x (n-r)) and a left inverse L with L K = I.
struct FreeKernel {
    Mat K, L;
};

inline FreeKernel free_kernel(const Mat& F) {
    const int r = F.rows(), n = F.cols();
    SmithForm S = smith(F);
    for (int i = 0; i < r; ++i)
        if (S.d[i] != 0) throw std::logic_error("free_kernel: map not surjective");
    return {S.V.col_block(r, n - r), S.Vinv.row_block(r, n - r)};
}

struct SyzygyResult {
    Cover cover;
    GModule full;   // kernel of the cover, before projective summands are removed
    Mat incl;       // P.rank x full.rank, G-map full -> P
    Stripped stripped;
    bool had_projective() const { return stripped.projective_rank > 0; }
    const GModule& module() const { return stripped.module; }
};

/// Omega over O: lattices stay at their trust; for a torsion module over O_b
/// the kernel of the O_N G-projective cover is a lattice certified modulo
/// pi^{N - b} (the division by pi^b below).
inline SyzygyResult syzygy_full(const GModule& X, bool strip = true, std::uint64_t seed = kDefaultSeed) {
    SyzygyResult out;
    const int N = X.spec().N();
    if (X.is_lattice()) {
        out.cover = projective_cover(X);
        FreeKernel k = free_kernel(out.cover.surj);
        out.full = submodule_on(out.cover.P, k.K, k.L, X.trust());
        out.incl = k.K;
    } else {
        const int b = X.b();
        if (X.trust() != b) throw precision_error("syzygy: torsion module not certified to its own exponent");
        const int trust = N - b;
        if (trust < 1) throw precision_error("syzygy: no precision left for the Heller lattice; raise m");
        GModule Xw = X;
        Cover c = projective_cover(Xw);
        const int r = X.rank(), n = c.P.rank();
        SmithForm S = smith(c.surj);
        for (int i = 0; i < r; ++i)
            if (S.d[i] != 0) throw std::logic_error("syzygy: cover not surjective");
        Ring RN(X.spec(), N);
        Mat Vt = S.V.at(N);
        Mat Vinv = inverse(Vt);
        // lattice cover at full precision
        std::vector<GModule> parts;
        for (int i : c.pim_index) parts.push_back(kg_catalog(X.spec(), X.group())->pims[i].lattice);
        GModule PN = direct_sum(parts, GModule::with_rank(X.spec(), X.group(), N, N, 0, {}));
        Ring Rt(X.spec(), trust);
        std::vector<Mat> rho;
        for (const auto& g : PN.rho()) {
            Mat Cg = Vinv * g * Vt;
            Mat m(Rt, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Elem x = Cg(i, j);
                    bool top_i = i < r, top_j = j < r;
                    if (top_i && !top_j) {
                        if (RN.val(x) < b) throw std::logic_error("syzygy: kernel not G-stable");
                        x = RN.div_pi(x, b);
                    } else if (!top_i && top_j) {
                        x = RN.mul(RN.pi_pow(b), x);
                    }
                    m(i, j) = Rt.reduce(x);
                }
            rho.push_back(m);
        }
        out.full = GModule::with_rank(X.spec(), X.group(), N, trust, n, rho);
        Mat D = Mat::identity(RN, n);
        for (int i = 0; i < r; ++i) D(i, i) = RN.pi_pow(b);
        out.incl = (Vt * D).at(trust);
        c.P = with_trust(PN, trust);
        out.cover = c;
    }
    if (out.full.is_lattice()) require_maranda(out.full, "syzygy");
    if (strip) {
        out.stripped = strip_projectives(out.full, seed);
    } else {
        Ring R = out.full.ring();
        out.stripped = {out.full, Mat::identity(R, out.full.rank()), Mat::identity(R, out.full.rank()), 0};
    }
    return out;
}

inline GModule syzygy(const GModule& X, std::uint64_t seed = kDefaultSeed) { return syzygy_full(X, true, seed).module(); }

/// Omega over O_b for a module over O_b: kernel of the O_bG-projective cover.
inline SyzygyResult local_syzygy_full(const GModule& X, bool strip = true, std::uint64_t seed = kDefaultSeed) {
    SyzygyResult out;
    out.cover = projective_cover(X);
    FreeKernel k = free_kernel(out.cover.surj);
    out.full = submodule_on(out.cover.P, k.K, k.L, X.trust());
    out.incl = k.K;
    if (strip) {
        out.stripped = strip_projectives(out.full, seed);
    } else {
        Ring R = out.full.ring();
        out.stripped = {out.full, Mat::identity(R, out.full.rank()), Mat::identity(R, out.full.rank()), 0};
    }
    return out;
}

inline GModule local_syzygy(const GModule& X, std::uint64_t seed = kDefaultSeed) {
    return local_syzygy_full(X, true, seed).module();
}

/// Omega^{-1} as the dual of Omega of the dual, with the hull sequence
/// 0 -> M -j-> I -q-> Omega^{-1} M -> 0.
struct CosyzygyResult {
    GModule full;
    GModule hull;
    Mat j;  // I.rank x M.rank
    Mat q;  // full.rank x I.rank
    Stripped stripped;
    const GModule& module() const { return stripped.module; }
};

inline CosyzygyResult cosyzygy_from(const SyzygyResult& s, std::uint64_t seed, bool strip) {
    CosyzygyResult out;
    out.full = dual(s.full);
    out.hull = dual(s.cover.P);
    const int w = out.full.trust();
    out.j = s.cover.surj.transpose().at(std::min(w, s.cover.surj.ring().w()));
    out.q = s.incl.transpose().at(w);
    if (strip) {
        if (out.full.is_lattice()) require_maranda(out.full, "cosyzygy");
        out.stripped = strip_projectives(out.full, seed);
    } else {
        Ring R = out.full.ring();
        out.stripped = {out.full, Mat::identity(R, out.full.rank()), Mat::identity(R, out.full.rank()), 0};
    }
    return out;
}

inline CosyzygyResult cosyzygy_full(const GModule& M, bool strip = true, std::uint64_t seed = kDefaultSeed) {
    if (!M.is_lattice()) throw std::invalid_argument("cosyzygy: lattice required (use local_cosyzygy for torsion)");
    return cosyzygy_from(syzygy_full(dual(M), false, seed), seed, strip);
}

inline GModule cosyzygy(const GModule& M, std::uint64_t seed = kDefaultSeed) { return cosyzygy_full(M, true, seed).module(); }

inline CosyzygyResult local_cosyzygy_full(const GModule& X, bool strip = true, std::uint64_t seed = kDefaultSeed) {
    return cosyzygy_from(local_syzygy_full(dual(X), false, seed), seed, strip);
}

inline GModule local_cosyzygy(const GModule& X, std::uint64_t seed = kDefaultSeed) {
    return local_cosyzygy_full(X, true, seed).module();
}

}  // namespace modrep
