#pragma once

// Stable category layer: trace images, stable homs, exponents, endomorphism
// algebras, decomposition and isomorphism.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "modrep/fp_algebra.hpp"
#include "modrep/module.hpp"

namespace modrep {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

/// The O-span of {Tr_G(E_ij)} inside Hom(M, N).
struct ProjHomData {
    std::vector<Mat> gens;  // minimal generating set
    AdaptedModule span;     // ambient space vec(F)
    int w = 0;
    bool contains(const Mat& F) const { return span.contains(vec(F.at(w))); }
};

inline ProjHomData projective_homs(const GModule& M, const GModule& N) {
    HomContext ctx = hom_context(M, N);
    const int w = ctx.w, r = M.rank(), s = N.rank();
    Ring R(M.spec(), w);
    const GroupTable& G = *M.group();
    ProjHomData P;
    P.w = w;
    Mat rows(R, ctx.zero ? 0 : r * s, r * s);
    if (!ctx.zero) {
        std::vector<Mat> Ng(G.n), Mi(G.n);
        for (int g = 0; g < G.n; ++g) {
            Ng[g] = N.act(g).at(w);
            Mi[g] = M.act(G.inv[g]).at(w);
        }
        // Tr(E_ij) = sum_g N(g)[:, i] * M(g^-1)[j, :]
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < r; ++j) {
                int row = i * r + j;
                for (int g = 0; g < G.n; ++g)
                    for (int a = 0; a < s; ++a) {
                        const Elem& x = Ng[g](a, i);
                        if (R.is_zero(x)) continue;
                        for (int b = 0; b < r; ++b) rows(row, a * r + b) = R.add(rows(row, a * r + b), R.mul(x, Mi[g](j, b)));
                    }
            }
    }
    P.span = row_span(rows);
    Mat g = P.span.generators();
    for (int t = 0; t < g.rows(); ++t) P.gens.push_back(unvec(g, t, s, r));
    return P;
}

/// Hom(M, N) modulo the trace image.
struct StableHomData {
    HomData hom;
    ProjHomData proj;
    std::vector<Mat> gens;              // stable generators, one per factor
    std::vector<int> factor_exponents;  // nondecreasing
    Mat change;                         // hom coordinates c -> stable coordinates c * change
    std::vector<int> stable_idx;        // columns of `change` carrying the gens
    int exponent() const { return factor_exponents.empty() ? 0 : factor_exponents.back(); }
    int dim_k() const { return static_cast<int>(factor_exponents.size()); }
    bool is_zero() const { return factor_exponents.empty(); }

    /// f is stably zero, i.e. factors through a weakly injective module.
    bool stably_zero(const Mat& f) const { return proj.contains(f); }
    bool stably_equal(const Mat& f, const Mat& g) const { return proj.contains(f.at(hom.w) - g.at(hom.w)); }

    /// Coordinates of the class of f along `gens`, the i-th one modulo
    /// pi^{factor_exponents[i]}.
    std::vector<Elem> stable_coords(const Mat& f) const {
        std::vector<Elem> out;
        if (gens.empty()) return out;
        Ring R = change.ring();
        auto c = hom.coords(f);
        Mat row(R, 1, static_cast<int>(c.size()));
        for (std::size_t t = 0; t < c.size(); ++t) row(0, static_cast<int>(t)) = c[t];
        Mat y = row * change;
        for (std::size_t i = 0; i < stable_idx.size(); ++i) out.push_back(R.at(factor_exponents[i]).reduce(y(0, stable_idx[i])));
        return out;
    }
    /// Residues of the stable coordinates; a faithful coordinate map when
    /// the stable hom space is killed by pi.
    fp::Vec stable_residues(const Mat& f) const {
        auto c = stable_coords(f);
        fp::Vec v(c.size());
        Ring R = change.ring();
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = static_cast<int>(R.residue(c[i]));
        return v;
    }
};

inline StableHomData stable_hom(const GModule& M, const GModule& N) {
    StableHomData S;
    S.hom = hom_space(M, N);
    S.proj = projective_homs(M, N);
    const int w = S.hom.w;
    Ring R(M.spec(), w);
    const int g = static_cast<int>(S.hom.basis.size());
    if (g == 0) return S;
    // relations: pi^{f_i} e_i and the coordinates of each trace image
    Mat rel(R, g + static_cast<int>(S.proj.gens.size()), g);
    auto fe = S.hom.gen_exponents();
    for (int i = 0; i < g; ++i) rel(i, i) = R.pi_pow(fe[i]);
    for (std::size_t k = 0; k < S.proj.gens.size(); ++k) {
        auto c = S.hom.coords(S.proj.gens[k]);
        for (int i = 0; i < g; ++i) rel(g + static_cast<int>(k), i) = c[i];
    }
    SmithForm F = smith(rel, {.track_U = false, .track_V = true});
    S.change = F.V;
    for (int i = 0; i < g; ++i) {
        int d = F.d[i];
        if (d == 0) continue;
        S.stable_idx.push_back(i);
        Mat m(R, S.hom.dst_rank, S.hom.src_rank);
        for (int t = 0; t < g; ++t) m = m + S.hom.basis[t].scaled(F.Vinv(i, t));
        S.gens.push_back(m);
        S.factor_exponents.push_back(d);
    }
    return S;
}

/// Least a with pi^a Id_M factoring through a projective.
inline int exponent(const GModule& M) { return stable_hom(M, M).exponent(); }

inline bool is_weakly_injective(const GModule& M) {
    if (M.rank() == 0) return true;
    ProjHomData P = projective_homs(M, M);
    return P.contains(Mat::identity(Ring(M.spec(), P.w), M.rank()));
}

/// End(M) with its reduction E/pi E as an F_p-algebra.
struct EndAlgebra {
    HomData hom;
    FpAlgebra alg;         // basis = images of hom.basis
    fp::Matrix radical;    // J(E/pi E)
    int dim() const { return alg.dim; }

    /// Matrix lifting a vector of E/pi E (entries lifted to [0, p)).
    Mat lift(const fp::Vec& v) const {
        Ring R(hom.basis.empty() ? RingSpec{} : hom.basis[0].ring().spec(), hom.w);
        Mat m(R, hom.dst_rank, hom.src_rank);
        for (int t = 0; t < alg.dim; ++t)
            if (v[t]) m = m + hom.basis[t].scaled(R.from_int(v[t]));
        return m;
    }
    fp::Vec reduce(const Mat& F) const {
        auto c = hom.coords(F);
        fp::Vec v(c.size());
        for (std::size_t t = 0; t < c.size(); ++t) v[t] = static_cast<int>(hom.basis[0].ring().residue(c[t]));
        return v;
    }
};

inline EndAlgebra end_algebra(const GModule& M) {
    EndAlgebra E;
    E.hom = hom_space(M, M);
    const int d = static_cast<int>(E.hom.basis.size());
    const int p = static_cast<int>(M.spec().p);
    E.alg.p = p;
    E.alg.dim = d;
    E.alg.c.assign(std::size_t(d) * d * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            fp::Vec v = E.reduce(E.hom.basis[i] * E.hom.basis[j]);
            for (int k = 0; k < d; ++k) E.alg.at(i, j, k) = v[k];
        }
    if (d) E.alg.one = E.reduce(Mat::identity(Ring(M.spec(), E.hom.w), M.rank()));
    E.radical = radical_basis(E.alg);
    return E;
}

inline void require_maranda(const GModule& M, const char* what) {
    if (M.is_lattice() && M.trust() < maranda_threshold(M.spec(), *M.group()))
        throw precision_error(std::string(what) + ": lattice trust " + std::to_string(M.trust()) +
                              " below the Maranda threshold " +
                              std::to_string(maranda_threshold(M.spec(), *M.group())) + "; raise m");
}

enum class Verdict3 { Yes, No, Indeterminate };

inline Verdict3 indecomposable_verdict(const GModule& M, std::uint64_t seed = kDefaultSeed) {
    require_maranda(M, "is_indecomposable");
    if (M.rank() == 0) return Verdict3::No;
    EndAlgebra E = end_algebra(M);
    std::mt19937_64 rng(seed);
    IdempotentSearch s = find_idempotent(E.alg, rng);
    if (s.verdict == Locality::Indeterminate) return Verdict3::Indeterminate;
    return s.verdict == Locality::Local ? Verdict3::Yes : Verdict3::No;
}

inline bool is_indecomposable(const GModule& M, std::uint64_t seed = kDefaultSeed) {
    Verdict3 v = indecomposable_verdict(M, seed);
    if (v == Verdict3::Indeterminate) throw indeterminate_error("is_indecomposable: idempotent search bound reached");
    return v == Verdict3::Yes;
}

/// Lift an idempotent of E/pi E to an idempotent endomorphism of M.
inline Mat lift_idempotent(const EndAlgebra& E, const fp::Vec& e) {
    Mat x = E.lift(e);
    for (int it = 0; it < 64; ++it) {
        Mat x2 = x * x;
        if (x2 == x) return x;
        Ring R = x.ring();
        x = x2.scaled(R.from_int(3)) - (x2 * x).scaled(R.from_int(2));
    }
    throw std::logic_error("lift_idempotent: Newton iteration did not converge");
}

/// Column bases of image(e) and image(1 - e) for an idempotent matrix e.
struct IdempotentSplit {
    Mat T, Tinv;  // T = [B1 | B2]
    int k = 0;    // rank of e
};

inline IdempotentSplit split_idempotent(const Mat& e) {
    const Ring& R = e.ring();
    const int n = e.rows();
    IdempotentSplit out;
    SmithForm S1 = smith(e), S2 = smith(Mat::identity(R, n) - e);
    int k1 = 0, k2 = 0;
    for (int d : S1.d) {
        if (d == 0) ++k1;
        else if (d != R.w()) throw std::logic_error("split_idempotent: not an idempotent");
    }
    for (int d : S2.d)
        if (d == 0) ++k2;
    if (k1 + k2 != n) throw std::logic_error("split_idempotent: ranks do not add up");
    out.k = k1;
    out.T = hstack(S1.Uinv.col_block(0, k1), S2.Uinv.col_block(0, k2));
    out.Tinv = inverse(out.T);
    return out;
}

/// An indecomposable summand with inclusion and projection
/// (proj * incl = I, sum of incl * proj = I).
struct Summand {
    GModule module;
    Mat incl;  // M.rank x r
    Mat proj;  // r x M.rank
};

namespace detail {

inline void decompose_into(const GModule& M, const Mat& incl, const Mat& proj, std::mt19937_64& rng,
                           std::vector<Summand>& out) {
    EndAlgebra E = end_algebra(M);
    IdempotentSearch s = find_idempotent(E.alg, rng);
    if (s.verdict == Locality::Indeterminate) throw indeterminate_error("decompose: idempotent search bound reached");
    if (s.verdict == Locality::Local) {
        out.push_back({M, incl, proj});
        return;
    }
    Mat e = lift_idempotent(E, s.idempotent);
    IdempotentSplit sp = split_idempotent(e);
    const int n = M.rank(), k = sp.k;
    Mat B1 = sp.T.col_block(0, k), B2 = sp.T.col_block(k, n - k);
    Mat L1 = sp.Tinv.row_block(0, k), L2 = sp.Tinv.row_block(k, n - k);
    GModule M1 = submodule_on(M, B1, L1, M.trust());
    GModule M2 = submodule_on(M, B2, L2, M.trust());
    decompose_into(M1, incl * B1, L1 * proj, rng, out);
    decompose_into(M2, incl * B2, L2 * proj, rng, out);
}

}  // namespace detail

inline std::vector<Summand> decompose(const GModule& M, std::uint64_t seed = kDefaultSeed) {
    require_maranda(M, "decompose");
    std::vector<Summand> out;
    if (M.rank() == 0) return out;
    std::mt19937_64 rng(seed);
    Ring R = M.ring();
    detail::decompose_into(M, Mat::identity(R, M.rank()), Mat::identity(R, M.rank()), rng, out);
    return out;
}

/// Projective-free part of M: the weakly injective summands removed.
struct Stripped {
    GModule module;
    Mat incl, proj;
    int projective_rank = 0;  // total rank of the removed summands
};

inline Stripped strip_projectives(const GModule& M, std::uint64_t seed = kDefaultSeed) {
    Ring R = M.ring();
    Stripped S;
    auto parts = decompose(M, seed);
    std::vector<GModule> keep;
    Mat incl(R, M.rank(), 0), proj(R, 0, M.rank());
    for (auto& s : parts) {
        if (is_weakly_injective(s.module)) {
            S.projective_rank += s.module.rank();
            continue;
        }
        keep.push_back(s.module);
        incl = hstack(incl, s.incl);
        proj = vstack(proj, s.proj);
    }
    S.module = direct_sum(keep, GModule::with_rank(M.spec(), M.group(), M.b(), M.trust(), 0, {}));
    S.incl = incl;
    S.proj = proj;
    return S;
}

/// Whether the indecomposable lattice or module M is a direct summand of N:
/// End(M) is local, so this holds iff some composite M -> N -> M of basis
/// maps lies outside J(End M).
inline bool is_summand_of(const GModule& M, const GModule& N) {
    require_same_group(M, N);
    const int w = std::min(M.trust(), N.trust());
    GModule Mw = M.trust() > w ? with_trust(M, w) : M;
    GModule Nw = N.trust() > w ? with_trust(N, w) : N;
    EndAlgebra E = end_algebra(Mw);
    HomData F = hom_space(Mw, Nw), G = hom_space(Nw, Mw);
    const int p = static_cast<int>(M.spec().p);
    const int jr = static_cast<int>(E.radical.size());
    for (auto& g : G.basis)
        for (auto& f : F.basis) {
            fp::Matrix test = E.radical;
            test.push_back(E.reduce((g * f).at(E.hom.w)));
            if (fp::rank(test, p) > jr) return true;
        }
    return false;
}

/// Isomorphism test with witness (an invertible intertwiner M -> N).
struct IsoResult {
    Verdict3 verdict = Verdict3::No;
    std::optional<Mat> witness;
    explicit operator bool() const { return verdict == Verdict3::Yes; }
};

namespace detail {

inline std::optional<Mat> combine_invertible(const HomData& H, const fp::Vec& c) {
    Ring R = H.basis[0].ring();
    Mat F(R, H.dst_rank, H.src_rank);
    for (std::size_t t = 0; t < H.basis.size(); ++t)
        if (c[t]) F = F + H.basis[t].scaled(R.from_int(c[t]));
    if (is_invertible(F)) return F;
    return std::nullopt;
}

// Indecomposable M, N: isomorphic iff g f is a unit of End(M) for some pair of
// basis maps f: M -> N, g: N -> M (End(M) local, its non-units form an ideal).
inline std::optional<Mat> indecomposable_iso(const GModule& M, const GModule& N) {
    if (M.rank() != N.rank()) return std::nullopt;
    HomData F = hom_space(M, N), G = hom_space(N, M);
    for (const auto& f : F.basis)
        for (const auto& g : G.basis)
            if (is_invertible(g * f)) return f;
    return std::nullopt;
}

}  // namespace detail

inline IsoResult is_isomorphic(const GModule& M, const GModule& N, std::uint64_t seed = kDefaultSeed,
                               SearchBounds bounds = {}) {
    require_same_group(M, N);
    IsoResult res;
    if (M.b() != N.b()) throw std::invalid_argument("is_isomorphic: modules over different O_b");
    if (M.rank() != N.rank()) return res;
    Ring R(M.spec(), std::min(M.trust(), N.trust()));
    if (M.rank() == 0) {
        res.verdict = Verdict3::Yes;
        res.witness = Mat(R, 0, 0);
        return res;
    }
    HomData H = hom_space(M, N);
    const int d = static_cast<int>(H.basis.size());
    if (d == 0) return res;
    const int p = static_cast<int>(M.spec().p);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, p - 1);
    for (int t = 0; t < bounds.random_trials; ++t) {
        fp::Vec c(d);
        for (auto& x : c) x = dist(rng);
        if (auto F = detail::combine_invertible(H, c)) {
            res.verdict = Verdict3::Yes;
            res.witness = *F;
            return res;
        }
    }
    // Krull-Schmidt: match indecomposable summands pairwise (exact)
    std::vector<Summand> A, B;
    bool decomposed = true;
    try {
        A = decompose(M, seed);
        B = decompose(N, seed);
    } catch (const indeterminate_error&) {
        decomposed = false;
    }
    if (!decomposed) {
        double total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        if (total > bounds.exhaustive_limit) {
            res.verdict = Verdict3::Indeterminate;
            return res;
        }
        fp::Vec c(d, 0);
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
            long long r = idx;
            for (int i = 0; i < d; ++i) {
                c[i] = static_cast<int>(r % p);
                r /= p;
            }
            if (auto F = detail::combine_invertible(H, c)) {
                res.verdict = Verdict3::Yes;
                res.witness = *F;
                return res;
            }
        }
        return res;  // exhaustive: no isomorphism
    }
    if (A.size() != B.size()) return res;
    std::vector<char> used(B.size(), 0);
    Mat W(R, N.rank(), M.rank());
    for (auto& a : A) {
        bool found = false;
        for (std::size_t j = 0; j < B.size() && !found; ++j) {
            if (used[j]) continue;
            if (auto f = detail::indecomposable_iso(a.module, B[j].module)) {
                used[j] = 1;
                found = true;
                W = W + B[j].incl.at(R.w()) * f->at(R.w()) * a.proj.at(R.w());
            }
        }
        if (!found) return res;
    }
    res.verdict = Verdict3::Yes;
    res.witness = W;
    return res;
}

/// Iso classes of a list of modules against a list of candidates: index of
/// the first isomorphic candidate or -1.
inline int match_iso_class(const GModule& X, const std::vector<GModule>& candidates, std::uint64_t seed = kDefaultSeed) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].rank() != X.rank()) continue;
        IsoResult r = is_isomorphic(X, candidates[i], seed);
        if (r.verdict == Verdict3::Indeterminate) throw indeterminate_error("match_iso_class: undecided");
        if (r) return static_cast<int>(i);
    }
    return -1;
}

/// Multiset comparison of two decompositions up to isomorphism.
inline bool same_summands(const std::vector<GModule>& A, const std::vector<GModule>& B, std::uint64_t seed = kDefaultSeed) {
    if (A.size() != B.size()) return false;
    std::vector<char> used(B.size(), 0);
    for (auto& a : A) {
        bool found = false;
        for (std::size_t j = 0; j < B.size() && !found; ++j) {
            if (used[j] || B[j].rank() != a.rank()) continue;
            if (is_isomorphic(a, B[j], seed)) {
                used[j] = 1;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline std::vector<GModule> summand_modules(const std::vector<Summand>& parts) {
    std::vector<GModule> out;
    for (auto& s : parts) out.push_back(s.module);
    return out;
}

}  // namespace modrep
