#pragma once

// Modules over (O/pi^b)G that are free over O/pi^b, given by one matrix per
// group generator acting on column vectors.  Lattices are the modules with
// b = N.  `trust` records how far the matrices are certified: entries are
// meaningful only modulo pi^trust, and every computation on the module is
// carried out in O/pi^trust.

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/dvr.hpp"
#include "modrep/groups.hpp"
#include "modrep/linalg.hpp"

namespace modrep {

/// Smallest pi-precision at which indecomposability and isomorphism of
/// lattices are decided: 2 nu(|G|) + 1 in pi-units.
inline int maranda_threshold(const RingSpec& spec, const GroupTable& G) {
    return 2 * spec.e * vp(G.order(), spec.p) + 1;
}

/// Default p-precision exponent m for a group: N = e*m >= 2 e nu_p(|G|) + 3.
inline int default_m(std::int64_t p, int e, const GroupTable& G) {
    int need = 2 * e * vp(G.order(), p) + 3;
    return (need + e - 1) / e;
}

class GModule {
public:
    GModule() = default;

    /// rho: one rank x rank matrix per generator of `group`.
    GModule(RingSpec spec, GroupPtr group, int b, int trust, std::vector<Mat> rho, bool validate = true)
        : spec_(spec), group_(std::move(group)), b_(b), trust_(trust) {
        if (b < 1 || b > spec.N()) throw std::invalid_argument("GModule: b outside [1, N]");
        if (trust < 1 || trust > b) throw std::invalid_argument("GModule: trust outside [1, b]");
        if (rho.size() != group_->gens.size()) throw std::invalid_argument("GModule: one matrix per generator required");
        if (rho.empty()) throw std::invalid_argument("GModule: use with_rank for a group without generators");
        rank_ = rho[0].rows();
        for (auto& m : rho) {
            if (m.rows() != rank_ || m.cols() != rank_) throw std::invalid_argument("GModule: matrix shape mismatch");
            rho_.push_back(m.at(trust));
        }
        build_all(validate);
    }

    /// Module for the trivial group or with rank fixed explicitly.
    static GModule with_rank(RingSpec spec, GroupPtr group, int b, int trust, int rank, std::vector<Mat> rho) {
        GModule M;
        M.spec_ = spec;
        M.group_ = std::move(group);
        M.b_ = b;
        M.trust_ = trust;
        M.rank_ = rank;
        for (auto& m : rho) M.rho_.push_back(m.at(trust));
        if (M.rho_.empty())
            for (std::size_t s = 0; s < M.group_->gens.size(); ++s) M.rho_.push_back(Mat::identity(M.ring(), rank));
        M.build_all(true);
        return M;
    }

    const RingSpec& spec() const { return spec_; }
    const GroupPtr& group() const { return group_; }
    int b() const { return b_; }
    int trust() const { return trust_; }
    int rank() const { return rank_; }
    bool is_lattice() const { return b_ == spec_.N(); }
    Ring ring() const { return Ring(spec_, trust_); }
    const std::vector<Mat>& rho() const { return rho_; }
    const Mat& act(int g) const { return all_[g]; }
    const std::vector<Mat>& all() const { return all_; }

private:
    void build_all(bool validate) {
        const GroupTable& G = *group_;
        Ring R = ring();
        all_.assign(G.n, Mat());
        all_[G.id] = Mat::identity(R, rank_);
        for (const auto& w : G.bfs_words())
            if (w.gen >= 0) all_[w.element] = rho_[w.gen] * all_[w.parent];
        if (!validate) return;
        for (int s = 0; s < static_cast<int>(G.gens.size()); ++s) {
            if (!is_invertible(rho_[s])) throw std::invalid_argument("GModule: generator matrix not invertible");
            for (int g = 0; g < G.n; ++g)
                if (!(rho_[s] * all_[g] == all_[G.mul[G.gens[s]][g]]))
                    throw std::invalid_argument("GModule: matrices do not satisfy the group relations");
        }
    }

    RingSpec spec_;
    GroupPtr group_ = std::make_shared<GroupTable>();
    int b_ = 1;
    int trust_ = 1;
    int rank_ = 0;
    std::vector<Mat> rho_;
    std::vector<Mat> all_;
};

inline void require_same_group(const GModule& M, const GModule& N) {
    if (!(M.spec() == N.spec()) || M.group() != N.group())
        throw std::invalid_argument("modules over different rings or groups");
}

/// Regular module: basis indexed by group elements, g e_h = e_{gh}.
inline GModule module_regular(RingSpec spec, GroupPtr G, int b) {
    Ring R(spec, b);
    std::vector<Mat> rho;
    for (int s : G->gens) {
        Mat P(R, G->n, G->n);
        for (int h = 0; h < G->n; ++h) P(G->mul[s][h], h) = R.one();
        rho.push_back(P);
    }
    return GModule::with_rank(spec, G, b, b, G->n, rho);
}

inline GModule module_trivial(RingSpec spec, GroupPtr G, int b) {
    return GModule::with_rank(spec, G, b, b, 1, {});
}

/// Uniserial kC_n-module of the given length: the generator acts as a unipotent
/// Jordan block.  Only meaningful when length <= p^{nu_p(n)}.
inline GModule module_jordan(RingSpec spec, GroupPtr G, int length) {
    if (G->gens.size() != 1) throw std::invalid_argument("module_jordan: cyclic group with one generator required");
    Ring R(spec, 1);
    Mat J = Mat::identity(R, length);
    for (int i = 0; i + 1 < length; ++i) J(i, i + 1) = R.one();
    return GModule(spec, G, 1, 1, {J});
}

/// Module given by explicit matrices (generator order of the group).
inline GModule module_from_matrices(RingSpec spec, GroupPtr G, int b, std::vector<Mat> rho) {
    int trust = b;
    return GModule(spec, std::move(G), b, trust, std::move(rho));
}

inline bool intertwines(const GModule& src, const GModule& dst, const Mat& F, int w);

/// Cokernel of a G-endomorphism alpha of a lattice, when it is free over some
/// O/pi^c (all non-unit invariant factors equal and nonzero).
struct Cokernel {
    GModule module;
    std::vector<int> smith_d;
};

inline Cokernel module_cokernel(const GModule& N, const Mat& alpha) {
    if (!N.is_lattice()) throw std::invalid_argument("module_cokernel: lattice required");
    Ring R = N.ring();
    if (alpha.rows() != N.rank() || alpha.cols() != N.rank()) throw std::invalid_argument("module_cokernel: shape mismatch");
    if (!intertwines(N, N, alpha, R.w())) throw std::invalid_argument("module_cokernel: not a G-map");
    SmithForm S = smith(alpha.at(R.w()));
    std::vector<int> T;
    int c = 0;
    for (int i = 0; i < static_cast<int>(S.d.size()); ++i) {
        if (S.d[i] == 0) continue;
        if (S.d[i] >= R.w()) throw std::invalid_argument("module_cokernel: cokernel has a free part");
        if (c && S.d[i] != c) throw std::invalid_argument("module_cokernel: cokernel is not free over one O/pi^c");
        c = S.d[i];
        T.push_back(i);
    }
    Cokernel out;
    out.smith_d = S.d;
    if (T.empty()) {
        out.module = GModule::with_rank(N.spec(), N.group(), 1, 1, 0, {});
        return out;
    }
    Ring Rc(N.spec(), c);
    std::vector<Mat> rho;
    for (auto& m : N.rho()) {
        Mat g = S.U * m * S.Uinv;
        Mat r(Rc, static_cast<int>(T.size()), static_cast<int>(T.size()));
        for (std::size_t a = 0; a < T.size(); ++a)
            for (std::size_t b = 0; b < T.size(); ++b) r(int(a), int(b)) = Rc.reduce(g(T[a], T[b]));
        rho.push_back(r);
    }
    out.module = GModule::with_rank(N.spec(), N.group(), c, c, static_cast<int>(T.size()), rho);
    return out;
}

inline GModule reduce(const GModule& M, int b) {
    if (b > M.trust()) throw precision_error("reduce: target precision " + std::to_string(b) + " exceeds trust " + std::to_string(M.trust()));
    if (b < 1) throw std::invalid_argument("reduce: b must be positive");
    std::vector<Mat> rho;
    for (auto& m : M.rho()) rho.push_back(m.at(b));
    return GModule::with_rank(M.spec(), M.group(), b, b, M.rank(), rho);
}

/// Same module with matrices truncated to a lower trust level.
inline GModule with_trust(const GModule& M, int trust) {
    if (trust > M.trust()) throw precision_error("with_trust: cannot raise trust");
    std::vector<Mat> rho;
    for (auto& m : M.rho()) rho.push_back(m.at(trust));
    return GModule::with_rank(M.spec(), M.group(), M.b(), trust, M.rank(), rho);
}

/// Contragredient: g acts by the transpose of rho(g^{-1}).
inline GModule dual(const GModule& M) {
    const GroupTable& G = *M.group();
    std::vector<Mat> rho;
    for (int s : G.gens) rho.push_back(M.act(G.inv[s]).transpose());
    return GModule::with_rank(M.spec(), M.group(), M.b(), M.trust(), M.rank(), rho);
}

inline GModule direct_sum(const GModule& M, const GModule& N) {
    require_same_group(M, N);
    if (M.b() != N.b()) throw std::invalid_argument("direct_sum: different precision levels");
    int t = std::min(M.trust(), N.trust());
    std::vector<Mat> rho;
    for (std::size_t s = 0; s < M.rho().size(); ++s) rho.push_back(block_diag(M.rho()[s].at(t), N.rho()[s].at(t)));
    return GModule::with_rank(M.spec(), M.group(), M.b(), t, M.rank() + N.rank(), rho);
}

inline GModule direct_sum(const std::vector<GModule>& parts, const GModule& like) {
    if (parts.empty()) return GModule::with_rank(like.spec(), like.group(), like.b(), like.trust(), 0, {});
    GModule S = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) S = direct_sum(S, parts[i]);
    return S;
}

/// Restriction to the subgroup generated by the given elements of G.
struct Restriction {
    GModule module;
    Subgroup subgroup;
};

inline Restriction restrict_to(const GModule& M, const std::vector<int>& elements) {
    Subgroup H = subgroup(*M.group(), elements);
    std::vector<Mat> rho;
    for (int s : H.group->gens) rho.push_back(M.act(H.embedding[s]));
    return {GModule::with_rank(M.spec(), H.group, M.b(), M.trust(), M.rank(), rho), H};
}

inline GModule restrict(const GModule& M, const std::vector<int>& elements) { return restrict_to(M, elements).module; }

/// Change of basis: the module with matrices T^{-1} rho(g) T.
inline GModule conjugate(const GModule& M, const Mat& T, const Mat& Tinv) {
    std::vector<Mat> rho;
    for (auto& m : M.rho()) rho.push_back(Tinv * m * T);
    return GModule::with_rank(M.spec(), M.group(), M.b(), M.trust(), M.rank(), rho);
}

/// Module on the columns of B (a G-stable free summand of O^rank with left
/// inverse L, L*B = I): rho'(g) = L rho(g) B.
inline GModule submodule_on(const GModule& M, const Mat& B, const Mat& L, int trust) {
    std::vector<Mat> rho;
    for (auto& m : M.rho()) rho.push_back((L * m * B).at(trust));
    return GModule::with_rank(M.spec(), M.group(), M.b(), trust, B.cols(), rho);
}

/// A G-map is a matrix dst.rank x src.rank; this checks the intertwining
/// relation at the given precision.
inline bool intertwines(const GModule& src, const GModule& dst, const Mat& F, int w) {
    for (std::size_t s = 0; s < src.rho().size(); ++s)
        if (!((dst.rho()[s].at(w) * F.at(w)) == (F.at(w) * src.rho()[s].at(w)))) return false;
    return true;
}

/// Hom_{OG}(M, N) as a finite O-module.
struct HomData {
    std::vector<Mat> basis;             // minimal O-generating set of intertwiners
    std::vector<int> factor_exponents;  // Hom = sum O/pi^{f_i}, f_i = w for free summands
    AdaptedModule module;               // full solution module, ambient space vec(F), F dst x src
    std::vector<int> basis_idx;         // directions of `module` carrying the basis
    int w = 0;                          // working precision
    bool lattice_mode = false;
    int src_rank = 0, dst_rank = 0;

    /// Exponent of each basis element, in basis order.
    std::vector<int> gen_exponents() const {
        std::vector<int> f;
        for (int i : basis_idx) f.push_back(w - module.shift[i]);
        return f;
    }

    /// Coordinates of an intertwiner with respect to `basis`.  In lattice
    /// mode the components along truncation-torsion directions are dropped.
    std::vector<Elem> coords(const Mat& F) const {
        const Ring& R = module.basis.ring();
        Mat y = vec(F.at(w)) * module.basis_inv;
        for (int i = 0; i < module.ambient(); ++i)
            if (R.val(y(0, i)) < module.shift[i]) throw std::domain_error("HomData::coords: not an intertwiner");
        std::vector<Elem> c;
        for (int i : basis_idx) c.push_back(R.div_pi(y(0, i), module.shift[i]));
        return c;
    }
    bool contains(const Mat& F) const { return module.contains(vec(F.at(w))); }

    Mat combine(const std::vector<Elem>& c) const {
        Mat m(Ring(module.basis.ring()), dst_rank, src_rank);
        for (std::size_t t = 0; t < basis.size(); ++t) m = m + basis[t].scaled(c[t]);
        return m;
    }
};

/// Working precision and mode for Hom(M, N).
struct HomContext {
    int w = 0;
    bool lattice_mode = false;
    bool zero = false;
};

inline HomContext hom_context(const GModule& M, const GModule& N) {
    require_same_group(M, N);
    HomContext c;
    if (M.is_lattice() && N.is_lattice()) {
        c.w = std::min(M.trust(), N.trust());
        c.lattice_mode = true;
    } else if (!M.is_lattice() && N.is_lattice()) {
        c.w = N.trust();
        c.zero = true;  // torsion into torsion-free
    } else {
        if (M.b() < N.b())
            throw std::invalid_argument("hom_space: torsion source with smaller exponent than target is not supported");
        c.w = N.trust();
        if (M.trust() < c.w) throw precision_error("hom_space: source not certified to the target precision");
    }
    return c;
}

inline HomData hom_space(const GModule& M, const GModule& N) {
    HomContext ctx = hom_context(M, N);
    const int r = M.rank(), s = N.rank(), w = ctx.w;
    Ring R(M.spec(), w);
    HomData H;
    H.w = w;
    H.lattice_mode = ctx.lattice_mode;
    H.src_rank = r;
    H.dst_rank = s;
    const int n = r * s;
    if (ctx.zero || n == 0) {
        H.module.basis = Mat::identity(R, n);
        H.module.basis_inv = Mat::identity(R, n);
        H.module.shift.assign(n, w);
        return H;
    }
    const int ng = static_cast<int>(M.rho().size());
    // unknown F (s x r), index i*r + j; equation rows (g, i, j)
    Mat A(R, ng * n, n);
    for (int g = 0; g < ng; ++g) {
        Mat rm = M.rho()[g].at(w), rn = N.rho()[g].at(w);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < r; ++j) {
                int row = g * n + i * r + j;
                for (int k = 0; k < s; ++k) A(row, k * r + j) = R.add(A(row, k * r + j), rn(i, k));
                for (int k = 0; k < r; ++k) A(row, i * r + k) = R.sub(A(row, i * r + k), rm(k, j));
            }
    }
    if (ng == 0) A = Mat(R, 0, n);
    H.module = right_kernel(A);
    // For two lattices, solutions of positive shift come from truncation of
    // elementary divisors bounded by nu(|G|); only the free part is Hom.
    for (int i = 0; i < n; ++i) {
        int sh = H.module.shift[i];
        if (ctx.lattice_mode ? sh == 0 : sh < w) H.basis_idx.push_back(i);
    }
    for (int i : H.basis_idx) {
        Mat row(R, 1, n);
        Elem pw = R.pi_pow(H.module.shift[i]);
        for (int j = 0; j < n; ++j) row(0, j) = R.mul(pw, H.module.basis(i, j));
        H.basis.push_back(unvec(row, 0, s, r));
    }
    H.factor_exponents = H.gen_exponents();
    std::sort(H.factor_exponents.begin(), H.factor_exponents.end());
    return H;
}

/// Tr_G(f) = sum_g rho_N(g) f rho_M(g)^{-1}.
inline Mat trace_map(const Mat& f, const GModule& M, const GModule& N, int w) {
    const GroupTable& G = *M.group();
    Ring R(M.spec(), w);
    Mat acc(R, N.rank(), M.rank());
    Mat fw = f.at(w);
    for (int g = 0; g < G.n; ++g) acc = acc + N.act(g).at(w) * fw * M.act(G.inv[g]).at(w);
    return acc;
}

}  // namespace modrep
