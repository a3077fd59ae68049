#pragma once

// Desk-scale catalog of modules for one (ring, group) pair and the property
// suites run over it.  Every suite returns one Report per checked instance.

#include <optional>
#include <string>
#include <vector>

#include "modrep/arlab.hpp"
#include "modrep/report.hpp"

namespace modrep {

struct Entry {
    std::string name;
    GModule module;
};

struct SweepCatalog {
    RingSpec spec;
    GroupPtr G;
    std::string group_name;
    int max_rank = 12;
    std::uint64_t seed = kDefaultSeed;
    std::vector<Entry> simples;          // every simple kG-module
    std::vector<char> simple_projective;
    std::vector<Entry> kg;               // indecomposable non-projective kG-modules
    std::vector<RResult> R_kg;           // functor_R of each kg entry
    std::vector<Entry> lattices;         // indecomposable non-projective lattices
    std::vector<char> from_R;            // lattice is a summand of some R(kg entry)
    std::vector<int> exponents;          // exponent of each lattice
    std::vector<char> in_R_reduction;    // exponent 1, met as a summand of R(M / pi M)
    std::vector<int> heller_rank;        // rank of Omega of each kg entry
    std::vector<int> reduction_cover;    // r_rank_bound of M / pi M, used for every M / pi^b M
    bool reductions_capped(std::size_t i) const { return reduction_cover[i] > max_rank; }
    std::vector<int> lattice_span;       // max rank of the cover and of the injective hull of each lattice
    bool heller_capped(std::size_t i) const { return lattice_span[i] > max_rank; }
    std::vector<std::string> skipped;    // constructions dropped (rank cap, errors)

    json inputs() const { return json{{"group", group_name}, {"p", spec.p}, {"e", spec.e}, {"m", spec.m}}; }
    json inputs(const std::string& key, const std::string& name) const {
        json j = inputs();
        j[key] = name;
        return j;
    }
    json fingerprint() const {
        json j = json::object();
        json k = json::array(), l = json::array();
        for (auto& e : kg) k.push_back(json{{"name", e.name}, {"rank", e.module.rank()}});
        for (std::size_t i = 0; i < lattices.size(); ++i)
            l.push_back(json{{"name", lattices[i].name}, {"rank", lattices[i].module.rank()}, {"exponent", exponents[i]},
                             {"from_R", static_cast<bool>(from_R[i])}});
        j["kg"] = k;
        j["lattices"] = l;
        return j;
    }
};

namespace detail {

// Index of an isomorphic entry, or -1.
inline int find_iso(const std::vector<Entry>& list, const GModule& M, std::uint64_t seed) {
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i].module.rank() == M.rank() && list[i].module.b() == M.b() && is_isomorphic(list[i].module, M, seed))
            return static_cast<int>(i);
    return -1;
}

// Largest lattice met in R X = Omega^-1 Omega X: the cover of X, or the
// injective hull of Omega X (dual of the cover of its dual) minus Omega X.
// Projective summands of Omega X are their own hulls, so the unstripped
// syzygy gives the same difference.
inline int r_rank_bound(const GModule& X, std::uint64_t seed, int cap) {
    const int cover = projective_cover(X).P.rank();
    if (cover > cap) return cover;
    GModule Om = syzygy_full(X, false, seed).full;
    const int hull = projective_cover(reduce(dual(Om), 1)).P.rank();
    return std::max(cover, hull - Om.rank());
}

inline void add_kg(SweepCatalog& C, const std::string& name, const GModule& M) {
    if (M.rank() == 0 || M.rank() > C.max_rank) {
        if (M.rank() > C.max_rank) C.skipped.push_back(name + ": rank cap");
        return;
    }
    if (is_weakly_injective(M) || !is_indecomposable(M, C.seed)) return;
    if (find_iso(C.kg, M, C.seed) >= 0) return;
    if (r_rank_bound(M, C.seed, C.max_rank) > C.max_rank) {
        C.skipped.push_back(name + ": R over rank cap");
        return;
    }
    C.kg.push_back({name, M});
}

inline void add_lattice(SweepCatalog& C, const std::string& name, const GModule& M, bool fromR) {
    if (M.rank() == 0) return;
    if (M.rank() > C.max_rank) {
        C.skipped.push_back(name + ": rank cap");
        return;
    }
    if (is_weakly_injective(M)) return;
    int i = find_iso(C.lattices, M, C.seed);
    if (i >= 0) {
        if (fromR) C.from_R[i] = 1;
        return;
    }
    C.lattices.push_back({name, M});
    C.from_R.push_back(fromR);
    C.exponents.push_back(exponent(M));
}

inline void add_lattice_parts(SweepCatalog& C, const std::string& name, const GModule& M, bool fromR) {
    if (M.rank() == 0) return;
    if (M.rank() > C.max_rank) {
        C.skipped.push_back(name + ": rank cap");
        return;
    }
    auto parts = decompose(M, C.seed);
    if (parts.size() == 1) {
        add_lattice(C, name, M, fromR);
        return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) add_lattice(C, name + "#" + std::to_string(i), parts[i].module, fromR);
}

inline int sylow_order(const GroupTable& G, std::int64_t p) {
    int q = 1;
    for (int n = G.n; n % p == 0; n /= static_cast<int>(p)) q *= static_cast<int>(p);
    return q;
}

}  // namespace detail

/// Catalog: non-projective simples, their Omega_k and Omega_k^{-1}, Jordan
/// modules for cyclic groups; lattices from O, Omega^{+-1} O, and summands of
/// R and of the Heller lattices of the kG-modules.
inline SweepCatalog build_sweep_catalog(const RingSpec& spec, const GroupPtr& G, const std::string& group_name,
                                  std::uint64_t seed = kDefaultSeed, int max_rank = 12) {
    SweepCatalog C;
    C.spec = spec;
    C.G = G;
    C.group_name = group_name;
    C.seed = seed;
    C.max_rank = max_rank;
    if (G->n % spec.p != 0) return C;  // semisimple: nothing non-projective
    auto K = kg_catalog(spec, G);
    for (std::size_t i = 0; i < K->simples.size(); ++i) {
        C.simples.push_back({"S" + std::to_string(i), K->simples[i]});
        C.simple_projective.push_back(is_weakly_injective(K->simples[i]));
    }
    for (std::size_t i = 0; i < C.simples.size(); ++i) {
        if (C.simple_projective[i]) continue;
        const auto& S = C.simples[i];
        detail::add_kg(C, S.name, S.module);
        detail::add_kg(C, "Omega_k(" + S.name + ")", local_syzygy(S.module, seed));
        detail::add_kg(C, "Omega_k^-1(" + S.name + ")", local_cosyzygy(S.module, seed));
    }
    if (G->gens.size() == 1) {
        const int q = detail::sylow_order(*G, spec.p);
        for (int len = 2; len < q; ++len) detail::add_kg(C, "J" + std::to_string(len), module_jordan(spec, G, len));
    }
    for (const auto& X : C.kg) C.R_kg.push_back(functor_R(X.module, seed));

    GModule O = module_trivial(spec, G, spec.N());
    detail::add_lattice(C, "O", O, false);
    for (std::size_t i = 0; i < C.kg.size(); ++i) {
        detail::add_lattice_parts(C, "R(" + C.kg[i].name + ")", C.R_kg[i].module, true);
        GModule H = heller_lattice(C.kg[i].module, seed);
        C.heller_rank.push_back(H.rank());
        if (C.spec.e >= 2 && H.rank() > C.max_rank)
            C.skipped.push_back("reduced-almost-split(" + C.kg[i].name + "): rank cap");
        detail::add_lattice_parts(C, "Omega(" + C.kg[i].name + ")", H, false);
    }
    detail::add_lattice_parts(C, "Omega(O)", syzygy(O, seed), false);
    detail::add_lattice_parts(C, "Omega^-1(O)", cosyzygy(O, seed), false);
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        const GModule& L = C.lattices[i].module;
        C.lattice_span.push_back(std::max(projective_cover(L).P.rank(), projective_cover(reduce(dual(L), 1)).P.rank()));
        if (C.heller_capped(i)) C.skipped.push_back("Omega^+-1 of " + C.lattices[i].name + ": rank cap");
        C.reduction_cover.push_back(detail::r_rank_bound(reduce(C.lattices[i].module, 1), seed, C.max_rank));
        if (C.reductions_capped(i)) C.skipped.push_back("reductions of " + C.lattices[i].name + ": R over rank cap");
    }
    C.in_R_reduction.assign(C.lattices.size(), 0);
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        if (C.from_R[i] || C.exponents[i] != 1 || C.reductions_capped(i)) continue;
        const GModule& M = C.lattices[i].module;
        C.in_R_reduction[i] = is_summand_of(M, functor_R(reduce(M, 1), seed, false).module);
    }
    return C;
}

// ---- helpers ----

/// Reduction mod pi^b of stable Hom(M, N) is injective: the socle elements
/// pi^{f_i - 1} g_i stay k-linearly independent after reduction.
struct InjectivityCheck {
    std::vector<int> source, target;
    int socle_rank = 0;
    bool injective() const { return socle_rank == static_cast<int>(source.size()); }
};

inline InjectivityCheck reduction_injectivity(const GModule& M, const GModule& N, int b) {
    InjectivityCheck r;
    StableHomData S = stable_hom(M, N);
    StableHomData T = stable_hom(reduce(M, b), reduce(N, b));
    r.source = S.factor_exponents;
    r.target = T.factor_exponents;
    if (S.gens.empty()) return r;
    if (T.gens.empty()) return r;
    const int p = static_cast<int>(M.spec().p);
    Ring RS = S.change.ring(), RT = T.change.ring();
    fp::Matrix digits;
    for (std::size_t i = 0; i < S.gens.size(); ++i) {
        Mat s = S.gens[i].scaled(RS.pi_pow(S.factor_exponents[i] - 1)).at(b);
        auto c = T.stable_coords(s);
        fp::Vec row(c.size(), 0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const int f = T.factor_exponents[j];
            Ring Rf = RT.at(f);
            if (Rf.is_zero(c[j])) continue;
            if (Rf.val(c[j]) < f - 1) throw std::logic_error("reduction_injectivity: image of a socle element outside the socle");
            row[j] = static_cast<int>(Rf.residue(Rf.div_pi(c[j], f - 1)));
        }
        digits.push_back(row);
    }
    r.socle_rank = fp::rank(digits, p);
    return r;
}

// ---- suites ----

inline std::vector<Report> suite_adjunction(const SweepCatalog& C, int max_pairs = 64) {
    std::vector<Report> out;
    std::vector<Entry> torsion = C.kg;
    std::vector<RResult> Rt = C.R_kg;
    // a few torsion modules over O/pi^2 as well
    if (C.spec.N() > 2)
        for (std::size_t i = 0; i < C.lattices.size(); ++i)
            if (C.exponents[i] >= 2 && !C.reductions_capped(i)) {
                GModule X = reduce(C.lattices[i].module, 2);
                if (is_weakly_injective(X)) continue;
                torsion.push_back({C.lattices[i].name + "_2", X});
                Rt.push_back(functor_R(X, C.seed));
            }
    int pairs = 0;
    for (std::size_t l = 0; l < C.lattices.size(); ++l)
        for (std::size_t t = 0; t < torsion.size(); ++t) {
            if (pairs++ >= max_pairs) return out;
            json in = C.inputs();
            in["lattice"] = C.lattices[l].name;
            in["torsion"] = torsion[t].name;
            out.push_back(guarded("stable Hom(M, X) = stable Hom(M, RX) via the counit", "adjunction", in, [&](Report& r) {
                AdjunctionCheck a = check_adjunction(C.lattices[l].module, torsion[t].module, Rt[t]);
                r.computed = json{{"lhs_factors", a.lhs}, {"rhs_factors", a.rhs}, {"generators", a.generators}, {"factored", a.factored}};
                r.verdict = confirm_if(a.ok());
            }));
        }
    return out;
}

inline std::vector<Report> suite_kernel_of_R(const SweepCatalog& C) {
    std::vector<Report> out;
    for (const auto& X : C.kg)
        out.push_back(guarded("non-projective kG-module is not in the kernel of R", "kernel-of-R", C.inputs("module", X.name),
                              [&](Report& r) {
                                  KernelOfR k = kernel_of_R(X.module, C.seed);
                                  r.computed = json{{"syzygy_weakly_injective", k.syzygy_weakly_injective}, {"R_is_zero", k.r_is_zero}};
                                  r.verdict = confirm_if(k.consistent() && !k.in_kernel());
                              }));
    return out;
}

inline std::vector<Report> suite_counit_surjective(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.kg.size(); ++i)
        out.push_back(guarded("counit RM -> M is surjective", "counit-surjective", C.inputs("module", C.kg[i].name), [&](Report& r) {
            const RResult& R = C.R_kg[i];
            r.computed = json{{"R_rank", R.module.rank()}, {"counit_rank_mod_pi", rank_mod_pi(R.counit)}};
            r.verdict = confirm_if(R.counit_surjective());
        }));
    return out;
}

inline std::vector<Report> suite_heller_cosyzygy(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        if (C.heller_capped(i)) continue;
        const Entry& L = C.lattices[i];
        out.push_back(guarded("Omega^-1 Omega M = M and Omega Omega^-1 M = M for projective-free M, and Omega preserves the exponent",
                              "syzygy-adjointness", C.inputs("lattice", L.name), [&](Report& r) {
                                  GModule Om = syzygy(L.module, C.seed);
                                  GModule Oi = cosyzygy(L.module, C.seed);
                                  Cover P = projective_cover(L.module);
                                  SyzygyResult full = syzygy_full(L.module, false, C.seed);
                                  bool back = static_cast<bool>(is_isomorphic(cosyzygy(Om, C.seed), L.module, C.seed));
                                  bool fwd = static_cast<bool>(is_isomorphic(syzygy(Oi, C.seed), L.module, C.seed));
                                  int a = exponent(L.module), ao = exponent(Om);
                                  bool ranks = full.full.rank() == P.P.rank() - L.module.rank();
                                  r.computed = json{{"rank", L.module.rank()}, {"omega_rank", Om.rank()}, {"cosyzygy_rank", Oi.rank()},
                                                    {"exponent", a}, {"omega_exponent", ao}};
                                  r.verdict = confirm_if(back && fwd && a == ao && ranks);
                              }));
    }
    return out;
}

inline std::vector<Report> suite_breakdown(const SweepCatalog& C, int max_pairs = 64) {
    std::vector<Report> out;
    int pairs = 0;
    for (std::size_t i = 0; i < C.lattices.size(); ++i)
        for (std::size_t j = 0; j < C.lattices.size(); ++j) {
            const int b = std::max(C.exponents[i], C.exponents[j]);
            if (b < 1) continue;
            if (pairs++ >= max_pairs) return out;
            json in = C.inputs();
            in["source"] = C.lattices[i].name;
            in["target"] = C.lattices[j].name;
            in["b"] = b;
            out.push_back(guarded("reduction mod pi^b is injective on stable Hom", "reduction-injective", in, [&](Report& r) {
                const GModule &M = C.lattices[i].module, &N = C.lattices[j].module;
                if (b >= std::min(M.trust(), N.trust())) throw precision_error("b at or above trust");
                InjectivityCheck k = reduction_injectivity(M, N, b);
                r.computed = json{{"source_factors", k.source}, {"target_factors", k.target}, {"socle_rank", k.socle_rank}};
                r.verdict = confirm_if(k.injective());
            }));
        }
    return out;
}

inline std::vector<Report> suite_pullback_ladder(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        if (C.heller_capped(i)) continue;
        const GModule& M = C.lattices[i].module;
        const int a = C.exponents[i];
        for (int j = 1; j <= a + 1; ++j) {
            json in = C.inputs("lattice", C.lattices[i].name);
            in["j"] = j;
            out.push_back(guarded("pullback lattice B of pi^j Id: exponent j for j <= a, B = M + Omega M for j > a, B_b = M_b + (Omega M)_b for b <= j",
                                  "pullback-ladder", in, [&](Report& r) {
                                      GModule B = pullback_lattice(M, j);
                                      GModule Om = syzygy_full(M, false, C.seed).full;
                                      Cover P = projective_cover(M);
                                      bool rank_ok = B.rank() == P.P.rank();
                                      int eb = exponent(B);
                                      bool main_ok;
                                      if (j <= a) main_ok = eb == j;
                                      else main_ok = static_cast<bool>(is_isomorphic(B, direct_sum(with_trust(M, B.trust()), with_trust(Om, B.trust())), C.seed));
                                      bool split_ok = true;
                                      json below = json::array(), above = json::array();
                                      const int bmax = std::min(B.trust(), Om.trust()) - 1;
                                      for (int b = 1; b <= std::min(bmax, j + 1); ++b) {
                                          bool s = static_cast<bool>(is_isomorphic(reduce(B, b), direct_sum(reduce(M, b), reduce(Om, b)), C.seed));
                                          if (b <= j) {
                                              below.push_back(s);
                                              split_ok = split_ok && s;
                                          } else {
                                              above.push_back(s);
                                          }
                                      }
                                      r.computed = json{{"exponent", a}, {"B_rank", B.rank()}, {"B_exponent", eb},
                                                        {"split_b_le_j", below}, {"split_b_gt_j_data", above}};
                                      r.verdict = confirm_if(rank_ok && main_ok && split_ok);
                                  }));
        }
    }
    return out;
}

inline std::vector<Report> suite_two_summands(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        const int a = C.exponents[i];
        if (a < 1) continue;
        out.push_back(guarded("M / pi^a M has at most two summands", "reduction-two-summands", C.inputs("lattice", C.lattices[i].name),
                              [&](Report& r) {
                                  auto parts = decompose(reduce(C.lattices[i].module, a), C.seed);
                                  json ranks = json::array();
                                  for (auto& s : parts) ranks.push_back(s.module.rank());
                                  r.computed = json{{"exponent", a}, {"summand_ranks", ranks}};
                                  r.verdict = confirm_if(parts.size() <= 2);
                              }));
    }
    return out;
}

/// Exponent pi iff a summand of R of a kG-module.  The direction "summand of
/// RN => exponent 1" is exact; for exponent-1 lattices not met in the catalog
/// R(M/pi M) is searched, and an unfound summand is INDETERMINATE.
inline std::vector<Report> suite_exponent_one(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        // the search through R(M / pi M) is over the cap (listed in skipped)
        if (!C.from_R[i] && C.exponents[i] == 1 && C.reductions_capped(i)) continue;
        out.push_back(guarded("exponent pi iff a summand of R of a kG-module", "exponent-one", C.inputs("lattice", C.lattices[i].name),
                              [&](Report& r) {
                                  const int a = C.exponents[i];
                                  bool fromR = C.from_R[i];
                                  r.computed = json{{"exponent", a}, {"summand_of_R_in_catalog", fromR}};
                                  if (fromR) {
                                      r.verdict = confirm_if(a == 1);
                                      return;
                                  }
                                  if (a != 1) {
                                      r.verdict = Verdict::Confirmed;
                                      return;
                                  }
                                  bool found = C.in_R_reduction[i];
                                  r.computed["summand_of_R_of_reduction"] = found;
                                  r.verdict = found ? Verdict::Confirmed : Verdict::Indeterminate;
                                  if (!found) r.error = "no kG-module N with M | RN found";
                              }));
    }
    return out;
}

/// The almost split sequence starting at M (ending at Omega^-1 M) splits mod
/// pi when M is not a summand of any RN.  Built only when Omega^-1 M is Knorr,
/// where pi^{a-1} Id generates the stable socle.
inline std::vector<Report> suite_split_mod_pi(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        // exponent 1 lattices are summands of some RN (the exponent-one suite)
        if (C.from_R[i] || C.exponents[i] <= 1) continue;
        out.push_back(guarded("almost split sequence starting at M splits mod pi", "split-mod-pi", C.inputs("lattice", C.lattices[i].name),
                              [&](Report& r) {
                                  const GModule& M = C.lattices[i].module;
                                  GModule N = cosyzygy(M, C.seed);
                                  KnorrReport kn = is_knorr(N, C.seed);
                                  r.computed = json{{"exponent", C.exponents[i]}, {"end_is_knorr", kn.is_knorr}};
                                  if (!kn.is_knorr || kn.a < 1) {
                                      r.verdict = Verdict::Indeterminate;
                                      r.error = "socle generator of the end term unknown (not Knorr)";
                                      return;
                                  }
                                  Ring R = N.ring();
                                  ARData ar = pullback_sequence(N, Mat::scalar(R, N.rank(), R.pi_pow(kn.a - 1)), N);
                                  bool left_ok = static_cast<bool>(is_isomorphic(strip_projectives(ar.left, C.seed).module,
                                                                                 with_trust(M, std::min(M.trust(), ar.left.trust())), C.seed));
                                  bool split = sequence_splits(ar, 1);
                                  r.computed["left_matches"] = left_ok;
                                  r.computed["middle_rank"] = ar.middle.rank();
                                  r.computed["split_mod_pi"] = split;
                                  r.verdict = confirm_if(left_ok && split);
                              }));
    }
    return out;
}

inline std::vector<Report> suite_simples(const SweepCatalog& C) {
    std::vector<Report> out;
    auto K = kg_catalog(C.spec, C.G);
    std::vector<std::optional<RResult>> RS(C.simples.size());
    for (std::size_t i = 0; i < C.simples.size(); ++i)
        if (!C.simple_projective[i] && detail::r_rank_bound(C.simples[i].module, C.seed, C.max_rank) <= C.max_rank)
            RS[i] = functor_R(C.simples[i].module, C.seed);
    for (std::size_t i = 0; i < C.simples.size(); ++i) {
        if (!RS[i]) continue;
        out.push_back(guarded("P(RS) = P(S) + P(S)", "cover-of-RS", C.inputs("simple", C.simples[i].name), [&](Report& r) {
            auto mult = pim_multiplicities(projective_cover(RS[i]->module), *K);
            std::vector<int> expect(mult.size(), 0);
            expect[i] = 2;
            r.computed = json{{"R_rank", RS[i]->module.rank()}, {"cover_multiplicities", mult}};
            r.verdict = confirm_if(mult == expect);
        }));
    }
    for (std::size_t i = 0; i < C.simples.size(); ++i)
        for (std::size_t j = 0; j < C.simples.size(); ++j) {
            if (!RS[i] || !RS[j]) continue;
            json in = C.inputs();
            in["S"] = C.simples[i].name;
            in["T"] = C.simples[j].name;
            // F_p need not split S, so "2" is read as 2 dim End(S)
            out.push_back(guarded("dim stable Hom(RS, RT) = 2 dim End(S) if S = T, else 0", "stable-hom-RS-RT", in, [&](Report& r) {
                StableHomData H = stable_hom(RS[i]->module, RS[j]->module);
                const int d = i == j ? end_algebra(C.simples[i].module).dim() : 0;
                r.computed = json{{"factors", H.factor_exponents}, {"dim_End_S", d}};
                r.verdict = confirm_if(H.exponent() <= 1 && H.dim_k() == 2 * d);
            }));
        }
    return out;
}

inline std::vector<Report> suite_sylow_exponent(const SweepCatalog& C) {
    std::vector<Report> out;
    auto gens = sylow_generators(*C.G, static_cast<int>(C.spec.p));
    if (static_cast<int>(C.G->closure(gens).size()) == C.G->n) return out;  // G is a p-group
    for (std::size_t i = 0; i < C.lattices.size(); ++i)
        out.push_back(guarded("exponent unchanged by restriction to a Sylow subgroup", "sylow-exponent",
                              C.inputs("lattice", C.lattices[i].name), [&](Report& r) {
                                  Restriction res = restrict_to(C.lattices[i].module, gens);
                                  int a = C.exponents[i], ar = exponent(res.module);
                                  r.computed = json{{"exponent", a}, {"restricted_exponent", ar}, {"sylow_order", res.subgroup.group->n}};
                                  r.verdict = confirm_if(a == ar);
                              }));
    return out;
}

/// Rebuilds the catalog one p-digit higher and compares every
/// indecomposability and isomorphism outcome.
inline std::vector<Report> suite_maranda(const SweepCatalog& C) {
    std::vector<Report> out;
    out.push_back(guarded("catalog verdicts unchanged at m + 1", "precision-stability", C.inputs(), [&](Report& r) {
        RingSpec up = ring_make(C.spec.p, C.spec.e, C.spec.m + 1);
        SweepCatalog D = build_sweep_catalog(up, C.G, C.group_name, C.seed, C.max_rank);
        json a = C.fingerprint(), b = D.fingerprint();
        r.computed = json{{"kg_modules", C.kg.size()}, {"lattices", C.lattices.size()}, {"same", a == b}};
        if (a != b) r.computed["at_m_plus_1"] = b;
        r.verdict = confirm_if(a == b);
    }));
    return out;
}

inline std::vector<Report> suite_knorr(const SweepCatalog& C) {
    std::vector<Report> out;
    for (std::size_t i = 0; i < C.lattices.size(); ++i) {
        if (C.heller_capped(i)) continue;  // the sequence is built from the cover of M
        const GModule& M = C.lattices[i].module;
        KnorrReport kn;
        try {
            kn = is_knorr(M, C.seed);
        } catch (const precision_error&) {
            continue;
        }
        if (!kn.is_knorr) continue;
        out.push_back(guarded("middle term indecomposable iff M / pi^{a-1} M is (projective indecomposable when a = 1)",
                              "knorr-middle-term", C.inputs("lattice", C.lattices[i].name), [&](Report& r) {
                                  MiddleTermResult mt = ar_middle_term_knorr(M, C.seed);
                                  r.computed = json{{"a", mt.knorr.a}, {"middle_rank", mt.middle.rank()},
                                                    {"middle_indecomposable", mt.middle_indecomposable},
                                                    {"middle_projective", mt.middle_projective},
                                                    {"reduction_indecomposable", mt.reduction_indecomposable}};
                                  r.verdict = confirm_if(mt.agrees);
                              }));
    }
    for (std::size_t i = 0; i < C.lattices.size(); ++i)
        for (int b = 1; b < C.exponents[i] && !C.reductions_capped(i); ++b) {
            json in = C.inputs("lattice", C.lattices[i].name);
            in["b"] = b;
            out.push_back(guarded("R(M_b) indecomposable when M_b is and b < a", "R-of-reduction-indecomposable", in, [&](Report& r) {
                AindecResult ai = verify_aindec(C.lattices[i].module, b, C.seed);
                r.computed = json{{"reduction_indecomposable", ai.reduction_indecomposable}, {"R_rank", ai.r_rank},
                                  {"R_indecomposable", ai.r_indecomposable}};
                r.verdict = confirm_if(ai.holds());
            }));
        }
    // cyclic of prime order, unramified: every lattice Knorr with stable End = k
    if (C.G->n == C.spec.p && C.spec.e == 1)
        for (const auto& L : C.lattices)
            out.push_back(guarded("C_p unramified: stable End = k and Knorr of exponent pi", "cyclic-prime-knorr",
                                  C.inputs("lattice", L.name), [&](Report& r) {
                                      KnorrReport kn = is_knorr(L.module, C.seed);
                                      StableHomData S = stable_hom(L.module, L.module);
                                      r.computed = json{{"a", kn.a}, {"is_knorr", kn.is_knorr}, {"stable_end_factors", S.factor_exponents}};
                                      r.verdict = confirm_if(kn.is_knorr && kn.a == 1 && S.factor_exponents == std::vector<int>{1});
                                  }));
    return out;
}

/// Ramified structure (e >= 2) for each indecomposable non-projective kG-module.
inline std::vector<Report> suite_ramified(const SweepCatalog& C, bool reduced_ar = true) {
    std::vector<Report> out;
    if (C.spec.e < 2) return out;
    for (std::size_t i = 0; i < C.kg.size(); ++i) {
        const Entry& X = C.kg[i];
        json in = C.inputs("module", X.name);
        out.push_back(guarded("Omega over O before stripping is projective-free", "heller-projective-free", in, [&](Report& r) {
            SyzygyResult s = syzygy_full(X.module, false, C.seed);
            Stripped st = strip_projectives(s.full, C.seed);
            r.computed = json{{"rank", s.full.rank()}, {"projective_free_rank", st.module.rank()}};
            r.verdict = confirm_if(st.module.rank() == s.full.rank());
        }));
        out.push_back(guarded("Heller lattice is indecomposable", "ramified-heller-indecomposable", in, [&](Report& r) {
            GModule H = heller_lattice(X.module, C.seed);
            bool ind = is_indecomposable(H, C.seed);
            r.computed = json{{"rank", H.rank()}, {"indecomposable", ind}};
            r.verdict = confirm_if(ind);
        }));
        std::optional<RkResult> rk;
        out.push_back(guarded("RM / pi = M + Omega_k^-1 M", "reduction-of-R", in, [&](Report& r) {
            rk = verify_rk(X.module, C.seed);
            r.computed = json{{"R_rank", rk->R.module.rank()}, {"omega_inv_rank", rk->omega_inv.rank()},
                              {"counit_split", rk->counit_split}, {"kernel_matches", rk->kernel_matches},
                              {"witness", static_cast<bool>(rk->witness)}};
            r.verdict = confirm_if(rk->holds && rk->witness.has_value());
        }));
        if (!rk || !rk->counit_split) continue;
        out.push_back(guarded("stable End(RM) is a trivial extension of stable End(M)", "trivial-extension", in, [&](Report& r) {
            TrivExtReport t = verify_trivial_extension(X.module, *rk, C.seed);
            r.computed = json{{"dim_A", t.dim_A}, {"dim_B", t.dim_B}, {"projection_ok", t.projection_ok},
                              {"square_zero_ok", t.square_zero_ok}, {"kernel_dim_ok", t.kernel_dim_ok},
                              {"A_local", t.A_local}, {"B_local", t.B_local}, {"bimodule_check", "structural only"}};
            r.verdict = confirm_if(t.all() && (!t.B_local || t.A_local));
        }));
        out.push_back(guarded("diagonal block of R(phi) mod pi is phi (off-diagonal projectivity recorded)", "R-on-maps-blocks", in,
                              [&](Report& r) {
                                  StableHomData S = stable_hom(X.module, X.module);
                                  bool diag = true;
                                  json off = json::array();
                                  for (auto& phi : S.gens) {
                                      BlockData d = R_on_map_blocks(X.module, *rk, phi);
                                      diag = diag && d.diagonal_ok;
                                      off.push_back(d.off_diagonal_projective);
                                  }
                                  r.computed = json{{"generators", S.gens.size()}, {"diagonal_ok", diag}, {"off_diagonal_projective_data", off}};
                                  r.verdict = confirm_if(diag);
                              }));
        if (!reduced_ar || C.heller_rank[i] > C.max_rank) continue;
        out.push_back(guarded("almost split sequence ending at Omega M mod pi = kG almost split sequence + split sequence",
                              "reduced-almost-split", in, [&](Report& r) {
                                  ReducedARResult ra = verify_reduced_ar(X.module, C.seed);
                                  r.computed = json{{"socle_dim", ra.socle_dim}, {"middle_rank", ra.lattice_ar.middle.rank()},
                                                    {"kg_middle_rank", ra.kg_middle.rank()},
                                                    {"kg_middle_indecomposable", ra.kg_middle_indecomposable},
                                                    {"non_split", ra.non_split}, {"middle_matches", ra.middle_matches},
                                                    {"right_end_matches", ra.right_end_matches}, {"left_end_matches", ra.left_end_matches}};
                                  r.verdict = confirm_if(ra.holds());
                              }));
    }
    return out;
}

}  // namespace modrep
