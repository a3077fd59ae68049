#pragma once

// Declarative scenarios (ring, group, a DAG of module constructions, checks),
// the named built-in scenarios, and the sweep runner.

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "modrep/suites.hpp"

namespace modrep {

/// Malformed scenario or sweep document.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- groups by name ----

namespace detail {

// Q8 as signed units: index 2*u + s for u in {1, i, j, k}, sign s.
inline GroupPtr quaternion_group() {
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    auto mul = [](int a, int b) {
        int ua = a / 2, ub = b / 2;
        return 2 * unit[ua][ub] + ((a % 2) ^ (b % 2) ^ sign[ua][ub]);
    };
    std::vector<std::vector<int>> perms;
    for (int g : {2, 4}) {  // i and j acting by left multiplication
        std::vector<int> p(8);
        for (int x = 0; x < 8; ++x) p[x] = mul(g, x);
        perms.push_back(p);
    }
    return group_from_perms(perms);
}

inline std::vector<std::string> split_x(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == 'x') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

inline GroupPtr named_factor(const std::string& s) {
    if (s == "S3") return group_from_perms({{1, 0, 2}, {1, 2, 0}});
    if (s == "D8") return group_from_perms({{1, 2, 3, 0}, {0, 3, 2, 1}});
    if (s == "Q8") return quaternion_group();
    if (s.size() >= 2 && s[0] == 'C' && std::all_of(s.begin() + 1, s.end(), ::isdigit)) return group_cyclic(std::stoi(s.substr(1)));
    throw parse_error("unknown group name '" + s + "'");
}

}  // namespace detail

/// "C4", "C2xC2", "S3", "D8", "Q8", or {"cyclic": n} / {"product": [g, h]} /
/// {"perms": [[...], ...]}.
inline std::pair<GroupPtr, std::string> parse_group(const json& j) {
    if (j.is_string()) {
        auto parts = detail::split_x(j.get<std::string>());
        GroupPtr G = detail::named_factor(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) G = group_product(*G, *detail::named_factor(parts[i]));
        return {G, j.get<std::string>()};
    }
    if (j.is_object() && j.contains("cyclic")) {
        int n = j.at("cyclic").get<int>();
        return {group_cyclic(n), "C" + std::to_string(n)};
    }
    if (j.is_object() && j.contains("product")) {
        const json& f = j.at("product");
        if (!f.is_array() || f.empty()) throw parse_error("group product needs a non-empty list");
        auto [G, name] = parse_group(f[0]);
        for (std::size_t i = 1; i < f.size(); ++i) {
            auto [H, hn] = parse_group(f[i]);
            G = group_product(*G, *H);
            name += "x" + hn;
        }
        return {G, name};
    }
    if (j.is_object() && j.contains("perms")) {
        auto G = group_from_perms(j.at("perms").get<std::vector<std::vector<int>>>());
        return {G, "Perm" + std::to_string(G->n)};
    }
    throw parse_error("group must be a name or an object with cyclic/product/perms");
}

// ---- JSON encodings ----

inline json elem_json(const Ring& R, const Elem& x) {
    if (R.e() == 1) return x.c[0];
    json a = json::array();
    for (int i = 0; i < R.e(); ++i) a.push_back(x.c[i]);
    return a;
}

inline json mat_json(const Mat& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < A.cols(); ++j) r.push_back(elem_json(A.ring(), A(i, j)));
        rows.push_back(r);
    }
    return rows;
}

inline Mat parse_mat(const Ring& R, const json& j) {
    if (!j.is_array()) throw parse_error("matrix must be a list of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = rows ? static_cast<int>(j[0].size()) : 0;
    Mat A(R, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) throw parse_error("matrix rows of unequal length");
        for (int k = 0; k < cols; ++k) {
            const json& x = j[i][k];
            if (x.is_number_integer()) {
                A(i, k) = R.from_int(x.get<std::int64_t>());
            } else if (x.is_array()) {
                std::array<std::int64_t, kMaxRamification> c{};
                if (static_cast<int>(x.size()) > R.e()) throw parse_error("too many pi-coefficients in a matrix entry");
                for (std::size_t t = 0; t < x.size(); ++t) c[t] = x[t].get<std::int64_t>();
                A(i, k) = R.from_coeffs(c);
            } else {
                throw parse_error("matrix entries must be integers or coefficient lists");
            }
        }
    }
    return A;
}

/// {"rank", "b", "trust", "rho"}.
inline json module_json(const GModule& M) {
    json rho = json::array();
    for (auto& m : M.rho()) rho.push_back(mat_json(m));
    return json{{"rank", M.rank()}, {"b", M.b()}, {"trust", M.trust()}, {"rho", rho}};
}

// ---- scenarios ----

struct Scenario {
    std::string name;
    RingSpec spec;
    GroupPtr G;
    std::string group_name;
    std::uint64_t seed = kDefaultSeed;
    json modules = json::array();
    json checks = json::array();
};

inline Scenario parse_scenario(const json& j, std::optional<std::uint64_t> seed_override = {}, int precision_bump = 0) {
    try {
        Scenario s;
        s.name = j.value("name", std::string("scenario"));
        const json& r = j.at("ring");
        s.spec = ring_make(r.at("p").get<std::int64_t>(), r.at("e").get<int>(), r.at("m").get<int>() + precision_bump);
        auto [G, gn] = parse_group(j.at("group"));
        s.G = G;
        s.group_name = gn;
        s.seed = j.value("seed", kDefaultSeed);
        if (seed_override) s.seed = *seed_override;
        s.modules = j.value("modules", json::array());
        s.checks = j.value("checks", json::array());
        // the DAG: every reference must name an earlier module
        std::set<std::string> seen;
        auto need = [&](const json& m, const char* key) {
            if (!m.contains(key)) return;
            const json& v = m.at(key);
            std::vector<std::string> refs = v.is_array() ? v.get<std::vector<std::string>>() : std::vector<std::string>{v.get<std::string>()};
            for (auto& x : refs)
                if (!seen.count(x)) throw parse_error("module reference '" + x + "' is undefined or not yet constructed");
        };
        for (const auto& m : s.modules) {
            std::string name = m.at("name").get<std::string>();
            static const std::set<std::string> ops{"trivial", "regular", "jordan", "simple", "matrices", "cokernel", "heller",
                                                   "syzygy", "cosyzygy", "local_syzygy", "local_cosyzygy", "R", "reduce",
                                                   "dual", "pullback", "summand", "sum"};
            if (!ops.count(m.at("op").get<std::string>())) throw parse_error("unknown module op '" + m.at("op").get<std::string>() + "'");
            need(m, "of");
            if (seen.count(name)) throw parse_error("module '" + name + "' defined twice");
            seen.insert(name);
        }
        for (const auto& c : s.checks) {
            static const std::set<std::string> kinds{"smith", "module", "kernel_of_R", "weakly_injective", "decompose",
                                                     "indecomposable", "isomorphic", "exponent", "stable_hom", "knorr", "R",
                                                     "counit_surjective", "adjunction", "heller_indecomposable", "rk",
                                                     "trivial_extension", "reduced_ar", "middle_term", "aindec"};
            if (!kinds.count(c.at("check").get<std::string>())) throw parse_error("unknown check '" + c.at("check").get<std::string>() + "'");
            for (const char* key : {"module", "lattice", "torsion", "source", "target", "a", "b_module"}) need(c, key);
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("scenario: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("scenario: ") + e.what());
    }
}

namespace detail {

inline int parse_b(const json& m, const RingSpec& spec) {
    if (!m.contains("b")) return spec.N();
    const json& b = m.at("b");
    if (b.is_string() && b.get<std::string>() == "N") return spec.N();
    return b.get<int>();
}

inline GModule build_module(const Scenario& s, const json& m, const std::map<std::string, GModule>& env) {
    const std::string op = m.at("op").get<std::string>();
    auto of = [&]() -> const GModule& { return env.at(m.at("of").get<std::string>()); };
    if (op == "trivial") return module_trivial(s.spec, s.G, parse_b(m, s.spec));
    if (op == "regular") return module_regular(s.spec, s.G, parse_b(m, s.spec));
    if (op == "jordan") return module_jordan(s.spec, s.G, m.at("length").get<int>());
    if (op == "simple") {
        auto K = kg_catalog(s.spec, s.G);
        int i = m.at("index").get<int>();
        if (i < 0 || i >= static_cast<int>(K->simples.size())) throw parse_error("simple: index out of range");
        return K->simples[i];
    }
    if (op == "matrices") {
        int b = parse_b(m, s.spec);
        Ring R(s.spec, b);
        std::vector<Mat> rho;
        for (const auto& x : m.at("rho")) rho.push_back(parse_mat(R, x));
        return module_from_matrices(s.spec, s.G, b, rho);
    }
    if (op == "cokernel") return module_cokernel(of(), parse_mat(of().ring(), m.at("matrix"))).module;
    if (op == "heller") return heller_lattice(of(), s.seed);
    if (op == "syzygy") return syzygy(of(), s.seed);
    if (op == "cosyzygy") return cosyzygy(of(), s.seed);
    if (op == "local_syzygy") return local_syzygy(of(), s.seed);
    if (op == "local_cosyzygy") return local_cosyzygy(of(), s.seed);
    if (op == "R") return functor_R(of(), s.seed).module;
    if (op == "reduce") return reduce(of(), m.at("b").get<int>());
    if (op == "dual") return dual(of());
    if (op == "pullback") return pullback_lattice(of(), m.at("j").get<int>());
    if (op == "summand") {
        auto parts = decompose(of(), s.seed);
        int i = m.at("index").get<int>();
        if (i < 0 || i >= static_cast<int>(parts.size())) throw parse_error("summand: index out of range");
        return parts[i].module;
    }
    if (op == "sum") {
        auto names = m.at("of").get<std::vector<std::string>>();
        if (names.empty()) throw parse_error("sum: empty list");
        GModule S = env.at(names[0]);
        for (std::size_t i = 1; i < names.size(); ++i) S = direct_sum(S, env.at(names[i]));
        return S;
    }
    throw parse_error("unknown module op '" + op + "'");
}

inline std::vector<int> sorted_ranks(const std::vector<Summand>& parts) {
    std::vector<int> r;
    for (auto& s : parts) r.push_back(s.module.rank());
    std::sort(r.begin(), r.end());
    return r;
}

struct CheckOutcome {
    std::string claim, anchor;
    json computed;
    bool holds = true;
};

inline CheckOutcome run_check(const Scenario& s, const json& c, const std::map<std::string, GModule>& env) {
    const std::string kind = c.at("check").get<std::string>();
    auto mod = [&](const char* key) -> const GModule& { return env.at(c.at(key).get<std::string>()); };
    CheckOutcome o;
    if (kind == "smith") {
        Mat A = parse_mat(Ring(s.spec, s.spec.N()), c.at("matrix"));
        SmithForm F = smith(A);
        o = {"Smith normal form", "smith-form", json{{"d", F.d}}, true};
    } else if (kind == "module") {
        const GModule& M = mod("module");
        json j = module_json(M);
        if (!M.is_lattice()) j["invariant_factors"] = std::vector<int>(M.rank(), M.b());
        o = {"module data", "module", j, true};
    } else if (kind == "kernel_of_R") {
        KernelOfR k = kernel_of_R(mod("module"), s.seed);
        o = {"in the kernel of R iff the syzygy is weakly injective", "kernel-of-R",
             json{{"syzygy_weakly_injective", k.syzygy_weakly_injective}, {"R_is_zero", k.r_is_zero}, {"in_kernel", k.in_kernel()}},
             k.consistent()};
    } else if (kind == "weakly_injective") {
        o = {"weak injectivity", "weakly-injective", json{{"weakly_injective", is_weakly_injective(mod("module"))}}, true};
    } else if (kind == "decompose") {
        o = {"decomposition", "decompose", json{{"summand_ranks", sorted_ranks(decompose(mod("module"), s.seed))}}, true};
    } else if (kind == "indecomposable") {
        o = {"indecomposability", "indecomposable", json{{"indecomposable", is_indecomposable(mod("module"), s.seed)}}, true};
    } else if (kind == "isomorphic") {
        IsoResult r = is_isomorphic(mod("a"), mod("b_module"), s.seed);
        if (r.verdict == Verdict3::Indeterminate) throw indeterminate_error("isomorphism undecided");
        o = {"isomorphism", "isomorphic", json{{"isomorphic", static_cast<bool>(r)}}, true};
    } else if (kind == "exponent") {
        o = {"exponent", "exponent", json{{"exponent", exponent(mod("module"))}}, true};
    } else if (kind == "stable_hom") {
        StableHomData H = stable_hom(mod("source"), mod("target"));
        o = {"stable Hom invariant factors", "stable-hom", json{{"factors", H.factor_exponents}, {"dim_k", H.dim_k()}}, true};
    } else if (kind == "knorr") {
        KnorrReport k = is_knorr(mod("module"), s.seed);
        o = {"Knorr lattice test", "knorr",
             json{{"applicable", k.applicable}, {"is_knorr", k.is_knorr}, {"a", k.a}, {"trace_val_min", k.trace_val_min},
                  {"rank_val", k.rank_val}, {"residue_dim", k.residue_dim}},
             k.is_knorr};
    } else if (kind == "R") {
        RResult R = functor_R(mod("module"), s.seed);
        json j{{"R_rank", R.module.rank()}, {"counit_surjective", R.counit_surjective()}};
        if (R.module.rank()) j["R_summand_ranks"] = sorted_ranks(decompose(R.module, s.seed));
        o = {"the functor R", "functor-R", j, true};
    } else if (kind == "counit_surjective") {
        RResult R = functor_R(mod("module"), s.seed);
        o = {"counit RM -> M is surjective", "counit-surjective", json{{"counit_surjective", R.counit_surjective()}}, R.counit_surjective()};
    } else if (kind == "adjunction") {
        const GModule& X = mod("torsion");
        AdjunctionCheck a = check_adjunction(mod("lattice"), X, functor_R(X, s.seed));
        o = {"stable Hom(M, X) = stable Hom(M, RX) via the counit", "adjunction",
             json{{"lhs_factors", a.lhs}, {"rhs_factors", a.rhs}, {"generators", a.generators}, {"factored", a.factored}}, a.ok()};
    } else if (kind == "heller_indecomposable") {
        GModule H = heller_lattice(mod("module"), s.seed);
        bool ind = is_indecomposable(H, s.seed);
        o = {"Heller lattice is indecomposable", "ramified-heller-indecomposable", json{{"rank", H.rank()}, {"indecomposable", ind}}, ind};
    } else if (kind == "rk" || kind == "trivial_extension") {
        RkResult rk = verify_rk(mod("module"), s.seed);
        if (kind == "rk") {
            json j{{"R_rank", rk.R.module.rank()}, {"omega_inv_rank", rk.omega_inv.rank()}, {"counit_split", rk.counit_split},
                   {"kernel_matches", rk.kernel_matches}, {"holds", rk.holds}, {"witness", rk.witness ? mat_json(*rk.witness) : json(nullptr)}};
            o = {"RM / pi = M + Omega_k^-1 M", "reduction-of-R", j, rk.holds && rk.witness.has_value()};
        } else {
            TrivExtReport t = verify_trivial_extension(mod("module"), rk, s.seed);
            o = {"stable End(RM) is a trivial extension of stable End(M)", "trivial-extension",
                 json{{"dim_A", t.dim_A}, {"dim_B", t.dim_B}, {"projection_ok", t.projection_ok}, {"square_zero_ok", t.square_zero_ok},
                      {"kernel_dim_ok", t.kernel_dim_ok}, {"A_local", t.A_local}, {"B_local", t.B_local}},
                 t.all() && (!t.B_local || t.A_local)};
        }
    } else if (kind == "reduced_ar") {
        ReducedARResult ra = verify_reduced_ar(mod("module"), s.seed);
        o = {"almost split sequence ending at Omega M mod pi = kG almost split sequence + split sequence", "reduced-almost-split",
             json{{"socle_dim", ra.socle_dim}, {"middle_rank", ra.lattice_ar.middle.rank()}, {"kg_middle_rank", ra.kg_middle.rank()},
                  {"kg_middle_indecomposable", ra.kg_middle_indecomposable}, {"non_split", ra.non_split},
                  {"middle_matches", ra.middle_matches}, {"right_end_matches", ra.right_end_matches}, {"left_end_matches", ra.left_end_matches}},
             ra.holds()};
    } else if (kind == "middle_term") {
        MiddleTermResult mt = ar_middle_term_knorr(mod("module"), s.seed);
        o = {"middle term indecomposable iff M / pi^{a-1} M is (projective indecomposable when a = 1)", "knorr-middle-term",
             json{{"a", mt.knorr.a}, {"middle_rank", mt.middle.rank()}, {"middle_indecomposable", mt.middle_indecomposable},
                  {"middle_projective", mt.middle_projective}, {"reduction_indecomposable", mt.reduction_indecomposable}},
             mt.agrees};
    } else if (kind == "aindec") {
        AindecResult ai = verify_aindec(mod("module"), c.at("b").get<int>(), s.seed);
        o = {"R(M_b) indecomposable when M_b is and b < a", "R-of-reduction-indecomposable",
             json{{"reduction_indecomposable", ai.reduction_indecomposable}, {"R_rank", ai.r_rank}, {"R_indecomposable", ai.r_indecomposable}},
             ai.holds()};
    } else {
        throw parse_error("unknown check '" + kind + "'");
    }
    return o;
}

}  // namespace detail

/// Builds the module DAG and runs every check.  A check with an "expect"
/// object is CONFIRMED iff each expected key matches the computed value;
/// otherwise its built-in claim decides.
inline std::vector<Report> run_scenario(const Scenario& s) {
    std::map<std::string, GModule> env;
    for (const auto& m : s.modules) env[m.at("name").get<std::string>()] = detail::build_module(s, m, env);
    std::vector<Report> out;
    json base{{"scenario", s.name}, {"group", s.group_name}, {"p", s.spec.p}, {"e", s.spec.e}, {"m", s.spec.m}, {"seed", s.seed}};
    for (const auto& c : s.checks) {
        json in = base;
        for (auto it = c.begin(); it != c.end(); ++it)
            if (it.key() != "expect" && it.key() != "claim" && it.key() != "anchor") in[it.key()] = it.value();
        Report r = guarded("", "", in, [&](Report& rep) {
            detail::CheckOutcome o = detail::run_check(s, c, env);
            rep.claim = o.claim;
            rep.anchor = o.anchor;
            rep.computed = o.computed;
            bool ok = o.holds;
            if (c.contains("expect")) {
                ok = true;
                for (auto it = c.at("expect").begin(); it != c.at("expect").end(); ++it)
                    if (!o.computed.contains(it.key()) || o.computed.at(it.key()) != it.value()) ok = false;
            }
            rep.verdict = confirm_if(ok);
        });
        if (c.contains("claim")) r.claim = c.at("claim").get<std::string>();
        if (c.contains("anchor")) r.anchor = c.at("anchor").get<std::string>();
        if (r.anchor.empty()) r.anchor = c.at("check").get<std::string>();
        out.push_back(r);
    }
    return out;
}

// ---- built-in scenarios ----

inline const std::map<std::string, json>& builtin_scenarios() {
    static const std::map<std::string, json> table = [] {
        std::map<std::string, json> t;
        t["example-gtytg"] = json::parse(R"({
  "name": "example-gtytg",
  "ring": {"p": 2, "e": 1, "m": 6},
  "group": "C2",
  "modules": [
    {"name": "OG", "op": "regular"},
    {"name": "X", "op": "cokernel", "of": "OG", "matrix": [[1, 3], [3, 1]]}
  ],
  "checks": [
    {"check": "smith", "matrix": [[1, 3], [3, 1]], "expect": {"d": [0, 3]}, "anchor": "projective-dimension-one-example"},
    {"check": "module", "module": "X", "expect": {"invariant_factors": [3], "rho": [[[5]]]}, "anchor": "projective-dimension-one-example"},
    {"check": "kernel_of_R", "module": "X", "expect": {"in_kernel": true, "R_is_zero": true}, "anchor": "projective-dimension-one-example"},
    {"check": "weakly_injective", "module": "X", "expect": {"weakly_injective": false}, "anchor": "projective-dimension-one-example"}
  ]
})");
        t["heller-reiner-c3"] = json::parse(R"({
  "name": "heller-reiner-c3",
  "ring": {"p": 3, "e": 1, "m": 8},
  "group": "C3",
  "modules": [
    {"name": "k", "op": "trivial", "b": 1},
    {"name": "O", "op": "trivial"},
    {"name": "A", "op": "syzygy", "of": "O"},
    {"name": "OA", "op": "sum", "of": ["O", "A"]},
    {"name": "H", "op": "heller", "of": "k"},
    {"name": "H0", "op": "summand", "of": "H", "index": 0},
    {"name": "H1", "op": "summand", "of": "H", "index": 1},
    {"name": "Rk", "op": "R", "of": "k"}
  ],
  "checks": [
    {"check": "decompose", "module": "H", "expect": {"summand_ranks": [1, 2]}, "anchor": "heller-reiner"},
    {"check": "isomorphic", "a": "H", "b_module": "OA", "expect": {"isomorphic": true}, "anchor": "heller-reiner"},
    {"check": "knorr", "module": "H0", "expect": {"is_knorr": true, "a": 1}, "anchor": "heller-reiner"},
    {"check": "knorr", "module": "H1", "expect": {"is_knorr": true, "a": 1}, "anchor": "heller-reiner"},
    {"check": "stable_hom", "source": "H0", "target": "H0", "expect": {"factors": [1]}, "anchor": "heller-reiner"},
    {"check": "stable_hom", "source": "H1", "target": "H1", "expect": {"factors": [1]}, "anchor": "heller-reiner"},
    {"check": "stable_hom", "source": "Rk", "target": "Rk", "expect": {"dim_k": 2}, "anchor": "stable-hom-RS-RT"}
  ]
})");
        t["ramified-c3-e2"] = json::parse(R"({
  "name": "ramified-c3-e2",
  "ring": {"p": 3, "e": 2, "m": 4},
  "group": "C3",
  "modules": [
    {"name": "k", "op": "trivial", "b": 1},
    {"name": "J2", "op": "jordan", "length": 2},
    {"name": "O", "op": "trivial"}
  ],
  "checks": [
    {"check": "heller_indecomposable", "module": "k"},
    {"check": "heller_indecomposable", "module": "J2"},
    {"check": "rk", "module": "k"},
    {"check": "rk", "module": "J2"},
    {"check": "trivial_extension", "module": "k"},
    {"check": "trivial_extension", "module": "J2"},
    {"check": "reduced_ar", "module": "k"},
    {"check": "reduced_ar", "module": "J2"},
    {"check": "counit_surjective", "module": "k"},
    {"check": "counit_surjective", "module": "J2"},
    {"check": "middle_term", "module": "O"}
  ]
})");
        t["unramified-c5"] = json::parse(R"({
  "name": "unramified-c5",
  "ring": {"p": 5, "e": 1, "m": 5},
  "group": "C5",
  "modules": [
    {"name": "M", "op": "jordan", "length": 2},
    {"name": "O", "op": "trivial"},
    {"name": "A", "op": "syzygy", "of": "O"},
    {"name": "OA", "op": "sum", "of": ["O", "A"]},
    {"name": "RM", "op": "R", "of": "M"}
  ],
  "checks": [
    {"check": "rk", "module": "M", "expect": {"holds": false}, "claim": "unramified: RM / pi is not M + Omega_k^-1 M", "anchor": "unramified-contrast"},
    {"check": "isomorphic", "a": "RM", "b_module": "OA", "expect": {"isomorphic": true}, "claim": "unramified: RM = O + Omega O", "anchor": "unramified-contrast"}
  ]
})");
        const char* knorr = R"({
  "ring": {"p": 2, "e": 1, "m": 7},
  "modules": [{"name": "O", "op": "trivial"}],
  "checks": [{"check": "middle_term", "module": "O"}, {"check": "knorr", "module": "O"}]
})";
        auto knorr_case = [&](const std::string& name, json group, std::int64_t p, int e, int m, int a) {
            json j = json::parse(knorr);
            j["name"] = name;
            j["group"] = group;
            j["ring"] = json{{"p", p}, {"e", e}, {"m", m}};
            j["checks"][1]["expect"] = json{{"is_knorr", true}, {"a", a}};
            t[name] = j;
        };
        knorr_case("knorr-c2xc2", "C2xC2", 2, 1, 7, 2);
        knorr_case("knorr-c4", "C4", 2, 1, 7, 2);
        knorr_case("knorr-c3-e2", "C3", 3, 2, 4, 2);
        knorr_case("knorr-c3-e1", "C3", 3, 1, 8, 1);
        return t;
    }();
    return table;
}

// ---- sweep ----

/// Sweep precision: reductions M / pi^b with b < a <= e nu_p(|G|) lose b digits
/// of trust in their syzygies, so N must exceed the Maranda threshold by e nu.
inline int sweep_m(std::int64_t p, int e, const GroupTable& G) {
    const int need = 3 * e * vp(G.order(), p) + 1;
    return std::max(default_m(p, e, G), (need + e - 1) / e);
}

struct SweepConfig {
    std::vector<std::int64_t> primes{2, 3};
    std::vector<int> ramification{1, 2};
    std::vector<std::string> groups{"C2", "C3", "C4", "C2xC2", "C6", "S3", "C8", "C4xC2", "C2xC2xC2", "D8", "Q8", "C9", "C3xC3"};
    std::optional<int> m;   // default: sweep_m per group
    int precision_bump = 0;
    int max_rank = 12;
    int workers = 0;        // 0: hardware concurrency
    std::uint64_t seed = kDefaultSeed;
    std::set<std::string> suites;  // empty: all
};

inline SweepConfig parse_sweep_config(const json& j) {
    try {
        SweepConfig c;
        if (j.contains("p")) c.primes = j.at("p").get<std::vector<std::int64_t>>();
        if (j.contains("e")) c.ramification = j.at("e").get<std::vector<int>>();
        if (j.contains("groups")) {
            c.groups.clear();
            for (auto& g : j.at("groups")) c.groups.push_back(g.is_string() ? g.get<std::string>() : g.dump());
        }
        if (j.contains("m")) c.m = j.at("m").get<int>();
        c.max_rank = j.value("max_rank", c.max_rank);
        c.workers = j.value("workers", c.workers);
        c.seed = j.value("seed", c.seed);
        if (j.contains("suites")) {
            auto v = j.at("suites").get<std::vector<std::string>>();
            c.suites = {v.begin(), v.end()};
        }
        for (auto& g : c.groups) parse_group(g.front() == '{' ? json::parse(g) : json(g));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("sweep config: ") + e.what());
    }
}

inline std::vector<Report> run_suites(const SweepCatalog& C, const std::set<std::string>& only) {
    auto want = [&](const char* n) { return only.empty() || only.count(n); };
    std::vector<Report> out;
    auto append = [&](std::vector<Report> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (want("adjunction")) append(suite_adjunction(C));
    if (want("kernel-of-R")) append(suite_kernel_of_R(C));
    if (want("counit-surjective")) append(suite_counit_surjective(C));
    if (want("syzygy-adjointness")) append(suite_heller_cosyzygy(C));
    if (want("reduction-injective")) append(suite_breakdown(C));
    if (want("pullback-ladder")) append(suite_pullback_ladder(C));
    if (want("reduction-two-summands")) append(suite_two_summands(C));
    if (want("exponent-one")) append(suite_exponent_one(C));
    if (want("split-mod-pi")) append(suite_split_mod_pi(C));
    if (want("simples")) append(suite_simples(C));
    if (want("sylow-exponent")) append(suite_sylow_exponent(C));
    if (want("precision-stability")) append(suite_maranda(C));
    if (want("knorr")) append(suite_knorr(C));
    if (want("ramified")) append(suite_ramified(C));
    return out;
}

struct SweepResult {
    json configurations = json::array();
    std::vector<Report> reports;
};

/// One (group, p, e) configuration per task on a worker pool; results are
/// merged in configuration order, so output does not depend on scheduling.
inline SweepResult run_sweep(const SweepConfig& cfg) {
    struct Task {
        std::string group;
        std::int64_t p;
        int e;
    };
    std::vector<Task> tasks;
    for (auto& g : cfg.groups)
        for (auto p : cfg.primes)
            for (int e : cfg.ramification) tasks.push_back({g, p, e});
    std::vector<json> confs(tasks.size());
    std::vector<std::vector<Report>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next++) < tasks.size();) {
            const Task& t = tasks[i];
            json gj = t.group.front() == '{' ? json::parse(t.group) : json(t.group);
            auto [G, name] = parse_group(gj);
            int m = cfg.m ? *cfg.m : sweep_m(t.p, t.e, *G);
            m += cfg.precision_bump;
            json conf{{"group", name}, {"order", G->n}, {"p", t.p}, {"e", t.e}, {"m", m}};
            try {
                RingSpec spec = ring_make(t.p, t.e, m);
                SweepCatalog C = build_sweep_catalog(spec, G, name, cfg.seed, cfg.max_rank);
                conf["kg_modules"] = C.kg.size();
                conf["lattices"] = C.lattices.size();
                conf["partial"] = !C.skipped.empty();
                if (!C.skipped.empty()) conf["skipped"] = C.skipped;
                results[i] = run_suites(C, cfg.suites);
            } catch (const precision_error& e) {
                Report r{"catalog construction", "catalog", conf, json::object(), Verdict::Indeterminate, std::string("precision: ") + e.what(), true};
                results[i] = {r};
                conf["partial"] = true;
            } catch (const indeterminate_error& e) {
                Report r{"catalog construction", "catalog", conf, json::object(), Verdict::Indeterminate, std::string("search bound: ") + e.what(), false};
                results[i] = {r};
                conf["partial"] = true;
            }
            confs[i] = conf;
        }
    };
    int n = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min<int>(n, static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    SweepResult out;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        out.configurations.push_back(confs[i]);
        out.reports.insert(out.reports.end(), results[i].begin(), results[i].end());
    }
    return out;
}

/// JSON document for a list of reports.
inline json report_document(const std::string& title, const std::vector<Report>& reports, const json& extra = json::object()) {
    json doc;
    doc["title"] = title;
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    json arr = json::array();
    Tally t;
    for (auto& r : reports) {
        arr.push_back(to_json(r));
        t.add(r);
    }
    doc["reports"] = arr;
    doc["summary"] = t.to_json();
    return doc;
}

}  // namespace modrep
