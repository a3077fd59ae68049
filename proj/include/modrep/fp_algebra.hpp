#pragma once

// Finite-dimensional associative algebras over F_p given by structure
// constants: Jacobson radical, idempotents, locality.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "modrep/dvr.hpp"
#include "modrep/linalg.hpp"

namespace modrep {

struct FpAlgebra {
    int p = 2;
    int dim = 0;
    std::vector<int> c;  // b_i b_j = sum_k c[(i*dim + j)*dim + k] b_k
    fp::Vec one;

    int& at(int i, int j, int k) { return c[(std::size_t(i) * dim + j) * dim + k]; }
    int at(int i, int j, int k) const { return c[(std::size_t(i) * dim + j) * dim + k]; }

    fp::Vec zero() const { return fp::Vec(dim, 0); }
    fp::Vec unit(int i) const {
        fp::Vec v(dim, 0);
        v[i] = 1;
        return v;
    }

    fp::Vec mul(const fp::Vec& a, const fp::Vec& b) const {
        std::vector<long long> acc(dim, 0);
        for (int i = 0; i < dim; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < dim; ++j) {
                if (!b[j]) continue;
                long long s = 1LL * a[i] * b[j] % p;
                const int* row = &c[(std::size_t(i) * dim + j) * dim];
                for (int k = 0; k < dim; ++k)
                    if (row[k]) acc[k] += s * row[k];
            }
        }
        fp::Vec r(dim);
        for (int k = 0; k < dim; ++k) r[k] = static_cast<int>(acc[k] % p);
        return r;
    }

    fp::Vec add(const fp::Vec& a, const fp::Vec& b, int sb = 1) const {
        fp::Vec r(dim);
        for (int k = 0; k < dim; ++k) r[k] = fp::norm(a[k] + 1LL * sb * b[k], p);
        return r;
    }
    fp::Vec scale(const fp::Vec& a, int s) const {
        fp::Vec r(dim);
        for (int k = 0; k < dim; ++k) r[k] = fp::norm(1LL * a[k] * s, p);
        return r;
    }
    fp::Vec pow(fp::Vec a, long long n) const {
        fp::Vec r = one;
        while (n > 0) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }
    static bool is_zero(const fp::Vec& a) {
        for (int x : a)
            if (x) return false;
        return true;
    }

    /// Matrix of y -> a*y: column j is a*b_j.
    fp::Matrix left_matrix(const fp::Vec& a) const {
        fp::Matrix L(dim, fp::Vec(dim, 0));
        for (int j = 0; j < dim; ++j) {
            fp::Vec col = mul(a, unit(j));
            for (int k = 0; k < dim; ++k) L[k][j] = col[k];
        }
        return L;
    }

    /// Structure-constant sanity: associativity on basis triples and unit.
    bool check() const {
        for (int i = 0; i < dim; ++i) {
            if (mul(one, unit(i)) != unit(i) || mul(unit(i), one) != unit(i)) return false;
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    if (mul(mul(unit(i), unit(j)), unit(k)) != mul(unit(i), mul(unit(j), unit(k)))) return false;
        }
        return true;
    }
};

/// Structure constants for the algebra spanned by `basis` (rows, vectors in
/// the coordinates of A), which must be closed under multiplication and
/// contain `one` (given in A's coordinates).
inline FpAlgebra subalgebra(const FpAlgebra& A, const fp::Matrix& basis, const fp::Vec& one) {
    const int d = static_cast<int>(basis.size());
    FpAlgebra S;
    S.p = A.p;
    S.dim = d;
    S.c.assign(std::size_t(d) * d * d, 0);
    fp::Matrix BT = fp::transpose(basis, A.dim);  // A.dim x d, columns are basis vectors
    auto coords = [&](const fp::Vec& v) {
        auto x = fp::solve(BT, v, d, A.p);
        if (!x) throw std::logic_error("subalgebra: product leaves the span");
        return *x;
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            fp::Vec x = coords(A.mul(basis[i], basis[j]));
            for (int k = 0; k < d; ++k) S.at(i, j, k) = x[k];
        }
    S.one = d ? coords(one) : fp::Vec{};
    return S;
}

namespace detail {

// Integer matrix power modulo q (entries already reduced).
inline std::vector<std::vector<std::int64_t>> matpow_mod(std::vector<std::vector<std::int64_t>> a, long long n,
                                                         std::int64_t q) {
    const int d = static_cast<int>(a.size());
    std::vector<std::vector<std::int64_t>> r(d, std::vector<std::int64_t>(d, 0));
    for (int i = 0; i < d; ++i) r[i][i] = 1 % q;
    auto mm = [&](const auto& x, const auto& y) {
        std::vector<std::vector<std::int64_t>> z(d, std::vector<std::int64_t>(d, 0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                if (!x[i][k]) continue;
                for (int j = 0; j < d; ++j) z[i][j] = static_cast<std::int64_t>((z[i][j] + (__int128)x[i][k] * y[k][j]) % q);
            }
        return z;
    };
    while (n > 0) {
        if (n & 1) r = mm(r, a);
        a = mm(a, a);
        n >>= 1;
    }
    return r;
}

}  // namespace detail

/// Jacobson radical of A, as a row basis.  Chain of ideals
/// I_{-1} = A, I_i = {x in I_{i-1} : g_i(xy) = 0 for all y}, where
/// g_i(a) = Tr(L~_a^{p^i}) / p^i mod p for an integral lift L~_a of the left
/// regular matrix; J = I_l with l = floor(log_p dim).  For p > dim this is
/// Dickson's trace-form radical.
inline fp::Matrix radical_basis(const FpAlgebra& A) {
    const int n = A.dim, p = A.p;
    if (n == 0) return {};
    int l = 0;
    for (long long t = p; t <= n; t *= p) ++l;
    fp::Matrix I;
    for (int i = 0; i < n; ++i) I.push_back(A.unit(i));
    long long pi = 1;  // p^i
    for (int i = 0; i <= l && !I.empty(); ++i, pi *= p) {
        const std::int64_t q = pi * p;  // compute mod p^{i+1}
        auto g = [&](const fp::Vec& a) {
            auto L = A.left_matrix(a);
            std::vector<std::vector<std::int64_t>> Z(n, std::vector<std::int64_t>(n));
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) Z[r][s] = L[r][s];
            auto P = detail::matpow_mod(Z, pi, q);
            std::int64_t tr = 0;
            for (int r = 0; r < n; ++r) tr = (tr + P[r][r]) % q;
            if (tr % pi != 0) throw std::logic_error("radical_basis: trace not divisible, chain broken");
            return static_cast<int>((tr / pi) % p);
        };
        const int k = static_cast<int>(I.size());
        fp::Matrix M(n, fp::Vec(k));
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < k; ++t) M[j][t] = g(A.mul(I[t], A.unit(j)));
        fp::Matrix ns = fp::nullspace(M, k, p);
        fp::Matrix next;
        for (auto& cvec : ns) {
            fp::Vec v(n, 0);
            for (int t = 0; t < k; ++t)
                if (cvec[t])
                    for (int s = 0; s < n; ++s) v[s] = fp::norm(v[s] + 1LL * cvec[t] * I[t][s], p);
            next.push_back(v);
        }
        I = fp::row_basis(next, p);
    }
    return I;
}

/// Idempotent e in k[x] with x invertible on eA and nilpotent on (1-e)A.
inline fp::Vec fitting_idempotent(const FpAlgebra& A, const fp::Vec& x) {
    const int n = A.dim, p = A.p;
    fp::Vec y = A.pow(x, n);
    if (FpAlgebra::is_zero(y)) return A.zero();
    // basis of k[x]: powers until dependent
    fp::Matrix pw;
    fp::Vec cur = A.one;
    for (int t = 0; t <= n; ++t) {
        fp::Matrix test = pw;
        test.push_back(cur);
        if (fp::rank(test, p) <= static_cast<int>(pw.size())) break;
        pw.push_back(cur);
        cur = A.mul(cur, x);
    }
    const int d = static_cast<int>(pw.size());
    fp::Vec y2 = A.mul(y, y);
    fp::Matrix cols(n, fp::Vec(d));
    for (int t = 0; t < d; ++t) {
        fp::Vec v = A.mul(y2, pw[t]);
        for (int s = 0; s < n; ++s) cols[s][t] = v[s];
    }
    auto z = fp::solve(cols, y, d, p);
    if (!z) throw std::logic_error("fitting_idempotent: no solution of y^2 z = y");
    fp::Vec zz = A.zero();
    for (int t = 0; t < d; ++t) zz = A.add(zz, A.scale(pw[t], (*z)[t]));
    fp::Vec e = A.mul(y, zz);
    if (A.mul(e, e) != e) throw std::logic_error("fitting_idempotent: result not idempotent");
    return e;
}

/// Cubic Newton step e <- 3e^2 - 2e^3 until idempotent (J nilpotent).
inline fp::Vec lift_idempotent(const FpAlgebra& A, fp::Vec e) {
    for (int it = 0; it < 64; ++it) {
        fp::Vec e2 = A.mul(e, e);
        if (e2 == e) return e;
        fp::Vec e3 = A.mul(e2, e);
        e = A.add(A.scale(e2, 3), A.scale(e3, -2));
    }
    throw std::logic_error("lift_idempotent: no convergence");
}

/// A/J with a complement basis (rows in A's coordinates) representing it.
struct Semisimple {
    FpAlgebra alg;
    fp::Matrix lift;  // lift[i] in A represents basis element i of A/J
};

inline Semisimple semisimple_quotient(const FpAlgebra& A, const fp::Matrix& J) {
    const int n = A.dim, p = A.p;
    Semisimple S;
    // extend J to a basis of A by unit vectors
    fp::Matrix full = J;
    for (int i = 0; i < n && static_cast<int>(full.size()) < n; ++i) {
        fp::Matrix t = full;
        t.push_back(A.unit(i));
        if (fp::rank(t, p) > static_cast<int>(full.size())) {
            full.push_back(A.unit(i));
            S.lift.push_back(A.unit(i));
        }
    }
    const int jd = static_cast<int>(J.size()), d = n - jd;
    fp::Matrix FT = fp::transpose(full, n);
    auto qcoords = [&](const fp::Vec& v) {
        auto x = fp::solve(FT, v, n, p);
        if (!x) throw std::logic_error("semisimple_quotient: basis incomplete");
        return fp::Vec(x->begin() + jd, x->end());
    };
    S.alg.p = p;
    S.alg.dim = d;
    S.alg.c.assign(std::size_t(d) * d * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            fp::Vec x = qcoords(A.mul(S.lift[i], S.lift[j]));
            for (int k = 0; k < d; ++k) S.alg.at(i, j, k) = x[k];
        }
    S.alg.one = qcoords(A.one);
    return S;
}

inline fp::Vec lift_from_quotient(const FpAlgebra& A, const Semisimple& S, const fp::Vec& v) {
    fp::Vec r = A.zero();
    for (int i = 0; i < S.alg.dim; ++i)
        if (v[i]) r = A.add(r, A.scale(S.lift[i], v[i]));
    return r;
}

/// Center of A as a row basis.
inline fp::Matrix center_basis(const FpAlgebra& A) {
    const int n = A.dim, p = A.p;
    fp::Matrix M;
    for (int j = 0; j < n; ++j) {
        // z b_j - b_j z = sum_i z_i (b_i b_j - b_j b_i)
        for (int k = 0; k < n; ++k) {
            fp::Vec row(n);
            for (int i = 0; i < n; ++i) row[i] = fp::norm(A.at(i, j, k) - A.at(j, i, k), p);
            M.push_back(row);
        }
    }
    return fp::nullspace(M, n, p);
}

enum class Locality { Local, Split, Indeterminate };

struct IdempotentSearch {
    Locality verdict = Locality::Local;
    fp::Vec idempotent;  // nontrivial idempotent of A when verdict == Split
    int radical_dim = 0;
};

struct SearchBounds {
    int random_trials = 64;
    double exhaustive_limit = 1e6;
};

/// Decides whether A is local; if not, returns a nontrivial idempotent.
/// A is local iff A/J is a field.  Central idempotents of A/J are found
/// deterministically from the Frobenius-fixed part of the center; a simple
/// but non-commutative A/J is split by a randomized then exhaustive search
/// for an element that is neither a unit nor nilpotent.
inline IdempotentSearch find_idempotent(const FpAlgebra& A, std::mt19937_64& rng, SearchBounds bounds = {}) {
    IdempotentSearch out;
    const int p = A.p;
    if (A.dim == 0) throw std::invalid_argument("find_idempotent: zero algebra");
    fp::Matrix J = radical_basis(A);
    out.radical_dim = static_cast<int>(J.size());
    Semisimple S = semisimple_quotient(A, J);
    const FpAlgebra& B = S.alg;
    if (B.dim == 1) return out;

    auto accept = [&](const fp::Vec& ebar) {
        if (FpAlgebra::is_zero(ebar) || ebar == B.one) return false;
        out.idempotent = lift_idempotent(A, lift_from_quotient(A, S, ebar));
        out.verdict = Locality::Split;
        return true;
    };

    fp::Matrix Z = center_basis(B);
    const int zd = static_cast<int>(Z.size());
    // Frobenius-fixed subalgebra of the (commutative) center
    fp::Matrix F(B.dim, fp::Vec(zd));
    for (int i = 0; i < zd; ++i) {
        fp::Vec v = B.add(B.pow(Z[i], p), Z[i], -1);
        for (int k = 0; k < B.dim; ++k) F[k][i] = v[k];
    }
    fp::Matrix fixed = fp::nullspace(F, zd, p);
    if (fixed.size() > 1) {
        for (auto& cvec : fixed) {
            fp::Vec z = B.zero();
            for (int i = 0; i < zd; ++i) z = B.add(z, B.scale(Z[i], cvec[i]));
            // z^p = z: split by eigenvalue
            for (int lam = 0; lam < p; ++lam) {
                fp::Vec x = B.add(z, B.scale(B.one, lam), -1);
                if (accept(fitting_idempotent(B, x))) return out;
            }
        }
        throw std::logic_error("find_idempotent: central split expected but not found");
    }
    if (zd == B.dim) return out;  // simple and commutative: a field

    auto try_elem = [&](const fp::Vec& x) {
        for (int lam = 0; lam < p; ++lam)
            if (accept(fitting_idempotent(B, B.add(x, B.scale(B.one, lam), -1)))) return true;
        return false;
    };
    std::uniform_int_distribution<int> dist(0, p - 1);
    for (int t = 0; t < bounds.random_trials; ++t) {
        fp::Vec x(B.dim);
        for (auto& v : x) v = dist(rng);
        if (try_elem(x)) return out;
    }
    double total = 1;
    for (int i = 0; i < B.dim; ++i) total *= p;
    if (total <= bounds.exhaustive_limit) {
        fp::Vec x(B.dim, 0);
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
            long long r = idx;
            for (int i = 0; i < B.dim; ++i) {
                x[i] = static_cast<int>(r % p);
                r /= p;
            }
            if (try_elem(x)) return out;
        }
        throw std::logic_error("find_idempotent: simple non-commutative quotient without zero divisors");
    }
    out.verdict = Locality::Indeterminate;
    return out;
}

/// The corner algebra eAe with its basis (rows in A's coordinates).
struct Corner {
    FpAlgebra alg;
    fp::Matrix basis;
};

inline Corner corner(const FpAlgebra& A, const fp::Vec& e) {
    fp::Matrix gens;
    for (int i = 0; i < A.dim; ++i) gens.push_back(A.mul(A.mul(e, A.unit(i)), e));
    Corner C;
    C.basis = fp::row_basis(gens, A.p);
    C.alg = subalgebra(A, C.basis, e);
    return C;
}

/// Complete set of primitive orthogonal idempotents summing to 1.
inline std::vector<fp::Vec> primitive_idempotents(const FpAlgebra& A, std::mt19937_64& rng, SearchBounds bounds = {}) {
    std::vector<fp::Vec> out;
    std::vector<fp::Vec> todo{A.one};
    while (!todo.empty()) {
        fp::Vec e = todo.back();
        todo.pop_back();
        Corner C = corner(A, e);
        IdempotentSearch s = find_idempotent(C.alg, rng, bounds);
        if (s.verdict == Locality::Indeterminate) throw indeterminate_error("primitive_idempotents: search bound reached");
        if (s.verdict == Locality::Local) {
            out.push_back(e);
            continue;
        }
        fp::Vec f = A.zero();
        for (int i = 0; i < C.alg.dim; ++i) f = A.add(f, A.scale(C.basis[i], s.idempotent[i]));
        todo.push_back(f);
        todo.push_back(A.add(e, f, -1));
    }
    return out;
}

/// Algebra of n x n matrices over F_p given as a list of spanning matrices
/// (closed under products, containing I).  Basis in flattened form.
inline FpAlgebra algebra_from_matrices(const std::vector<fp::Matrix>& span, int p) {
    const int n = span.empty() ? 0 : static_cast<int>(span[0].size());
    fp::Matrix flat;
    for (auto& m : span) {
        fp::Vec v;
        for (auto& r : m) v.insert(v.end(), r.begin(), r.end());
        flat.push_back(v);
    }
    fp::Matrix basis = fp::row_basis(flat, p);
    // ambient algebra M_n(F_p) structure is implicit: multiply unflattened
    const int d = static_cast<int>(basis.size());
    fp::Matrix BT = fp::transpose(basis, n * n);
    auto coords = [&](const fp::Vec& v) {
        auto x = fp::solve(BT, v, d, p);
        if (!x) throw std::invalid_argument("algebra_from_matrices: span not closed under products");
        return *x;
    };
    auto unflat = [&](const fp::Vec& v) {
        fp::Matrix m(n, fp::Vec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = v[i * n + j];
        return m;
    };
    FpAlgebra A;
    A.p = p;
    A.dim = d;
    A.c.assign(std::size_t(d) * d * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            fp::Matrix prod = fp::mul(unflat(basis[i]), unflat(basis[j]), p);
            fp::Vec v;
            for (auto& r : prod) v.insert(v.end(), r.begin(), r.end());
            fp::Vec x = coords(v);
            for (int k = 0; k < d; ++k) A.at(i, j, k) = x[k];
        }
    fp::Vec idv(n * n, 0);
    for (int i = 0; i < n; ++i) idv[i * n + i] = 1;
    A.one = coords(idv);
    return A;
}

}  // namespace modrep
