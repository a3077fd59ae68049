#pragma once

// Dense matrices over O/pi^w and Smith normal form.
//
// Everything is exact: there is no thresholding anywhere.  Entries with
// valuation >= w are zeros of the truncated ring.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modrep/dvr.hpp"

namespace modrep {

class Mat {
public:
    Mat() = default;
    Mat(Ring ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

    static Mat zeros(Ring ring, int rows, int cols) { return Mat(ring, rows, cols); }
    static Mat identity(Ring ring, int n) {
        Mat I(ring, n, n);
        for (int i = 0; i < n; ++i) I(i, i) = ring.one();
        return I;
    }
    static Mat scalar(Ring ring, int n, const Elem& s) {
        Mat I(ring, n, n);
        for (int i = 0; i < n; ++i) I(i, i) = s;
        return I;
    }
    /// Integer matrix, entries read as elements of Z inside O.
    static Mat from_ints(Ring ring, const std::vector<std::vector<std::int64_t>>& v) {
        int r = static_cast<int>(v.size());
        int c = r ? static_cast<int>(v[0].size()) : 0;
        Mat M(ring, r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(v[i].size()) != c) throw std::invalid_argument("Mat::from_ints: ragged rows");
            for (int j = 0; j < c; ++j) M(i, j) = ring.from_int(v[i][j]);
        }
        return M;
    }

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elem& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const Elem& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && ring_ == o.ring_ && data_ == o.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!ring_.is_zero(x)) return false;
        return true;
    }

    /// Minimal valuation of the entries (w for the zero matrix).
    int min_val() const {
        int v = ring_.w();
        for (const auto& x : data_) v = std::min(v, ring_.val(x));
        return v;
    }

    /// Same coefficients read at a different precision.  Going down reduces,
    /// going up picks the canonical lift.
    Mat at(int w) const {
        Ring r = ring_.at(w);
        Mat M(r, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) M.data_[k] = r.reduce(data_[k]);
        return M;
    }

    Mat transpose() const {
        Mat T(ring_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
        return T;
    }

    Mat block(int r0, int c0, int nr, int nc) const {
        Mat B(ring_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) B(i, j) = (*this)(r0 + i, c0 + j);
        return B;
    }
    Mat row_block(int r0, int nr) const { return block(r0, 0, nr, cols_); }
    Mat col_block(int c0, int nc) const { return block(0, c0, rows_, nc); }

    void set_block(int r0, int c0, const Mat& B) {
        for (int i = 0; i < B.rows(); ++i)
            for (int j = 0; j < B.cols(); ++j) (*this)(r0 + i, c0 + j) = ring_.reduce(B(i, j));
    }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat R(ring_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) R.data_[k] = ring_.add(data_[k], o.data_[k]);
        return R;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat R(ring_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) R.data_[k] = ring_.sub(data_[k], o.data_[k]);
        return R;
    }
    Mat operator-() const {
        Mat R(ring_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) R.data_[k] = ring_.neg(data_[k]);
        return R;
    }
    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
        const Ring& r = ring_.w() <= o.ring_.w() ? ring_ : o.ring_;
        Mat R(r, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Elem& a = (*this)(i, k);
                if (r.is_zero(r.reduce(a))) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Elem& b = o(k, j);
                    if (b == Elem{}) continue;
                    R(i, j) = r.add(R(i, j), r.mul(a, b));
                }
            }
        return R;
    }
    Mat scaled(const Elem& s) const {
        Mat R(ring_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) R.data_[k] = ring_.mul(s, data_[k]);
        return R;
    }

    /// Matrix of residues mod pi, entries in [0, p).
    std::vector<std::vector<int>> residues() const {
        std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i][j] = static_cast<int>(ring_.residue((*this)(i, j)));
        return out;
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row_dst -= q * row_src
    void row_axpy(int dst, int src, const Elem& q) {
        if (ring_.is_zero(q)) return;
        for (int j = 0; j < cols_; ++j) {
            const Elem& s = (*this)(src, j);
            if (s == Elem{}) continue;
            (*this)(dst, j) = ring_.sub((*this)(dst, j), ring_.mul(q, s));
        }
    }
    /// col_dst -= q * col_src
    void col_axpy(int dst, int src, const Elem& q) {
        if (ring_.is_zero(q)) return;
        for (int i = 0; i < rows_; ++i) {
            const Elem& s = (*this)(i, src);
            if (s == Elem{}) continue;
            (*this)(i, dst) = ring_.sub((*this)(i, dst), ring_.mul(q, s));
        }
    }
    void scale_row(int i, const Elem& s) {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = ring_.mul(s, (*this)(i, j));
    }
    void scale_col(int j, const Elem& s) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = ring_.mul(s, (*this)(i, j));
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += ring_.to_string((*this)(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void check_same(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
    }

    Ring ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Elem> data_;
};

inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat R(a.ring(), a.rows(), a.cols() + b.cols());
    R.set_block(0, 0, a);
    R.set_block(0, a.cols(), b);
    return R;
}

inline Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Mat R(a.ring(), a.rows() + b.rows(), a.cols());
    R.set_block(0, 0, a);
    R.set_block(a.rows(), 0, b);
    return R;
}

inline Mat block_diag(const Mat& a, const Mat& b) {
    Mat R(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    R.set_block(0, 0, a);
    R.set_block(a.rows(), a.cols(), b);
    return R;
}

/// Flatten to a 1 x (rows*cols) row vector, row-major.
inline Mat vec(const Mat& a) {
    Mat v(a.ring(), 1, a.rows() * a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) v(0, i * a.cols() + j) = a(i, j);
    return v;
}

inline Mat unvec(const Mat& v, int row, int rows, int cols) {
    Mat a(v.ring(), rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = v(row, i * cols + j);
    return a;
}

/// U * A * V = diag(pi^{d_0}, pi^{d_1}, ...), U and V unimodular.
struct SmithForm {
    Mat U, V, Uinv, Vinv;
    std::vector<int> d;  // length min(rows, cols), nondecreasing, d_i = w means zero
    Mat D;               // the diagonal matrix itself
};

struct SmithOptions {
    bool track_U = true;
    bool track_V = true;
};

/// Pivot on the lexicographically first entry of minimal valuation, normalize
/// it to pi^v, clear its row and column, and recurse.
inline SmithForm smith(const Mat& A, SmithOptions opt = {}) {
    const Ring& R = A.ring();
    const int m = A.rows(), n = A.cols(), w = R.w();
    SmithForm S;
    S.D = A;
    Mat& D = S.D;
    if (opt.track_U) {
        S.U = Mat::identity(R, m);
        S.Uinv = Mat::identity(R, m);
    }
    if (opt.track_V) {
        S.V = Mat::identity(R, n);
        S.Vinv = Mat::identity(R, n);
    }
    const int r = std::min(m, n);
    S.d.assign(r, w);
    for (int k = 0; k < r; ++k) {
        int best = w, bi = -1, bj = -1;
        for (int i = k; i < m && best > 0; ++i)
            for (int j = k; j < n; ++j) {
                int v = R.val(D(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (bi < 0) break;  // remaining block is zero
        D.swap_rows(k, bi);
        if (opt.track_U) {
            S.U.swap_rows(k, bi);
            S.Uinv.swap_cols(k, bi);
        }
        D.swap_cols(k, bj);
        if (opt.track_V) {
            S.V.swap_cols(k, bj);
            S.Vinv.swap_rows(k, bj);
        }
        const int v = best;
        Elem u = R.div_pi(D(k, k), v);
        Elem uinv = R.inv(u);
        D.scale_row(k, uinv);
        if (opt.track_U) {
            S.U.scale_row(k, uinv);
            S.Uinv.scale_col(k, u);
        }
        for (int i = k + 1; i < m; ++i) {
            if (R.is_zero(D(i, k))) continue;
            Elem q = R.div_pi(D(i, k), v);
            D.row_axpy(i, k, q);
            if (opt.track_U) {
                S.U.row_axpy(i, k, q);
                S.Uinv.col_axpy(k, i, R.neg(q));
            }
        }
        for (int j = k + 1; j < n; ++j) {
            if (R.is_zero(D(k, j))) continue;
            Elem q = R.div_pi(D(k, j), v);
            D.col_axpy(j, k, q);
            if (opt.track_V) {
                S.V.col_axpy(j, k, q);
                S.Vinv.row_axpy(k, j, R.neg(q));
            }
        }
        S.d[k] = v;
    }
    return S;
}

/// Inverse of a unimodular matrix (throws if not invertible).
inline Mat inverse(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: non-square");
    SmithForm S = smith(A);
    for (int x : S.d)
        if (x != 0) throw std::domain_error("inverse: matrix is not invertible");
    // U A V = I  =>  A^{-1} = V U
    return S.V * S.U;
}

/// Invertibility over O/pi^w is decided mod pi.
bool is_invertible_mod_p(const std::vector<std::vector<int>>& a, int p);

inline bool is_invertible(const Mat& A) {
    if (A.rows() != A.cols()) return false;
    if (A.rows() == 0) return true;
    return is_invertible_mod_p(A.residues(), static_cast<int>(A.ring().p()));
}

/// x with A x = b, or nullopt when no solution exists at working precision.
inline std::optional<Mat> solve(const Mat& A, const Mat& b) {
    if (A.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    const Ring& R = A.ring();
    SmithForm S = smith(A);
    Mat c = S.U * b;
    const int m = A.rows(), n = A.cols(), r = std::min(m, n);
    Mat y(R, n, b.cols());
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < b.cols(); ++k) {
            int need = i < r ? S.d[i] : R.w();
            if (R.val(c(i, k)) < need) return std::nullopt;
            if (i < r && S.d[i] < R.w()) y(i, k) = R.div_pi(c(i, k), S.d[i]);
        }
    return S.V * y;
}

/// A finitely generated submodule of O_w^n presented in a Smith-adapted basis:
/// the module is the direct sum of pi^{shift_i} O u_i, where u_i are the rows
/// of `basis` (unimodular).  shift_i = w means u_i does not contribute.
struct AdaptedModule {
    Mat basis;      // n x n, rows u_i
    Mat basis_inv;  // basis * basis_inv = I
    std::vector<int> shift;

    int ambient() const { return basis.rows(); }
    int w() const { return basis.ring().w(); }

    /// Minimal generating set, as rows.
    Mat generators() const {
        const Ring& R = basis.ring();
        std::vector<int> idx = active();
        Mat G(R, static_cast<int>(idx.size()), ambient());
        for (std::size_t t = 0; t < idx.size(); ++t) {
            Elem s = R.pi_pow(shift[idx[t]]);
            for (int j = 0; j < ambient(); ++j) G(int(t), j) = R.mul(s, basis(idx[t], j));
        }
        return G;
    }

    std::vector<int> active() const {
        std::vector<int> idx;
        for (int i = 0; i < ambient(); ++i)
            if (shift[i] < w()) idx.push_back(i);
        return idx;
    }

    /// Cyclic-summand exponents: the module is the sum of O/pi^{w - shift_i}.
    std::vector<int> factor_exponents() const {
        std::vector<int> f;
        for (int i : active()) f.push_back(w() - shift[i]);
        std::sort(f.begin(), f.end());
        return f;
    }

    bool contains(const Mat& row) const {
        const Ring& R = basis.ring();
        Mat y = row * basis_inv;
        for (int i = 0; i < ambient(); ++i)
            if (R.val(y(0, i)) < shift[i]) return false;
        return true;
    }

    /// Coordinates c (one per active generator) with row = sum c_t gen_t.
    /// Throws if row is not in the module.
    std::vector<Elem> coords(const Mat& row) const {
        const Ring& R = basis.ring();
        Mat y = row * basis_inv;
        std::vector<Elem> c;
        for (int i = 0; i < ambient(); ++i) {
            int v = R.val(y(0, i));
            if (v < shift[i]) throw std::domain_error("AdaptedModule::coords: vector outside module");
            if (shift[i] < w()) c.push_back(R.div_pi(y(0, i), shift[i]));
        }
        return c;
    }
};

/// Row span of the rows of G.
inline AdaptedModule row_span(const Mat& G) {
    const Ring& R = G.ring();
    const int n = G.cols();
    AdaptedModule M;
    if (G.rows() == 0) {
        M.basis = Mat::identity(R, n);
        M.basis_inv = Mat::identity(R, n);
        M.shift.assign(n, R.w());
        return M;
    }
    SmithForm S = smith(G, {.track_U = false, .track_V = true});
    // G = U^{-1} D V^{-1}: row span is spanned by pi^{d_i} (row i of V^{-1})
    M.basis = S.Vinv;
    M.basis_inv = S.V;
    M.shift.assign(n, R.w());
    for (std::size_t i = 0; i < S.d.size(); ++i) M.shift[i] = S.d[i];
    return M;
}

/// {x : A x = 0} as a module of row vectors.
inline AdaptedModule right_kernel(const Mat& A) {
    const Ring& R = A.ring();
    const int m = A.rows(), n = A.cols(), w = R.w();
    AdaptedModule K;
    if (m == 0) {
        K.basis = Mat::identity(R, n);
        K.basis_inv = Mat::identity(R, n);
        K.shift.assign(n, 0);
        return K;
    }
    SmithForm S = smith(A, {.track_U = false, .track_V = true});
    K.basis = S.V.transpose();
    K.basis_inv = S.Vinv.transpose();
    K.shift.assign(n, 0);
    for (int i = 0; i < std::min(m, n); ++i) K.shift[i] = w - S.d[i];
    return K;
}

/// {x : x A = 0} as a module of row vectors.
inline AdaptedModule left_kernel(const Mat& A) {
    const Ring& R = A.ring();
    const int m = A.rows(), n = A.cols(), w = R.w();
    AdaptedModule K;
    if (n == 0) {
        K.basis = Mat::identity(R, m);
        K.basis_inv = Mat::identity(R, m);
        K.shift.assign(m, 0);
        return K;
    }
    SmithForm S = smith(A, {.track_U = true, .track_V = false});
    K.basis = S.U;
    K.basis_inv = S.Uinv;
    K.shift.assign(m, 0);
    for (int i = 0; i < std::min(m, n); ++i) K.shift[i] = w - S.d[i];
    return K;
}

/// Rows generating {x : x A = 0}; minimal (zero generators dropped).
inline Mat kernel_basis(const Mat& A) { return left_kernel(A).generators(); }

/// Exponents d_i with <gens>/<rels> = sum O/pi^{d_i}, zeros dropped, sorted.
inline std::vector<int> invariant_factors(const Mat& gens, const Mat& rels) {
    const Ring& R = gens.ring();
    const int g = gens.rows();
    if (g == 0) return {};
    Mat syz = kernel_basis(gens);
    Mat pres = syz;
    if (rels.rows() > 0) {
        auto c = solve(gens.transpose(), rels.transpose());
        if (!c) throw std::invalid_argument("invariant_factors: relations outside the span of the generators");
        pres = syz.rows() ? vstack(syz, c->transpose()) : c->transpose();
    }
    std::vector<int> out;
    if (pres.rows() == 0) {
        out.assign(g, R.w());
    } else {
        SmithForm S = smith(pres, {.track_U = false, .track_V = false});
        for (int i = 0; i < g; ++i) {
            int d = i < static_cast<int>(S.d.size()) ? S.d[i] : R.w();
            if (d > 0) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- small dense linear algebra over F_p (ints in [0, p)) ----

namespace fp {

using Vec = std::vector<int>;
using Matrix = std::vector<Vec>;

inline int norm(long long v, int p) {
    v %= p;
    return static_cast<int>(v < 0 ? v + p : v);
}

inline int inv(int a, int p) { return static_cast<int>(Ring::inv_mod(a, p)); }

/// Row-reduce in place; returns pivot columns.
inline std::vector<int> rref(Matrix& A, int p) {
    std::vector<int> piv;
    if (A.empty()) return piv;
    const int m = static_cast<int>(A.size()), n = static_cast<int>(A[0].size());
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int s = -1;
        for (int i = r; i < m; ++i)
            if (A[i][c] % p != 0) {
                s = i;
                break;
            }
        if (s < 0) continue;
        std::swap(A[r], A[s]);
        int iv = inv(A[r][c], p);
        for (int j = 0; j < n; ++j) A[r][j] = norm(1LL * A[r][j] * iv, p);
        for (int i = 0; i < m; ++i) {
            if (i == r || A[i][c] == 0) continue;
            int f = A[i][c];
            for (int j = 0; j < n; ++j) A[i][j] = norm(A[i][j] - 1LL * f * A[r][j], p);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline int rank(Matrix A, int p) { return static_cast<int>(rref(A, p).size()); }

/// Basis (rows) of the row space.
inline Matrix row_basis(Matrix A, int p) {
    auto piv = rref(A, p);
    A.resize(piv.size());
    return A;
}

/// Basis of {x : A x = 0} (x column vectors, returned as rows).
inline Matrix nullspace(Matrix A, int n, int p) {
    Matrix out;
    std::vector<int> piv;
    if (!A.empty()) piv = rref(A, p);
    std::vector<int> is_piv(n, -1);
    for (std::size_t k = 0; k < piv.size(); ++k) is_piv[piv[k]] = static_cast<int>(k);
    for (int f = 0; f < n; ++f) {
        if (is_piv[f] >= 0) continue;
        Vec x(n, 0);
        x[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = norm(-A[k][f], p);
        out.push_back(x);
    }
    return out;
}

/// Some x with A x = b, if any.
inline std::optional<Vec> solve(const Matrix& A, const Vec& b, int n, int p) {
    const int m = static_cast<int>(A.size());
    Matrix Ab(m, Vec(n + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) Ab[i][j] = A[i][j];
        Ab[i][n] = b[i];
    }
    auto piv = rref(Ab, p);
    Vec x(n, 0);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == n) return std::nullopt;
        x[piv[k]] = Ab[k][n];
    }
    return x;
}

inline Matrix transpose(const Matrix& A, int cols) {
    Matrix T(cols, Vec(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (int j = 0; j < cols; ++j) T[j][i] = A[i][j];
    return T;
}

inline Matrix mul(const Matrix& A, const Matrix& B, int p) {
    const int m = static_cast<int>(A.size());
    const int k = m ? static_cast<int>(A[0].size()) : 0;
    const int n = B.empty() ? 0 : static_cast<int>(B[0].size());
    Matrix C(m, Vec(n, 0));
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < k; ++t) {
            if (A[i][t] == 0) continue;
            for (int j = 0; j < n; ++j) C[i][j] = norm(C[i][j] + 1LL * A[i][t] * B[t][j], p);
        }
    return C;
}

}  // namespace fp

inline bool is_invertible_mod_p(const std::vector<std::vector<int>>& a, int p) {
    return fp::rank(a, p) == static_cast<int>(a.size());
}

}  // namespace modrep
