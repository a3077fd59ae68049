#pragma once

// Exact arithmetic in truncated totally ramified discrete valuation rings.
//
// The ring modelled here is O = Z_p[x]/(x^e - p) with uniformizer pi = x,
// truncated at pi^w.  An element is stored as sum_{i<e} a_i pi^i where the
// residue a_i lives in Z/p^{k_i}, k_i = ceil((w - i)/e).  With this choice the
// ideal pi^w O is exactly the set of coefficient vectors with p^{k_i} | a_i,
// so reducing every coefficient modulo its own modulus is reduction mod pi^w.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace modrep {

inline constexpr int kMaxRamification = 4;

class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class indeterminate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t ipow(std::int64_t b, int k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= b;
    return r;
}

/// p-adic valuation of a nonzero integer.
inline int vp(std::int64_t n, std::int64_t p) {
    if (n == 0) return 1 << 20;
    int v = 0;
    if (n < 0) n = -n;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Parameters (p, e, m) of O_N = Z[x]/(x^e - p, p^m), N = e*m.
struct RingSpec {
    std::int64_t p = 2;
    int e = 1;
    int m = 1;

    int N() const { return e * m; }
    bool operator==(const RingSpec&) const = default;
};

inline RingSpec ring_make(std::int64_t p, int e, int m) {
    if (!is_prime(p)) throw std::invalid_argument("ring_make: p = " + std::to_string(p) + " is not prime");
    if (e < 1 || m < 1) throw std::invalid_argument("ring_make: e and m must be positive");
    if (e > kMaxRamification)
        throw std::invalid_argument("ring_make: ramification index above " + std::to_string(kMaxRamification));
    // keep every residue modulus below 2^31 so products fit comfortably
    std::int64_t pm = 1;
    for (int i = 0; i < m; ++i) {
        pm *= p;
        if (pm >= (std::int64_t{1} << 31)) throw std::invalid_argument("ring_make: p^m too large");
    }
    return RingSpec{p, e, m};
}

struct Elem {
    std::array<std::int64_t, kMaxRamification> c{};
    bool operator==(const Elem&) const = default;
};

/// O / pi^w for a given RingSpec.  Cheap to copy; all element operations
/// go through it.
class Ring {
public:
    Ring() : Ring(RingSpec{2, 1, 1}, 1) {}
    Ring(RingSpec spec, int w) : spec_(spec), w_(w) {
        if (w < 0 || w > spec.N()) throw std::invalid_argument("Ring: precision outside [0, N]");
        for (int i = 0; i < kMaxRamification; ++i) {
            int k = 0;
            if (i < spec.e && w - i > 0) k = (w - i + spec.e - 1) / spec.e;
            mod_[i] = ipow(spec.p, k);
        }
    }

    const RingSpec& spec() const { return spec_; }
    std::int64_t p() const { return spec_.p; }
    int e() const { return spec_.e; }
    int w() const { return w_; }
    std::int64_t modulus(int i) const { return mod_[i]; }
    Ring at(int w) const { return Ring(spec_, w); }
    bool operator==(const Ring& o) const { return spec_ == o.spec_ && w_ == o.w_; }

    Elem zero() const { return {}; }
    Elem one() const { return from_int(1); }

    Elem from_int(std::int64_t n) const {
        Elem x;
        x.c[0] = norm(n, 0);
        return x;
    }

    /// Element from its pi-adic coefficient vector (a_0, ..., a_{e-1}).
    Elem from_coeffs(const std::array<std::int64_t, kMaxRamification>& a) const {
        Elem x;
        for (int i = 0; i < e(); ++i) x.c[i] = norm(a[i], i);
        return x;
    }

    Elem pi_pow(int v) const {
        if (v >= w_) return zero();
        Elem x;
        x.c[v % e()] = norm(ipow(p(), v / e()), v % e());
        return x;
    }

    Elem reduce(const Elem& x) const {
        Elem y;
        for (int i = 0; i < e(); ++i) y.c[i] = norm(x.c[i], i);
        return y;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r;
        for (int i = 0; i < e(); ++i) r.c[i] = norm(a.c[i] + b.c[i], i);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r;
        for (int i = 0; i < e(); ++i) r.c[i] = norm(a.c[i] - b.c[i], i);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r;
        for (int i = 0; i < e(); ++i) r.c[i] = norm(-a.c[i], i);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        const int E = e();
        if (E == 1) {
            Elem r;
            r.c[0] = static_cast<std::int64_t>((static_cast<__int128>(a.c[0]) * b.c[0]) % mod_[0]);
            return r;
        }
        std::array<__int128, kMaxRamification> acc{};
        for (int i = 0; i < E; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < E; ++j) {
                if (b.c[j] == 0) continue;
                __int128 t = static_cast<__int128>(a.c[i]) * b.c[j];
                int k = i + j;
                if (k >= E) {
                    k -= E;
                    t = (t % mod_[k]) * p();
                }
                acc[k] = (acc[k] + t) % mod_[k];
            }
        }
        Elem r;
        for (int i = 0; i < E; ++i) r.c[i] = static_cast<std::int64_t>(acc[i]);
        return r;
    }

    Elem mul_add(const Elem& acc, const Elem& a, const Elem& b) const { return add(acc, mul(a, b)); }

    bool is_zero(const Elem& x) const {
        for (int i = 0; i < e(); ++i)
            if (x.c[i] != 0) return false;
        return true;
    }

    /// pi-adic valuation, saturated at w for zero.
    int val(const Elem& x) const {
        int v = w_;
        for (int i = 0; i < e(); ++i) {
            if (x.c[i] == 0) continue;
            int cand = i + e() * vp(x.c[i], p());
            if (cand < v) v = cand;
        }
        return v;
    }

    bool is_unit(const Elem& x) const { return w_ > 0 && x.c[0] % p() != 0; }

    /// Residue class in k = O/pi = F_p.
    std::int64_t residue(const Elem& x) const { return ((x.c[0] % p()) + p()) % p(); }

    Elem inv(const Elem& x) const {
        if (!is_unit(x)) throw std::domain_error("Ring::inv: non-unit");
        // invert a_0 mod p, then Newton y <- y(2 - xy) doubles pi-precision
        std::int64_t a0 = residue(x);
        std::int64_t y0 = inv_mod(a0, p());
        Elem y = from_int(y0);
        Elem two = from_int(2);
        for (int prec = 1; prec < w_; prec *= 2) y = mul(y, sub(two, mul(x, y)));
        if (!(mul(x, y) == one())) throw std::logic_error("Ring::inv: Newton iteration failed");
        return y;
    }

    /// y with pi^v * y == x.  y is meaningful only modulo pi^{w-v}; the
    /// returned representative satisfies the identity exactly in O/pi^w.
    Elem div_pi(const Elem& x, int v) const {
        if (val(x) < v) throw std::domain_error("Ring::div_pi: valuation too small");
        Elem y = x;
        const int E = e();
        for (int s = 0; s < v && !is_zero(y); ++s) {
            Elem z;
            for (int i = 0; i + 1 < E; ++i) z.c[i] = y.c[i + 1];
            z.c[E - 1] = y.c[0] / p();
            y = reduce(z);
        }
        return y;
    }

    static std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
        std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
        if (a1 < 0) a1 += m;
        std::int64_t b = a1;
        while (b != 0) {
            std::int64_t q = g / b;
            std::int64_t t = g - q * b;
            g = b;
            b = t;
            t = x - q * x1;
            x = x1;
            x1 = t;
        }
        if (g != 1) throw std::domain_error("inv_mod: not invertible");
        x %= m;
        return x < 0 ? x + m : x;
    }

    std::string to_string(const Elem& x) const {
        if (e() == 1) return std::to_string(x.c[0]);
        std::string s = "[";
        for (int i = 0; i < e(); ++i) {
            if (i) s += ",";
            s += std::to_string(x.c[i]);
        }
        return s + "]";
    }

private:
    std::int64_t norm(std::int64_t v, int i) const {
        std::int64_t m = mod_[i];
        v %= m;
        return v < 0 ? v + m : v;
    }

    RingSpec spec_;
    int w_;
    std::array<std::int64_t, kMaxRamification> mod_{};
};

}  // namespace modrep
