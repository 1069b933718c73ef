#pragma once

#include "costar/multivector.hpp"
#include "costar/poly.hpp"
#include "costar/space.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace costar {

// Multi-index of partial derivatives: orders per coordinate 1..n.
struct MultiIdx {
    std::vector<uint32_t> o; // length n

    explicit MultiIdx(int n = 0) : o(n, 0) {}
    static MultiIdx unit(int n, int coord) {
        MultiIdx m(n);
        m.o[coord - 1] = 1;
        return m;
    }
    uint32_t order() const {
        uint32_t s = 0;
        for (auto v : o)
            s += v;
        return s;
    }
    bool is_zero() const { return order() == 0; }
    friend auto operator<=>(const MultiIdx &, const MultiIdx &) = default;

    MultiIdx operator+(const MultiIdx &b) const {
        MultiIdx r(static_cast<int>(o.size()));
        for (size_t i = 0; i < o.size(); ++i)
            r.o[i] = o[i] + b.o[i];
        return r;
    }
    // componentwise subtraction; caller checks <=.
    MultiIdx operator-(const MultiIdx &b) const {
        MultiIdx r(static_cast<int>(o.size()));
        for (size_t i = 0; i < o.size(); ++i)
            r.o[i] = o[i] - b.o[i];
        return r;
    }
    bool leq(const MultiIdx &b) const {
        for (size_t i = 0; i < o.size(); ++i)
            if (o[i] > b.o[i])
                return false;
        return true;
    }
    bool has_transversal(const SpaceConfig &cfg) const {
        for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
            if (o[c - 1] > 0)
                return true;
        return false;
    }
    bool purely_tangential(const SpaceConfig &cfg) const { return !has_transversal(cfg); }
};

inline Rat multi_binomial(const MultiIdx &n, const MultiIdx &k) {
    Rat r(1);
    for (size_t i = 0; i < n.o.size(); ++i)
        r *= binomial(n.o[i], k.o[i]);
    return r;
}

inline Rat multi_factorial(const MultiIdx &m) {
    Rat r(1);
    for (auto v : m.o)
        r *= factorial(v);
    return r;
}

// All multi-indices K <= J componentwise (including 0 and J).
inline std::vector<MultiIdx> sub_indices(const MultiIdx &j) {
    std::vector<MultiIdx> out;
    MultiIdx cur(static_cast<int>(j.o.size()));
    while (true) {
        out.push_back(cur);
        size_t i = 0;
        while (i < j.o.size()) {
            if (cur.o[i] < j.o[i]) {
                ++cur.o[i];
                for (size_t r = 0; r < i; ++r)
                    cur.o[r] = 0;
                break;
            }
            ++i;
        }
        if (i == j.o.size())
            break;
    }
    return out;
}

// All multi-indices with total order <= cap.
inline std::vector<MultiIdx> indices_up_to_order(int n, uint32_t cap) {
    std::vector<MultiIdx> out;
    MultiIdx cur(n);
    std::function<void(int, uint32_t)> rec = [&](int pos, uint32_t left) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (uint32_t v = 0; v <= left; ++v) {
            cur.o[pos] = v;
            rec(pos + 1, left - v);
        }
        cur.o[pos] = 0;
    };
    rec(0, cap);
    std::sort(out.begin(), out.end());
    return out;
}

inline Poly apply_multi_idx(const Poly &f, const MultiIdx &m) {
    Poly out = f;
    for (size_t i = 0; i < m.o.size() && !out.is_zero(); ++i)
        out = derive(out, base_var(static_cast<int>(i) + 1), m.o[i]);
    return out;
}

// Element of G^k: multidifferential operator on polynomial A = Q[x_1..x_n],
// phi(f_1..f_k) = sum_{(I)} c_{(I)} d^{I_1}f_1 ... d^{I_k}f_k.
// Arity 0 elements are plain polynomials (terms keyed by the empty tuple).
class PolyDiffOp {
  public:
    using Key = std::vector<MultiIdx>;

    PolyDiffOp() = default;
    PolyDiffOp(SpaceConfig cfg, int arity) : cfg_(cfg), arity_(arity) {
        if (arity < 0)
            throw std::invalid_argument("negative arity");
    }
    static PolyDiffOp from_poly(SpaceConfig cfg, const Poly &p) {
        PolyDiffOp op(cfg, 0);
        op.add_term({}, p);
        return op;
    }
    // The pointwise multiplication mu as a 2-cochain.
    static PolyDiffOp mu(SpaceConfig cfg) {
        PolyDiffOp op(cfg, 2);
        op.add_term({MultiIdx(cfg.n), MultiIdx(cfg.n)}, Poly(1));
        return op;
    }
    // Arity-1 identity cochain.
    static PolyDiffOp identity(SpaceConfig cfg) {
        PolyDiffOp op(cfg, 1);
        op.add_term({MultiIdx(cfg.n)}, Poly(1));
        return op;
    }

    const SpaceConfig &config() const { return cfg_; }
    int arity() const { return arity_; }
    const std::map<Key, Poly> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key &k, const Poly &c) {
        if (static_cast<int>(k.size()) != arity_)
            throw std::invalid_argument("key arity mismatch");
        if (c.is_zero())
            return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    PolyDiffOp &operator+=(const PolyDiffOp &o) {
        require_same(o);
        for (const auto &[k, c] : o.terms_)
            add_term(k, c);
        return *this;
    }
    PolyDiffOp &operator-=(const PolyDiffOp &o) {
        require_same(o);
        for (const auto &[k, c] : o.terms_)
            add_term(k, -c);
        return *this;
    }
    friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp &b) { return a += b; }
    friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp &b) { return a -= b; }
    friend PolyDiffOp operator*(const PolyDiffOp &a, const Rat &s) {
        PolyDiffOp out(a.cfg_, a.arity_);
        for (const auto &[k, c] : a.terms_)
            out.add_term(k, c * s);
        return out;
    }
    friend PolyDiffOp operator-(const PolyDiffOp &a) { return a * Rat(-1); }
    friend bool operator==(const PolyDiffOp &a, const PolyDiffOp &b) {
        return a.arity_ == b.arity_ && a.cfg_ == b.cfg_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyDiffOp &a, const PolyDiffOp &b) { return !(a == b); }

    Poly apply(const std::vector<Poly> &args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("wrong argument count");
        Poly out;
        for (const auto &[k, c] : terms_) {
            Poly t = c;
            for (int i = 0; i < arity_ && !t.is_zero(); ++i)
                t *= apply_multi_idx(args[i], k[i]);
            out += t;
        }
        return out;
    }

    uint32_t max_order() const {
        uint32_t m = 0;
        for (const auto &[k, c] : terms_)
            for (const auto &idx : k)
                m = std::max(m, idx.order());
        return m;
    }

  private:
    void require_same(const PolyDiffOp &o) const {
        if (arity_ != o.arity_ || !(cfg_ == o.cfg_))
            throw std::invalid_argument("operator arity/config mismatch");
    }
    SpaceConfig cfg_;
    int arity_ = 0;
    std::map<Key, Poly> terms_;
};

// Substitution composition (o_i): insert psi as the i-th argument of phi and
// expand by the generalized Leibniz rule on coefficient form.
inline PolyDiffOp circ_i(const PolyDiffOp &phi, const PolyDiffOp &psi, int i) {
    const int k = phi.arity(), l = psi.arity();
    if (i < 1 || i > k)
        throw std::out_of_range("circ_i slot out of range");
    PolyDiffOp out(phi.config(), k + l - 1);
    for (const auto &[pk, pc] : phi.terms()) {
        const MultiIdx &insert_idx = pk[i - 1];
        for (const auto &[qk, qc] : psi.terms()) {
            // d^{insert_idx} ( qc * d^{J_1}f ... d^{J_l}f ) : distribute the
            // derivative over the l+1 factors.
            std::vector<MultiIdx> parts(l + 1, MultiIdx(phi.config().n));
            std::function<void(size_t, const MultiIdx &, const Rat &)> rec =
                [&](size_t pos, const MultiIdx &left, const Rat &mult) {
                    if (pos == static_cast<size_t>(l)) {
                        parts[l] = left; // remainder differentiates the coefficient
                        Poly coeff = pc * apply_multi_idx(qc, parts[l]) * mult;
                        if (coeff.is_zero())
                            return;
                        PolyDiffOp::Key key;
                        key.reserve(k + l - 1);
                        for (int r = 0; r < i - 1; ++r)
                            key.push_back(pk[r]);
                        for (int r = 0; r < l; ++r)
                            key.push_back(qk[r] + parts[r]);
                        for (int r = i; r < k; ++r)
                            key.push_back(pk[r]);
                        out.add_term(key, coeff);
                        return;
                    }
                    for (const MultiIdx &kk : sub_indices(left)) {
                        parts[pos] = kk;
                        Rat m2 = mult * multi_binomial(left, kk);
                        rec(pos + 1, left - kk, m2);
                    }
                };
            // multinomial distribution: iterate splits insert_idx = K_1+..+K_l+K_0
            rec(0, insert_idx, Rat(1));
        }
    }
    return out;
}

// phi o_G psi = sum_i (-1)^{(i-1)(l-1)} phi o_i psi  (zero if arity(phi) = 0).
inline PolyDiffOp gerst_product(const PolyDiffOp &phi, const PolyDiffOp &psi) {
    const int k = phi.arity(), l = psi.arity();
    PolyDiffOp out(phi.config(), k + l - 1 >= 0 ? k + l - 1 : 0);
    if (k == 0)
        return PolyDiffOp(phi.config(), std::max(l - 1, 0));
    for (int i = 1; i <= k; ++i) {
        PolyDiffOp t = circ_i(phi, psi, i);
        int sgn = ((i - 1) * (l - 1)) % 2 ? -1 : 1;
        out += t * Rat(sgn);
    }
    return out;
}

inline PolyDiffOp gerst_bracket(const PolyDiffOp &phi, const PolyDiffOp &psi) {
    const int k = phi.arity(), l = psi.arity();
    PolyDiffOp out = gerst_product(phi, psi);
    int sgn = ((k - 1) * (l - 1)) % 2 ? -1 : 1;
    out -= gerst_product(psi, phi) * Rat(sgn);
    return out;
}

// Hochschild cobord b(phi) = -[phi, mu]_G; equals the classical alternating
// formula for every arity (asserted in tests).
inline PolyDiffOp hochschild_b(const PolyDiffOp &phi) {
    return -gerst_bracket(phi, PolyDiffOp::mu(phi.config()));
}

// Cup product: (phi u psi)(f_1..f_{k+l}) = phi(f_1..f_k) psi(f_{k+1}..f_{k+l}).
inline PolyDiffOp cup(const PolyDiffOp &phi, const PolyDiffOp &psi) {
    PolyDiffOp out(phi.config(), phi.arity() + psi.arity());
    for (const auto &[pk, pc] : phi.terms())
        for (const auto &[qk, qc] : psi.terms()) {
            PolyDiffOp::Key key = pk;
            key.insert(key.end(), qk.begin(), qk.end());
            out.add_term(key, pc * qc);
        }
    return out;
}

// Compatible cochains: coefficients whose last multi-index differentiates a
// transversal direction must lie in I; arity 0 means membership in I.
inline bool is_adapted_op(const PolyDiffOp &phi) {
    const SpaceConfig &cfg = phi.config();
    for (const auto &[k, c] : phi.terms()) {
        if (phi.arity() == 0) {
            if (!in_ideal(c, cfg))
                return false;
            continue;
        }
        if (k.back().has_transversal(cfg) && !in_ideal(c, cfg))
            return false;
    }
    return true;
}

// Normal form of Xi(phi) in Gtilde = G/G_I: terms whose last multi-index has a
// transversal component, coefficients restricted to C.
class GTildeOp {
  public:
    GTildeOp() = default;
    GTildeOp(SpaceConfig cfg, int arity) : cfg_(cfg), arity_(arity) {}

    const SpaceConfig &config() const { return cfg_; }
    int arity() const { return arity_; }
    const std::map<PolyDiffOp::Key, Poly> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const PolyDiffOp::Key &k, const Poly &c_in) {
        if (static_cast<int>(k.size()) != arity_)
            throw std::invalid_argument("key arity mismatch");
        Poly c = restrict_to_c(c_in, cfg_);
        if (c.is_zero())
            return;
        if (arity_ > 0 && !k.back().has_transversal(cfg_))
            return; // dies in the quotient
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    friend GTildeOp operator+(GTildeOp a, const GTildeOp &b) {
        for (const auto &[k, c] : b.terms_)
            a.add_term(k, c);
        return a;
    }
    friend GTildeOp operator-(GTildeOp a, const GTildeOp &b) {
        for (const auto &[k, c] : b.terms_)
            a.add_term(k, -c);
        return a;
    }
    friend bool operator==(const GTildeOp &a, const GTildeOp &b) {
        return a.arity_ == b.arity_ && a.cfg_ == b.cfg_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const GTildeOp &a, const GTildeOp &b) { return !(a == b); }

  private:
    SpaceConfig cfg_;
    int arity_ = 0;
    std::map<PolyDiffOp::Key, Poly> terms_;
};

inline GTildeOp xi_project(const PolyDiffOp &phi) {
    GTildeOp out(phi.config(), phi.arity());
    for (const auto &[k, c] : phi.terms()) {
        if (phi.arity() == 0) {
            out.add_term(k, c);
            continue;
        }
        if (k.back().has_transversal(phi.config()))
            out.add_term(k, c);
    }
    return out;
}

// Coefficient-wise section of Xi.
inline PolyDiffOp lift_gtilde(const GTildeOp &eta) {
    PolyDiffOp out(eta.config(), eta.arity());
    for (const auto &[k, c] : eta.terms())
        out.add_term(k, c);
    return out;
}

// The usual Hochschild cobord on Gtilde normal forms (three-term formula):
// (btilde eta)(f_1..f_k)(g) = f_1 eta(f_2..f_k)(g)
//   + sum_r (-1)^r eta(f_1..f_r f_{r+1}..f_k)(g) + (-1)^k eta(f_1..f_{k-1})(f_k g).
inline GTildeOp btilde(const GTildeOp &eta) {
    const SpaceConfig &cfg = eta.config();
    const int k = eta.arity(); // eta takes (f_1..f_{k-1}, g)
    GTildeOp out(cfg, k + 1);
    const int n = cfg.n;
    for (const auto &[key, c] : eta.terms()) {
        // term 1: multiply by f_1 -> prepend zero multi-index
        {
            PolyDiffOp::Key nk;
            nk.reserve(k + 1);
            nk.push_back(MultiIdx(n));
            nk.insert(nk.end(), key.begin(), key.end());
            out.add_term(nk, c);
        }
        // middle terms: Leibniz split of slot r over (f_r, f_{r+1}), r = 1..k-1
        for (int r = 1; r <= k - 1; ++r) {
            const MultiIdx &idx = key[r - 1];
            for (const MultiIdx &a : sub_indices(idx)) {
                MultiIdx b = idx - a;
                PolyDiffOp::Key nk;
                nk.reserve(k + 1);
                for (int q = 0; q < r - 1; ++q)
                    nk.push_back(key[q]);
                nk.push_back(a);
                nk.push_back(b);
                for (int q = r; q < k; ++q)
                    nk.push_back(key[q]);
                Rat sgn = (r % 2) ? Rat(-1) : Rat(1);
                out.add_term(nk, c * multi_binomial(idx, a) * sgn);
            }
        }
        // last term: split the operator slot over (f_k, g)
        {
            const MultiIdx &idx = key[k - 1];
            for (const MultiIdx &a : sub_indices(idx)) {
                MultiIdx b = idx - a;
                // b acts on g; purely tangential parts die on I (handled by
                // the normal-form filter in add_term)
                PolyDiffOp::Key nk;
                nk.reserve(k + 1);
                for (int q = 0; q < k - 1; ++q)
                    nk.push_back(key[q]);
                nk.push_back(a);
                nk.push_back(b);
                Rat sgn = (k % 2) ? Rat(-1) : Rat(1);
                out.add_term(nk, c * multi_binomial(idx, a) * sgn);
            }
        }
    }
    return out;
}

} // namespace costar
