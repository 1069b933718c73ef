#pragma once

#include "costar/barchain.hpp"
#include "costar/diffop.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace costar {

// Bimodules M for Hochschild cohomology with values in M:
//   MA  = A,            MB  = B = A/I,
//   MDAB = D(A,B), MDBB = D(B,B), MDIB = D(I,B) = D(A,B)/D(B,B).
enum class Bimodule { MA, MB, MDAB, MDBB, MDIB };

inline bool bimodule_b_valued(Bimodule m) { return m != Bimodule::MA; }

// Operator-symbol element of M: finite sum c_J d^J. For MA/MB only J = 0.
struct OpSym {
    SpaceConfig cfg;
    std::map<MultiIdx, Poly> terms;

    OpSym() = default;
    explicit OpSym(SpaceConfig c) : cfg(c) {}
    static OpSym scalar(SpaceConfig c, const Poly &p) {
        OpSym s(c);
        s.add(MultiIdx(c.n), p, Bimodule::MA);
        return s;
    }

    bool is_zero() const { return terms.empty(); }

    // Add c d^J, normalizing per tag: B-valued coefficients restricted to C,
    // MDBB symbols must be tangential, MDIB symbols with no transversal
    // derivative die in the quotient.
    void add(const MultiIdx &j, const Poly &c_in, Bimodule tag) {
        Poly c = c_in;
        if (bimodule_b_valued(tag))
            c = restrict_to_c(c, cfg);
        if (c.is_zero())
            return;
        if ((tag == Bimodule::MA || tag == Bimodule::MB) && !j.is_zero())
            throw std::invalid_argument("scalar bimodule with nonzero symbol");
        if (tag == Bimodule::MDBB && j.has_transversal(cfg))
            throw std::invalid_argument("D(B,B) symbol with transversal derivative");
        if (tag == Bimodule::MDIB && !j.has_transversal(cfg))
            return;
        auto it = terms.find(j);
        if (it == terms.end()) {
            terms[j] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }

    void accumulate(const OpSym &o, Bimodule tag, const Rat &scale = Rat(1)) {
        for (const auto &[j, c] : o.terms)
            add(j, c * scale, tag);
    }

    friend bool operator==(const OpSym &a, const OpSym &b) { return a.terms == b.terms; }
};

// A^e-action evaluation: p is a polynomial in the (A, Base, B) slots; the A
// slot acts on the left of the symbol, the B slot on the operand side, and
// Base variables multiply in place. Result: p . (J, c) expanded as symbols.
inline OpSym act_ae(const Poly &p, const MultiIdx &j, const Poly &c, Bimodule tag,
                    const SpaceConfig &cfg) {
    OpSym out(cfg);
    std::map<Var, Poly> collapse;
    for (int cc = 1; cc <= cfg.n; ++cc) {
        collapse[a_var(cc)] = Poly::var(base_var(cc));
        collapse[b_var(cc)] = Poly::var(base_var(cc));
    }
    if (tag == Bimodule::MA || tag == Bimodule::MB) {
        out.add(j, substitute(p, collapse) * c, tag);
        return out;
    }
    // (f (x) h) . (c d^J) = sum_{K<=J} binom(J,K) i*(f) c i*(d^K h) d^{J-K}
    for (const MultiIdx &k : sub_indices(j)) {
        Poly q = p;
        for (int cc = 1; cc <= cfg.n && !q.is_zero(); ++cc)
            q = derive(q, b_var(cc), k.o[cc - 1]);
        if (q.is_zero())
            continue;
        q = substitute(q, collapse);
        out.add(j - k, q * c * multi_binomial(j, k), tag);
    }
    return out;
}

inline OpSym act_ae(const Poly &p, const OpSym &sym, Bimodule tag) {
    OpSym out(sym.cfg);
    for (const auto &[j, c] : sym.terms)
        out.accumulate(act_ae(p, j, c, tag, sym.cfg), tag);
    return out;
}

// Multidifferential cochain of arity k valued in M, in coefficient normal
// form: (I_1..I_k) |-> OpSym. Equivalently an element of Hom_{A^e}(CH^k, M).
class BarCochain {
  public:
    using Key = PolyDiffOp::Key;

    BarCochain() = default;
    BarCochain(SpaceConfig cfg, int arity, Bimodule tag)
        : cfg_(cfg), arity_(arity), tag_(tag) {}

    const SpaceConfig &config() const { return cfg_; }
    int arity() const { return arity_; }
    Bimodule tag() const { return tag_; }
    const std::map<Key, OpSym> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key &k, const MultiIdx &j, const Poly &c) {
        if (static_cast<int>(k.size()) != arity_)
            throw std::invalid_argument("key arity mismatch");
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            OpSym s(cfg_);
            s.add(j, c, tag_);
            if (!s.is_zero())
                terms_[k] = std::move(s);
            return;
        }
        it->second.add(j, c, tag_);
        if (it->second.is_zero())
            terms_.erase(it);
    }
    void add_sym(const Key &k, const OpSym &s) {
        for (const auto &[j, c] : s.terms)
            add_term(k, j, c);
    }

    friend BarCochain operator+(BarCochain a, const BarCochain &b) {
        for (const auto &[k, s] : b.terms_)
            a.add_sym(k, s);
        return a;
    }
    friend BarCochain operator-(BarCochain a, const BarCochain &b) {
        for (const auto &[k, s] : b.terms_)
            for (const auto &[j, c] : s.terms)
                a.add_term(k, j, -c);
        return a;
    }
    friend bool operator==(const BarCochain &a, const BarCochain &b) {
        return a.arity_ == b.arity_ && a.tag_ == b.tag_ && a.terms_ == b.terms_;
    }

    // Evaluate the underlying Hom_{A^e}(CH^k, M) map on an explicit chain.
    OpSym apply_chain(const BarChain &chain) const {
        if (chain.k != arity_)
            throw std::invalid_argument("chain arity mismatch");
        OpSym out(cfg_);
        for (const auto &[key, sym] : terms_) {
            Poly q = chain.value;
            for (int slot = 1; slot <= arity_ && !q.is_zero(); ++slot)
                for (int c = 1; c <= cfg_.n && !q.is_zero(); ++c)
                    q = derive(q, x_var(slot, c), key[slot - 1].o[c - 1]);
            if (q.is_zero())
                continue;
            // evaluate middle slots at the base point
            std::map<Var, Poly> mid;
            for (int slot = 1; slot <= arity_; ++slot)
                for (int c = 1; c <= cfg_.n; ++c)
                    mid[x_var(slot, c)] = Poly::var(base_var(c));
            q = substitute(q, mid);
            out.accumulate(act_ae(q, sym, tag_), tag_);
        }
        return out;
    }

    // Evaluate on functions (f_1..f_k), returning the M-valued symbol.
    OpSym apply(const std::vector<Poly> &args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("wrong argument count");
        OpSym out(cfg_);
        for (const auto &[key, sym] : terms_) {
            Poly f(Rat(1));
            for (int i = 0; i < arity_; ++i)
                f *= apply_multi_idx(args[i], key[i]);
            if (f.is_zero())
                continue;
            if (bimodule_b_valued(tag_))
                f = restrict_to_c(f, cfg_);
            for (const auto &[j, c] : sym.terms)
                out.add(j, f * c, tag_);
        }
        return out;
    }

    uint32_t max_slot_order() const {
        uint32_t m = 0;
        for (const auto &[k, s] : terms_)
            for (const auto &idx : k)
                m = std::max(m, idx.order());
        return m;
    }
    uint32_t max_symbol_order() const {
        uint32_t m = 0;
        for (const auto &[k, s] : terms_)
            for (const auto &[j, c] : s.terms)
                m = std::max(m, j.order());
        return m;
    }

  private:
    SpaceConfig cfg_;
    int arity_ = 0;
    Bimodule tag_ = Bimodule::MA;
    std::map<Key, OpSym> terms_;
};

// Koszul cochain: element of Hom_{A^e}(CK^k, M) = M (x) Lambda^k (R^n)^*.
class KoszulCochain {
  public:
    KoszulCochain() = default;
    KoszulCochain(SpaceConfig cfg, int degree, Bimodule tag)
        : cfg_(cfg), degree_(degree), tag_(tag) {}

    const SpaceConfig &config() const { return cfg_; }
    int degree() const { return degree_; }
    Bimodule tag() const { return tag_; }
    const std::map<IndexMask, OpSym> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(IndexMask s, const MultiIdx &j, const Poly &c) {
        if (mask_rank(s) != degree_)
            throw std::invalid_argument("mask degree mismatch");
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            OpSym sym(cfg_);
            sym.add(j, c, tag_);
            if (!sym.is_zero())
                terms_[s] = std::move(sym);
            return;
        }
        it->second.add(j, c, tag_);
        if (it->second.is_zero())
            terms_.erase(it);
    }
    void add_sym(IndexMask s, const OpSym &sym) {
        for (const auto &[j, c] : sym.terms)
            add_term(s, j, c);
    }

    friend KoszulCochain operator+(KoszulCochain a, const KoszulCochain &b) {
        for (const auto &[s, sym] : b.terms_)
            a.add_sym(s, sym);
        return a;
    }
    friend KoszulCochain operator-(KoszulCochain a, const KoszulCochain &b) {
        for (const auto &[s, sym] : b.terms_)
            for (const auto &[j, c] : sym.terms)
                a.add_term(s, j, -c);
        return a;
    }
    friend bool operator==(const KoszulCochain &a, const KoszulCochain &b) {
        return a.degree_ == b.degree_ && a.tag_ == b.tag_ && a.terms_ == b.terms_;
    }

    OpSym apply_chain(const KoszulChain &w) const {
        if (w.k != degree_)
            throw std::invalid_argument("chain degree mismatch");
        OpSym out(cfg_);
        for (const auto &[s, p] : w.terms) {
            auto it = terms_.find(s);
            if (it == terms_.end())
                continue;
            out.accumulate(act_ae(p, it->second, tag_), tag_);
        }
        return out;
    }

    uint32_t max_symbol_order() const {
        uint32_t m = 0;
        for (const auto &[s, sym] : terms_)
            for (const auto &[j, c] : sym.terms)
                m = std::max(m, j.order());
        return m;
    }

  private:
    SpaceConfig cfg_;
    int degree_ = 0;
    Bimodule tag_ = Bimodule::MA;
    std::map<IndexMask, OpSym> terms_;
};

// ---------------------------------------------------------------------------
// conversions with the operator types

inline BarCochain to_cochain(const PolyDiffOp &phi) {
    BarCochain out(phi.config(), phi.arity(), Bimodule::MA);
    for (const auto &[k, c] : phi.terms())
        out.add_term(k, MultiIdx(phi.config().n), c);
    return out;
}

inline PolyDiffOp to_diffop(const BarCochain &c) {
    if (c.tag() != Bimodule::MA)
        throw std::invalid_argument("only MA cochains are plain operators");
    PolyDiffOp out(c.config(), c.arity());
    for (const auto &[k, sym] : c.terms())
        for (const auto &[j, coeff] : sym.terms)
            out.add_term(k, coeff);
    return out;
}

// Gtilde^k elements are (k-1)-arity cochains valued in D(I,B).
inline BarCochain to_cochain(const GTildeOp &eta) {
    if (eta.arity() < 1)
        throw std::invalid_argument("arity-0 Gtilde elements live in B");
    BarCochain out(eta.config(), eta.arity() - 1, Bimodule::MDIB);
    for (const auto &[k, c] : eta.terms()) {
        PolyDiffOp::Key head(k.begin(), k.end() - 1);
        out.add_term(head, k.back(), c);
    }
    return out;
}

inline GTildeOp to_gtilde(const BarCochain &c) {
    if (c.tag() != Bimodule::MDIB)
        throw std::invalid_argument("expected a D(I,B)-valued cochain");
    GTildeOp out(c.config(), c.arity() + 1);
    for (const auto &[k, sym] : c.terms())
        for (const auto &[j, coeff] : sym.terms) {
            PolyDiffOp::Key key = k;
            key.push_back(j);
            out.add_term(key, coeff);
        }
    return out;
}

// ---------------------------------------------------------------------------
// dualized chain maps

// phi o F : Koszul cochain from a bar cochain.
inline KoszulCochain bar_to_koszul(const BarCochain &phi) {
    const SpaceConfig &cfg = phi.config();
    const int k = phi.arity();
    KoszulCochain out(cfg, k, phi.tag());
    // enumerate basis masks of rank k
    for (IndexMask s = 0; s < (1u << cfg.n); ++s) {
        if (mask_rank(s) != k)
            continue;
        KoszulChain basis(cfg, k);
        basis.add(s, Poly(1));
        OpSym v = phi.apply_chain(to_bar(basis));
        if (!v.is_zero())
            out.add_sym(s, v);
    }
    return out;
}

// Triangular extraction of the coefficient table of a multidifferential map
// from its values on monomial tuples. E must be linear in each argument.
inline BarCochain
extract_cochain(const SpaceConfig &cfg, int arity, Bimodule tag, uint32_t order_cap,
                const std::function<OpSym(const std::vector<Poly> &)> &E) {
    BarCochain out(cfg, arity, tag);
    std::vector<MultiIdx> idxs = indices_up_to_order(cfg.n, order_cap);
    // sort by total order then lex so lower tuples come first
    std::sort(idxs.begin(), idxs.end(), [](const MultiIdx &a, const MultiIdx &b) {
        if (a.order() != b.order())
            return a.order() < b.order();
        return a < b;
    });
    std::vector<size_t> pos(arity, 0);
    std::vector<std::vector<size_t>> tuples;
    std::function<void(int)> rec = [&](int slot) {
        if (slot == arity) {
            tuples.push_back(pos);
            return;
        }
        for (size_t i = 0; i < idxs.size(); ++i) {
            pos[slot] = i;
            rec(slot + 1);
        }
    };
    rec(0);
    std::sort(tuples.begin(), tuples.end(), [&](const auto &a, const auto &b) {
        uint32_t oa = 0, ob = 0;
        for (int i = 0; i < arity; ++i) {
            oa += idxs[a[i]].order();
            ob += idxs[b[i]].order();
        }
        if (oa != ob)
            return oa < ob;
        return a < b;
    });
    auto mono_of = [&](const MultiIdx &m) {
        Poly p(Rat(1));
        for (int c = 1; c <= cfg.n; ++c)
            if (m.o[c - 1] > 0)
                p *= Poly::var(base_var(c), m.o[c - 1]);
        return p;
    };
    for (const auto &t : tuples) {
        std::vector<Poly> args;
        args.reserve(arity);
        BarCochain::Key key;
        key.reserve(arity);
        for (int i = 0; i < arity; ++i) {
            key.push_back(idxs[t[i]]);
            args.push_back(mono_of(idxs[t[i]]));
        }
        OpSym predicted = out.apply(args);
        OpSym actual = E(args);
        // residual = actual - predicted = (prod I_j!) * coefficient(key)
        OpSym residual = actual;
        for (const auto &[j, c] : predicted.terms)
            residual.add(j, -c, tag);
        if (residual.is_zero())
            continue;
        Rat norm(1);
        for (const auto &idx : key)
            norm *= multi_factorial(idx);
        norm = Rat(1) / norm;
        for (const auto &[j, c] : residual.terms)
            out.add_term(key, j, c * norm);
    }
    return out;
}

// X o G : bar cochain from a Koszul cochain. The result is a
// multidifferential cochain; representability is verified by re-evaluation.
inline BarCochain koszul_to_bar(const KoszulCochain &X, uint32_t extra_order = 0) {
    const SpaceConfig &cfg = X.config();
    const int k = X.degree();
    uint32_t cap = 1 + X.max_symbol_order() + extra_order;
    auto E = [&](const std::vector<Poly> &args) {
        Poly chain_val(Rat(1));
        for (int i = 0; i < k; ++i) {
            std::map<Var, Poly> into_slot;
            for (int c = 1; c <= cfg.n; ++c)
                into_slot[base_var(c)] = Poly::var(x_var(i + 1, c));
            chain_val *= substitute(args[i], into_slot);
        }
        BarChain chain(cfg, k, chain_val);
        return X.apply_chain(to_koszul(chain));
    };
    BarCochain out = extract_cochain(cfg, k, X.tag(), cap, E);
    return out;
}

// phi o s_H : the dualized simplified homotopy (arity drops by one).
inline BarCochain s_dual(const BarCochain &phi, uint32_t extra_order = 1) {
    const SpaceConfig &cfg = phi.config();
    const int k = phi.arity();
    if (k == 0)
        throw std::invalid_argument("s* needs arity >= 1");
    uint32_t cap = phi.max_slot_order() + phi.max_symbol_order() + extra_order + 1;
    auto E = [&](const std::vector<Poly> &args) {
        Poly chain_val(Rat(1));
        for (int i = 0; i + 1 < k; ++i) {
            std::map<Var, Poly> into_slot;
            for (int c = 1; c <= cfg.n; ++c)
                into_slot[base_var(c)] = Poly::var(x_var(i + 1, c));
            chain_val *= substitute(args[i], into_slot);
        }
        BarChain chain(cfg, k - 1, chain_val);
        return phi.apply_chain(s_H(chain));
    };
    return extract_cochain(cfg, k - 1, phi.tag(), cap, E);
}

inline BarCochain theta_dual(const BarCochain &phi) {
    return koszul_to_bar(bar_to_koszul(phi));
}

// Dual bar differential: phi o del_H. For MA cochains this coincides with the
// classical Hochschild cobord; for MDIB it is btilde.
inline BarCochain b_dual(const BarCochain &phi) {
    const SpaceConfig &cfg = phi.config();
    const int k = phi.arity();
    Bimodule tag = phi.tag();
    BarCochain out(cfg, k + 1, tag);
    const int n = cfg.n;
    for (const auto &[key, sym] : phi.terms()) {
        // f_1 . phi(f_2..f_{k+1}): left action multiplies in place
        for (const auto &[j, c] : sym.terms) {
            BarCochain::Key nk;
            nk.push_back(MultiIdx(n));
            nk.insert(nk.end(), key.begin(), key.end());
            out.add_term(nk, j, c);
        }
        // middle Leibniz splits
        for (int r = 1; r <= k; ++r) {
            const MultiIdx &idx = key[r - 1];
            for (const MultiIdx &a : sub_indices(idx)) {
                MultiIdx b = idx - a;
                BarCochain::Key nk;
                for (int q = 0; q < r - 1; ++q)
                    nk.push_back(key[q]);
                nk.push_back(a);
                nk.push_back(b);
                for (int q = r; q < k; ++q)
                    nk.push_back(key[q]);
                Rat sgn = (r % 2) ? Rat(-1) : Rat(1);
                for (const auto &[j, c] : sym.terms)
                    out.add_term(nk, j, c * multi_binomial(idx, a) * sgn);
            }
        }
        // phi(f_1..f_k) . f_{k+1}: right action hits the operand side
        {
            Rat sgn = ((k + 1) % 2) ? Rat(-1) : Rat(1);
            for (const auto &[j, c] : sym.terms) {
                if (tag == Bimodule::MA || tag == Bimodule::MB) {
                    BarCochain::Key nk = key;
                    nk.push_back(MultiIdx(n));
                    out.add_term(nk, j, c * sgn);
                } else {
                    // (c d^J) . f = sum_{K<=J} binom c i^*(d^K f) d^{J-K}
                    for (const MultiIdx &kk : sub_indices(j)) {
                        BarCochain::Key nk = key;
                        nk.push_back(kk);
                        out.add_term(nk, j - kk, c * multi_binomial(j, kk) * sgn);
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// induced Koszul cochain differential and polynomial Poincare contraction

// del_K X = sum_i e_i ^ (X . x^i - x^i . X); in symbols this is + d_p (the
// momentum de Rham differential), with the D(I,B) quotient projection.
inline KoszulCochain koszul_cochain_diff(const KoszulCochain &X) {
    const SpaceConfig &cfg = X.config();
    KoszulCochain out(cfg, X.degree() + 1, X.tag());
    if (X.tag() == Bimodule::MA || X.tag() == Bimodule::MB)
        return out;
    if (X.degree() + 1 > cfg.n)
        return out;
    for (const auto &[s, sym] : X.terms())
        for (const auto &[j, c] : sym.terms)
            for (int i = 1; i <= cfg.n; ++i) {
                if (mask_has(s, i) || j.o[i - 1] == 0)
                    continue;
                MultiIdx j2 = j;
                j2.o[i - 1] -= 1;
                Rat coeff = Rat(j.o[i - 1]) * Rat(merge_sign(1u << (i - 1), s));
                out.add_term(mask_add(s, i), j2, c * coeff);
            }
    return out;
}

// Polynomial Poincare contraction for the momentum de Rham complex in the
// directions D (as coordinate list): h(c p^a e_S) = 1/(|a|_D + |S cap D|) *
// sum_{i in S cap D} (-1)^{pos(i,S)} p_i c p^a e_{S-i}; harmonic part has
// |a|_D = 0 and S cap D empty. Identity: diff h + h diff = id - P0.
inline KoszulCochain poincare_h(const KoszulCochain &X, const std::vector<int> &dirs) {
    const SpaceConfig &cfg = X.config();
    KoszulCochain out(cfg, X.degree() - 1, X.tag());
    if (X.degree() == 0)
        return out;
    for (const auto &[s, sym] : X.terms())
        for (const auto &[j, c] : sym.terms) {
            uint32_t pdeg = 0;
            int fdeg = 0;
            for (int i : dirs) {
                pdeg += j.o[i - 1];
                if (mask_has(s, i))
                    ++fdeg;
            }
            if (pdeg + fdeg == 0)
                continue;
            for (int i : dirs) {
                if (!mask_has(s, i))
                    continue;
                MultiIdx j2 = j;
                j2.o[i - 1] += 1;
                Rat coeff = Rat(mask_position(s, i) % 2 ? -1 : 1) / Rat(pdeg + fdeg);
                out.add_term(mask_remove(s, i), j2, c * coeff);
            }
        }
    return out;
}

// Harmonic projector complementing poincare_h.
inline KoszulCochain poincare_harmonic(const KoszulCochain &X, const std::vector<int> &dirs) {
    KoszulCochain out(X.config(), X.degree(), X.tag());
    for (const auto &[s, sym] : X.terms())
        for (const auto &[j, c] : sym.terms) {
            uint32_t pdeg = 0;
            int fdeg = 0;
            for (int i : dirs) {
                pdeg += j.o[i - 1];
                if (mask_has(s, i))
                    ++fdeg;
            }
            if (pdeg + fdeg == 0)
                out.add_term(s, j, c);
        }
    return out;
}

inline std::vector<int> all_directions(const SpaceConfig &cfg) {
    std::vector<int> v;
    for (int c = 1; c <= cfg.n; ++c)
        v.push_back(c);
    return v;
}
inline std::vector<int> tangential_directions(const SpaceConfig &cfg) {
    std::vector<int> v;
    for (int c = 1; c <= cfg.n - cfg.l; ++c)
        v.push_back(c);
    return v;
}

inline KoszulCochain retag(const KoszulCochain &X, Bimodule tag) {
    KoszulCochain out(X.config(), X.degree(), tag);
    for (const auto &[s, sym] : X.terms())
        for (const auto &[j, c] : sym.terms)
            out.add_term(s, j, c);
    return out;
}

} // namespace costar
