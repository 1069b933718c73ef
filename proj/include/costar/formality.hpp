#pragma once

#include "costar/hkr.hpp"
#include "costar/multivector.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace costar {

// ---------------------------------------------------------------------------
// truncated homological perturbation over the adapted HKR splitting
//
// The recursion runs on symmetric words over V = g_I[2] (letters graded by
// rank - 2) against the L-infinity structure D = b + shifted [.,.]_G on
// G_I[2]; components d'^{[r]}, psi^{[r]} are produced lazily on the words they
// are evaluated on. psi^{[1]} is the adapted HKR map. At each rank the defect
//   P^{[r]}(w) = b(psi^{[r]} w) - psi^{[1]}(d'^{[r]} w) + R(w)
// is cancelled by decomposing R(w) over the splitting Ker b = Im psi^{[1]} +
// Im b.

namespace perturb_detail {

inline int vdeg(const MultiVec &x) { return x.rank() - 2; }
inline int wdeg(const PolyDiffOp &p) { return p.arity() - 2; }

// D^{[2]} with the decalage sign.
inline PolyDiffOp big_d2(const PolyDiffOp &a, const PolyDiffOp &b) {
    int sgn = (wdeg(a) % 2 == 0) ? 1 : -1;
    return gerst_bracket(a, b) * Rat(sgn);
}

// Koszul sign of extracting the subset (by positions) to the front of a word
// with the given degrees, preserving relative order.
inline int unshuffle_sign(const std::vector<int> &degs, const std::vector<bool> &chosen) {
    int sign = 1;
    for (size_t p = 0; p < degs.size(); ++p) {
        if (!chosen[p] || degs[p] % 2 == 0)
            continue;
        for (size_t q = 0; q < p; ++q)
            if (!chosen[q] && degs[q] % 2)
                sign = -sign;
    }
    return sign;
}

} // namespace perturb_detail

class Perturbation {
  public:
    explicit Perturbation(SpaceConfig cfg, int max_rank = 3)
        : cfg_(cfg), max_rank_(max_rank) {}

    PolyDiffOp psi(const std::vector<MultiVec> &word) {
        if (word.size() == 1)
            return psi1_hkr(word[0]);
        return solve(word).second;
    }
    MultiVec dprime(const std::vector<MultiVec> &word) {
        if (word.size() < 2)
            throw std::invalid_argument("d' starts at rank 2");
        return solve(word).first;
    }
    // Unshifted rank-2 structure; by construction pi([psi1 X, psi1 Y]_G),
    // i.e. the Schouten bracket.
    MultiVec d2(const MultiVec &x, const MultiVec &y) {
        int sgn = (perturb_detail::vdeg(x) % 2 == 0) ? 1 : -1;
        return dprime({x, y}) * Rat(sgn);
    }

    // pr_W(Dbar psibar - psibar d'bar)(word), all components included; must
    // vanish for word lengths <= max_rank.
    PolyDiffOp formality_defect(const std::vector<MultiVec> &word) {
        return defect(word, false);
    }
    // pr_V(d'bar d'bar)(word); must vanish for word lengths <= max_rank + 1.
    MultiVec linfty_defect(const std::vector<MultiVec> &word) {
        MultiVec total(cfg_, -1);
        bool first = true;
        // the full-subset term yields a one-letter word that the second d'
        // kills, so it can be skipped (and must be, beyond the rank cap)
        for (const auto &[w2, coeff] : dbar_terms(word, word.size() > static_cast<size_t>(max_rank_))) {
            if (w2.size() < 2)
                continue;
            MultiVec inner = dprime(w2);
            if (inner.is_zero())
                continue;
            if (first) {
                total = MultiVec(cfg_, inner.rank());
                first = false;
            }
            total += inner * coeff;
        }
        return total;
    }

  private:
    using Word = std::vector<MultiVec>;

    // terms of the coinduced coderivation d'bar: (value-front word, coeff).
    // skip_full drops the subword = whole-word term (the unknown at solve
    // time).
    std::vector<std::pair<Word, Rat>> dbar_terms(const Word &word, bool skip_full) {
        using namespace perturb_detail;
        std::vector<std::pair<Word, Rat>> out;
        const size_t n = word.size();
        std::vector<int> degs;
        degs.reserve(n);
        for (const auto &x : word)
            degs.push_back(vdeg(x));
        for (uint32_t mask = 1; mask < (1u << n); ++mask) {
            size_t cnt = static_cast<size_t>(__builtin_popcount(mask));
            if (cnt < 2)
                continue;
            if (skip_full && cnt == n)
                continue;
            std::vector<bool> chosen(n, false);
            Word sub, rest;
            for (size_t p = 0; p < n; ++p) {
                if ((mask >> p) & 1) {
                    chosen[p] = true;
                    sub.push_back(word[p]);
                } else
                    rest.push_back(word[p]);
            }
            int sgn = unshuffle_sign(degs, chosen);
            MultiVec val = dprime(sub);
            if (val.is_zero())
                continue;
            Word w2;
            w2.reserve(rest.size() + 1);
            w2.push_back(val);
            for (auto &x : rest)
                w2.push_back(x);
            out.emplace_back(std::move(w2), Rat(sgn));
        }
        return out;
    }

    // psibar(word) terms as (letters, coeff); set partitions with blocks in
    // min-element order, Koszul sign from the letter reordering. skip_full
    // drops the one-block partition.
    std::vector<std::pair<std::vector<PolyDiffOp>, Rat>> psibar_terms(const Word &word,
                                                                      bool skip_full) {
        using namespace perturb_detail;
        std::vector<std::pair<std::vector<PolyDiffOp>, Rat>> out;
        const size_t n = word.size();
        std::vector<int> degs;
        for (const auto &x : word)
            degs.push_back(vdeg(x));
        std::vector<size_t> rgs(n, 0);
        std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t maxb) {
            if (pos == n) {
                if (skip_full && maxb == 1 && n > 1)
                    return;
                std::vector<std::vector<size_t>> blocks(maxb);
                for (size_t p = 0; p < n; ++p)
                    blocks[rgs[p]].push_back(p);
                std::vector<size_t> order;
                for (const auto &b : blocks)
                    for (size_t p : b)
                        order.push_back(p);
                int sgn = 1;
                for (size_t i = 0; i < order.size(); ++i)
                    for (size_t j = i + 1; j < order.size(); ++j)
                        if (order[i] > order[j] && (degs[order[i]] % 2) &&
                            (degs[order[j]] % 2))
                            sgn = -sgn;
                std::vector<PolyDiffOp> letters;
                letters.reserve(maxb);
                for (const auto &b : blocks) {
                    Word sub;
                    for (size_t p : b)
                        sub.push_back(word[p]);
                    letters.push_back(psi(sub));
                }
                out.emplace_back(std::move(letters), Rat(sgn));
                return;
            }
            for (size_t b = 0; b <= maxb; ++b) {
                rgs[pos] = b;
                rec(pos + 1, std::max(maxb, b + 1));
            }
        };
        rec(0, 0);
        return out;
    }

    // pr_W(Dbar psibar - psibar d'bar)(word); with skip_unknowns the
    // components on the full word are left out (this is R(word)).
    PolyDiffOp defect(const Word &word, bool skip_unknowns) {
        PolyDiffOp acc(cfg_, 0);
        bool have = false;
        auto accum = [&](const PolyDiffOp &v, const Rat &c) {
            if (v.is_zero())
                return;
            if (!have) {
                acc = PolyDiffOp(v.config(), v.arity());
                have = true;
            }
            acc += v * c;
        };
        for (const auto &[letters, coeff] : psibar_terms(word, skip_unknowns)) {
            if (letters.size() == 1)
                accum(hochschild_b(letters[0]), coeff);
            else if (letters.size() == 2)
                accum(perturb_detail::big_d2(letters[0], letters[1]), coeff);
            // D^{[r]} = 0 for r >= 3
        }
        for (const auto &[w2, coeff] : dbar_terms(word, skip_unknowns))
            accum(psi(w2), -coeff);
        return acc;
    }

    std::pair<MultiVec, PolyDiffOp> solve(const Word &word) {
        const int r = static_cast<int>(word.size());
        if (r > max_rank_)
            throw std::invalid_argument("perturbation rank cap exceeded");
        std::string key = word_key(word);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        PolyDiffOp R = defect(word, true);
        if (R.is_zero()) {
            auto res = std::make_pair(MultiVec(cfg_, word_value_rank(word)),
                                      PolyDiffOp(cfg_, std::max(word_value_rank(word) - 1, 0)));
            memo_[key] = res;
            return res;
        }
        if (!hochschild_b(R).is_zero())
            throw std::logic_error("perturbation obstruction is not a cocycle");
        HkrDecomposition dec = decompose(R);
        auto res = std::make_pair(dec.harmonic, -dec.primitive);
        if (!is_adapted_mv(res.first) || !is_adapted_op(res.second))
            throw std::logic_error("perturbation produced non-adapted data");
        memo_[key] = res;
        return res;
    }

    // rank of d'(word): degree 1 in g[2] above the word's total degree
    int word_value_rank(const Word &w) const {
        int deg = 0;
        for (const auto &x : w)
            deg += x.rank() - 2;
        return deg + 1 + 2; // (word degree + 1) back in multivector rank
    }

    std::string word_key(const Word &w) const {
        std::string k;
        for (const auto &x : w) {
            k += std::to_string(x.rank()) + "|";
            for (const auto &[m, p] : x.terms())
                k += std::to_string(m) + ":" + p.str() + ";";
            k += "#";
        }
        return k;
    }

    SpaceConfig cfg_;
    int max_rank_;
    std::map<std::string, std::pair<MultiVec, PolyDiffOp>> memo_;
};

// ---------------------------------------------------------------------------
// star products

struct StarProduct {
    SpaceConfig cfg;
    int order = 0;
    std::vector<PolyDiffOp> C; // C[0] = C_1, ..., C[order-1] = C_order
};

struct ObstructionReport {
    int order = 0;
    MultiVec cls;
};

struct NotPoisson : std::runtime_error {
    NotPoisson() : std::runtime_error("[P,P]_S != 0: not a Poisson structure") {}
};
struct NotAdapted : std::runtime_error {
    NotAdapted() : std::runtime_error("P is not adapted to C") {}
};

struct StarCheckReport {
    bool bidifferential = true;
    bool antisym_is_poisson = true;
    bool associative = true;
    bool unital = true;
    bool adapted = true;
    std::vector<std::string> failures;
    bool all_passed() const { return failures.empty(); }
};

// The bidifferential operator (f,g) -> P(df, dg).
inline PolyDiffOp poisson_operator(const MultiVec &p) {
    const SpaceConfig &cfg = p.config();
    PolyDiffOp out(cfg, 2);
    for (const auto &[s, c] : p.terms()) {
        std::vector<int> coords;
        for (int cc = 1; cc <= cfg.n; ++cc)
            if (mask_has(s, cc))
                coords.push_back(cc);
        if (coords.size() != 2)
            throw std::invalid_argument("poisson_operator needs a bivector");
        out.add_term({MultiIdx::unit(cfg.n, coords[0]), MultiIdx::unit(cfg.n, coords[1])}, c);
        out.add_term({MultiIdx::unit(cfg.n, coords[1]), MultiIdx::unit(cfg.n, coords[0])}, -c);
    }
    return out;
}

inline PolyDiffOp swap_args(const PolyDiffOp &c) {
    PolyDiffOp out(c.config(), 2);
    for (const auto &[k, coeff] : c.terms())
        out.add_term({k[1], k[0]}, coeff);
    return out;
}

// Order-k Maurer-Cartan right-hand side sum_{i+j=k, i,j>=1} C_i o_G C_j
// ( = 1/2 sum [C_i, C_j]_G ); associativity of m + sum h^r C_r at order k is
// b(C_k) = this, with the classical cobord b. (In the shifted convention
// m[1] = -m this is the equation b(h m_star) + 1/2 [h m_star, h m_star] = 0.)
inline PolyDiffOp associativity_obstruction(const std::vector<PolyDiffOp> &C, int k) {
    const SpaceConfig &cfg = C.at(0).config();
    PolyDiffOp o(cfg, 3);
    for (int i = 1; i <= k - 1; ++i) {
        int j = k - i;
        o += gerst_product(C[i - 1], C[j - 1]);
    }
    return o;
}

inline StarCheckReport verify_star(const StarProduct &s, const MultiVec &p) {
    StarCheckReport rep;
    auto fail = [&](const std::string &msg) { rep.failures.push_back(msg); };
    // (ii) C_1 antisymmetrization = P(d.,d.)
    if (!s.C.empty()) {
        PolyDiffOp anti = s.C[0] - swap_args(s.C[0]);
        if (anti != poisson_operator(p)) {
            rep.antisym_is_poisson = false;
            fail("antisymmetrization of C_1 differs from the Poisson operator");
        }
    }
    // (iii) associativity mod h^{N+1}: b(C_k) = O_k for every order
    for (int k = 1; k <= s.order; ++k) {
        PolyDiffOp lhs = hochschild_b(s.C[k - 1]);
        PolyDiffOp rhs = associativity_obstruction(s.C, k);
        if (lhs != rhs) {
            rep.associative = false;
            fail("associativity fails at order " + std::to_string(k));
        }
    }
    // (iv) unitality: no term of C_k may survive a constant argument
    for (int k = 1; k <= s.order; ++k) {
        const PolyDiffOp &c = s.C[k - 1];
        for (const auto &[key, coeff] : c.terms())
            if (key[0].is_zero() || key[1].is_zero()) {
                rep.unital = false;
                fail("unitality fails at order " + std::to_string(k));
                break;
            }
    }
    // adaptedness of every C_k (left-ideal property of I[[h]])
    for (int k = 1; k <= s.order; ++k)
        if (!is_adapted_op(s.C[k - 1])) {
            rep.adapted = false;
            fail("adaptedness fails at order " + std::to_string(k));
        }
    return rep;
}

// Maurer-Cartan order-by-order construction of an adapted star product.
inline std::variant<StarProduct, ObstructionReport> mc_build(const MultiVec &p, int order,
                                                             bool require_adapted = true) {
    const SpaceConfig &cfg = p.config();
    if (p.rank() != 2)
        throw std::invalid_argument("Poisson input must be a bivector");
    if (!schouten(p, p).is_zero())
        throw NotPoisson();
    if (require_adapted && !is_adapted_mv(p))
        throw NotAdapted();
    StarProduct s;
    s.cfg = cfg;
    s.order = order;
    if (order >= 1)
        s.C.push_back(psi1_hkr(p)); // C_1; axiom (ii) holds with scale 1
    for (int k = 2; k <= order; ++k) {
        PolyDiffOp ok = associativity_obstruction(s.C, k);
        if (!hochschild_b(ok).is_zero())
            throw std::logic_error("associativity defect is not a cocycle");
        if (ok.is_zero()) {
            s.C.push_back(PolyDiffOp(cfg, 2));
            continue;
        }
        HkrDecomposition dec = decompose(ok);
        if (!dec.harmonic.is_zero())
            return ObstructionReport{k, dec.harmonic};
        PolyDiffOp ck = dec.primitive;
        // unitality gauge: C_k <- C_k - b(c * 1-op) with c = C_k(1,1)
        Poly c11 = ck.apply({Poly(1), Poly(1)});
        if (!c11.is_zero())
            ck -= hochschild_b(PolyDiffOp::from_poly(cfg, c11));
        s.C.push_back(std::move(ck));
    }
    StarCheckReport rep = verify_star(s, p);
    bool ok_flag = true;
    for (const auto &f : rep.failures)
        if (!(f.rfind("adaptedness", 0) == 0 && !require_adapted))
            ok_flag = false;
    if (!ok_flag)
        throw std::logic_error("mc_build produced a product failing verification: " +
                               rep.failures[0]);
    return s;
}

// Closed-form standard-ordered product on n=2, l=1 for P = dy ^ dx:
// C_r(f,g) = 1/r! d_y^r f d_x^r g.
inline StarProduct standard_ordered_product(int order) {
    SpaceConfig cfg(2, 1);
    StarProduct s;
    s.cfg = cfg;
    s.order = order;
    for (int r = 1; r <= order; ++r) {
        PolyDiffOp c(cfg, 2);
        MultiIdx dy(2), dx(2);
        dy.o[1] = r;
        dx.o[0] = r;
        c.add_term({dy, dx}, Poly(Rat(1) / factorial(static_cast<unsigned>(r))));
        s.C.push_back(c);
    }
    return s;
}

} // namespace costar
