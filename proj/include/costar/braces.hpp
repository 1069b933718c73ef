#pragma once

#include "costar/coalg.hpp"

#include <sstream>

namespace costar::coalg {

// phi{psi_1,...,psi_k}: place the psi's, in order, on disjoint consecutive
// runs of the input word; Koszul signs from moving each psi past the letters
// before its run; phi eats the contracted word.
inline CochainTable braces(const GradedSpace &h, const CochainTable &phi,
                           const std::vector<CochainTable> &psis, size_t cap) {
    CochainTable out;
    out.degree = phi.degree;
    out.hshift = phi.hshift;
    for (const auto &ps : psis)
        out.degree += ps.degree;
    for (const Word &w : words_up_to(h, cap)) {
        // choose run starts/ends for each psi in order
        GVec total;
        const size_t n = w.size(), k = psis.size();
        // positions[i] = (start, end) of psi_i's run
        std::function<void(size_t, size_t, std::vector<std::pair<size_t, size_t>> &)> rec =
            [&](size_t next, size_t idx, std::vector<std::pair<size_t, size_t>> &runs) {
                if (idx == k) {
                    // Koszul sign of evaluating id (x) psi_1 (x) id ... on the
                    // letters: psi_i passes every letter strictly before its
                    // run (the psi's themselves stay in order).
                    int sign = 1;
                    for (size_t i = 0; i < k; ++i) {
                        if (psis[i].degree % 2 == 0)
                            continue;
                        int before = 0;
                        for (size_t q = 0; q < runs[i].first; ++q)
                            if (letter_degree(h, phi, w[q]) % 2)
                                before ^= 1;
                        if (before)
                            sign = -sign;
                    }
                    // build the contracted word as a sum
                    std::vector<std::pair<Word, Rat>> acc{{Word{}, Rat(sign)}};
                    size_t pos = 0;
                    for (size_t i = 0; i <= k; ++i) {
                        size_t stop = (i < k) ? runs[i].first : n;
                        for (; pos < stop; ++pos)
                            for (auto &[ww, cc] : acc)
                                ww.push_back(w[pos]);
                        if (i < k) {
                            Word run(w.begin() + runs[i].first, w.begin() + runs[i].second);
                            GVec v = psis[i].value(run);
                            std::vector<std::pair<Word, Rat>> nxt;
                            for (const auto &[val, c] : v)
                                for (const auto &[ww, cc] : acc) {
                                    Word n2 = ww;
                                    n2.push_back(static_cast<int>(val));
                                    nxt.emplace_back(std::move(n2), cc * c);
                                }
                            acc = std::move(nxt);
                            pos = runs[i].second;
                        }
                        if (acc.empty())
                            break;
                    }
                    for (const auto &[ww, cc] : acc)
                        gvec_add(total, phi.value(ww), cc);
                    return;
                }
                for (size_t s = next; s < n; ++s)
                    for (size_t e = s + 1; e <= n; ++e) {
                        runs.push_back({s, e});
                        rec(e, idx + 1, runs);
                        runs.pop_back();
                    }
            };
        std::vector<std::pair<size_t, size_t>> runs;
        rec(0, 0, runs);
        if (!total.empty())
            out.add(w, total);
    }
    return out;
}

// Registry interning cochains so that words of cochains have canonical keys.
class CochainRegistry {
  public:
    size_t intern(const GradedSpace &h, const CochainTable &c) {
        std::string key = serialize(c);
        auto it = lookup_.find(key);
        if (it != lookup_.end())
            return it->second;
        items_.push_back(c);
        lookup_[key] = items_.size() - 1;
        return items_.size() - 1;
    }
    const CochainTable &at(size_t i) const { return items_.at(i); }
    size_t size() const { return items_.size(); }

  private:
    static std::string serialize(const CochainTable &c) {
        std::ostringstream os;
        os << c.degree << "$" << c.hshift << "$";
        for (const auto &[w, v] : c.table) {
            for (int i : w)
                os << i << ",";
            os << ":";
            for (const auto &[idx, r] : v)
                os << idx << "=" << rat_to_string(r) << ";";
            os << "|";
        }
        return os.str();
    }
    std::vector<CochainTable> items_;
    std::map<std::string, size_t> lookup_;
};

using CWord = std::vector<size_t>; // word of interned cochains

struct CWordSum {
    std::map<CWord, Rat> terms;
    void add(const CWord &w, const Rat &c) {
        if (c == 0)
            return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms[w] = c;
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
    void add(const CWordSum &o, const Rat &s = Rat(1)) {
        for (const auto &[w, c] : o.terms)
            add(w, c * s);
    }
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const CWordSum &a, const CWordSum &b) {
        return a.terms == b.terms;
    }
};

inline int cword_degree(const CochainRegistry &reg, const CWord &w) {
    int d = 0;
    for (size_t i : w)
        d += reg.at(i).degree;
    return d;
}

// bullet_K per the displayed brace formula: sum over
// 0 <= s_1 <= ... <= s_{2k} <= l of interleavings
// psi_1..psi_{s_1} (phi_1{psi_{s_1+1}..psi_{s_2}}) psi_{s_2+1}.. with sign
// prod_r (-1)^{(|phi_r|+..+|phi_k|)(|psi_{s_{2r-3}+1}|+..+|psi_{s_{2r-1}}|)},
// s_{-1} := 0.
inline CWordSum bullet_K_formula(const GradedSpace &h, CochainRegistry &reg, const CWord &u,
                                 const CWord &v, size_t cap) {
    CWordSum out;
    const size_t k = u.size(), l = v.size();
    std::vector<size_t> s(2 * k + 1, 0); // s[1..2k]
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == 2 * k + 1) {
            // sign
            long expo = 0;
            for (size_t r = 1; r <= k; ++r) {
                int tail = 0;
                for (size_t q = r - 1; q < k; ++q)
                    tail += reg.at(u[q]).degree;
                size_t lo = (r >= 2) ? s[2 * r - 3] : 0; // s_{-1} = 0 for r=1
                size_t hi = s[2 * r - 1];
                int mid = 0;
                for (size_t q = lo; q < hi; ++q)
                    mid += reg.at(v[q]).degree;
                expo += static_cast<long>(tail) * mid;
            }
            int sign = (expo % 2) ? -1 : 1;
            // build the word
            CWord w;
            size_t pos = 0;
            bool dead = false;
            for (size_t r = 1; r <= k && !dead; ++r) {
                for (; pos < s[2 * r - 1]; ++pos)
                    w.push_back(v[pos]);
                // phi_r{psi_{s_{2r-1}+1}..psi_{s_{2r}}}
                std::vector<CochainTable> args;
                for (size_t q = s[2 * r - 1]; q < s[2 * r]; ++q)
                    args.push_back(reg.at(v[q]));
                CochainTable braced = braces(h, reg.at(u[r - 1]), args, cap);
                if (braced.is_zero() && !args.empty()) {
                    dead = true;
                    break;
                }
                w.push_back(reg.intern(h, args.empty() ? reg.at(u[r - 1]) : braced));
                pos = s[2 * r];
            }
            if (dead)
                return;
            for (; pos < l; ++pos)
                w.push_back(v[pos]);
            out.add(w, Rat(sign));
            return;
        }
        for (size_t val = (idx > 1 ? s[idx - 1] : 0); val <= l; ++val) {
            s[idx] = val;
            rec(idx + 1);
        }
    };
    rec(1);
    return out;
}

// bullet_K via coinduction: mu_K is the cogebra morphism coinduced by
// m_K(xi (x) eta) = pr(xi) o rho(eta) + eps(xi) pr(eta) on the tensor-product
// coalgebra; computed by the first-block recursion with product-coalgebra
// Koszul signs.
inline CWordSum bullet_K_coinduced(const GradedSpace &h, CochainRegistry &reg,
                                   const CWord &u, const CWord &v, size_t cap) {
    CWordSum out;
    if (u.empty() && v.empty()) {
        out.add(CWord{}, Rat(1));
        return out;
    }
    // first block (u1 (x) v1) -> m_K value; m_K nonzero when |u1| = 1 (braces)
    // or (u1 empty, |v1| = 1)
    for (size_t cu = 0; cu <= std::min<size_t>(u.size(), 1); ++cu)
        for (size_t cv = 0; cv <= v.size(); ++cv) {
            if (cu == 0 && cv != 1)
                continue;
            if (cu == 1 && false)
                continue;
            CWord u1(u.begin(), u.begin() + cu), urest(u.begin() + cu, u.end());
            CWord v1(v.begin(), v.begin() + cv), vrest(v.begin() + cv, v.end());
            // Koszul sign of the deconcatenation (u1 v1)(urest vrest):
            // urest passes v1
            int udeg = cword_degree(reg, urest);
            int vdeg = cword_degree(reg, v1);
            int sign = ((udeg % 2) && (vdeg % 2)) ? -1 : 1;
            size_t letter;
            if (cu == 0)
                letter = v1[0];
            else {
                std::vector<CochainTable> args;
                for (size_t q : v1)
                    args.push_back(reg.at(q));
                CochainTable braced =
                    args.empty() ? reg.at(u1[0]) : braces(h, reg.at(u1[0]), args, cap);
                if (braced.is_zero() && !args.empty())
                    continue;
                letter = reg.intern(h, braced);
            }
            CWordSum rest = bullet_K_coinduced(h, reg, urest, vrest, cap);
            for (const auto &[w, c] : rest.terms) {
                CWord nw;
                nw.push_back(letter);
                nw.insert(nw.end(), w.begin(), w.end());
                out.add(nw, c * Rat(sign));
            }
        }
    return out;
}

// graded cup product, defined through the braces with the shifted
// multiplication: phi u psi := m1{phi, psi}.
inline CochainTable cup_cochain(const GradedSpace &h, const CochainTable &m1,
                                const CochainTable &phi, const CochainTable &psi,
                                size_t cap) {
    return braces(h, m1, {phi, psi}, cap);
}

// b on letters: the graded commutator [m1, phi]_G with the shifted
// multiplication m1 (degree 1).
inline CochainTable cochain_b(const GradedSpace &h, const CochainTable &m1,
                              const CochainTable &phi, size_t cap) {
    return bracket_G(h, m1, phi, cap);
}

// b_K via the displayed two-sum formula (b on one letter; cup of adjacent
// letters); both sums carry the prefix sign (-1)^{|phi_1|+...+|phi_s|}.
inline CWordSum b_K_formula(const GradedSpace &h, CochainRegistry &reg,
                            const CochainTable &m1, const CWord &w, size_t cap) {
    CWordSum out;
    const size_t k = w.size();
    for (size_t s = 0; s < k; ++s) {
        int pre = 0;
        for (size_t q = 0; q < s; ++q)
            pre += reg.at(w[q]).degree;
        CochainTable bphi = cochain_b(h, m1, reg.at(w[s]), cap);
        if (bphi.is_zero())
            continue;
        CWord nw(w.begin(), w.begin() + s);
        nw.push_back(reg.intern(h, bphi));
        nw.insert(nw.end(), w.begin() + s + 1, w.end());
        out.add(nw, Rat(pre % 2 ? -1 : 1));
    }
    for (size_t s = 0; s + 1 < k; ++s) {
        int pre = 0;
        for (size_t q = 0; q < s; ++q)
            pre += reg.at(w[q]).degree;
        CochainTable cupv = cup_cochain(h, m1, reg.at(w[s]), reg.at(w[s + 1]), cap);
        if (cupv.is_zero())
            continue;
        CWord nw(w.begin(), w.begin() + s);
        nw.push_back(reg.intern(h, cupv));
        nw.insert(nw.end(), w.begin() + s + 2, w.end());
        out.add(nw, Rat(pre % 2 ? -1 : 1));
    }
    return out;
}

// Canonical multilinear expansion of a word-of-cochains sum: letters are
// expanded over elementary single-entry tables so that linear combinations
// hiding inside interned letters compare equal.
using ElemLetter = std::pair<Word, size_t>;
using ElemWord = std::vector<ElemLetter>;

inline std::map<ElemWord, Rat> cword_canonical(const CochainRegistry &reg,
                                               const CWordSum &s) {
    std::map<ElemWord, Rat> out;
    for (const auto &[w, coeff] : s.terms) {
        std::vector<std::pair<ElemWord, Rat>> acc{{ElemWord{}, coeff}};
        for (size_t id : w) {
            const CochainTable &t = reg.at(id);
            std::vector<std::pair<ElemWord, Rat>> nxt;
            for (const auto &[word, vec] : t.table)
                for (const auto &[target, c] : vec)
                    for (const auto &[ew, ec] : acc) {
                        ElemWord e2 = ew;
                        e2.emplace_back(word, target);
                        nxt.emplace_back(std::move(e2), ec * c);
                    }
            acc = std::move(nxt);
        }
        for (const auto &[ew, ec] : acc) {
            auto &v = out[ew];
            v += ec;
            if (v == 0)
                out.erase(ew);
        }
    }
    return out;
}

// b_K as the bullet_K-commutator with the one-letter word m1.
inline CWordSum b_K_commutator(const GradedSpace &h, CochainRegistry &reg,
                               const CochainTable &m1, const CWord &w, size_t cap) {
    size_t m1id = reg.intern(h, m1);
    CWord mword{m1id};
    CWordSum left = bullet_K_formula(h, reg, mword, w, cap);
    CWordSum right = bullet_K_formula(h, reg, w, mword, cap);
    int wd = cword_degree(reg, w);
    CWordSum out = left;
    out.add(right, Rat((wd % 2) ? 1 : -1)); // - (-1)^{|w| |m1|}, |m1| = 1
    return out;
}

} // namespace costar::coalg
