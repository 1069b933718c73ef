#pragma once

#include "costar/graded_algebra.hpp"
#include "costar/rational.hpp"

#include <functional>
#include <optional>
#include <map>
#include <string>
#include <vector>

namespace costar::coalg {

// Finite graded space: named basis with integer degrees.
struct GradedSpace {
    std::vector<std::string> names;
    std::vector<int> degrees;
    size_t dim() const { return names.size(); }
};

using Word = std::vector<int>; // basis indices; empty = the group-like 1

struct WordSum {
    std::map<Word, Rat> terms;
    void add(const Word &w, const Rat &c) {
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
    void add(const WordSum &o, const Rat &scale = Rat(1)) {
        for (const auto &[w, c] : o.terms)
            add(w, c * scale);
    }
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const WordSum &a, const WordSum &b) { return a.terms == b.terms; }
};

inline int word_degree(const GradedSpace &h, const Word &w) {
    int d = 0;
    for (int i : w)
        d += h.degrees[i];
    return d;
}

// Graded signature e(x_1..x_n, sigma) of the right action w^sigma =
// x_{sigma(1)}..x_{sigma(n)}: product over inversions of (-1)^{|x_si||x_sj|}.
inline Rat signature(const GradedSpace &h, const Word &w, const std::vector<int> &sigma) {
    int sign = 1;
    const size_t n = w.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (sigma[i] > sigma[j] && (h.degrees[w[sigma[i]]] % 2) &&
                (h.degrees[w[sigma[j]]] % 2))
                sign = -sign;
    return Rat(sign);
}

// Signed shuffle product (riffle shuffles of u and v with Koszul signs).
inline WordSum shuffle(const GradedSpace &h, const Word &u, const Word &v) {
    WordSum out;
    const size_t k = u.size(), l = v.size();
    // choose positions of u-letters in the merged word
    std::vector<bool> take(k + l, false);
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t used) {
        if (pos == k + l) {
            Word w;
            size_t iu = 0, iv = 0;
            int sign = 1;
            // Koszul sign: each v-letter placed before a u-letter that
            // originally preceded it... compute by counting inversions of the
            // interleave: v_j passes u_i when u_i comes after v_j in w.
            std::vector<int> vdeg_after; // degrees of u-letters not yet placed
            for (size_t p = 0; p < k + l; ++p) {
                if (take[p])
                    w.push_back(u[iu++]);
                else {
                    // v-letter jumps over remaining u-letters iu..k-1? no:
                    // it jumps over the u-letters that appear AFTER it
                    int d = h.degrees[v[iv]];
                    if (d % 2) {
                        int odd_u_after = 0;
                        for (size_t q = iu; q < k; ++q)
                            if (h.degrees[u[q]] % 2)
                                ++odd_u_after;
                        if (odd_u_after % 2)
                            sign = -sign;
                    }
                    w.push_back(v[iv++]);
                }
            }
            out.add(w, Rat(sign));
            return;
        }
        if (used < k) {
            take[pos] = true;
            rec(pos + 1, used + 1);
        }
        if (pos - used < l) {
            take[pos] = false;
            rec(pos + 1, used);
        }
    };
    rec(0, 0);
    return out;
}

// Deconcatenation comultiplication: all splits of w (both parts may be empty).
inline std::vector<std::pair<Word, Word>> deconcat(const Word &w) {
    std::vector<std::pair<Word, Word>> out;
    for (size_t r = 0; r <= w.size(); ++r)
        out.emplace_back(Word(w.begin(), w.begin() + r), Word(w.begin() + r, w.end()));
    return out;
}

// Cochain: linear map h^{(x)+} -> h stored by values on basis words, with a
// declared internal degree and a suspension level (for decalage bookkeeping:
// letters live in h[hshift]).
struct CochainTable {
    int degree = 0;
    int hshift = 0;
    std::map<Word, GVec> table;

    bool is_zero() const { return table.empty(); }
    GVec value(const Word &w) const {
        auto it = table.find(w);
        return it == table.end() ? GVec{} : it->second;
    }
    void add(const Word &w, const GVec &v, const Rat &scale = Rat(1)) {
        if (v.empty() || scale == 0)
            return;
        GVec &dst = table[w];
        gvec_add(dst, v, scale);
        if (dst.empty())
            table.erase(w);
    }
    GVec value_on(const WordSum &s) const {
        GVec out;
        for (const auto &[w, c] : s.terms)
            gvec_add(out, value(w), c);
        return out;
    }
    friend bool operator==(const CochainTable &a, const CochainTable &b) {
        return a.degree == b.degree && a.table == b.table;
    }
};

inline int letter_degree(const GradedSpace &h, const CochainTable &d, int basis_idx) {
    return h.degrees[basis_idx] - d.hshift;
}

// Cogebra morphism coinduced by a degree-0 map phi (geometric convolution
// series): phibar(w) = sum over ordered block splits of phi(block) letters.
inline WordSum coinduce_morphism(const GradedSpace &h, const CochainTable &phi,
                                 const Word &w) {
    WordSum out;
    if (w.empty()) {
        out.add(Word{}, Rat(1));
        return out;
    }
    // recursion over the first block
    for (size_t first = 1; first <= w.size(); ++first) {
        Word head(w.begin(), w.begin() + first);
        GVec v = phi.value(head);
        if (v.empty())
            continue;
        Word tail(w.begin() + first, w.end());
        WordSum rest = coinduce_morphism(h, phi, tail);
        for (const auto &[i, c] : v)
            for (const auto &[rw, rc] : rest.terms) {
                Word nw;
                nw.push_back(static_cast<int>(i));
                nw.insert(nw.end(), rw.begin(), rw.end());
                out.add(nw, c * rc);
            }
    }
    return out;
}

// Coderivation along the identity coinduced by d:
// dbar(w) = sum_{consecutive mid} (-1)^{|d| deg(left)} left . d(mid) . right.
inline WordSum coinduce_coderivation(const GradedSpace &h, const CochainTable &d,
                                     const Word &w) {
    WordSum out;
    const size_t n = w.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j <= n; ++j) {
            Word mid(w.begin() + i, w.begin() + j);
            GVec v = d.value(mid);
            if (v.empty())
                continue;
            int ldeg = 0;
            for (size_t q = 0; q < i; ++q)
                ldeg += letter_degree(h, d, w[q]);
            int sign = ((d.degree % 2) && (ldeg % 2)) ? -1 : 1;
            for (const auto &[val, c] : v) {
                Word nw(w.begin(), w.begin() + i);
                nw.push_back(static_cast<int>(val));
                nw.insert(nw.end(), w.begin() + j, w.end());
                out.add(nw, c * Rat(sign));
            }
        }
    return out;
}

inline std::vector<Word> words_up_to(const GradedSpace &h, size_t cap) {
    std::vector<Word> out;
    Word cur;
    std::function<void(size_t)> rec = [&](size_t len) {
        if (!cur.empty())
            out.push_back(cur);
        if (len == cap)
            return;
        for (size_t i = 0; i < h.dim(); ++i) {
            cur.push_back(static_cast<int>(i));
            rec(len + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Gerstenhaber composition d1 o_G d2 = d1 o (coinduced coderivation of d2),
// tabulated on words up to the cap.
inline CochainTable circ_G(const GradedSpace &h, const CochainTable &d1,
                           const CochainTable &d2, size_t cap) {
    CochainTable out;
    out.degree = d1.degree + d2.degree;
    out.hshift = d1.hshift;
    for (const Word &w : words_up_to(h, cap)) {
        GVec v = d1.value_on(coinduce_coderivation(h, d2, w));
        if (!v.empty())
            out.add(w, v);
    }
    return out;
}

inline CochainTable bracket_G(const GradedSpace &h, const CochainTable &d1,
                              const CochainTable &d2, size_t cap) {
    CochainTable out = circ_G(h, d1, d2, cap);
    CochainTable other = circ_G(h, d2, d1, cap);
    int sgn = (d1.degree * d2.degree) % 2 ? 1 : -1; // subtract (-1)^{|d1||d2|}
    for (const auto &[w, v] : other.table)
        out.add(w, v, Rat(sgn));
    return out;
}

// --- symmetric (Nijenhuis-Richardson) side --------------------------------

// canonical form of a symmetric word: indices sorted ascending, Koszul sign.
inline std::pair<Word, Rat> sym_normalize(const GradedSpace &h, const Word &w) {
    Word s = w;
    int sign = 1;
    // insertion sort with graded transposition signs
    for (size_t i = 1; i < s.size(); ++i)
        for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            if ((h.degrees[s[j - 1]] % 2) && (h.degrees[s[j]] % 2))
                sign = -sign;
            std::swap(s[j - 1], s[j]);
        }
    return {s, Rat(sign)};
}

// coderivation on S h coinduced by a symmetric cochain d:
// dbar(x_1...x_n) = sum_{B} unshuffle_sign * d(x_B) . x_rest  (normalized)
inline WordSum sym_coderivation(const GradedSpace &h, const CochainTable &d, const Word &w) {
    WordSum out;
    const size_t n = w.size();
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        Word sub, rest;
        int sign = 1;
        for (size_t p = 0; p < n; ++p) {
            if ((mask >> p) & 1) {
                // move past unchosen letters before p
                if (letter_degree(h, d, w[p]) % 2) {
                    for (size_t q = 0; q < p; ++q)
                        if (!((mask >> q) & 1) && (letter_degree(h, d, w[q]) % 2))
                            sign = -sign;
                }
                sub.push_back(w[p]);
            } else
                rest.push_back(w[p]);
        }
        GVec v = d.value(sub);
        if (v.empty())
            continue;
        // normalize with per-position degrees (the inserted value carries
        // degree sum(sub) + |d|, which need not match its basis degree
        // bookkeeping under shifts)
        int valdeg_base = 0;
        for (int q : sub)
            valdeg_base += letter_degree(h, d, q);
        valdeg_base += d.degree;
        for (const auto &[val, c] : v) {
            std::vector<std::pair<int, int>> seq; // (index, degree)
            seq.emplace_back(static_cast<int>(val), valdeg_base);
            for (int q : rest)
                seq.emplace_back(q, letter_degree(h, d, q));
            // insertion sort by index with Koszul signs
            int s3 = 1;
            for (size_t i = 1; i < seq.size(); ++i)
                for (size_t j = i; j > 0 && seq[j - 1].first > seq[j].first; --j) {
                    if ((seq[j - 1].second % 2) && (seq[j].second % 2))
                        s3 = -s3;
                    std::swap(seq[j - 1], seq[j]);
                }
            Word nw;
            bool dead = false;
            for (size_t t = 0; t < seq.size(); ++t) {
                if (t + 1 < seq.size() && seq[t].first == seq[t + 1].first &&
                    (seq[t].second % 2) && (seq[t + 1].second % 2))
                    dead = true; // odd letters square to zero in S h
                nw.push_back(seq[t].first);
            }
            if (!dead)
                out.add(nw, c * Rat(sign * s3));
        }
    }
    return out;
}

inline std::vector<Word> sym_words_up_to(const GradedSpace &h, size_t cap) {
    std::vector<Word> out;
    Word cur;
    std::function<void(int, size_t)> rec = [&](int minidx, size_t len) {
        if (!cur.empty())
            out.push_back(cur);
        if (len == cap)
            return;
        for (size_t i = static_cast<size_t>(minidx); i < h.dim(); ++i) {
            // odd letters cannot repeat (x*x = 0 for odd |x|)
            if (!cur.empty() && cur.back() == static_cast<int>(i) &&
                (h.degrees[i] % 2))
                continue;
            cur.push_back(static_cast<int>(i));
            rec(static_cast<int>(i), len + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

inline CochainTable circ_NR(const GradedSpace &h, const CochainTable &d1,
                            const CochainTable &d2, size_t cap) {
    CochainTable out;
    out.degree = d1.degree + d2.degree;
    out.hshift = d1.hshift;
    for (const Word &w : sym_words_up_to(h, cap)) {
        GVec v = d1.value_on(sym_coderivation(h, d2, w));
        if (!v.empty())
            out.add(w, v);
    }
    return out;
}

// --- Harrison side ---------------------------------------------------------

// a cochain is Harrison when it vanishes on all shuffles u . v
inline bool is_harrison(const GradedSpace &h, const CochainTable &d, size_t cap) {
    for (const Word &u : words_up_to(h, cap - 1))
        for (const Word &v : words_up_to(h, cap - u.size())) {
            if (u.size() + v.size() > cap)
                continue;
            if (!d.value_on(shuffle(h, u, v)).empty())
                return false;
        }
    return true;
}

inline CochainTable circ_H(const GradedSpace &h, const CochainTable &d1,
                           const CochainTable &d2, size_t cap) {
    return circ_G(h, d1, d2, cap); // on Harrison cochains o_G restricts
}

// --- decalage ---------------------------------------------------------------

// phi[j] for a (k -> 1)-component cochain per the shifted-map sign rule.
inline CochainTable shift(const GradedSpace &h, const CochainTable &phi, int j) {
    CochainTable out;
    out.hshift = phi.hshift + j;
    // |phi[j]| = j(k-1) + |phi| for a (k -> 1)-map; a mixed-length table has
    // no homogeneous shifted degree
    std::optional<size_t> klen;
    for (const auto &[w, v] : phi.table) {
        if (klen && *klen != w.size())
            throw std::invalid_argument("shift of a mixed-arity cochain table");
        klen = w.size();
    }
    out.degree = phi.degree +
                 (klen ? j * (static_cast<int>(*klen) - 1) : 0);
    for (const auto &[w, v] : phi.table) {
        const int k = static_cast<int>(w.size());
        // (-1)^{ k(k-1)/2 * j(j-1)/2 } from (s^{(x)k})^j = +- (s^j)^{(x)k}
        long e1 = (static_cast<long>(k) * (k - 1) / 2) * (static_cast<long>(j) * (j - 1) / 2);
        // (-1)^{ j * sum_{i<k} (k-i) |y_i| } with |y_i| the h[hshift+j]-degree
        long e2 = 0;
        for (int i = 0; i + 1 < k; ++i)
            e2 += static_cast<long>(k - 1 - i) *
                  (h.degrees[w[i]] - phi.hshift - j); // degree of y_{i+1}
        long e = (j % 2 == 0) ? e1 : e1 + e2;
        int sign = (e % 2) ? -1 : 1;
        out.add(w, v, Rat(sign));
    }
    return out;
}

} // namespace costar::coalg
