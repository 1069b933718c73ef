#pragma once

#include "costar/coalg.hpp"
#include "costar/multivector.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace costar::coalg {

struct CapExceeded : std::runtime_error {
    CapExceeded() : std::runtime_error("GWord truncation cap exceeded") {}
};

// Finite-dimensional fragment of the Gerstenhaber algebra of adapted
// multivectors: a monomial basis with wedge and Schouten structure constants,
// partial (throws CapExceeded when a product leaves the span).
struct GerstFragment {
    GradedSpace h; // degrees = rank - 1 (letters live in g_I[1])
    std::vector<MultiVec> basis;
    std::map<std::pair<IndexMask, Monomial>, size_t> index;

    static GerstFragment adapted_monomials(const SpaceConfig &cfg, uint32_t max_deg) {
        GerstFragment f;
        std::vector<Monomial> monos;
        {
            std::vector<uint32_t> exps(cfg.n, 0);
            std::function<void(int, uint32_t)> rec = [&](int pos, uint32_t left) {
                if (pos == cfg.n) {
                    Monomial m;
                    for (int c = 0; c < cfg.n; ++c)
                        if (exps[c] > 0)
                            m.emplace_back(base_var(c + 1), exps[c]);
                    monos.push_back(m);
                    return;
                }
                for (uint32_t v = 0; v <= left; ++v) {
                    exps[pos] = v;
                    rec(pos + 1, left - v);
                }
                exps[pos] = 0;
            };
            rec(0, max_deg);
        }
        IndexMask transversal = 0;
        for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
            transversal = mask_add(transversal, c);
        for (IndexMask s = 0; s < (1u << cfg.n); ++s)
            for (const Monomial &m : monos) {
                // adaptedness: all-transversal masks need ideal coefficients
                if ((s & ~transversal) == 0) {
                    bool in_i = false;
                    for (const auto &[v, e] : m)
                        if (cfg.transversal(v.coord))
                            in_i = true;
                    if (!in_i)
                        continue;
                }
                MultiVec mv(cfg, mask_rank(s));
                mv.add_term(s, Poly::monomial(m, Rat(1)));
                f.index[{s, m}] = f.basis.size();
                f.basis.push_back(mv);
                f.h.names.push_back("b" + std::to_string(f.basis.size() - 1));
                f.h.degrees.push_back(mask_rank(s) - 1);
            }
        return f;
    }

    GVec expand(const MultiVec &x) const {
        GVec out;
        for (const auto &[s, p] : x.terms())
            for (const auto &[m, c] : p.terms()) {
                auto it = index.find({s, m});
                if (it == index.end())
                    throw CapExceeded();
                gvec_add(out, it->second, c);
            }
        return out;
    }

    GVec wedge_basis(size_t i, size_t j) const {
        return expand(costar::wedge(basis[i], basis[j]));
    }
    GVec bracket_basis(size_t i, size_t j) const {
        return expand(costar::schouten(basis[i], basis[j]));
    }
};

// GWord: symmetric word of columns; a column is a word of letters. Canonical
// form sorts columns lexicographically with Koszul signs over the columns'
// shifted degrees (sum of letter degrees - 1).
using GWord = std::vector<Word>;

inline int column_degree(const GradedSpace &h, const Word &col) {
    return word_degree(h, col) - 1;
}
inline int gword_degree(const GradedSpace &h, const GWord &w) {
    int d = 0;
    for (const auto &col : w)
        d += column_degree(h, col);
    return d;
}
inline size_t gword_tensor_degree(const GWord &w) {
    size_t n = 0;
    for (const auto &col : w)
        n += col.size();
    return n;
}

inline std::optional<std::pair<GWord, int>> gword_normalize(const GradedSpace &h,
                                                            const GWord &w) {
    GWord s = w;
    int sign = 1;
    for (size_t i = 1; i < s.size(); ++i)
        for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            if ((column_degree(h, s[j - 1]) % 2) && (column_degree(h, s[j]) % 2))
                sign = -sign;
            std::swap(s[j - 1], s[j]);
        }
    // odd columns square to zero
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == s[i + 1] && (column_degree(h, s[i]) % 2))
            return std::nullopt;
    return std::make_pair(s, sign);
}

struct GWordSum {
    std::map<GWord, Rat> terms;
    void add_normalized(const GradedSpace &h, const GWord &w, const Rat &c) {
        auto norm = gword_normalize(h, w);
        if (!norm || c == 0)
            return;
        auto &[nw, sgn] = *norm;
        auto it = terms.find(nw);
        Rat v = c * Rat(sgn);
        if (it == terms.end()) {
            if (v != 0)
                terms[nw] = v;
            return;
        }
        it->second += v;
        if (it->second == 0)
            terms.erase(it);
    }
    bool is_zero() const { return terms.empty(); }
};

// Cochain on the cofree Gerstenhaber coalgebra, tabulated on normalized
// GWords.
struct GCochain {
    int degree = 0;
    std::map<GWord, GVec> table;

    bool is_zero() const { return table.empty(); }
    GVec value(const GradedSpace &h, const GWord &w) const {
        auto norm = gword_normalize(h, w);
        if (!norm)
            return {};
        auto it = table.find(norm->first);
        if (it == table.end())
            return {};
        GVec out = it->second;
        if (norm->second < 0) {
            GVec neg;
            for (const auto &[i, c] : out)
                neg[i] = -c;
            return neg;
        }
        return out;
    }
    GVec value_on(const GradedSpace &h, const GWordSum &s) const {
        GVec out;
        for (const auto &[w, c] : s.terms)
            gvec_add(out, value(h, w), c);
        return out;
    }
    void add(const GradedSpace &h, const GWord &w, const GVec &v, const Rat &scale = Rat(1)) {
        if (v.empty() || scale == 0)
            return;
        auto norm = gword_normalize(h, w);
        if (!norm)
            return;
        GVec &dst = table[norm->first];
        gvec_add(dst, v, scale * Rat(norm->second));
        if (dst.empty())
            table.erase(norm->first);
    }
    friend bool operator==(const GCochain &a, const GCochain &b) {
        return a.table == b.table;
    }
};

// Coinduced coderivation of a GWord cochain c along the identity, evaluated
// on a GWord: host-column formula. The cochain consumes a consecutive letter
// run inside one host column together with a subset of the other columns; its
// value is spliced into the host at the run's position.
inline GWordSum gword_coderivation(const GradedSpace &h, const GCochain &c, const GWord &w);

inline std::vector<GWord> gwords_up_to(const GradedSpace &h, size_t cap) {
    std::vector<GWord> out;
    std::vector<Word> cols = words_up_to(h, cap);
    // build multisets of columns with total tensor degree <= cap
    std::function<void(size_t, size_t, GWord &)> rec = [&](size_t start, size_t used,
                                                           GWord &cur) {
        if (!cur.empty()) {
            auto norm = gword_normalize(h, cur);
            if (norm && norm->first == cur)
                out.push_back(cur);
        }
        for (size_t i = start; i < cols.size(); ++i) {
            if (used + cols[i].size() > cap)
                continue;
            cur.push_back(cols[i]);
            rec(i, used + cols[i].size(), cur);
            cur.pop_back();
        }
    };
    GWord cur;
    std::sort(cols.begin(), cols.end());
    rec(0, 0, cur);
    return out;
}

// Lazy cochain evaluator: avoids tabulating over large letter alphabets.
struct GEval {
    int degree = 0;
    std::function<GVec(const GWord &)> eval;
};

inline GEval as_eval(const GradedSpace &h, const GCochain &c) {
    return GEval{c.degree, [&h, c](const GWord &w) { return c.value(h, w); }};
}

// coinduced coderivation of the evaluator b, applied to a GWord
inline GWordSum gword_coderivation_lazy(const GradedSpace &h, const GEval &b,
                                        const GWord &w) {
    GWordSum out;
    const size_t m = w.size();
    for (size_t host = 0; host < m; ++host) {
        const Word &col = w[host];
        for (size_t p = 0; p < col.size(); ++p)
            for (size_t q = p + 1; q <= col.size(); ++q) {
                Word run(col.begin() + p, col.begin() + q);
                for (uint32_t mask = 0; mask < (1u << m); ++mask) {
                    if (mask & (1u << host))
                        continue;
                    GWord arg;
                    arg.push_back(run);
                    for (size_t a = 0; a < m; ++a)
                        if ((mask >> a) & 1)
                            arg.push_back(w[a]);
                    auto norm = gword_normalize(h, arg);
                    if (!norm)
                        continue;
                    GVec v = b.eval(norm->first);
                    if (v.empty())
                        continue;
                    Rat normsign = Rat(norm->second);
                    int expo = 0;
                    if (b.degree % 2) {
                        for (size_t bb = 0; bb < host; ++bb)
                            if (!((mask >> bb) & 1) && (column_degree(h, w[bb]) % 2))
                                expo ^= 1;
                        for (size_t t = 0; t < p; ++t)
                            if (h.degrees[col[t]] % 2)
                                expo ^= 1;
                    }
                    for (size_t a = 0; a < m; ++a) {
                        if (!((mask >> a) & 1) || column_degree(h, w[a]) % 2 == 0)
                            continue;
                        if (a < host) {
                            for (size_t bb = a + 1; bb < host; ++bb)
                                if (!((mask >> bb) & 1) && (column_degree(h, w[bb]) % 2))
                                    expo ^= 1;
                            for (size_t t = 0; t < p; ++t)
                                if (h.degrees[col[t]] % 2)
                                    expo ^= 1;
                        } else {
                            for (size_t bb = host + 1; bb < a; ++bb)
                                if (!((mask >> bb) & 1) && (column_degree(h, w[bb]) % 2))
                                    expo ^= 1;
                            for (size_t t = q; t < col.size(); ++t)
                                if (h.degrees[col[t]] % 2)
                                    expo ^= 1;
                        }
                    }
                    Rat factor = normsign * Rat(expo % 2 ? -1 : 1);
                    for (const auto &[val, coeff] : v) {
                        GWord nw;
                        for (size_t bb = 0; bb < m; ++bb) {
                            if ((mask >> bb) & 1)
                                continue;
                            if (bb == host) {
                                Word ncol(col.begin(), col.begin() + p);
                                ncol.push_back(static_cast<int>(val));
                                ncol.insert(ncol.end(), col.begin() + q, col.end());
                                nw.push_back(std::move(ncol));
                            } else
                                nw.push_back(w[bb]);
                        }
                        out.add_normalized(h, nw, coeff * factor);
                    }
                }
            }
    }
    return out;
}

inline GWordSum gword_coderivation(const GradedSpace &h, const GCochain &c,
                                   const GWord &w) {
    return gword_coderivation_lazy(h, as_eval(h, c), w);
}

inline GEval circ_T_lazy(const GradedSpace &h, const GEval &a, const GEval &b) {
    return GEval{a.degree + b.degree, [&h, a, b](const GWord &w) {
                     GVec out;
                     for (const auto &[w2, c] : gword_coderivation_lazy(h, b, w).terms)
                         gvec_add(out, a.eval(w2), c);
                     return out;
                 }};
}

inline GEval bracket_T_lazy(const GradedSpace &h, const GEval &a, const GEval &b) {
    GEval left = circ_T_lazy(h, a, b);
    GEval right = circ_T_lazy(h, b, a);
    int sgn = (a.degree * b.degree) % 2 ? 1 : -1;
    return GEval{a.degree + b.degree, [left, right, sgn](const GWord &w) {
                     GVec out = left.eval(w);
                     gvec_add(out, right.eval(w), Rat(sgn));
                     return out;
                 }};
}

// d1 o_T d2 = d1 o (coinduced coderivation of d2), tabulated up to the cap.
inline GCochain circ_T(const GradedSpace &h, const GCochain &d1, const GCochain &d2,
                       size_t cap) {
    GCochain out;
    out.degree = d1.degree + d2.degree;
    for (const GWord &w : gwords_up_to(h, cap)) {
        GVec v = d1.value_on(h, gword_coderivation(h, d2, w));
        if (!v.empty())
            out.add(h, w, v);
    }
    return out;
}

inline GCochain bracket_T(const GradedSpace &h, const GCochain &d1, const GCochain &d2,
                          size_t cap) {
    GCochain out = circ_T(h, d1, d2, cap);
    GCochain other = circ_T(h, d2, d1, cap);
    int sgn = (d1.degree * d2.degree) % 2 ? 1 : -1;
    for (const auto &[w, v] : other.table)
        out.add(h, w, v, Rat(sgn));
    return out;
}

// The two structure cochains of the obstruction bicomplex over a fragment of
// adapted multivectors: d^{1,1} (shifted Schouten bracket, two single-letter
// columns) and d^2 (shifted wedge, one two-letter column).
inline GCochain schouten_cochain(const GerstFragment &f, size_t /*cap*/) {
    GCochain d;
    d.degree = 1;
    const size_t n = f.h.dim();
    // the table keeps only ordered pairs i <= j; graded antisymmetry of the
    // bracket matches the column-swap sign, so this determines both orders
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            GWord w{{static_cast<int>(i)}, {static_cast<int>(j)}};
            auto norm = gword_normalize(f.h, w);
            if (!norm)
                continue;
            GVec v;
            try {
                v = f.bracket_basis(i, j);
            } catch (const CapExceeded &) {
                continue; // entry outside the tabulated filtration
            }
            if (v.empty())
                continue;
            // decalage sign: (-1)^{deg in [2]} = (-1)^{rank}
            int sgn = (f.basis[i].rank() % 2) ? -1 : 1;
            d.add(f.h, w, v, Rat(sgn));
        }
    return d;
}

inline GCochain wedge_cochain(const GerstFragment &f, size_t cap) {
    GCochain d;
    d.degree = 1;
    const size_t n = f.h.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            GVec v;
            try {
                v = f.wedge_basis(i, j);
            } catch (const CapExceeded &) {
                continue; // entry outside the tabulated filtration
            }
            if (v.empty())
                continue;
            // decalage sign of the shifted product: (-1)^{deg in g[1]} = rank-1
            int sgn = ((f.basis[i].rank() - 1) % 2) ? -1 : 1;
            GWord w{{static_cast<int>(i), static_cast<int>(j)}};
            d.add(f.h, w, v, Rat(sgn));
        }
    return d;
}

enum class ObstructionKind { CE, Har };

inline GCochain obstruction_diff(const GerstFragment &f, const GCochain &c,
                                 ObstructionKind kind, size_t cap) {
    GCochain d = (kind == ObstructionKind::CE) ? schouten_cochain(f, cap)
                                               : wedge_cochain(f, cap);
    return bracket_T(f.h, d, c, cap);
}

// evaluator form, for fragments too large to tabulate over
inline GEval obstruction_diff_eval(const GradedSpace &h, const GCochain &d,
                                   const GEval &c) {
    return bracket_T_lazy(h, as_eval(h, d), c);
}

} // namespace costar::coalg
