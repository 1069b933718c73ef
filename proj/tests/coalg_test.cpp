#include "costar/braces.hpp"
#include "costar/gword.hpp"
#include "costar/rng.hpp"

#include <gtest/gtest.h>

using namespace costar;
using namespace costar::coalg;

namespace {

GradedSpace space012() {
    GradedSpace h;
    h.names = {"u", "v", "w"};
    h.degrees = {0, 1, 2};
    return h;
}

CochainTable random_cochain(const GradedSpace &h, Rng &rng, size_t max_len, int degree,
                            int hshift = 0) {
    CochainTable c;
    c.degree = degree;
    c.hshift = hshift;
    for (const Word &w : words_up_to(h, max_len)) {
        if (rng.uniform(0, 2) != 0)
            continue;
        int in_deg = 0;
        for (int i : w)
            in_deg += h.degrees[i] - hshift;
        GVec v;
        for (size_t t = 0; t < h.dim(); ++t)
            if (h.degrees[t] - hshift == in_deg + degree)
                gvec_add(v, t, rng.rat());
        if (!v.empty())
            c.table[w] = v;
    }
    return c;
}

TEST(Signature, Rules) {
    GradedSpace h = space012();
    // all even degrees -> +1
    GradedSpace even;
    even.names = {"a", "b"};
    even.degrees = {2, 4};
    EXPECT_EQ(signature(even, {0, 1}, {1, 0}), Rat(1));
    // transposition of two degree-1 letters -> -1
    GradedSpace odd;
    odd.names = {"x", "y"};
    odd.degrees = {1, 1};
    EXPECT_EQ(signature(odd, {0, 1}, {1, 0}), Rat(-1));
    // degrees (1,2): transposition -> +1
    EXPECT_EQ(signature(h, {1, 2}, {1, 0}), Rat(1));
    // cocycle law e(xi, sigma tau) = e(xi, sigma) e(xi^sigma, tau)
    Word w{1, 2, 1};
    std::vector<int> sigma{1, 0, 2}, tau{2, 0, 1};
    std::vector<int> comp(3);
    for (int i = 0; i < 3; ++i)
        comp[i] = sigma[tau[i]];
    Word wsigma{w[sigma[0]], w[sigma[1]], w[sigma[2]]};
    EXPECT_EQ(signature(h, w, comp), signature(h, w, sigma) * signature(h, wsigma, tau));
}

TEST(Shuffle, BasicsAndLaws) {
    GradedSpace h = space012();
    // (x)*(y) = xy + (-1)^{|x||y|} yx
    WordSum s = shuffle(h, {1}, {2});
    WordSum expect;
    expect.add({1, 2}, Rat(1));
    expect.add({2, 1}, Rat(1)); // (-1)^{1*2} = +1
    EXPECT_EQ(s, expect);
    WordSum s2 = shuffle(h, {1}, {1});
    WordSum expect2;
    // xy' + (-1)^{1*1} y'x with x = y' = letter 1: both words equal {1,1}
    // so the sum is (1 - 1) {1,1} = 0
    EXPECT_TRUE(s2.is_zero());
    // unit
    EXPECT_EQ(shuffle(h, {}, {1, 2}).terms.begin()->first, (Word{1, 2}));
    // graded commutativity u*v = (-1)^{|u||v|} v*u
    Rng rng(3);
    for (const Word &u : words_up_to(h, 2))
        for (const Word &v : words_up_to(h, 2)) {
            WordSum uv = shuffle(h, u, v);
            WordSum vu = shuffle(h, v, u);
            int sgn = (word_degree(h, u) * word_degree(h, v)) % 2 ? -1 : 1;
            WordSum diff = uv;
            diff.add(vu, Rat(-sgn));
            EXPECT_TRUE(diff.is_zero());
        }
    // associativity (u*v)*w = u*(v*w) on short words
    std::vector<Word> ws = {{0}, {1}, {2}, {1, 2}};
    for (const Word &u : ws)
        for (const Word &v : ws)
            for (const Word &w : ws) {
                WordSum lhs, rhs;
                for (const auto &[uv, c] : shuffle(h, u, v).terms)
                    lhs.add(shuffle(h, uv, w), c);
                for (const auto &[vw, c] : shuffle(h, v, w).terms)
                    rhs.add(shuffle(h, u, vw), c);
                EXPECT_EQ(lhs, rhs);
            }
}

TEST(Deconcat, CoassociativeAndBialgebra) {
    GradedSpace h = space012();
    // Delta(x) = x (x) 1 + 1 (x) x
    auto d = deconcat({1});
    ASSERT_EQ(d.size(), 2u);
    // coassociativity via counting: (Delta (x) id) Delta = (id (x) Delta) Delta
    Word w{0, 1, 2};
    std::map<std::tuple<Word, Word, Word>, int> lhs, rhs;
    for (const auto &[a, bc] : deconcat(w))
        for (const auto &[b, c] : deconcat(bc))
            rhs[{a, b, c}]++;
    for (const auto &[ab, c] : deconcat(w))
        for (const auto &[a, b] : deconcat(ab))
            lhs[{a, b, c}]++;
    EXPECT_EQ(lhs, rhs);
}

TEST(Coinduce, MorphismAndCoderivation) {
    GradedSpace h = space012();
    // phi = projection to length-1 words coinduces the identity
    CochainTable pr;
    pr.degree = 0;
    for (size_t i = 0; i < h.dim(); ++i)
        pr.table[{static_cast<int>(i)}] = GVec{{i, Rat(1)}};
    for (const Word &w : words_up_to(h, 3)) {
        WordSum s = coinduce_morphism(h, pr, w);
        WordSum expect;
        expect.add(w, Rat(1));
        EXPECT_EQ(s, expect);
    }
    // morphism property (phibar (x) phibar) Delta = Delta phibar on a sample
    Rng rng(5);
    CochainTable phi = random_cochain(h, rng, 2, 0);
    phi.table.erase(Word{}); // must vanish on the group-like
    for (const Word &w : words_up_to(h, 3)) {
        // Delta phibar(w)
        std::map<std::pair<Word, Word>, Rat> lhs, rhs;
        for (const auto &[img, c] : coinduce_morphism(h, phi, w).terms)
            for (const auto &[a, b] : deconcat(img)) {
                auto &v = lhs[{a, b}];
                v += c;
                if (v == 0)
                    lhs.erase({a, b});
            }
        for (const auto &[a, b] : deconcat(w))
            for (const auto &[ia, ca] : coinduce_morphism(h, phi, a).terms)
                for (const auto &[ib, cb] : coinduce_morphism(h, phi, b).terms) {
                    auto &v = rhs[{ia, ib}];
                    v += ca * cb;
                    if (v == 0)
                        rhs.erase({ia, ib});
                }
        EXPECT_EQ(lhs, rhs);
    }
    // coderivation of a length-2-supported d: the Hochschild-style sandwich
    CochainTable d = random_cochain(h, rng, 2, 1);
    d.table.erase(Word{});
    for (auto it = d.table.begin(); it != d.table.end();)
        it = (it->first.size() == 2) ? ++it : d.table.erase(it);
    Word w{0, 1, 2};
    WordSum direct;
    for (size_t i = 0; i + 2 <= w.size(); ++i) {
        Word mid(w.begin() + i, w.begin() + i + 2);
        GVec v = d.value(mid);
        int pre = 0;
        for (size_t q = 0; q < i; ++q)
            pre += h.degrees[w[q]];
        for (const auto &[val, c] : v) {
            Word nw(w.begin(), w.begin() + i);
            nw.push_back(static_cast<int>(val));
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            direct.add(nw, c * Rat(pre % 2 ? -1 : 1));
        }
    }
    EXPECT_EQ(coinduce_coderivation(h, d, w), direct);
}

TEST(CircG, AssociativeSquareZeroAndGerstenhaberIdentity) {
    GradedSpace h = space012();
    // m = truncated polynomial multiplication encoded on the degree-{0,1,2}
    // space u^0, u^1, u^2 (u^i u^j = u^{i+j}, 0 beyond 2)
    CochainTable m;
    m.degree = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i + j <= 2)
                m.table[{i, j}] = GVec{{static_cast<size_t>(i + j), Rat(1)}};
    CochainTable m1 = shift(h, m, 1);
    EXPECT_EQ(m1.hshift, 1);
    CochainTable sq = circ_G(h, m1, m1, 4);
    // d o_G d = 0 encodes associativity
    EXPECT_TRUE(sq.is_zero());

    // Gerstenhaber identity for o_G
    Rng rng(7);
    for (int iter = 0; iter < 12; ++iter) {
        CochainTable d = random_cochain(h, rng, 2, rng.uniform(0, 1));
        CochainTable d1 = random_cochain(h, rng, 2, rng.uniform(0, 1));
        CochainTable d2 = random_cochain(h, rng, 2, rng.uniform(0, 1));
        size_t cap = 4;
        CochainTable lhs1 = circ_G(h, circ_G(h, d, d1, cap), d2, cap);
        CochainTable lhs2 = circ_G(h, circ_G(h, d, d2, cap), d1, cap);
        CochainTable rhs = circ_G(h, d, bracket_G(h, d1, d2, cap), cap);
        int sgn = (d1.degree * d2.degree) % 2 ? -1 : 1;
        CochainTable total = lhs1;
        for (const auto &[w, v] : lhs2.table)
            total.add(w, v, Rat(-sgn));
        for (const auto &[w, v] : rhs.table)
            total.add(w, v, Rat(-1));
        EXPECT_TRUE(total.is_zero()) << "iter " << iter;
    }
}

TEST(CircNR, GerstenhaberIdentityAndAbelianCE) {
    GradedSpace h = space012();
    Rng rng(11);
    for (int iter = 0; iter < 12; ++iter) {
        CochainTable d = random_cochain(h, rng, 2, rng.uniform(0, 1));
        CochainTable d1 = random_cochain(h, rng, 2, rng.uniform(0, 1));
        CochainTable d2 = random_cochain(h, rng, 2, rng.uniform(0, 1));
        // symmetrize supports: keep only sorted words
        auto symmetrize = [&](CochainTable &c) {
            for (auto it = c.table.begin(); it != c.table.end();) {
                const Word &s = it->first;
                bool ok = std::is_sorted(s.begin(), s.end());
                for (size_t t = 0; ok && t + 1 < s.size(); ++t)
                    if (s[t] == s[t + 1] && (h.degrees[s[t]] % 2))
                        ok = false; // odd squares vanish in S h
                it = ok ? ++it : c.table.erase(it);
            }
        };
        symmetrize(d);
        symmetrize(d1);
        symmetrize(d2);
        size_t cap = 4;
        CochainTable lhs1 = circ_NR(h, circ_NR(h, d, d1, cap), d2, cap);
        CochainTable lhs2 = circ_NR(h, circ_NR(h, d, d2, cap), d1, cap);
        CochainTable br = circ_NR(h, d1, d2, cap);
        CochainTable br2 = circ_NR(h, d2, d1, cap);
        int sgn = (d1.degree * d2.degree) % 2 ? -1 : 1;
        for (const auto &[w, v] : br2.table)
            br.add(w, v, Rat(-sgn));
        CochainTable rhs = circ_NR(h, d, br, cap);
        CochainTable total = lhs1;
        for (const auto &[w, v] : lhs2.table)
            total.add(w, v, Rat(-sgn));
        for (const auto &[w, v] : rhs.table)
            total.add(w, v, Rat(-1));
        EXPECT_TRUE(total.is_zero()) << "iter " << iter;
    }
    // abelian 2-dim Lie algebra: zero bracket, CE cobord squares to zero
    CochainTable zero;
    zero.degree = 1;
    EXPECT_TRUE(circ_NR(h, zero, zero, 3).is_zero());
}

TEST(CircH, HarrisonPredicateAndClosure) {
    GradedSpace h = space012();
    // Harrison cochain: values on 2-letter words antisymmetrized so shuffles
    // die; 1-letter words are automatically Harrison
    Rng rng(13);
    CochainTable d;
    d.degree = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // c(ij) arbitrary with constraint c(ij) = -(-1)^{|i||j|} c(ji)
            if (i > j)
                continue;
            int din = h.degrees[i] + h.degrees[j];
            GVec v;
            for (size_t t = 0; t < h.dim(); ++t)
                if (h.degrees[t] == din + 1)
                    gvec_add(v, t, rng.rat());
            if (v.empty())
                continue;
            d.add({i, j}, v);
            if (i != j) {
                int sgn = (h.degrees[i] * h.degrees[j]) % 2 ? 1 : -1;
                d.add({j, i}, v, Rat(sgn));
            } else if ((h.degrees[i] * h.degrees[i]) % 2 == 0)
                d.table.erase(Word{i, i}); // c(ii) = -c(ii)
        }
    EXPECT_TRUE(is_harrison(h, d, 4));
    // coinduced coderivations of Harrison cochains preserve the shuffle ideal
    for (const Word &u : words_up_to(h, 2))
        for (const Word &v : words_up_to(h, 2)) {
            WordSum sh = shuffle(h, u, v);
            WordSum image;
            for (const auto &[w, c] : sh.terms)
                image.add(coinduce_coderivation(h, d, w), c);
            // the image must again vanish under any Harrison cochain; check
            // against d itself
            EXPECT_TRUE(d.value_on(image).empty());
        }
}

TEST(Shift, RoundTripAndSigns) {
    GradedSpace h = space012();
    Rng rng(17);
    for (int iter = 0; iter < 10; ++iter) {
        CochainTable phi = random_cochain(h, rng, 3, rng.uniform(0, 1));
        // shifted tables must be arity-homogeneous: keep one length
        size_t keep = 1 + static_cast<size_t>(iter % 3);
        for (auto it = phi.table.begin(); it != phi.table.end();)
            it = (it->first.size() == keep) ? ++it : phi.table.erase(it);
        CochainTable back = shift(h, shift(h, phi, 1), -1);
        EXPECT_EQ(back.table, phi.table);
        // even degrees, even shift, single argument: coefficients unchanged
        CochainTable even;
        even.degree = 0;
        even.table[{2}] = GVec{{2, Rat(3)}};
        CochainTable shifted = shift(h, even, 2);
        EXPECT_EQ(shifted.table, even.table);
        // iterated shifts compose: phi[1][1] = phi[2] (this forces the
        // (-1)^{k(k-1)/2 * j(j-1)/2} factor, which is -1 at k = j = 2 even
        // for all-even degrees)
        CochainTable two_arg = random_cochain(h, rng, 2, 0);
        for (auto it = two_arg.table.begin(); it != two_arg.table.end();)
            it = (it->first.size() == 2) ? ++it : two_arg.table.erase(it);
        EXPECT_EQ(shift(h, shift(h, two_arg, 1), 1).table, shift(h, two_arg, 2).table);
    }
    // (2 -> 1) map on odd letters, j = 1: sign per the shifted-map rule is
    // (-1)^{|y_1|_{h[1]}} = (-1)^{1-1} = +1 for the word (v,v)
    CochainTable two;
    two.degree = 0;
    two.table[{1, 1}] = GVec{{2, Rat(1)}};
    CochainTable sh1 = shift(h, two, 1);
    EXPECT_EQ(sh1.table.at({1, 1}), (GVec{{2, Rat(1)}}));
    // and for the word (w,v) with |w|_{h[1]} = 1 the sign flips
    CochainTable two2;
    two2.degree = 0;
    two2.table[{2, 1}] = GVec{{0, Rat(1)}};
    CochainTable sh2 = shift(h, two2, 1);
    EXPECT_EQ(sh2.table.at({2, 1}), (GVec{{0, Rat(-1)}}));
}

TEST(Braces, SingleBraceIsCircG) {
    GradedSpace h = space012();
    Rng rng(19);
    for (int iter = 0; iter < 10; ++iter) {
        CochainTable phi = random_cochain(h, rng, 2, rng.uniform(0, 1));
        CochainTable psi = random_cochain(h, rng, 2, rng.uniform(0, 1));
        CochainTable lhs = braces(h, phi, {psi}, 4);
        CochainTable rhs = circ_G(h, phi, psi, 4);
        EXPECT_EQ(lhs.table, rhs.table) << "iter " << iter;
    }
}

TEST(BulletK, UnitAndOracleEquivalence) {
    GradedSpace h = space012();
    Rng rng(23);
    CochainRegistry reg;
    // unit: e (empty word) is the bullet_K unit
    CochainTable a = random_cochain(h, rng, 2, 1);
    size_t ia = reg.intern(h, a);
    CWord u{ia};
    CWordSum left = bullet_K_formula(h, reg, CWord{}, u, 4);
    CWordSum expectu;
    expectu.add(u, Rat(1));
    EXPECT_EQ(left, expectu);
    EXPECT_EQ(bullet_K_formula(h, reg, u, CWord{}, 4), expectu);
    // oracle: formula route == coinduction route on words of length <= 3
    for (int iter = 0; iter < 6; ++iter) {
        std::vector<size_t> ids;
        for (int t = 0; t < 3; ++t)
            ids.push_back(reg.intern(h, random_cochain(h, rng, 2, rng.uniform(0, 1))));
        for (size_t lu = 1; lu <= 2; ++lu)
            for (size_t lv = 1; lv + lu <= 3; ++lv) {
                CWord uu, vv;
                for (size_t i = 0; i < lu; ++i)
                    uu.push_back(ids[rng.uniform(0, 2)]);
                for (size_t i = 0; i < lv; ++i)
                    vv.push_back(ids[rng.uniform(0, 2)]);
                CWordSum f = bullet_K_formula(h, reg, uu, vv, 4);
                CWordSum c = bullet_K_coinduced(h, reg, uu, vv, 4);
                EXPECT_EQ(f, c) << "lu=" << lu << " lv=" << lv;
            }
    }
}

TEST(BulletK, Associativity) {
    GradedSpace h = space012();
    Rng rng(29);
    CochainRegistry reg;
    std::vector<size_t> ids;
    for (int t = 0; t < 2; ++t)
        ids.push_back(reg.intern(h, random_cochain(h, rng, 1, rng.uniform(0, 1))));
    CWord x{ids[0]}, y{ids[1]}, z{ids[0]};
    CWordSum xy = bullet_K_formula(h, reg, x, y, 4);
    CWordSum lhs, rhs;
    for (const auto &[w, c] : xy.terms)
        lhs.add(bullet_K_formula(h, reg, w, z, 4), c);
    CWordSum yz = bullet_K_formula(h, reg, y, z, 4);
    for (const auto &[w, c] : yz.terms)
        rhs.add(bullet_K_formula(h, reg, x, w, 4), c);
    EXPECT_EQ(lhs, rhs);
}

TEST(BK, FormulaEqualsCommutatorAndSquareZero) {
    GradedSpace h = space012();
    // associative algebra Q[u]/(u^3) on the degree-{0,1,2} basis
    GradedAlgebra alg;
    alg.names = {"1", "u", "u2"};
    alg.degrees = {0, 1, 2};
    alg.mult.assign(3, std::vector<GVec>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i + j <= 2)
                alg.mult[i][j] = GVec{{static_cast<size_t>(i + j), Rat(1)}};
    CochainTable m;
    m.degree = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i + j <= 2)
                m.table[{i, j}] = GVec{{static_cast<size_t>(i + j), Rat(1)}};
    CochainTable m1 = shift(h, m, 1);
    Rng rng(31);
    CochainRegistry reg;
    const size_t cap = 4;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<size_t> ids;
        for (int t = 0; t < 2; ++t) {
            CochainTable c = random_cochain(h, rng, 2, rng.uniform(0, 1), 1);
            ids.push_back(reg.intern(h, c));
        }
        for (size_t len = 1; len <= 2; ++len) {
            CWord w;
            for (size_t i = 0; i < len; ++i)
                w.push_back(ids[rng.uniform(0, 1)]);
            CWordSum viaformula = b_K_formula(h, reg, m1, w, cap);
            CWordSum viacomm = b_K_commutator(h, reg, m1, w, cap);
            EXPECT_EQ(cword_canonical(reg, viaformula), cword_canonical(reg, viacomm))
                << "len " << len;
            // b_K^2 = 0
            CWordSum second;
            for (const auto &[w2, c] : viaformula.terms)
                second.add(b_K_formula(h, reg, m1, w2, cap), c);
            EXPECT_TRUE(cword_canonical(reg, second).empty()) << "len " << len;
        }
    }
}

TEST(BK, DerivationOfBulletK) {
    GradedSpace h = space012();
    GradedAlgebra alg;
    alg.names = {"1", "u", "u2"};
    alg.degrees = {0, 1, 2};
    alg.mult.assign(3, std::vector<GVec>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i + j <= 2)
                alg.mult[i][j] = GVec{{static_cast<size_t>(i + j), Rat(1)}};
    CochainTable m;
    m.degree = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i + j <= 2)
                m.table[{i, j}] = GVec{{static_cast<size_t>(i + j), Rat(1)}};
    CochainTable m1 = shift(h, m, 1);
    Rng rng(37);
    CochainRegistry reg;
    const size_t cap = 4;
    CWord u{reg.intern(h, random_cochain(h, rng, 2, 1, 1))};
    CWord v{reg.intern(h, random_cochain(h, rng, 2, 0, 1))};
    CWordSum uv = bullet_K_formula(h, reg, u, v, cap);
    CWordSum lhs;
    for (const auto &[w, c] : uv.terms)
        lhs.add(b_K_formula(h, reg, m1, w, cap), c);
    CWordSum rhs;
    for (const auto &[w, c] : b_K_formula(h, reg, m1, u, cap).terms)
        rhs.add(bullet_K_formula(h, reg, w, v, cap), c);
    int sgn = cword_degree(reg, u) % 2 ? -1 : 1;
    for (const auto &[w, c] : b_K_formula(h, reg, m1, v, cap).terms) {
        CWordSum t = bullet_K_formula(h, reg, u, w, cap);
        rhs.add(t, c * Rat(sgn));
    }
    EXPECT_EQ(cword_canonical(reg, lhs), cword_canonical(reg, rhs));
}

// ---------------- obstruction bicomplex -------------------------------------

// letters for test data: low coefficient degree so that iterated wedges and
// brackets stay inside the (larger) fragment the structure cochains use
std::vector<size_t> low_degree_letters(const GerstFragment &f, uint32_t max_deg,
                                       size_t limit) {
    std::vector<size_t> out;
    for (size_t i = 0; i < f.basis.size() && out.size() < limit; ++i) {
        const auto &mv = f.basis[i];
        if (mv.rank() == 0)
            continue; // keep brackets/wedges tame
        if (mv.terms().begin()->second.total_degree() <= max_deg)
            out.push_back(i);
    }
    return out;
}

GCochain random_gcochain(const GerstFragment &f, Rng &rng, int degree,
                         const std::vector<size_t> &letters, uint32_t value_deg) {
    GCochain c;
    c.degree = degree;
    auto value_for = [&](int in_deg) {
        GVec v;
        for (size_t t = 0; t < f.h.dim(); ++t)
            if (f.h.degrees[t] == in_deg + degree &&
                f.basis[t].terms().begin()->second.total_degree() <= value_deg &&
                rng.uniform(0, 2) == 0)
                gvec_add(v, t, rng.rat());
        return v;
    };
    for (size_t i : letters) {
        if (rng.uniform(0, 2) != 0)
            continue;
        GVec v = value_for(f.h.degrees[i]);
        if (!v.empty())
            c.add(f.h, GWord{{static_cast<int>(i)}}, v);
    }
    for (int t = 0; t < 8; ++t) {
        int i = static_cast<int>(letters[rng.uniform(0, static_cast<int>(letters.size()) - 1)]);
        int j = static_cast<int>(letters[rng.uniform(0, static_cast<int>(letters.size()) - 1)]);
        int in_deg = f.h.degrees[i] + f.h.degrees[j];
        if (t % 2) {
            GVec v = value_for(in_deg);
            if (!v.empty())
                c.add(f.h, GWord{{i}, {j}}, v);
        } else {
            // in-column pair with the shuffle-vanishing constraint
            GVec v = value_for(in_deg);
            if (v.empty() || i == j)
                continue;
            c.add(f.h, GWord{{i, j}}, v);
            int sgn = (f.h.degrees[i] * f.h.degrees[j]) % 2 ? 1 : -1;
            c.add(f.h, GWord{{j, i}}, v, Rat(sgn));
        }
    }
    return c;
}

std::vector<GWord> small_test_words(const GerstFragment &f, Rng &rng,
                                    const std::vector<size_t> &letters, int count) {
    std::vector<GWord> out;
    auto letter = [&] {
        return static_cast<int>(letters[rng.uniform(0, static_cast<int>(letters.size()) - 1)]);
    };
    for (int t = 0; t < count; ++t) {
        GWord w;
        switch (t % 5) {
        case 0: w = {{letter()}}; break;
        case 1: w = {{letter(), letter()}}; break;
        case 2: w = {{letter()}, {letter()}}; break;
        case 3: w = {{letter(), letter()}, {letter()}}; break;
        default: w = {{letter()}, {letter()}, {letter()}}; break;
        }
        if (gword_normalize(f.h, w))
            out.push_back(w);
    }
    return out;
}

TEST(Obstruction, HarrisonRestriction) {
    // D_Har on a one-column cochain, evaluated on one-column words, equals
    // the Harrison cobord beta = [phi, d]_H computed on plain words
    SpaceConfig cfg(2, 1);
    GerstFragment f = GerstFragment::adapted_monomials(cfg, 3);
    Rng rng(41);
    GCochain c;
    c.degree = 1;
    CochainTable word_c;
    word_c.degree = 1;
    auto letters = low_degree_letters(f, 1, 10);
    for (size_t i : letters) {
        GVec v;
        for (size_t t = 0; t < f.h.dim(); ++t)
            if (f.h.degrees[t] == f.h.degrees[i] + 1 &&
                f.basis[t].terms().begin()->second.total_degree() <= 1 &&
                rng.uniform(0, 2) == 0)
                gvec_add(v, t, rng.rat());
        if (!v.empty())
            word_c.table[{static_cast<int>(i)}] = v;
    }
    for (const auto &[w, v] : word_c.table)
        c.add(f.h, GWord{w}, v);
    // the wedge structure cochain as a word cochain (for the Harrison side)
    CochainTable dword;
    dword.degree = 1;
    GCochain d2 = wedge_cochain(f, 4);
    for (const auto &[gw, v] : d2.table)
        if (gw.size() == 1)
            dword.table[gw[0]] = v;
    GEval D = obstruction_diff_eval(f.h, d2, as_eval(f.h, c));
    for (size_t i : letters)
        for (size_t j : letters) {
            Word w{static_cast<int>(i), static_cast<int>(j)};
            GWord gw{w};
            if (!gword_normalize(f.h, gw))
                continue;
            // beta(w) = [dword, word_c]_G evaluated directly on this word
            GVec beta = dword.value_on(coinduce_coderivation(f.h, word_c, w));
            int sgn = (dword.degree * word_c.degree) % 2 ? 1 : -1;
            gvec_add(beta, word_c.value_on(coinduce_coderivation(f.h, dword, w)),
                     Rat(sgn));
            EXPECT_EQ(D.eval(gw), beta) << "i=" << i << " j=" << j;
        }
}

TEST(Obstruction, SquaresAndAnticommutation) {
    SpaceConfig cfg(2, 1);
    GerstFragment f = GerstFragment::adapted_monomials(cfg, 4);
    GCochain d11 = schouten_cochain(f, 4);
    GCochain d2 = wedge_cochain(f, 4);
    Rng rng(43);
    auto letters = low_degree_letters(f, 1, 10);
    for (int iter = 0; iter < 3; ++iter) {
        GCochain c = random_gcochain(f, rng, rng.uniform(0, 1), letters, 1);
        GEval ce = obstruction_diff_eval(f.h, d11, as_eval(f.h, c));
        GEval ce2 = obstruction_diff_eval(f.h, d11, ce);
        GEval har = obstruction_diff_eval(f.h, d2, as_eval(f.h, c));
        GEval har2 = obstruction_diff_eval(f.h, d2, har);
        GEval mixed1 = obstruction_diff_eval(f.h, d2, ce);
        GEval mixed2 = obstruction_diff_eval(f.h, d11, har);
        int checked = 0;
        for (const GWord &w : small_test_words(f, rng, letters, 12)) {
            ++checked;
            EXPECT_TRUE(ce2.eval(w).empty()) << "D_CE^2 case " << checked;
            EXPECT_TRUE(har2.eval(w).empty()) << "D_Har^2 case " << checked;
            GVec anti = mixed1.eval(w);
            gvec_add(anti, mixed2.eval(w), Rat(1));
            EXPECT_TRUE(anti.empty()) << "anticommutation case " << checked;
        }
        EXPECT_GT(checked, 5);
    }
}

TEST(Obstruction, GerstenhaberIdentityForCircT) {
    SpaceConfig cfg(2, 1);
    GerstFragment f = GerstFragment::adapted_monomials(cfg, 2);
    Rng rng(47);
    auto letters = low_degree_letters(f, 0, 8);
    for (int iter = 0; iter < 3; ++iter) {
        GCochain d = random_gcochain(f, rng, rng.uniform(0, 1), letters, 2);
        GCochain a = random_gcochain(f, rng, rng.uniform(0, 1), letters, 2);
        GCochain b = random_gcochain(f, rng, rng.uniform(0, 1), letters, 2);
        GEval ea = as_eval(f.h, a), eb = as_eval(f.h, b), ed = as_eval(f.h, d);
        GEval lhs1 = circ_T_lazy(f.h, circ_T_lazy(f.h, ed, ea), eb);
        GEval lhs2 = circ_T_lazy(f.h, circ_T_lazy(f.h, ed, eb), ea);
        GEval rhs = circ_T_lazy(f.h, ed, bracket_T_lazy(f.h, ea, eb));
        int sgn = (a.degree * b.degree) % 2 ? -1 : 1;
        int checked = 0;
        for (const GWord &w : small_test_words(f, rng, letters, 10)) {
            ++checked;
            GVec total = lhs1.eval(w);
            gvec_add(total, lhs2.eval(w), Rat(-sgn));
            gvec_add(total, rhs.eval(w), Rat(-1));
            EXPECT_TRUE(total.empty()) << "word " << checked;
        }
    }
}

} // namespace
