#pragma once

#include "costar/cochain.hpp"
#include "costar/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace costar {

// Basis cell of the truncated Koszul cochain complex.
struct CohomologyCell {
    IndexMask mask;
    MultiIdx sym;
    Monomial mono;
    friend auto operator<=>(const CohomologyCell &, const CohomologyCell &) = default;
};

struct CohomologyCaps {
    uint32_t poly_deg = 2;
    uint32_t op_order = 2;
};

struct CohomologyResult {
    int degree = 0;
    size_t dim_space = 0;
    size_t dim_kernel = 0;
    size_t rank_in = 0; // rank of the incoming differential
    size_t dim = 0;
    std::vector<KoszulCochain> representatives;
};

namespace detail {

inline std::vector<int> momentum_directions(const SpaceConfig &cfg, Bimodule tag) {
    switch (tag) {
    case Bimodule::MA:
    case Bimodule::MB: return {};
    case Bimodule::MDBB: return tangential_directions(cfg);
    case Bimodule::MDAB:
    case Bimodule::MDIB: return all_directions(cfg);
    }
    return {};
}

inline bool coefficient_tangential_only(Bimodule tag) { return tag != Bimodule::MA; }

// Enumerate the truncated basis at a given exterior degree. The space is the
// union of complete s-graded pieces, s = |J| + |S cap D|, so the differential
// maps it into the next degree's space exactly (asserted by the caller).
inline std::vector<CohomologyCell> basis_cells(const SpaceConfig &cfg, Bimodule tag,
                                               int degree, const CohomologyCaps &caps) {
    std::vector<CohomologyCell> cells;
    if (degree < 0 || degree > cfg.n)
        return cells;
    auto dirs = momentum_directions(cfg, tag);
    const int nvars = coefficient_tangential_only(tag) ? cfg.n - cfg.l : cfg.n;
    // monomials in the first nvars coordinates
    std::vector<Monomial> monos;
    {
        std::vector<uint32_t> exps(nvars, 0);
        std::function<void(int, uint32_t)> rec = [&](int pos, uint32_t left) {
            if (pos == nvars) {
                Monomial m;
                for (int c = 0; c < nvars; ++c)
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
        rec(0, caps.poly_deg);
    }
    for (IndexMask s = 0; s < (1u << cfg.n); ++s) {
        if (mask_rank(s) != degree)
            continue;
        int sform = 0;
        for (int d : dirs)
            if (mask_has(s, d))
                ++sform;
        for (const MultiIdx &j : indices_up_to_order(cfg.n, caps.op_order)) {
            if (tag == Bimodule::MA || tag == Bimodule::MB) {
                if (!j.is_zero())
                    continue;
            }
            if (tag == Bimodule::MDBB && j.has_transversal(cfg))
                continue;
            if (tag == Bimodule::MDIB && !j.has_transversal(cfg))
                continue;
            if (!dirs.empty() && j.order() + static_cast<uint32_t>(sform) > caps.op_order)
                continue;
            for (const Monomial &m : monos)
                cells.push_back(CohomologyCell{s, j, m});
        }
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

inline std::vector<Rat> cochain_to_vector(const KoszulCochain &x,
                                          const std::vector<CohomologyCell> &cells) {
    std::vector<Rat> v(cells.size(), Rat(0));
    std::map<CohomologyCell, size_t> index;
    for (size_t i = 0; i < cells.size(); ++i)
        index[cells[i]] = i;
    for (const auto &[s, sym] : x.terms())
        for (const auto &[j, c] : sym.terms)
            for (const auto &[m, coeff] : c.terms()) {
                auto it = index.find(CohomologyCell{s, j, m});
                if (it == index.end())
                    throw std::runtime_error(
                        "truncation cap too small to contain the differential's image");
                v[it->second] += coeff;
            }
    return v;
}

inline KoszulCochain cell_cochain(const SpaceConfig &cfg, Bimodule tag, int degree,
                                  const CohomologyCell &cell) {
    KoszulCochain x(cfg, degree, tag);
    x.add_term(cell.mask, cell.sym, Poly::monomial(cell.mono, Rat(1)));
    return x;
}

} // namespace detail

// Exact cohomology of the truncated Koszul cochain complex for the bimodule.
inline CohomologyResult truncated_cohomology(const SpaceConfig &cfg, Bimodule tag,
                                             int degree, const CohomologyCaps &caps) {
    CohomologyResult res;
    res.degree = degree;
    auto cells = detail::basis_cells(cfg, tag, degree, caps);
    auto cells_up = detail::basis_cells(cfg, tag, degree + 1, caps);
    auto cells_down = detail::basis_cells(cfg, tag, degree - 1, caps);
    res.dim_space = cells.size();
    if (cells.empty()) {
        res.dim = 0;
        return res;
    }
    // outgoing differential matrix (rows: target cells, cols: source cells)
    QMatrix out_mat(cells_up.size(), cells.size());
    for (size_t c = 0; c < cells.size(); ++c) {
        KoszulCochain img =
            koszul_cochain_diff(detail::cell_cochain(cfg, tag, degree, cells[c]));
        std::vector<Rat> v = detail::cochain_to_vector(img, cells_up);
        for (size_t r = 0; r < v.size(); ++r)
            if (v[r] != 0)
                out_mat.set(r, c, v[r]);
    }
    auto kernel = out_mat.kernel_basis();
    res.dim_kernel = kernel.size();
    // image of the incoming differential
    SpanBasis image(cells.size());
    for (size_t c = 0; c < cells_down.size(); ++c) {
        KoszulCochain img =
            koszul_cochain_diff(detail::cell_cochain(cfg, tag, degree - 1, cells_down[c]));
        if (img.is_zero())
            continue;
        image.insert(detail::cochain_to_vector(img, cells));
    }
    res.rank_in = image.rank();
    res.dim = res.dim_kernel - res.rank_in;
    // representatives: kernel vectors reduced mod image, independent residues
    SpanBasis reps(cells.size());
    for (const auto &kv : kernel) {
        std::vector<Rat> residue = reduce_against(image.rows(), kv);
        std::vector<Rat> combined = residue;
        // also reduce against chosen representatives for independence
        if (!reps.insert(residue))
            continue;
        KoszulCochain rep(cfg, degree, tag);
        for (size_t i = 0; i < cells.size(); ++i)
            if (combined[i] != 0)
                rep.add_term(cells[i].mask, cells[i].sym,
                             Poly::monomial(cells[i].mono, combined[i]));
        res.representatives.push_back(std::move(rep));
        if (res.representatives.size() == res.dim)
            break;
    }
    return res;
}

// Dimension of the truncated multivector space g^k (for the HKR comparison).
inline size_t truncated_multivector_dim(const SpaceConfig &cfg, int rank,
                                        const CohomologyCaps &caps) {
    if (rank < 0 || rank > cfg.n)
        return 0;
    size_t monos = 1;
    {
        // count monomials of degree <= poly_deg in n variables
        // C(n + d, n) summed is equivalent to C(n + poly_deg, n)
        size_t n = cfg.n, d = caps.poly_deg;
        size_t num = 1, den = 1;
        for (size_t i = 1; i <= n; ++i) {
            num *= (d + i);
            den *= i;
        }
        monos = num / den;
    }
    size_t binom = 1;
    for (int i = 0; i < rank; ++i)
        binom = binom * (cfg.n - i) / (i + 1);
    return monos * binom;
}

inline size_t truncated_b_dim(const SpaceConfig &cfg, const CohomologyCaps &caps) {
    size_t n = cfg.n - cfg.l, d = caps.poly_deg;
    size_t num = 1, den = 1;
    for (size_t i = 1; i <= n; ++i) {
        num *= (d + i);
        den *= i;
    }
    return num / den;
}

inline size_t binom_nk(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    size_t b = 1;
    for (int i = 0; i < k; ++i)
        b = b * (n - i) / (i + 1);
    return b;
}

} // namespace costar
