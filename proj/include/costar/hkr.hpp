#pragma once

#include "costar/cochain.hpp"
#include "costar/diffop.hpp"
#include "costar/linalg.hpp"
#include "costar/multivector.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace costar {

struct NotACocycle : std::runtime_error {
    NotACocycle() : std::runtime_error("input is not a Hochschild cocycle") {}
};
struct NotExact : std::runtime_error {
    MultiVec cls;
    explicit NotExact(MultiVec c)
        : std::runtime_error("cocycle has a nonzero HKR class"), cls(std::move(c)) {}
};

// psi_HKR: full antisymmetrization with the 1/k! normalization.
inline PolyDiffOp psi_hkr(const MultiVec &x) {
    const SpaceConfig &cfg = x.config();
    const int k = x.rank();
    PolyDiffOp out(cfg, k);
    Rat norm = Rat(1) / factorial(static_cast<unsigned>(k));
    for (const auto &[s, f] : x.terms()) {
        std::vector<int> coords;
        for (int c = 1; c <= cfg.n; ++c)
            if (mask_has(s, c))
                coords.push_back(c);
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i)
            perm[i] = i;
        do {
            int sgn = 1;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (perm[i] > perm[j])
                        sgn = -sgn;
            PolyDiffOp::Key key;
            key.reserve(k);
            for (int i = 0; i < k; ++i)
                key.push_back(MultiIdx::unit(cfg.n, coords[perm[i]]));
            out.add_term(key, f * (norm * Rat(sgn)));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

// pi_HKR: keep first-order-in-every-slot terms, wedge the directions.
inline MultiVec pi_hkr(const PolyDiffOp &phi) {
    const SpaceConfig &cfg = phi.config();
    const int k = phi.arity();
    MultiVec out(cfg, k);
    for (const auto &[key, c] : phi.terms()) {
        bool first_order = true;
        std::vector<int> coords;
        for (const MultiIdx &idx : key) {
            if (idx.order() != 1) {
                first_order = false;
                break;
            }
            for (int cc = 1; cc <= cfg.n; ++cc)
                if (idx.o[cc - 1] == 1)
                    coords.push_back(cc);
        }
        if (!first_order)
            continue;
        IndexMask m = 0;
        int sgn = 1;
        bool dead = false;
        for (int cc : coords) {
            if (mask_has(m, cc)) {
                dead = true;
                break;
            }
            sgn *= merge_sign(m, 1u << (cc - 1));
            m = mask_add(m, cc);
        }
        if (!dead)
            out.add_term(m, c * Rat(sgn));
    }
    return out;
}

// Adapted HKR map psi^[1]: factor each wedge monomial into its transversal and
// tangential blocks, antisymmetrize the blocks separately, transversal factors
// leftmost. Sends adapted multivectors to adapted operators.
inline PolyDiffOp psi1_hkr(const MultiVec &x) {
    const SpaceConfig &cfg = x.config();
    const int k = x.rank();
    PolyDiffOp out(cfg, k);
    for (const auto &[s, f] : x.terms()) {
        std::vector<int> tang, trans;
        for (int c = 1; c <= cfg.n; ++c) {
            if (!mask_has(s, c))
                continue;
            (cfg.transversal(c) ? trans : tang).push_back(c);
        }
        // dS = dS' ^ dS'' (ascending order lists tangential block first);
        // Phi^{-1}(dS) = (-1)^{|S'||S''|} dS'' (x) dS'
        int block_sign = (tang.size() * trans.size()) % 2 ? -1 : 1;
        Rat norm = Rat(block_sign) /
                   (factorial(static_cast<unsigned>(tang.size())) *
                    factorial(static_cast<unsigned>(trans.size())));
        std::vector<int> pt(trans.size()), pg(tang.size());
        for (size_t i = 0; i < trans.size(); ++i)
            pt[i] = static_cast<int>(i);
        for (size_t i = 0; i < tang.size(); ++i)
            pg[i] = static_cast<int>(i);
        // iterate both permutations
        std::vector<int> perm_t = pt;
        do {
            int sgn_t = 1;
            for (size_t i = 0; i < perm_t.size(); ++i)
                for (size_t j = i + 1; j < perm_t.size(); ++j)
                    if (perm_t[i] > perm_t[j])
                        sgn_t = -sgn_t;
            std::vector<int> perm_g = pg;
            do {
                int sgn_g = 1;
                for (size_t i = 0; i < perm_g.size(); ++i)
                    for (size_t j = i + 1; j < perm_g.size(); ++j)
                        if (perm_g[i] > perm_g[j])
                            sgn_g = -sgn_g;
                PolyDiffOp::Key key;
                key.reserve(k);
                for (size_t i = 0; i < perm_t.size(); ++i)
                    key.push_back(MultiIdx::unit(cfg.n, trans[perm_t[i]]));
                for (size_t i = 0; i < perm_g.size(); ++i)
                    key.push_back(MultiIdx::unit(cfg.n, tang[perm_g[i]]));
                out.add_term(key, f * (norm * Rat(sgn_t * sgn_g)));
            } while (std::next_permutation(perm_g.begin(), perm_g.end()));
        } while (std::next_permutation(perm_t.begin(), perm_t.end()));
    }
    return out;
}

// HKR class of a cocycle, read off on the Koszul side (zero differential for
// M = A, so the transfer itself is the class).
inline MultiVec hkr_class(const PolyDiffOp &phi) {
    KoszulCochain kappa = bar_to_koszul(to_cochain(phi));
    MultiVec out(phi.config(), phi.arity());
    for (const auto &[s, sym] : kappa.terms())
        for (const auto &[j, c] : sym.terms)
            out.add_term(s, c);
    return out;
}

namespace detail {

// Connecting-class data of a btilde-cocycle eta in Gtilde^{k}: the harmonic
// part of the D(B,B) leak of the differential of its Koszul transfer.
struct TildeClass {
    KoszulCochain harmonic;   // MDBB, degree k-1 of the Gtilde index
    KoszulCochain kappa;      // MDIB transfer of eta itself
};

inline TildeClass tilde_class(const GTildeOp &eta) {
    const SpaceConfig &cfg = eta.config();
    BarCochain c = to_cochain(eta); // arity k-1, MDIB
    KoszulCochain kappa = bar_to_koszul(c);
    // lift to D(A,B) and differentiate; the image must sit in D(B,B)
    KoszulCochain hat = retag(kappa, Bimodule::MDAB);
    KoszulCochain tau_full = koszul_cochain_diff(hat);
    KoszulCochain tau(cfg, tau_full.degree(), Bimodule::MDBB);
    for (const auto &[s, sym] : tau_full.terms())
        for (const auto &[j, cc] : sym.terms) {
            if (j.has_transversal(cfg))
                throw std::logic_error("Koszul transfer of a btilde-cocycle leaks");
            tau.add_term(s, j, cc);
        }
    TildeClass out{poincare_harmonic(tau, tangential_directions(cfg)), kappa};
    return out;
}

// Solve delta_{D(I,B)} rho = kappa for a cocycle kappa with zero connecting
// class, via the D(A,B) Poincare contraction.
inline KoszulCochain dib_primitive(const KoszulCochain &kappa) {
    const SpaceConfig &cfg = kappa.config();
    if (kappa.is_zero())
        return KoszulCochain(cfg, std::max(kappa.degree() - 1, 0), Bimodule::MDIB);
    if (kappa.degree() == 0)
        throw std::logic_error("degree-0 DIB cocycle with zero class must vanish");
    KoszulCochain hat = retag(kappa, Bimodule::MDAB);
    KoszulCochain tau_full = koszul_cochain_diff(hat);
    KoszulCochain tau(cfg, tau_full.degree(), Bimodule::MDBB);
    for (const auto &[s, sym] : tau_full.terms())
        for (const auto &[j, cc] : sym.terms)
            tau.add_term(s, j, cc);
    auto tang = tangential_directions(cfg);
    if (!poincare_harmonic(tau, tang).is_zero())
        throw std::logic_error("DIB primitive requested for a nonzero class");
    KoszulCochain sigma = poincare_h(tau, tang); // d'_p sigma = tau
    KoszulCochain omega = hat - retag(sigma, Bimodule::MDAB);
    // omega is a d_p-cocycle of positive degree in D(A,B): contract
    KoszulCochain rho_hat = poincare_h(omega, all_directions(cfg));
    KoszulCochain rho(cfg, rho_hat.degree(), Bimodule::MDIB);
    for (const auto &[s, sym] : rho_hat.terms())
        for (const auto &[j, cc] : sym.terms)
            rho.add_term(s, j, cc); // MDIB add_term projects J''=0 away
    return rho;
}

} // namespace detail

// Hochschild primitive: xi with b(xi) = phi, via the dualized homotopy
// xi = phi o s_H. For adapted cocycles an adapted correction is applied so
// that the returned primitive lies in G_I.
inline PolyDiffOp primitive(const PolyDiffOp &phi) {
    const SpaceConfig &cfg = phi.config();
    if (phi.is_zero())
        return PolyDiffOp(cfg, std::max(phi.arity() - 1, 0));
    if (!hochschild_b(phi).is_zero())
        throw NotACocycle();
    MultiVec cls = hkr_class(phi);
    if (!cls.is_zero())
        throw NotExact(cls);
    PolyDiffOp xi = to_diffop(s_dual(to_cochain(phi)));
    if (hochschild_b(xi) != phi)
        throw std::logic_error("dual homotopy failed to produce a primitive");
    if (!is_adapted_op(phi) || is_adapted_op(xi))
        return xi;

    // adapted correction: kill Xi(xi) without disturbing b(xi)
    GTildeOp eta = xi_project(xi);
    if (!btilde(eta).is_zero())
        throw std::logic_error("Xi of the primitive is not a btilde cocycle");
    detail::TildeClass tc = detail::tilde_class(eta);

    // find htilde in gtilde with class(eta - Xi psi1 embed(htilde)) = 0 by
    // solving a small exact linear system over the harmonic candidates
    const int rank = eta.arity(); // htilde in gtilde^{rank}, rank = arity of xi
    // collect harmonic basis cells (S mask, monomial) from tc.harmonic
    std::vector<std::pair<IndexMask, Monomial>> cells;
    std::vector<Rat> target;
    auto cell_index = [&](IndexMask s, const Monomial &m) -> size_t {
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].first == s && cells[i].second == m)
                return i;
        cells.emplace_back(s, m);
        target.push_back(Rat(0));
        return cells.size() - 1;
    };
    auto harvest = [&](const KoszulCochain &h, std::vector<Rat> *dense) {
        for (const auto &[s, sym] : h.terms())
            for (const auto &[j, c] : sym.terms) {
                if (!j.is_zero())
                    continue; // harmonic has symbol degree 0 in p'
                for (const auto &[mono, coeff] : c.terms()) {
                    size_t idx = cell_index(s, mono);
                    if (dense) {
                        if (dense->size() < cells.size())
                            dense->resize(cells.size(), Rat(0));
                        (*dense)[idx] += coeff;
                    } else
                        target[idx] += coeff;
                }
            }
    };
    harvest(tc.harmonic, nullptr);

    // candidate generators for htilde: transversal masks of rank `rank` with
    // tangential monomial coefficients appearing in the harmonic part
    std::vector<GTildeVec> gens;
    {
        IndexMask trans_mask = 0;
        for (int c = cfg.n - cfg.l + 1; c <= cfg.n; ++c)
            trans_mask = mask_add(trans_mask, c);
        std::vector<Monomial> monos;
        for (const auto &[s, m] : cells)
            if (std::find(monos.begin(), monos.end(), m) == monos.end())
                monos.push_back(m);
        for (IndexMask s = 0; s < (1u << cfg.n); ++s) {
            if (mask_rank(s) != rank || (s & ~trans_mask))
                continue;
            for (const Monomial &m : monos) {
                GTildeVec g(cfg, rank);
                g.add_term(s, Poly::monomial(m, Rat(1)));
                gens.push_back(g);
            }
        }
    }
    GTildeVec htilde(cfg, rank);
    if (!target.empty() || !tc.harmonic.is_zero()) {
        std::vector<std::vector<Rat>> cols;
        for (const GTildeVec &g : gens) {
            GTildeOp image = xi_project(psi1_hkr(embed_gtilde(g)));
            detail::TildeClass gc = detail::tilde_class(image);
            std::vector<Rat> col;
            harvest(gc.harmonic, &col);
            col.resize(cells.size(), Rat(0));
            cols.push_back(std::move(col));
        }
        target.resize(cells.size(), Rat(0));
        QMatrix M(cells.size(), gens.size());
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t r = 0; r < cols[c].size(); ++r)
                if (cols[c][r] != 0)
                    M.set(r, c, cols[c][r]);
        std::vector<Rat> sol;
        if (!solve_linear(std::move(M), target, sol))
            throw std::logic_error("connecting-class system inconsistent");
        for (size_t i = 0; i < gens.size(); ++i)
            if (sol[i] != 0)
                for (const auto &[s, p] : gens[i].terms()) {
                    GTildeVec scaled(cfg, rank);
                    scaled.add_term(s, p * sol[i]);
                    htilde = htilde + scaled;
                }
    }

    PolyDiffOp psi_h = psi1_hkr(embed_gtilde(htilde));
    GTildeOp eta_prime = eta - xi_project(psi_h);
    detail::TildeClass cc = detail::tilde_class(eta_prime);
    if (!cc.harmonic.is_zero())
        throw std::logic_error("connecting class did not cancel");

    // rho with btilde(rho) = eta': eta' = Theta* eta' + btilde(s* eta') and
    // Theta* eta' = -btilde(koszul_to_bar(rho_K)) with delta rho_K = kappa'.
    GTildeOp rho(cfg, eta.arity() - 1);
    {
        BarCochain cpr = to_cochain(eta_prime);
        BarCochain s_part = s_dual(cpr);
        KoszulCochain kappa2 = cc.kappa;
        GTildeOp theta_part(cfg, eta.arity() - 1);
        if (!kappa2.is_zero()) {
            KoszulCochain rho_K = detail::dib_primitive(kappa2);
            theta_part = to_gtilde(koszul_to_bar(rho_K));
        }
        rho = to_gtilde(s_part) + theta_part;
    }
    if (btilde(rho) != eta_prime) {
        // the sign of the theta part depends on the pinned differential sign;
        // the subtraction variant is the one compatible with it
        BarCochain cpr = to_cochain(eta_prime);
        GTildeOp rho2 = to_gtilde(s_dual(cpr));
        if (!cc.kappa.is_zero()) {
            KoszulCochain rho_K = detail::dib_primitive(cc.kappa);
            rho2 = rho2 - to_gtilde(koszul_to_bar(rho_K));
        }
        rho = rho2;
        if (btilde(rho) != eta_prime)
            throw std::logic_error("no primitive for the reduced cocycle");
    }

    PolyDiffOp corrected = xi - psi_h - hochschild_b(lift_gtilde(rho));
    if (hochschild_b(corrected) != phi)
        throw std::logic_error("adapted correction changed the primitive");
    if (!is_adapted_op(corrected))
        throw std::logic_error("adapted correction failed");
    return corrected;
}

struct HkrDecomposition {
    MultiVec harmonic;
    PolyDiffOp primitive;
};

// phi = psi1(harmonic) + b(primitive) for a cocycle phi.
inline HkrDecomposition decompose(const PolyDiffOp &phi) {
    if (!hochschild_b(phi).is_zero())
        throw NotACocycle();
    MultiVec h = pi_hkr(phi);
    PolyDiffOp residual = phi - psi1_hkr(h);
    PolyDiffOp xi = primitive(residual);
    return HkrDecomposition{std::move(h), std::move(xi)};
}

} // namespace costar
