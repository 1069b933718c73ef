// Builds the adapted star product for P = dy ^ dx on R^2 with C = {y = 0}
// order by order, checks it against the closed-form standard-ordered product
// C_r(f,g) = 1/r! d_y^r f d_x^r g, and prints the product and a sample
// computation x * y.

#include "costar/formality.hpp"
#include "costar/serialization.hpp"

#include <iostream>

using namespace costar;

int main() {
    SpaceConfig cfg(2, 1); // x tangential, y transversal, C = {y = 0}
    MultiVec poisson(cfg, 2);
    poisson.add_term(3u, Poly(-1)); // dy ^ dx

    const int order = 3;
    auto result = mc_build(poisson, order);
    if (!std::holds_alternative<StarProduct>(result)) {
        const auto &obs = std::get<ObstructionReport>(result);
        std::cerr << "obstruction at order " << obs.order << "\n";
        return 2;
    }
    const StarProduct &star = std::get<StarProduct>(result);

    StarProduct closed = standard_ordered_product(order);
    std::cout << "mc_build reproduces the closed form: "
              << (star.C == closed.C ? "yes" : "NO") << "\n";

    StarCheckReport rep = verify_star(star, poisson);
    std::cout << "verify_star: " << (rep.all_passed() ? "all checks pass" : "FAILED")
              << "\n\n";

    std::cout << "star product JSON:\n" << star_to_json(star).dump(2) << "\n\n";

    // f * g = fg + h C_1(f,g) + h^2 C_2(f,g) + ... for f = x, g = y
    Poly f = Poly::var(base_var(1)), g = Poly::var(base_var(2));
    std::cout << "x * y = " << (f * g).str();
    for (int r = 1; r <= order; ++r) {
        Poly c = star.C[r - 1].apply({f, g});
        if (!c.is_zero())
            std::cout << " + h^" << r << " (" << c.str() << ")";
    }
    std::cout << "\n";
    std::cout << "y * x = " << (g * f).str();
    for (int r = 1; r <= order; ++r) {
        Poly c = star.C[r - 1].apply({g, f});
        if (!c.is_zero())
            std::cout << " + h^" << r << " (" << c.str() << ")";
    }
    std::cout << "\n";
    return rep.all_passed() ? 0 : 1;
}
