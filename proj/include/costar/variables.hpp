#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace costar {

// Variable universe. Base carries the coordinates x_1..x_n of R^n; A and B are
// the two outer arguments of bar/Koszul chains; X(i) the i-th middle argument
// (width n); T the simplex integration parameters t_i; Aux(i) scratch slots
// (a', b' pairs of the s_H recursion). Aux(0) is a free slot spelled "y{j}".
enum class Slot : uint8_t { Base = 0, A = 1, B = 2, X = 3, T = 4, Aux = 5 };

struct Var {
    Slot slot = Slot::Base;
    uint16_t idx = 0;   // which X(i)/Aux(i); 0 for Base/A/B/T
    uint16_t coord = 1; // 1..n (for T: the i of t_i)

    friend auto operator<=>(const Var &, const Var &) = default;
};

inline Var base_var(int coord) { return Var{Slot::Base, 0, static_cast<uint16_t>(coord)}; }
inline Var a_var(int coord) { return Var{Slot::A, 0, static_cast<uint16_t>(coord)}; }
inline Var b_var(int coord) { return Var{Slot::B, 0, static_cast<uint16_t>(coord)}; }
inline Var x_var(int i, int coord) { return Var{Slot::X, static_cast<uint16_t>(i), static_cast<uint16_t>(coord)}; }
inline Var t_var(int i) { return Var{Slot::T, 0, static_cast<uint16_t>(i)}; }
inline Var aux_var(int i, int coord) { return Var{Slot::Aux, static_cast<uint16_t>(i), static_cast<uint16_t>(coord)}; }

inline std::string var_name(const Var &v) {
    switch (v.slot) {
    case Slot::Base: return "x" + std::to_string(v.coord);
    case Slot::A: return "a" + std::to_string(v.coord);
    case Slot::B: return "b" + std::to_string(v.coord);
    case Slot::X: return "x" + std::to_string(v.idx) + "_" + std::to_string(v.coord);
    case Slot::T: return "t" + std::to_string(v.coord);
    case Slot::Aux:
        if (v.idx == 0)
            return "y" + std::to_string(v.coord);
        return "u" + std::to_string(v.idx) + "_" + std::to_string(v.coord);
    }
    return "?";
}

// Inverse of var_name. Accepted shapes: x3, a2, b1, t2, y4, x2_1, u1_3.
inline Var var_from_name(const std::string &name) {
    if (name.empty())
        throw std::invalid_argument("empty variable name");
    char c = name[0];
    std::string rest = name.substr(1);
    auto underscore = rest.find('_');
    auto num = [](const std::string &s) {
        if (s.empty())
            throw std::invalid_argument("bad variable index");
        return std::stoi(s);
    };
    if (underscore != std::string::npos) {
        int i = num(rest.substr(0, underscore));
        int coord = num(rest.substr(underscore + 1));
        if (c == 'x')
            return x_var(i, coord);
        if (c == 'u')
            return aux_var(i, coord);
        throw std::invalid_argument("unknown variable: " + name);
    }
    int coord = num(rest);
    switch (c) {
    case 'x': return base_var(coord);
    case 'a': return a_var(coord);
    case 'b': return b_var(coord);
    case 't': return t_var(coord);
    case 'y': return aux_var(0, coord);
    default: throw std::invalid_argument("unknown variable: " + name);
    }
}

} // namespace costar
