#pragma once

#include <map>
#include <string>
#include <vector>

#include "surface.hpp"

namespace cuspq {

struct BuiltinSurface {
    std::string name;
    std::string text;
    std::map<std::string, std::string> arc_names;  // edge -> arc label
};

inline const std::vector<BuiltinSurface>& builtin_surfaces() {
    static const std::vector<BuiltinSurface> all = {
        {"s111",
         R"(# one-holed torus with one cusp
surface g=1 s_h=1 s_o=0 n=1
vertex v0 trivalent
vertex v1 trivalent
vertex v2 trivalent
vertex c cusp
edge pi open  v0.0 c
edge Z1 inner v0.2 v1.0
edge Z2 inner v0.1 v2.0
edge Z3 inner v1.2 v2.2
edge Z4 inner v1.1 v2.1
)",
         {{"pi", "a0"}, {"Z1", "a1"}, {"Z3", "a2"}, {"Z4", "a3"}, {"Z2", "a4"}}},
        {"quad014",
         R"(# disc with four cusps
surface g=0 s_h=1 s_o=0 n=4
vertex v1 trivalent
vertex v2 trivalent
vertex c1 cusp
vertex c2 cusp
vertex c3 cusp
vertex c4 cusp
edge pi1 open  v1.0 c1
edge pi2 open  v1.1 c2
edge pi3 open  v2.0 c3
edge pi4 open  v2.1 c4
edge Z   inner v1.2 v2.2
)",
         {{"pi1", "la"}, {"pi2", "lb"}, {"pi3", "lc"}, {"pi4", "ld"}, {"Z", "le"}}},
        {"tri023",
         R"(# annulus with three cusps on the outer boundary
surface g=0 s_h=2 s_o=0 n=3
vertex v1 trivalent
vertex v2 trivalent
vertex v3 trivalent
vertex c1 cusp
vertex c2 cusp
vertex c3 cusp
edge p1 open  v1.1 c1
edge p2 open  v2.1 c2
edge p3 open  v1.2 c3
edge Z1 inner v2.0 v3.2
edge Z2 inner v2.2 v1.0
edge W  loop  v3 omega=hole
)",
         {{"p3", "l12"}, {"p2", "l13"}, {"p1", "l23"}, {"Z1", "t11"}, {"Z2", "t13"}}},
        {"torus11",
         R"(# one-holed torus, theta spine
surface g=1 s_h=1 s_o=0 n=0
vertex v1 trivalent
vertex v2 trivalent
edge Z1 inner v1.0 v2.0
edge Z2 inner v1.1 v2.1
edge Z3 inner v1.2 v2.2
)",
         {}},
    };
    return all;
}

inline const BuiltinSurface& builtin(const std::string& name) {
    for (auto& b : builtin_surfaces())
        if (b.name == name) return b;
    throw input_error("unknown surface '" + name + "'");
}

inline FatGraph builtin_graph(const std::string& name) { return parse_surface(builtin(name).text); }

// closed words displayed for the built-in examples
inline std::map<std::string, std::string> builtin_closed_words(const std::string& name) {
    if (name == "s111")
        return {{"G1", "L X(Z2) R X(Z4) L X(Z1)"},
                {"G2", "L X(Z2) L X(Z3) R X(Z1)"},
                {"G3", "L X(Z4) R X(Z3)"},
                {"g", "R X(Z1) L X(Z3) L X(Z4) L X(Z1) L X(Z2) L X(Z3) L X(Z4) L X(Z2)"}};
    if (name == "torus11")
        return {{"G1", "L X(Z2) R X(Z3)"}, {"G2", "L X(Z1) R X(Z2)"}, {"G3", "L X(Z3) R X(Z1)"}};
    return {};
}

}  // namespace cuspq
