#pragma once

#include <array>
#include <string>
#include <vector>

#include "nervekit/bicat.hpp"

namespace nervekit {

// [n]: objects "0".."n", one morphism "i->j" for each i <= j.
CatPtr ordinal_category(int n);
// Two objects with an isomorphism "u" : a -> b and its inverse "v".
CatPtr iso_category();
// k objects "0".."k-1" and identities only.
CatPtr disc_category(int k);

// Hom categories are discrete on the morphisms of C; 2-cells are "id(f)".
BicatPtr locally_discrete(const CatPtr& C);
BicatPtr terminal_bicat();

// One-object bicategory of a finite monoid given by its multiplication table
// (table[a][b] = a·b, element 0 is the unit).
BicatPtr suspension_monoid(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table);
// {e, a, b} with a·a = b and b absorbing.
BicatPtr three_element_monoid();

// One object, 1-cells e, g (the group Z/2), each with automorphisms + and -.
// omega[(h*2+g)*2+f] in {1,-1} is the associator sign at (h, g, f), 0 = e.
// Rejects sign tables that fail the pentagon or triangle laws.
BicatPtr cocycle_bicat(const std::array<int, 8>& omega);
// omega = -1 exactly at (g, g, g).
BicatPtr coc2();

// Named fixtures used by tests and the CLI: terminal, ld1, ld2, coc2, monoid3,
// cocycle-trivial, iso, disc2.
BicatPtr named_bicat(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace nervekit
