#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "nervekit/bicat.hpp"
#include "nervekit/simpcat.hpp"

namespace nervekit {

// Normal homomorphism [n] -> B: vertex objects v, 1-cells b over the pairs
// i < j (lexicographic), 2-cells beta over the triples i < j < k with
// beta_ijk : b_jk·b_ij -> b_ik. Cells are local indices in their hom.
struct NerveCell {
  std::vector<int> v, b, beta;
};

int pair_index(int n, int i, int j);
int triple_index(int n, int i, int j, int k);
std::vector<std::pair<int, int>> nerve_pairs(int n);
std::vector<std::array<int, 3>> nerve_triples(int n);

struct NerveResult {
  BicatPtr B;
  SimpPtr X;
  // cells[n][x] for every level that was enumerated directly (0..3, and 4 with direct)
  std::vector<std::vector<NerveCell>> cells;
  std::vector<std::map<std::vector<int>, int>> lookup;
  std::vector<TupleCatPtr> tuples;  // level categories for n >= 1 with cells
  bool direct_level4 = false;

  int find_cell(int n, const NerveCell& c) const;
};

NerveResult two_nerve(const BicatPtr& B, const Caps& caps = {}, int L = 4, bool direct_level4 = false);

// Compatibility of the direct level 4 with the coskeletal one: the face-family
// map X_4 -> (Cosk_3 X)_4 is an isomorphism commuting with all operators.
Certificate compare_level4(const NerveResult& direct, const NerveResult& cosk);

SimpMap nerve_map(const BicatHom& F, const NerveResult& NA, const NerveResult& NB);
Modification nerve_icon(const Icon& a, const NerveResult& NA, const NerveResult& NB);

// Laws: 3-coskeletal, X0-discrete, segal-equivalence, c2-dif, c3-dif.
Certificate check_characterization(const TruncSimpCat& X, const Caps& caps = {});

struct ProbeCounts {
  std::int64_t homs = 0, simp_maps = 0, icons = 0, transformations = 0;
  Json to_json() const;
};
Certificate fully_faithful_probe(const BicatPtr& A, const BicatPtr& B, const Caps& caps = {},
                                 ProbeCounts* counts = nullptr);

}  // namespace nervekit
