#pragma once

#include <cstdint>
#include <map>

#include "nervekit/nerve.hpp"
#include "nervekit/simpcat.hpp"

namespace nervekit {

// Faces S of [n] with 2 <= |S| <= n, by size then lexicographically.
std::vector<unsigned> decoration_faces(int n);

// A simplex of X_n with, for each S in decoration_faces(n), an iso
// u[k] : S^* base -> y_S in X_{|S|-1}.
struct Decorated {
  int base = -1;
  std::vector<int> u;
  auto operator<=>(const Decorated&) const = default;
};

struct PlusLevel {
  std::vector<Decorated> cells;
  std::map<Decorated, int> index;
  std::vector<int> phi;               // morphism -> underlying X_n morphism
  std::vector<std::int64_t> offset;   // (P, Q) -> first morphism of hom(P, Q)
  int find(const Decorated& d) const;
};

// X+ through level min(L, 3). Level 2 holds every decoration; level 3 holds
// the decorations generated by j and the degeneracies.
struct PlusResult {
  SimpPtr X, plus;
  std::vector<PlusLevel> levels;  // filled for n >= 2
  SimpMap j;
  PseudoSimpMap p;
  Certificate report;  // p∘j = 1, j levelwise an equivalence, both maps valid
};
PlusResult plus_construction(const SimpPtr& X, const Caps& caps = {});
// X+ is stored as {"construction": "plus", "source": X} and rebuilt on load.
Json plus_to_json(const PlusResult& P);
bool is_plus_json(const Json& j);
PlusResult plus_from_json(const Json& j, const Caps& caps = {});

struct Retraction {
  SimpMap r;
  Certificate report;  // r valid, r∘j = 1
};
Retraction coflexible_retraction(const NerveResult& N, const PlusResult& P);

// g with psi[n][x] : f x -> g x; g's isos are f's conjugated by psi.
PseudoSimpMap transport(const PseudoSimpMap& f, const Modification& psi);
// f conjugated by isos drawn from the seed at every level above 0.
PseudoSimpMap random_decoration(const PseudoSimpMap& f, std::uint64_t seed);

struct Normalized {
  PseudoSimpMap g;
  Modification psi;  // f -> g
  Certificate report;
};
Normalized normalize_pseudo(const PseudoSimpMap& f);

struct Strictified {
  SimpMap h;
  Modification comparison;  // f -> h
  Certificate report;
};
Strictified strictify(const PseudoSimpMap& f, const NerveResult& NB);

}  // namespace nervekit
