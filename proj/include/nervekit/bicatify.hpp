#pragma once

#include "nervekit/bicat.hpp"
#include "nervekit/nerve.hpp"
#include "nervekit/simpcat.hpp"

namespace nervekit {

// Choices behind GX: a pseudo-inverse s of S_2, composition M = d_1∘s and
// sigma_xi : d_1 xi -> M(S_2 xi); the associator is solved through S_3.
struct Choices {
  SegalMap S2, S3;
  PseudoInverse s2, s3;
  Functor M;
  std::vector<int> sigma;                  // per X_2 object, an X_1 morphism
  std::vector<int> cell_local, mor_local;  // X_1 object / morphism -> index in its hom
  Json to_json(const TruncSimpCat& X) const;
};

struct BicatifyResult {
  BicatPtr GX;
  Choices choices;
  Certificate choice_independence;  // alpha from every 3-simplex agrees with the table
  Certificate s4;                   // pentagon through 4-simplices (skipped below level 4)
  Certificate pentagon;             // validate_bicategory on GX
};

BicatifyResult bicategorify(const SimpPtr& X, const Caps& caps = {});

struct UnitResult {
  NerveResult NGX;
  SimpMap u;
  Certificate report;
};
UnitResult unit_map(const SimpPtr& X, const BicatifyResult& G, const Caps& caps = {});

struct Extension {
  BicatHom hom;      // GX -> B
  SimpMap map;       // N(GX) -> N B
  Certificate report;
};
Extension extend_along_unit(const SimpMap& F, const NerveResult& NB, const BicatifyResult& G, const UnitResult& U);

Certificate roundtrip_counit(const BicatPtr& B, const Caps& caps = {});

}  // namespace nervekit
