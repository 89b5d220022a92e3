#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nervekit/fincat.hpp"

namespace nervekit {

// Finite bicategory. Hom categories are indexed by (A,B); 1-cells are objects
// of hom(A,B) and 2-cells its morphisms. Cell ids are unique across all homs.
// Associator a : h(gf) -> (hg)f, left unitor 1∘f -> f, right unitor f∘1 -> f.
struct FinBicat {
  struct Comp {
    std::vector<int> obj;  // obj[g * |hom(A,B)| + f]
    std::vector<int> mor;  // mor[beta * |hom(A,B) morphisms| + alpha]
  };
  struct Cell {
    int A = -1, B = -1, local = -1;
  };

  std::vector<std::string> objects;
  std::vector<CatPtr> homs;                // [A*n + B]
  std::vector<Comp> comp;                  // [(A*n + B)*n + C]
  std::vector<int> units;                  // object of hom(A,A)
  std::vector<std::vector<int>> assoc;     // [((A*n+B)*n+C)*n+D][(h*|BC| + g)*|AB| + f]
  std::vector<std::vector<int>> lunit;     // [A*n+B][f]
  std::vector<std::vector<int>> runit;     // [A*n+B][f]

  int n() const { return static_cast<int>(objects.size()); }
  int hidx(int A, int B) const { return A * n() + B; }
  int cidx(int A, int B, int C) const { return (A * n() + B) * n() + C; }
  int aidx(int A, int B, int C, int D) const { return ((A * n() + B) * n() + C) * n() + D; }
  const FinCat& hom(int A, int B) const { return *homs[hidx(A, B)]; }
  const CatPtr& hom_ptr(int A, int B) const { return homs[hidx(A, B)]; }

  // g : B -> C after f : A -> B
  int c1(int A, int B, int C, int g, int f) const {
    return comp[cidx(A, B, C)].obj[g * hom(A, B).num_objects() + f];
  }
  int c2(int A, int B, int C, int beta, int alpha) const {
    return comp[cidx(A, B, C)].mor[beta * hom(A, B).num_morphisms() + alpha];
  }
  int a(int A, int B, int C, int D, int h, int g, int f) const {
    return assoc[aidx(A, B, C, D)][(h * hom(B, C).num_objects() + g) * hom(A, B).num_objects() + f];
  }
  int lu(int A, int B, int f) const { return lunit[hidx(A, B)][f]; }
  int ru(int A, int B, int f) const { return runit[hidx(A, B)][f]; }
  // identity 2-cell on a 1-cell
  int id2(int A, int B, int f) const { return hom(A, B).identity(f); }

  std::string cell1_id(int A, int B, int f) const { return hom(A, B).object_id(f); }
  std::string cell2_id(int A, int B, int m) const { return hom(A, B).morphism_id(m); }
  std::optional<Cell> find_1cell(const std::string& id) const;
  std::optional<Cell> find_2cell(const std::string& id) const;

  // Fills the id lookup tables; rejects duplicate cell ids.
  void index();

 private:
  std::unordered_map<std::string, Cell> cells1_, cells2_;
};

using BicatPtr = std::shared_ptr<const FinBicat>;
BicatPtr finalize_bicat(FinBicat B);

// Homomorphism of bicategories. phi[(A,B,C)][g*|AB|+f] : Fg·Ff -> F(gf).
// iota is empty for normal homomorphisms, else iota[A] : 1_{FA} -> F(1_A).
struct BicatHom {
  BicatPtr src, tgt;
  std::vector<int> obj;
  std::vector<Functor> homf;  // [A*n+B] : hom(A,B) -> hom(FA,FB)
  std::vector<std::vector<int>> phi;
  std::vector<int> iota;

  bool normal() const { return iota.empty(); }
  int F1(int A, int B, int f) const { return homf[src->hidx(A, B)].obj[f]; }
  int F2(int A, int B, int m) const { return homf[src->hidx(A, B)].mor[m]; }
  int ph(int A, int B, int C, int g, int f) const {
    return phi[src->cidx(A, B, C)][g * src->hom(A, B).num_objects() + f];
  }
};

// Icon between homomorphisms that agree on objects: comp[A*n+B][f] : Ff -> Gf.
struct Icon {
  BicatHom F, G;
  std::vector<std::vector<int>> comp;
};

enum class WhiskerSide { Left, Right };

Certificate validate_bicategory(const FinBicat& B);
Certificate validate_normal_hom(const BicatHom& F);
Certificate validate_homomorphism(const BicatHom& F);
Certificate validate_icon(const Icon& a);

BicatHom identity_hom(const BicatPtr& B);
Icon identity_icon(const BicatHom& F);
BicatHom compose_normal_homs(const BicatHom& G, const BicatHom& F);
Icon compose_icons_vertical(const Icon& beta, const Icon& alpha);
// Left: H∘alpha (H after the icon); Right: alpha∘H (H before the icon).
Icon whisker(const Icon& alpha, const BicatHom& H, WhiskerSide side);
bool icon_is_invertible(const Icon& a, Icon* inverse = nullptr);
bool hom_is_equivalence(const BicatHom& F);

struct Normalization {
  BicatHom normal;
  // theta[A*n+B][f] : G f -> F f, invertible
  std::vector<std::vector<int>> witness;
};
Normalization normalize_homomorphism(const BicatHom& F);

std::vector<BicatHom> enumerate_normal_homs(const BicatPtr& A, const BicatPtr& B, const Caps& caps = {});
std::vector<Icon> enumerate_icons(const BicatHom& F, const BicatHom& G, const Caps& caps = {});

bool homs_equal(const BicatHom& F, const BicatHom& G);
bool icons_equal(const Icon& a, const Icon& b);
// Table equality of bicategories, including every cell id.
Certificate bicats_equal(const FinBicat& A, const FinBicat& B);

// All functors C -> D in lexicographic order of their tables. fixed[a] >= 0
// pins the image of object a.
std::vector<Functor> enumerate_functors(const CatPtr& C, const CatPtr& D, const std::vector<int>& fixed,
                                        std::int64_t budget);

Json bicat_to_json(const FinBicat& B);
BicatPtr bicat_from_json(const Json& j);
Json hom_to_json(const BicatHom& F);
BicatHom hom_from_json(const Json& j, const BicatPtr& src, const BicatPtr& tgt);
Json icon_to_json(const Icon& a);
Icon icon_from_json(const Json& j, const BicatHom& F, const BicatHom& G);

}  // namespace nervekit
