#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nervekit/fincat.hpp"

namespace nervekit {

struct FamilyLevel;

// Simplicial object in finite categories truncated at level L <= 4.
struct TruncSimpCat {
  int L = 0;
  std::vector<CatPtr> level;                 // X_0 .. X_L
  std::vector<std::vector<Functor>> face;    // face[n][i] : X_n -> X_{n-1}, 1 <= n <= L
  std::vector<std::vector<Functor>> degen;   // degen[n][i] : X_n -> X_{n+1}, 0 <= n < L
  bool nerve = false;                        // produced by two_nerve
  int top_cosk = -1;                         // k when X_L was built as (Cosk_k X)_L
  std::shared_ptr<const FamilyLevel> top_family;

  const FinCat& X(int n) const { return *level[n]; }
  const Functor& d(int n, int i) const { return face[n][i]; }
  const Functor& s(int n, int i) const { return degen[n][i]; }
};

using SimpPtr = std::shared_ptr<const TruncSimpCat>;

// Monotone map [m] -> [n] given by its values.
using Operator = std::vector<int>;
Operator face_operator(int n, int i);        // [n-1] -> [n], skips i
Operator degeneracy_operator(int n, int i);  // [n+1] -> [n], repeats i
Operator compose_operators(const Operator& outer, const Operator& inner);
Operator subset_operator(unsigned mask);     // inclusion of the set bits
// theta^* applied to an object or morphism of X_n; theta : [m] -> [n].
int act_object(const TruncSimpCat& X, int n, const Operator& theta, int x);
int act_morphism(const TruncSimpCat& X, int n, const Operator& theta, int m);

// Category whose morphisms are (dom, cod, tuple) rows with componentwise
// composition. Rows sharing (dom, cod) must be distinct; lookup is by binary
// search, so large levels never need a dense table.
class TupleCategory {
 public:
  using ComponentCompose = std::function<int(int pos, int dom_obj, int g, int f)>;
  struct Input {
    std::vector<std::string> objects;
    std::vector<int> dom, cod, rows;   // rows: width entries per morphism
    int width = 0;
    ComponentCompose compose;
    std::vector<std::vector<int>> identity_rows;  // per object
    FinCat::IdFn id_fn;
  };
  static std::shared_ptr<const TupleCategory> build(Input in);

  const CatPtr& cat() const { return cat_; }
  const int* row(int m) const { return rows_.data() + static_cast<std::size_t>(m) * width_; }
  int width() const { return width_; }
  int find(int dom, int cod, const int* row) const;

 private:
  int width_ = 0;
  std::vector<int> rows_, dom_, cod_;
  std::vector<int> order_;              // morphisms sorted by (dom, cod, row)
  std::vector<int> dom_start_;
  CatPtr cat_;
};
using TupleCatPtr = std::shared_ptr<const TupleCategory>;

// Compatible families over the (k+1)-element subsets of [n]: (Cosk_k X)_n.
struct FamilyLevel {
  int k = 0, n = 0;
  std::vector<unsigned> subsets;           // lexicographic
  std::vector<std::vector<int>> objects;   // object families
  std::map<std::vector<int>, int> object_index;
  TupleCatPtr tc;
  const FinCat& cat() const { return *tc->cat(); }
  int find_object(const std::vector<int>& fam) const;
  int find_morphism(int dom, int cod, const std::vector<int>& fam) const;
};

// families of X_k cells over [n]; levels of X up to k must exist.
std::shared_ptr<const FamilyLevel> family_level(const TruncSimpCat& X, int k, int n, const Caps& caps = {});

// Appends level n = X.L + 1 as (Cosk_k X)_n together with its faces and degeneracies.
TruncSimpCat extend_by_coskeleton(TruncSimpCat X, int k, const Caps& caps = {});
TruncSimpCat truncate(const TruncSimpCat& X, int L);

struct MatchingObject {
  std::shared_ptr<const FamilyLevel> limit;
  Functor c;  // X_n -> limit
};

struct SimpMap {
  SimpPtr src, tgt;
  std::vector<Functor> f;
};

// Isos live in the target: fd[n][i][x] : d_i(f_n x) -> f_{n-1}(d_i x),
// fs[n][i][x] : s_i(f_n x) -> f_{n+1}(s_i x).
struct PseudoSimpMap {
  SimpPtr src, tgt;
  std::vector<Functor> f;
  std::vector<std::vector<std::vector<int>>> fd, fs;
  bool normal = false;
};

// m[n][x] : f_n x -> g_n x in the target's level n.
struct Modification {
  std::vector<std::vector<int>> comp;
};

Certificate validate_simplicial(const TruncSimpCat& X);
Certificate validate_simp_map(const SimpMap& f);
Certificate validate_pseudo_map(const PseudoSimpMap& f);
Certificate validate_modification(const PseudoSimpMap& f, const PseudoSimpMap& g, const Modification& m);
bool modification_invertible(const PseudoSimpMap& f, const Modification& m);

SimpMap identity_simp_map(const SimpPtr& X);
SimpMap compose_simp_maps(const SimpMap& g, const SimpMap& f);
bool simp_maps_equal(const SimpMap& f, const SimpMap& g);
PseudoSimpMap as_pseudo(const SimpMap& f);
// Whole-table comparison, isos included.
bool pseudo_maps_equal(const PseudoSimpMap& f, const PseudoSimpMap& g);
// Strict when every iso is an identity.
bool is_strict(const PseudoSimpMap& f);
SimpMap strict_part(const PseudoSimpMap& f);

// The iso attached to an arbitrary composite of generators, by pasting.
// ops are applied left to right; each is {kind ('d' or 's'), index}.
int pasted_iso(const PseudoSimpMap& f, int n, const std::vector<std::pair<char, int>>& ops, int x);

// Segal functor X_n -> X_1 x_{X_0} ... x_{X_0} X_1 (n factors).
struct SegalMap {
  CatPtr target;
  Functor S;
};
SegalMap segal_map(const TruncSimpCat& X, int n);

MatchingObject cosk_matching(const TruncSimpCat& X, int k, int n, const Caps& caps = {});
Certificate is_coskeletal(const TruncSimpCat& X, int k, const Caps& caps = {});
Certificate check_tamsamani(const TruncSimpCat& X);
Certificate check_simpson(const TruncSimpCat& X);
bool is_pointwise_equivalence(const SimpMap& f);
// Levelwise isomorphism of categories.
bool is_levelwise_bijective(const SimpMap& f);

// Lookup of level-n cells by their tuple of faces (n >= 1).
class FaceIndex {
 public:
  FaceIndex(const TruncSimpCat& X, int n);
  // -1 when absent; throws InternalError when faces do not determine cells.
  int object(const std::vector<int>& faces) const;
  int morphism(const std::vector<int>& faces) const;
  bool injective() const { return injective_; }

 private:
  int n_ = 0;
  std::shared_ptr<const FamilyLevel> fam_;
  CatPtr lower_;
  std::map<std::vector<int>, int> obj_, mor_;
  bool injective_ = true;
};

// Level n of a map determined by its faces from the level below; nullopt when
// some face tuple has no filler in Y.
std::optional<Functor> induced_by_faces(const TruncSimpCat& X, const TruncSimpCat& Y, const Functor& below, int n);

// All strict maps X -> Y, and all 2-cells between two strict maps.
std::vector<SimpMap> enumerate_simp_maps(const SimpPtr& X, const SimpPtr& Y, const Caps& caps = {});
std::vector<Modification> enumerate_simp_transformations(const SimpMap& f, const SimpMap& g, const Caps& caps = {});
Certificate validate_simp_transformation(const SimpMap& f, const SimpMap& g, const Modification& m);

Json simp_to_json(const TruncSimpCat& X);
TruncSimpCat simp_from_json(const Json& j, const Caps& caps = {});
Json simp_map_to_json(const SimpMap& f);
SimpMap simp_map_from_json(const Json& j, const SimpPtr& src, const SimpPtr& tgt);
Json pseudo_map_to_json(const PseudoSimpMap& f);
PseudoSimpMap pseudo_map_from_json(const Json& j, const SimpPtr& src, const SimpPtr& tgt);
Json modification_to_json(const PseudoSimpMap& f, const Modification& m);

}  // namespace nervekit
