#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nervekit/core.hpp"

namespace nervekit {

// Finite category with indexed objects and morphisms. The position of an id
// in its list is its rank in the global order used by every choice.
class FinCat {
 public:
  using ComposeFn = std::function<int(int g, int f)>;
  using IdFn = std::function<std::string(int)>;

  struct Spec {
    std::vector<std::string> objects;
    std::vector<std::string> morphism_ids;  // may be empty when id_fn is set
    IdFn id_fn;
    std::vector<int> dom, cod;
    std::vector<int> identity;
    ComposeFn compose;                       // -1 when undefined
    std::vector<std::array<int, 3>> stray;   // triples given for non-composable pairs
  };

  // Tables up to this many composable pairs are materialized eagerly.
  static constexpr std::int64_t kDenseLimit = 1 << 22;

  explicit FinCat(Spec spec);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(dom_.size()); }
  const std::string& object_id(int a) const { return objects_[a]; }
  std::string morphism_id(int m) const;
  int dom(int m) const { return dom_[m]; }
  int cod(int m) const { return cod_[m]; }
  int identity(int a) const { return identity_[a]; }
  bool is_identity(int m) const { return m >= 0 && identity_[dom_[m]] == m; }

  // Composite g∘f, or -1 when cod f != dom g or the table has no entry.
  int compose(int g, int f) const;

  std::span<const int> hom(int a, int b) const;
  std::span<const int> out(int a) const;
  std::span<const int> in(int a) const;
  // Position of m inside hom(dom m, cod m).
  int hom_position(int m) const { return hom_pos_[m]; }

  int find_object(const std::string& id) const;
  int find_morphism(const std::string& id) const;

  // Two-sided inverse of m, or -1.
  int inverse(int m) const;
  bool is_iso(int m) const { return inverse(m) >= 0; }

  std::int64_t composable_pairs() const { return composable_pairs_; }
  bool dense() const { return !table_.empty() || composable_pairs_ == 0; }
  const std::vector<std::array<int, 3>>& stray_triples() const { return stray_; }

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> mor_ids_;
  IdFn id_fn_;
  std::vector<int> dom_, cod_, identity_;
  ComposeFn fn_;
  std::vector<std::array<int, 3>> stray_;

  std::vector<int> by_dom_, dom_start_, by_cod_, cod_start_;
  std::vector<int> out_pos_, hom_pos_;
  std::vector<std::int64_t> table_off_;
  std::vector<int> table_;
  std::int64_t composable_pairs_ = 0;

  mutable std::unique_ptr<std::unordered_map<std::string, int>> obj_index_, mor_index_;
};

using CatPtr = std::shared_ptr<const FinCat>;

struct Functor {
  CatPtr src, tgt;
  std::vector<int> obj, mor;
};

// Components live in the target category: comp[a] : F a -> G a.
struct NatTrans {
  Functor F, G;
  std::vector<int> comp;
};

struct EquivalenceReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool surjective_on_objects = false;
  Json witness;
  bool is_equivalence() const { return fully_faithful && essentially_surjective; }
  bool is_surjective_equivalence() const { return is_equivalence() && surjective_on_objects; }
  Json to_json() const;
};

struct Pullback {
  CatPtr P;
  Functor p1, p2;
};

// inverse is a pseudo-inverse functor; unit : 1 => inverse∘F on the source,
// counit : F∘inverse => 1 on the target. witness[b] : F(inverse b) -> b.
struct PseudoInverse {
  Functor inverse;
  NatTrans unit, counit;
  bool strict_section = false;
  std::vector<int> witness;
};

struct TruncSimpSet {
  int L = 0;
  // levels[n][x] is a composable chain of n morphisms (first applied first);
  // level 0 elements are single objects stored as one-element vectors.
  std::vector<std::vector<std::vector<int>>> levels;
  std::vector<std::vector<std::vector<int>>> face;  // face[n][i][x]
  std::vector<std::vector<std::vector<int>>> degen; // degen[n][i][x]
  bool segal_bijective = false;
  Json segal_witness;
};

// --- construction helpers ---
CatPtr make_category(FinCat::Spec spec);
CatPtr terminal_category();
CatPtr empty_category();
CatPtr discrete_category(const std::vector<std::string>& ids);
Functor identity_functor(const CatPtr& C);
Functor compose_functors(const Functor& G, const Functor& F);
NatTrans identity_nat(const Functor& F);
bool functors_equal(const Functor& F, const Functor& G);

// --- validation ---
Certificate validate_category(const FinCat& C);
Certificate validate_functor(const Functor& F);
Certificate validate_nat(const NatTrans& a);

// --- operations ---
Pullback pullback(const Functor& F, const Functor& G);
bool is_discrete(const FinCat& C);
CatPtr iterated_fiber(const CatPtr& X1, const Functor& d1, const Functor& d0, int n);
EquivalenceReport equivalence_report(const Functor& F);
Certificate is_discrete_isofibration(const Functor& p);
PseudoInverse pseudo_inverse(const Functor& F, const EquivalenceReport& report);
TruncSimpSet nerve_of_category(const FinCat& C, int L);
// Isomorphism of categories by backtracking over object bijections.
std::optional<Functor> find_isomorphism(const CatPtr& C, const CatPtr& D);

// --- JSON ---
Json category_to_json(const FinCat& C);
CatPtr category_from_json(const Json& j);
Json functor_to_json(const Functor& F);
Functor functor_from_json(const Json& j, const CatPtr& src, const CatPtr& tgt);
Json nat_to_json(const NatTrans& a);
NatTrans nat_from_json(const Json& j, const Functor& F, const Functor& G);

}  // namespace nervekit
