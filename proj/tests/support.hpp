#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nervekit/bicatify.hpp"
#include "nervekit/fixtures.hpp"
#include "nervekit/pstrans.hpp"

namespace testkit {

using namespace nervekit;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ull + 1); }

inline int pick(std::mt19937_64& g, int n) { return std::uniform_int_distribution<int>(0, n - 1)(g); }

// Preorder on n objects; le[a][b] is closed up reflexively and transitively.
inline CatPtr preorder(int n, std::vector<std::vector<bool>> le) {
  for (int a = 0; a < n; ++a) le[a][a] = true;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (le[a][k] && le[k][b]) le[a][b] = true;
  FinCat::Spec s;
  std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a) s.objects.push_back("p" + std::to_string(a));
  s.identity.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b]) {
        idx[a][b] = static_cast<int>(s.dom.size());
        s.morphism_ids.push_back("p" + std::to_string(a) + "<p" + std::to_string(b));
        s.dom.push_back(a);
        s.cod.push_back(b);
        if (a == b) s.identity[a] = idx[a][b];
      }
  auto dom = s.dom, cod = s.cod;
  s.compose = [idx, dom, cod](int g, int f) { return cod[f] == dom[g] ? idx[dom[f]][cod[g]] : -1; };
  return make_category(std::move(s));
}

inline CatPtr random_preorder(std::mt19937_64& g, int max_objects) {
  int n = 1 + pick(g, max_objects);
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) le[a][b] = pick(g, 3) == 0;
  return preorder(n, le);
}

// One-object category of the cyclic group of order n.
inline CatPtr cyclic_group(int n) {
  FinCat::Spec s;
  s.objects = {"*"};
  for (int k = 0; k < n; ++k) {
    s.morphism_ids.push_back("z" + std::to_string(k));
    s.dom.push_back(0);
    s.cod.push_back(0);
  }
  s.identity = {0};
  s.compose = [n](int g, int f) { return (g + f) % n; };
  return make_category(std::move(s));
}

// Categories with at most 3 objects and 8 morphisms.
inline std::vector<CatPtr> small_pool() {
  std::vector<CatPtr> pool{terminal_category(), empty_category(), ordinal_category(1), ordinal_category(2),
                           iso_category(),      disc_category(2),  cyclic_group(2),     cyclic_group(3)};
  pool.push_back(preorder(3, {{false, true, true}, {false, false, false}, {false, false, false}}));
  pool.push_back(preorder(3, {{false, true, false}, {true, false, false}, {false, false, false}}));
  pool.push_back(preorder(2, {{false, true}, {true, false}}));
  return pool;
}

// Some natural isomorphism F => G, found by trying every family of isos.
inline bool natural_iso_exists(const Functor& F, const Functor& G) {
  const FinCat& C = *F.src;
  const FinCat& D = *F.tgt;
  int n = C.num_objects();
  std::vector<std::vector<int>> cand(n);
  for (int a = 0; a < n; ++a) {
    for (int m : D.hom(F.obj[a], G.obj[a]))
      if (D.is_iso(m)) cand[a].push_back(m);
    if (cand[a].empty()) return false;
  }
  std::vector<int> choice(n, 0), comp(n);
  while (true) {
    for (int a = 0; a < n; ++a) comp[a] = cand[a][choice[a]];
    bool natural = true;
    for (int m = 0; m < C.num_morphisms() && natural; ++m)
      natural = D.compose(G.mor[m], comp[C.dom(m)]) == D.compose(comp[C.cod(m)], F.mor[m]);
    if (natural) return true;
    int a = 0;
    while (a < n && ++choice[a] == static_cast<int>(cand[a].size())) choice[a++] = 0;
    if (a == n) return false;
  }
}

// Equivalence by searching for a pseudo-inverse and both natural isos.
inline bool brute_force_equivalence(const Functor& F) {
  for (const Functor& G : enumerate_functors(F.tgt, F.src, std::vector<int>(F.tgt->num_objects(), -1), 1 << 20)) {
    if (!natural_iso_exists(identity_functor(F.src), compose_functors(G, F))) continue;
    if (natural_iso_exists(identity_functor(F.tgt), compose_functors(F, G))) return true;
  }
  return false;
}

// Arrow category: objects are morphisms of C, morphisms (u, v) : f -> g with v f = g u.
inline CatPtr arrow_category(const CatPtr& Cp) {
  const FinCat& C = *Cp;
  FinCat::Spec s;
  std::vector<std::array<int, 4>> sq;  // f, g, u, v
  for (int f = 0; f < C.num_morphisms(); ++f) s.objects.push_back(C.morphism_id(f));
  s.identity.assign(C.num_morphisms(), -1);
  for (int f = 0; f < C.num_morphisms(); ++f)
    for (int g = 0; g < C.num_morphisms(); ++g)
      for (int u : C.hom(C.dom(f), C.dom(g)))
        for (int v : C.hom(C.cod(f), C.cod(g)))
          if (C.compose(v, f) == C.compose(g, u)) {
            if (f == g && C.is_identity(u) && C.is_identity(v)) s.identity[f] = static_cast<int>(sq.size());
            s.morphism_ids.push_back("(" + C.morphism_id(u) + "," + C.morphism_id(v) + "):" + C.morphism_id(f) +
                                     "->" + C.morphism_id(g));
            s.dom.push_back(f);
            s.cod.push_back(g);
            sq.push_back({f, g, u, v});
          }
  s.compose = [sq, Cp](int b, int a) {
    if (sq[a][1] != sq[b][0]) return -1;
    int u = Cp->compose(sq[b][2], sq[a][2]), v = Cp->compose(sq[b][3], sq[a][3]);
    for (int k = 0; k < static_cast<int>(sq.size()); ++k)
      if (sq[k][0] == sq[a][0] && sq[k][1] == sq[b][1] && sq[k][2] == u && sq[k][3] == v) return k;
    return -1;
  };
  return make_category(std::move(s));
}

inline Functor codomain_functor(const CatPtr& arrows, const CatPtr& C) {
  Functor F{arrows, C, {}, {}};
  for (int f = 0; f < arrows->num_objects(); ++f) F.obj.push_back(C->cod(C->find_morphism(arrows->object_id(f))));
  for (int m = 0; m < arrows->num_morphisms(); ++m) {
    const std::string& id = arrows->morphism_id(m);
    std::string v = id.substr(id.find(',') + 1, id.find("):") - id.find(',') - 1);
    F.mor.push_back(C->find_morphism(v));
  }
  return F;
}

inline Functor discrete_functor(const CatPtr& src, const CatPtr& tgt, const std::vector<int>& obj) {
  Functor F{src, tgt, obj, {}};
  for (int a = 0; a < src->num_objects(); ++a) F.mor.push_back(tgt->identity(obj[a]));
  return F;
}

// Classical nerve with every level a discrete category.
inline SimpPtr discrete_nerve(const CatPtr& C, int L) {
  TruncSimpSet S = nerve_of_category(*C, L);
  auto X = std::make_shared<TruncSimpCat>();
  X->L = L;
  for (int n = 0; n <= L; ++n) {
    std::vector<std::string> ids;
    for (const auto& chain : S.levels[n]) {
      if (n == 0) {
        ids.push_back(C->object_id(chain[0]));
        continue;
      }
      std::string id;
      for (int m : chain) id += (id.empty() ? "" : ";") + C->morphism_id(m);
      ids.push_back(id);
    }
    X->level.push_back(discrete_category(ids));
  }
  X->face.resize(L + 1);
  X->degen.resize(L + 1);
  for (int n = 1; n <= L; ++n)
    for (int i = 0; i <= n; ++i) X->face[n].push_back(discrete_functor(X->level[n], X->level[n - 1], S.face[n][i]));
  for (int n = 0; n < L; ++n)
    for (int i = 0; i <= n; ++i) X->degen[n].push_back(discrete_functor(X->level[n], X->level[n + 1], S.degen[n][i]));
  return X;
}

// Constant simplicial object on C.
inline SimpPtr constant_simp(const CatPtr& C, int L) {
  auto X = std::make_shared<TruncSimpCat>();
  X->L = L;
  X->level.assign(L + 1, C);
  X->face.resize(L + 1);
  X->degen.resize(L + 1);
  for (int n = 1; n <= L; ++n) X->face[n].assign(n + 1, identity_functor(C));
  for (int n = 0; n < L; ++n) X->degen[n].assign(n + 1, identity_functor(C));
  return X;
}

// COC2 sign data: 1-cell e = 0, g = 1; 2-cell local index 2*cell + (sign < 0).
inline int sign_of(int local) { return local % 2 ? -1 : 1; }
inline int coc2_omega(int h, int g, int f) { return h == 1 && g == 1 && f == 1 ? -1 : 1; }

inline BicatHom coc2_hom(const BicatPtr& B, const std::array<int, 4>& phi_signs) {
  BicatHom F;
  F.src = F.tgt = B;
  F.obj = {0};
  F.homf = {identity_functor(B->hom_ptr(0, 0))};
  std::vector<int> phi;
  for (int g = 0; g < 2; ++g)
    for (int f = 0; f < 2; ++f) phi.push_back(2 * (g ^ f) + (phi_signs[g * 2 + f] < 0));
  F.phi = {phi};
  return F;
}

inline Icon coc2_icon(const BicatHom& F, const BicatHom& G, int sign_e, int sign_g) {
  return Icon{F, G, {{sign_e < 0 ? 1 : 0, sign_g < 0 ? 3 : 2}}};
}

}  // namespace testkit
