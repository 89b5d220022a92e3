#include "nervekit/fincat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "json_util.hpp"

namespace nervekit {

namespace {

std::int64_t pair_key(int a, int b) { return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b); }

}  // namespace

Caps Caps::from_json(const Json& j) {
  Caps c;
  if (!j.is_object()) throw InputError("caps must be a JSON object");
  for (auto& [k, v] : j.items()) {
    if (!v.is_number_integer()) throw InputError("cap '" + k + "' must be an integer");
    if (k == "max_objects") c.max_objects = v.get<int>();
    else if (k == "max_hom_morphisms") c.max_hom_morphisms = v.get<int>();
    else if (k == "max_level_objects") c.max_level_objects = v.get<std::int64_t>();
    else if (k == "max_level_morphisms") c.max_level_morphisms = v.get<std::int64_t>();
    else if (k == "max_search") c.max_search = v.get<std::int64_t>();
    else throw InputError("unknown cap '" + k + "'");
  }
  return c;
}

Json Caps::to_json() const {
  return Json{{"max_objects", max_objects},
              {"max_hom_morphisms", max_hom_morphisms},
              {"max_level_objects", max_level_objects},
              {"max_level_morphisms", max_level_morphisms},
              {"max_search", max_search}};
}

// ---------------------------------------------------------------- FinCat

FinCat::FinCat(Spec spec)
    : objects_(std::move(spec.objects)),
      mor_ids_(std::move(spec.morphism_ids)),
      id_fn_(std::move(spec.id_fn)),
      dom_(std::move(spec.dom)),
      cod_(std::move(spec.cod)),
      identity_(std::move(spec.identity)),
      fn_(std::move(spec.compose)),
      stray_(std::move(spec.stray)) {
  const int n = num_objects();
  const int m = num_morphisms();
  if (static_cast<int>(cod_.size()) != m || static_cast<int>(identity_.size()) != n ||
      (!mor_ids_.empty() && static_cast<int>(mor_ids_.size()) != m))
    throw InputError("category tables have inconsistent sizes");
  for (int i = 0; i < m; ++i)
    if (dom_[i] < 0 || dom_[i] >= n || cod_[i] < 0 || cod_[i] >= n)
      throw InputError("morphism endpoint out of range");
  for (int a = 0; a < n; ++a)
    if (identity_[a] < 0 || identity_[a] >= m) throw InputError("identity out of range");

  by_dom_.resize(m);
  std::iota(by_dom_.begin(), by_dom_.end(), 0);
  std::stable_sort(by_dom_.begin(), by_dom_.end(), [&](int x, int y) {
    return std::tie(dom_[x], cod_[x]) < std::tie(dom_[y], cod_[y]);
  });
  by_cod_ = by_dom_;
  std::stable_sort(by_cod_.begin(), by_cod_.end(), [&](int x, int y) {
    return std::tie(cod_[x], dom_[x]) < std::tie(cod_[y], dom_[y]);
  });
  dom_start_.assign(n + 1, 0);
  cod_start_.assign(n + 1, 0);
  for (int i = 0; i < m; ++i) {
    ++dom_start_[dom_[i] + 1];
    ++cod_start_[cod_[i] + 1];
  }
  for (int a = 0; a < n; ++a) {
    dom_start_[a + 1] += dom_start_[a];
    cod_start_[a + 1] += cod_start_[a];
  }
  out_pos_.assign(m, 0);
  hom_pos_.assign(m, 0);
  for (int k = 0; k < m; ++k) {
    int x = by_dom_[k];
    out_pos_[x] = k - dom_start_[dom_[x]];
    hom_pos_[x] = (k > dom_start_[dom_[x]] && cod_[by_dom_[k - 1]] == cod_[x]) ? hom_pos_[by_dom_[k - 1]] + 1 : 0;
  }
  for (int f = 0; f < m; ++f) composable_pairs_ += dom_start_[cod_[f] + 1] - dom_start_[cod_[f]];
  if (fn_ && composable_pairs_ <= kDenseLimit) {
    table_off_.assign(m + 1, 0);
    for (int f = 0; f < m; ++f)
      table_off_[f + 1] = table_off_[f] + (dom_start_[cod_[f] + 1] - dom_start_[cod_[f]]);
    table_.assign(static_cast<std::size_t>(composable_pairs_), -1);
    for (int f = 0; f < m; ++f)
      for (int g : out(cod_[f])) table_[table_off_[f] + out_pos_[g]] = fn_(g, f);
    if (composable_pairs_ > 0) fn_ = nullptr;
  }
}

std::string FinCat::morphism_id(int m) const {
  if (!mor_ids_.empty()) return mor_ids_[m];
  if (id_fn_) return id_fn_(m);
  return "m" + std::to_string(m);
}

int FinCat::compose(int g, int f) const {
  if (g < 0 || f < 0 || dom_[g] != cod_[f]) return -1;
  if (!table_.empty()) return table_[table_off_[f] + out_pos_[g]];
  return fn_ ? fn_(g, f) : -1;
}

std::span<const int> FinCat::out(int a) const {
  return {by_dom_.data() + dom_start_[a], static_cast<std::size_t>(dom_start_[a + 1] - dom_start_[a])};
}

std::span<const int> FinCat::in(int a) const {
  return {by_cod_.data() + cod_start_[a], static_cast<std::size_t>(cod_start_[a + 1] - cod_start_[a])};
}

std::span<const int> FinCat::hom(int a, int b) const {
  auto first = by_dom_.begin() + dom_start_[a];
  auto last = by_dom_.begin() + dom_start_[a + 1];
  auto lo = std::lower_bound(first, last, b, [&](int x, int v) { return cod_[x] < v; });
  auto hi = std::upper_bound(lo, last, b, [&](int v, int x) { return v < cod_[x]; });
  return {by_dom_.data() + (lo - by_dom_.begin()), static_cast<std::size_t>(hi - lo)};
}

int FinCat::find_object(const std::string& id) const {
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (!obj_index_) {
      obj_index_ = std::make_unique<std::unordered_map<std::string, int>>();
      for (int a = 0; a < num_objects(); ++a) obj_index_->emplace(objects_[a], a);
    }
  }
  auto it = obj_index_->find(id);
  return it == obj_index_->end() ? -1 : it->second;
}

int FinCat::find_morphism(const std::string& id) const {
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (!mor_index_) {
      mor_index_ = std::make_unique<std::unordered_map<std::string, int>>();
      for (int x = 0; x < num_morphisms(); ++x) mor_index_->emplace(morphism_id(x), x);
    }
  }
  auto it = mor_index_->find(id);
  return it == mor_index_->end() ? -1 : it->second;
}

int FinCat::inverse(int m) const {
  const int a = dom_[m], b = cod_[m];
  for (int g : hom(b, a))
    if (compose(g, m) == identity_[a] && compose(m, g) == identity_[b]) return g;
  return -1;
}

Json EquivalenceReport::to_json() const {
  return Json{{"fully_faithful", fully_faithful},
              {"essentially_surjective", essentially_surjective},
              {"surjective_on_objects", surjective_on_objects},
              {"witness", witness}};
}

// ---------------------------------------------------------------- helpers

CatPtr make_category(FinCat::Spec spec) { return std::make_shared<const FinCat>(std::move(spec)); }

CatPtr discrete_category(const std::vector<std::string>& ids) {
  FinCat::Spec s;
  s.objects = ids;
  for (int a = 0; a < static_cast<int>(ids.size()); ++a) {
    s.morphism_ids.push_back("1_" + ids[a]);
    s.dom.push_back(a);
    s.cod.push_back(a);
    s.identity.push_back(a);
  }
  s.compose = [](int g, int f) { return g == f ? g : -1; };
  return make_category(std::move(s));
}

CatPtr terminal_category() { return discrete_category({"*"}); }
CatPtr empty_category() { return discrete_category({}); }

Functor identity_functor(const CatPtr& C) {
  Functor F{C, C, std::vector<int>(C->num_objects()), std::vector<int>(C->num_morphisms())};
  std::iota(F.obj.begin(), F.obj.end(), 0);
  std::iota(F.mor.begin(), F.mor.end(), 0);
  return F;
}

Functor compose_functors(const Functor& G, const Functor& F) {
  Functor H{F.src, G.tgt, std::vector<int>(F.obj.size()), std::vector<int>(F.mor.size())};
  for (std::size_t a = 0; a < F.obj.size(); ++a) H.obj[a] = G.obj[F.obj[a]];
  for (std::size_t m = 0; m < F.mor.size(); ++m) H.mor[m] = G.mor[F.mor[m]];
  return H;
}

NatTrans identity_nat(const Functor& F) {
  NatTrans a{F, F, std::vector<int>(F.obj.size())};
  for (std::size_t x = 0; x < F.obj.size(); ++x) a.comp[x] = F.tgt->identity(F.obj[x]);
  return a;
}

bool functors_equal(const Functor& F, const Functor& G) { return F.obj == G.obj && F.mor == G.mor; }

// ---------------------------------------------------------------- validation

Certificate validate_category(const FinCat& C) {
  auto mid = [&](int m) { return m < 0 ? std::string("<undefined>") : C.morphism_id(m); };
  for (int a = 0; a < C.num_objects(); ++a) {
    int i = C.identity(a);
    if (C.dom(i) != a || C.cod(i) != a)
      return Certificate::fail("identity-typed", Json{{"object", C.object_id(a)}, {"identity", mid(i)}});
  }
  if (!C.stray_triples().empty()) {
    auto t = C.stray_triples().front();
    return Certificate::fail("compose-domain", Json{{"g", mid(t[0])}, {"f", mid(t[1])}, {"gf", mid(t[2])}});
  }
  const int m = C.num_morphisms();
  for (int f = 0; f < m; ++f)
    for (int g : C.out(C.cod(f))) {
      int gf = C.compose(g, f);
      if (gf < 0) return Certificate::fail("compose-total", Json{{"g", mid(g)}, {"f", mid(f)}});
      if (C.dom(gf) != C.dom(f) || C.cod(gf) != C.cod(g))
        return Certificate::fail("compose-typed", Json{{"g", mid(g)}, {"f", mid(f)}, {"gf", mid(gf)}});
    }
  for (int f = 0; f < m; ++f) {
    if (C.compose(C.identity(C.cod(f)), f) != f)
      return Certificate::fail("left-unit", Json{{"f", mid(f)}, {"got", mid(C.compose(C.identity(C.cod(f)), f))}});
    if (C.compose(f, C.identity(C.dom(f))) != f)
      return Certificate::fail("right-unit", Json{{"f", mid(f)}, {"got", mid(C.compose(f, C.identity(C.dom(f))))}});
  }
  for (int f = 0; f < m; ++f)
    for (int g : C.out(C.cod(f))) {
      int gf = C.compose(g, f);
      for (int h : C.out(C.cod(g))) {
        int l = C.compose(h, gf), r = C.compose(C.compose(h, g), f);
        if (l != r)
          return Certificate::fail("associativity", Json{{"h", mid(h)}, {"g", mid(g)}, {"f", mid(f)},
                                                         {"h(gf)", mid(l)}, {"(hg)f", mid(r)}});
      }
    }
  return Certificate::ok();
}

Certificate validate_functor(const Functor& F) {
  if (!F.src || !F.tgt) return Certificate::fail("functor-shape", "missing source or target");
  const FinCat& A = *F.src;
  const FinCat& B = *F.tgt;
  if (static_cast<int>(F.obj.size()) != A.num_objects() || static_cast<int>(F.mor.size()) != A.num_morphisms())
    return Certificate::fail("functor-shape", "table sizes do not match the source");
  for (int a = 0; a < A.num_objects(); ++a)
    if (F.obj[a] < 0 || F.obj[a] >= B.num_objects())
      return Certificate::fail("functor-shape", Json{{"object", A.object_id(a)}});
  for (int m = 0; m < A.num_morphisms(); ++m) {
    int fm = F.mor[m];
    if (fm < 0 || fm >= B.num_morphisms()) return Certificate::fail("functor-shape", Json{{"morphism", A.morphism_id(m)}});
    if (B.dom(fm) != F.obj[A.dom(m)] || B.cod(fm) != F.obj[A.cod(m)])
      return Certificate::fail("functor-dom-cod", Json{{"morphism", A.morphism_id(m)}, {"image", B.morphism_id(fm)}});
  }
  for (int a = 0; a < A.num_objects(); ++a)
    if (F.mor[A.identity(a)] != B.identity(F.obj[a]))
      return Certificate::fail("functor-identity", Json{{"object", A.object_id(a)}});
  for (int f = 0; f < A.num_morphisms(); ++f)
    for (int g : A.out(A.cod(f)))
      if (F.mor[A.compose(g, f)] != B.compose(F.mor[g], F.mor[f]))
        return Certificate::fail("functor-composition", Json{{"g", A.morphism_id(g)}, {"f", A.morphism_id(f)}});
  return Certificate::ok();
}

Certificate validate_nat(const NatTrans& a) {
  const FinCat& A = *a.F.src;
  const FinCat& B = *a.F.tgt;
  if (a.comp.size() != a.F.obj.size()) return Certificate::fail("nat-shape", "component count");
  for (int x = 0; x < A.num_objects(); ++x) {
    int c = a.comp[x];
    if (c < 0 || c >= B.num_morphisms() || B.dom(c) != a.F.obj[x] || B.cod(c) != a.G.obj[x])
      return Certificate::fail("nat-typed", Json{{"object", A.object_id(x)}});
  }
  for (int m = 0; m < A.num_morphisms(); ++m) {
    int l = B.compose(a.G.mor[m], a.comp[A.dom(m)]);
    int r = B.compose(a.comp[A.cod(m)], a.F.mor[m]);
    if (l != r) return Certificate::fail("naturality", Json{{"morphism", A.morphism_id(m)}});
  }
  return Certificate::ok();
}

// ---------------------------------------------------------------- pullback

Pullback pullback(const Functor& F, const Functor& G) {
  if (F.tgt != G.tgt) throw InputError("pullback: functors have different targets");
  const FinCat& A = *F.src;
  const FinCat& B = *G.src;
  auto P = std::make_shared<std::vector<std::pair<int, int>>>();
  std::unordered_map<std::int64_t, int> obj_idx;
  FinCat::Spec s;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      if (F.obj[a] == G.obj[b]) {
        obj_idx[pair_key(a, b)] = static_cast<int>(s.objects.size());
        s.objects.push_back("(" + A.object_id(a) + "," + B.object_id(b) + ")");
        P->push_back({a, b});
      }
  std::unordered_map<int, std::vector<int>> by_image;
  for (int v = 0; v < B.num_morphisms(); ++v) by_image[G.mor[v]].push_back(v);
  std::vector<std::pair<int, int>> mors;
  auto mor_idx = std::make_shared<std::unordered_map<std::int64_t, int>>();
  for (int u = 0; u < A.num_morphisms(); ++u) {
    auto it = by_image.find(F.mor[u]);
    if (it == by_image.end()) continue;
    for (int v : it->second) {
      (*mor_idx)[pair_key(u, v)] = static_cast<int>(mors.size());
      mors.push_back({u, v});
      s.morphism_ids.push_back("(" + A.morphism_id(u) + "," + B.morphism_id(v) + ")");
      s.dom.push_back(obj_idx.at(pair_key(A.dom(u), B.dom(v))));
      s.cod.push_back(obj_idx.at(pair_key(A.cod(u), B.cod(v))));
    }
  }
  for (auto [a, b] : *P) s.identity.push_back(mor_idx->at(pair_key(A.identity(a), B.identity(b))));
  auto mv = std::make_shared<std::vector<std::pair<int, int>>>(mors);
  CatPtr Ap = F.src, Bp = G.src;
  s.compose = [Ap, Bp, mv, mor_idx](int g, int f) {
    auto [gu, gv] = (*mv)[g];
    auto [fu, fv] = (*mv)[f];
    int u = Ap->compose(gu, fu), v = Bp->compose(gv, fv);
    if (u < 0 || v < 0) return -1;
    auto it = mor_idx->find(pair_key(u, v));
    return it == mor_idx->end() ? -1 : it->second;
  };
  Pullback out;
  out.P = make_category(std::move(s));
  out.p1 = Functor{out.P, F.src, {}, {}};
  out.p2 = Functor{out.P, G.src, {}, {}};
  for (auto [a, b] : *P) {
    out.p1.obj.push_back(a);
    out.p2.obj.push_back(b);
  }
  for (auto [u, v] : mors) {
    out.p1.mor.push_back(u);
    out.p2.mor.push_back(v);
  }
  return out;
}

bool is_discrete(const FinCat& C) {
  for (int m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m)) return false;
  return true;
}

CatPtr iterated_fiber(const CatPtr& X1, const Functor& d1, const Functor& d0, int n) {
  if (n < 1) throw InputError("iterated_fiber: n must be positive");
  if (d1.tgt != d0.tgt || d1.src != X1 || d0.src != X1) throw InputError("iterated_fiber: mismatched faces");
  if (!is_discrete(*d1.tgt)) throw InputError("iterated_fiber: X0 is not discrete");
  if (n == 1) return X1;
  const FinCat& X = *X1;
  // chains x_1..x_n with d0 x_k = d1 x_{k+1}
  std::vector<std::vector<int>> chains;
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n) {
      chains.push_back(cur);
      return;
    }
    for (int x = 0; x < X.num_objects(); ++x)
      if (cur.empty() || d0.obj[cur.back()] == d1.obj[x]) {
        cur.push_back(x);
        rec();
        cur.pop_back();
      }
  };
  rec();
  auto idx = std::make_shared<std::map<std::vector<int>, int>>();
  FinCat::Spec s;
  for (std::size_t k = 0; k < chains.size(); ++k) {
    (*idx)[chains[k]] = static_cast<int>(k);
    std::string id = "(";
    for (int i = 0; i < n; ++i) id += (i ? "," : "") + X.object_id(chains[k][i]);
    s.objects.push_back(id + ")");
  }
  auto comps = std::make_shared<std::vector<std::vector<int>>>();
  auto offset = std::make_shared<std::unordered_map<std::int64_t, int>>();
  const int N = static_cast<int>(chains.size());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      std::vector<std::span<const int>> homs;
      std::int64_t total = 1;
      for (int i = 0; i < n; ++i) {
        homs.push_back(X.hom(chains[a][i], chains[b][i]));
        total *= static_cast<std::int64_t>(homs.back().size());
      }
      if (total == 0) continue;
      (*offset)[pair_key(a, b)] = static_cast<int>(comps->size());
      std::vector<int> digit(n, 0);
      for (std::int64_t t = 0; t < total; ++t) {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) c[i] = homs[i][digit[i]];
        comps->push_back(c);
        s.dom.push_back(a);
        s.cod.push_back(b);
        for (int i = n - 1; i >= 0; --i) {
          if (++digit[i] < static_cast<int>(homs[i].size())) break;
          digit[i] = 0;
        }
      }
    }
  for (int a = 0; a < N; ++a) {
    std::int64_t base = offset->at(pair_key(a, a));
    int pos = 0;
    for (int i = 0; i < n; ++i) {
      auto h = X.hom(chains[a][i], chains[a][i]);
      pos = pos * static_cast<int>(h.size()) + X.hom_position(X.identity(chains[a][i]));
    }
    s.identity.push_back(static_cast<int>(base + pos));
  }
  auto ch = std::make_shared<std::vector<std::vector<int>>>(std::move(chains));
  s.id_fn = [X1, comps](int m) {
    std::string id = "(";
    for (std::size_t i = 0; i < (*comps)[m].size(); ++i) id += (i ? "," : "") + X1->morphism_id((*comps)[m][i]);
    return id + ")";
  };
  auto dom = std::make_shared<std::vector<int>>(s.dom);
  auto cod = std::make_shared<std::vector<int>>(s.cod);
  s.compose = [X1, comps, offset, ch, dom, cod, n](int g, int f) {
    int a = (*dom)[f], c = (*cod)[g];
    int pos = 0;
    for (int i = 0; i < n; ++i) {
      int m = X1->compose((*comps)[g][i], (*comps)[f][i]);
      if (m < 0) return -1;
      auto h = X1->hom((*ch)[a][i], (*ch)[c][i]);
      pos = pos * static_cast<int>(h.size()) + X1->hom_position(m);
    }
    return offset->at(pair_key(a, c)) + pos;
  };
  return make_category(std::move(s));
}

// ---------------------------------------------------------------- equivalences

namespace {

class IsoCache {
 public:
  explicit IsoCache(const FinCat& C) : C_(C), flag_(C.num_morphisms(), -1) {}
  bool operator()(int m) {
    if (flag_[m] < 0) flag_[m] = C_.is_iso(m) ? 1 : 0;
    return flag_[m] == 1;
  }

 private:
  const FinCat& C_;
  std::vector<signed char> flag_;
};

}  // namespace

EquivalenceReport equivalence_report(const Functor& F) {
  const FinCat& A = *F.src;
  const FinCat& B = *F.tgt;
  EquivalenceReport r;
  r.fully_faithful = true;
  std::vector<int> seen(1, 0);
  int stamp = 0;
  for (int a = 0; a < A.num_objects() && r.fully_faithful; ++a)
    for (int b = 0; b < A.num_objects(); ++b) {
      auto S = A.hom(a, b);
      auto T = B.hom(F.obj[a], F.obj[b]);
      if (S.size() != T.size()) {
        r.fully_faithful = false;
        r.witness = Json{{"kind", "hom-size"}, {"pair", {A.object_id(a), A.object_id(b)}},
                         {"source_hom", S.size()}, {"target_hom", T.size()}};
        break;
      }
      if (seen.size() < T.size()) seen.resize(T.size(), 0);
      ++stamp;
      for (int m : S) {
        int p = B.hom_position(F.mor[m]);
        if (seen[p] == stamp) {
          r.fully_faithful = false;
          r.witness = Json{{"kind", "not-faithful"}, {"pair", {A.object_id(a), A.object_id(b)}},
                           {"image", B.morphism_id(F.mor[m])}};
          break;
        }
        seen[p] = stamp;
      }
      if (!r.fully_faithful) break;
    }
  std::vector<char> image(B.num_objects(), 0);
  for (int a = 0; a < A.num_objects(); ++a) image[F.obj[a]] = 1;
  r.surjective_on_objects = true;
  r.essentially_surjective = true;
  IsoCache iso(B);
  Json miss;
  for (int b = 0; b < B.num_objects(); ++b) {
    if (image[b]) continue;
    if (r.surjective_on_objects) miss = B.object_id(b);
    r.surjective_on_objects = false;
    bool found = false;
    for (int m : B.out(b))
      if (image[B.cod(m)] && iso(m)) {
        found = true;
        break;
      }
    if (!found) {
      r.essentially_surjective = false;
      if (r.fully_faithful) r.witness = Json{{"kind", "not-essentially-surjective"}, {"object", B.object_id(b)}};
      break;
    }
  }
  if (r.is_equivalence() && !r.surjective_on_objects)
    r.witness = Json{{"kind", "not-surjective-on-objects"}, {"object", miss}};
  return r;
}

Certificate is_discrete_isofibration(const Functor& p) {
  const FinCat& E = *p.src;
  const FinCat& B = *p.tgt;
  IsoCache isoE(E), isoB(B);
  for (int e = 0; e < E.num_objects(); ++e) {
    for (int beta : B.in(p.obj[e])) {
      if (!isoB(beta)) continue;
      int lifts = 0;
      for (int eps : E.in(e))
        if (p.mor[eps] == beta && isoE(eps)) ++lifts;
      if (lifts != 1)
        return Certificate::fail("dif", Json{{"object", E.object_id(e)}, {"iso", B.morphism_id(beta)},
                                             {"iso_domain", B.object_id(B.dom(beta))}, {"lifts", lifts}});
    }
  }
  return Certificate::ok();
}

PseudoInverse pseudo_inverse(const Functor& F, const EquivalenceReport& report) {
  if (!report.is_equivalence()) throw InputError("pseudo_inverse: functor is not an equivalence");
  const FinCat& A = *F.src;
  const FinCat& B = *F.tgt;
  PseudoInverse out;
  out.strict_section = report.surjective_on_objects;
  Functor s{F.tgt, F.src, std::vector<int>(B.num_objects(), -1), std::vector<int>(B.num_morphisms(), -1)};
  out.witness.assign(B.num_objects(), -1);
  for (int a = 0; a < A.num_objects(); ++a)
    if (s.obj[F.obj[a]] < 0) {
      s.obj[F.obj[a]] = a;
      out.witness[F.obj[a]] = B.identity(F.obj[a]);
    }
  IsoCache iso(B);
  for (int b = 0; b < B.num_objects(); ++b) {
    if (s.obj[b] >= 0) continue;
    for (int a = 0; a < A.num_objects() && s.obj[b] < 0; ++a)
      for (int w : B.hom(F.obj[a], b))
        if (iso(w)) {
          s.obj[b] = a;
          out.witness[b] = w;
          break;
        }
    if (s.obj[b] < 0) throw InternalError("pseudo_inverse: no iso witness despite essential surjectivity");
  }
  std::vector<int> winv(B.num_objects());
  for (int b = 0; b < B.num_objects(); ++b) winv[b] = B.inverse(out.witness[b]);
  auto lift = [&](int a, int a2, int target) {
    for (int u : A.hom(a, a2))
      if (F.mor[u] == target) return u;
    throw InternalError("pseudo_inverse: hom map is not full");
  };
  for (int m = 0; m < B.num_morphisms(); ++m) {
    int b = B.dom(m), b2 = B.cod(m);
    int t = B.compose(winv[b2], B.compose(m, out.witness[b]));
    s.mor[m] = lift(s.obj[b], s.obj[b2], t);
  }
  out.inverse = s;
  Functor sF = compose_functors(s, F);
  out.unit = NatTrans{identity_functor(F.src), sF, std::vector<int>(A.num_objects())};
  for (int a = 0; a < A.num_objects(); ++a) out.unit.comp[a] = lift(a, sF.obj[a], winv[F.obj[a]]);
  Functor Fs = compose_functors(F, s);
  out.counit = NatTrans{Fs, identity_functor(F.tgt), out.witness};
  return out;
}

// ---------------------------------------------------------------- nerve of a category

TruncSimpSet nerve_of_category(const FinCat& C, int L) {
  if (L < 0 || L > 6) throw InputError("nerve_of_category: L must be in 0..6");
  TruncSimpSet N;
  N.L = L;
  N.levels.resize(L + 1);
  for (int a = 0; a < C.num_objects(); ++a) N.levels[0].push_back({a});
  if (L >= 1)
    for (int m = 0; m < C.num_morphisms(); ++m) N.levels[1].push_back({m});
  for (int n = 2; n <= L; ++n)
    for (auto& ch : N.levels[n - 1])
      for (int m : C.out(C.cod(ch.back()))) {
        auto c = ch;
        c.push_back(m);
        N.levels[n].push_back(c);
      }
  std::vector<std::map<std::vector<int>, int>> index(L + 1);
  for (int n = 0; n <= L; ++n)
    for (int x = 0; x < static_cast<int>(N.levels[n].size()); ++x) index[n][N.levels[n][x]] = x;
  auto vertex = [&](const std::vector<int>& ch, int k) { return k == 0 ? C.dom(ch[0]) : C.cod(ch[k - 1]); };
  N.face.resize(L + 1);
  N.degen.resize(L + 1);
  for (int n = 1; n <= L; ++n) {
    N.face[n].assign(n + 1, std::vector<int>(N.levels[n].size()));
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < static_cast<int>(N.levels[n].size()); ++x) {
        const auto& ch = N.levels[n][x];
        std::vector<int> r;
        if (n == 1) {
          r = {i == 0 ? C.cod(ch[0]) : C.dom(ch[0])};
        } else if (i == 0) {
          r.assign(ch.begin() + 1, ch.end());
        } else if (i == n) {
          r.assign(ch.begin(), ch.end() - 1);
        } else {
          for (int k = 0; k < n; ++k) {
            if (k == i - 1) r.push_back(C.compose(ch[i], ch[i - 1]));
            else if (k != i) r.push_back(ch[k]);
          }
        }
        N.face[n][i][x] = index[n - 1].at(r);
      }
  }
  for (int n = 0; n < L; ++n) {
    N.degen[n].assign(n + 1, std::vector<int>(N.levels[n].size()));
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < static_cast<int>(N.levels[n].size()); ++x) {
        const auto& ch = N.levels[n][x];
        std::vector<int> r;
        if (n == 0) {
          r = {C.identity(ch[0])};
        } else {
          r = ch;
          r.insert(r.begin() + i, C.identity(vertex(ch, i)));
        }
        N.degen[n][i][x] = index[n + 1].at(r);
      }
  }
  // Segal decider: S_n sends a simplex to its spine of principal edges.
  N.segal_bijective = true;
  for (int n = 2; n <= L && N.segal_bijective; ++n) {
    std::set<std::vector<int>> spines;
    for (int x = 0; x < static_cast<int>(N.levels[n].size()); ++x) {
      std::vector<int> spine;
      for (int k = 0; k < n; ++k) {
        int y = x, lvl = n;
        // keep vertices k, k+1: delete the others from the top down
        for (int v = n; v >= 0; --v)
          if (v != k && v != k + 1) y = N.face[lvl--][v][y];
        spine.push_back(N.levels[1][y][0]);
      }
      spines.insert(spine);
    }
    // independent count of composable n-tuples
    std::vector<std::int64_t> ways(C.num_objects(), 1);
    for (int step = 0; step < n; ++step) {
      std::vector<std::int64_t> next(C.num_objects(), 0);
      for (int m = 0; m < C.num_morphisms(); ++m) next[C.cod(m)] += ways[C.dom(m)];
      ways = next;
    }
    std::int64_t total = std::accumulate(ways.begin(), ways.end(), std::int64_t{0});
    if (spines.size() != N.levels[n].size() || static_cast<std::int64_t>(spines.size()) != total) {
      N.segal_bijective = false;
      N.segal_witness = Json{{"level", n}, {"simplices", N.levels[n].size()}, {"spines", spines.size()},
                             {"composable", total}};
    }
  }
  return N;
}

// ---------------------------------------------------------------- isomorphism search

std::optional<Functor> find_isomorphism(const CatPtr& Cp, const CatPtr& Dp) {
  const FinCat& C = *Cp;
  const FinCat& D = *Dp;
  if (C.num_objects() != D.num_objects() || C.num_morphisms() != D.num_morphisms()) return std::nullopt;
  if (C.num_objects() > 64) throw ResourceError("find_isomorphism: more than 64 objects");
  const int n = C.num_objects();
  Functor F{Cp, Dp, std::vector<int>(n, -1), std::vector<int>(C.num_morphisms(), -1)};
  std::vector<char> used(n, 0);
  std::vector<char> mused(D.num_morphisms(), 0);

  std::function<bool(int)> assign_mor = [&](int m) -> bool {
    if (m == C.num_morphisms()) return true;
    int a = F.obj[C.dom(m)], b = F.obj[C.cod(m)];
    for (int t : D.hom(a, b)) {
      if (mused[t]) continue;
      if (C.is_identity(m) != D.is_identity(t)) continue;
      F.mor[m] = t;
      bool ok = true;
      // composites among already assigned morphisms must be preserved
      for (int g : C.out(C.cod(m))) {
        if (g > m) continue;
        int gm = C.compose(g, m);
        if (gm <= m && F.mor[gm] >= 0 && D.compose(F.mor[g], t) != F.mor[gm]) { ok = false; break; }
      }
      for (int f : C.in(C.dom(m))) {
        if (!ok || f > m) continue;
        int mf = C.compose(m, f);
        if (mf <= m && F.mor[mf] >= 0 && D.compose(t, F.mor[f]) != F.mor[mf]) { ok = false; break; }
      }
      if (ok) {
        mused[t] = 1;
        if (assign_mor(m + 1)) return true;
        mused[t] = 0;
      }
      F.mor[m] = -1;
    }
    return false;
  };
  std::function<bool(int)> assign_obj = [&](int a) -> bool {
    if (a == n) return assign_mor(0);
    for (int b = 0; b < n; ++b) {
      if (used[b]) continue;
      bool ok = true;
      for (int x = 0; x <= a && ok; ++x) {
        int fx = x == a ? b : F.obj[x];
        if (C.hom(a, x).size() != D.hom(b, fx).size() || C.hom(x, a).size() != D.hom(fx, b).size()) ok = false;
      }
      if (!ok) continue;
      used[b] = 1;
      F.obj[a] = b;
      if (assign_obj(a + 1)) return true;
      used[b] = 0;
      F.obj[a] = -1;
    }
    return false;
  };
  if (!assign_obj(0)) return std::nullopt;
  if (!validate_functor(F)) return std::nullopt;
  return F;
}

// ---------------------------------------------------------------- JSON

Json category_to_json(const FinCat& C) {
  Json j;
  j["objects"] = Json::array();
  for (int a = 0; a < C.num_objects(); ++a) j["objects"].push_back(C.object_id(a));
  j["morphisms"] = Json::array();
  for (int m = 0; m < C.num_morphisms(); ++m)
    j["morphisms"].push_back(
        Json{{"id", C.morphism_id(m)}, {"dom", C.object_id(C.dom(m))}, {"cod", C.object_id(C.cod(m))}});
  j["identity"] = Json::object();
  for (int a = 0; a < C.num_objects(); ++a) j["identity"][C.object_id(a)] = C.morphism_id(C.identity(a));
  j["compose"] = Json::array();
  for (int f = 0; f < C.num_morphisms(); ++f)
    for (int g : C.out(C.cod(f))) {
      int gf = C.compose(g, f);
      if (gf >= 0) j["compose"].push_back(Json{C.morphism_id(g), C.morphism_id(f), C.morphism_id(gf)});
    }
  for (auto& t : C.stray_triples())
    j["compose"].push_back(Json{C.morphism_id(t[0]), C.morphism_id(t[1]), C.morphism_id(t[2])});
  return j;
}

using namespace detail;

CatPtr category_from_json(const Json& j) {
  require_fields(j, {"objects", "morphisms", "identity", "compose"}, "category");
  FinCat::Spec s;
  std::unordered_map<std::string, int> oi, mi;
  const Json& objs = field(j, "objects", "category");
  if (!objs.is_array()) throw InputError("category: objects must be an array");
  for (auto& o : objs) {
    auto id = str(o, "category objects");
    if (!oi.emplace(id, static_cast<int>(s.objects.size())).second) throw InputError("duplicate object id '" + id + "'");
    s.objects.push_back(id);
  }
  const Json& mors = field(j, "morphisms", "category");
  if (!mors.is_array()) throw InputError("category: morphisms must be an array");
  for (auto& m : mors) {
    require_fields(m, {"id", "dom", "cod"}, "morphism");
    auto id = str(field(m, "id", "morphism"), "morphism");
    auto d = str(field(m, "dom", "morphism"), "morphism");
    auto c = str(field(m, "cod", "morphism"), "morphism");
    if (!oi.count(d) || !oi.count(c)) throw InputError("morphism '" + id + "' references an unknown object");
    if (!mi.emplace(id, static_cast<int>(s.morphism_ids.size())).second)
      throw InputError("duplicate morphism id '" + id + "'");
    s.morphism_ids.push_back(id);
    s.dom.push_back(oi[d]);
    s.cod.push_back(oi[c]);
  }
  const Json& ident = field(j, "identity", "category");
  if (!ident.is_object()) throw InputError("category: identity must be an object");
  s.identity.assign(s.objects.size(), -1);
  for (auto& [k, v] : ident.items()) {
    if (!oi.count(k)) throw InputError("identity for unknown object '" + k + "'");
    auto id = str(v, "identity");
    if (!mi.count(id)) throw InputError("identity names unknown morphism '" + id + "'");
    s.identity[oi[k]] = mi[id];
  }
  for (std::size_t a = 0; a < s.objects.size(); ++a)
    if (s.identity[a] < 0) throw InputError("object '" + s.objects[a] + "' has no identity");
  const Json& comp = field(j, "compose", "category");
  if (!comp.is_array()) throw InputError("category: compose must be an array");
  auto table = std::make_shared<std::unordered_map<std::int64_t, int>>();
  for (auto& t : comp) {
    if (!t.is_array() || t.size() != 3) throw InputError("compose entries must be [g, f, gf] triples");
    int v[3];
    for (int k = 0; k < 3; ++k) {
      auto id = str(t[k], "compose");
      auto it = mi.find(id);
      if (it == mi.end()) throw InputError("compose references unknown morphism '" + id + "'");
      v[k] = it->second;
    }
    if (s.dom[v[0]] != s.cod[v[1]]) {
      s.stray.push_back({v[0], v[1], v[2]});
      continue;
    }
    auto [it, fresh] = table->emplace(pair_key(v[0], v[1]), v[2]);
    if (!fresh && it->second != v[2]) throw InputError("conflicting compose entries");
  }
  s.compose = [table](int g, int f) {
    auto it = table->find(pair_key(g, f));
    return it == table->end() ? -1 : it->second;
  };
  return make_category(std::move(s));
}

Json functor_to_json(const Functor& F) {
  Json j{{"on_objects", Json::object()}, {"on_morphisms", Json::object()}};
  for (int a = 0; a < F.src->num_objects(); ++a) j["on_objects"][F.src->object_id(a)] = F.tgt->object_id(F.obj[a]);
  for (int m = 0; m < F.src->num_morphisms(); ++m)
    j["on_morphisms"][F.src->morphism_id(m)] = F.tgt->morphism_id(F.mor[m]);
  return j;
}

Functor functor_from_json(const Json& j, const CatPtr& src, const CatPtr& tgt) {
  require_fields(j, {"on_objects", "on_morphisms", "source", "target"}, "functor");
  Functor F{src, tgt, std::vector<int>(src->num_objects(), -1), std::vector<int>(src->num_morphisms(), -1)};
  for (auto& [k, v] : field(j, "on_objects", "functor").items()) {
    int a = src->find_object(k), b = tgt->find_object(str(v, "functor"));
    if (a < 0 || b < 0) throw InputError("functor on_objects references unknown id '" + k + "'");
    F.obj[a] = b;
  }
  for (auto& [k, v] : field(j, "on_morphisms", "functor").items()) {
    int a = src->find_morphism(k), b = tgt->find_morphism(str(v, "functor"));
    if (a < 0 || b < 0) throw InputError("functor on_morphisms references unknown id '" + k + "'");
    F.mor[a] = b;
  }
  for (int x : F.obj)
    if (x < 0) throw InputError("functor on_objects is not total");
  for (int x : F.mor)
    if (x < 0) throw InputError("functor on_morphisms is not total");
  return F;
}

Json nat_to_json(const NatTrans& a) {
  Json j{{"components", Json::object()}};
  for (int x = 0; x < a.F.src->num_objects(); ++x)
    j["components"][a.F.src->object_id(x)] = a.F.tgt->morphism_id(a.comp[x]);
  return j;
}

NatTrans nat_from_json(const Json& j, const Functor& F, const Functor& G) {
  require_fields(j, {"components", "source", "target"}, "natural transformation");
  NatTrans a{F, G, std::vector<int>(F.src->num_objects(), -1)};
  for (auto& [k, v] : field(j, "components", "natural transformation").items()) {
    int x = F.src->find_object(k), m = F.tgt->find_morphism(str(v, "components"));
    if (x < 0 || m < 0) throw InputError("components reference unknown id '" + k + "'");
    a.comp[x] = m;
  }
  for (int c : a.comp)
    if (c < 0) throw InputError("components are not total");
  return a;
}

}  // namespace nervekit
