#include <algorithm>
#include <functional>
#include <map>

#include "json_util.hpp"
#include "nervekit/bicat.hpp"
#include "nervekit/simpcat.hpp"

namespace nervekit {

using namespace detail;

namespace {

// Per-level preimages: for x = s_i z the least such (i, z), else {-1, -1}.
std::vector<std::pair<int, int>> degenerate_sources(const TruncSimpCat& X, int n, bool morphisms) {
  const FinCat& C = X.X(n);
  std::vector<std::pair<int, int>> src(morphisms ? C.num_morphisms() : C.num_objects(), {-1, -1});
  if (n == 0) return src;
  for (int i = 0; i < n; ++i) {
    const Functor& s = X.s(n - 1, i);
    const auto& tab = morphisms ? s.mor : s.obj;
    for (int z = 0; z < static_cast<int>(tab.size()); ++z)
      if (src[tab[z]].first < 0) src[tab[z]] = {i, z};
  }
  return src;
}

std::vector<int> face_key(const TruncSimpCat& X, int n, int x, bool morphism) {
  std::vector<int> k(n + 1);
  for (int i = 0; i <= n; ++i) k[i] = morphism ? X.d(n, i).mor[x] : X.d(n, i).obj[x];
  return k;
}

// Full composition check over composable pairs, usable on lazy sources.
bool preserves_composition(const Functor& F) {
  const FinCat& A = *F.src;
  const FinCat& B = *F.tgt;
  for (int f = 0; f < A.num_morphisms(); ++f)
    for (int g : A.out(A.cod(f))) {
      int gf = A.compose(g, f);
      if (gf < 0 || F.mor[gf] != B.compose(F.mor[g], F.mor[f])) return false;
    }
  for (int a = 0; a < A.num_objects(); ++a)
    if (F.mor[A.identity(a)] != B.identity(F.obj[a])) return false;
  return true;
}

}  // namespace

std::vector<SimpMap> enumerate_simp_maps(const SimpPtr& Xp, const SimpPtr& Yp, const Caps& caps) {
  const TruncSimpCat& X = *Xp;
  const TruncSimpCat& Y = *Yp;
  if (X.L != Y.L) throw InputError("enumerate_simp_maps: truncation levels differ");
  std::vector<SimpMap> out;
  std::int64_t steps = 0;
  auto tick = [&] {
    if (++steps > caps.max_search) throw ResourceError("simplicial map enumeration exceeded the search cap");
  };

  std::vector<std::map<std::vector<int>, std::vector<int>>> yobj(Y.L + 1), ymor(Y.L + 1);
  std::vector<bool> yfaithful(Y.L + 1, true);
  for (int n = 1; n <= Y.L; ++n) {
    for (int y = 0; y < Y.X(n).num_objects(); ++y) yobj[n][face_key(Y, n, y, false)].push_back(y);
    for (int m = 0; m < Y.X(n).num_morphisms(); ++m) {
      auto k = face_key(Y, n, m, true);
      k.push_back(Y.X(n).dom(m));
      k.push_back(Y.X(n).cod(m));
      auto& v = ymor[n][k];
      v.push_back(m);
      if (v.size() > 1) yfaithful[n] = false;
    }
  }
  std::vector<std::vector<std::pair<int, int>>> dobj(X.L + 1), dmor(X.L + 1);
  for (int n = 0; n <= X.L; ++n) {
    dobj[n] = degenerate_sources(X, n, false);
    dmor[n] = degenerate_sources(X, n, true);
  }

  std::vector<Functor> cur;
  cur.reserve(X.L + 2);  // prev references stay valid across push_back
  std::function<void(int)> level = [&](int n) {
    if (n > X.L) {
      out.push_back(SimpMap{Xp, Yp, cur});
      return;
    }
    const FinCat& Xn = X.X(n);
    if (n == 0) {
      for (auto& F : enumerate_functors(X.level[0], Y.level[0], std::vector<int>(Xn.num_objects(), -1), caps.max_search)) {
        tick();
        cur.push_back(F);
        level(1);
        cur.pop_back();
      }
      return;
    }
    const Functor& prev = cur[n - 1];
    std::vector<std::vector<int>> ocand(Xn.num_objects());
    for (int x = 0; x < Xn.num_objects(); ++x) {
      if (auto [i, z] = dobj[n][x]; i >= 0) {
        ocand[x] = {Y.s(n - 1, i).obj[prev.obj[z]]};
        continue;
      }
      std::vector<int> k(n + 1);
      for (int i = 0; i <= n; ++i) k[i] = prev.obj[X.d(n, i).obj[x]];
      auto it = yobj[n].find(k);
      if (it == yobj[n].end()) return;
      ocand[x] = it->second;
    }
    for (int x = 0; x < Xn.num_objects(); ++x) {
      if (dobj[n][x].first < 0) continue;
      auto k = face_key(Y, n, ocand[x][0], false);
      for (int i = 0; i <= n; ++i)
        if (k[i] != prev.obj[X.d(n, i).obj[x]]) return;
    }
    Functor F{X.level[n], Y.level[n], std::vector<int>(Xn.num_objects(), -1), std::vector<int>(Xn.num_morphisms(), -1)};
    std::function<void(int)> objs = [&](int x) {
      if (x == Xn.num_objects()) {
        std::vector<std::vector<int>> mcand(Xn.num_morphisms());
        bool unique = true;
        for (int m = 0; m < Xn.num_morphisms(); ++m) {
          std::vector<int> k(n + 1);
          for (int i = 0; i <= n; ++i) k[i] = prev.mor[X.d(n, i).mor[m]];
          k.push_back(F.obj[Xn.dom(m)]);
          k.push_back(F.obj[Xn.cod(m)]);
          auto it = ymor[n].find(k);
          if (it == ymor[n].end()) return;
          if (auto [i, z] = dmor[n][m]; i >= 0) {
            int forced = Y.s(n - 1, i).mor[prev.mor[z]];
            if (std::find(it->second.begin(), it->second.end(), forced) == it->second.end()) return;
            mcand[m] = {forced};
          } else {
            mcand[m] = it->second;
          }
          unique = unique && mcand[m].size() == 1;
        }
        std::function<void(int)> mors = [&](int m) {
          if (m == Xn.num_morphisms()) {
            tick();
            if (!(unique && yfaithful[n])) {
              if (!Xn.dense() && Xn.composable_pairs() > caps.max_search)
                throw ResourceError("simplicial map enumeration: level too large for a composition check");
              if (!preserves_composition(F)) return;
            }
            cur.push_back(F);
            level(n + 1);
            cur.pop_back();
            return;
          }
          for (int c : mcand[m]) {
            F.mor[m] = c;
            mors(m + 1);
          }
        };
        mors(0);
        return;
      }
      for (int y : ocand[x]) {
        tick();
        F.obj[x] = y;
        objs(x + 1);
      }
    };
    objs(0);
  };
  level(0);
  return out;
}

std::optional<Functor> induced_by_faces(const TruncSimpCat& X, const TruncSimpCat& Y, const Functor& below, int n) {
  FaceIndex idx(Y, n);
  const FinCat& C = X.X(n);
  Functor F{X.level[n], Y.level[n], std::vector<int>(C.num_objects()), std::vector<int>(C.num_morphisms())};
  std::vector<int> k(n + 1);
  for (int x = 0; x < C.num_objects(); ++x) {
    for (int i = 0; i <= n; ++i) k[i] = below.obj[X.d(n, i).obj[x]];
    if ((F.obj[x] = idx.object(k)) < 0) return std::nullopt;
  }
  for (int m = 0; m < C.num_morphisms(); ++m) {
    for (int i = 0; i <= n; ++i) k[i] = below.mor[X.d(n, i).mor[m]];
    if ((F.mor[m] = idx.morphism(k)) < 0) return std::nullopt;
  }
  return F;
}

Certificate validate_simp_transformation(const SimpMap& f, const SimpMap& g, const Modification& m) {
  return validate_modification(as_pseudo(f), as_pseudo(g), m);
}

std::vector<Modification> enumerate_simp_transformations(const SimpMap& f, const SimpMap& g, const Caps& caps) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  if (g.src != f.src || g.tgt != f.tgt) throw InputError("enumerate_simp_transformations: maps are not parallel");
  std::vector<Modification> out;
  std::int64_t steps = 0;
  Modification cur;
  cur.comp.resize(X.L + 1);
  std::vector<std::vector<std::pair<int, int>>> dobj(X.L + 1);
  for (int n = 0; n <= X.L; ++n) dobj[n] = degenerate_sources(X, n, false);

  std::function<void(int)> level = [&](int n) {
    if (n > X.L) {
      out.push_back(cur);
      return;
    }
    const FinCat& Xn = X.X(n);
    const FinCat& Yn = Y.X(n);
    std::vector<std::vector<int>> cand(Xn.num_objects());
    for (int x = 0; x < Xn.num_objects(); ++x) {
      if (auto [i, z] = dobj[n][x]; i >= 0) {
        int t = Y.s(n - 1, i).mor[cur.comp[n - 1][z]];
        if (Yn.dom(t) != f.f[n].obj[x] || Yn.cod(t) != g.f[n].obj[x]) return;
        cand[x] = {t};
      } else {
        for (int t : Yn.hom(f.f[n].obj[x], g.f[n].obj[x])) cand[x].push_back(t);
      }
      std::vector<int> keep;
      for (int t : cand[x]) {
        bool ok = true;
        for (int i = 0; n > 0 && i <= n && ok; ++i) ok = Y.d(n, i).mor[t] == cur.comp[n - 1][X.d(n, i).obj[x]];
        if (ok) keep.push_back(t);
      }
      if (keep.empty()) return;
      cand[x] = std::move(keep);
    }
    auto& c = cur.comp[n];
    c.assign(Xn.num_objects(), -1);
    std::function<void(int)> rec = [&](int x) {
      if (++steps > caps.max_search) throw ResourceError("transformation enumeration exceeded the search cap");
      if (x == Xn.num_objects()) {
        for (int a = 0; a < Xn.num_morphisms(); ++a)
          if (Yn.compose(g.f[n].mor[a], c[Xn.dom(a)]) != Yn.compose(c[Xn.cod(a)], f.f[n].mor[a])) return;
        level(n + 1);
        return;
      }
      for (int t : cand[x]) {
        c[x] = t;
        rec(x + 1);
      }
    };
    rec(0);
    c.clear();
  };
  level(0);
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

std::string key(int n, int i) { return std::to_string(n) + "," + std::to_string(i); }

bool cosk_top(const TruncSimpCat& X) { return X.top_cosk >= 0 && X.top_family; }

Json iso_table_to_json(const TruncSimpCat& X, const TruncSimpCat& Y, const std::vector<std::vector<std::vector<int>>>& t,
                       int shift) {
  Json j = Json::object();
  for (int n = 0; n < static_cast<int>(t.size()); ++n)
    for (int i = 0; i < static_cast<int>(t[n].size()); ++i) {
      Json c = Json::object();
      for (int x = 0; x < X.X(n).num_objects(); ++x) c[X.X(n).object_id(x)] = Y.X(n + shift).morphism_id(t[n][i][x]);
      j[key(n, i)] = c;
    }
  return j;
}

std::vector<std::vector<std::vector<int>>> iso_table_from_json(const Json& j, const TruncSimpCat& X,
                                                                const TruncSimpCat& Y, int shift, const char* what) {
  std::vector<std::vector<std::vector<int>>> t(X.L + 1);
  for (int n = 0; n <= X.L; ++n) {
    int m = n + shift;
    if (m < 0 || m > X.L) continue;
    for (int i = 0; i <= n; ++i) {
      const Json& c = field(j, key(n, i).c_str(), what);
      std::vector<int> v(X.X(n).num_objects(), -1);
      for (auto& [k, val] : c.items()) {
        int x = X.X(n).find_object(k), mm = Y.X(m).find_morphism(str(val, what));
        if (x < 0 || mm < 0) throw InputError(std::string(what) + ": unknown id '" + k + "'");
        v[x] = mm;
      }
      for (int e : v)
        if (e < 0) throw InputError(std::string(what) + ": table is not total");
      t[n].push_back(std::move(v));
    }
  }
  return t;
}

}  // namespace

Json simp_to_json(const TruncSimpCat& X) {
  Json j{{"L", X.L}, {"nerve", X.nerve}, {"levels", Json::array()}, {"faces", Json::object()},
         {"degeneracies", Json::object()}};
  const bool top = cosk_top(X);
  for (int n = 0; n <= X.L; ++n)
    j["levels"].push_back(top && n == X.L ? Json{{"cosk", X.top_cosk}} : category_to_json(X.X(n)));
  for (int n = 1; n <= X.L - (top ? 1 : 0); ++n)
    for (int i = 0; i <= n; ++i) j["faces"][key(n, i)] = functor_to_json(X.d(n, i));
  for (int n = 0; n < X.L - (top ? 1 : 0); ++n)
    for (int i = 0; i <= n; ++i) j["degeneracies"][key(n, i)] = functor_to_json(X.s(n, i));
  return j;
}

TruncSimpCat simp_from_json(const Json& j, const Caps& caps) {
  require_fields(j, {"L", "nerve", "levels", "faces", "degeneracies"}, "simplicial category");
  const Json& Lj = field(j, "L", "simplicial category");
  if (!Lj.is_number_integer()) throw InputError("simplicial category: L must be an integer");
  const int L = Lj.get<int>();
  if (L < 0 || L > 4) throw InputError("simplicial category: L must be in 0..4");
  const Json& levels = field(j, "levels", "simplicial category");
  if (!levels.is_array() || static_cast<int>(levels.size()) != L + 1)
    throw InputError("simplicial category: levels must list L + 1 categories");
  int cosk = -1;
  if (levels[L].is_object() && levels[L].contains("cosk")) {
    if (L == 0 || !levels[L]["cosk"].is_number_integer()) throw InputError("simplicial category: bad cosk marker");
    cosk = levels[L]["cosk"].get<int>();
  }
  const int stored = cosk >= 0 ? L - 1 : L;
  TruncSimpCat X;
  X.L = stored;
  X.nerve = j.contains("nerve") && j["nerve"].is_boolean() && j["nerve"].get<bool>();
  for (int n = 0; n <= stored; ++n) X.level.push_back(category_from_json(levels[n]));
  X.face.resize(stored + 1);
  X.degen.resize(stored + 1);
  const Json& faces = field(j, "faces", "simplicial category");
  const Json& degens = field(j, "degeneracies", "simplicial category");
  for (int n = 1; n <= stored; ++n)
    for (int i = 0; i <= n; ++i)
      X.face[n].push_back(functor_from_json(field(faces, key(n, i).c_str(), "faces"), X.level[n], X.level[n - 1]));
  for (int n = 0; n < stored; ++n)
    for (int i = 0; i <= n; ++i)
      X.degen[n].push_back(
          functor_from_json(field(degens, key(n, i).c_str(), "degeneracies"), X.level[n], X.level[n + 1]));
  if (cosk >= 0) {
    if (cosk < 1 || cosk > stored) throw InputError("simplicial category: cosk marker out of range");
    X = extend_by_coskeleton(std::move(X), cosk, caps);
  }
  return X;
}

Json simp_map_to_json(const SimpMap& f) {
  Json j{{"levels", Json::array()}};
  for (const auto& F : f.f) j["levels"].push_back(functor_to_json(F));
  return j;
}

SimpMap simp_map_from_json(const Json& j, const SimpPtr& src, const SimpPtr& tgt) {
  require_fields(j, {"levels", "source", "target"}, "simplicial map");
  const Json& lv = field(j, "levels", "simplicial map");
  if (!lv.is_array() || static_cast<int>(lv.size()) != src->L + 1 || src->L != tgt->L)
    throw InputError("simplicial map: one functor per level is required");
  SimpMap f{src, tgt, {}};
  for (int n = 0; n <= src->L; ++n) f.f.push_back(functor_from_json(lv[n], src->level[n], tgt->level[n]));
  return f;
}

Json pseudo_map_to_json(const PseudoSimpMap& f) {
  Json j = simp_map_to_json(strict_part(f));
  j["normal"] = f.normal;
  j["face_isos"] = iso_table_to_json(*f.src, *f.tgt, f.fd, -1);
  j["degeneracy_isos"] = iso_table_to_json(*f.src, *f.tgt, f.fs, 1);
  return j;
}

PseudoSimpMap pseudo_map_from_json(const Json& j, const SimpPtr& src, const SimpPtr& tgt) {
  require_fields(j, {"levels", "normal", "face_isos", "degeneracy_isos", "source", "target"}, "pseudo map");
  Json strict{{"levels", field(j, "levels", "pseudo map")}};
  SimpMap s = simp_map_from_json(strict, src, tgt);
  PseudoSimpMap f{src, tgt, s.f, {}, {}, false};
  f.normal = j.contains("normal") && j["normal"].is_boolean() && j["normal"].get<bool>();
  f.fd = iso_table_from_json(field(j, "face_isos", "pseudo map"), *src, *tgt, -1, "face_isos");
  f.fs = iso_table_from_json(field(j, "degeneracy_isos", "pseudo map"), *src, *tgt, 1, "degeneracy_isos");
  return f;
}

Json modification_to_json(const PseudoSimpMap& f, const Modification& m) {
  Json j{{"components", Json::array()}};
  for (int n = 0; n < static_cast<int>(m.comp.size()); ++n) {
    Json c = Json::object();
    for (int x = 0; x < f.src->X(n).num_objects(); ++x) c[f.src->X(n).object_id(x)] = f.tgt->X(n).morphism_id(m.comp[n][x]);
    j["components"].push_back(c);
  }
  return j;
}

}  // namespace nervekit
