#include "nervekit/simpcat.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace nervekit {

// ---------------------------------------------------------------- operators

Operator face_operator(int n, int i) {
  Operator t;
  for (int v = 0; v < n; ++v) t.push_back(v < i ? v : v + 1);
  return t;
}

Operator degeneracy_operator(int n, int i) {
  Operator t;
  for (int v = 0; v <= n + 1; ++v) t.push_back(v <= i ? v : v - 1);
  return t;
}

Operator compose_operators(const Operator& outer, const Operator& inner) {
  Operator t;
  for (int v : inner) t.push_back(outer[v]);
  return t;
}

Operator subset_operator(unsigned mask) {
  Operator t;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1u) t.push_back(v);
  return t;
}

namespace {

// Faces to apply (descending) and degeneracies to apply afterwards (ascending).
void decompose(int n, const Operator& theta, std::vector<int>& faces, std::vector<int>& degens) {
  faces.clear();
  degens.clear();
  std::vector<char> hit(n + 1, 0);
  for (int v : theta) {
    if (v < 0 || v > n) throw InputError("operator value out of range");
    hit[v] = 1;
  }
  for (std::size_t t = 1; t < theta.size(); ++t)
    if (theta[t] < theta[t - 1]) throw InputError("operator is not monotone");
  for (int v = n; v >= 0; --v)
    if (!hit[v]) faces.push_back(v);
  for (std::size_t t = 0; t + 1 < theta.size(); ++t)
    if (theta[t] == theta[t + 1]) degens.push_back(static_cast<int>(t));
}

template <class Pick>
int act(const TruncSimpCat& X, int n, const Operator& theta, int x, Pick pick) {
  std::vector<int> faces, degens;
  decompose(n, theta, faces, degens);
  int lvl = n;
  for (int i : faces) x = pick(X.d(lvl--, i))[x];
  for (int i : degens) {
    if (lvl >= X.L) throw InputError("operator leaves the truncation");
    x = pick(X.s(lvl++, i))[x];
  }
  return x;
}

}  // namespace

int act_object(const TruncSimpCat& X, int n, const Operator& theta, int x) {
  return act(X, n, theta, x, [](const Functor& F) -> const std::vector<int>& { return F.obj; });
}

int act_morphism(const TruncSimpCat& X, int n, const Operator& theta, int m) {
  return act(X, n, theta, m, [](const Functor& F) -> const std::vector<int>& { return F.mor; });
}

// ---------------------------------------------------------------- tuple categories

namespace {

struct TupleData {
  int width = 0;
  std::vector<int> rows, dom, cod, order, dom_start;
  TupleCategory::ComponentCompose compose;

  const int* row(int m) const { return rows.data() + static_cast<std::size_t>(m) * width; }
  bool less(int a, int b) const {
    if (dom[a] != dom[b]) return dom[a] < dom[b];
    if (cod[a] != cod[b]) return cod[a] < cod[b];
    return std::lexicographical_compare(row(a), row(a) + width, row(b), row(b) + width);
  }
  int find(int d, int c, const int* r) const {
    auto first = order.begin() + dom_start[d], last = order.begin() + dom_start[d + 1];
    auto it = std::lower_bound(first, last, 0, [&](int m, int) {
      if (cod[m] != c) return cod[m] < c;
      return std::lexicographical_compare(row(m), row(m) + width, r, r + width);
    });
    if (it == last || cod[*it] != c || !std::equal(row(*it), row(*it) + width, r)) return -1;
    return *it;
  }
};

}  // namespace

std::shared_ptr<const TupleCategory> TupleCategory::build(Input in) {
  auto data = std::make_shared<TupleData>();
  const int nobj = static_cast<int>(in.objects.size());
  const int nmor = static_cast<int>(in.dom.size());
  data->width = in.width;
  data->rows = std::move(in.rows);
  data->dom = in.dom;
  data->cod = in.cod;
  data->compose = in.compose;
  data->order.resize(nmor);
  std::iota(data->order.begin(), data->order.end(), 0);
  std::sort(data->order.begin(), data->order.end(), [&](int a, int b) { return data->less(a, b); });
  for (int t = 1; t < nmor; ++t)
    if (!data->less(data->order[t - 1], data->order[t])) throw InternalError("tuple category has repeated rows");
  data->dom_start.assign(nobj + 1, 0);
  for (int m = 0; m < nmor; ++m) ++data->dom_start[data->dom[m] + 1];
  for (int a = 0; a < nobj; ++a) data->dom_start[a + 1] += data->dom_start[a];

  FinCat::Spec s;
  s.objects = std::move(in.objects);
  s.id_fn = std::move(in.id_fn);
  s.dom = std::move(in.dom);
  s.cod = std::move(in.cod);
  for (int a = 0; a < nobj; ++a) {
    int id = data->find(a, a, in.identity_rows[a].data());
    if (id < 0) throw InternalError("tuple category is missing an identity");
    s.identity.push_back(id);
  }
  s.compose = [data](int g, int f) {
    if (data->cod[f] != data->dom[g]) return -1;
    std::vector<int> r(data->width);
    const int a = data->dom[f];
    for (int p = 0; p < data->width; ++p) {
      r[p] = data->compose(p, a, data->row(g)[p], data->row(f)[p]);
      if (r[p] < 0) return -1;
    }
    return data->find(a, data->cod[g], r.data());
  };
  auto out = std::shared_ptr<TupleCategory>(new TupleCategory());
  out->width_ = data->width;
  out->rows_ = data->rows;
  out->dom_ = data->dom;
  out->cod_ = data->cod;
  out->order_ = data->order;
  out->dom_start_ = data->dom_start;
  out->cat_ = make_category(std::move(s));
  return out;
}

int TupleCategory::find(int dom, int cod, const int* row) const {
  auto first = order_.begin() + dom_start_[dom], last = order_.begin() + dom_start_[dom + 1];
  auto it = std::lower_bound(first, last, 0, [&](int m, int) {
    if (cod_[m] != cod) return cod_[m] < cod;
    return std::lexicographical_compare(this->row(m), this->row(m) + width_, row, row + width_);
  });
  if (it == last || cod_[*it] != cod || !std::equal(this->row(*it), this->row(*it) + width_, row)) return -1;
  return *it;
}

// ---------------------------------------------------------------- coskeleta

namespace {

std::vector<unsigned> subsets_of_size(int n, int size) {
  std::vector<unsigned> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      unsigned m = 0;
      for (int v : cur) m |= 1u << v;
      out.push_back(m);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int position_in(unsigned mask, int v) { return std::popcount(mask & ((1u << v) - 1u)); }

std::string join_ids(const std::vector<std::string>& parts) {
  std::string s = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ";" : "") + parts[i];
  return s + "}";
}

}  // namespace

int FamilyLevel::find_object(const std::vector<int>& fam) const {
  auto it = object_index.find(fam);
  return it == object_index.end() ? -1 : it->second;
}

int FamilyLevel::find_morphism(int dom, int cod, const std::vector<int>& fam) const {
  if (dom < 0 || cod < 0) return -1;
  return tc->find(dom, cod, fam.data());
}

std::shared_ptr<const FamilyLevel> family_level(const TruncSimpCat& X, int k, int n, const Caps& caps) {
  if (k < 1 || k >= n || k > X.L) throw InputError("family_level: need 1 <= k < n and k <= L");
  auto F = std::make_shared<FamilyLevel>();
  F->k = k;
  F->n = n;
  F->subsets = subsets_of_size(n, k + 1);
  const int ns = static_cast<int>(F->subsets.size());
  const FinCat& Xk = X.X(k);
  const FinCat& Xk1 = X.X(k - 1);

  // shared k-faces with earlier subsets
  struct Constraint {
    int p, t, q;
  };
  std::vector<std::vector<Constraint>> cons(ns);
  for (int s = 0; s < ns; ++s)
    for (int t = 0; t < s; ++t) {
      unsigned S = F->subsets[s], T = F->subsets[t];
      if (std::popcount(S & T) != k) continue;
      int a = std::countr_zero(S & ~T), b = std::countr_zero(T & ~S);
      cons[s].push_back({position_in(S, a), t, position_in(T, b)});
    }

  std::vector<std::vector<std::vector<int>>> by_face(k + 1, std::vector<std::vector<int>>(Xk1.num_objects()));
  for (int p = 0; p <= k; ++p)
    for (int x = 0; x < Xk.num_objects(); ++x) by_face[p][X.d(k, p).obj[x]].push_back(x);
  std::vector<int> all(Xk.num_objects());
  std::iota(all.begin(), all.end(), 0);

  std::vector<int> cur(ns, -1);
  std::function<void(int)> rec = [&](int s) {
    if (s == ns) {
      if (static_cast<std::int64_t>(F->objects.size()) >= caps.max_level_objects)
        throw ResourceError("coskeleton level exceeds the object cap");
      F->object_index.emplace(cur, static_cast<int>(F->objects.size()));
      F->objects.push_back(cur);
      return;
    }
    const std::vector<int>* cand = &all;
    if (!cons[s].empty()) {
      auto& c = cons[s][0];
      cand = &by_face[c.p][X.d(k, c.q).obj[cur[c.t]]];
    }
    for (int x : *cand) {
      bool ok = true;
      for (auto& c : cons[s])
        if (X.d(k, c.p).obj[x] != X.d(k, c.q).obj[cur[c.t]]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur[s] = x;
      rec(s + 1);
    }
    cur[s] = -1;
  };
  rec(0);

  // morphisms: families of X_k morphisms out of a fixed object family
  const std::int64_t nm1 = std::max(1, Xk1.num_morphisms());
  std::unordered_map<std::int64_t, std::vector<int>> mindex;
  for (int m = 0; m < Xk.num_morphisms(); ++m)
    for (int p = 0; p <= k; ++p)
      mindex[(static_cast<std::int64_t>(Xk.dom(m)) * (k + 1) + p) * nm1 + X.d(k, p).mor[m]].push_back(m);
  static const std::vector<int> none;

  TupleCategory::Input in;
  in.width = ns;
  std::vector<int> mc(ns, -1), codfam(ns);
  for (int a = 0; a < static_cast<int>(F->objects.size()); ++a) {
    const auto& fam = F->objects[a];
    std::function<void(int)> mrec = [&](int s) {
      if (s == ns) {
        for (int i = 0; i < ns; ++i) codfam[i] = Xk.cod(mc[i]);
        int b = F->find_object(codfam);
        if (b < 0) throw InternalError("coskeleton: codomain family is not compatible");
        if (static_cast<std::int64_t>(in.dom.size()) >= caps.max_level_morphisms)
          throw ResourceError("coskeleton level exceeds the morphism cap");
        in.dom.push_back(a);
        in.cod.push_back(b);
        in.rows.insert(in.rows.end(), mc.begin(), mc.end());
        return;
      }
      std::span<const int> cand = Xk.out(fam[s]);
      if (!cons[s].empty()) {
        auto& c = cons[s][0];
        auto it = mindex.find((static_cast<std::int64_t>(fam[s]) * (k + 1) + c.p) * nm1 + X.d(k, c.q).mor[mc[c.t]]);
        cand = it == mindex.end() ? std::span<const int>(none) : std::span<const int>(it->second);
      }
      for (int m : cand) {
        bool ok = true;
        for (auto& c : cons[s])
          if (X.d(k, c.p).mor[m] != X.d(k, c.q).mor[mc[c.t]]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        mc[s] = m;
        mrec(s + 1);
      }
      mc[s] = -1;
    };
    mrec(0);
  }
  auto Xkp = X.level[k];
  for (auto& fam : F->objects) {
    std::vector<std::string> parts;
    for (int x : fam) parts.push_back(Xk.object_id(x));
    in.objects.push_back(join_ids(parts));
    std::vector<int> idr;
    for (int x : fam) idr.push_back(Xk.identity(x));
    in.identity_rows.push_back(idr);
  }
  auto rows = std::make_shared<std::vector<int>>(in.rows);
  in.id_fn = [Xkp, rows, ns](int m) {
    std::vector<std::string> parts;
    for (int i = 0; i < ns; ++i) parts.push_back(Xkp->morphism_id((*rows)[static_cast<std::size_t>(m) * ns + i]));
    return join_ids(parts);
  };
  in.compose = [Xkp](int, int, int g, int f) { return Xkp->compose(g, f); };
  F->tc = TupleCategory::build(std::move(in));
  return F;
}

namespace {

// c_n : X_n -> (Cosk_k X)_n on objects and morphisms.
Functor coskeletal_map(const TruncSimpCat& X, int n, const FamilyLevel& F, const CatPtr& target) {
  const FinCat& Xn = X.X(n);
  Functor c{X.level[n], target, std::vector<int>(Xn.num_objects()), std::vector<int>(Xn.num_morphisms())};
  std::vector<Operator> ops;
  for (unsigned S : F.subsets) ops.push_back(subset_operator(S));
  std::vector<int> fam(ops.size());
  for (int x = 0; x < Xn.num_objects(); ++x) {
    for (std::size_t i = 0; i < ops.size(); ++i) fam[i] = act_object(X, n, ops[i], x);
    c.obj[x] = F.find_object(fam);
    if (c.obj[x] < 0) throw InternalError("coskeletal map: faces of an object are not compatible");
  }
  for (int m = 0; m < Xn.num_morphisms(); ++m) {
    for (std::size_t i = 0; i < ops.size(); ++i) fam[i] = act_morphism(X, n, ops[i], m);
    c.mor[m] = F.find_morphism(c.obj[Xn.dom(m)], c.obj[Xn.cod(m)], fam);
    if (c.mor[m] < 0) throw InternalError("coskeletal map: faces of a morphism are not compatible");
  }
  return c;
}

}  // namespace

TruncSimpCat extend_by_coskeleton(TruncSimpCat X, int k, const Caps& caps) {
  const int n = X.L + 1;
  if (n > 4) throw InputError("truncation level is capped at 4");
  auto F = family_level(X, k, n, caps);
  const FinCat& C = F->cat();
  CatPtr Cp = F->tc->cat();
  const int ns = static_cast<int>(F->subsets.size());
  std::unordered_map<unsigned, int> sub_index;
  for (int s = 0; s < ns; ++s) sub_index[F->subsets[s]] = s;

  // faces into X_{n-1}
  std::vector<Functor> faces;
  std::shared_ptr<const FamilyLevel> lower;
  std::map<std::vector<int>, int> lower_obj, lower_mor;
  if (n - 1 > k) {
    lower = family_level(X, k, n - 1, caps);
    Functor c = coskeletal_map(X, n - 1, *lower, lower->tc->cat());
    for (int y = 0; y < X.X(n - 1).num_objects(); ++y)
      if (!lower_obj.emplace(lower->objects[c.obj[y]], y).second)
        throw InputError("coskeleton extension: lower level is not coskeletal");
    for (int m = 0; m < X.X(n - 1).num_morphisms(); ++m) {
      const int* r = lower->tc->row(c.mor[m]);
      std::vector<int> key(r, r + lower->tc->width());
      key.push_back(c.obj[X.X(n - 1).dom(m)]);
      key.push_back(c.obj[X.X(n - 1).cod(m)]);
      if (!lower_mor.emplace(key, m).second) throw InputError("coskeleton extension: lower level is not coskeletal");
    }
  }
  for (int i = 0; i <= n; ++i) {
    Functor d{Cp, X.level[n - 1], std::vector<int>(C.num_objects()), std::vector<int>(C.num_morphisms())};
    std::vector<int> idx;
    if (n - 1 == k) {
      idx.push_back(sub_index.at(((1u << (n + 1)) - 1u) & ~(1u << i)));
    } else {
      for (unsigned T : lower->subsets) {
        unsigned U = 0;
        for (int v : subset_operator(T)) U |= 1u << (v < i ? v : v + 1);
        idx.push_back(sub_index.at(U));
      }
    }
    for (int x = 0; x < C.num_objects(); ++x) {
      if (n - 1 == k) {
        d.obj[x] = F->objects[x][idx[0]];
      } else {
        std::vector<int> fam;
        for (int s : idx) fam.push_back(F->objects[x][s]);
        auto it = lower_obj.find(fam);
        if (it == lower_obj.end()) throw InputError("coskeleton extension: lower level is not coskeletal");
        d.obj[x] = it->second;
      }
    }
    for (int m = 0; m < C.num_morphisms(); ++m) {
      const int* r = F->tc->row(m);
      if (n - 1 == k) {
        d.mor[m] = r[idx[0]];
      } else {
        std::vector<int> key;
        for (int s : idx) key.push_back(r[s]);
        std::vector<int> dfam, cfam;
        for (int s : idx) {
          dfam.push_back(F->objects[C.dom(m)][s]);
          cfam.push_back(F->objects[C.cod(m)][s]);
        }
        key.push_back(lower->find_object(dfam));
        key.push_back(lower->find_object(cfam));
        auto it = lower_mor.find(key);
        if (it == lower_mor.end()) throw InputError("coskeleton extension: lower level is not coskeletal");
        d.mor[m] = it->second;
      }
    }
    faces.push_back(std::move(d));
  }
  // degeneracies from X_{n-1}
  std::vector<Functor> degens;
  const FinCat& Y = X.X(n - 1);
  for (int i = 0; i <= n - 1; ++i) {
    Functor s{X.level[n - 1], Cp, std::vector<int>(Y.num_objects()), std::vector<int>(Y.num_morphisms())};
    std::vector<Operator> ops;
    for (unsigned S : F->subsets) ops.push_back(compose_operators(degeneracy_operator(n - 1, i), subset_operator(S)));
    std::vector<int> fam(ns);
    for (int y = 0; y < Y.num_objects(); ++y) {
      for (int t = 0; t < ns; ++t) fam[t] = act_object(X, n - 1, ops[t], y);
      s.obj[y] = F->find_object(fam);
      if (s.obj[y] < 0) throw InputError("coskeleton extension: degenerate family is not compatible");
    }
    for (int m = 0; m < Y.num_morphisms(); ++m) {
      for (int t = 0; t < ns; ++t) fam[t] = act_morphism(X, n - 1, ops[t], m);
      s.mor[m] = F->find_morphism(s.obj[Y.dom(m)], s.obj[Y.cod(m)], fam);
      if (s.mor[m] < 0) throw InputError("coskeleton extension: degenerate family is not compatible");
    }
    degens.push_back(std::move(s));
  }
  X.L = n;
  X.level.push_back(Cp);
  X.face.resize(n + 1);
  X.face[n] = std::move(faces);
  X.degen.resize(n + 1);
  X.degen[n - 1] = std::move(degens);
  X.top_cosk = k;
  X.top_family = F;
  return X;
}

TruncSimpCat truncate(const TruncSimpCat& X, int L) {
  if (L > X.L) throw InputError("truncate: level above the truncation");
  TruncSimpCat Y;
  Y.L = L;
  Y.nerve = X.nerve;
  Y.level.assign(X.level.begin(), X.level.begin() + L + 1);
  Y.face.assign(X.face.begin(), X.face.begin() + L + 1);
  Y.degen.assign(X.degen.begin(), X.degen.begin() + L + 1);
  if (L < static_cast<int>(Y.degen.size())) Y.degen[L].clear();
  if (L == X.L) {
    Y.top_cosk = X.top_cosk;
    Y.top_family = X.top_family;
  }
  return Y;
}

MatchingObject cosk_matching(const TruncSimpCat& X, int k, int n, const Caps& caps) {
  if (k < 1 || k >= n || n > X.L) throw InputError("cosk_matching: unsupported (k, n)");
  if (k == 1 && !is_discrete(X.X(0))) throw InputError("cosk_matching: X_0 is not discrete");
  MatchingObject M;
  M.limit = family_level(X, k, n, caps);
  M.c = coskeletal_map(X, n, *M.limit, M.limit->tc->cat());
  return M;
}

bool is_levelwise_bijective(const SimpMap& f) {
  for (const auto& F : f.f) {
    if (F.src->num_objects() != F.tgt->num_objects() || F.src->num_morphisms() != F.tgt->num_morphisms()) return false;
    std::vector<char> seen(F.tgt->num_objects(), 0);
    for (int x : F.obj) {
      if (seen[x]) return false;
      seen[x] = 1;
    }
    std::vector<char> seenm(F.tgt->num_morphisms(), 0);
    for (int m : F.mor) {
      if (seenm[m]) return false;
      seenm[m] = 1;
    }
  }
  return true;
}

namespace {

Json bijection_witness(const Functor& c, int n) {
  std::vector<int> hits(c.tgt->num_objects(), 0);
  for (int x : c.obj) ++hits[x];
  for (int y = 0; y < c.tgt->num_objects(); ++y)
    if (hits[y] != 1)
      return Json{{"level", n}, {"kind", hits[y] ? "objects-not-injective" : "objects-not-surjective"},
                  {"family", c.tgt->object_id(y)}};
  std::vector<int> mh(c.tgt->num_morphisms(), 0);
  for (int m : c.mor) ++mh[m];
  for (int m = 0; m < c.tgt->num_morphisms(); ++m)
    if (mh[m] != 1)
      return Json{{"level", n}, {"kind", mh[m] ? "morphisms-not-injective" : "morphisms-not-surjective"},
                  {"family", c.tgt->morphism_id(m)}};
  return nullptr;
}

}  // namespace

Certificate is_coskeletal(const TruncSimpCat& X, int k, const Caps& caps) {
  if (k < 1 || k + 1 > X.L) throw InputError("is_coskeletal: need 1 <= k and k + 1 <= L");
  for (int n = k + 1; n <= X.L; ++n) {
    auto M = cosk_matching(X, k, n, caps);
    Json w = bijection_witness(M.c, n);
    if (!w.is_null()) return Certificate::fail(std::to_string(k) + "-coskeletal", w);
  }
  return Certificate::ok(std::to_string(k) + "-coskeletal");
}

// ---------------------------------------------------------------- Segal maps

SegalMap segal_map(const TruncSimpCat& X, int n) {
  if (n < 1 || n > X.L) throw InputError("segal_map: level out of range");
  if (!is_discrete(X.X(0))) throw InputError("segal_map: X_0 is not discrete");
  SegalMap out;
  out.target = iterated_fiber(X.level[1], X.d(1, 1), X.d(1, 0), n);
  const FinCat& P = *out.target;
  const FinCat& X1 = X.X(1);
  const FinCat& Xn = X.X(n);
  out.S = Functor{X.level[n], out.target, std::vector<int>(Xn.num_objects()), std::vector<int>(Xn.num_morphisms())};
  if (n == 1) {
    out.S = identity_functor(X.level[1]);
    return out;
  }
  std::vector<Operator> edges;
  for (int j = 0; j < n; ++j) edges.push_back({j, j + 1});
  std::vector<std::vector<int>> chain(Xn.num_objects(), std::vector<int>(n));
  for (int x = 0; x < Xn.num_objects(); ++x) {
    std::string id = "(";
    for (int j = 0; j < n; ++j) {
      chain[x][j] = act_object(X, n, edges[j], x);
      id += (j ? "," : "") + X1.object_id(chain[x][j]);
    }
    out.S.obj[x] = P.find_object(id + ")");
    if (out.S.obj[x] < 0) throw InternalError("segal_map: spine is not a chain");
  }
  for (int m = 0; m < Xn.num_morphisms(); ++m) {
    int a = Xn.dom(m), b = Xn.cod(m);
    std::int64_t pos = 0;
    for (int j = 0; j < n; ++j) {
      int e = act_morphism(X, n, edges[j], m);
      pos = pos * static_cast<std::int64_t>(X1.hom(chain[a][j], chain[b][j]).size()) + X1.hom_position(e);
    }
    out.S.mor[m] = P.hom(out.S.obj[a], out.S.obj[b])[pos];
  }
  return out;
}

Certificate check_tamsamani(const TruncSimpCat& X) {
  if (!is_discrete(X.X(0))) return Certificate::fail("X0-discrete", Json{{"objects", X.X(0).num_objects()}});
  for (int n = 2; n <= X.L; ++n) {
    auto r = equivalence_report(segal_map(X, n).S);
    if (!r.is_equivalence()) return Certificate::fail("segal-equivalence", Json{{"level", n}, {"report", r.to_json()}});
  }
  return Certificate::ok("tamsamani");
}

Certificate check_simpson(const TruncSimpCat& X) {
  if (auto c = check_tamsamani(X); !c) return c;
  for (int n = 2; n <= X.L; ++n) {
    auto r = equivalence_report(segal_map(X, n).S);
    if (!r.surjective_on_objects) return Certificate::fail("segal-surjective", Json{{"level", n}, {"report", r.to_json()}});
  }
  return Certificate::ok("simpson");
}

bool is_pointwise_equivalence(const SimpMap& f) {
  for (const auto& F : f.f)
    if (!equivalence_report(F).is_equivalence()) return false;
  return true;
}

// ---------------------------------------------------------------- validation

namespace {

// validate_functor is quadratic in morphisms; levels without a dense table only get typing checks.
Certificate functor_sound(const Functor& F) {
  if (F.src->dense()) return validate_functor(F);
  const FinCat& A = *F.src;
  const FinCat& B = *F.tgt;
  if (static_cast<int>(F.obj.size()) != A.num_objects() || static_cast<int>(F.mor.size()) != A.num_morphisms())
    return Certificate::fail("functor-shape", nullptr);
  for (int m = 0; m < A.num_morphisms(); ++m)
    if (F.mor[m] < 0 || B.dom(F.mor[m]) != F.obj[A.dom(m)] || B.cod(F.mor[m]) != F.obj[A.cod(m)])
      return Certificate::fail("functor-dom-cod", Json{{"morphism", A.morphism_id(m)}});
  for (int a = 0; a < A.num_objects(); ++a)
    if (F.mor[A.identity(a)] != B.identity(F.obj[a])) return Certificate::fail("functor-identity", Json{{"object", A.object_id(a)}});
  return Certificate::ok();
}

using Step = std::pair<char, int>;

std::string word_name(const std::vector<Step>& w) {
  std::string s;
  for (auto it = w.rbegin(); it != w.rend(); ++it) s += std::string(1, it->first) + std::to_string(it->second);
  return s.empty() ? "id" : s;
}

struct Relation {
  int n;                        // source level
  std::vector<Step> lhs, rhs;   // applied left to right
  std::string name;
};

// All defining relations of the simplicial category whose words stay within [0, L].
std::vector<Relation> relations(int L) {
  std::vector<Relation> out;
  for (int n = 2; n <= L; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) out.push_back({n, {{'d', j}, {'d', i}}, {{'d', i}, {'d', j - 1}}, ""});
  for (int n = 0; n + 2 <= L; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i) out.push_back({n, {{'s', j}, {'s', i}}, {{'s', i}, {'s', j + 1}}, ""});
  for (int n = 0; n + 1 <= L; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        if (i < j) {
          if (n >= 1) out.push_back({n, {{'s', j}, {'d', i}}, {{'d', i}, {'s', j - 1}}, ""});
        } else if (i == j || i == j + 1) {
          out.push_back({n, {{'s', j}, {'d', i}}, {}, ""});
        } else {
          out.push_back({n, {{'s', j}, {'d', i}}, {{'d', i - 1}, {'s', j}}, ""});
        }
      }
  for (auto& r : out) r.name = word_name(r.lhs) + " = " + word_name(r.rhs);
  return out;
}

template <class Pick>
int run_word(const TruncSimpCat& X, int n, const std::vector<Step>& w, int x, Pick pick) {
  for (auto [k, i] : w) {
    if (k == 'd') x = pick(X.d(n--, i))[x];
    else x = pick(X.s(n++, i))[x];
  }
  return x;
}

const std::vector<int>& objs(const Functor& F) { return F.obj; }
const std::vector<int>& mors(const Functor& F) { return F.mor; }

}  // namespace

Certificate validate_simplicial(const TruncSimpCat& X) {
  if (X.L < 0 || X.L > 4) return Certificate::fail("shape", "truncation level must be in 0..4");
  if (static_cast<int>(X.level.size()) != X.L + 1) return Certificate::fail("shape", "level count");
  for (int n = 1; n <= X.L; ++n) {
    if (static_cast<int>(X.face[n].size()) != n + 1) return Certificate::fail("shape", Json{{"faces", n}});
    for (int i = 0; i <= n; ++i) {
      const Functor& F = X.d(n, i);
      if (F.src != X.level[n] || F.tgt != X.level[n - 1]) return Certificate::fail("shape", Json{{"face", {n, i}}});
      if (auto c = functor_sound(F); !c)
        return Certificate::fail("face-functor", Json{{"level", n}, {"index", i}, {"law", c.law}, {"witness", c.witness}});
    }
  }
  for (int n = 0; n < X.L; ++n) {
    if (static_cast<int>(X.degen[n].size()) != n + 1) return Certificate::fail("shape", Json{{"degeneracies", n}});
    for (int i = 0; i <= n; ++i) {
      const Functor& F = X.s(n, i);
      if (F.src != X.level[n] || F.tgt != X.level[n + 1]) return Certificate::fail("shape", Json{{"degeneracy", {n, i}}});
      if (auto c = functor_sound(F); !c)
        return Certificate::fail("degeneracy-functor",
                                 Json{{"level", n}, {"index", i}, {"law", c.law}, {"witness", c.witness}});
    }
  }
  for (const auto& r : relations(X.L)) {
    const FinCat& C = X.X(r.n);
    for (int x = 0; x < C.num_objects(); ++x)
      if (run_word(X, r.n, r.lhs, x, objs) != run_word(X, r.n, r.rhs, x, objs))
        return Certificate::fail(r.name, Json{{"level", r.n}, {"object", C.object_id(x)}});
    for (int m = 0; m < C.num_morphisms(); ++m)
      if (run_word(X, r.n, r.lhs, m, mors) != run_word(X, r.n, r.rhs, m, mors))
        return Certificate::fail(r.name, Json{{"level", r.n}, {"morphism", C.morphism_id(m)}});
  }
  return Certificate::ok();
}

Certificate validate_simp_map(const SimpMap& f) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  if (X.L != Y.L || static_cast<int>(f.f.size()) != X.L + 1) return Certificate::fail("shape", "level count");
  for (int n = 0; n <= X.L; ++n) {
    if (f.f[n].src != X.level[n] || f.f[n].tgt != Y.level[n]) return Certificate::fail("shape", Json{{"level", n}});
    if (auto c = functor_sound(f.f[n]); !c)
      return Certificate::fail("level-functor", Json{{"level", n}, {"law", c.law}, {"witness", c.witness}});
  }
  for (int n = 1; n <= X.L; ++n)
    for (int i = 0; i <= n; ++i) {
      const Functor &dx = X.d(n, i), &dy = Y.d(n, i);
      for (int x = 0; x < X.X(n).num_objects(); ++x)
        if (f.f[n - 1].obj[dx.obj[x]] != dy.obj[f.f[n].obj[x]])
          return Certificate::fail("commutes-face", Json{{"level", n}, {"index", i}, {"object", X.X(n).object_id(x)}});
      for (int m = 0; m < X.X(n).num_morphisms(); ++m)
        if (f.f[n - 1].mor[dx.mor[m]] != dy.mor[f.f[n].mor[m]])
          return Certificate::fail("commutes-face", Json{{"level", n}, {"index", i}, {"morphism", X.X(n).morphism_id(m)}});
    }
  for (int n = 0; n < X.L; ++n)
    for (int i = 0; i <= n; ++i) {
      const Functor &sx = X.s(n, i), &sy = Y.s(n, i);
      for (int x = 0; x < X.X(n).num_objects(); ++x)
        if (f.f[n + 1].obj[sx.obj[x]] != sy.obj[f.f[n].obj[x]])
          return Certificate::fail("commutes-degeneracy",
                                   Json{{"level", n}, {"index", i}, {"object", X.X(n).object_id(x)}});
      for (int m = 0; m < X.X(n).num_morphisms(); ++m)
        if (f.f[n + 1].mor[sx.mor[m]] != sy.mor[f.f[n].mor[m]])
          return Certificate::fail("commutes-degeneracy",
                                   Json{{"level", n}, {"index", i}, {"morphism", X.X(n).morphism_id(m)}});
    }
  return Certificate::ok();
}

int pasted_iso(const PseudoSimpMap& f, int n, const std::vector<std::pair<char, int>>& ops, int x) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  int acc = Y.X(n).identity(f.f[n].obj[x]);
  int lvl = n;
  for (auto [k, i] : ops) {
    if (k == 'd') {
      int moved = Y.d(lvl, i).mor[acc];
      acc = Y.X(lvl - 1).compose(f.fd[lvl][i][x], moved);
      x = X.d(lvl, i).obj[x];
      --lvl;
    } else {
      int moved = Y.s(lvl, i).mor[acc];
      acc = Y.X(lvl + 1).compose(f.fs[lvl][i][x], moved);
      x = X.s(lvl, i).obj[x];
      ++lvl;
    }
    if (acc < 0) throw InternalError("pasted_iso: isos do not compose");
  }
  return acc;
}

namespace {

Certificate check_iso_family(const PseudoSimpMap& f, char kind) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  const auto& fam = kind == 'd' ? f.fd : f.fs;
  const std::string tag = kind == 'd' ? "face" : "degeneracy";
  for (int n = 0; n <= X.L; ++n) {
    const int lo = kind == 'd' ? 1 : 0;
    const int hi = kind == 'd' ? X.L : X.L - 1;
    if (n < lo || n > hi) continue;
    const int n2 = kind == 'd' ? n - 1 : n + 1;
    if (static_cast<int>(fam.size()) <= n || static_cast<int>(fam[n].size()) != n + 1)
      return Certificate::fail("shape", Json{{tag + "-isos", n}});
    const FinCat& Xn = X.X(n);
    const FinCat& T = Y.X(n2);
    for (int i = 0; i <= n; ++i) {
      const Functor& ox = kind == 'd' ? X.d(n, i) : X.s(n, i);
      const Functor& oy = kind == 'd' ? Y.d(n, i) : Y.s(n, i);
      const auto& c = fam[n][i];
      if (static_cast<int>(c.size()) != Xn.num_objects()) return Certificate::fail("shape", Json{{tag + "-isos", n}});
      for (int x = 0; x < Xn.num_objects(); ++x) {
        Json w{{"operator", std::string(1, kind) + std::to_string(i)}, {"level", n}, {"object", Xn.object_id(x)}};
        if (c[x] < 0 || c[x] >= T.num_morphisms() || T.dom(c[x]) != oy.obj[f.f[n].obj[x]] ||
            T.cod(c[x]) != f.f[n2].obj[ox.obj[x]])
          return Certificate::fail("pseudo-iso-typed", w);
        if (!T.is_iso(c[x])) return Certificate::fail("pseudo-iso-invertible", w);
      }
      for (int m = 0; m < Xn.num_morphisms(); ++m) {
        int lhs = T.compose(f.f[n2].mor[ox.mor[m]], c[Xn.dom(m)]);
        int rhs = T.compose(c[Xn.cod(m)], oy.mor[f.f[n].mor[m]]);
        if (lhs != rhs)
          return Certificate::fail("pseudo-naturality", Json{{"operator", std::string(1, kind) + std::to_string(i)},
                                                             {"level", n}, {"morphism", Xn.morphism_id(m)}});
      }
    }
  }
  return Certificate::ok();
}

}  // namespace

Certificate validate_pseudo_map(const PseudoSimpMap& f) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  if (X.L != Y.L || static_cast<int>(f.f.size()) != X.L + 1) return Certificate::fail("shape", "level count");
  if (static_cast<int>(f.fd.size()) != X.L + 1 || static_cast<int>(f.fs.size()) != X.L + 1)
    return Certificate::fail("shape", "iso table count");
  for (int n = 0; n <= X.L; ++n) {
    if (f.f[n].src != X.level[n] || f.f[n].tgt != Y.level[n]) return Certificate::fail("shape", Json{{"level", n}});
    if (auto c = functor_sound(f.f[n]); !c)
      return Certificate::fail("level-functor", Json{{"level", n}, {"law", c.law}, {"witness", c.witness}});
  }
  if (auto c = check_iso_family(f, 'd'); !c) return c;
  if (auto c = check_iso_family(f, 's'); !c) return c;
  for (const auto& r : relations(X.L)) {
    const FinCat& C = X.X(r.n);
    for (int x = 0; x < C.num_objects(); ++x) {
      int a = pasted_iso(f, r.n, r.lhs, x);
      int b = pasted_iso(f, r.n, r.rhs, x);
      if (a != b) return Certificate::fail("pseudo-coherence", Json{{"relation", r.name}, {"level", r.n}, {"object", C.object_id(x)}});
    }
  }
  if (f.normal)
    for (int n = 0; n < X.L; ++n)
      for (int i = 0; i <= n; ++i)
        for (int x = 0; x < X.X(n).num_objects(); ++x)
          if (!Y.X(n + 1).is_identity(f.fs[n][i][x]))
            return Certificate::fail("normality", Json{{"operator", "s" + std::to_string(i)}, {"level", n},
                                                       {"object", X.X(n).object_id(x)}});
  return Certificate::ok();
}

Certificate validate_modification(const PseudoSimpMap& f, const PseudoSimpMap& g, const Modification& m) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  if (g.src != f.src || g.tgt != f.tgt) throw InputError("modification: maps are not parallel");
  if (static_cast<int>(m.comp.size()) != X.L + 1) return Certificate::fail("shape", "level count");
  for (int n = 0; n <= X.L; ++n) {
    const FinCat& Xn = X.X(n);
    const FinCat& T = Y.X(n);
    const auto& c = m.comp[n];
    if (static_cast<int>(c.size()) != Xn.num_objects()) return Certificate::fail("shape", Json{{"level", n}});
    for (int x = 0; x < Xn.num_objects(); ++x)
      if (c[x] < 0 || c[x] >= T.num_morphisms() || T.dom(c[x]) != f.f[n].obj[x] || T.cod(c[x]) != g.f[n].obj[x])
        return Certificate::fail("modification-typed", Json{{"level", n}, {"object", Xn.object_id(x)}});
    for (int a = 0; a < Xn.num_morphisms(); ++a)
      if (T.compose(g.f[n].mor[a], c[Xn.dom(a)]) != T.compose(c[Xn.cod(a)], f.f[n].mor[a]))
        return Certificate::fail("modification-naturality", Json{{"level", n}, {"morphism", Xn.morphism_id(a)}});
  }
  for (int n = 1; n <= X.L; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < X.X(n).num_objects(); ++x) {
        const FinCat& T = Y.X(n - 1);
        int lhs = T.compose(g.fd[n][i][x], Y.d(n, i).mor[m.comp[n][x]]);
        int rhs = T.compose(m.comp[n - 1][X.d(n, i).obj[x]], f.fd[n][i][x]);
        if (lhs != rhs)
          return Certificate::fail("modification-square",
                                   Json{{"operator", "d" + std::to_string(i)}, {"level", n}, {"object", X.X(n).object_id(x)}});
      }
  for (int n = 0; n < X.L; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < X.X(n).num_objects(); ++x) {
        const FinCat& T = Y.X(n + 1);
        int lhs = T.compose(g.fs[n][i][x], Y.s(n, i).mor[m.comp[n][x]]);
        int rhs = T.compose(m.comp[n + 1][X.s(n, i).obj[x]], f.fs[n][i][x]);
        if (lhs != rhs)
          return Certificate::fail("modification-square",
                                   Json{{"operator", "s" + std::to_string(i)}, {"level", n}, {"object", X.X(n).object_id(x)}});
      }
  return Certificate::ok();
}

bool modification_invertible(const PseudoSimpMap& f, const Modification& m) {
  for (int n = 0; n <= f.src->L; ++n)
    for (int c : m.comp[n])
      if (!f.tgt->X(n).is_iso(c)) return false;
  return true;
}

// ---------------------------------------------------------------- maps

SimpMap identity_simp_map(const SimpPtr& X) {
  SimpMap f{X, X, {}};
  for (int n = 0; n <= X->L; ++n) f.f.push_back(identity_functor(X->level[n]));
  return f;
}

SimpMap compose_simp_maps(const SimpMap& g, const SimpMap& f) {
  if (f.f.size() != g.f.size()) throw InputError("compose_simp_maps: truncation levels differ");
  SimpMap h{f.src, g.tgt, {}};
  for (std::size_t n = 0; n < f.f.size(); ++n) h.f.push_back(compose_functors(g.f[n], f.f[n]));
  return h;
}

bool simp_maps_equal(const SimpMap& f, const SimpMap& g) {
  if (f.f.size() != g.f.size()) return false;
  for (std::size_t n = 0; n < f.f.size(); ++n)
    if (!functors_equal(f.f[n], g.f[n])) return false;
  return true;
}

PseudoSimpMap as_pseudo(const SimpMap& f) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  PseudoSimpMap p{f.src, f.tgt, f.f, {}, {}, true};
  p.fd.resize(X.L + 1);
  p.fs.resize(X.L + 1);
  for (int n = 1; n <= X.L; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<int> c(X.X(n).num_objects());
      for (int x = 0; x < X.X(n).num_objects(); ++x) c[x] = Y.X(n - 1).identity(f.f[n - 1].obj[X.d(n, i).obj[x]]);
      p.fd[n].push_back(std::move(c));
    }
  for (int n = 0; n < X.L; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<int> c(X.X(n).num_objects());
      for (int x = 0; x < X.X(n).num_objects(); ++x) c[x] = Y.X(n + 1).identity(f.f[n + 1].obj[X.s(n, i).obj[x]]);
      p.fs[n].push_back(std::move(c));
    }
  return p;
}

bool pseudo_maps_equal(const PseudoSimpMap& f, const PseudoSimpMap& g) {
  if (f.f.size() != g.f.size() || f.fd != g.fd || f.fs != g.fs || f.normal != g.normal) return false;
  for (std::size_t n = 0; n < f.f.size(); ++n)
    if (!functors_equal(f.f[n], g.f[n])) return false;
  return true;
}

bool is_strict(const PseudoSimpMap& f) {
  for (int n = 0; n <= f.src->L; ++n) {
    if (n >= 1)
      for (auto& c : f.fd[n])
        for (int m : c)
          if (!f.tgt->X(n - 1).is_identity(m)) return false;
    if (n < f.src->L)
      for (auto& c : f.fs[n])
        for (int m : c)
          if (!f.tgt->X(n + 1).is_identity(m)) return false;
  }
  return true;
}

SimpMap strict_part(const PseudoSimpMap& f) { return SimpMap{f.src, f.tgt, f.f}; }

// ---------------------------------------------------------------- face lookup

FaceIndex::FaceIndex(const TruncSimpCat& X, int n) : n_(n) {
  if (n < 1 || n > X.L) throw InputError("FaceIndex: level out of range");
  if (n == X.L && X.top_family && X.top_cosk == n - 1) {
    fam_ = X.top_family;
    lower_ = X.level[n - 1];
    return;
  }
  const FinCat& C = X.X(n);
  std::vector<int> key(n + 1);
  for (int x = 0; x < C.num_objects(); ++x) {
    for (int i = 0; i <= n; ++i) key[i] = X.d(n, i).obj[x];
    if (!obj_.emplace(key, x).second) injective_ = false;
  }
  for (int m = 0; m < C.num_morphisms(); ++m) {
    for (int i = 0; i <= n; ++i) key[i] = X.d(n, i).mor[m];
    if (!mor_.emplace(key, m).second) injective_ = false;
  }
}

int FaceIndex::object(const std::vector<int>& faces) const {
  if (fam_) {
    // family components run over subsets in lexicographic order: missing n, n-1, ..., 0
    std::vector<int> fam(faces.rbegin(), faces.rend());
    return fam_->find_object(fam);
  }
  if (!injective_) throw InternalError("FaceIndex: faces do not determine objects");
  auto it = obj_.find(faces);
  return it == obj_.end() ? -1 : it->second;
}

int FaceIndex::morphism(const std::vector<int>& faces) const {
  if (fam_) {
    std::vector<int> doms, cods;
    for (int m : faces) {
      doms.push_back(lower_->dom(m));
      cods.push_back(lower_->cod(m));
    }
    std::vector<int> fam(faces.rbegin(), faces.rend());
    return fam_->find_morphism(object(doms), object(cods), fam);
  }
  if (!injective_) throw InternalError("FaceIndex: faces do not determine morphisms");
  auto it = mor_.find(faces);
  return it == mor_.end() ? -1 : it->second;
}

}  // namespace nervekit
