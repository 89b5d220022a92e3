#include "nervekit/nerve.hpp"

#include <algorithm>
#include <functional>

namespace nervekit {

int pair_index(int n, int i, int j) {
  int idx = 0;
  for (int p = 0; p < i; ++p) idx += n - p;
  return idx + (j - i - 1);
}

int triple_index(int n, int i, int j, int k) {
  int idx = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        if (a == i && b == j && c == k) return idx;
        ++idx;
      }
  return -1;
}

std::vector<std::pair<int, int>> nerve_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back({i, j});
  return out;
}

std::vector<std::array<int, 3>> nerve_triples(int n) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) out.push_back({i, j, k});
  return out;
}

namespace {

std::vector<int> cell_key(const NerveCell& c) {
  std::vector<int> k = c.v;
  k.insert(k.end(), c.b.begin(), c.b.end());
  k.insert(k.end(), c.beta.begin(), c.beta.end());
  return k;
}

// theta^* of a cell of level n; theta : [m] -> [n] monotone.
NerveCell pull_cell(const FinBicat& B, const NerveCell& c, int n, const Operator& theta) {
  const int m = static_cast<int>(theta.size()) - 1;
  NerveCell out;
  for (int p = 0; p <= m; ++p) out.v.push_back(c.v[theta[p]]);
  for (auto [p, q] : nerve_pairs(m)) {
    int a = theta[p], b = theta[q];
    out.b.push_back(a == b ? B.units[c.v[a]] : c.b[pair_index(n, a, b)]);
  }
  for (auto [p, q, r] : nerve_triples(m)) {
    int a = theta[p], b = theta[q], d = theta[r];
    int A = c.v[a], C = c.v[d];
    if (a == b && b == d) out.beta.push_back(B.lu(A, A, B.units[A]));
    else if (a == b) out.beta.push_back(B.ru(A, C, c.b[pair_index(n, b, d)]));
    else if (b == d) out.beta.push_back(B.lu(A, C, c.b[pair_index(n, a, b)]));
    else out.beta.push_back(c.beta[triple_index(n, a, b, d)]);
  }
  return out;
}

std::vector<int> pull_row(const FinBicat& B, const NerveCell& dom, const int* row, int n, const Operator& theta) {
  const int m = static_cast<int>(theta.size()) - 1;
  std::vector<int> out;
  for (auto [p, q] : nerve_pairs(m)) {
    int a = theta[p], b = theta[q];
    if (a == b) {
      int A = dom.v[a];
      out.push_back(B.id2(A, A, B.units[A]));
    } else {
      out.push_back(row[pair_index(n, a, b)]);
    }
  }
  return out;
}

bool cocycle_holds(const FinBicat& B, const NerveCell& c, int n, int p, int q, int r, int s) {
  const int P = c.v[p], Q = c.v[q], R = c.v[r], S = c.v[s];
  const int bpq = c.b[pair_index(n, p, q)], bqr = c.b[pair_index(n, q, r)], brs = c.b[pair_index(n, r, s)];
  const FinCat& H = B.hom(P, S);
  int lhs = H.compose(c.beta[triple_index(n, p, r, s)], B.c2(P, R, S, B.id2(R, S, brs), c.beta[triple_index(n, p, q, r)]));
  int rhs = H.compose(c.beta[triple_index(n, p, q, s)],
                      H.compose(B.c2(P, Q, S, c.beta[triple_index(n, q, r, s)], B.id2(P, Q, bpq)),
                                B.a(P, Q, R, S, brs, bqr, bpq)));
  return lhs >= 0 && lhs == rhs;
}

std::vector<NerveCell> enumerate_cells(const FinBicat& B, int n, const Caps& caps) {
  std::vector<NerveCell> out;
  const int nb = B.n();
  if (n == 0) {
    for (int A = 0; A < nb; ++A) out.push_back({{A}, {}, {}});
    return out;
  }
  const auto pairs = nerve_pairs(n);
  const auto triples = nerve_triples(n);
  enum Kind { Vertex, Edge, Tri };
  struct Step {
    Kind kind;
    int i, j, k;
  };
  std::vector<Step> steps{{Vertex, 0, 0, 0}};
  for (int k = 1; k <= n; ++k) {
    steps.push_back({Vertex, k, 0, 0});
    for (int i = k - 1; i >= 0; --i) {
      steps.push_back({Edge, i, k, 0});
      for (int j = i + 1; j < k; ++j) steps.push_back({Tri, i, j, k});
    }
  }
  NerveCell cur{std::vector<int>(n + 1, -1), std::vector<int>(pairs.size(), -1), std::vector<int>(triples.size(), -1)};
  std::int64_t work = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (++work > caps.max_search) throw ResourceError("nerve enumeration exceeded the search cap");
    if (s == steps.size()) {
      if (static_cast<std::int64_t>(out.size()) >= caps.max_level_objects)
        throw ResourceError("nerve level exceeds the object cap");
      out.push_back(cur);
      return;
    }
    const Step& st = steps[s];
    if (st.kind == Vertex) {
      for (int A = 0; A < nb; ++A) {
        cur.v[st.i] = A;
        rec(s + 1);
      }
      return;
    }
    if (st.kind == Edge) {
      const int i = st.i, k = st.j;
      const FinCat& H = B.hom(cur.v[i], cur.v[k]);
      std::vector<int> cand;
      if (k - i >= 2)
        cand.push_back(B.c1(cur.v[i], cur.v[k - 1], cur.v[k], cur.b[pair_index(n, k - 1, k)], cur.b[pair_index(n, i, k - 1)]));
      for (int f = 0; f < H.num_objects(); ++f)
        if (cand.empty() || f != cand[0]) cand.push_back(f);
      for (int f : cand) {
        cur.b[pair_index(n, i, k)] = f;
        rec(s + 1);
      }
      return;
    }
    const int i = st.i, j = st.j, k = st.k;
    const int A = cur.v[i], C = cur.v[k];
    const FinCat& H = B.hom(A, C);
    int src = B.c1(A, cur.v[j], C, cur.b[pair_index(n, j, k)], cur.b[pair_index(n, i, j)]);
    int tgt = cur.b[pair_index(n, i, k)];
    std::vector<int> cand;
    if (src == tgt) cand.push_back(H.identity(src));
    for (int m : H.hom(src, tgt))
      if (cand.empty() || m != cand[0]) cand.push_back(m);
    for (int m : cand) {
      cur.beta[triple_index(n, i, j, k)] = m;
      bool ok = true;
      for (int jp = i + 1; jp < j && ok; ++jp) ok = cocycle_holds(B, cur, n, i, jp, j, k);
      if (ok) rec(s + 1);
    }
    cur.beta[triple_index(n, i, j, k)] = -1;
  };
  rec(0);
  return out;
}

std::string cell_id(const FinBicat& B, const NerveCell& c, int n) {
  if (n == 0) return B.objects[c.v[0]];
  if (n == 1) return B.cell1_id(c.v[0], c.v[1], c.b[0]);
  std::string s = "(";
  auto pairs = nerve_pairs(n);
  for (std::size_t e = 0; e < pairs.size(); ++e)
    s += (e ? "," : "") + B.cell1_id(c.v[pairs[e].first], c.v[pairs[e].second], c.b[e]);
  s += ";";
  auto triples = nerve_triples(n);
  for (std::size_t t = 0; t < triples.size(); ++t)
    s += (t ? "," : "") + B.cell2_id(c.v[triples[t][0]], c.v[triples[t][2]], c.beta[t]);
  return s + ")";
}

struct LevelData {
  std::vector<NerveCell> cells;
  std::vector<int> rank;
};

TupleCatPtr build_level(const BicatPtr& Bp, int n, const std::shared_ptr<const LevelData>& data,
                        const std::map<std::vector<int>, int>& lookup, std::vector<int>& rank_out, const Caps& caps) {
  const FinBicat& B = *Bp;
  const auto& cells = data->cells;
  const auto pairs = nerve_pairs(n);
  const auto triples = nerve_triples(n);
  const int w = static_cast<int>(pairs.size());
  TupleCategory::Input in;
  in.width = w;
  for (const auto& c : cells) {
    in.objects.push_back(cell_id(B, c, n));
    std::vector<int> idr;
    for (int e = 0; e < w; ++e) idr.push_back(B.id2(c.v[pairs[e].first], c.v[pairs[e].second], c.b[e]));
    in.identity_rows.push_back(idr);
  }
  for (int x = 0; x < static_cast<int>(cells.size()); ++x) {
    const NerveCell& c = cells[x];
    std::vector<int> phi(w);
    NerveCell cod = c;
    int rank = 0;
    std::function<void(int)> edges = [&](int e) {
      if (e == w) {
        std::function<void(int)> tris = [&](int t) {
          if (t == static_cast<int>(triples.size())) {
            auto it = lookup.find(cell_key(cod));
            if (it == lookup.end()) return;
            if (static_cast<std::int64_t>(in.dom.size()) >= caps.max_level_morphisms)
              throw ResourceError("nerve level exceeds the morphism cap");
            in.dom.push_back(x);
            in.cod.push_back(it->second);
            in.rows.insert(in.rows.end(), phi.begin(), phi.end());
            rank_out.push_back(rank++);
            return;
          }
          auto [i, j, k] = triples[t];
          const int A = c.v[i], M = c.v[j], C = c.v[k];
          const FinCat& H = B.hom(A, C);
          const int pik = pair_index(n, i, k), pij = pair_index(n, i, j), pjk = pair_index(n, j, k);
          int lhs = H.compose(phi[pik], c.beta[t]);
          int whisk = B.c2(A, M, C, phi[pjk], phi[pij]);
          int src = B.c1(A, M, C, cod.b[pjk], cod.b[pij]);
          for (int g : H.hom(src, cod.b[pik]))
            if (H.compose(g, whisk) == lhs) {
              cod.beta[t] = g;
              tris(t + 1);
            }
        };
        tris(0);
        return;
      }
      const FinCat& H = B.hom(c.v[pairs[e].first], c.v[pairs[e].second]);
      for (int m : H.out(c.b[e])) {
        phi[e] = m;
        cod.b[e] = H.cod(m);
        edges(e + 1);
      }
    };
    edges(0);
  }
  auto rows = std::make_shared<std::vector<int>>(in.rows);
  auto ranks = std::make_shared<std::vector<int>>(rank_out);
  auto ids = std::make_shared<std::vector<std::string>>(in.objects);
  auto doms = std::make_shared<std::vector<int>>(in.dom);
  in.id_fn = [Bp, n, data, rows, ranks, ids, doms](int m) -> std::string {
    if (n == 1) {
      const NerveCell& c = data->cells[(*doms)[m]];
      return Bp->cell2_id(c.v[0], c.v[1], (*rows)[m]);
    }
    return (*ids)[(*doms)[m]] + "#" + std::to_string((*ranks)[m]);
  };
  in.compose = [Bp, data, n](int pos, int dom, int g, int f) {
    const NerveCell& c = data->cells[dom];
    auto pr = nerve_pairs(n)[pos];
    return Bp->hom(c.v[pr.first], c.v[pr.second]).compose(g, f);
  };
  return TupleCategory::build(std::move(in));
}

Functor operator_functor(const NerveResult& N, int n, const Operator& theta) {
  const FinBicat& B = *N.B;
  const int m = static_cast<int>(theta.size()) - 1;
  const FinCat& S = N.X->X(n);
  const FinCat& T = N.X->X(m);
  Functor F{N.X->level[n], N.X->level[m], std::vector<int>(S.num_objects()), std::vector<int>(S.num_morphisms())};
  for (int x = 0; x < S.num_objects(); ++x) {
    F.obj[x] = N.find_cell(m, pull_cell(B, N.cells[n][x], n, theta));
    if (F.obj[x] < 0) throw InternalError("nerve: operator image is not a normal homomorphism");
  }
  for (int a = 0; a < S.num_morphisms(); ++a) {
    if (n == 0 || m == 0) {
      F.mor[a] = T.identity(F.obj[S.dom(a)]);
      continue;
    }
    auto row = pull_row(B, N.cells[n][S.dom(a)], N.tuples[n]->row(a), n, theta);
    F.mor[a] = N.tuples[m]->find(F.obj[S.dom(a)], F.obj[S.cod(a)], row.data());
    if (F.mor[a] < 0) throw InternalError("nerve: operator image is not an icon");
  }
  return F;
}

}  // namespace

int NerveResult::find_cell(int n, const NerveCell& c) const {
  if (n >= static_cast<int>(lookup.size())) return -1;
  auto it = lookup[n].find(cell_key(c));
  return it == lookup[n].end() ? -1 : it->second;
}

NerveResult two_nerve(const BicatPtr& Bp, const Caps& caps, int L, bool direct_level4) {
  const FinBicat& B = *Bp;
  if (L < 0 || L > 4) throw InputError("two_nerve: truncation level must be in 0..4");
  if (B.n() > caps.max_objects) throw ResourceError("two_nerve: too many objects for the configured caps");
  for (int A = 0; A < B.n(); ++A)
    for (int C = 0; C < B.n(); ++C)
      if (B.hom(A, C).num_morphisms() > caps.max_hom_morphisms)
        throw ResourceError("two_nerve: hom category exceeds the configured caps");
  NerveResult N;
  N.B = Bp;
  N.direct_level4 = direct_level4 && L == 4;
  const int top = L == 4 && !N.direct_level4 ? 3 : L;
  auto X = std::make_shared<TruncSimpCat>();
  X->L = top;
  X->nerve = true;
  N.tuples.assign(top + 1, nullptr);
  for (int n = 0; n <= top; ++n) {
    auto data = std::make_shared<LevelData>();
    data->cells = enumerate_cells(B, n, caps);
    std::map<std::vector<int>, int> lookup;
    for (int x = 0; x < static_cast<int>(data->cells.size()); ++x) lookup.emplace(cell_key(data->cells[x]), x);
    if (n == 0) {
      X->level.push_back(discrete_category(B.objects));
    } else {
      N.tuples[n] = build_level(Bp, n, data, lookup, data->rank, caps);
      X->level.push_back(N.tuples[n]->cat());
    }
    N.cells.push_back(data->cells);
    N.lookup.push_back(std::move(lookup));
  }
  N.X = X;
  X->face.resize(top + 1);
  X->degen.resize(top + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) X->face[n].push_back(operator_functor(N, n, face_operator(n, i)));
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i) X->degen[n].push_back(operator_functor(N, n, degeneracy_operator(n, i)));
  if (top < L) {
    auto Y = std::make_shared<TruncSimpCat>(extend_by_coskeleton(*X, 3, caps));
    Y->nerve = true;
    N.X = Y;
  }
  return N;
}

Certificate compare_level4(const NerveResult& D, const NerveResult& C) {
  const TruncSimpCat& X = *D.X;
  const TruncSimpCat& Y = *C.X;
  if (X.L != 4 || Y.L != 4) throw InputError("compare_level4: both nerves must reach level 4");
  for (int n = 0; n <= 3; ++n)
    if (category_to_json(X.X(n)) != category_to_json(Y.X(n)))
      return Certificate::fail("lower-levels-equal", Json{{"level", n}});
  // Rewire Y's lower levels onto X's so the comparison is a simplicial map.
  SimpMap f{D.X, C.X, {}};
  for (int n = 0; n <= 3; ++n) {
    Functor I = identity_functor(X.level[n]);
    I.tgt = Y.level[n];
    f.f.push_back(I);
  }
  auto top = induced_by_faces(X, Y, f.f[3], 4);
  if (!top) return Certificate::fail("level4-faces", "a direct 4-simplex has no coskeletal counterpart");
  f.f.push_back(*top);
  if (auto c = validate_simp_map(f); !c) return c;
  if (!is_levelwise_bijective(f)) return Certificate::fail("level4-bijective", Json{{"objects", X.X(4).num_objects()},
                                                                                    {"cosk_objects", Y.X(4).num_objects()}});
  return Certificate::ok("level4-identification",
                         Json{{"objects", X.X(4).num_objects()}, {"morphisms", X.X(4).num_morphisms()}});
}

namespace {

bool has_cells(const NerveResult& N, int n) { return n < static_cast<int>(N.cells.size()); }

}  // namespace

SimpMap nerve_map(const BicatHom& F, const NerveResult& NA, const NerveResult& NB) {
  const FinBicat& B = *NB.B;
  if (NA.X->L != NB.X->L) throw InputError("nerve_map: truncation levels differ");
  SimpMap out{NA.X, NB.X, {}};
  for (int n = 0; n <= NA.X->L; ++n) {
    const FinCat& S = NA.X->X(n);
    if (!(has_cells(NA, n) && has_cells(NB, n))) {
      auto G = induced_by_faces(*NA.X, *NB.X, out.f[n - 1], n);
      if (!G) throw InternalError("nerve_map: image has no filler");
      out.f.push_back(*G);
      continue;
    }
    Functor G{NA.X->level[n], NB.X->level[n], std::vector<int>(S.num_objects()), std::vector<int>(S.num_morphisms())};
    const auto pairs = nerve_pairs(n);
    const auto triples = nerve_triples(n);
    for (int x = 0; x < S.num_objects(); ++x) {
      const NerveCell& c = NA.cells[n][x];
      NerveCell d;
      for (int v : c.v) d.v.push_back(F.obj[v]);
      for (std::size_t e = 0; e < pairs.size(); ++e) d.b.push_back(F.F1(c.v[pairs[e].first], c.v[pairs[e].second], c.b[e]));
      for (std::size_t t = 0; t < triples.size(); ++t) {
        auto [i, j, k] = triples[t];
        const int P = c.v[i], Q = c.v[j], R = c.v[k];
        int phi = F.ph(P, Q, R, c.b[pair_index(n, j, k)], c.b[pair_index(n, i, j)]);
        d.beta.push_back(B.hom(F.obj[P], F.obj[R]).compose(F.F2(P, R, c.beta[t]), phi));
      }
      G.obj[x] = NB.find_cell(n, d);
      if (G.obj[x] < 0) throw InternalError("nerve_map: image is not a normal homomorphism");
    }
    for (int m = 0; m < S.num_morphisms(); ++m) {
      if (n == 0) {
        G.mor[m] = NB.X->X(0).identity(G.obj[S.dom(m)]);
        continue;
      }
      const NerveCell& c = NA.cells[n][S.dom(m)];
      const int* row = NA.tuples[n]->row(m);
      std::vector<int> r;
      for (std::size_t e = 0; e < pairs.size(); ++e) r.push_back(F.F2(c.v[pairs[e].first], c.v[pairs[e].second], row[e]));
      G.mor[m] = NB.tuples[n]->find(G.obj[S.dom(m)], G.obj[S.cod(m)], r.data());
      if (G.mor[m] < 0) throw InternalError("nerve_map: image is not an icon");
    }
    out.f.push_back(std::move(G));
  }
  return out;
}

Modification nerve_icon(const Icon& a, const NerveResult& NA, const NerveResult& NB) {
  SimpMap f = nerve_map(a.F, NA, NB);
  SimpMap g = nerve_map(a.G, NA, NB);
  const FinBicat& A = *NA.B;
  Modification out;
  for (int n = 0; n <= NA.X->L; ++n) {
    const FinCat& S = NA.X->X(n);
    const FinCat& T = NB.X->X(n);
    std::vector<int> comp(S.num_objects());
    if (n == 0) {
      for (int x = 0; x < S.num_objects(); ++x) comp[x] = T.identity(f.f[0].obj[x]);
    } else if (has_cells(NA, n) && has_cells(NB, n)) {
      const auto pairs = nerve_pairs(n);
      for (int x = 0; x < S.num_objects(); ++x) {
        const NerveCell& c = NA.cells[n][x];
        std::vector<int> r;
        for (std::size_t e = 0; e < pairs.size(); ++e)
          r.push_back(a.comp[A.hidx(c.v[pairs[e].first], c.v[pairs[e].second])][c.b[e]]);
        comp[x] = NB.tuples[n]->find(f.f[n].obj[x], g.f[n].obj[x], r.data());
        if (comp[x] < 0) throw InternalError("nerve_icon: component is not an icon");
      }
    } else {
      FaceIndex idx(*NB.X, n);
      std::vector<int> k(n + 1);
      for (int x = 0; x < S.num_objects(); ++x) {
        for (int i = 0; i <= n; ++i) k[i] = out.comp[n - 1][NA.X->d(n, i).obj[x]];
        comp[x] = idx.morphism(k);
        if (comp[x] < 0) throw InternalError("nerve_icon: component has no filler");
      }
    }
    out.comp.push_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------- characterization

Certificate check_characterization(const TruncSimpCat& X, const Caps& caps) {
  Json verdicts, details = Json::object();
  std::string first_fail;
  auto record = [&](const std::string& verdict, const Certificate& c, const std::string& law) {
    if (!verdicts.contains(verdict) || verdicts[verdict].get<bool>()) verdicts[verdict] = c.pass;
    if (!c.pass) {
      details[law] = c.witness;
      if (first_fail.empty()) first_fail = law;
    }
  };
  if (X.L >= 4) {
    record("3-coskeletal", is_coskeletal(X, 3, caps), "3-coskeletal");
  } else {
    verdicts["3-coskeletal"] = true;
    details["3-coskeletal-note"] = "vacuous below level 4";
  }
  bool discrete = is_discrete(X.X(0));
  record("X0-discrete", discrete ? Certificate::ok() : Certificate::fail("X0-discrete", Json{{"objects", X.X(0).num_objects()}}),
         "X0-discrete");
  if (discrete) {
    auto t = check_tamsamani(X);
    record("segal-equivalence", t, "segal-equivalence");
    if (X.L >= 2) record("difs", is_discrete_isofibration(cosk_matching(X, 1, 2, caps).c), "c2-dif");
    if (X.L >= 3 && verdicts.value("difs", true))
      record("difs", is_discrete_isofibration(cosk_matching(X, 2, 3, caps).c), "c3-dif");
    else if (X.L >= 3)
      details["c3-dif-note"] = "not evaluated after c2 failed";
    if (!verdicts.contains("difs")) verdicts["difs"] = true;
  } else {
    verdicts["segal-equivalence"] = false;
    verdicts["difs"] = false;
  }
  Json w{{"verdicts", verdicts}, {"details", details}};
  if (first_fail.empty()) return Certificate::ok("characterization", w);
  return Certificate::fail(first_fail, w);
}

// ---------------------------------------------------------------- fully faithful probe

Json ProbeCounts::to_json() const {
  return Json{{"homs", homs}, {"simp_maps", simp_maps}, {"icons", icons}, {"transformations", transformations}};
}

Certificate fully_faithful_probe(const BicatPtr& A, const BicatPtr& B, const Caps& caps, ProbeCounts* counts) {
  NerveResult NA = two_nerve(A, caps, 3), NB = two_nerve(B, caps, 3);
  auto homs = enumerate_normal_homs(A, B, caps);
  auto maps = enumerate_simp_maps(NA.X, NB.X, caps);
  ProbeCounts pc;
  pc.homs = static_cast<std::int64_t>(homs.size());
  pc.simp_maps = static_cast<std::int64_t>(maps.size());
  auto done = [&](Certificate c) {
    if (counts) *counts = pc;
    c.witness["counts"] = pc.to_json();
    return c;
  };
  std::vector<int> hit(maps.size(), -1);
  std::vector<SimpMap> images;
  for (std::size_t h = 0; h < homs.size(); ++h) {
    SimpMap f = nerve_map(homs[h], NA, NB);
    int found = -1;
    for (std::size_t m = 0; m < maps.size(); ++m)
      if (simp_maps_equal(f, maps[m])) found = static_cast<int>(m);
    if (found < 0) return done(Certificate::fail("nerve-map-not-enumerated", Json{{"hom", hom_to_json(homs[h])}}));
    if (hit[found] >= 0) return done(Certificate::fail("nerve-map-not-injective", Json{{"homs", {hit[found], h}}}));
    hit[found] = static_cast<int>(h);
    images.push_back(std::move(f));
  }
  for (std::size_t m = 0; m < maps.size(); ++m)
    if (hit[m] < 0) return done(Certificate::fail("nerve-map-not-surjective", Json{{"map", simp_map_to_json(maps[m])}}));
  for (std::size_t p = 0; p < homs.size(); ++p)
    for (std::size_t q = 0; q < homs.size(); ++q) {
      auto trans = enumerate_simp_transformations(images[p], images[q], caps);
      pc.transformations += static_cast<std::int64_t>(trans.size());
      std::vector<Icon> icons;
      if (homs[p].obj == homs[q].obj) icons = enumerate_icons(homs[p], homs[q], caps);
      pc.icons += static_cast<std::int64_t>(icons.size());
      std::vector<char> seen(trans.size(), 0);
      for (const auto& ic : icons) {
        Modification m = nerve_icon(ic, NA, NB);
        int found = -1;
        for (std::size_t t = 0; t < trans.size(); ++t)
          if (trans[t].comp == m.comp) found = static_cast<int>(t);
        if (found < 0 || seen[found])
          return done(Certificate::fail("nerve-icon-not-bijective", Json{{"icon", icon_to_json(ic)}}));
        seen[found] = 1;
      }
      if (icons.size() != trans.size())
        return done(Certificate::fail("nerve-icon-not-surjective", Json{{"pair", {p, q}}, {"icons", icons.size()},
                                                                        {"transformations", trans.size()}}));
    }
  return done(Certificate::ok("fully-faithful", Json::object()));
}

}  // namespace nervekit
