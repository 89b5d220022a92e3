#include "nervekit/pstrans.hpp"

#include <bit>
#include <random>

namespace nervekit {

std::vector<unsigned> decoration_faces(int n) {
  std::vector<unsigned> out;
  for (int k = 2; k <= n; ++k) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
      if (static_cast<int>(pick.size()) == k) {
        unsigned m = 0;
        for (int v : pick) m |= 1u << v;
        out.push_back(m);
        return;
      }
      for (int v = from; v <= n; ++v) {
        pick.push_back(v);
        rec(v + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

int PlusLevel::find(const Decorated& d) const {
  auto it = index.find(d);
  return it == index.end() ? -1 : it->second;
}

namespace {

int position(const std::vector<unsigned>& faces, unsigned mask) {
  for (int k = 0; k < static_cast<int>(faces.size()); ++k)
    if (faces[k] == mask) return k;
  throw InternalError("decoration face not found");
}

int checked_inverse(const FinCat& C, int m) {
  int r = C.inverse(m);
  if (r < 0) throw InternalError("expected an isomorphism");
  return r;
}

int checked_compose(const FinCat& C, int g, int f) {
  int r = C.compose(g, f);
  if (r < 0) throw InternalError("morphisms do not compose");
  return r;
}

unsigned insert_vertex(unsigned T, int i) {
  unsigned low = T & ((1u << i) - 1);
  return low | ((T & ~((1u << i) - 1)) << 1);
}

struct PlusBuilder {
  const TruncSimpCat& X;
  std::vector<std::vector<unsigned>> faces;

  explicit PlusBuilder(const TruncSimpCat& X_) : X(X_) {
    for (int n = 0; n <= 3; ++n) faces.push_back(decoration_faces(n));
  }

  Decorated trivial(int n, int base) const {
    Decorated d{base, {}};
    for (unsigned S : faces[n]) {
      int k = std::popcount(S) - 1;
      d.u.push_back(X.X(k).identity(act_object(X, n, subset_operator(S), base)));
    }
    return d;
  }

  // d_i of a decorated n-simplex, n >= 2; for n == 2 only base is meaningful
  Decorated face(int n, const Decorated& P, int i) const {
    const unsigned Si = ((1u << (n + 1)) - 1) & ~(1u << i);
    const int us = P.u[position(faces[n], Si)];
    const FinCat& Xl = X.X(n - 1);
    Decorated d{Xl.cod(us), {}};
    for (unsigned T : faces[n - 1]) {
      const int k = std::popcount(T) - 1;
      const int uS = P.u[position(faces[n], insert_vertex(T, i))];
      int moved = act_morphism(X, n - 1, subset_operator(T), us);
      d.u.push_back(checked_compose(X.X(k), uS, checked_inverse(X.X(k), moved)));
    }
    return d;
  }

  // s_i of a decorated m-simplex (m >= 1)
  Decorated degen(int m, const Decorated& P, int i) const {
    Decorated d{X.s(m, i).obj[P.base], {}};
    const Operator sigma = degeneracy_operator(m, i);
    for (unsigned S : faces[m + 1]) {
      const int k = std::popcount(S) - 1;
      Operator theta = compose_operators(sigma, subset_operator(S));
      unsigned I = 0;
      for (int v : theta) I |= 1u << v;
      const int sizeI = std::popcount(I);
      if (sizeI == 1 || sizeI == m + 1) {
        d.u.push_back(X.X(k).identity(act_object(X, m + 1, subset_operator(S), d.base)));
        continue;
      }
      Operator eps;
      for (int v : theta) eps.push_back(std::popcount(I & ((1u << v) - 1)));
      d.u.push_back(act_morphism(X, sizeI - 1, eps, P.u[position(faces[m], I)]));
    }
    return d;
  }

  std::string cell_id(int n, const Decorated& d) const {
    std::string id = X.X(n).object_id(d.base);
    bool plain = true;
    for (std::size_t k = 0; k < d.u.size(); ++k)
      plain = plain && X.X(std::popcount(faces[n][k]) - 1).is_identity(d.u[k]);
    if (plain) return id;
    id += "[";
    for (std::size_t k = 0; k < d.u.size(); ++k)
      id += (k ? "," : "") + X.X(std::popcount(faces[n][k]) - 1).morphism_id(d.u[k]);
    return id + "]";
  }

  CatPtr build_level(int n, PlusLevel& L) const {
    const CatPtr Xn = X.level[n];
    const int N = static_cast<int>(L.cells.size());
    FinCat::Spec s;
    for (int P = 0; P < N; ++P) {
      s.objects.push_back(cell_id(n, L.cells[P]));
      L.index[L.cells[P]] = P;
    }
    L.offset.assign(static_cast<std::size_t>(N) * N + 1, 0);
    for (int P = 0; P < N; ++P)
      for (int Q = 0; Q < N; ++Q) {
        L.offset[static_cast<std::size_t>(P) * N + Q] = static_cast<std::int64_t>(L.phi.size());
        for (int f : Xn->hom(L.cells[P].base, L.cells[Q].base)) {
          L.phi.push_back(f);
          s.dom.push_back(P);
          s.cod.push_back(Q);
        }
      }
    L.offset.back() = static_cast<std::int64_t>(L.phi.size());
    for (int P = 0; P < N; ++P)
      s.identity.push_back(static_cast<int>(L.offset[static_cast<std::size_t>(P) * N + P] +
                                            Xn->hom_position(Xn->identity(L.cells[P].base))));
    auto phi = std::make_shared<std::vector<int>>(L.phi);
    auto off = std::make_shared<std::vector<std::int64_t>>(L.offset);
    auto dom = std::make_shared<std::vector<int>>(s.dom);
    auto cod = std::make_shared<std::vector<int>>(s.cod);
    auto plain = std::make_shared<std::vector<char>>(N);
    for (int P = 0; P < N; ++P) (*plain)[P] = s.objects[P] == Xn->object_id(L.cells[P].base);
    auto names = std::make_shared<std::vector<std::string>>(s.objects);
    s.compose = [Xn, phi, off, dom, cod, N](int g, int f) {
      if ((*cod)[f] != (*dom)[g]) return -1;
      int c = Xn->compose((*phi)[g], (*phi)[f]);
      return static_cast<int>((*off)[static_cast<std::size_t>((*dom)[f]) * N + (*cod)[g]] + Xn->hom_position(c));
    };
    s.id_fn = [Xn, phi, dom, cod, plain, names](int m) {
      const std::string base = Xn->morphism_id((*phi)[m]);
      if ((*plain)[(*dom)[m]] && (*plain)[(*cod)[m]]) return base;
      return "(" + (*names)[(*dom)[m]] + "|" + base + "|" + (*names)[(*cod)[m]] + ")";
    };
    return make_category(std::move(s));
  }

  int morphism_in(const PlusLevel& L, int P, int Q, int f, int n) const {
    const std::size_t N = L.cells.size();
    return static_cast<int>(L.offset[P * N + Q] + X.X(n).hom_position(f));
  }
};

}  // namespace

PlusResult plus_construction(const SimpPtr& Xp, const Caps& caps) {
  const TruncSimpCat& X = *Xp;
  if (X.L < 2) throw InputError("plus_construction: the input must reach level 2");
  if (!is_discrete(X.X(0))) throw InputError("plus_construction: X_0 must be discrete");
  PlusBuilder B(X);
  const int L = std::min(X.L, 3);
  PlusResult R;
  R.X = Xp;
  R.levels.resize(L + 1);

  // level 2: every decoration
  {
    PlusLevel& P2 = R.levels[2];
    const FinCat& X1 = X.X(1);
    for (int xi = 0; xi < X.X(2).num_objects(); ++xi) {
      std::vector<std::vector<int>> choices;
      for (unsigned S : B.faces[2]) {
        std::vector<int> isos;
        for (int m : X1.out(act_object(X, 2, subset_operator(S), xi)))
          if (X1.is_iso(m)) isos.push_back(m);
        choices.push_back(isos);
      }
      Decorated d{xi, std::vector<int>(choices.size())};
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == choices.size()) {
          if (static_cast<std::int64_t>(P2.cells.size()) >= caps.max_level_objects)
            throw ResourceError("plus_construction: level 2 exceeds the object cap");
          P2.cells.push_back(d);
          return;
        }
        for (int m : choices[k]) {
          d.u[k] = m;
          rec(k + 1);
        }
      };
      rec(0);
    }
  }
  // level 3: j(X_3) and the degeneracies of level 2
  if (L >= 3) {
    PlusLevel& P3 = R.levels[3];
    std::map<Decorated, int> seen;
    auto add = [&](const Decorated& d) {
      if (seen.emplace(d, static_cast<int>(P3.cells.size())).second) P3.cells.push_back(d);
    };
    for (int T = 0; T < X.X(3).num_objects(); ++T) add(B.trivial(3, T));
    for (int i = 0; i <= 2; ++i)
      for (const auto& d : R.levels[2].cells) add(B.degen(2, d, i));
    if (static_cast<std::int64_t>(P3.cells.size()) > caps.max_level_objects)
      throw ResourceError("plus_construction: level 3 exceeds the object cap");
  }

  auto Pl = std::make_shared<TruncSimpCat>();
  Pl->L = L;
  Pl->level = {X.level[0], X.level[1]};
  for (int n = 2; n <= L; ++n) Pl->level.push_back(B.build_level(n, R.levels[n]));
  Pl->face.resize(L + 1);
  Pl->degen.resize(L);
  Pl->face[1] = X.face[1];
  Pl->degen[0] = X.degen[0];
  for (int n = 2; n <= L; ++n) {
    const PlusLevel& Ln = R.levels[n];
    for (int i = 0; i <= n; ++i) {
      const unsigned Si = ((1u << (n + 1)) - 1) & ~(1u << i);
      const int k = position(B.faces[n], Si);
      Functor F{Pl->level[n], Pl->level[n - 1], {}, {}};
      for (const auto& P : Ln.cells) {
        Decorated d = B.face(n, P, i);
        F.obj.push_back(n == 2 ? d.base : R.levels[n - 1].find(d));
        if (F.obj.back() < 0) throw InternalError("plus_construction: face leaves the construction");
      }
      const FinCat& C = Pl->X(n);
      const FinCat& Xl = X.X(n - 1);
      for (int m = 0; m < C.num_morphisms(); ++m) {
        const int uP = Ln.cells[C.dom(m)].u[k], uQ = Ln.cells[C.cod(m)].u[k];
        int f = checked_compose(Xl, uQ, checked_compose(Xl, X.d(n, i).mor[Ln.phi[m]], checked_inverse(Xl, uP)));
        F.mor.push_back(n == 2 ? f : B.morphism_in(R.levels[n - 1], F.obj[C.dom(m)], F.obj[C.cod(m)], f, n - 1));
      }
      Pl->face[n].push_back(std::move(F));
    }
  }
  for (int m = 1; m < L; ++m) {
    const FinCat& C = Pl->X(m);
    for (int i = 0; i <= m; ++i) {
      Functor F{Pl->level[m], Pl->level[m + 1], {}, {}};
      for (int a = 0; a < C.num_objects(); ++a) {
        Decorated src = m == 1 ? Decorated{a, {}} : R.levels[m].cells[a];
        F.obj.push_back(R.levels[m + 1].find(B.degen(m, src, i)));
        if (F.obj.back() < 0) throw InternalError("plus_construction: degeneracy leaves the construction");
      }
      for (int e = 0; e < C.num_morphisms(); ++e) {
        int base = m == 1 ? e : R.levels[m].phi[e];
        F.mor.push_back(B.morphism_in(R.levels[m + 1], F.obj[C.dom(e)], F.obj[C.cod(e)], X.s(m, i).mor[base], m + 1));
      }
      Pl->degen[m].push_back(std::move(F));
    }
  }
  R.plus = Pl;

  // j, p
  SimpPtr Xt = Xp;
  if (X.L > L) Xt = std::make_shared<TruncSimpCat>(truncate(X, L));
  R.X = Xt;
  R.j = SimpMap{Xt, Pl, {}};
  R.p = PseudoSimpMap{Pl, Xt, {}, {}, {}, true};
  for (int n = 0; n <= L; ++n) {
    if (n < 2) {
      R.j.f.push_back(identity_functor(X.level[n]));
      R.p.f.push_back(identity_functor(X.level[n]));
      continue;
    }
    const PlusLevel& Ln = R.levels[n];
    Functor J{Xt->level[n], Pl->level[n], {}, {}};
    for (int x = 0; x < X.X(n).num_objects(); ++x) J.obj.push_back(Ln.find(B.trivial(n, x)));
    for (int f = 0; f < X.X(n).num_morphisms(); ++f)
      J.mor.push_back(B.morphism_in(Ln, J.obj[X.X(n).dom(f)], J.obj[X.X(n).cod(f)], f, n));
    Functor Pn{Pl->level[n], Xt->level[n], {}, Ln.phi};
    for (const auto& d : Ln.cells) Pn.obj.push_back(d.base);
    R.j.f.push_back(std::move(J));
    R.p.f.push_back(std::move(Pn));
  }
  R.p.fd.resize(L + 1);
  R.p.fs.resize(L + 1);
  for (int n = 1; n <= L; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<int> c;
      if (n == 1) {
        for (int x = 0; x < X.X(1).num_objects(); ++x) c.push_back(X.X(0).identity(X.d(1, i).obj[x]));
      } else {
        const int k = position(B.faces[n], ((1u << (n + 1)) - 1) & ~(1u << i));
        for (const auto& d : R.levels[n].cells) c.push_back(d.u[k]);
      }
      R.p.fd[n].push_back(std::move(c));
    }
  for (int n = 0; n < L; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<int> c;
      for (int a = 0; a < Pl->X(n).num_objects(); ++a)
        c.push_back(X.X(n + 1).identity(R.p.f[n + 1].obj[Pl->s(n, i).obj[a]]));
      R.p.fs[n].push_back(std::move(c));
    }

  Json levels = Json::array();
  R.report = Certificate::ok("plus", nullptr);
  auto fail = [&](const std::string& law, Json w) {
    if (R.report) R.report = Certificate::fail(law, std::move(w));
  };
  if (auto c = validate_simplicial(*Pl); !c) fail("plus-simplicial", c.to_json());
  if (auto c = validate_simp_map(R.j); !c) fail("plus-j", c.to_json());
  if (auto c = validate_pseudo_map(R.p); !c) fail("plus-p", c.to_json());
  for (int n = 0; n <= L; ++n) {
    if (!functors_equal(compose_functors(R.p.f[n], R.j.f[n]), identity_functor(Xt->level[n])))
      fail("plus-pj", Json{{"level", n}});
    bool eq = equivalence_report(R.j.f[n]).is_equivalence();
    if (!eq) fail("plus-j-equivalence", Json{{"level", n}});
    levels.push_back(Json{{"level", n}, {"objects", Pl->X(n).num_objects()}, {"morphisms", Pl->X(n).num_morphisms()},
                          {"j_equivalence", eq}});
  }
  if (R.report) R.report.witness = Json{{"levels", levels}};
  return R;
}

Json plus_to_json(const PlusResult& P) { return Json{{"construction", "plus"}, {"source", simp_to_json(*P.X)}}; }

bool is_plus_json(const Json& j) { return j.is_object() && j.contains("construction"); }

PlusResult plus_from_json(const Json& j, const Caps& caps) {
  if (!j.is_object() || j.size() != 2 || j.value("construction", "") != "plus" || !j.contains("source"))
    throw InputError("plus: expected {\"construction\": \"plus\", \"source\": ...}");
  return plus_construction(std::make_shared<TruncSimpCat>(simp_from_json(j["source"], caps)), caps);
}

namespace {

// The nerve 2-simplex obtained from xi by conjugating its edges with
// u01, u02, u12 (level-1 morphisms out of its faces).
int conjugated_cell(const NerveResult& N, int xi, int u01, int u02, int u12) {
  const FinBicat& B = *N.B;
  const NerveCell& c = N.cells[2][xi];
  const TupleCategory& T1 = *N.tuples[1];
  const FinCat& X1 = N.X->X(1);
  NerveCell out;
  out.v = c.v;
  out.b = {N.cells[1][X1.cod(u01)].b[0], N.cells[1][X1.cod(u02)].b[0], N.cells[1][X1.cod(u12)].b[0]};
  const int A = c.v[0], Bo = c.v[1], C = c.v[2];
  const FinCat& H = B.hom(A, C);
  int whisk = B.c2(A, Bo, C, T1.row(u12)[0], T1.row(u01)[0]);
  int beta = checked_compose(H, T1.row(u02)[0], checked_compose(H, c.beta[0], checked_inverse(H, whisk)));
  out.beta = {beta};
  int r = N.find_cell(2, out);
  if (r < 0) throw InternalError("conjugated 2-simplex is not in the nerve");
  return r;
}

// Level-2 nerve morphism dom -> cod whose faces d_0, d_1, d_2 are the given
// level-1 morphisms.
int nerve_morphism2(const NerveResult& N, int dom, int cod, const std::vector<int>& faces) {
  const TupleCategory& T1 = *N.tuples[1];
  const int row[3] = {T1.row(faces[2])[0], T1.row(faces[1])[0], T1.row(faces[0])[0]};
  int m = N.tuples[2]->find(dom, cod, row);
  if (m < 0) throw InternalError("no level-2 nerve morphism with these faces");
  return m;
}

}  // namespace

Retraction coflexible_retraction(const NerveResult& N, const PlusResult& P) {
  if (!N.X->nerve) throw InputError("coflexible_retraction: the target is not a 2-nerve");
  const TruncSimpCat& X = *P.X;
  const TruncSimpCat& Pl = *P.plus;
  if (X.L > N.X->L) throw InputError("coflexible_retraction: levels do not match");
  Retraction R;
  R.r = SimpMap{P.plus, P.X, {}};
  R.r.f.push_back(identity_functor(X.level[0]));
  R.r.f.push_back(identity_functor(X.level[1]));
  {
    const PlusLevel& L2 = P.levels[2];
    Functor F{Pl.level[2], X.level[2], {}, {}};
    for (const auto& d : L2.cells) F.obj.push_back(conjugated_cell(N, d.base, d.u[0], d.u[1], d.u[2]));
    const FinCat& C = Pl.X(2);
    for (int m = 0; m < C.num_morphisms(); ++m) {
      std::vector<int> faces;
      for (int i = 0; i <= 2; ++i) faces.push_back(Pl.d(2, i).mor[m]);
      F.mor.push_back(nerve_morphism2(N, F.obj[C.dom(m)], F.obj[C.cod(m)], faces));
    }
    R.r.f.push_back(std::move(F));
  }
  for (int n = 3; n <= X.L; ++n) {
    auto F = induced_by_faces(Pl, X, R.r.f[n - 1], n);
    if (!F) {
      R.report = Certificate::fail("retraction-3-simplex", Json{{"level", n}});
      return R;
    }
    R.r.f.push_back(*F);
  }
  if (auto c = validate_simp_map(R.r); !c) R.report = Certificate::fail("retraction-simplicial", c.to_json());
  else if (!simp_maps_equal(compose_simp_maps(R.r, P.j), identity_simp_map(P.X)))
    R.report = Certificate::fail("retraction-rj", nullptr);
  else
    R.report = Certificate::ok("retraction", Json{{"decorated_2_simplices", Pl.X(2).num_objects()},
                                                  {"decorated_3_simplices", X.L >= 3 ? Pl.X(3).num_objects() : 0}});
  return R;
}

PseudoSimpMap transport(const PseudoSimpMap& f, const Modification& psi) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  PseudoSimpMap g{f.src, f.tgt, {}, f.fd, f.fs, false};
  for (int n = 0; n <= X.L; ++n) {
    const FinCat& T = Y.X(n);
    const FinCat& S = X.X(n);
    Functor F{X.level[n], Y.level[n], std::vector<int>(S.num_objects()), std::vector<int>(S.num_morphisms())};
    for (int x = 0; x < S.num_objects(); ++x) F.obj[x] = T.cod(psi.comp[n][x]);
    for (int m = 0; m < S.num_morphisms(); ++m)
      F.mor[m] = checked_compose(T, psi.comp[n][S.cod(m)],
                                 checked_compose(T, f.f[n].mor[m], checked_inverse(T, psi.comp[n][S.dom(m)])));
    g.f.push_back(std::move(F));
  }
  for (int n = 1; n <= X.L; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < X.X(n).num_objects(); ++x) {
        const FinCat& T = Y.X(n - 1);
        int back = checked_inverse(T, Y.d(n, i).mor[psi.comp[n][x]]);
        g.fd[n][i][x] = checked_compose(T, psi.comp[n - 1][X.d(n, i).obj[x]], checked_compose(T, f.fd[n][i][x], back));
      }
  for (int n = 0; n < X.L; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < X.X(n).num_objects(); ++x) {
        const FinCat& T = Y.X(n + 1);
        int back = checked_inverse(T, Y.s(n, i).mor[psi.comp[n][x]]);
        g.fs[n][i][x] = checked_compose(T, psi.comp[n + 1][X.s(n, i).obj[x]], checked_compose(T, f.fs[n][i][x], back));
      }
  g.normal = true;
  for (int n = 0; n < X.L && g.normal; ++n)
    for (const auto& c : g.fs[n])
      for (int m : c)
        if (!Y.X(n + 1).is_identity(m)) g.normal = false;
  return g;
}

PseudoSimpMap random_decoration(const PseudoSimpMap& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  Modification psi;
  for (int n = 0; n <= X.L; ++n) {
    const FinCat& T = Y.X(n);
    std::vector<int> c;
    for (int x = 0; x < X.X(n).num_objects(); ++x) {
      int y = f.f[n].obj[x];
      std::vector<int> isos;
      if (n > 0)
        for (int m : T.out(y))
          if (T.is_iso(m)) isos.push_back(m);
      if (isos.empty()) isos.push_back(T.identity(y));
      c.push_back(isos[std::uniform_int_distribution<std::size_t>(0, isos.size() - 1)(rng)]);
    }
    psi.comp.push_back(std::move(c));
  }
  return transport(f, psi);
}

Normalized normalize_pseudo(const PseudoSimpMap& f) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  if (!X.nerve) throw InputError("normalize_pseudo: the source is not a 2-nerve");
  Normalized R;
  R.psi.comp.resize(X.L + 1);
  for (int x = 0; x < X.X(0).num_objects(); ++x) R.psi.comp[0].push_back(Y.X(0).identity(f.f[0].obj[x]));
  for (int n = 0; n < X.L; ++n) {
    const FinCat& T = Y.X(n + 1);
    std::vector<int> c(X.X(n + 1).num_objects(), -1);
    for (int i = 0; i <= n; ++i)
      for (int y = 0; y < X.X(n).num_objects(); ++y) {
        const int x = X.s(n, i).obj[y];
        int v = checked_compose(T, Y.s(n, i).mor[R.psi.comp[n][y]], checked_inverse(T, f.fs[n][i][y]));
        if (c[x] < 0) c[x] = v;
        else if (c[x] != v) throw InternalError("normalize_pseudo: degenerate simplex with two different corrections");
      }
    for (int x = 0; x < static_cast<int>(c.size()); ++x)
      if (c[x] < 0) c[x] = T.identity(f.f[n + 1].obj[x]);
    R.psi.comp[n + 1] = std::move(c);
  }
  R.g = transport(f, R.psi);
  if (auto c = validate_pseudo_map(R.g); !c) R.report = Certificate::fail("normalize-map", c.to_json());
  else if (!R.g.normal) R.report = Certificate::fail("normalize-normality", nullptr);
  else if (auto m = validate_modification(f, R.g, R.psi); !m) R.report = Certificate::fail("normalize-modification", m.to_json());
  else if (!modification_invertible(f, R.psi)) R.report = Certificate::fail("normalize-invertible", nullptr);
  else R.report = Certificate::ok("normalize");
  return R;
}

Strictified strictify(const PseudoSimpMap& f, const NerveResult& NB) {
  const TruncSimpCat& X = *f.src;
  const TruncSimpCat& Y = *f.tgt;
  if (!X.nerve || !Y.nerve) throw InputError("strictify: both ends must be 2-nerves");
  if (f.tgt != NB.X) throw InputError("strictify: target does not match the nerve");
  if (X.L < 2) throw InputError("strictify: the source must reach level 2");
  Normalized N = normalize_pseudo(f);
  Strictified R;
  if (!N.report) {
    R.report = N.report;
    return R;
  }
  const PseudoSimpMap& g = N.g;
  R.h = SimpMap{f.src, f.tgt, {g.f[0], g.f[1]}};
  {
    Functor F{X.level[2], Y.level[2], {}, {}};
    for (int x = 0; x < X.X(2).num_objects(); ++x)
      F.obj.push_back(conjugated_cell(NB, g.f[2].obj[x], g.fd[2][2][x], g.fd[2][1][x], g.fd[2][0][x]));
    const FinCat& C = X.X(2);
    for (int m = 0; m < C.num_morphisms(); ++m) {
      std::vector<int> faces;
      for (int i = 0; i <= 2; ++i) faces.push_back(g.f[1].mor[X.d(2, i).mor[m]]);
      F.mor.push_back(nerve_morphism2(NB, F.obj[C.dom(m)], F.obj[C.cod(m)], faces));
    }
    R.h.f.push_back(std::move(F));
  }
  for (int n = 3; n <= X.L; ++n) {
    auto F = induced_by_faces(X, Y, R.h.f[n - 1], n);
    if (!F) {
      R.report = Certificate::fail("strictify-filler", Json{{"level", n}});
      return R;
    }
    R.h.f.push_back(*F);
  }
  // chi : g -> h, determined by its faces
  Modification chi;
  chi.comp.resize(X.L + 1);
  for (int n = 0; n <= 1; ++n)
    for (int x = 0; x < X.X(n).num_objects(); ++x) chi.comp[n].push_back(Y.X(n).identity(g.f[n].obj[x]));
  for (int n = 2; n <= X.L; ++n) {
    std::optional<FaceIndex> fi;
    if (n > 2) fi.emplace(Y, n);
    const FinCat& T = Y.X(n - 1);
    for (int x = 0; x < X.X(n).num_objects(); ++x) {
      std::vector<int> faces;
      for (int i = 0; i <= n; ++i)
        faces.push_back(checked_compose(T, chi.comp[n - 1][X.d(n, i).obj[x]], g.fd[n][i][x]));
      int m = n > 2 ? fi->morphism(faces) : nerve_morphism2(NB, g.f[2].obj[x], R.h.f[2].obj[x], faces);
      if (m < 0) throw InternalError("strictify: comparison component has no filler");
      chi.comp[n].push_back(m);
    }
  }
  for (int n = 0; n <= X.L; ++n) {
    std::vector<int> c;
    for (int x = 0; x < X.X(n).num_objects(); ++x)
      c.push_back(checked_compose(Y.X(n), chi.comp[n][x], N.psi.comp[n][x]));
    R.comparison.comp.push_back(std::move(c));
  }
  PseudoSimpMap hp = as_pseudo(R.h);
  if (auto c = validate_simp_map(R.h); !c) R.report = Certificate::fail("strictify-map", c.to_json());
  else if (auto m = validate_modification(f, hp, R.comparison); !m)
    R.report = Certificate::fail("strictify-modification", m.to_json());
  else if (!modification_invertible(f, R.comparison)) R.report = Certificate::fail("strictify-invertible", nullptr);
  else R.report = Certificate::ok("strictify");
  return R;
}

}  // namespace nervekit
