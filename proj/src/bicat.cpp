#include "nervekit/bicat.hpp"

#include <algorithm>
#include <functional>

namespace nervekit {

// ---------------------------------------------------------------- FinBicat

void FinBicat::index() {
  cells1_.clear();
  cells2_.clear();
  for (int A = 0; A < n(); ++A)
    for (int B = 0; B < n(); ++B) {
      const FinCat& H = hom(A, B);
      for (int f = 0; f < H.num_objects(); ++f)
        if (!cells1_.emplace(H.object_id(f), Cell{A, B, f}).second)
          throw InputError("duplicate 1-cell id '" + H.object_id(f) + "'");
      for (int m = 0; m < H.num_morphisms(); ++m)
        if (!cells2_.emplace(H.morphism_id(m), Cell{A, B, m}).second)
          throw InputError("duplicate 2-cell id '" + H.morphism_id(m) + "'");
    }
}

std::optional<FinBicat::Cell> FinBicat::find_1cell(const std::string& id) const {
  auto it = cells1_.find(id);
  if (it == cells1_.end()) return std::nullopt;
  return it->second;
}

std::optional<FinBicat::Cell> FinBicat::find_2cell(const std::string& id) const {
  auto it = cells2_.find(id);
  if (it == cells2_.end()) return std::nullopt;
  return it->second;
}

BicatPtr finalize_bicat(FinBicat B) {
  B.index();
  return std::make_shared<const FinBicat>(std::move(B));
}

// ---------------------------------------------------------------- validation

namespace {

std::string hkey(const FinBicat& B, int A, int C) { return B.objects[A] + "|" + B.objects[C]; }

Certificate check_shapes(const FinBicat& B) {
  const int n = B.n();
  auto bad = [](const std::string& what) { return Certificate::fail("shape", what); };
  if (static_cast<int>(B.homs.size()) != n * n) return bad("hom table size");
  if (static_cast<int>(B.comp.size()) != n * n * n) return bad("comp table size");
  if (static_cast<int>(B.units.size()) != n) return bad("units size");
  if (static_cast<int>(B.assoc.size()) != n * n * n * n) return bad("associator size");
  if (static_cast<int>(B.lunit.size()) != n * n || static_cast<int>(B.runit.size()) != n * n) return bad("unitor size");
  for (int A = 0; A < n; ++A)
    for (int C = 0; C < n; ++C) {
      int k = B.hidx(A, C);
      if (!B.homs[k]) return bad("missing hom " + hkey(B, A, C));
      if (static_cast<int>(B.lunit[k].size()) != B.homs[k]->num_objects() ||
          static_cast<int>(B.runit[k].size()) != B.homs[k]->num_objects())
        return bad("unitor size for " + hkey(B, A, C));
    }
  for (int A = 0; A < n; ++A)
    if (B.units[A] < 0 || B.units[A] >= B.hom(A, A).num_objects()) return bad("unit of " + B.objects[A]);
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        auto& c = B.comp[B.cidx(A, X, C)];
        if (static_cast<long>(c.obj.size()) != static_cast<long>(B.hom(X, C).num_objects()) * B.hom(A, X).num_objects() ||
            static_cast<long>(c.mor.size()) != static_cast<long>(B.hom(X, C).num_morphisms()) * B.hom(A, X).num_morphisms())
          return bad("comp size");
        for (int v : c.obj)
          if (v < 0 || v >= B.hom(A, C).num_objects()) return bad("comp entry out of range");
        for (int v : c.mor)
          if (v < 0 || v >= B.hom(A, C).num_morphisms()) return bad("comp entry out of range");
      }
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int D = 0; D < n; ++D) {
          auto& t = B.assoc[B.aidx(A, X, Y, D)];
          long want = static_cast<long>(B.hom(Y, D).num_objects()) * B.hom(X, Y).num_objects() * B.hom(A, X).num_objects();
          if (static_cast<long>(t.size()) != want) return bad("associator size");
          for (int v : t)
            if (v < 0 || v >= B.hom(A, D).num_morphisms()) return bad("associator entry out of range");
        }
  for (int k = 0; k < n * n; ++k) {
    for (int v : B.lunit[k])
      if (v < 0 || v >= B.homs[k]->num_morphisms()) return bad("unitor entry out of range");
    for (int v : B.runit[k])
      if (v < 0 || v >= B.homs[k]->num_morphisms()) return bad("unitor entry out of range");
  }
  return Certificate::ok();
}

}  // namespace

Certificate validate_bicategory(const FinBicat& B) {
  if (auto c = check_shapes(B); !c) return c;
  const int n = B.n();
  for (int A = 0; A < n; ++A)
    for (int C = 0; C < n; ++C)
      if (auto c = validate_category(B.hom(A, C)); !c)
        return Certificate::fail("hom-category", Json{{"hom", hkey(B, A, C)}, {"law", c.law}, {"witness", c.witness}});

  // composition functors
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const FinCat &HAX = B.hom(A, X), &HXC = B.hom(X, C), &HAC = B.hom(A, C);
        for (int be = 0; be < HXC.num_morphisms(); ++be)
          for (int al = 0; al < HAX.num_morphisms(); ++al) {
            int c = B.c2(A, X, C, be, al);
            if (HAC.dom(c) != B.c1(A, X, C, HXC.dom(be), HAX.dom(al)) ||
                HAC.cod(c) != B.c1(A, X, C, HXC.cod(be), HAX.cod(al)))
              return Certificate::fail("comp-typed", Json{{"beta", HXC.morphism_id(be)}, {"alpha", HAX.morphism_id(al)}});
            for (int be2 : HXC.out(HXC.cod(be)))
              for (int al2 : HAX.out(HAX.cod(al)))
                if (B.c2(A, X, C, HXC.compose(be2, be), HAX.compose(al2, al)) != HAC.compose(B.c2(A, X, C, be2, al2), c))
                  return Certificate::fail("comp-interchange",
                                           Json{{"beta", HXC.morphism_id(be)}, {"alpha", HAX.morphism_id(al)},
                                                {"beta2", HXC.morphism_id(be2)}, {"alpha2", HAX.morphism_id(al2)}});
          }
        for (int g = 0; g < HXC.num_objects(); ++g)
          for (int f = 0; f < HAX.num_objects(); ++f)
            if (B.c2(A, X, C, HXC.identity(g), HAX.identity(f)) != HAC.identity(B.c1(A, X, C, g, f)))
              return Certificate::fail("comp-identity", Json{{"g", HXC.object_id(g)}, {"f", HAX.object_id(f)}});
      }

  // unitors
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      const FinCat& H = B.hom(A, X);
      int uA = B.units[A], uX = B.units[X];
      for (int f = 0; f < H.num_objects(); ++f) {
        int l = B.lu(A, X, f), r = B.ru(A, X, f);
        if (H.dom(l) != B.c1(A, X, X, uX, f) || H.cod(l) != f)
          return Certificate::fail("lunitor-typed", Json{{"f", H.object_id(f)}});
        if (H.dom(r) != B.c1(A, A, X, f, uA) || H.cod(r) != f)
          return Certificate::fail("runitor-typed", Json{{"f", H.object_id(f)}});
        if (!H.is_iso(l)) return Certificate::fail("lunitor-invertible", Json{{"f", H.object_id(f)}});
        if (!H.is_iso(r)) return Certificate::fail("runitor-invertible", Json{{"f", H.object_id(f)}});
      }
      for (int al = 0; al < H.num_morphisms(); ++al) {
        int f = H.dom(al), f2 = H.cod(al);
        int lhs = H.compose(B.lu(A, X, f2), B.c2(A, X, X, B.hom(X, X).identity(uX), al));
        if (lhs != H.compose(al, B.lu(A, X, f)))
          return Certificate::fail("lunitor-naturality", Json{{"alpha", H.morphism_id(al)}});
        int rhs = H.compose(B.ru(A, X, f2), B.c2(A, A, X, al, B.hom(A, A).identity(uA)));
        if (rhs != H.compose(al, B.ru(A, X, f)))
          return Certificate::fail("runitor-naturality", Json{{"alpha", H.morphism_id(al)}});
      }
    }

  // associator: typing, invertibility, naturality
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int D = 0; D < n; ++D) {
          const FinCat &F1 = B.hom(A, X), &G1 = B.hom(X, Y), &H1 = B.hom(Y, D), &T = B.hom(A, D);
          for (int h = 0; h < H1.num_objects(); ++h)
            for (int g = 0; g < G1.num_objects(); ++g)
              for (int f = 0; f < F1.num_objects(); ++f) {
                int a = B.a(A, X, Y, D, h, g, f);
                int src = B.c1(A, Y, D, h, B.c1(A, X, Y, g, f));
                int tgt = B.c1(A, X, D, B.c1(X, Y, D, h, g), f);
                Json w{{"h", H1.object_id(h)}, {"g", G1.object_id(g)}, {"f", F1.object_id(f)}};
                if (T.dom(a) != src || T.cod(a) != tgt) return Certificate::fail("associator-typed", w);
                if (!T.is_iso(a)) return Certificate::fail("associator-invertible", w);
              }
          for (int ga = 0; ga < H1.num_morphisms(); ++ga)
            for (int be = 0; be < G1.num_morphisms(); ++be)
              for (int al = 0; al < F1.num_morphisms(); ++al) {
                int left = T.compose(B.a(A, X, Y, D, H1.cod(ga), G1.cod(be), F1.cod(al)),
                                     B.c2(A, Y, D, ga, B.c2(A, X, Y, be, al)));
                int right = T.compose(B.c2(A, X, D, B.c2(X, Y, D, ga, be), al),
                                      B.a(A, X, Y, D, H1.dom(ga), G1.dom(be), F1.dom(al)));
                if (left != right)
                  return Certificate::fail("associator-naturality",
                                           Json{{"gamma", H1.morphism_id(ga)}, {"beta", G1.morphism_id(be)},
                                                {"alpha", F1.morphism_id(al)}});
              }
        }

  // pentagon: f : A->X, g : X->Y, h : Y->Z, k : Z->E
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int Z = 0; Z < n; ++Z)
          for (int E = 0; E < n; ++E) {
            const FinCat &Hf = B.hom(A, X), &Hg = B.hom(X, Y), &Hh = B.hom(Y, Z), &Hk = B.hom(Z, E), &T = B.hom(A, E);
            for (int k = 0; k < Hk.num_objects(); ++k)
              for (int h = 0; h < Hh.num_objects(); ++h)
                for (int g = 0; g < Hg.num_objects(); ++g)
                  for (int f = 0; f < Hf.num_objects(); ++f) {
                    int gf = B.c1(A, X, Y, g, f), kh = B.c1(Y, Z, E, k, h), hg = B.c1(X, Y, Z, h, g);
                    int p1 = T.compose(B.a(A, X, Y, E, kh, g, f), B.a(A, Y, Z, E, k, h, gf));
                    int s1 = B.c2(A, Z, E, Hk.identity(k), B.a(A, X, Y, Z, h, g, f));
                    int s2 = B.a(A, X, Z, E, k, hg, f);
                    int s3 = B.c2(A, X, E, B.a(X, Y, Z, E, k, h, g), Hf.identity(f));
                    int p2 = T.compose(s3, T.compose(s2, s1));
                    if (p1 != p2)
                      return Certificate::fail("pentagon", Json{{"k", Hk.object_id(k)}, {"h", Hh.object_id(h)},
                                                                {"g", Hg.object_id(g)}, {"f", Hf.object_id(f)}});
                  }
          }

  // triangle and the redundant unit coherences
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const FinCat &Hf = B.hom(A, X), &Hg = B.hom(X, C), &T = B.hom(A, C);
        int uX = B.units[X], uA = B.units[A], uC = B.units[C];
        for (int g = 0; g < Hg.num_objects(); ++g)
          for (int f = 0; f < Hf.num_objects(); ++f) {
            Json w{{"g", Hg.object_id(g)}, {"f", Hf.object_id(f)}};
            int lhs = T.compose(B.c2(A, X, C, B.ru(X, C, g), Hf.identity(f)), B.a(A, X, X, C, g, uX, f));
            if (lhs != B.c2(A, X, C, Hg.identity(g), B.lu(A, X, f))) return Certificate::fail("triangle", w);
            int gf = B.c1(A, X, C, g, f);
            int l = T.compose(B.c2(A, X, C, B.lu(X, C, g), Hf.identity(f)), B.a(A, X, C, C, uC, g, f));
            if (l != B.lu(A, C, gf)) return Certificate::fail("unit-left-coherence", w);
            int r = T.compose(B.ru(A, C, gf), B.a(A, A, X, C, g, f, uA));
            if (r != B.c2(A, X, C, Hg.identity(g), B.ru(A, X, f))) return Certificate::fail("unit-right-coherence", w);
          }
      }
  for (int A = 0; A < n; ++A)
    if (B.lu(A, A, B.units[A]) != B.ru(A, A, B.units[A]))
      return Certificate::fail("unit-lambda-rho", Json{{"object", B.objects[A]}});
  return Certificate::ok();
}

namespace {

Certificate validate_hom_common(const BicatHom& F) {
  const FinBicat& S = *F.src;
  const FinBicat& T = *F.tgt;
  const int n = S.n();
  if (static_cast<int>(F.obj.size()) != n) return Certificate::fail("shape", "object map size");
  for (int o : F.obj)
    if (o < 0 || o >= T.n()) return Certificate::fail("shape", "object map out of range");
  if (static_cast<int>(F.homf.size()) != n * n || static_cast<int>(F.phi.size()) != n * n * n)
    return Certificate::fail("shape", "table sizes");
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      const Functor& H = F.homf[S.hidx(A, X)];
      if (H.src.get() != &S.hom(A, X) || H.tgt.get() != &T.hom(F.obj[A], F.obj[X]))
        return Certificate::fail("hom-functor-mismatch", Json{{"hom", hkey(S, A, X)}});
      if (auto c = validate_functor(H); !c)
        return Certificate::fail("hom-functor", Json{{"hom", hkey(S, A, X)}, {"law", c.law}, {"witness", c.witness}});
    }
  if (!F.normal()) {
    if (static_cast<int>(F.iota.size()) != n) return Certificate::fail("shape", "unit comparison size");
    for (int A = 0; A < n; ++A) {
      const FinCat& H = T.hom(F.obj[A], F.obj[A]);
      int i = F.iota[A];
      if (i < 0 || i >= H.num_morphisms() || H.dom(i) != T.units[F.obj[A]] || H.cod(i) != F.F1(A, A, S.units[A]))
        return Certificate::fail("unit-comparison-typed", Json{{"object", S.objects[A]}});
      if (!H.is_iso(i)) return Certificate::fail("unit-comparison-invertible", Json{{"object", S.objects[A]}});
    }
  }
  // comparison cells: typing, invertibility, naturality
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const FinCat &Hf = S.hom(A, X), &Hg = S.hom(X, C);
        const int FA = F.obj[A], FX = F.obj[X], FC = F.obj[C];
        const FinCat& TH = T.hom(FA, FC);
        if (static_cast<long>(F.phi[S.cidx(A, X, C)].size()) != static_cast<long>(Hg.num_objects()) * Hf.num_objects())
          return Certificate::fail("shape", "comparison table size");
        for (int g = 0; g < Hg.num_objects(); ++g)
          for (int f = 0; f < Hf.num_objects(); ++f) {
            int p = F.ph(A, X, C, g, f);
            Json w{{"g", Hg.object_id(g)}, {"f", Hf.object_id(f)}};
            if (p < 0 || p >= TH.num_morphisms() || TH.dom(p) != T.c1(FA, FX, FC, F.F1(X, C, g), F.F1(A, X, f)) ||
                TH.cod(p) != F.F1(A, C, S.c1(A, X, C, g, f)))
              return Certificate::fail("comparison-typed", w);
            if (!TH.is_iso(p)) return Certificate::fail("comparison-invertible", w);
          }
        for (int be = 0; be < Hg.num_morphisms(); ++be)
          for (int al = 0; al < Hf.num_morphisms(); ++al) {
            int lhs = TH.compose(F.ph(A, X, C, Hg.cod(be), Hf.cod(al)), T.c2(FA, FX, FC, F.F2(X, C, be), F.F2(A, X, al)));
            int rhs = TH.compose(F.F2(A, C, S.c2(A, X, C, be, al)), F.ph(A, X, C, Hg.dom(be), Hf.dom(al)));
            if (lhs != rhs)
              return Certificate::fail("comparison-naturality",
                                       Json{{"beta", Hg.morphism_id(be)}, {"alpha", Hf.morphism_id(al)}});
          }
      }
  // unit coherence (for normal homs: the comparison at an identity is the unitor composite)
  const std::string unit_law = F.normal() ? "normalization" : "unit-coherence";
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      const FinCat& Hf = S.hom(A, X);
      const int FA = F.obj[A], FX = F.obj[X];
      const FinCat& TH = T.hom(FA, FX);
      for (int f = 0; f < Hf.num_objects(); ++f) {
        int Ff = F.F1(A, X, f);
        int iX = F.normal() ? T.hom(FX, FX).identity(T.units[FX]) : F.iota[X];
        int iA = F.normal() ? T.hom(FA, FA).identity(T.units[FA]) : F.iota[A];
        int l = TH.compose(F.F2(A, X, S.lu(A, X, f)),
                           TH.compose(F.ph(A, X, X, S.units[X], f), T.c2(FA, FX, FX, iX, TH.identity(Ff))));
        if (l != T.lu(FA, FX, Ff)) return Certificate::fail(unit_law, Json{{"side", "left"}, {"f", Hf.object_id(f)}});
        int r = TH.compose(F.F2(A, X, S.ru(A, X, f)),
                           TH.compose(F.ph(A, A, X, f, S.units[A]), T.c2(FA, FA, FX, TH.identity(Ff), iA)));
        if (r != T.ru(FA, FX, Ff)) return Certificate::fail(unit_law, Json{{"side", "right"}, {"f", Hf.object_id(f)}});
      }
    }
  // cocycle: f : A->X, g : X->Y, h : Y->D
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int D = 0; D < n; ++D) {
          const FinCat &Hf = S.hom(A, X), &Hg = S.hom(X, Y), &Hh = S.hom(Y, D);
          const int FA = F.obj[A], FX = F.obj[X], FY = F.obj[Y], FD = F.obj[D];
          const FinCat& TH = T.hom(FA, FD);
          for (int h = 0; h < Hh.num_objects(); ++h)
            for (int g = 0; g < Hg.num_objects(); ++g)
              for (int f = 0; f < Hf.num_objects(); ++f) {
                int gf = S.c1(A, X, Y, g, f), hg = S.c1(X, Y, D, h, g);
                int Fh = F.F1(Y, D, h), Fg = F.F1(X, Y, g), Ff = F.F1(A, X, f);
                int lhs = TH.compose(F.F2(A, D, S.a(A, X, Y, D, h, g, f)),
                                     TH.compose(F.ph(A, Y, D, h, gf),
                                                T.c2(FA, FY, FD, T.hom(FY, FD).identity(Fh), F.ph(A, X, Y, g, f))));
                int rhs = TH.compose(F.ph(A, X, D, hg, f),
                                     TH.compose(T.c2(FA, FX, FD, F.ph(X, Y, D, h, g), T.hom(FA, FX).identity(Ff)),
                                                T.a(FA, FX, FY, FD, Fh, Fg, Ff)));
                if (lhs != rhs)
                  return Certificate::fail("cocycle", Json{{"h", Hh.object_id(h)}, {"g", Hg.object_id(g)},
                                                           {"f", Hf.object_id(f)}});
              }
        }
  return Certificate::ok();
}

}  // namespace

Certificate validate_normal_hom(const BicatHom& F) {
  if (!F.normal()) return Certificate::fail("normalization", "unit comparison cells present");
  if (static_cast<int>(F.obj.size()) == F.src->n() && static_cast<int>(F.homf.size()) == F.src->n() * F.src->n())
    for (int A = 0; A < F.src->n(); ++A)
      if (F.obj[A] >= 0 && F.obj[A] < F.tgt->n() && F.F1(A, A, F.src->units[A]) != F.tgt->units[F.obj[A]])
        return Certificate::fail("normalization", Json{{"object", F.src->objects[A]}, {"reason", "F1 != 1"}});
  return validate_hom_common(F);
}

Certificate validate_homomorphism(const BicatHom& F) { return validate_hom_common(F); }

Certificate validate_icon(const Icon& a) {
  if (a.F.obj != a.G.obj) throw InputError("icon: homomorphisms disagree on objects");
  if (a.F.src != a.G.src || a.F.tgt != a.G.tgt) throw InputError("icon: homomorphisms are not parallel");
  const FinBicat& S = *a.F.src;
  const FinBicat& T = *a.F.tgt;
  const int n = S.n();
  if (static_cast<int>(a.comp.size()) != n * n) return Certificate::fail("shape", "component table size");
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      const FinCat& H = S.hom(A, X);
      const FinCat& TH = T.hom(a.F.obj[A], a.F.obj[X]);
      const auto& c = a.comp[S.hidx(A, X)];
      if (static_cast<int>(c.size()) != H.num_objects()) return Certificate::fail("shape", "component table size");
      for (int f = 0; f < H.num_objects(); ++f)
        if (c[f] < 0 || c[f] >= TH.num_morphisms() || TH.dom(c[f]) != a.F.F1(A, X, f) || TH.cod(c[f]) != a.G.F1(A, X, f))
          return Certificate::fail("icon-typed", Json{{"f", H.object_id(f)}});
      if (A == X && !TH.is_identity(c[S.units[A]]))
        return Certificate::fail("icon-identity", Json{{"object", S.objects[A]}, {"component", TH.morphism_id(c[S.units[A]])}});
      for (int al = 0; al < H.num_morphisms(); ++al)
        if (TH.compose(a.G.F2(A, X, al), c[H.dom(al)]) != TH.compose(c[H.cod(al)], a.F.F2(A, X, al)))
          return Certificate::fail("icon-naturality", Json{{"alpha", H.morphism_id(al)}});
    }
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const FinCat &Hf = S.hom(A, X), &Hg = S.hom(X, C);
        const int FA = a.F.obj[A], FX = a.F.obj[X], FC = a.F.obj[C];
        const FinCat& TH = T.hom(FA, FC);
        for (int g = 0; g < Hg.num_objects(); ++g)
          for (int f = 0; f < Hf.num_objects(); ++f) {
            int lhs = TH.compose(a.G.ph(A, X, C, g, f),
                                 T.c2(FA, FX, FC, a.comp[S.hidx(X, C)][g], a.comp[S.hidx(A, X)][f]));
            int rhs = TH.compose(a.comp[S.hidx(A, C)][S.c1(A, X, C, g, f)], a.F.ph(A, X, C, g, f));
            if (lhs != rhs)
              return Certificate::fail("icon-square", Json{{"g", Hg.object_id(g)}, {"f", Hf.object_id(f)}});
          }
      }
  return Certificate::ok();
}

// ---------------------------------------------------------------- NHom operations

BicatHom identity_hom(const BicatPtr& B) {
  const int n = B->n();
  BicatHom F{B, B, {}, {}, {}, {}};
  for (int A = 0; A < n; ++A) F.obj.push_back(A);
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) F.homf.push_back(identity_functor(B->hom_ptr(A, X)));
  F.phi.resize(n * n * n);
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        auto& t = F.phi[B->cidx(A, X, C)];
        for (int g = 0; g < B->hom(X, C).num_objects(); ++g)
          for (int f = 0; f < B->hom(A, X).num_objects(); ++f) t.push_back(B->hom(A, C).identity(B->c1(A, X, C, g, f)));
      }
  return F;
}

Icon identity_icon(const BicatHom& F) {
  Icon a{F, F, std::vector<std::vector<int>>(F.src->n() * F.src->n())};
  for (int A = 0; A < F.src->n(); ++A)
    for (int X = 0; X < F.src->n(); ++X)
      for (int f = 0; f < F.src->hom(A, X).num_objects(); ++f)
        a.comp[F.src->hidx(A, X)].push_back(F.tgt->hom(F.obj[A], F.obj[X]).identity(F.F1(A, X, f)));
  return a;
}

BicatHom compose_normal_homs(const BicatHom& G, const BicatHom& F) {
  if (F.tgt != G.src) throw InputError("compose_normal_homs: homomorphisms are not composable");
  if (!F.normal() || !G.normal()) throw InputError("compose_normal_homs: both homomorphisms must be normal");
  const FinBicat& S = *F.src;
  const int n = S.n();
  BicatHom H{F.src, G.tgt, std::vector<int>(n), {}, std::vector<std::vector<int>>(n * n * n), {}};
  for (int A = 0; A < n; ++A) H.obj[A] = G.obj[F.obj[A]];
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      H.homf.push_back(compose_functors(G.homf[F.tgt->hidx(F.obj[A], F.obj[X])], F.homf[S.hidx(A, X)]));
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const int FA = F.obj[A], FX = F.obj[X], FC = F.obj[C];
        const FinCat& TH = G.tgt->hom(H.obj[A], H.obj[C]);
        auto& t = H.phi[S.cidx(A, X, C)];
        for (int g = 0; g < S.hom(X, C).num_objects(); ++g)
          for (int f = 0; f < S.hom(A, X).num_objects(); ++f)
            t.push_back(TH.compose(G.F2(FA, FC, F.ph(A, X, C, g, f)), G.ph(FA, FX, FC, F.F1(X, C, g), F.F1(A, X, f))));
      }
  return H;
}

Icon compose_icons_vertical(const Icon& beta, const Icon& alpha) {
  if (!homs_equal(alpha.G, beta.F)) throw InputError("compose_icons_vertical: icons are not composable");
  Icon c{alpha.F, beta.G, alpha.comp};
  const FinBicat& S = *alpha.F.src;
  for (int A = 0; A < S.n(); ++A)
    for (int X = 0; X < S.n(); ++X) {
      const FinCat& TH = alpha.F.tgt->hom(alpha.F.obj[A], alpha.F.obj[X]);
      auto& t = c.comp[S.hidx(A, X)];
      for (std::size_t f = 0; f < t.size(); ++f) t[f] = TH.compose(beta.comp[S.hidx(A, X)][f], alpha.comp[S.hidx(A, X)][f]);
    }
  return c;
}

Icon whisker(const Icon& alpha, const BicatHom& H, WhiskerSide side) {
  if (side == WhiskerSide::Left) {
    if (alpha.F.tgt != H.src) throw InputError("whisker: hom does not start where the icon ends");
    Icon c{compose_normal_homs(H, alpha.F), compose_normal_homs(H, alpha.G), alpha.comp};
    const FinBicat& S = *alpha.F.src;
    for (int A = 0; A < S.n(); ++A)
      for (int X = 0; X < S.n(); ++X)
        for (auto& m : c.comp[S.hidx(A, X)]) m = H.F2(alpha.F.obj[A], alpha.F.obj[X], m);
    return c;
  }
  if (H.tgt != alpha.F.src) throw InputError("whisker: hom does not end where the icon starts");
  Icon c{compose_normal_homs(alpha.F, H), compose_normal_homs(alpha.G, H), {}};
  const FinBicat& S = *H.src;
  c.comp.resize(S.n() * S.n());
  for (int A = 0; A < S.n(); ++A)
    for (int X = 0; X < S.n(); ++X)
      for (int f = 0; f < S.hom(A, X).num_objects(); ++f)
        c.comp[S.hidx(A, X)].push_back(alpha.comp[alpha.F.src->hidx(H.obj[A], H.obj[X])][H.F1(A, X, f)]);
  return c;
}

bool icon_is_invertible(const Icon& a, Icon* inverse) {
  const FinBicat& S = *a.F.src;
  Icon inv{a.G, a.F, a.comp};
  for (int A = 0; A < S.n(); ++A)
    for (int X = 0; X < S.n(); ++X) {
      const FinCat& TH = a.F.tgt->hom(a.F.obj[A], a.F.obj[X]);
      for (auto& m : inv.comp[S.hidx(A, X)]) {
        m = TH.inverse(m);
        if (m < 0) return false;
      }
    }
  if (!validate_icon(inv)) throw InternalError("icon_is_invertible: componentwise inverse is not an icon");
  if (inverse) *inverse = inv;
  return true;
}

bool hom_is_equivalence(const BicatHom& F) {
  const int n = F.src->n();
  if (n != F.tgt->n()) return false;
  std::vector<char> hit(n, 0);
  for (int o : F.obj) {
    if (hit[o]) return false;
    hit[o] = 1;
  }
  for (const auto& H : F.homf)
    if (!equivalence_report(H).is_equivalence()) return false;
  return true;
}

Normalization normalize_homomorphism(const BicatHom& F) {
  const FinBicat& S = *F.src;
  const FinBicat& T = *F.tgt;
  const int n = S.n();
  Normalization out;
  out.witness.resize(n * n);
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int f = 0; f < S.hom(A, X).num_objects(); ++f) {
        const FinCat& TH = T.hom(F.obj[A], F.obj[X]);
        bool unit = A == X && f == S.units[A];
        out.witness[S.hidx(A, X)].push_back(unit && !F.normal() ? F.iota[A] : TH.identity(F.F1(A, X, f)));
      }
  if (F.normal()) {
    out.normal = F;
    return out;
  }
  BicatHom G{F.src, F.tgt, F.obj, F.homf, F.phi, {}};
  auto theta = [&](int A, int X, int f) { return out.witness[S.hidx(A, X)][f]; };
  for (int A = 0; A < n; ++A) {
    Functor& H = G.homf[S.hidx(A, A)];
    H.obj[S.units[A]] = T.units[F.obj[A]];
  }
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      const FinCat& H = S.hom(A, X);
      const FinCat& TH = T.hom(F.obj[A], F.obj[X]);
      Functor& GH = G.homf[S.hidx(A, X)];
      for (int m = 0; m < H.num_morphisms(); ++m)
        GH.mor[m] = TH.compose(TH.inverse(theta(A, X, H.cod(m))), TH.compose(F.F2(A, X, m), theta(A, X, H.dom(m))));
    }
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const FinCat& TH = T.hom(F.obj[A], F.obj[C]);
        auto& t = G.phi[S.cidx(A, X, C)];
        const int nf = S.hom(A, X).num_objects();
        for (int g = 0; g < S.hom(X, C).num_objects(); ++g)
          for (int f = 0; f < nf; ++f) {
            int gf = S.c1(A, X, C, g, f);
            int side = T.c2(F.obj[A], F.obj[X], F.obj[C], theta(X, C, g), theta(A, X, f));
            t[g * nf + f] = TH.compose(TH.inverse(theta(A, C, gf)), TH.compose(F.ph(A, X, C, g, f), side));
          }
      }
  if (auto c = validate_normal_hom(G); !c)
    throw InternalError("normalize_homomorphism: transported hom fails " + c.law);
  out.normal = std::move(G);
  return out;
}

// ---------------------------------------------------------------- enumeration

std::vector<Functor> enumerate_functors(const CatPtr& Cp, const CatPtr& Dp, const std::vector<int>& fixed,
                                        std::int64_t budget) {
  const FinCat& C = *Cp;
  const FinCat& D = *Dp;
  std::vector<Functor> out;
  Functor F{Cp, Dp, std::vector<int>(C.num_objects(), -1), std::vector<int>(C.num_morphisms(), -1)};
  std::int64_t steps = 0;
  auto tick = [&] {
    if (++steps > budget) throw ResourceError("functor enumeration exceeded the search cap");
  };
  std::function<void(int)> mor = [&](int m) {
    tick();
    if (m == C.num_morphisms()) {
      if (validate_functor(F)) out.push_back(F);
      return;
    }
    int a = F.obj[C.dom(m)], b = F.obj[C.cod(m)];
    for (int t : D.hom(a, b)) {
      if (C.is_identity(m) && !D.is_identity(t)) continue;
      F.mor[m] = t;
      bool ok = true;
      for (int g : C.out(C.cod(m))) {
        if (g > m) continue;
        int gm = C.compose(g, m);
        if (gm >= 0 && gm <= m && D.compose(F.mor[g], t) != F.mor[gm]) { ok = false; break; }
      }
      if (ok)
        for (int f : C.in(C.dom(m))) {
          if (f > m) continue;
          int mf = C.compose(m, f);
          if (mf >= 0 && mf <= m && D.compose(t, F.mor[f]) != F.mor[mf]) { ok = false; break; }
        }
      if (ok) mor(m + 1);
      F.mor[m] = -1;
    }
  };
  std::function<void(int)> obj = [&](int a) {
    tick();
    if (a == C.num_objects()) return mor(0);
    for (int b = 0; b < D.num_objects(); ++b) {
      if (a < static_cast<int>(fixed.size()) && fixed[a] >= 0 && fixed[a] != b) continue;
      F.obj[a] = b;
      obj(a + 1);
    }
    F.obj[a] = -1;
  };
  obj(0);
  return out;
}

namespace {

void check_caps(const FinBicat& B, const Caps& caps, const char* what) {
  if (B.n() > caps.max_objects)
    throw ResourceError(std::string(what) + ": bicategory has more objects than the cap allows");
  for (auto& h : B.homs)
    if (h->num_morphisms() > caps.max_hom_morphisms)
      throw ResourceError(std::string(what) + ": a hom category exceeds the morphism cap");
}

}  // namespace

std::vector<BicatHom> enumerate_normal_homs(const BicatPtr& Ap, const BicatPtr& Bp, const Caps& caps) {
  check_caps(*Ap, caps, "enumerate_normal_homs");
  check_caps(*Bp, caps, "enumerate_normal_homs");
  const FinBicat& S = *Ap;
  const FinBicat& T = *Bp;
  const int n = S.n();
  std::vector<BicatHom> out;
  std::int64_t steps = 0;
  auto tick = [&] {
    if (++steps > caps.max_search) throw ResourceError("enumerate_normal_homs exceeded the search cap");
  };
  if (n > 0 && T.n() == 0) return out;
  std::vector<int> obj(n, 0);
  while (true) {
    // hom functor candidates for this object map
    std::vector<std::vector<Functor>> cand(n * n);
    bool empty = false;
    for (int A = 0; A < n && !empty; ++A)
      for (int X = 0; X < n && !empty; ++X) {
        std::vector<int> fixed(S.hom(A, X).num_objects(), -1);
        if (A == X) fixed[S.units[A]] = T.units[obj[A]];
        cand[S.hidx(A, X)] = enumerate_functors(S.hom_ptr(A, X), T.hom_ptr(obj[A], obj[X]), fixed, caps.max_search);
        empty = cand[S.hidx(A, X)].empty();
      }
    if (!empty) {
      BicatHom F{Ap, Bp, obj, std::vector<Functor>(n * n), std::vector<std::vector<int>>(n * n * n), {}};
      for (int A = 0; A < n; ++A)
        for (int X = 0; X < n; ++X)
          for (int C = 0; C < n; ++C)
            F.phi[S.cidx(A, X, C)].assign(static_cast<std::size_t>(S.hom(X, C).num_objects()) * S.hom(A, X).num_objects(), -1);
      struct Slot {
        int A, X, C, g, f;
      };
      std::vector<Slot> slots;
      for (int A = 0; A < n; ++A)
        for (int X = 0; X < n; ++X)
          for (int C = 0; C < n; ++C)
            for (int g = 0; g < S.hom(X, C).num_objects(); ++g)
              for (int f = 0; f < S.hom(A, X).num_objects(); ++f) slots.push_back({A, X, C, g, f});
      std::function<void(std::size_t)> phi = [&](std::size_t k) {
        tick();
        if (k == slots.size()) {
          if (validate_normal_hom(F)) out.push_back(F);
          return;
        }
        auto [A, X, C, g, f] = slots[k];
        const int FA = obj[A], FX = obj[X], FC = obj[C];
        const FinCat& TH = T.hom(FA, FC);
        int src = T.c1(FA, FX, FC, F.F1(X, C, g), F.F1(A, X, f));
        int tgt = F.F1(A, C, S.c1(A, X, C, g, f));
        std::vector<int> options;
        if (X == C && g == S.units[X]) {
          int Fl = TH.inverse(F.F2(A, X, S.lu(A, X, f)));
          options.push_back(Fl < 0 ? -1 : TH.compose(Fl, T.lu(FA, FX, F.F1(A, X, f))));
        } else if (A == X && f == S.units[A]) {
          int Fr = TH.inverse(F.F2(A, C, S.ru(A, C, g)));
          options.push_back(Fr < 0 ? -1 : TH.compose(Fr, T.ru(FA, FC, F.F1(X, C, g))));
        } else {
          for (int m : TH.hom(src, tgt))
            if (TH.is_iso(m)) options.push_back(m);
        }
        auto& cell = F.phi[S.cidx(A, X, C)][g * S.hom(A, X).num_objects() + f];
        for (int m : options) {
          if (m < 0 || TH.dom(m) != src || TH.cod(m) != tgt) continue;
          cell = m;
          // naturality against 2-cells whose endpoints are already assigned
          bool ok = true;
          const FinCat &Hf = S.hom(A, X), &Hg = S.hom(X, C);
          for (int be : Hg.out(g)) {
            for (int al : Hf.out(f)) {
              int g2 = Hg.cod(be), f2 = Hf.cod(al);
              int p2 = F.phi[S.cidx(A, X, C)][g2 * Hf.num_objects() + f2];
              if (p2 < 0) continue;
              int lhs = TH.compose(p2, T.c2(FA, FX, FC, F.F2(X, C, be), F.F2(A, X, al)));
              int rhs = TH.compose(F.F2(A, C, S.c2(A, X, C, be, al)), m);
              if (lhs != rhs) { ok = false; break; }
            }
            if (!ok) break;
          }
          if (ok) phi(k + 1);
        }
        cell = -1;
      };
      // product over hom functor choices
      std::vector<std::size_t> pick(n * n, 0);
      while (true) {
        for (int k = 0; k < n * n; ++k) F.homf[k] = cand[k][pick[k]];
        phi(0);
        int k = n * n - 1;
        for (; k >= 0; --k) {
          if (++pick[k] < cand[k].size()) break;
          pick[k] = 0;
        }
        if (k < 0) break;
      }
    }
    int A = n - 1;
    for (; A >= 0; --A) {
      if (++obj[A] < T.n()) break;
      obj[A] = 0;
    }
    if (A < 0) break;
  }
  return out;
}

std::vector<Icon> enumerate_icons(const BicatHom& F, const BicatHom& G, const Caps& caps) {
  if (F.obj != G.obj) throw InputError("enumerate_icons: homomorphisms disagree on objects");
  check_caps(*F.src, caps, "enumerate_icons");
  check_caps(*F.tgt, caps, "enumerate_icons");
  const FinBicat& S = *F.src;
  const FinBicat& T = *F.tgt;
  const int n = S.n();
  std::vector<Icon> out;
  Icon a{F, G, std::vector<std::vector<int>>(n * n)};
  struct Slot {
    int A, X, f;
  };
  std::vector<Slot> slots;
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      a.comp[S.hidx(A, X)].assign(S.hom(A, X).num_objects(), -1);
      for (int f = 0; f < S.hom(A, X).num_objects(); ++f) slots.push_back({A, X, f});
    }
  std::int64_t steps = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (++steps > caps.max_search) throw ResourceError("enumerate_icons exceeded the search cap");
    if (k == slots.size()) {
      if (validate_icon(a)) out.push_back(a);
      return;
    }
    auto [A, X, f] = slots[k];
    const FinCat& H = S.hom(A, X);
    const FinCat& TH = T.hom(F.obj[A], F.obj[X]);
    auto& c = a.comp[S.hidx(A, X)];
    std::vector<int> options;
    if (A == X && f == S.units[A]) {
      if (F.F1(A, X, f) == G.F1(A, X, f)) options.push_back(TH.identity(F.F1(A, X, f)));
    } else {
      for (int m : TH.hom(F.F1(A, X, f), G.F1(A, X, f))) options.push_back(m);
    }
    for (int m : options) {
      c[f] = m;
      bool ok = true;
      for (int al : H.out(f)) {
        int f2 = H.cod(al);
        if (c[f2] < 0) continue;
        if (TH.compose(G.F2(A, X, al), m) != TH.compose(c[f2], F.F2(A, X, al))) { ok = false; break; }
      }
      for (int al : H.in(f)) {
        if (!ok) break;
        int f0 = H.dom(al);
        if (c[f0] < 0) continue;
        if (TH.compose(G.F2(A, X, al), c[f0]) != TH.compose(m, F.F2(A, X, al))) { ok = false; break; }
      }
      if (ok) rec(k + 1);
    }
    c[f] = -1;
  };
  rec(0);
  return out;
}

bool homs_equal(const BicatHom& F, const BicatHom& G) {
  if (F.src != G.src || F.tgt != G.tgt || F.obj != G.obj || F.phi != G.phi || F.iota != G.iota) return false;
  for (std::size_t k = 0; k < F.homf.size(); ++k)
    if (!functors_equal(F.homf[k], G.homf[k])) return false;
  return true;
}

bool icons_equal(const Icon& a, const Icon& b) {
  return homs_equal(a.F, b.F) && homs_equal(a.G, b.G) && a.comp == b.comp;
}

Certificate bicats_equal(const FinBicat& A, const FinBicat& B) {
  Json ja = bicat_to_json(A), jb = bicat_to_json(B);
  for (auto& [k, v] : ja.items())
    if (!jb.contains(k) || jb[k] != v) return Certificate::fail("table-equality", Json{{"field", k}});
  if (ja.size() != jb.size()) return Certificate::fail("table-equality", Json{{"field", "<shape>"}});
  return Certificate::ok();
}

// ---------------------------------------------------------------- JSON

Json bicat_to_json(const FinBicat& B) {
  const int n = B.n();
  Json j;
  j["objects"] = B.objects;
  j["hom"] = Json::object();
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) j["hom"][hkey(B, A, X)] = category_to_json(B.hom(A, X));
  j["comp"] = Json::object();
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        const FinCat &Hf = B.hom(A, X), &Hg = B.hom(X, C), &T = B.hom(A, C);
        Json c{{"on_objects", Json::array()}, {"on_morphisms", Json::array()}};
        for (int g = 0; g < Hg.num_objects(); ++g)
          for (int f = 0; f < Hf.num_objects(); ++f)
            c["on_objects"].push_back(Json{Hg.object_id(g), Hf.object_id(f), T.object_id(B.c1(A, X, C, g, f))});
        for (int be = 0; be < Hg.num_morphisms(); ++be)
          for (int al = 0; al < Hf.num_morphisms(); ++al)
            c["on_morphisms"].push_back(
                Json{Hg.morphism_id(be), Hf.morphism_id(al), T.morphism_id(B.c2(A, X, C, be, al))});
        j["comp"][B.objects[A] + "|" + B.objects[X] + "|" + B.objects[C]] = c;
      }
  j["units"] = Json::object();
  for (int A = 0; A < n; ++A) j["units"][B.objects[A]] = B.hom(A, A).object_id(B.units[A]);
  j["associator"] = Json::array();
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int D = 0; D < n; ++D)
          for (int h = 0; h < B.hom(Y, D).num_objects(); ++h)
            for (int g = 0; g < B.hom(X, Y).num_objects(); ++g)
              for (int f = 0; f < B.hom(A, X).num_objects(); ++f)
                j["associator"].push_back(Json{B.hom(Y, D).object_id(h), B.hom(X, Y).object_id(g),
                                               B.hom(A, X).object_id(f),
                                               B.hom(A, D).morphism_id(B.a(A, X, Y, D, h, g, f))});
  j["lunitor"] = Json::object();
  j["runitor"] = Json::object();
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int f = 0; f < B.hom(A, X).num_objects(); ++f) {
        j["lunitor"][B.hom(A, X).object_id(f)] = B.hom(A, X).morphism_id(B.lu(A, X, f));
        j["runitor"][B.hom(A, X).object_id(f)] = B.hom(A, X).morphism_id(B.ru(A, X, f));
      }
  return j;
}

namespace {

void allow_only(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  for (auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto* a : allowed) ok = ok || k == a;
    if (!ok) throw InputError(what + ": unknown field '" + k + "'");
  }
}

const Json& need(const Json& j, const char* k, const std::string& what) {
  auto it = j.find(k);
  if (it == j.end()) throw InputError(what + ": missing field '" + std::string(k) + "'");
  return *it;
}

std::string sid(const Json& j) {
  if (!j.is_string()) throw InputError("expected a string id");
  return j.get<std::string>();
}

std::vector<std::string> split(const std::string& s, char c) {
  std::vector<std::string> out(1);
  for (char x : s) {
    if (x == c) out.emplace_back();
    else out.back() += x;
  }
  return out;
}

}  // namespace

BicatPtr bicat_from_json(const Json& j) {
  allow_only(j, {"objects", "hom", "comp", "units", "associator", "lunitor", "runitor"}, "bicategory");
  FinBicat B;
  std::unordered_map<std::string, int> oi;
  const Json& objs = need(j, "objects", "bicategory");
  if (!objs.is_array()) throw InputError("bicategory: objects must be an array");
  for (auto& o : objs) {
    auto id = sid(o);
    if (id.find('|') != std::string::npos) throw InputError("object ids may not contain '|'");
    if (!oi.emplace(id, B.n()).second) throw InputError("duplicate object id '" + id + "'");
    B.objects.push_back(id);
  }
  const int n = B.n();
  B.homs.assign(n * n, nullptr);
  const Json& homs = need(j, "hom", "bicategory");
  if (!homs.is_object()) throw InputError("bicategory: hom must be an object");
  for (auto& [k, v] : homs.items()) {
    auto parts = split(k, '|');
    if (parts.size() != 2 || !oi.count(parts[0]) || !oi.count(parts[1]))
      throw InputError("bicategory: bad hom key '" + k + "'");
    B.homs[B.hidx(oi[parts[0]], oi[parts[1]])] = category_from_json(v);
  }
  for (auto& h : B.homs)
    if (!h) h = empty_category();
  B.index();
  auto cell1 = [&](const std::string& id, int A, int X) {
    int f = B.hom(A, X).find_object(id);
    if (f < 0) throw InputError("unknown 1-cell '" + id + "' in hom " + B.objects[A] + "|" + B.objects[X]);
    return f;
  };
  auto cell2 = [&](const std::string& id, int A, int X) {
    int m = B.hom(A, X).find_morphism(id);
    if (m < 0) throw InputError("unknown 2-cell '" + id + "' in hom " + B.objects[A] + "|" + B.objects[X]);
    return m;
  };
  B.comp.resize(n * n * n);
  const Json& comp = need(j, "comp", "bicategory");
  if (!comp.is_object()) throw InputError("bicategory: comp must be an object");
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C) {
        auto& c = B.comp[B.cidx(A, X, C)];
        const FinCat &Hf = B.hom(A, X), &Hg = B.hom(X, C);
        c.obj.assign(static_cast<std::size_t>(Hg.num_objects()) * Hf.num_objects(), -1);
        c.mor.assign(static_cast<std::size_t>(Hg.num_morphisms()) * Hf.num_morphisms(), -1);
        if (c.obj.empty() && c.mor.empty()) continue;
        std::string key = B.objects[A] + "|" + B.objects[X] + "|" + B.objects[C];
        auto it = comp.find(key);
        if (it == comp.end()) throw InputError("bicategory: missing comp entry '" + key + "'");
        allow_only(*it, {"on_objects", "on_morphisms"}, "comp");
        for (auto& t : need(*it, "on_objects", "comp")) {
          if (!t.is_array() || t.size() != 3) throw InputError("comp on_objects entries are [g, f, gf]");
          c.obj[cell1(sid(t[0]), X, C) * Hf.num_objects() + cell1(sid(t[1]), A, X)] = cell1(sid(t[2]), A, C);
        }
        for (auto& t : need(*it, "on_morphisms", "comp")) {
          if (!t.is_array() || t.size() != 3) throw InputError("comp on_morphisms entries are [beta, alpha, composite]");
          c.mor[cell2(sid(t[0]), X, C) * Hf.num_morphisms() + cell2(sid(t[1]), A, X)] = cell2(sid(t[2]), A, C);
        }
        for (int v : c.obj)
          if (v < 0) throw InputError("bicategory: comp '" + key + "' is not total on 1-cells");
        for (int v : c.mor)
          if (v < 0) throw InputError("bicategory: comp '" + key + "' is not total on 2-cells");
      }
  for (auto& [k, v] : comp.items()) {
    auto parts = split(k, '|');
    if (parts.size() != 3 || !oi.count(parts[0]) || !oi.count(parts[1]) || !oi.count(parts[2]))
      throw InputError("bicategory: bad comp key '" + k + "'");
  }
  B.units.assign(n, -1);
  for (auto& [k, v] : need(j, "units", "bicategory").items()) {
    if (!oi.count(k)) throw InputError("units: unknown object '" + k + "'");
    B.units[oi[k]] = cell1(sid(v), oi[k], oi[k]);
  }
  for (int A = 0; A < n; ++A)
    if (B.units[A] < 0) throw InputError("units: missing unit for '" + B.objects[A] + "'");
  B.assoc.resize(n * n * n * n);
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int D = 0; D < n; ++D)
          B.assoc[B.aidx(A, X, Y, D)].assign(static_cast<std::size_t>(B.hom(Y, D).num_objects()) *
                                                 B.hom(X, Y).num_objects() * B.hom(A, X).num_objects(),
                                             -1);
  for (auto& t : need(j, "associator", "bicategory")) {
    if (!t.is_array() || t.size() != 4) throw InputError("associator entries are [h, g, f, cell]");
    auto h = B.find_1cell(sid(t[0])), g = B.find_1cell(sid(t[1])), f = B.find_1cell(sid(t[2]));
    if (!h || !g || !f) throw InputError("associator references an unknown 1-cell");
    if (f->B != g->A || g->B != h->A) throw InputError("associator entry is not a composable triple");
    int A = f->A, X = f->B, Y = g->B, D = h->B;
    B.assoc[B.aidx(A, X, Y, D)][(h->local * B.hom(X, Y).num_objects() + g->local) * B.hom(A, X).num_objects() + f->local] =
        cell2(sid(t[3]), A, D);
  }
  for (auto& t : B.assoc)
    for (int v : t)
      if (v < 0) throw InputError("associator is not total");
  B.lunit.resize(n * n);
  B.runit.resize(n * n);
  for (int k = 0; k < n * n; ++k) {
    B.lunit[k].assign(B.homs[k]->num_objects(), -1);
    B.runit[k].assign(B.homs[k]->num_objects(), -1);
  }
  for (const char* which : {"lunitor", "runitor"})
    for (auto& [k, v] : need(j, which, "bicategory").items()) {
      auto f = B.find_1cell(k);
      if (!f) throw InputError(std::string(which) + ": unknown 1-cell '" + k + "'");
      auto& tab = std::string(which) == "lunitor" ? B.lunit : B.runit;
      tab[B.hidx(f->A, f->B)][f->local] = cell2(sid(v), f->A, f->B);
    }
  for (int k = 0; k < n * n; ++k)
    for (std::size_t f = 0; f < B.lunit[k].size(); ++f)
      if (B.lunit[k][f] < 0 || B.runit[k][f] < 0) throw InputError("unitors are not total");
  return std::make_shared<const FinBicat>(std::move(B));
}

Json hom_to_json(const BicatHom& F) {
  const FinBicat& S = *F.src;
  const FinBicat& T = *F.tgt;
  const int n = S.n();
  Json j{{"on_objects", Json::object()}, {"on_1cells", Json::object()}, {"on_2cells", Json::object()},
         {"comparison", Json::array()}};
  for (int A = 0; A < n; ++A) j["on_objects"][S.objects[A]] = T.objects[F.obj[A]];
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X) {
      const FinCat& H = S.hom(A, X);
      const FinCat& TH = T.hom(F.obj[A], F.obj[X]);
      for (int f = 0; f < H.num_objects(); ++f) j["on_1cells"][H.object_id(f)] = TH.object_id(F.F1(A, X, f));
      for (int m = 0; m < H.num_morphisms(); ++m) j["on_2cells"][H.morphism_id(m)] = TH.morphism_id(F.F2(A, X, m));
    }
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C)
        for (int g = 0; g < S.hom(X, C).num_objects(); ++g)
          for (int f = 0; f < S.hom(A, X).num_objects(); ++f)
            j["comparison"].push_back(Json{S.hom(X, C).object_id(g), S.hom(A, X).object_id(f),
                                           T.hom(F.obj[A], F.obj[C]).morphism_id(F.ph(A, X, C, g, f))});
  if (!F.normal()) {
    j["unit_comparison"] = Json::object();
    for (int A = 0; A < n; ++A) j["unit_comparison"][S.objects[A]] = T.hom(F.obj[A], F.obj[A]).morphism_id(F.iota[A]);
  }
  return j;
}

BicatHom hom_from_json(const Json& j, const BicatPtr& src, const BicatPtr& tgt) {
  allow_only(j, {"on_objects", "on_1cells", "on_2cells", "comparison", "unit_comparison"}, "homomorphism");
  const FinBicat& S = *src;
  const FinBicat& T = *tgt;
  const int n = S.n();
  BicatHom F{src, tgt, std::vector<int>(n, -1), {}, std::vector<std::vector<int>>(n * n * n), {}};
  auto tobj = [&](const std::string& id) {
    auto it = std::find(T.objects.begin(), T.objects.end(), id);
    if (it == T.objects.end()) throw InputError("unknown target object '" + id + "'");
    return static_cast<int>(it - T.objects.begin());
  };
  for (auto& [k, v] : need(j, "on_objects", "homomorphism").items()) {
    auto it = std::find(S.objects.begin(), S.objects.end(), k);
    if (it == S.objects.end()) throw InputError("unknown source object '" + k + "'");
    F.obj[it - S.objects.begin()] = tobj(sid(v));
  }
  for (int o : F.obj)
    if (o < 0) throw InputError("on_objects is not total");
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      F.homf.push_back(Functor{S.hom_ptr(A, X), T.hom_ptr(F.obj[A], F.obj[X]),
                               std::vector<int>(S.hom(A, X).num_objects(), -1),
                               std::vector<int>(S.hom(A, X).num_morphisms(), -1)});
  for (auto& [k, v] : need(j, "on_1cells", "homomorphism").items()) {
    auto c = S.find_1cell(k);
    if (!c) throw InputError("unknown 1-cell '" + k + "'");
    Functor& H = F.homf[S.hidx(c->A, c->B)];
    int t = H.tgt->find_object(sid(v));
    if (t < 0) throw InputError("on_1cells: image of '" + k + "' is not in the right hom");
    H.obj[c->local] = t;
  }
  for (auto& [k, v] : need(j, "on_2cells", "homomorphism").items()) {
    auto c = S.find_2cell(k);
    if (!c) throw InputError("unknown 2-cell '" + k + "'");
    Functor& H = F.homf[S.hidx(c->A, c->B)];
    int t = H.tgt->find_morphism(sid(v));
    if (t < 0) throw InputError("on_2cells: image of '" + k + "' is not in the right hom");
    H.mor[c->local] = t;
  }
  for (auto& H : F.homf) {
    for (int x : H.obj)
      if (x < 0) throw InputError("on_1cells is not total");
    for (int x : H.mor)
      if (x < 0) throw InputError("on_2cells is not total");
  }
  for (int A = 0; A < n; ++A)
    for (int X = 0; X < n; ++X)
      for (int C = 0; C < n; ++C)
        F.phi[S.cidx(A, X, C)].assign(static_cast<std::size_t>(S.hom(X, C).num_objects()) * S.hom(A, X).num_objects(), -1);
  for (auto& t : need(j, "comparison", "homomorphism")) {
    if (!t.is_array() || t.size() != 3) throw InputError("comparison entries are [g, f, cell]");
    auto g = S.find_1cell(sid(t[0])), f = S.find_1cell(sid(t[1]));
    if (!g || !f || f->B != g->A) throw InputError("comparison entry is not a composable pair");
    int m = T.hom(F.obj[f->A], F.obj[g->B]).find_morphism(sid(t[2]));
    if (m < 0) throw InputError("comparison cell '" + sid(t[2]) + "' is not in the right hom");
    F.phi[S.cidx(f->A, f->B, g->B)][g->local * S.hom(f->A, f->B).num_objects() + f->local] = m;
  }
  for (auto& t : F.phi)
    for (int v : t)
      if (v < 0) throw InputError("comparison table is not total");
  if (j.contains("unit_comparison")) {
    F.iota.assign(n, -1);
    for (auto& [k, v] : j["unit_comparison"].items()) {
      auto it = std::find(S.objects.begin(), S.objects.end(), k);
      if (it == S.objects.end()) throw InputError("unit_comparison: unknown object '" + k + "'");
      int A = static_cast<int>(it - S.objects.begin());
      int m = T.hom(F.obj[A], F.obj[A]).find_morphism(sid(v));
      if (m < 0) throw InputError("unit_comparison cell is not in the right hom");
      F.iota[A] = m;
    }
    for (int v : F.iota)
      if (v < 0) throw InputError("unit_comparison is not total");
  }
  return F;
}

Json icon_to_json(const Icon& a) {
  const FinBicat& S = *a.F.src;
  Json j{{"components", Json::object()}};
  for (int A = 0; A < S.n(); ++A)
    for (int X = 0; X < S.n(); ++X)
      for (int f = 0; f < S.hom(A, X).num_objects(); ++f)
        j["components"][S.hom(A, X).object_id(f)] =
            a.F.tgt->hom(a.F.obj[A], a.F.obj[X]).morphism_id(a.comp[S.hidx(A, X)][f]);
  return j;
}

Icon icon_from_json(const Json& j, const BicatHom& F, const BicatHom& G) {
  allow_only(j, {"components"}, "icon");
  if (F.obj != G.obj) throw InputError("icon: homomorphisms disagree on objects");
  const FinBicat& S = *F.src;
  Icon a{F, G, std::vector<std::vector<int>>(S.n() * S.n())};
  for (int A = 0; A < S.n(); ++A)
    for (int X = 0; X < S.n(); ++X) a.comp[S.hidx(A, X)].assign(S.hom(A, X).num_objects(), -1);
  for (auto& [k, v] : need(j, "components", "icon").items()) {
    auto c = S.find_1cell(k);
    if (!c) throw InputError("icon: unknown 1-cell '" + k + "'");
    int m = F.tgt->hom(F.obj[c->A], F.obj[c->B]).find_morphism(sid(v));
    if (m < 0) throw InputError("icon: component for '" + k + "' is not in the right hom");
    a.comp[S.hidx(c->A, c->B)][c->local] = m;
  }
  for (auto& t : a.comp)
    for (int v : t)
      if (v < 0) throw InputError("icon: components are not total");
  return a;
}

}  // namespace nervekit
