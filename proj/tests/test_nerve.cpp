#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace testkit;

namespace {

struct SignCell {
  std::vector<int> b;     // per pair, 0 = e, 1 = g
  std::vector<int> beta;  // per triple, +1 or -1
};

// Normal homs [n] -> COC2 by sign arithmetic: the 1-cells on consecutive
// pairs are free, longer ones are products, and the comparison signs satisfy
// beta_ikl beta_ijk = beta_ijl beta_jkl omega(b_kl, b_jk, b_ij).
std::vector<SignCell> coc2_simplices(int n) {
  auto pairs = nerve_pairs(n);
  auto triples = nerve_triples(n);
  std::vector<SignCell> out;
  for (int bits = 0; bits < (1 << n); ++bits) {
    SignCell c;
    for (auto [i, j] : pairs) {
      int x = 0;
      for (int k = i; k < j; ++k) x ^= bits >> k & 1;
      c.b.push_back(x);
    }
    int t = static_cast<int>(triples.size());
    for (int signs = 0; signs < (1 << t); ++signs) {
      c.beta.clear();
      for (int k = 0; k < t; ++k) c.beta.push_back(signs >> k & 1 ? -1 : 1);
      bool ok = true;
      for (int i = 0; i <= n && ok; ++i)
        for (int j = i + 1; j <= n && ok; ++j)
          for (int k = j + 1; k <= n && ok; ++k)
            for (int l = k + 1; l <= n && ok; ++l) {
              auto be = [&](int a, int b2, int c2) { return c.beta[triple_index(n, a, b2, c2)]; };
              auto bb = [&](int a, int b2) { return c.b[pair_index(n, a, b2)]; };
              ok = be(i, k, l) * be(i, j, k) == be(i, j, l) * be(j, k, l) * coc2_omega(bb(k, l), bb(j, k), bb(i, j));
            }
      if (ok) out.push_back(c);
    }
  }
  return out;
}

// Icons between two such simplices: a sign per pair with
// s_ik beta_ijk(x) = beta_ijk(y) s_jk s_ij.
std::int64_t coc2_icons(int n, const SignCell& x, const SignCell& y) {
  if (x.b != y.b) return 0;
  auto pairs = nerve_pairs(n);
  int p = static_cast<int>(pairs.size());
  std::int64_t count = 0;
  for (int signs = 0; signs < (1 << p); ++signs) {
    auto s = [&](int i, int j) { return signs >> pair_index(n, i, j) & 1 ? -1 : 1; };
    bool ok = true;
    for (auto t : nerve_triples(n)) {
      int k = triple_index(n, t[0], t[1], t[2]);
      ok = ok && s(t[0], t[2]) * x.beta[k] == y.beta[k] * s(t[1], t[2]) * s(t[0], t[1]);
    }
    count += ok;
  }
  return count;
}

const NerveResult& nerve_coc2() {
  static const NerveResult N = two_nerve(coc2(), {}, 4);
  return N;
}

}  // namespace

TEST_CASE("nerve of COC2 against sign arithmetic") {
  const NerveResult& N = nerve_coc2();
  const TruncSimpCat& X = *N.X;
  CHECK(X.X(0).num_objects() == 1);
  CHECK(X.X(1).num_objects() == 2);
  CHECK(X.X(1).num_morphisms() == 4);
  CHECK(X.X(2).num_objects() == 8);
  CHECK(X.X(3).num_objects() == 64);
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    auto cells = coc2_simplices(n);
    CHECK(X.X(n).num_objects() == static_cast<int>(cells.size()));
    std::int64_t mors = 0;
    for (const SignCell& a : cells)
      for (const SignCell& b : cells) mors += coc2_icons(n, a, b);
    CHECK(X.X(n).num_morphisms() == mors);
    // the enumerated cells are exactly the oracle's
    std::set<std::pair<std::vector<int>, std::vector<int>>> expect, got;
    for (const SignCell& c : cells) expect.insert({c.b, c.beta});
    for (const NerveCell& c : N.cells[n]) {
      std::vector<int> signs;
      for (int l : c.beta) signs.push_back(sign_of(l));
      got.insert({c.b, signs});
    }
    CHECK(expect == got);
  }
  CHECK(X.X(4).num_objects() == static_cast<int>(coc2_simplices(4).size()));
  CHECK(X.X(4).num_objects() == 1024);
  CHECK(validate_simplicial(X));
}

TEST_CASE("nerve of locally discrete [1] has n + 2 simplices at level n") {
  auto N = two_nerve(named_bicat("ld1"), {}, 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(N.X->X(n).num_objects() == n + 2);
    CHECK(N.X->X(n).num_morphisms() == n + 2);
  }
  auto D = discrete_nerve(ordinal_category(2), 4);
  auto M = two_nerve(named_bicat("ld2"), {}, 4);
  for (int n = 0; n <= 4; ++n) CHECK(M.X->X(n).num_objects() == D->X(n).num_objects());
}

TEST_CASE("nerve cells are normal homs and degeneracies carry unitors") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    auto N = two_nerve(named_bicat(name), {}, 3);
    const FinBicat& B = *N.B;
    for (int n = 0; n < 3; ++n)
      for (int x = 0; x < N.X->X(n).num_objects(); ++x)
        for (int i = 0; i <= n; ++i) {
          const NerveCell& c = N.cells[n + 1][N.X->s(n, i).obj[x]];
          int m = n + 1;
          CHECK(c.b[pair_index(m, i, i + 1)] == B.units[c.v[i]]);
          for (int k = i + 2; k <= m; ++k)
            CHECK(c.beta[triple_index(m, i, i + 1, k)] ==
                  B.ru(c.v[i], c.v[k], c.b[pair_index(m, i, k)]));
          for (int j = 0; j < i; ++j)
            CHECK(c.beta[triple_index(m, j, i, i + 1)] ==
                  B.lu(c.v[j], c.v[i + 1], c.b[pair_index(m, j, i + 1)]));
        }
    // every 2-simplex's comparison has the right type
    for (const NerveCell& c : N.cells[2]) {
      const FinCat& H = B.hom(c.v[0], c.v[2]);
      int composite = B.c1(c.v[0], c.v[1], c.v[2], c.b[2], c.b[0]);
      CHECK(H.dom(c.beta[0]) == composite);
      CHECK(H.cod(c.beta[0]) == c.b[1]);
      CHECK(H.is_iso(c.beta[0]));
    }
  }
}

TEST_CASE("nerve_map and nerve_icon") {
  BicatPtr B = coc2();
  auto N = two_nerve(B, {}, 3);
  SimpMap id = nerve_map(identity_hom(B), N, N);
  CHECK(simp_maps_equal(id, identity_simp_map(N.X)));

  BicatHom S = coc2_hom(B, {1, 1, 1, -1});
  SimpMap f = nerve_map(S, N, N);
  CHECK(validate_simp_map(f));
  CHECK(f.f[1].obj == std::vector<int>{0, 1});
  int moved = 0;
  for (int x = 0; x < 8; ++x) {
    const NerveCell& c = N.cells[2][x];
    const NerveCell& d = N.cells[2][f.f[2].obj[x]];
    CHECK(d.b == c.b);
    int phi = c.b[2] == 1 && c.b[0] == 1 ? -1 : 1;  // phi(b12, b01)
    CHECK(sign_of(d.beta[0]) == sign_of(c.beta[0]) * phi);
    moved += f.f[2].obj[x] != x;
  }
  CHECK(moved == 2);

  BicatHom I = identity_hom(B);
  Modification m = nerve_icon(coc2_icon(I, I, 1, -1), N, N);
  CHECK(validate_simp_transformation(id, id, m));
  for (int n = 1; n <= 3; ++n)
    for (int x = 0; x < N.X->X(n).num_objects(); ++x) {
      const int* row = N.tuples[n]->row(m.comp[n][x]);
      const NerveCell& c = N.cells[n][x];
      for (std::size_t k = 0; k < c.b.size(); ++k) CHECK(sign_of(row[k]) == (c.b[k] == 1 ? -1 : 1));
    }
}

TEST_CASE("the nerve is a 2-functor on fixture homs") {
  for (const char* name : {"coc2", "ld2", "monoid3"}) {
    CAPTURE(name);
    BicatPtr B = named_bicat(name);
    auto N = two_nerve(B, {}, 3);
    auto homs = enumerate_normal_homs(B, B);
    for (const BicatHom& F : homs)
      for (const BicatHom& G : homs)
        CHECK(simp_maps_equal(nerve_map(compose_normal_homs(G, F), N, N),
                              compose_simp_maps(nerve_map(G, N, N), nerve_map(F, N, N))));
    for (const BicatHom& F : homs)
      for (const BicatHom& G : homs) {
        if (F.obj != G.obj) continue;
        auto icons = enumerate_icons(F, G);
        auto ends = enumerate_icons(G, G);
        for (const Icon& a : icons)
          for (const Icon& b : ends) {
            Modification ma = nerve_icon(a, N, N), mb = nerve_icon(b, N, N);
            Modification mc = nerve_icon(compose_icons_vertical(b, a), N, N);
            for (int n = 0; n <= 3; ++n)
              for (int x = 0; x < N.X->X(n).num_objects(); ++x)
                CHECK(mc.comp[n][x] == N.X->X(n).compose(mb.comp[n][x], ma.comp[n][x]));
          }
      }
  }
}

TEST_CASE("characterization") {
  for (const char* name : {"terminal", "ld1", "ld2", "coc2", "monoid3"}) {
    CAPTURE(name);
    auto N = two_nerve(named_bicat(name), {}, 4);
    Certificate c = check_characterization(*N.X);
    CHECK(c);
    for (auto& [k, v] : c.witness["verdicts"].items()) CHECK(v == true);
  }
  auto D = discrete_nerve(ordinal_category(2), 4);
  CHECK(check_characterization(*D));
  auto C = constant_simp(iso_category(), 4);
  Certificate bad = check_characterization(*C);
  CHECK_FALSE(bad);
  CHECK(bad.witness["verdicts"]["X0-discrete"] == false);
}

TEST_CASE("level 4 enumerated directly agrees with the coskeleton") {
  for (const char* name : {"coc2", "ld2", "ld1"}) {
    CAPTURE(name);
    BicatPtr B = named_bicat(name);
    NerveResult direct = two_nerve(B, {}, 4, true);
    NerveResult cosk = two_nerve(B, {}, 4, false);
    CHECK(direct.direct_level4);
    CHECK(compare_level4(direct, cosk));
    CHECK(direct.X->X(4).num_objects() == cosk.X->X(4).num_objects());
    CHECK(direct.X->X(4).num_morphisms() == cosk.X->X(4).num_morphisms());
  }
}

TEST_CASE("fully-faithfulness probe") {
  ProbeCounts c;
  CHECK(fully_faithful_probe(named_bicat("ld1"), named_bicat("ld1"), {}, &c));
  CHECK(c.homs == 3);
  CHECK(c.simp_maps == 3);
  CHECK(fully_faithful_probe(named_bicat("ld1"), named_bicat("ld2"), {}, &c));
  CHECK(c.homs == 6);
  CHECK(c.simp_maps == 6);
  CHECK(c.icons == c.transformations);

  BicatPtr B = coc2();
  CHECK(fully_faithful_probe(B, B, {}, &c));
  auto homs = enumerate_normal_homs(B, B);
  std::int64_t icons = 0;
  for (const BicatHom& F : homs)
    for (const BicatHom& G : homs) icons += F.obj == G.obj ? static_cast<std::int64_t>(enumerate_icons(F, G).size()) : 0;
  auto N = two_nerve(B, {}, 3);
  auto maps = enumerate_simp_maps(N.X, N.X);
  std::int64_t transformations = 0;
  for (const SimpMap& f : maps)
    for (const SimpMap& g : maps) transformations += static_cast<std::int64_t>(enumerate_simp_transformations(f, g).size());
  CHECK(c.homs == static_cast<std::int64_t>(homs.size()));
  CHECK(c.simp_maps == static_cast<std::int64_t>(maps.size()));
  CHECK(c.icons == icons);
  CHECK(c.transformations == transformations);
  CHECK(icons == transformations);
}
