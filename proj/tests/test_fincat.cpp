#include "doctest.h"
#include "support.hpp"

using namespace testkit;

namespace {

// Independent scan of the category laws.
bool laws_hold(const FinCat& C) {
  int m = C.num_morphisms();
  for (int f = 0; f < m; ++f) {
    if (C.compose(C.identity(C.cod(f)), f) != f || C.compose(f, C.identity(C.dom(f))) != f) return false;
    for (int g = 0; g < m; ++g) {
      int gf = C.compose(g, f);
      if ((C.cod(f) == C.dom(g)) != (gf >= 0)) return false;
      if (gf < 0) continue;
      if (C.dom(gf) != C.dom(f) || C.cod(gf) != C.cod(g)) return false;
      for (int h = 0; h < m; ++h)
        if (C.cod(g) == C.dom(h) && C.compose(h, gf) != C.compose(C.compose(h, g), f)) return false;
    }
  }
  return true;
}

// C with the composite at (g, f) redirected to w.
CatPtr redirect(const CatPtr& C, int g, int f, int w) {
  FinCat::Spec s;
  for (int a = 0; a < C->num_objects(); ++a) {
    s.objects.push_back(C->object_id(a));
    s.identity.push_back(C->identity(a));
  }
  for (int m = 0; m < C->num_morphisms(); ++m) {
    s.morphism_ids.push_back(C->morphism_id(m));
    s.dom.push_back(C->dom(m));
    s.cod.push_back(C->cod(m));
  }
  s.compose = [C, g, f, w](int b, int a) { return b == g && a == f ? w : C->compose(b, a); };
  return make_category(std::move(s));
}

Functor constant_functor(const CatPtr& src, const CatPtr& tgt, int obj) {
  return Functor{src, tgt, std::vector<int>(src->num_objects(), obj),
                 std::vector<int>(src->num_morphisms(), tgt->identity(obj))};
}

// Every iso into an image object has exactly one iso lift ending at the given object.
bool dif_oracle(const Functor& p) {
  const FinCat& E = *p.src;
  const FinCat& B = *p.tgt;
  for (int e = 0; e < E.num_objects(); ++e)
    for (int beta = 0; beta < B.num_morphisms(); ++beta) {
      if (B.cod(beta) != p.obj[e] || !B.is_iso(beta)) continue;
      int lifts = 0;
      for (int eps = 0; eps < E.num_morphisms(); ++eps)
        lifts += E.cod(eps) == e && E.is_iso(eps) && p.mor[eps] == beta;
      if (lifts != 1) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("validate_category on fixtures") {
  CHECK(validate_category(*terminal_category()));
  auto C2 = ordinal_category(2);
  CHECK(C2->num_objects() == 3);
  CHECK(C2->num_morphisms() == 6);
  CHECK(validate_category(*C2));
  CHECK(laws_hold(*C2));
  CHECK(validate_category(*empty_category()));
  for (const CatPtr& C : small_pool()) CHECK(validate_category(*C));
}

TEST_CASE("every single redirect of a composite in [2] is rejected") {
  auto C = ordinal_category(2);
  int mutations = 0;
  for (int g = 0; g < C->num_morphisms(); ++g)
    for (int f = 0; f < C->num_morphisms(); ++f) {
      int gf = C->compose(g, f);
      if (gf < 0) continue;
      for (int w = 0; w < C->num_morphisms(); ++w) {
        if (w == gf) continue;
        auto M = redirect(C, g, f, w);
        Certificate c = validate_category(*M);
        CHECK_FALSE(c);
        CHECK_FALSE(c.law.empty());
        CHECK_FALSE(c.witness.is_null());
        CHECK_FALSE(laws_hold(*M));
        ++mutations;
      }
    }
  CHECK(mutations == 10 * 5);
}

TEST_CASE("random preorders satisfy the laws and every mutation is caught") {
  auto g = rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto C = random_preorder(g, 3);
    REQUIRE(laws_hold(*C));
    CHECK(validate_category(*C));
    int f = pick(g, C->num_morphisms());
    for (int h = 0; h < C->num_morphisms(); ++h) {
      int hf = C->compose(h, f);
      if (hf < 0) continue;
      for (int w = 0; w < C->num_morphisms(); ++w)
        if (w != hf) CHECK_FALSE(validate_category(*redirect(C, h, f, w)));
    }
  }
}

TEST_CASE("category JSON round trip") {
  for (const CatPtr& C : small_pool()) {
    Json j = category_to_json(*C);
    auto D = category_from_json(j);
    CHECK(category_to_json(*D) == j);
  }
  Json bad = category_to_json(*ordinal_category(1));
  bad["extra"] = 1;
  CHECK_THROWS_AS(category_from_json(bad), InputError);
  Json dangling = category_to_json(*ordinal_category(1));
  dangling["morphisms"][0]["dom"] = "nowhere";
  CHECK_THROWS_AS(category_from_json(dangling), InputError);
}

TEST_CASE("pullbacks") {
  auto C = ordinal_category(2);
  Pullback diag = pullback(identity_functor(C), identity_functor(C));
  CHECK(diag.P->num_objects() == C->num_objects());
  CHECK(find_isomorphism(diag.P, C).has_value());

  auto E = empty_category();
  Pullback empty = pullback(Functor{E, E, {}, {}}, Functor{E, E, {}, {}});
  CHECK(empty.P->num_objects() == 0);
  CHECK(empty.P->num_morphisms() == 0);

  auto N = two_nerve(named_bicat("ld2"), {}, 1);
  const TruncSimpCat& X = *N.X;
  CHECK(X.X(1).num_objects() == 6);
  Pullback pairs = pullback(X.d(1, 0), X.d(1, 1));
  int oracle = 0;
  for (int f = 0; f < 6; ++f)
    for (int h = 0; h < 6; ++h) oracle += X.d(1, 0).obj[f] == X.d(1, 1).obj[h];
  CHECK(oracle == 10);
  CHECK(pairs.P->num_objects() == 10);
  CHECK(validate_functor(pairs.p1));
  CHECK(validate_functor(pairs.p2));
  CHECK(functors_equal(compose_functors(X.d(1, 0), pairs.p1), compose_functors(X.d(1, 1), pairs.p2)));
}

TEST_CASE("pullback has exactly one mediating functor for random cones") {
  auto g = rng(5);
  int cones = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto C = random_preorder(g, 3), A = random_preorder(g, 2), B = random_preorder(g, 2), Q = random_preorder(g, 2);
    auto FA = enumerate_functors(A, C, std::vector<int>(A->num_objects(), -1), 1 << 16);
    auto GB = enumerate_functors(B, C, std::vector<int>(B->num_objects(), -1), 1 << 16);
    const Functor& F = FA[pick(g, static_cast<int>(FA.size()))];
    const Functor& G = GB[pick(g, static_cast<int>(GB.size()))];
    Pullback P = pullback(F, G);
    REQUIRE(validate_category(*P.P));
    auto q1s = enumerate_functors(Q, A, std::vector<int>(Q->num_objects(), -1), 1 << 16);
    auto q2s = enumerate_functors(Q, B, std::vector<int>(Q->num_objects(), -1), 1 << 16);
    auto meds = enumerate_functors(Q, P.P, std::vector<int>(Q->num_objects(), -1), 1 << 20);
    for (const Functor& q1 : q1s)
      for (const Functor& q2 : q2s) {
        if (!functors_equal(compose_functors(F, q1), compose_functors(G, q2))) continue;
        ++cones;
        int mediating = 0;
        for (const Functor& m : meds)
          mediating += functors_equal(compose_functors(P.p1, m), q1) && functors_equal(compose_functors(P.p2, m), q2);
        CHECK(mediating == 1);
      }
  }
  CHECK(cones > 30);
}

TEST_CASE("iterated fibers") {
  auto N = two_nerve(named_bicat("ld2"), {}, 2);
  const TruncSimpCat& X = *N.X;
  auto one = iterated_fiber(X.level[1], X.d(1, 1), X.d(1, 0), 1);
  CHECK(one == X.level[1]);
  CHECK(iterated_fiber(X.level[1], X.d(1, 1), X.d(1, 0), 2)->num_objects() == 10);

  auto M = two_nerve(coc2(), {}, 1);
  const TruncSimpCat& Y = *M.X;
  auto three = iterated_fiber(Y.level[1], Y.d(1, 1), Y.d(1, 0), 3);
  // oracle: every triple of 1-cells is composable over the single object
  std::int64_t objs = 1, mors = 1;
  for (int k = 0; k < 3; ++k) {
    objs *= Y.X(1).num_objects();
    mors *= Y.X(1).num_morphisms();
  }
  CHECK(objs == 8);
  CHECK(mors == 64);
  CHECK(three->num_objects() == objs);
  CHECK(three->num_morphisms() == mors);
  CHECK(validate_category(*three));

  auto I = iso_category();
  CHECK_THROWS_AS(iterated_fiber(I, identity_functor(I), identity_functor(I), 2), InputError);
}

TEST_CASE("is_discrete") {
  CHECK(is_discrete(*terminal_category()));
  CHECK_FALSE(is_discrete(*ordinal_category(1)));
  CHECK_FALSE(is_discrete(coc2()->hom(0, 0)));
  CHECK(is_discrete(*disc_category(3)));
}

TEST_CASE("equivalence_report examples") {
  auto I = iso_category();
  auto idr = equivalence_report(identity_functor(I));
  CHECK(idr.fully_faithful);
  CHECK(idr.essentially_surjective);
  CHECK(idr.surjective_on_objects);

  auto T = terminal_category();
  auto endpoint = equivalence_report(constant_functor(T, I, 0));
  CHECK(endpoint.fully_faithful);
  CHECK(endpoint.essentially_surjective);
  CHECK_FALSE(endpoint.surjective_on_objects);
  CHECK(endpoint.is_equivalence());
  CHECK_FALSE(endpoint.is_surjective_equivalence());
  CHECK(I->num_morphisms() == 4);

  auto collapse = equivalence_report(constant_functor(ordinal_category(1), T, 0));
  CHECK_FALSE(collapse.fully_faithful);
  CHECK_FALSE(collapse.witness.is_null());
}

TEST_CASE("equivalence_report agrees with a search for a pseudo-inverse") {
  auto pool = small_pool();
  int functors = 0, equivalences = 0;
  for (const CatPtr& C : pool)
    for (const CatPtr& D : pool)
      for (const Functor& F : enumerate_functors(C, D, std::vector<int>(C->num_objects(), -1), 1 << 16)) {
        bool fast = equivalence_report(F).is_equivalence();
        CHECK(fast == brute_force_equivalence(F));
        ++functors;
        equivalences += fast;
      }
  CHECK(functors > 200);
  CHECK(equivalences > 10);
}

TEST_CASE("discrete isofibrations") {
  // into a discrete target, lifts of identities are unique exactly when the
  // source has no nonidentity isos
  auto T = terminal_category();
  for (const CatPtr& C : small_pool()) {
    if (C->num_objects() == 0) continue;
    bool rigid = true;
    for (int m = 0; m < C->num_morphisms(); ++m) rigid = rigid && (C->is_identity(m) || !C->is_iso(m));
    CHECK(static_cast<bool>(is_discrete_isofibration(constant_functor(C, T, 0))) == rigid);
  }
  auto I = iso_category();
  auto arrows = arrow_category(I);
  CHECK(arrows->num_objects() == 4);
  REQUIRE(validate_category(*arrows));
  Functor cod = codomain_functor(arrows, I);
  REQUIRE(validate_functor(cod));
  // two arrows end at each object, so every iso has two lifts
  Certificate c = is_discrete_isofibration(cod);
  CHECK(static_cast<bool>(c) == dif_oracle(cod));
  CHECK_FALSE(c);
  CHECK_FALSE(c.witness.is_null());
  auto endpoint = constant_functor(T, I, 0);
  CHECK_FALSE(is_discrete_isofibration(endpoint));
}

TEST_CASE("is_discrete_isofibration agrees with counting lifts") {
  auto pool = small_pool();
  int passing = 0, total = 0;
  for (const CatPtr& C : pool)
    for (const CatPtr& D : pool)
      for (const Functor& F : enumerate_functors(C, D, std::vector<int>(C->num_objects(), -1), 1 << 16)) {
        bool fast = static_cast<bool>(is_discrete_isofibration(F));
        CHECK(fast == dif_oracle(F));
        passing += fast;
        ++total;
      }
  CHECK(passing > 10);
  CHECK(total - passing > 10);
}

TEST_CASE("pseudo_inverse") {
  auto I = iso_category();
  auto Fid = identity_functor(I);
  PseudoInverse P = pseudo_inverse(Fid, equivalence_report(Fid));
  CHECK(P.strict_section);
  CHECK(functors_equal(P.inverse, Fid));
  for (int a = 0; a < I->num_objects(); ++a) {
    CHECK(I->is_identity(P.unit.comp[a]));
    CHECK(I->is_identity(P.counit.comp[a]));
  }
  CHECK_THROWS_AS(pseudo_inverse(constant_functor(ordinal_category(1), terminal_category(), 0),
                                 equivalence_report(constant_functor(ordinal_category(1), terminal_category(), 0))),
                  InputError);

  auto N = two_nerve(coc2(), {}, 2);
  SegalMap S = segal_map(*N.X, 2);
  auto rep = equivalence_report(S.S);
  REQUIRE(rep.is_surjective_equivalence());
  PseudoInverse s = pseudo_inverse(S.S, rep);
  CHECK(s.strict_section);
  CHECK(functors_equal(compose_functors(S.S, s.inverse), identity_functor(S.target)));
  CHECK(validate_nat(s.unit));
  CHECK(validate_nat(s.counit));
  for (int x = 0; x < N.X->X(2).num_objects(); ++x) CHECK(N.X->X(2).is_iso(s.unit.comp[x]));
  // the section picks the identity 2-cell gf -> gf
  for (int y = 0; y < S.target->num_objects(); ++y) {
    const NerveCell& cell = N.cells[2][s.inverse.obj[y]];
    CHECK(sign_of(cell.beta[0]) == 1);
  }

  auto endpoint = constant_functor(terminal_category(), I, 1);
  PseudoInverse c = pseudo_inverse(endpoint, equivalence_report(endpoint));
  CHECK_FALSE(c.strict_section);
  CHECK(validate_nat(c.unit));
  CHECK(validate_nat(c.counit));
  CHECK(I->is_identity(c.witness[1]));
  CHECK(I->is_iso(c.witness[0]));
}

TEST_CASE("classical nerves") {
  auto binom = [](int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int L : {0, 3, 6}) {
    TruncSimpSet T = nerve_of_category(*terminal_category(), L);
    for (int n = 0; n <= L; ++n) CHECK(T.levels[n].size() == 1);
  }
  for (int k = 1; k <= 3; ++k) {
    TruncSimpSet S = nerve_of_category(*ordinal_category(k), 5);
    CHECK(S.segal_bijective);
    // monotone maps [n] -> [k]
    for (int n = 0; n <= 5; ++n) CHECK(static_cast<std::int64_t>(S.levels[n].size()) == binom(n + k + 1, k));
    for (int n = 2; n <= 5; ++n)
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (std::size_t x = 0; x < S.levels[n].size(); ++x)
            CHECK(S.face[n - 1][i][S.face[n][j][x]] == S.face[n - 1][j - 1][S.face[n][i][x]]);
    for (int n = 0; n < 5; ++n)
      for (int i = 0; i <= n; ++i)
        for (std::size_t x = 0; x < S.levels[n].size(); ++x) {
          CHECK(S.face[n + 1][i][S.degen[n][i][x]] == static_cast<int>(x));
          CHECK(S.face[n + 1][i + 1][S.degen[n][i][x]] == static_cast<int>(x));
        }
  }
  CHECK(nerve_of_category(*ordinal_category(1), 4).levels[3].size() == 5);
  CHECK(nerve_of_category(*ordinal_category(2), 2).levels[2].size() == 10);
  CHECK_THROWS_AS(nerve_of_category(*ordinal_category(1), 7), InputError);
}

TEST_CASE("find_isomorphism") {
  auto A = preorder(2, {{false, true}, {false, false}});
  CHECK(find_isomorphism(A, ordinal_category(1)).has_value());
  CHECK_FALSE(find_isomorphism(iso_category(), ordinal_category(1)).has_value());
  CHECK_FALSE(find_isomorphism(cyclic_group(2), cyclic_group(3)).has_value());
}
