#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "nervekit/bicatify.hpp"
#include "nervekit/fixtures.hpp"
#include "nervekit/pstrans.hpp"

using namespace nervekit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "failed: ";
      else note << "; ";
      note << what;
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> run;
};

bool is_identity_simp_map(const SimpMap& u, int upto) {
  for (int n = 0; n <= upto; ++n) {
    const Functor& F = u.f[n];
    for (std::size_t a = 0; a < F.obj.size(); ++a)
      if (F.obj[a] != static_cast<int>(a)) return false;
    for (std::size_t m = 0; m < F.mor.size(); ++m)
      if (F.mor[m] != static_cast<int>(m)) return false;
  }
  return true;
}

bool all_identities(const TruncSimpCat& Y, const Modification& m) {
  for (std::size_t n = 0; n < m.comp.size(); ++n)
    for (int c : m.comp[n])
      if (!Y.X(static_cast<int>(n)).is_identity(c)) return false;
  return true;
}

void characterization_battery(Outcome& o) {
  for (const char* name : {"terminal", "ld1", "ld2", "coc2", "monoid3"}) {
    NerveResult N = two_nerve(named_bicat(name), {}, 4);
    Certificate c = check_characterization(*N.X);
    bool verdicts = true;
    for (auto& [k, v] : c.witness["verdicts"].items()) verdicts = verdicts && v == true;
    o.expect(c.pass && verdicts, std::string(name) + " " + c.law);
  }
  o.note << "5 nerves, all verdicts true";
}

void negative_characterization(Outcome& o) {
  NerveResult N = two_nerve(coc2(), {}, 4);
  PlusResult P = plus_construction(N.X);
  o.expect(static_cast<bool>(check_tamsamani(*P.plus)), "PLUS is not Tamsamani");
  Certificate c = check_characterization(*P.plus);
  o.expect(!c.pass, "PLUS characterized as a nerve");
  o.expect(c.witness["verdicts"]["difs"] == false, "dif verdict holds");
  o.expect(!c.witness["details"].empty(), "no witness");
  if (o.pass) o.note << "check-tam passes, characterize fails with " << c.law << " " << c.witness["details"].dump();
}

void strict_round_trip(Outcome& o) {
  auto names = fixture_names();
  for (const std::string& name : names) {
    Certificate c = roundtrip_counit(named_bicat(name));
    o.expect(c.pass, name + " " + c.law);
  }
  if (o.pass) o.note << names.size() << " fixtures table-equal";
}

void unit_on_plus(Outcome& o) {
  NerveResult N = two_nerve(coc2(), {}, 4);
  PlusResult P = plus_construction(N.X);
  BicatifyResult G = bicategorify(P.plus);
  o.expect(static_cast<bool>(G.pentagon), "GX pentagon");
  Certificate v = validate_bicategory(*G.GX);
  o.expect(v.pass, "validate_bicategory(GX) " + v.law);
  UnitResult U = unit_map(P.plus, G);
  o.expect(U.report.pass, "unit report " + U.report.law);
  o.expect(static_cast<bool>(validate_simp_map(U.u)), "u is not simplicial");
  o.expect(is_identity_simp_map(U.u, 1), "u0/u1 not identities");
  for (int n = 0; n <= P.plus->L; ++n)
    o.expect(equivalence_report(U.u.f[n]).is_equivalence(), "u" + std::to_string(n) + " not an equivalence");
  if (o.pass) o.note << "u0, u1 identities; u0..u" << P.plus->L << " equivalences";
}

void fully_faithful(Outcome& o) {
  ProbeCounts c;
  Certificate a = fully_faithful_probe(named_bicat("ld1"), named_bicat("ld2"), {}, &c);
  o.expect(a.pass && c.homs == 6 && c.simp_maps == 6, "ld1 -> ld2 " + c.to_json().dump());
  Certificate b = fully_faithful_probe(named_bicat("ld1"), named_bicat("ld1"), {}, &c);
  o.expect(b.pass && c.homs == 3 && c.simp_maps == 3, "ld1 -> ld1 " + c.to_json().dump());
  Certificate d = fully_faithful_probe(coc2(), coc2(), {}, &c);
  o.expect(d.pass && c.homs == c.simp_maps && c.icons == c.transformations, "coc2 " + c.to_json().dump());
  if (o.pass) o.note << "6/6, 3/3, coc2 " << c.to_json().dump();
}

void nerve_combinatorics(Outcome& o) {
  NerveResult D = two_nerve(coc2(), {}, 4, true);
  NerveResult C = two_nerve(coc2(), {}, 4, false);
  const TruncSimpCat& X = *C.X;
  o.expect(X.X(1).num_objects() == 2 && X.X(1).num_morphisms() == 4, "level 1");
  o.expect(X.X(2).num_objects() == 8, "level 2");
  o.expect(X.X(3).num_objects() == 64, "level 3");
  PlusResult P = plus_construction(C.X);
  o.expect(P.plus->X(2).num_objects() == 64, "PLUS level 2");
  Certificate c = compare_level4(D, C);
  o.expect(D.direct_level4 && c.pass, "direct level 4 " + c.law);
  if (o.pass) o.note << "(2,4) 8 64, PLUS2 64, level 4 " << X.X(4).num_objects() << " objects agree";
}

void segal_battery(Outcome& o) {
  auto names = fixture_names();
  for (const std::string& name : names) {
    NerveResult N = two_nerve(named_bicat(name), {}, 4);
    for (int n = 2; n <= 4; ++n)
      o.expect(equivalence_report(segal_map(*N.X, n).S).is_surjective_equivalence(),
               name + " S" + std::to_string(n));
    Certificate c = check_characterization(*N.X);
    o.expect(c.witness["verdicts"]["difs"] == true, name + " c2/c3");
    o.expect(static_cast<bool>(is_coskeletal(*N.X, 3)), name + " 3-coskeletal");
  }
  if (o.pass) o.note << names.size() << " fixture nerves";
}

void transformation_algorithms(Outcome& o) {
  NerveResult N = two_nerve(coc2(), {}, 3);
  PseudoSimpMap id = as_pseudo(identity_simp_map(N.X));
  int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    std::string tag = "seed " + std::to_string(s);
    PseudoSimpMap f = random_decoration(id, static_cast<std::uint64_t>(s));
    Normalized n1 = normalize_pseudo(f);
    o.expect(n1.report.pass && n1.g.normal, tag + " normalize");
    o.expect(validate_modification(f, n1.g, n1.psi).pass && modification_invertible(f, n1.psi), tag + " psi");
    Normalized n2 = normalize_pseudo(n1.g);
    o.expect(pseudo_maps_equal(n2.g, n1.g) && all_identities(*N.X, n2.psi), tag + " idempotence");
    Strictified st = strictify(f, N);
    o.expect(st.report.pass && validate_simp_map(st.h).pass, tag + " strictify");
    o.expect(validate_modification(f, as_pseudo(st.h), st.comparison).pass &&
                 modification_invertible(f, st.comparison),
             tag + " comparison");
  }
  PlusResult P = plus_construction(N.X);
  Retraction R = coflexible_retraction(N, P);
  o.expect(R.report.pass, "retraction " + R.report.law);
  o.expect(simp_maps_equal(compose_simp_maps(R.r, P.j), identity_simp_map(N.X)), "r o j");
  if (o.pass) o.note << seeds << " seeds; r o j = 1 over " << P.plus->X(2).num_objects() << " decorated 2-simplices";
}

void mutation_robustness(Outcome& o) {
  BicatPtr B = coc2();
  int cells = B->hom(0, 0).num_morphisms();
  int assoc_total = 0, assoc_missed = 0;
  std::string missed;
  for (std::size_t k = 0; k < B->assoc[0].size(); ++k)
    for (int v = 0; v < cells; ++v) {
      if (v == B->assoc[0][k]) continue;
      FinBicat M = *B;
      M.assoc[0][k] = v;
      ++assoc_total;
      Certificate c = validate_bicategory(*finalize_bicat(M));
      if (c.pass || c.witness.is_null()) {
        ++assoc_missed;
        missed += " assoc[" + std::to_string(k) + "]=" + std::to_string(v);
      }
    }

  NerveResult N = two_nerve(B, {}, 3);
  int degen_total = 0, degen_missed = 0;
  auto probe = [&](TruncSimpCat& X, int& slot, int value) {
    int keep = slot;
    slot = value;
    ++degen_total;
    Certificate c = validate_simplicial(X);
    if (c.pass || c.witness.is_null()) ++degen_missed;
    slot = keep;
  };
  TruncSimpCat X = *N.X;
  for (int n = 0; n < X.L; ++n)
    for (int i = 0; i <= n; ++i) {
      Functor& s = X.degen[n][i];
      int objs = X.X(n + 1).num_objects(), mors = X.X(n + 1).num_morphisms();
      for (int& slot : s.obj)
        for (int v = 0; v < objs; ++v)
          if (v != slot) probe(X, slot, v);
      if (n <= 1)
        for (int& slot : s.mor)
          for (int v = 0; v < mors; ++v)
            if (v != slot) probe(X, slot, v);
    }

  o.expect(assoc_missed == 0, std::to_string(assoc_missed) + "/" + std::to_string(assoc_total) +
                                  " associator mutations accepted (" + missed.substr(1) + ")");
  o.expect(degen_missed == 0, std::to_string(degen_missed) + "/" + std::to_string(degen_total) +
                                  " degeneracy mutations accepted");
  o.note << (o.pass ? "" : " | ") << "associator " << assoc_total - assoc_missed << "/" << assoc_total
         << " detected, degeneracies " << degen_total - degen_missed << "/" << degen_total << " detected";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "characterization battery", 10, characterization_battery},
      {2, "negative characterization", 10, negative_characterization},
      {3, "strict round trip", 5, strict_round_trip},
      {4, "unit on PLUS", 60, unit_on_plus},
      {5, "fully-faithfulness probe", 60, fully_faithful},
      {6, "nerve combinatorics", 120, nerve_combinatorics},
      {7, "Segal, dif and coskeletal battery", 30, segal_battery},
      {8, "normalize, strictify, retraction", 60, transformation_algorithms},
      {9, "mutation robustness", 120, mutation_robustness},
  };
  int failures = 0;
  for (Criterion& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.budget_s) o.expect(false, "over budget");
    failures += !o.pass;
    std::printf("criterion %d: %s  %-36s %7.2f s (budget %g s)  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, s,
                c.budget_s, o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
