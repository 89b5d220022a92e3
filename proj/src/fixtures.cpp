#include "nervekit/fixtures.hpp"

namespace nervekit {

CatPtr ordinal_category(int n) {
  if (n < 0) throw InputError("ordinal: n must be non-negative");
  FinCat::Spec s;
  std::vector<std::vector<int>> mor(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= n; ++i) s.objects.push_back(std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      mor[i][j] = static_cast<int>(s.dom.size());
      s.morphism_ids.push_back(std::to_string(i) + "->" + std::to_string(j));
      s.dom.push_back(i);
      s.cod.push_back(j);
    }
  for (int i = 0; i <= n; ++i) s.identity.push_back(mor[i][i]);
  auto dom = s.dom, cod = s.cod;
  s.compose = [mor, dom, cod](int g, int f) { return cod[f] == dom[g] ? mor[dom[f]][cod[g]] : -1; };
  return make_category(std::move(s));
}

CatPtr iso_category() {
  FinCat::Spec s;
  s.objects = {"a", "b"};
  s.morphism_ids = {"1_a", "1_b", "u", "v"};
  s.dom = {0, 1, 0, 1};
  s.cod = {0, 1, 1, 0};
  s.identity = {0, 1};
  s.compose = [](int g, int f) {
    static const int dom[] = {0, 1, 0, 1}, cod[] = {0, 1, 1, 0};
    if (cod[f] != dom[g]) return -1;
    if (f < 2) return g;
    if (g < 2) return f;
    return f == 2 ? 0 : 1;  // v∘u = 1_a, u∘v = 1_b
  };
  return make_category(std::move(s));
}

CatPtr disc_category(int k) {
  std::vector<std::string> ids;
  for (int i = 0; i < k; ++i) ids.push_back(std::to_string(i));
  return discrete_category(ids);
}

namespace {

CatPtr discrete_hom(const std::vector<std::string>& cells) {
  FinCat::Spec s;
  s.objects = cells;
  for (int a = 0; a < static_cast<int>(cells.size()); ++a) {
    s.morphism_ids.push_back("id(" + cells[a] + ")");
    s.dom.push_back(a);
    s.cod.push_back(a);
    s.identity.push_back(a);
  }
  s.compose = [](int g, int f) { return g == f ? g : -1; };
  return make_category(std::move(s));
}

BicatPtr checked(FinBicat B, const std::string& what) {
  auto p = finalize_bicat(std::move(B));
  if (auto c = validate_bicategory(*p); !c) throw InputError(what + ": " + c.law + " fails");
  return p;
}

}  // namespace

BicatPtr locally_discrete(const CatPtr& Cp) {
  const FinCat& C = *Cp;
  if (auto c = validate_category(C); !c) throw InputError("locally_discrete: " + c.law + " fails");
  const int n = C.num_objects();
  FinBicat B;
  for (int a = 0; a < n; ++a) B.objects.push_back(C.object_id(a));
  B.homs.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<std::string> cells;
      for (int m : C.hom(a, b)) cells.push_back(C.morphism_id(m));
      B.homs[B.hidx(a, b)] = discrete_hom(cells);
    }
  B.comp.resize(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        auto& t = B.comp[B.cidx(a, b, c)];
        for (int g : C.hom(b, c))
          for (int f : C.hom(a, b)) {
            int gf = C.hom_position(C.compose(g, f));
            t.obj.push_back(gf);
            t.mor.push_back(gf);
          }
      }
  for (int a = 0; a < n; ++a) B.units.push_back(C.hom_position(C.identity(a)));
  B.assoc.resize(n * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          auto& t = B.assoc[B.aidx(a, b, c, d)];
          for (int h : C.hom(c, d))
            for (int g : C.hom(b, c))
              for (int f : C.hom(a, b)) t.push_back(C.hom_position(C.compose(h, C.compose(g, f))));
        }
  B.lunit.resize(n * n);
  B.runit.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int f : C.hom(a, b)) {
        B.lunit[B.hidx(a, b)].push_back(C.hom_position(f));
        B.runit[B.hidx(a, b)].push_back(C.hom_position(f));
      }
  return checked(std::move(B), "locally_discrete");
}

BicatPtr terminal_bicat() { return locally_discrete(terminal_category()); }

BicatPtr suspension_monoid(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table) {
  const int k = static_cast<int>(elements.size());
  if (k == 0 || static_cast<int>(table.size()) != k) throw InputError("suspension_monoid: table shape");
  for (auto& row : table) {
    if (static_cast<int>(row.size()) != k) throw InputError("suspension_monoid: table shape");
    for (int v : row)
      if (v < 0 || v >= k) throw InputError("suspension_monoid: entry out of range");
  }
  for (int a = 0; a < k; ++a)
    if (table[0][a] != a || table[a][0] != a) throw InputError("suspension_monoid: element 0 is not a unit");
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw InputError("suspension_monoid: not associative");
  FinBicat B;
  B.objects = {"*"};
  B.homs = {discrete_hom(elements)};
  FinBicat::Comp t;
  for (int g = 0; g < k; ++g)
    for (int f = 0; f < k; ++f) t.obj.push_back(table[g][f]);
  t.mor = t.obj;
  B.comp = {t};
  B.units = {0};
  std::vector<int> as;
  for (int h = 0; h < k; ++h)
    for (int g = 0; g < k; ++g)
      for (int f = 0; f < k; ++f) as.push_back(table[h][table[g][f]]);
  B.assoc = {as};
  std::vector<int> ids(k);
  for (int a = 0; a < k; ++a) ids[a] = a;
  B.lunit = {ids};
  B.runit = {ids};
  return checked(std::move(B), "suspension_monoid");
}

BicatPtr three_element_monoid() {
  // e = 0, a = 1, b = 2
  return suspension_monoid({"e", "a", "b"}, {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}});
}

BicatPtr cocycle_bicat(const std::array<int, 8>& omega) {
  for (int s : omega)
    if (s != 1 && s != -1) throw InputError("cocycle_bicat: signs must be 1 or -1");
  // 2-cell index = 2 * cell + (sign < 0)
  FinCat::Spec s;
  s.objects = {"e", "g"};
  s.morphism_ids = {"e+", "e-", "g+", "g-"};
  s.dom = {0, 0, 1, 1};
  s.cod = {0, 0, 1, 1};
  s.identity = {0, 2};
  s.compose = [](int g, int f) {
    if (g / 2 != f / 2) return -1;
    return 2 * (g / 2) + ((g % 2) ^ (f % 2));
  };
  FinBicat B;
  B.objects = {"*"};
  B.homs = {make_category(std::move(s))};
  FinBicat::Comp t;
  for (int g = 0; g < 2; ++g)
    for (int f = 0; f < 2; ++f) t.obj.push_back(g ^ f);
  for (int be = 0; be < 4; ++be)
    for (int al = 0; al < 4; ++al) t.mor.push_back(2 * ((be / 2) ^ (al / 2)) + ((be % 2) ^ (al % 2)));
  B.comp = {t};
  B.units = {0};
  std::vector<int> as;
  for (int h = 0; h < 2; ++h)
    for (int g = 0; g < 2; ++g)
      for (int f = 0; f < 2; ++f) as.push_back(2 * (h ^ g ^ f) + (omega[(h * 2 + g) * 2 + f] < 0));
  B.assoc = {as};
  B.lunit = {{0, 2}};
  B.runit = {{0, 2}};
  return checked(std::move(B), "cocycle_bicat");
}

BicatPtr coc2() { return cocycle_bicat({1, 1, 1, 1, 1, 1, 1, -1}); }

BicatPtr named_bicat(const std::string& name) {
  if (name == "terminal") return terminal_bicat();
  if (name == "ld1") return locally_discrete(ordinal_category(1));
  if (name == "ld2") return locally_discrete(ordinal_category(2));
  if (name == "coc2") return coc2();
  if (name == "monoid3") return three_element_monoid();
  if (name == "cocycle-trivial") return cocycle_bicat({1, 1, 1, 1, 1, 1, 1, 1});
  if (name == "iso") return locally_discrete(iso_category());
  if (name == "disc2") return locally_discrete(disc_category(2));
  throw InputError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
  return {"terminal", "ld1", "ld2", "coc2", "monoid3", "cocycle-trivial", "iso", "disc2"};
}

}  // namespace nervekit
