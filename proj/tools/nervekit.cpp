#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nervekit/bicatify.hpp"
#include "nervekit/fixtures.hpp"
#include "nervekit/pstrans.hpp"

using namespace nervekit;

namespace {

struct Options {
  std::string out, choices, caps_text;
  std::vector<std::string> inputs;
  std::string name, param;
  bool direct4 = false;
  std::uint64_t seed = 1;
  Caps caps;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump() << "\n";
}

bool is_fixture(const std::string& arg) { return arg.rfind("fixture:", 0) == 0; }

BicatPtr load_bicat(const std::string& arg) {
  if (is_fixture(arg)) return named_bicat(arg.substr(8));
  return bicat_from_json(read_json(arg));
}

bool looks_like_bicat(const Json& j) { return j.is_object() && j.contains("associator"); }

// A simplicial object from a simp file, a plus file, or a bicategory (its nerve).
SimpPtr load_simp(const std::string& arg, const Options& o, int L = 4) {
  if (is_fixture(arg)) return two_nerve(named_bicat(arg.substr(8)), o.caps, L).X;
  Json j = read_json(arg);
  if (is_plus_json(j)) return plus_from_json(j, o.caps).plus;
  if (looks_like_bicat(j)) return two_nerve(bicat_from_json(j), o.caps, L).X;
  return std::make_shared<TruncSimpCat>(simp_from_json(j, o.caps));
}

Json sizes(const TruncSimpCat& X) {
  Json a = Json::array();
  for (int n = 0; n <= X.L; ++n)
    a.push_back(Json{{"level", n}, {"objects", X.X(n).num_objects()}, {"morphisms", X.X(n).num_morphisms()}});
  return a;
}

Certificate cmd_validate(const Options& o) {
  Json j = read_json(o.inputs.at(0));
  if (looks_like_bicat(j)) {
    Certificate c = validate_bicategory(*bicat_from_json(j));
    if (c && c.law.empty()) c.law = "bicategory";
    return c;
  }
  if (is_plus_json(j)) return plus_from_json(j, o.caps).report;
  Certificate c;
  if (j.is_object() && j.contains("levels")) c = validate_simplicial(simp_from_json(j, o.caps));
  else if (j.is_object() && j.contains("compose")) c = validate_category(*category_from_json(j));
  else throw InputError("validate: unrecognised document");
  if (c && c.law.empty()) c.law = j.contains("levels") ? "simplicial" : "category";
  return c;
}

Certificate cmd_nerve(const Options& o) {
  BicatPtr B = load_bicat(o.inputs.at(0));
  NerveResult N = two_nerve(B, o.caps, 4, false);
  write_json(o.out, simp_to_json(*N.X));
  Json w{{"levels", sizes(*N.X)}};
  if (o.direct4) {
    NerveResult D = two_nerve(B, o.caps, 4, true);
    Certificate c = compare_level4(D, N);
    w["direct_level4"] = c.to_json();
    if (!c) return Certificate::fail("direct-level4", w);
  }
  Certificate v = validate_simplicial(*N.X);
  if (!v) return Certificate::fail("nerve-simplicial", v.to_json());
  return Certificate::ok("nerve", w);
}

Certificate cmd_bicatify(const Options& o) {
  SimpPtr X = load_simp(o.inputs.at(0), o);
  BicatifyResult G = bicategorify(X, o.caps);
  write_json(o.out, bicat_to_json(*G.GX));
  write_json(o.choices, G.choices.to_json(*X));
  Json w{{"choice_independence", G.choice_independence.to_json()},
         {"s4", G.s4.to_json()},
         {"validate", G.pentagon.to_json()}};
  if (!G.choice_independence) return Certificate::fail("choice-independence", w);
  if (!G.pentagon) return Certificate::fail(G.pentagon.law, w);
  if (!G.s4) return Certificate::fail("s4-pentagon", w);
  return Certificate::ok("bicatify", w);
}

Certificate cmd_plus(const Options& o) {
  SimpPtr X = load_simp(o.inputs.at(0), o);
  PlusResult P = plus_construction(X, o.caps);
  write_json(o.out, plus_to_json(P));
  return P.report;
}

Certificate cmd_strictify(const Options& o) {
  const std::string& arg = o.inputs.at(0);
  BicatPtr A, B;
  int L = 3;
  Json mapj;
  if (is_fixture(arg)) {
    A = B = named_bicat(arg.substr(8));
  } else {
    Json j = read_json(arg);
    if (looks_like_bicat(j)) {
      A = B = bicat_from_json(j);
    } else {
      if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map") ||
          !j.contains("L"))
        throw InputError("strictify: expected {\"source\", \"target\", \"L\", \"map\"}");
      A = bicat_from_json(j["source"]);
      B = bicat_from_json(j["target"]);
      L = j["L"].get<int>();
      mapj = j["map"];
    }
  }
  NerveResult NA = two_nerve(A, o.caps, L);
  NerveResult NB = A == B ? NA : two_nerve(B, o.caps, L);
  PseudoSimpMap f = mapj.is_null() ? random_decoration(as_pseudo(identity_simp_map(NA.X)), o.seed)
                                   : pseudo_map_from_json(mapj, NA.X, NB.X);
  if (auto c = validate_pseudo_map(f); !c) return Certificate::fail("input-pseudo-map", c.to_json());
  Strictified S = strictify(f, NB);
  if (S.report)
    write_json(o.out, Json{{"source", bicat_to_json(*A)},
                           {"target", bicat_to_json(*B)},
                           {"L", L},
                           {"map", pseudo_map_to_json(f)},
                           {"strict_map", simp_map_to_json(S.h)},
                           {"modification", modification_to_json(f, S.comparison)}});
  return S.report;
}

Certificate cmd_probe(const Options& o) {
  if (o.inputs.size() != 2) throw InputError("probe-ff: expects two bicategories");
  return fully_faithful_probe(load_bicat(o.inputs[0]), load_bicat(o.inputs[1]), o.caps);
}

Json fixture_json(const Options& o) {
  Json p = o.param.empty() ? Json() : Json::parse(o.param);
  if (o.name == "ordinal") return category_to_json(*ordinal_category(p.is_null() ? 2 : p.get<int>()));
  if (o.name == "iso_category") return category_to_json(*iso_category());
  if (o.name == "disc") return category_to_json(*disc_category(p.is_null() ? 2 : p.get<int>()));
  if (o.name == "locally_discrete") return bicat_to_json(*locally_discrete(category_from_json(p)));
  if (o.name == "suspension_monoid")
    return bicat_to_json(*suspension_monoid(p.at("elements").get<std::vector<std::string>>(),
                                            p.at("table").get<std::vector<std::vector<int>>>()));
  if (o.name == "cocycle_bicat") return bicat_to_json(*cocycle_bicat(p.get<std::array<int, 8>>()));
  return bicat_to_json(*named_bicat(o.name));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nervekit: 2-nerves, Tamsamani 2-categories and bicategories on finite inputs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.out, "write the produced artifact here");
  app.add_flag("--direct-level4", o.direct4, "also enumerate nerve level 4 directly and compare");
  app.add_option("--caps", o.caps_text, "resource caps as a JSON object");
  app.add_option("--seed", o.seed, "seed for generated inputs");
  app.add_option("--choices", o.choices, "bicatify: write the chosen pseudo-inverses here");

  auto one = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("input", o.inputs, "input file or fixture:<name>")->required()->expected(1);
    return s;
  };
  auto* validate = one("validate", "validate a category, bicategory or simplicial object");
  auto* nerve = one("nerve", "2-nerve of a bicategory");
  auto* tam = one("check-tam", "Tamsamani conditions");
  auto* simpson = one("check-simpson", "Simpson conditions");
  auto* character = one("characterize", "decide whether X is the 2-nerve of a bicategory");
  auto* bicatify = one("bicatify", "bicategory GX of a Tamsamani 2-category");
  auto* roundtrip = one("roundtrip", "bicategorify the nerve and compare tables");
  auto* plus = one("plus", "plus-construction X+");
  auto* strict = one("strictify", "strictify a pseudo map between 2-nerves");
  auto* probe = app.add_subcommand("probe-ff", "count homs against nerve maps");
  probe->add_option("inputs", o.inputs, "two bicategories")->required()->expected(2);
  auto* fixture = app.add_subcommand("fixture", "emit a built-in fixture");
  fixture->add_option("name", o.name, "fixture name")->required();
  fixture->add_option("--param", o.param, "JSON parameter for parametric fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!o.caps_text.empty()) o.caps = Caps::from_json(Json::parse(o.caps_text));
    Certificate c;
    if (*fixture) {
      Json j = fixture_json(o);
      write_json(o.out, j);
      if (o.out.empty()) std::cout << j.dump() << "\n";
      return 0;
    }
    if (*validate) c = cmd_validate(o);
    else if (*nerve) c = cmd_nerve(o);
    else if (*tam) c = check_tamsamani(*load_simp(o.inputs.at(0), o));
    else if (*simpson) c = check_simpson(*load_simp(o.inputs.at(0), o));
    else if (*character) c = check_characterization(*load_simp(o.inputs.at(0), o), o.caps);
    else if (*bicatify) c = cmd_bicatify(o);
    else if (*roundtrip) c = roundtrip_counit(load_bicat(o.inputs.at(0)), o.caps);
    else if (*plus) c = cmd_plus(o);
    else if (*strict) c = cmd_strictify(o);
    else if (*probe) c = cmd_probe(o);
    std::cout << c.to_json().dump(2) << "\n";
    return c.pass ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
