#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

using namespace testkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(NERVEKIT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "nervekit_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

Json read_file(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

}  // namespace

TEST_CASE("cli: roundtrip and characterize on fixtures") {
  Run r = run("roundtrip fixture:coc2");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["law"] == "roundtrip");

  Run c = run("characterize fixture:ld2");
  CHECK(c.code == 0);
}

TEST_CASE("cli: characterize rejects a PLUS file") {
  auto N = two_nerve(coc2(), {}, 3);
  fs::path src = scratch("plus.json");
  write_file(src, Json{{"construction", "plus"}, {"source", simp_to_json(*N.X)}}.dump());
  Run r = run("characterize " + src.string());
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out)["law"] == "c2-dif");
  Run t = run("check-tam " + src.string());
  CHECK(t.code == 0);
}

TEST_CASE("cli: malformed input exits 2") {
  fs::path bad = scratch("bad.json");
  write_file(bad, "{\"objects\": [");
  CHECK(run("validate " + bad.string()).code == 2);
  CHECK(run("validate " + scratch("missing.json").string()).code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("roundtrip fixture:no_such_fixture").code == 2);
}

TEST_CASE("cli: fixtures and JSON round trips") {
  Run f = run("fixture coc2");
  REQUIRE(f.code == 0);
  Json j = Json::parse(f.out);
  CHECK(j == bicat_to_json(*coc2()));

  fs::path b = scratch("coc2.json");
  write_file(b, f.out);
  CHECK(run("validate " + b.string()).code == 0);

  fs::path n = scratch("nerve.json");
  Run nr = run("nerve " + b.string() + " -o " + n.string());
  CHECK(nr.code == 0);
  TruncSimpCat X = simp_from_json(read_file(n));
  CHECK(X.X(2).num_objects() == 8);
  CHECK(run("validate " + n.string()).code == 0);

  fs::path g = scratch("gx.json");
  CHECK(run("bicatify " + n.string() + " -o " + g.string()).code == 0);
  CHECK(bicats_equal(*bicat_from_json(read_file(g)), *coc2()));

  fs::path c = scratch("cat.json");
  Run o = run("fixture ordinal --param 3 -o " + c.string());
  CHECK(o.code == 0);
  CHECK(category_from_json(read_file(c))->num_objects() == 4);
  CHECK(run("validate " + c.string()).code == 0);

  Run cb = run("fixture cocycle_bicat --param '[1,1,1,1,1,1,1,-1]'");
  CHECK(cb.code == 0);
  CHECK(validate_bicategory(*bicat_from_json(Json::parse(cb.out))));
}

TEST_CASE("cli: strictify and probe") {
  fs::path s = scratch("strict.json");
  Run r = run("strictify fixture:coc2 --seed 3 -o " + s.string());
  CHECK(r.code == 0);
  Json j = read_file(s);
  CHECK(j.contains("strict_map"));
  CHECK(j.contains("modification"));
  fs::path again = scratch("strict2.json");
  CHECK(run("strictify " + s.string() + " -o " + again.string()).code == 0);

  Run p = run("probe-ff fixture:ld2 fixture:coc2");
  CHECK(p.code == 0);
  CHECK(Json::parse(p.out)["pass"] == true);
}
