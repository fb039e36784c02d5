#include "doctest.h"

#include "cli.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Out {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Out run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = adic::cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

struct Dir {
  fs::path path;
  Dir() {
    path = fs::temp_directory_path() / ("adic-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~Dir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

void write(const std::string& file, const std::string& text) { std::ofstream(file) << text; }

}  // namespace

TEST_CASE("examples and classification through the command line") {
  Dir dir;
  auto list = run({"example", "list", "--json"});
  REQUIRE(list.code == 0);
  auto names = list.report()["results"]["examples"];
  CHECK(names.size() >= 10);

  const std::string ch = dir / "chacon.json";
  REQUIRE(run({"example", "chacon", "--emit", ch}).code == 0);
  auto c = run({"classify", ch, "--json"});
  REQUIRE(c.code == 0);
  auto r = c.report();
  CHECK(r["status"] == "decided");
  CHECK(r["results"]["finite"] == 2);
  CHECK(r["results"]["infinite"] == 0);
  const auto& ms = r["results"]["measures"];
  REQUIRE(ms.size() == 2);
  CHECK(ms[0]["ray"] == json::array({"1", "0"}));
  CHECK(ms[0]["atomic"] == true);
  CHECK(ms[0]["atom"]["cycle"] == json::array({"e"}));
  CHECK(ms[1]["ray"] == json::array({"1/3", "2/3"}));

  // same input, same bytes
  CHECK(run({"classify", ch, "--json"}).out == c.out);
  // table output carries the same numbers
  auto t = run({"classify", ch});
  CHECK(t.code == 0);
  CHECK(t.out.find("1/3") != std::string::npos);

  auto m = run({"measure", ch, "--ray", "1", "--cylinder", "a,b", "--json"});
  REQUIRE(m.code == 0);
  CHECK(m.report()["results"]["value"] == "2/27");

  auto s = run({"successor", ch, "--path", "a,b|d", "-n", "3", "--json"});
  REQUIRE(s.code == 0);
  const json succ = s.report()["results"]["successors"];
  REQUIRE(succ.size() == 3);
  CHECK(succ[0]["names"] == "b,b|d");
  CHECK(succ[1]["names"] == "c,b|d");
  CHECK(succ[2]["names"] == "d,b|d");
}

TEST_CASE("towers and covers") {
  Dir dir;
  const std::string tri = dir / "tri.json", cov = dir / "cov.json";
  REQUIRE(run({"example", "ics-triadic", "--emit", tri}).code == 0);
  auto c = run({"classify", tri, "--json"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("Infinite") != std::string::npos);
  REQUIRE(run({"cover", tri, "--emit", cov}).code == 0);
  auto cc = run({"classify", cov, "--json"});
  REQUIRE(cc.code == 0);
  CHECK(cc.report()["results"]["finite"] == 1);
  CHECK(cc.report()["results"]["infinite"] == 1);
}

TEST_CASE("count-ergodic and decompose") {
  Dir dir;
  const std::string f = dir / "seven.json";
  REQUIRE(run({"example", "frobenius-seven", "--emit", f}).code == 0);
  auto d = run({"decompose", f, "--json"});
  REQUIRE(d.code == 0);
  CHECK(d.out.find("\"streams\"") != std::string::npos);
  const std::string t = dir / "t.json";
  REQUIRE(run({"example", "triangle-23", "--emit", t}).code == 0);
  auto e = run({"count-ergodic", t, "--json"});
  REQUIRE(e.code == 0);
  CHECK(e.report()["results"]["ergodic"] == 2);
  CHECK(e.report()["results"]["liminf_alphabet_size"] == 2);
}

TEST_CASE("exit codes") {
  Dir dir;
  const std::string trunc = dir / "trunc.json";
  write(trunc, R"({"terms": [[[1,1],[1,1]], [[1,1],[1,1]], [[1,1],[1,1]]]})");
  auto u = run({"classify", trunc, "--json"});
  CHECK(u.code == 2);
  CHECK(u.report()["status"] == "Undecided");
  CHECK(run({"classify", dir / "missing.json"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  const std::string bad = dir / "bad.json";
  write(bad, R"({"terms": [[[1,1]], [[1,1]]]})");
  auto b = run({"classify", bad});
  CHECK(b.code == 1);
  CHECK_FALSE(b.err.empty());
  write(bad, "not json");
  CHECK(run({"classify", bad}).code == 1);
}

TEST_CASE("bound and depth are echoed") {
  Dir dir;
  const std::string f = dir / "od.json";
  REQUIRE(run({"example", "odometer", "n=3", "--emit", f}).code == 0);
  auto r = run({"count-ergodic", f, "--depth", "7", "--bound", "1e6", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["depth"] == 7);
  CHECK(r.report()["bound"] == "1000000");
  CHECK(run({"count-ergodic", f, "--bound", "abc"}).code == 1);
}

TEST_CASE("nested rotation example") {
  auto r = run({"example", "nested-rotation", "n=1", "nhat=2", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Infinite") != std::string::npos);
  auto f = run({"example", "nested-rotation", "n=2", "nhat=2", "--json"});
  REQUIRE(f.code == 0);
  CHECK(f.out.find("Finite") != std::string::npos);
}
