#include "catch_amalgamated.hpp"

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

const std::filesystem::path& scratch() {
  static const auto dir = [] {
    std::random_device rd;
    auto d = std::filesystem::temp_directory_path() / ("hilbcalc-cli-" + std::to_string(rd()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the tool with a private cache directory; stderr is discarded.
Run run(const std::string& args, bool cache = true) {
  std::string cmd = std::string(HILBCALC_EXE) + " " + args;
  if (cache && args.find("--cache-dir") == std::string::npos) cmd += " --cache-dir " + (scratch() / "cache").string();
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("surface-check", "[cli]") {
  CHECK(run("surface-check --model builtin:P2").status == 0);
  CHECK(run("surface-check --model builtin:Abelianlike --format pretty").status == 0);

  auto doc = json::parse(read_file(HILBCALC_MODELS "/Abelianlike.json"));
  for (auto& e : doc["mult"])
    if ((e["i"] == "eta" && e["j"] == "l") || (e["i"] == "l" && e["j"] == "eta")) e["c"] = "2";
  const auto bad = run("surface-check --model " + write_file("bad_mult.json", doc.dump()));
  CHECK(bad.status == 1);
  CHECK(bad.out.find("(a*b)*l") != std::string::npos);

  auto nopt = json::parse(read_file(HILBCALC_MODELS "/P2.json"));
  nopt.erase("point_class");
  CHECK(run("surface-check --model " + write_file("no_point.json", nopt.dump())).status == 2);
  CHECK(run("surface-check --model builtin:Nowhere").status == 2);
}

TEST_CASE("cup", "[cli]") {
  const std::string h = R"([{"factors":[{"r":1,"c":"h"}],"coeff":"1"}])";
  const auto r = run("cup --model builtin:P2 --n 1 " + quoted(h) + " " + quoted(h));
  CHECK(r.status == 0);
  CHECK(json::parse(r.out) == json::parse(R"([{"factors":[{"r":1,"c":"p"}],"coeff":"1"}])"));

  const std::string unit = R"([{"factors":[{"r":1,"c":"1"},{"r":1,"c":"1"}],"coeff":"1/2"}])";
  const std::string b = R"([{"factors":[{"r":1,"c":"h"},{"r":1,"c":"p"}],"coeff":"-3"}])";
  const auto echo = run("cup --model builtin:P2 --n 2 " + quoted(unit) + " " + write_file("b.json", b));
  CHECK(echo.status == 0);
  CHECK(json::parse(echo.out) == json::parse(b));

  const std::string req = R"({"n":1,"A":)" + h + R"(,"B":)" + h + "}";
  CHECK(run("cup --model builtin:P2 " + quoted(req) + " --format pretty").out == "a_{-1}(p)|0>\n");

  CHECK(run("cup --model builtin:P2 --n 2 " + quoted(h) + " " + quoted(unit)).status == 2);
  CHECK(run("cup --model builtin:P2 " + quoted(h) + " " + quoted(h)).status == 2);
  CHECK(run("cup --model builtin:P2 --n 1 not-a-file.json " + quoted(h)).status == 2);
}

TEST_CASE("intersect", "[cli]") {
  const auto one = run(R"(intersect --model builtin:P2 '{"n":1,"gens":[{"k":0,"alpha":"p"}]}')");
  CHECK(one.status == 0);
  CHECK(one.out == "1\n");
  const auto mismatch = run(R"(intersect --model builtin:P2 --n 2 '[{"k":0,"alpha":"h"}]')");
  CHECK(mismatch.status == 0);
  CHECK(mismatch.out == "0\n");
  CHECK(run(R"(intersect --model builtin:P2 '[{"k":0,"alpha":"p"}]')").status == 2);
}

TEST_CASE("structure-constants", "[cli]") {
  const auto f1 = (scratch() / "t1.jsonl").string(), f2 = (scratch() / "t2.jsonl").string(),
             f3 = (scratch() / "t3.jsonl").string();
  CHECK(run("structure-constants --model builtin:P2 -w 3 --out " + f1).status == 0);
  CHECK(run("structure-constants --model builtin:P2 -w 3 --jobs 3 --out " + f2).status == 0);
  CHECK(run("structure-constants --model builtin:P2 -w 3 --no-cache --out " + f3, false).status == 0);
  const auto golden = read_file(HILBCALC_FIXTURES "/p2_table_w3.jsonl");
  CHECK(read_file(f1) == golden);
  CHECK(read_file(f2) == golden);
  CHECK(read_file(f3) == golden);
  // a warm cache gives the same bytes
  CHECK(run("structure-constants --model builtin:P2 -w 3").out == golden);
  CHECK(run("structure-constants --model builtin:P2 -w 0").status == 2);
}

TEST_CASE("verify", "[cli]") {
  const auto r = run("verify heisenberg --model builtin:P2");
  CHECK(r.status == 0);
  const auto rec = json::parse(r.out);
  CHECK(rec.at("suite") == "heisenberg");
  CHECK(rec.at("passed") == true);
  CHECK(run("verify no-such-suite").status == 2);
}

TEST_CASE("expand-chern", "[cli]") {
  const auto r = run("expand-chern --model builtin:P2 --k 0 --alpha h --r 1 --beta h");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out) == json::parse(R"({"h":[{"factors":[{"m":-1,"c":"p"}],"indices":[-1],"coeff":"1"}]})"));
  const auto all = run("expand-chern --model builtin:P2 --k 1 --alpha p --r 2");
  CHECK(all.status == 0);
  CHECK(json::parse(all.out).size() == 3);
  CHECK(run("expand-chern --model builtin:P2 --k 1 --alpha zz").status == 2);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("cup --model builtin:P2 --n x a b").status == 2);
  CHECK(run("--help").status == 0);
}
