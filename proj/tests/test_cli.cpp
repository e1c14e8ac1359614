#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(HERMLAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool has(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("min --catalog A2 --bogus").code == 2);
    CHECK(run("min --catalog NoSuch").code == 2);
    CHECK(run("min").code == 2);
    CHECK(run("dr --catalog A2 -r 1").code == 2);
    CHECK(run("deep-holes -d 4").code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("info and min") {
    auto r = run("min --catalog E8");
    CHECK(r.code == 0);
    CHECK(r.out == "min = 2, kissing = 240\n");
    r = run("min --catalog Pb --json");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["min"] == "2");
    CHECK(j["count"] == 42);
    r = run("info --catalog Pb");
    CHECK(has(r.out, "disc 1"));
    CHECK(has(r.out, "trace det 343"));
  }

  TEST_CASE("deep holes") {
    auto r = run("deep-holes -d 7");
    CHECK(r.code == 0);
    CHECK(has(r.out, "mu = 4/7, 6 deep holes, 2 orbits"));
    CHECK(has(run("deep-holes -d 11").out, "mu = 9/11"));
  }

  TEST_CASE("shortvecs, perfection, dual, trace, tensor") {
    auto r = run("shortvecs --catalog A2 --bound 2");
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    CHECK(run("perfection --catalog D4").out == "perfection rank = 10 of 10, perfect\n");
    r = run("perfection --catalog A2 --catalog A2");
    CHECK(has(r.out, "perfection rank = 9 of 10"));
    CHECK(has(r.out, "not perfect"));
    auto t = nlohmann::json::parse(run("trace --catalog Pb").out);
    CHECK(t["gram"].size() == 6);
    auto d = nlohmann::json::parse(run("dual --catalog A2").out);
    CHECK(d["gram"][0][0] == "2/3");
    auto tp = nlohmann::json::parse(run("tensor --catalog T --catalog T").out);
    CHECK(tp["gram"].size() == 4);
    CHECK(tp["field"]["d"] == 11);
    CHECK(run("tensor --catalog T --catalog A2").code == 2);
  }

  TEST_CASE("files") {
    auto path = (std::filesystem::temp_directory_path() / "hermlat_cli_pb.json").string();
    CHECK(run("catalog Pb --out " + path).code == 0);
    auto r = run("dr --in " + path + " -r 2");
    CHECK(r.code == 0);
    CHECK(has(r.out, "d_2 = 2 (certified)"));
    CHECK(run("isometry --catalog Pb --in " + path).out.rfind("isometric", 0) == 0);
    std::filesystem::remove(path);
    CHECK(run("min --in /nonexistent.json").code == 2);
  }

  TEST_CASE("isometry and rep-count") {
    CHECK(run("isometry --catalog LK-d7a --catalog LK-d7b").out.rfind("isometric", 0) == 0);
    CHECK(run("isometry --catalog D4 --catalog A2perpA2").out == "not isometric\n");
    auto r = run("rep-count --catalog Pb --catalog Pb");
    CHECK(r.code == 0);
    CHECK(has(r.out, "count = 1"));
  }

  TEST_CASE("certificates and exit codes") {
    auto r = run("certify-tensor --catalog T --catalog T --claim 2 --json");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "proven");
    CHECK(j["runtime_ms"].is_null());
    CHECK(run("certify-tensor --catalog T --catalog T --claim 3").code == 3);
    CHECK(run("certify-tensor --catalog T --catalog Pb --claim 3").code == 2);
    CHECK(run("certify-48 --catalog T").code == 0);
    CHECK(run("certify-48 --catalog Pb").code == 3);
    CHECK(run("certify-d3 --catalog Pb").code == 0);
    CHECK(run("certify-d3 --catalog Pc").code == 3);
    auto timed = nlohmann::json::parse(run("certify-tensor --catalog T --catalog T --claim 2 --json --timing").out);
    CHECK(timed["runtime_ms"].is_number());
  }

  TEST_CASE("output does not depend on threads") {
    for (std::string verb : {"certify-tensor --catalog Pb --catalog Pb --claim 3 --json", "min --catalog D4 --json",
                             "rep-count --catalog Pb --catalog Pb", "dr --catalog Pc -r 2 --json"}) {
      auto a = run(verb + " --threads 1"), b = run(verb + " --threads 4");
      CHECK(a.out == b.out);
      CHECK(a.code == b.code);
    }
  }

  TEST_CASE("catalog listing") {
    auto r = run("catalog --json");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() >= 16);
    CHECK(run("catalog Nope").code == 2);
  }
}
