#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hermlat/catalog.hpp"
#include "hermlat/error.hpp"
#include "support.hpp"

using namespace hermlat;

namespace {

std::string message_of(const std::string& text) {
  try {
    from_json_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("names") {
    auto names = catalog_names();
    for (auto n : {"A2", "D4", "E8", "A2perpA2", "Leech", "Pb", "T", "Pa", "LK-d1", "LK-d2", "LK-d3", "LK-d7a",
                   "LK-d7b", "LK-d11a", "LK-d11b", "Pc"})
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
    try {
      catalog_get("nope");
      CHECK(false);
    } catch (const ValidationError& e) {
      std::string s = e.what();
      CHECK(s.find("Pb") != std::string::npos);
      CHECK(s.find("Leech") != std::string::npos);
    }
  }

  TEST_CASE("fixed Gram matrices") {
    auto& Pb = catalog_h("Pb");
    auto f = Pb.field();
    auto a = f.element(ratio(1, 2), ratio(1, 2));
    CHECK(Pb.gram()(0, 1) == a);
    CHECK(Pb.gram()(1, 2) == a);
    CHECK(Pb.gram()(0, 2) == f.from_int(-1));
    CHECK(Pb.gram()(1, 0) == a.conj());
    auto& T = catalog_h("T");
    CHECK(T.field().d == 11);
    CHECK(T.gram()(0, 1) == T.field().element(ratio(1, 2), ratio(1, 2)));
    auto& L = catalog_h("LK-d7a");
    CHECK(L.gram()(0, 1) == L.field().from_int(2) / L.field().sqrt_neg_d());
    CHECK(catalog_get("Pb").source == "fixed");
    CHECK(catalog_get("Pc").source == "constructed");
  }

  TEST_CASE("trace determinant formula on every Hermitian entry") {
    for (auto& n : catalog_names()) {
      auto e = catalog_get(n);
      if (e.kind() != LatticeKind::hermitian) continue;
      const auto& L = e.hermitian();
      CHECK(zl_det(trace_lattice(L)) ==
            pow(Rational(testing_support::disc_abs(L.field())), L.rank()) * pow(herm_disc(L), 2));
    }
  }

  TEST_CASE("Leech characterization") {
    auto& L = catalog_z("Leech");
    CHECK(L.rank() == 24);
    CHECK(zl_is_even(L));
    CHECK(zl_det(L) == 1);
  }

  TEST_CASE("save and load round trip") {
    auto dir = std::filesystem::temp_directory_path();
    for (auto& n : catalog_names()) {
      auto e = catalog_get(n);
      auto path = (dir / ("hermlat_rt_" + n + ".json")).string();
      save_entry(e, path);
      auto back = load_entry(path);
      CHECK(back.kind() == e.kind());
      if (e.kind() == LatticeKind::euclidean) CHECK(back.zlattice().gram() == e.zlattice().gram());
      else CHECK(back.hermitian() == e.hermitian());
      CHECK(to_json_text(back) == to_json_text(e));
      std::filesystem::remove(path);
    }
  }

  TEST_CASE("ingestion errors name the entry") {
    const std::string good = R"({"field": {"d": 7}, "gram": [[{"re": 2, "im": 0}, {"re": "1/2", "im": "1/2"}],
                                                        [{"re": "1/2", "im": "-1/2"}, {"re": 2, "im": 0}]]})";
    CHECK(message_of(good).empty());
    std::string bad_im = good;
    bad_im.replace(bad_im.find(R"("im": "1/2")"), 11, R"("im": "x/2")");
    CHECK(message_of(bad_im).find("gram[0][1].im") != std::string::npos);
    std::string asym = good;
    asym.replace(asym.find(R"("im": "-1/2")"), 12, R"("im": "1/2")");
    CHECK(message_of(asym).find("[1][0]") != std::string::npos);
    CHECK(!message_of(R"({"gram": [[1, 2], [2, 1]]})").empty());
    CHECK(!message_of(R"({"gram": [[1, 2]]})").empty());
    CHECK(!message_of("not json").empty());
    CHECK_THROWS_AS(load_entry("/nonexistent/file.json"), ValidationError);
  }

  TEST_CASE("Hermitian Leech structure ingestion") {
    auto& P = catalog_h("PcPb");
    CHECK(P.rank() == 12);
    auto e = from_json_text(to_json_text(catalog_get("PcPb")));
    CHECK(e.hermitian() == P);
    CHECK(zl_det(trace_lattice(P)) == 1);
    CHECK(dual_is_multiple(P, P.field().sqrt_neg_d()));
  }
}
