#include "doctest.h"

#include "hermlat/catalog.hpp"
#include "hermlat/certify.hpp"
#include "hermlat/error.hpp"
#include "json.hpp"

using namespace hermlat;

TEST_SUITE("certify") {
  TEST_CASE("sublattice counts") {
    auto& Pb = catalog_h("Pb");
    auto self = count_isometric_sublattices(Pb, Pb);
    CHECK(self.count == 1);
    CHECK(self.exhaustive);
    auto& T = catalog_h("T");
    auto t = count_isometric_sublattices(T, T);
    CHECK(t.count == 1);
    CHECK(t.raw == t.self);
    // rank one: minimal vectors up to units
    auto f = Pb.field();
    HermMatrix g(1, 1, f.from_int(2));
    auto r1 = count_isometric_sublattices(Pb, HermLattice(f, g));
    CHECK(r1.count == 21);
    // a target whose off-diagonal entry is not a possible inner product
    HermMatrix off(2, 2, f.from_int(2));
    off(0, 1) = f.element(ratio(1, 3), Rational(0));
    off(1, 0) = off(0, 1);
    CHECK(count_isometric_sublattices(Pb, HermLattice(f, off)).count == 0);
    CHECK_THROWS_AS(count_isometric_sublattices(Pb, T), ValidationError);
    CHECK_THROWS_AS(count_isometric_sublattices(catalog_h("PcPb"), catalog_h("Pc")), UnsupportedError);
  }

  TEST_CASE("counts do not depend on threads or generators") {
    auto& Pb = catalog_h("Pb");
    auto f = Pb.field();
    HermMatrix g(2, 2, f.from_int(2));
    g(0, 1) = Pb.gram()(0, 1);
    g(1, 0) = Pb.gram()(1, 0);
    HermLattice target(f, g);
    RepOptions one, four;
    four.threads = 4;
    auto a = count_isometric_sublattices(Pb, target, one);
    auto b = count_isometric_sublattices(Pb, target, four);
    CHECK(a.count == b.count);
    CHECK(a.raw == b.raw);
    RepOptions gens;
    gens.generators.push_back(HermMatrix::identity(3, -f.one(), f.zero()));
    auto c = count_isometric_sublattices(Pb, target, gens);
    CHECK(c.count == a.count);
    CHECK(c.per_orbit.size() * 2 == a.per_orbit.size());
    RepOptions bad;
    HermMatrix notiso = HermMatrix::identity(3, f.one(), f.zero());
    notiso(0, 1) = f.one();
    bad.generators.push_back(notiso);
    CHECK_THROWS_AS(count_isometric_sublattices(Pb, target, bad), ValidationError);
  }

  TEST_CASE("A-set profile") {
    auto& Pb = catalog_h("Pb");
    auto m = herm_minimum(Pb, true);
    auto p = a_set_profile(Pb, m.vectors.front(), Pb.field().omega());
    std::size_t pairs = 0;
    for (auto& [v, n] : p.histogram) pairs += n;
    CHECK(pairs == p.size * (p.size ? p.size - 1 : 0));
    CHECK_THROWS_AS(a_set_profile(Pb, {Pb.field().one(), Pb.field().one(), Pb.field().zero()}, Pb.field().one()),
                    ValidationError);
  }

  TEST_CASE("T (x) T") {
    auto& T = catalog_h("T");
    auto c = certify_tensor_min(T, T, 2);
    CHECK(c.verdict == Verdict::proven);
    REQUIRE(c.rank_cases.size() == 2);
    CHECK(c.rank_cases[1].status == CaseStatus::equality_possible);
    bool eq = false;
    for (auto& w : c.witnesses) eq = eq || (w.kind == "equality case" && w.norm == 2);
    CHECK(eq);
    auto j = nlohmann::json::parse(certificate_json(c));
    for (auto k : {"claim", "verdict", "rank_cases", "rep_counts", "witnesses", "runtime_ms"}) CHECK(j.contains(k));
    CHECK(j["verdict"] == "proven");
  }

  TEST_CASE("wrong claims are not proven") {
    auto& T = catalog_h("T");
    CHECK(certify_tensor_min(T, T, 3).verdict == Verdict::inconclusive);
    CHECK(certify_tensor_min(T, T, 1).verdict != Verdict::proven);
    auto& Pb = catalog_h("Pb");
    auto c = certify_tensor_min(Pb, Pb, 3);
    CHECK(c.verdict == Verdict::proven);
    CHECK(certify_tensor_min(Pb, Pb, 4).verdict == Verdict::inconclusive);
  }

  TEST_CASE("Pa (x) Pa reaches the rank-2 bound") {
    // rank 2 gives 2 * 12/7 = 24/7 < 4, and the enumeration finds it
    auto& Pa = catalog_h("Pa");
    auto c = certify_tensor_min(Pa, Pa, ratio(24, 7));
    CHECK(c.verdict == Verdict::proven);
    auto four = certify_tensor_min(Pa, Pa, 4);
    CHECK(four.verdict == Verdict::inconclusive);
    CHECK(*four.upper == ratio(24, 7));
    // weaker inputs leave the lower bound short
    CertifyOptions o;
    o.m_override[2] = RootValue::of(ratio(1, 2));
    o.cross_check_dim = 0;
    CHECK(certify_tensor_min(Pa, Pa, ratio(24, 7), o).verdict != Verdict::proven);
  }

  TEST_CASE("certify_48 on T") {
    auto c = certify_48(catalog_h("T"));
    CHECK(c.verdict == Verdict::proven);
    CHECK(c.claim_value == 2);
    CHECK(c.rep_counts.size() == 2);
    auto bad = certify_48(catalog_h("Pb"));
    CHECK(bad.verdict == Verdict::inconclusive);
  }

  TEST_CASE("d_3 argument") {
    auto r = certify_d3_at_least(catalog_h("Pb"));
    CHECK(r.holds);
    auto nope = certify_d3_at_least(catalog_h("Pc"));
    CHECK(!nope.certifiable);
    CHECK_THROWS_AS(certify_d3_at_least(catalog_h("T")), ValidationError);
  }

  TEST_CASE("perfection report") {
    auto p = tensor_perfection_report(catalog_z("A2"), catalog_z("A2"));
    CHECK(p.enumerated);
    CHECK(p.perfection_rank == 9);
    CHECK(p.threshold == 10);
    CHECK(!p.perfect);
    CHECK(p.min == 4);
    CHECK(p.min_is_product);
    CHECK(p.minimal_vectors_split);
    auto big = tensor_perfection_report(catalog_z("E8"), catalog_z("E8"), 16);
    CHECK(!big.enumerated);
    CHECK(big.kitaoka_applies);
    CHECK(big.conclusion.find("not perfect") != std::string::npos);
  }

  TEST_CASE("certificate JSON is deterministic") {
    auto& T = catalog_h("T");
    auto a = certify_tensor_min(T, T, 2);
    CertifyOptions o;
    o.threads = 3;
    auto b = certify_tensor_min(T, T, 2, o);
    a.runtime_ms.reset();
    b.runtime_ms.reset();
    CHECK(certificate_json(a) == certificate_json(b));
    CHECK(nlohmann::json::parse(certificate_json(a))["runtime_ms"].is_null());
  }
}
