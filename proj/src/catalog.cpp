#include "hermlat/catalog.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "hermlat/error.hpp"

namespace hermlat {

namespace {

using json = nlohmann::json;

// Leech lattice on a basis from the extended Golay code construction.
constexpr int kLeech[24][24] = {
{8, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 2, 0, 2, 0, 2, 2, 2, 0, 0, 0, 2, 5},
    {4, 4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 2, 1, 2, 1, 1, 1, 0, 0, 2, 3},
    {4, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 2, 0, 1, 0, 2, 3},
    {4, 2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 0, 1, 2, 2, 1, 0, 1, 2, 3},
    {4, 2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 0, 2, 2, 1, 1, 1, 0, 1, 3},
    {4, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 2, 1, 1, 2, 0, 1, 2, 2, 0, 1, 1, 1, 3},
    {4, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 1, 0, 2, 1, 1, 1, 2, 1, 0, 1, 2, 3},
    {4, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2, 0, 2, 1, 1, 2, 2, 1, 1, 0, 1, 3},
    {4, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 1, 1, 1, 1, 2, 1, 2, 1, 1, 1, 1, 3},
    {4, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 1, 0, 2, 0, 2, 2, 1, 1, 1, 1, 2, 3},
    {4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 0, 2, 1, 2, 1, 1, 0, 1, 1, 1, 3},
    {4, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 1, 1, 1, 1, 2, 2, 1, 0, 0, 1, 2, 3},
    {2, 2, 2, 2, 2, 1, 1, 2, 1, 1, 2, 1, 4, 2, 2, 2, 2, 2, 2, 2, 2, 1, 2, 3},
    {0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 2, 4, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2},
    {2, 2, 1, 1, 1, 2, 2, 2, 1, 2, 2, 1, 2, 1, 4, 2, 2, 2, 2, 2, 2, 2, 2, 3},
    {0, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 2, 2, 2, 4, 2, 1, 2, 2, 2, 2, 2, 2},
    {2, 2, 1, 1, 2, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 1, 2, 2, 2, 2, 3},
    {2, 1, 1, 2, 2, 2, 1, 2, 1, 2, 1, 2, 2, 2, 2, 1, 2, 4, 2, 2, 2, 2, 2, 3},
    {2, 1, 2, 2, 1, 2, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 1, 2, 4, 2, 2, 2, 2, 3},
    {0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0, 0, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2},
    {0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 1, 2},
    {0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 4, 2, 2},
    {2, 2, 2, 2, 1, 1, 2, 1, 1, 2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 2, 4, 3},
    {5, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 2, 3, 2, 3, 3, 3, 2, 2, 2, 3, 6},
};

ZLattice z_from(const std::vector<std::vector<long>>& g) { return zl_make(g); }

// Hermitian Gram from upper triangle entries given as (re, im) strings;
// the diagonal entries are rationals.
HermLattice h_from(std::int64_t d, const std::vector<std::string>& diag,
                   const std::vector<std::tuple<int, int, std::string, std::string>>& upper) {
  QuadField f = make_field(d);
  HermMatrix g(diag.size(), diag.size(), f.zero());
  for (std::size_t i = 0; i < diag.size(); ++i) g(i, i) = f.element(parse_rational(diag[i]), 0);
  for (auto& [i, j, re, im] : upper) {
    g(i, j) = f.element(parse_rational(re), parse_rational(im));
    g(j, i) = g(i, j).conj();
  }
  return HermLattice(f, std::move(g));
}

HermLattice lk(std::int64_t d, const std::string& re, const std::string& im) {
  return h_from(d, {"1", "1"}, {{0, 1, re, im}});
}

struct Builder {
  const char* name;
  const char* source;
  const char* notes;
  std::function<std::variant<ZLattice, HermLattice>()> make;
};

const std::vector<Builder>& builders() {
  static const std::vector<Builder> b = {
      {"A2", "fixed", "root lattice A2", [] { return z_from({{2, 1}, {1, 2}}); }},
      {"D4", "fixed", "root lattice D4",
       [] { return z_from({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}); }},
      {"E8", "fixed", "root lattice E8 (Cartan matrix)",
       [] {
         return z_from({{2, -1, 0, 0, 0, 0, 0, 0},
                        {-1, 2, -1, 0, 0, 0, 0, 0},
                        {0, -1, 2, -1, 0, 0, 0, -1},
                        {0, 0, -1, 2, -1, 0, 0, 0},
                        {0, 0, 0, -1, 2, -1, 0, 0},
                        {0, 0, 0, 0, -1, 2, -1, 0},
                        {0, 0, 0, 0, 0, -1, 2, 0},
                        {0, 0, -1, 0, 0, 0, 0, 2}});
       }},
      {"A2perpA2", "fixed", "A2 + A2", [] { return z_from({{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 2}}); }},
      {"Leech", "fixed", "Leech lattice; pinned by even, det 1, min 4",
       [] {
         std::vector<std::vector<long>> g(24, std::vector<long>(24));
         for (int i = 0; i < 24; ++i)
           for (int j = 0; j < 24; ++j) g[i][j] = kLeech[i][j];
         return z_from(g);
       }},
      {"Pb", "fixed", "Barnes lattice over Z[a], a = (1+sqrt(-7))/2",
       [] {
         return h_from(7, {"2", "2", "2"}, {{0, 1, "1/2", "1/2"}, {0, 2, "-1", "0"}, {1, 2, "1/2", "1/2"}});
       }},
      {"T", "fixed", "unimodular rank 2 lattice over Z[e], e = (1+sqrt(-11))/2",
       [] { return h_from(11, {"2", "2"}, {{0, 1, "1/2", "1/2"}}); }},
      {"Pa", "fixed", "densest rank 2 Z[a]-lattice, off-diagonal 4/sqrt(-7)",
       [] { return h_from(7, {"2", "2"}, {{0, 1, "0", "-4/7"}}); }},
      {"LK-d1", "fixed", "deep hole (1-i)/2", [] { return lk(1, "1/2", "-1/2"); }},
      {"LK-d2", "fixed", "deep hole (1+sqrt(-2))/2", [] { return lk(2, "1/2", "1/2"); }},
      {"LK-d3", "fixed", "deep hole -sqrt(-3)/3", [] { return lk(3, "0", "-1/3"); }},
      {"LK-d7a", "fixed", "deep hole 2/sqrt(-7)", [] { return lk(7, "0", "-2/7"); }},
      {"LK-d7b", "fixed", "deep hole (7+3sqrt(-7))/14", [] { return lk(7, "1/2", "3/14"); }},
      {"LK-d11a", "fixed", "deep hole 3/sqrt(-11)", [] { return lk(11, "0", "-3/11"); }},
      {"LK-d11b", "fixed", "deep hole (11+5sqrt(-11))/22", [] { return lk(11, "1/2", "5/22"); }},
      {"Pc", "constructed",
       "rank 4 Z[a]-lattice with trace E8, min 1, dual = sqrt(-7)*Pc",
       [] {
         // off-diagonal entries a/sqrt(-7) with a in {-2, -conj(a)}
         return h_from(7, {"1", "1", "1", "1"},
                       {{0, 1, "0", "2/7"},
                        {0, 2, "0", "2/7"},
                        {0, 3, "0", "2/7"},
                        {1, 2, "1/2", "1/14"},
                        {1, 3, "1/2", "1/14"},
                        {2, 3, "1/2", "1/14"}});
       }},
      {"PcPb", "constructed", "Pc (x) Pb: rank 12 Z[a]-structure on the Leech lattice containing Pb",
       [] { return tensor_herm(catalog_h("Pc"), catalog_h("Pb")); }},
  };
  return b;
}

std::string names_list() {
  std::string s;
  for (auto& b : builders()) s += (s.empty() ? "" : ", ") + std::string(b.name);
  return s;
}

json rational_json(const Rational& q) {
  if (is_integer(q) && fits_int64(q.get_num())) return to_int64(q.get_num());
  return to_string(q);
}

Rational parse_json_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(Integer(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  throw ValidationError(where + ": expected an integer or a \"p/q\" string");
}

std::string at(std::size_t i, std::size_t j) { return "gram[" + std::to_string(i) + "][" + std::to_string(j) + "]"; }

}  // namespace

const ZLattice& CatalogEntry::zlattice() const {
  if (kind() != LatticeKind::euclidean) throw ValidationError(name + " is a Hermitian lattice");
  return std::get<ZLattice>(data);
}

const HermLattice& CatalogEntry::hermitian() const {
  if (kind() != LatticeKind::hermitian) throw ValidationError(name + " is a Euclidean lattice");
  return std::get<HermLattice>(data);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> n;
  for (auto& b : builders()) n.push_back(b.name);
  return n;
}

CatalogEntry catalog_get(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, CatalogEntry> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
  }
  for (auto& b : builders()) {
    if (name != b.name) continue;
    CatalogEntry e{b.name, b.make(), b.source, b.notes};
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(name, std::move(e)).first->second;
  }
  throw ValidationError("unknown catalog name '" + name + "'; known: " + names_list());
}

const ZLattice& catalog_z(const std::string& name) {
  static thread_local std::map<std::string, CatalogEntry> keep;
  auto& e = keep[name] = catalog_get(name);
  return e.zlattice();
}

const HermLattice& catalog_h(const std::string& name) {
  static thread_local std::map<std::string, CatalogEntry> keep;
  auto& e = keep[name] = catalog_get(name);
  return e.hermitian();
}

std::string to_json_text(const CatalogEntry& entry, bool pretty) {
  json doc;
  if (entry.kind() == LatticeKind::euclidean) {
    const auto& g = entry.zlattice().gram();
    json rows = json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(rational_json(g(i, j)));
      rows.push_back(row);
    }
    doc["gram"] = rows;
  } else {
    const auto& L = entry.hermitian();
    doc["field"] = {{"d", L.field().d}};
    json rows = json::array();
    for (std::size_t i = 0; i < L.rank(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < L.rank(); ++j)
        row.push_back({{"re", to_string(L.gram()(i, j).re())}, {"im", to_string(L.gram()(i, j).im())}});
      rows.push_back(row);
    }
    doc["gram"] = rows;
  }
  return pretty ? doc.dump(2) + "\n" : doc.dump();
}

CatalogEntry from_json_text(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(name + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("gram") || !doc["gram"].is_array()) {
    throw ValidationError(name + ": expected an object with a \"gram\" array");
  }
  const json& rows = doc["gram"];
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw ValidationError(name + ": gram row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
  if (!doc.contains("field")) {
    RationalMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = parse_json_rational(rows[i][j], name + ": " + at(i, j));
    return CatalogEntry{name, ZLattice(std::move(g)), "file", ""};
  }
  const json& fj = doc["field"];
  if (!fj.is_object() || !fj.contains("d") || !fj["d"].is_number_integer()) {
    throw ValidationError(name + ": field must be {\"d\": <integer>}");
  }
  QuadField f = make_field(fj["d"].get<std::int64_t>());
  HermMatrix g(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const json& e = rows[i][j];
      if (!e.is_object() || !e.contains("re") || !e.contains("im")) {
        throw ValidationError(name + ": " + at(i, j) + " must be {\"re\": .., \"im\": ..}");
      }
      g(i, j) = f.element(parse_json_rational(e["re"], name + ": " + at(i, j) + ".re"),
                          parse_json_rational(e["im"], name + ": " + at(i, j) + ".im"));
    }
  try {
    return CatalogEntry{name, HermLattice(f, std::move(g)), "file", ""};
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  }
}

CatalogEntry load_entry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str(), path);
}

void save_entry(const CatalogEntry& entry, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json_text(entry);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace hermlat
