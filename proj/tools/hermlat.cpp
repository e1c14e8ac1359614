// hermlat command line front end
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hermlat/catalog.hpp"
#include "hermlat/certify.hpp"
#include "hermlat/error.hpp"

using namespace hermlat;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kBad = 2, kOpen = 3;

struct Common {
  std::vector<std::string> catalog, in;
  bool as_json = false;
  unsigned threads = 1;
  bool progress = false;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool operands = true) {
  if (operands) {
    sub->add_option("--catalog", c.catalog, "catalog entry (repeatable)");
    sub->add_option("--in", c.in, "lattice JSON file (repeatable)");
  }
  sub->add_flag("--json", c.as_json, "JSON output");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_flag("--progress", c.progress, "progress on stderr");
}

// catalog operands first, then files
std::vector<CatalogEntry> operands(const Common& c) {
  std::vector<CatalogEntry> v;
  for (auto& n : c.catalog) v.push_back(catalog_get(n));
  for (auto& p : c.in) v.push_back(load_entry(p));
  return v;
}

std::vector<CatalogEntry> need(const Common& c, std::size_t n) {
  auto v = operands(c);
  if (v.size() != n)
    throw ValidationError("expected " + std::to_string(n) + " lattice operand(s) via --catalog/--in, got " +
                          std::to_string(v.size()));
  return v;
}

const HermLattice& herm(const CatalogEntry& e) {
  if (e.kind() != LatticeKind::hermitian) throw ValidationError(e.name + " is not a Hermitian lattice");
  return e.hermitian();
}

const ZLattice& zlat(const CatalogEntry& e) {
  if (e.kind() != LatticeKind::euclidean) throw ValidationError(e.name + " is not a Z-lattice");
  return e.zlattice();
}

std::function<void(std::size_t, std::size_t)> progress_fn(const Common& c) {
  if (!c.progress) return {};
  return [](std::size_t k, std::size_t n) { std::fprintf(stderr, "\r[%zu/%zu]", k, n), std::fflush(stderr); };
}

EnumOptions enum_opts(const Common& c) {
  EnumOptions e;
  e.threads = c.threads;
  e.progress = progress_fn(c);
  return e;
}

void emit(const Common& c, const std::string& text) {
  if (c.progress) std::fputc('\n', stderr);
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw ValidationError("cannot write " + c.out);
    f << text;
  } else {
    std::cout << text;
  }
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

std::string vec_str(const HermVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

std::string vec_str(std::span<const std::int64_t> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

json field_json(const HermVector& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.str());
  return a;
}

std::string write_lattice(const std::string& name, std::variant<ZLattice, HermLattice> data) {
  CatalogEntry e{name, std::move(data), "constructed", ""};
  return to_json_text(e);
}

// ---------------------------------------------------------------------------

int cmd_info(const Common& c) {
  json all = json::array();
  std::string text;
  for (auto& e : operands(c)) {
    json j{{"name", e.name}, {"source", e.source}};
    if (e.kind() == LatticeKind::euclidean) {
      const ZLattice& L = e.zlattice();
      j["kind"] = "euclidean";
      j["rank"] = L.rank();
      j["det"] = to_string(zl_det(L));
      j["integral"] = zl_is_integral(L);
      j["even"] = zl_is_even(L);
      j["unimodular"] = zl_is_unimodular(L);
      text += e.name + ": Z-lattice, rank " + std::to_string(L.rank()) + ", det " + to_string(zl_det(L)) +
              (zl_is_even(L) ? ", even" : zl_is_integral(L) ? ", odd" : ", not integral") +
              (zl_is_unimodular(L) ? ", unimodular" : "") + "\n";
    } else {
      const HermLattice& L = e.hermitian();
      ZLattice t = trace_lattice(L);
      j["kind"] = "hermitian";
      j["d"] = L.field().d;
      j["rank"] = L.rank();
      j["disc"] = to_string(herm_disc(L));
      j["integral_norms"] = has_integral_norms(L);
      j["trace_det"] = to_string(zl_det(t));
      j["trace_even"] = zl_is_even(t);
      text += e.name + ": Hermitian lattice over Q(sqrt(-" + std::to_string(L.field().d) + ")), rank " +
              std::to_string(L.rank()) + ", disc " + to_string(herm_disc(L)) + ", trace det " + to_string(zl_det(t)) +
              (zl_is_even(t) ? ", trace even" : "") + "\n";
    }
    if (!e.notes.empty()) j["notes"] = e.notes;
    all.push_back(j);
  }
  if (all.empty()) throw ValidationError("no lattice given (use --catalog or --in)");
  if (c.as_json) emit_json(c, all.size() == 1 ? all[0] : all);
  else emit(c, text);
  return kOk;
}

int cmd_min(const Common& c) {
  auto e = need(c, 1)[0];
  if (e.kind() == LatticeKind::euclidean) {
    ZMinimum m = zl_minimum(e.zlattice(), enum_opts(c));
    if (c.as_json) emit_json(c, {{"min", to_string(m.min)}, {"kissing", m.kissing}});
    else emit(c, "min = " + to_string(m.min) + ", kissing = " + std::to_string(m.kissing) + "\n");
  } else {
    HermMinimum m = herm_minimum(e.hermitian(), true, enum_opts(c));
    if (c.as_json)
      emit_json(c, {{"min", to_string(m.min)}, {"count", m.count}, {"trace_min", to_string(2 * m.min)}});
    else
      emit(c, "min = " + to_string(m.min) + ", count = " + std::to_string(m.count) + ", trace min = " +
                  to_string(2 * m.min) + "\n");
  }
  return kOk;
}

int cmd_shortvecs(const Common& c, const std::string& bound_s) {
  auto e = need(c, 1)[0];
  const Rational bound = parse_rational(bound_s);
  std::ostringstream os;
  json arr = json::array();
  if (e.kind() == LatticeKind::euclidean) {
    ShortVectorSet s = short_vectors(e.zlattice(), bound, enum_opts(c));
    for (std::size_t k = 0; k < s.size(); ++k) {
      auto v = s.vector(k);
      if (c.as_json) arr.push_back({{"norm", to_string(s.norms[k])}, {"coords", std::vector<std::int64_t>(v.begin(), v.end())}});
      else os << to_string(s.norms[k]) << " " << vec_str(v) << "\n";
    }
  } else {
    const HermLattice& L = e.hermitian();
    ShortVectorSet s = herm_short_vectors(L, bound, enum_opts(c));
    for (std::size_t k = 0; k < s.size(); ++k) {
      HermVector v = from_trace_coords(L.field(), s.vector(k));
      if (c.as_json) arr.push_back({{"norm", to_string(s.norms[k])}, {"coords", field_json(v)}});
      else os << to_string(s.norms[k]) << " " << vec_str(v) << "\n";
    }
  }
  if (c.as_json) emit_json(c, arr);
  else emit(c, os.str());
  return kOk;
}

int cmd_perfection(const Common& c, std::size_t max_dim) {
  auto v = operands(c);
  if (v.size() == 1) {
    const ZLattice& L = zlat(v[0]);
    const std::size_t n = L.rank(), thr = n * (n + 1) / 2;
    const std::size_t r = perfection_rank(L, enum_opts(c));
    if (c.as_json) emit_json(c, {{"perfection_rank", r}, {"threshold", thr}, {"perfect", r == thr}});
    else emit(c, "perfection rank = " + std::to_string(r) + " of " + std::to_string(thr) + (r == thr ? ", perfect\n" : ", not perfect\n"));
    return kOk;
  }
  if (v.size() != 2) throw ValidationError("perfection takes one or two Z-lattices");
  PerfectionReport p = tensor_perfection_report(zlat(v[0]), zlat(v[1]), max_dim, c.threads);
  if (c.as_json) {
    json j{{"rank_l", p.rank_l},
           {"rank_m", p.rank_m},
           {"threshold", p.threshold},
           {"split_bound", p.split_bound},
           {"enumerated", p.enumerated},
           {"kitaoka_applies", p.kitaoka_applies},
           {"perfect", p.perfect},
           {"conclusion", p.conclusion}};
    if (p.enumerated) {
      j["perfection_rank"] = p.perfection_rank;
      j["min"] = to_string(p.min);
      j["min_is_product"] = p.min_is_product;
      j["minimal_vectors_split"] = p.minimal_vectors_split;
    }
    emit_json(c, j);
  } else {
    std::string s;
    if (p.enumerated)
      s += "min = " + to_string(p.min) + (p.min_is_product ? " (product of minima)" : "") + "\nperfection rank = " +
           std::to_string(p.perfection_rank) + " of " + std::to_string(p.threshold) + "\n";
    s += "split bound = " + std::to_string(p.split_bound) + "\n" + p.conclusion + "\n";
    emit(c, s);
  }
  return kOk;
}

int cmd_dr(const Common& c, std::size_t r, int effort) {
  const auto v = need(c, 1);
  const HermLattice& L = herm(v[0]);
  DrOptions o;
  o.threads = c.threads;
  o.effort = effort;
  DrResult d = d_r(L, r, o);
  if (c.as_json) {
    json j{{"r", d.r},
           {"certified", d.certified},
           {"lower", d.lower.str()},
           {"lower_approx", d.lower.approx()},
           {"best", d.best ? json(to_string(*d.best)) : json(nullptr)},
           {"method", d.method},
           {"notes", d.notes}};
    if (d.witness) {
      json b = json::array();
      for (std::size_t i = 0; i < d.witness->basis.cols(); ++i) b.push_back(field_json(d.witness->basis.column(i)));
      j["witness_basis"] = b;
    }
    emit_json(c, j);
  } else {
    std::string s = "d_" + std::to_string(r) + " ";
    if (d.certified) s += "= " + to_string(*d.best) + " (certified)\n";
    else {
      s += ">= " + d.lower.str();
      if (!d.lower.exact()) {
        std::ostringstream a;
        a << d.lower.approx();
        s += " (approx " + a.str() + ")";
      }
      if (d.best) s += ", best found " + to_string(*d.best);
      s += "\n";
    }
    s += "method: " + d.method + "\n";
    for (auto& n : d.notes) s += "note: " + n + "\n";
    emit(c, s);
  }
  return d.certified ? kOk : kOpen;
}

int cmd_tensor(const Common& c) {
  auto v = need(c, 2);
  if (v[0].kind() != v[1].kind()) throw ValidationError("cannot tensor a Z-lattice with a Hermitian lattice");
  std::string name = v[0].name + "(x)" + v[1].name;
  if (v[0].kind() == LatticeKind::euclidean) emit(c, write_lattice(name, tensor_z(v[0].zlattice(), v[1].zlattice())));
  else emit(c, write_lattice(name, tensor_herm(v[0].hermitian(), v[1].hermitian())));
  return kOk;
}

int cmd_trace(const Common& c) {
  auto e = need(c, 1)[0];
  emit(c, write_lattice("trace " + e.name, trace_lattice(herm(e))));
  return kOk;
}

int cmd_dual(const Common& c) {
  auto e = need(c, 1)[0];
  if (e.kind() == LatticeKind::euclidean) emit(c, write_lattice(e.name + "#", zl_dual(e.zlattice())));
  else emit(c, write_lattice(e.name + "#", herm_dual(e.hermitian())));
  return kOk;
}

int cmd_isometry(const Common& c) {
  auto v = need(c, 2);
  if (v[0].kind() != v[1].kind()) throw ValidationError("lattices of different kinds");
  json mat = nullptr;
  std::string text;
  if (v[0].kind() == LatticeKind::euclidean) {
    auto u = isometry(v[0].zlattice(), v[1].zlattice());
    if (u) {
      mat = json::array();
      for (std::size_t i = 0; i < u->rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < u->cols(); ++j) row.push_back((*u)(i, j));
        mat.push_back(row);
        text += vec_str(std::span<const std::int64_t>(&(*u)(i, 0), u->cols())) + "\n";
      }
    }
  } else {
    auto u = herm_isometry(v[0].hermitian(), v[1].hermitian());
    if (u) {
      mat = json::array();
      for (std::size_t i = 0; i < u->rows(); ++i) {
        HermVector row;
        for (std::size_t j = 0; j < u->cols(); ++j) row.push_back((*u)(i, j));
        mat.push_back(field_json(row));
        text += vec_str(row) + "\n";
      }
    }
  }
  if (c.as_json) emit_json(c, {{"isometric", !mat.is_null()}, {"map", mat}});
  else emit(c, mat.is_null() ? "not isometric\n" : "isometric\n" + text);
  return kOk;
}

int cmd_deep_holes(const Common& c, long d) {
  DeepHoleReport r = euclidean_minimum(make_field(d));
  if (c.as_json) {
    json holes = json::array(), orbits = json::array();
    for (auto& h : r.holes) holes.push_back(h.str());
    for (auto& o : r.orbits) orbits.push_back(field_json(o));
    emit_json(c, {{"d", d}, {"mu", to_string(r.mu)}, {"holes", holes}, {"orbits", orbits}});
  } else {
    std::string s = "mu = " + to_string(r.mu) + ", " + std::to_string(r.holes.size()) + " deep holes, " +
                    std::to_string(r.orbits.size()) + " orbits\n";
    for (auto& o : r.orbits) s += "orbit " + vec_str(o) + "\n";
    emit(c, s);
  }
  return kOk;
}

int cmd_rep_count(const Common& c, bool first, std::size_t max_roots) {
  auto v = need(c, 2);
  RepOptions o;
  o.threads = c.threads;
  o.stop_at_first = first;
  o.max_roots = max_roots;
  o.progress = progress_fn(c);
  RepCount rc = count_isometric_sublattices(herm(v[0]), herm(v[1]), o);
  if (c.as_json) {
    json j{{"count", rc.count}, {"raw", rc.raw}, {"self", rc.self}, {"exhaustive", rc.exhaustive}, {"method", rc.method}};
    if (rc.first) {
      json f = json::array();
      for (auto& x : *rc.first) f.push_back(field_json(x));
      j["first"] = f;
    }
    emit_json(c, j);
  } else {
    std::string s = "count = " + std::to_string(rc.count) + " (ordered tuples " + std::to_string(rc.raw) + ", self " +
                    std::to_string(rc.self) + ")\n" + "method: " + rc.method + "\n";
    if (rc.first)
      for (auto& x : *rc.first) s += "basis " + vec_str(x) + "\n";
    emit(c, s);
  }
  return rc.exhaustive || rc.count > 0 ? kOk : kOpen;
}

std::string certificate_text(const Certificate& k) {
  std::string s = "claim: " + k.claim + "\nverdict: " + to_string(k.verdict) + "\n";
  for (auto& p : k.preconditions) s += "precondition " + p + "\n";
  for (auto& rc : k.rank_cases) {
    s += "r = " + std::to_string(rc.r) + ": bound " + rc.bound.str() + ", lower " + rc.lower.str() + ", " +
         to_string(rc.status);
    if (!rc.note.empty()) s += " (" + rc.note + ")";
    s += "\n";
  }
  for (auto& r : k.rep_counts)
    s += "sublattices of rank " + std::to_string(r.target.rank()) + ": " + std::to_string(r.count) +
         (r.exhaustive ? "" : " (not exhaustive)") + "\n";
  for (auto& w : k.witnesses) s += "witness " + w.kind + ", norm " + to_string(w.norm) + "\n";
  if (k.lower) s += "lower bound " + to_string(*k.lower) + "\n";
  if (k.upper) s += "upper bound " + to_string(*k.upper) + "\n";
  for (auto& n : k.notes) s += "note: " + n + "\n";
  return s;
}

int finish_cert(const Common& c, Certificate k, bool timing) {
  if (!timing) k.runtime_ms.reset();
  emit(c, c.as_json ? certificate_json(k) : certificate_text(k));
  return k.verdict == Verdict::proven ? kOk : kOpen;
}

CertifyOptions cert_opts(const Common& c, int effort) {
  CertifyOptions o;
  o.threads = c.threads;
  o.dr.effort = effort;
  o.progress = progress_fn(c);
  return o;
}

int cmd_catalog(const Common& c, const std::string& name) {
  if (name.empty()) {
    std::string s;
    json arr = json::array();
    for (auto& n : catalog_names()) {
      s += n + "\n";
      arr.push_back(n);
    }
    if (c.as_json) emit_json(c, arr);
    else emit(c, s);
    return kOk;
  }
  CatalogEntry e = catalog_get(name);
  if (!c.out.empty()) save_entry(e, c.out);
  else std::cout << to_json_text(e);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian and Euclidean lattice tools"};
  app.require_subcommand(1);
  Common c;
  int effort = 1;
  bool timing = false;

  auto* info = app.add_subcommand("info", "basic invariants");
  add_common(info, c);
  auto* mn = app.add_subcommand("min", "exact minimum");
  add_common(mn, c);
  auto* sv = app.add_subcommand("shortvecs", "vectors of norm <= bound");
  add_common(sv, c);
  std::string bound;
  sv->add_option("--bound", bound, "norm bound (rational)")->required();
  auto* pf = app.add_subcommand("perfection", "perfection rank of L or of L (x) M");
  add_common(pf, c);
  std::size_t max_dim = 16;
  pf->add_option("--max-dim", max_dim, "enumerate the product up to this dimension");
  auto* dr = app.add_subcommand("dr", "minimal discriminant of rank-r sublattices");
  add_common(dr, c);
  std::size_t r = 2;
  dr->add_option("-r", r, "sublattice rank")->required()->check(CLI::PositiveNumber);
  dr->add_option("--effort", effort, "witness search effort (0 = bounds only)")->check(CLI::Range(0, 8));
  auto* tn = app.add_subcommand("tensor", "tensor product of two lattices");
  add_common(tn, c);
  tn->add_option("--out", c.out, "output file");
  auto* tr = app.add_subcommand("trace", "trace Z-lattice");
  add_common(tr, c);
  tr->add_option("--out", c.out, "output file");
  auto* du = app.add_subcommand("dual", "dual lattice");
  add_common(du, c);
  du->add_option("--out", c.out, "output file");
  auto* iso = app.add_subcommand("isometry", "test isometry of two lattices");
  add_common(iso, c);
  auto* dh = app.add_subcommand("deep-holes", "Euclidean minimum and deep holes of O_K");
  add_common(dh, c, false);
  long d = 0;
  dh->add_option("-d", d, "squarefree d > 0")->required();
  auto* rc = app.add_subcommand("rep-count", "count sublattices of P isometric to a target (operands P, target)");
  add_common(rc, c);
  bool first = false;
  std::size_t max_roots = 0;
  rc->add_flag("--first", first, "stop at the first hit");
  rc->add_option("--max-roots", max_roots, "scan only this many first vectors");
  auto* ct = app.add_subcommand("certify-tensor", "certify herm_min(L (x) M)");
  add_common(ct, c);
  std::string claim;
  ct->add_option("--claim", claim, "claimed minimum")->required();
  ct->add_option("--effort", effort, "d_r witness search effort")->check(CLI::Range(0, 8));
  ct->add_flag("--timing", timing, "include runtime_ms");
  auto* c48 = app.add_subcommand("certify-48", "minimum of P (x) T over Q(sqrt(-11))");
  add_common(c48, c);
  c48->add_flag("--timing", timing, "include runtime_ms");
  auto* c3 = app.add_subcommand("certify-d3", "certify d_3(P) >= threshold over Z[alpha]");
  add_common(c3, c);
  std::string threshold = "1";
  c3->add_option("--threshold", threshold, "threshold (<= 1)");
  auto* cat = app.add_subcommand("catalog", "list entries or print one");
  add_common(cat, c, false);
  std::string name;
  cat->add_option("name", name, "entry name");
  cat->add_option("--out", c.out, "save to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBad;
  }

  try {
    if (*info) return cmd_info(c);
    if (*mn) return cmd_min(c);
    if (*sv) return cmd_shortvecs(c, bound);
    if (*pf) return cmd_perfection(c, max_dim);
    if (*dr) return cmd_dr(c, r, effort);
    if (*tn) return cmd_tensor(c);
    if (*tr) return cmd_trace(c);
    if (*du) return cmd_dual(c);
    if (*iso) return cmd_isometry(c);
    if (*dh) return cmd_deep_holes(c, d);
    if (*rc) return cmd_rep_count(c, first, max_roots);
    if (*ct) {
      auto v = need(c, 2);
      return finish_cert(c, certify_tensor_min(herm(v[0]), herm(v[1]), parse_rational(claim), cert_opts(c, effort)), timing);
    }
    if (*c48) return finish_cert(c, certify_48(herm(need(c, 1)[0]), cert_opts(c, effort)), timing);
    if (*c3) {
      D3Report rep = certify_d3_at_least(herm(need(c, 1)[0]), parse_rational(threshold), cert_opts(c, effort));
      if (c.as_json) {
        emit_json(c, {{"holds", rep.holds},
                      {"certifiable", rep.certifiable},
                      {"preconditions_checked", rep.preconditions},
                      {"steps", rep.steps},
                      {"candidates", rep.candidates},
                      {"det_matches", rep.det_matches},
                      {"survivors", rep.survivors.size()}});
      } else {
        std::string s;
        for (auto& p : rep.preconditions) s += "precondition " + p + "\n";
        for (auto& p : rep.steps) s += p + "\n";
        s += rep.holds ? "d_3 >= " + threshold + " holds\n" : "not established\n";
        emit(c, s);
      }
      return rep.holds ? kOk : kOpen;
    }
    if (*cat) return cmd_catalog(c, name);
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kBad;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBad;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kBad;
}
