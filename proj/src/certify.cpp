#include "hermlat/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <mutex>

#include "hermlat/error.hpp"
#include "hermlat/vector_table.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace hermlat {

namespace {

using json = nlohmann::json;
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

HermVector column(const HermMatrix& m, std::size_t c) { return m.column(c); }

HermMatrix matrix_from(const QuadField& f, const std::vector<std::vector<FieldElement>>& rows) {
  HermMatrix g(rows.size(), rows.size(), f.zero());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) g(i, j) = rows[i][j];
  return g;
}

std::string ok_or_failed(bool ok, const std::string& what) { return (ok ? "ok: " : "failed: ") + what; }

// ---------------------------------------------------------------------------
// sublattice counting

struct ScanResult {
  std::uint64_t raw = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> per_orbit;
  std::optional<std::vector<std::size_t>> first;
  bool exhaustive = true;
};

class TupleScan {
 public:
  TupleScan(const HermLattice& P, const HermMatrix& target) : P_(P), g_(target), r_(target.rows()) {
    Rational maxn = 0;
    for (std::size_t i = 0; i < r_; ++i) maxn = std::max(maxn, g_(i, i).re());
    vs_ = herm_short_vectors(P, maxn);
    table_.emplace(P, vs_);
    keys_.resize(r_ * r_);
    on_grid_ = true;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) {
        auto k = table_->key(g_(i, j));
        if (!k) on_grid_ = false;
        else keys_[i * r_ + j] = *k;
      }
    sets_.resize(r_);
    if (on_grid_)
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < table_->size(); ++k)
          if (table_->norm_key(k) == keys_[i * r_ + i]) sets_[i].push_back(k);
  }

  const VectorTable& table() const { return *table_; }
  const std::vector<std::size_t>& firsts() const { return sets_[0]; }

  // Tuples starting at v1 = row a; stops at the first hit when asked.
  std::uint64_t count_from(std::size_t a, bool stop, std::vector<std::size_t>* hit) const {
    if (!on_grid_) return 0;
    if (r_ == 1) {
      if (hit) *hit = {a};
      return 1;
    }
    std::vector<HKey> k1;
    table_->inner_all_row(a, k1);
    const HKey k21 = key(1, 0);
    if (r_ == 2) {
      std::uint64_t n = 0;
      for (std::size_t b : sets_[1]) {
        if (k1[b] != k21) continue;
        if (n == 0 && hit) *hit = {a, b};
        ++n;
        if (stop) return n;
      }
      return n;
    }
    const HKey k31 = key(2, 0), k32 = key(2, 1);
    std::vector<std::size_t> A, B;
    for (std::size_t b : sets_[1])
      if (k1[b] == k21) A.push_back(b);
    for (std::size_t c : sets_[2])
      if (k1[c] == k31) B.push_back(c);
    std::uint64_t n = 0;
    for (std::size_t b : A) {
      auto q = table_->query(table_->row64(b));
      for (std::size_t c : B) {
        if (table_->eval(c, q) != k32) continue;
        if (n == 0 && hit) *hit = {a, b, c};
        ++n;
        if (stop) return n;
      }
    }
    return n;
  }

  HermVector vector(std::size_t k) const { return from_trace_coords(P_.field(), table_->row64(k)); }

 private:
  const HKey& key(std::size_t i, std::size_t j) const { return keys_[i * r_ + j]; }

  const HermLattice& P_;
  HermMatrix g_;
  std::size_t r_;
  ShortVectorSet vs_;
  std::optional<VectorTable> table_;
  std::vector<HKey> keys_;
  std::vector<std::vector<std::size_t>> sets_;
  bool on_grid_ = true;
};

// Orbits of the first-vector set under the group generated by gens.
std::vector<std::pair<std::size_t, std::uint64_t>> orbits(const HermLattice& P, const TupleScan& scan,
                                                          const std::vector<HermMatrix>& gens) {
  const auto& firsts = scan.firsts();
  std::vector<std::pair<std::size_t, std::uint64_t>> out;
  if (gens.empty()) {
    for (auto a : firsts) out.push_back({a, 1});
    return out;
  }
  const QuadField& f = P.field();
  for (const auto& g : gens) {
    if (g.rows() != P.rank() || g.cols() != P.rank()) throw ValidationError("generator has the wrong size");
    HermMatrix gc = g.map([](const FieldElement& x) { return x.conj(); });
    if (!(g.transpose() * P.gram() * gc == P.gram())) throw ValidationError("generator is not an isometry of P");
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j)
        if (!f.is_integral(g(i, j))) throw ValidationError("generator has non-integral entries");
  }
  std::map<std::vector<std::int64_t>, std::size_t> where;
  for (auto a : firsts) {
    auto r = scan.table().row64(a);
    where.emplace(std::vector<std::int64_t>(r.begin(), r.end()), a);
  }
  std::map<std::size_t, bool> seen;
  for (auto a : firsts) {
    if (seen[a]) continue;
    std::uint64_t size = 0;
    std::deque<std::size_t> todo{a};
    seen[a] = true;
    while (!todo.empty()) {
      std::size_t k = todo.front();
      todo.pop_front();
      ++size;
      HermVector v = scan.vector(k);
      for (const auto& g : gens) {
        HermVector w(v.size(), f.zero());
        for (std::size_t i = 0; i < v.size(); ++i)
          for (std::size_t j = 0; j < v.size(); ++j) w[i] += g(i, j) * v[j];
        auto it = where.find(to_trace_coords(f, w));
        if (it == where.end()) throw Error("orbit left the vector set");
        if (!seen[it->second]) {
          seen[it->second] = true;
          todo.push_back(it->second);
        }
      }
    }
    out.push_back({a, size});
  }
  return out;
}

ScanResult run_scan(const HermLattice& P, const TupleScan& scan, const RepOptions& opts, bool with_orbits) {
  ScanResult res;
  auto reps = with_orbits ? orbits(P, scan, opts.generators) : orbits(P, scan, {});
  if (opts.max_roots > 0 && reps.size() > opts.max_roots) {
    reps.resize(opts.max_roots);
    res.exhaustive = false;
  }
  std::vector<std::uint64_t> counts(reps.size(), 0);
  std::vector<std::vector<std::size_t>> hits(reps.size());
  std::atomic<std::size_t> best{npos};
  std::atomic<std::size_t> done{0};
  std::mutex mu;
  detail::parallel_for(reps.size(), opts.threads, [&](std::size_t k) {
    if (opts.stop_at_first && k > best.load()) return;
    counts[k] = scan.count_from(reps[k].first, opts.stop_at_first, &hits[k]);
    if (counts[k] > 0 && opts.stop_at_first) {
      std::size_t cur = best.load();
      while (k < cur && !best.compare_exchange_weak(cur, k)) {
      }
    }
    if (opts.progress) {
      std::lock_guard<std::mutex> lock(mu);
      opts.progress(++done, reps.size());
    }
  });
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (opts.stop_at_first && k > best.load()) break;
    res.raw += reps[k].second * counts[k];
    res.per_orbit.push_back({reps[k].second, counts[k]});
    if (counts[k] > 0 && !res.first) res.first = hits[k];
    if (opts.stop_at_first && res.first) break;
  }
  return res;
}

}  // namespace

RepCount count_isometric_sublattices(const HermLattice& P, const HermLattice& target, const RepOptions& opts) {
  if (!(P.field() == target.field())) throw ValidationError("lattices are over different fields");
  const std::size_t r = target.rank();
  if (r == 0 || r > 3) throw UnsupportedError("sublattice counting supports target rank 1..3 (got " + std::to_string(r) + ")");
  RepCount rc;
  rc.target = target;

  TupleScan self_scan(target, target.gram());
  RepOptions so;
  so.threads = opts.threads;
  rc.self = run_scan(target, self_scan, so, false).raw;
  if (rc.self == 0) throw Error("target basis not found among its own short vectors");

  TupleScan scan(P, target.gram());
  ScanResult sr = run_scan(P, scan, opts, true);
  rc.raw = sr.raw;
  rc.per_orbit = std::move(sr.per_orbit);
  rc.exhaustive = sr.exhaustive;
  if (sr.first) {
    std::vector<HermVector> vs;
    for (auto k : *sr.first) vs.push_back(scan.vector(k));
    rc.first = std::move(vs);
  }
  if (opts.stop_at_first) {
    rc.count = rc.raw > 0 ? 1 : 0;
    rc.method = rc.raw > 0 ? "scan stopped at the first tuple (count is a lower bound)" : "exhaustive scan, none found";
    if (rc.raw > 0) rc.exhaustive = false;
    return rc;
  }
  if (rc.raw % rc.self != 0) throw Error("ordered tuple count is not a multiple of the target self-count");
  rc.count = rc.raw / rc.self;
  rc.method = std::string(opts.generators.empty() ? "full scan over v1" : "scan over orbit representatives of v1") +
              (rc.exhaustive ? "" : " (partial: max_roots)");
  return rc;
}

ASetProfile a_set_profile(const HermLattice& P, const HermVector& v1, const FieldElement& value, unsigned threads) {
  if (v1.size() != P.rank()) throw ValidationError("v1 has the wrong length");
  EnumOptions eo;
  eo.threads = threads;
  HermMinimum hm = herm_minimum(P, false, eo);
  const Rational n1 = herm_form(P, v1, v1).re();
  if (n1 != hm.min) throw ValidationError("v1 is not a minimal vector (norm " + to_string(n1) + ")");
  ShortVectorSet vs = herm_short_vectors(P, hm.min, eo);
  VectorTable t(P, vs);
  ASetProfile res;
  auto kv = t.key(value);
  if (!kv) return res;
  std::vector<HKey> keys;
  t.inner_all(to_trace_coords(P.field(), v1), keys);
  std::vector<std::size_t> A;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (keys[i] == *kv) A.push_back(i);
  res.size = A.size();
  std::map<HKey, std::size_t> hist;
  for (std::size_t a : A) {
    auto q = t.query(t.row64(a));
    for (std::size_t b : A)
      if (b != a) ++hist[t.eval(b, q)];
  }
  for (auto& [k, n] : hist) res.histogram.push_back({t.value(k), n});
  return res;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::proven: return "proven";
    case Verdict::bounded: return "bounded";
    default: return "inconclusive";
  }
}

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::excludes: return "excludes";
    case CaseStatus::equality_possible: return "equality-possible";
    default: return "open";
  }
}

namespace {

json field_json(const FieldElement& x) { return x.str(); }

json herm_gram_json(const HermLattice& L) {
  json rows = json::array();
  for (std::size_t i = 0; i < L.rank(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < L.rank(); ++j)
      row.push_back({{"re", to_string(L.gram()(i, j).re())}, {"im", to_string(L.gram()(i, j).im())}});
    rows.push_back(row);
  }
  return {{"field", {{"d", L.field().d}}}, {"gram", rows}};
}

json root_json(const RootValue& v) { return v.str(); }

}  // namespace

std::string certificate_json(const Certificate& c, bool pretty) {
  json j;
  j["claim"] = c.claim;
  j["claim_value"] = to_string(c.claim_value);
  j["verdict"] = to_string(c.verdict);
  json cases = json::array();
  for (auto& rc : c.rank_cases) {
    cases.push_back({{"r", rc.r},
                     {"bound", root_json(rc.bound)},
                     {"bound_approx", rc.bound.approx()},
                     {"d_r_l", root_json(rc.dr_l)},
                     {"d_r_m", root_json(rc.dr_m)},
                     {"inputs_certified", rc.inputs_certified},
                     {"lower", root_json(rc.lower)},
                     {"status", to_string(rc.status)},
                     {"note", rc.note}});
  }
  j["rank_cases"] = cases;
  json reps = json::array();
  for (auto& r : c.rep_counts) {
    reps.push_back({{"target", herm_gram_json(r.target)},
                    {"raw", r.raw},
                    {"self", r.self},
                    {"count", r.count},
                    {"exhaustive", r.exhaustive},
                    {"method", r.method}});
  }
  j["rep_counts"] = reps;
  json wit = json::array();
  for (auto& w : c.witnesses) {
    json coords = json::array();
    for (auto& x : w.coords) coords.push_back(field_json(x));
    wit.push_back({{"kind", w.kind}, {"norm", to_string(w.norm)}, {"coords", coords}, {"note", w.note}});
  }
  j["witnesses"] = wit;
  j["preconditions_checked"] = c.preconditions;
  j["notes"] = c.notes;
  j["lower_bound"] = c.lower ? json(to_string(*c.lower)) : json(nullptr);
  j["upper_bound"] = c.upper ? json(to_string(*c.upper)) : json(nullptr);
  j["runtime_ms"] = c.runtime_ms ? json(*c.runtime_ms) : json(nullptr);
  return pretty ? j.dump(2) + "\n" : j.dump();
}

// ---------------------------------------------------------------------------
// tensor minimum

namespace {

// z = sum_i x_i (x) y_i in the Kronecker basis of L (x) M.
HermVector tensor_sum(const QuadField& f, const std::vector<HermVector>& xs, const std::vector<HermVector>& ys) {
  const std::size_t ml = xs.front().size(), mm = ys.front().size();
  HermVector z(ml * mm, f.zero());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t a = 0; a < ml; ++a) {
      if (xs[i][a].is_zero()) continue;
      for (std::size_t b = 0; b < mm; ++b) z[a * mm + b] += xs[i][a] * ys[i][b];
    }
  return z;
}

Rational norm_in(const HermLattice& R, const HermVector& z) { return herm_form(R, z, z).re(); }

HermLattice equality_target(const HermLattice& section, const Rational& lambda) {
  return herm_scale(herm_conj(herm_dual(section)), lambda);
}

void finish_verdict(Certificate& c) {
  const bool low_ok = c.lower && *c.lower >= c.claim_value;
  const bool up_ok = c.upper && *c.upper == c.claim_value;
  if (c.upper && *c.upper < c.claim_value) {
    c.notes.push_back("a vector of norm " + to_string(*c.upper) + " lies below the claim");
    c.verdict = Verdict::inconclusive;
  } else if (c.lower && *c.lower > c.claim_value) {
    c.notes.push_back("the proven lower bound " + to_string(*c.lower) + " exceeds the claim");
    c.verdict = Verdict::inconclusive;
  } else if (low_ok && up_ok) {
    c.verdict = Verdict::proven;
  } else if (low_ok || up_ok) {
    c.verdict = Verdict::bounded;
  } else {
    c.verdict = Verdict::inconclusive;
  }
}

void cross_check(Certificate& c, const HermLattice& R, const CertifyOptions& opts) {
  if (2 * R.rank() > opts.cross_check_dim) return;
  EnumOptions eo;
  eo.threads = opts.threads;
  HermMinimum hm = herm_minimum(R, true, eo);
  const Rational& m = hm.min;
  c.notes.push_back("trace enumeration of the product: Hermitian minimum " + to_string(m));
  if (c.lower && *c.lower > m) throw Error("certificate lower bound exceeds the enumerated minimum");
  if (c.upper && *c.upper < m) throw Error("certificate witness lies below the enumerated minimum");
  if (!hm.vectors.empty() && (!c.upper || m < *c.upper)) {
    c.witnesses.push_back({"trace enumeration", m, hm.vectors.front(), "minimal vector of the product"});
    c.upper = m;
    finish_verdict(c);
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Certificate certify_tensor_min(const HermLattice& L, const HermLattice& M, const Rational& claim,
                               const CertifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (!(L.field() == M.field())) throw ValidationError("lattices are over different fields");
  const QuadField& f = L.field();
  Certificate c;
  c.claim = "herm_min(L (x) M) = " + to_string(claim);
  c.claim_value = claim;
  const HermLattice R = tensor_herm(L, M);
  const bool integral = has_integral_norms(R);
  c.preconditions.push_back(ok_or_failed(true, "same field Q(sqrt(-" + std::to_string(f.d) + "))"));
  c.preconditions.push_back(std::string(integral ? "ok: " : "absent: ") +
                            "Hermitian norms of L (x) M are integers (integrality sharpening)");

  DrOptions dro = opts.dr;
  dro.threads = opts.threads;
  const std::size_t rmax = std::min(L.rank(), M.rank());
  std::optional<RootValue> low;
  for (std::size_t r = 1; r <= rmax; ++r) {
    if (opts.progress) opts.progress(r - 1, rmax);
    DrResult dl = d_r(L, r, dro), dm = d_r(M, r, dro);
    RankCase rc;
    rc.r = r;
    rc.dr_l = opts.l_override.count(r) ? opts.l_override.at(r) : dl.lower;
    rc.dr_m = opts.m_override.count(r) ? opts.m_override.at(r) : dm.lower;
    rc.inputs_certified = dl.certified && dm.certified && !opts.l_override.count(r) && !opts.m_override.count(r);
    rc.bound = tensor_rank_bound(rc.dr_l, rc.dr_m, r);
    rc.lower = integral ? RootValue::of(Rational(rc.bound.ceil())) : rc.bound;
    std::vector<std::string> notes;
    if (!rc.inputs_certified) notes.push_back("uses lower bounds for d_" + std::to_string(r));

    if (r == 1) {
      // pure tensors of minimal vectors
      HermVector x = column(dl.witness->basis, 0), y = column(dm.witness->basis, 0);
      HermVector z = tensor_sum(f, {x}, {y});
      c.witnesses.push_back({"pure tensor of minimal vectors", norm_in(R, z), z, "rank 1"});
    }

    // Equality at an integral bound: h(z,z) = n forces minimal sections with
    // M_r ~ lambda * conj(L_r^-1), lambda = n / r.
    if (integral && rc.bound.is_integer()) {
      const Rational n = *rc.bound.exact();
      const Rational lambda = n / static_cast<long>(r);
      const bool l_full = L.rank() == r, m_full = M.rank() == r;
      std::optional<HermSublattice> section;
      bool section_in_l = true;
      if (l_full) section = herm_sublattice(L, HermMatrix::identity(r, f.one(), f.zero()));
      else if (m_full) {
        section = herm_sublattice(M, HermMatrix::identity(r, f.one(), f.zero()));
        section_in_l = false;
      } else if (dl.witness && dl.certified) section = dl.witness;
      else if (dm.witness && dm.certified) {
        section = dm.witness;
        section_in_l = false;
      }
      if (section) {
        HermLattice sec(f, section->gram);
        // count with a short basis of the target; map the hit back afterwards
        HermSublattice tb = herm_short_basis(equality_target(sec, lambda));
        HermLattice target(f, tb.gram);
        RepOptions ro;
        ro.stop_at_first = true;
        ro.threads = opts.threads;
        RepCount cnt = count_isometric_sublattices(section_in_l ? M : L, target, ro);
        const bool unique_section = section_in_l ? l_full : m_full;
        if (cnt.first) {
          const HermMatrix back = inverse(tb.basis, f.one());
          std::vector<HermVector> fs(r, HermVector((*cnt.first)[0].size(), f.zero()));
          for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
              for (std::size_t k = 0; k < fs[i].size(); ++k) fs[i][k] += back(j, i) * (*cnt.first)[j][k];
          cnt.first = fs;
          std::vector<HermVector> secv;
          for (std::size_t i = 0; i < r; ++i) secv.push_back(column(section->basis, i));
          HermVector z = section_in_l ? tensor_sum(f, secv, *cnt.first) : tensor_sum(f, *cnt.first, secv);
          Rational zn = norm_in(R, z);
          if (zn != n) throw Error("equality witness has norm " + to_string(zn) + ", expected " + to_string(n));
          c.witnesses.push_back({"equality case", zn, z, "rank " + std::to_string(r) + " sum of e_i (x) f_i"});
          notes.push_back("equality realised: dual section found");
        } else if (unique_section && cnt.exhaustive) {
          rc.lower = RootValue::of(n + 1);
          notes.push_back("equality refuted: no sublattice isometric to " + to_string(lambda) +
                          " * conj(section^-1) in the other factor");
        } else {
          notes.push_back("equality not realised by the section tried; not refuted");
        }
        cnt.first.reset();
        c.rep_counts.push_back(std::move(cnt));
      }
    }
    if (rc.lower > RootValue::of(claim)) rc.status = CaseStatus::excludes;
    else if (rc.lower == RootValue::of(claim)) rc.status = CaseStatus::equality_possible;
    else rc.status = CaseStatus::open;
    for (auto& s : notes) rc.note += (rc.note.empty() ? "" : "; ") + s;
    if (!low || rc.lower < *low) low = rc.lower;
    c.rank_cases.push_back(std::move(rc));
  }
  if (opts.progress) opts.progress(rmax, rmax);
  if (low) {
    if (auto e = low->exact()) c.lower = *e;
    else c.lower = Rational(Integer(low->ceil() - 1));  // any rational below the root is a valid bound
  }
  for (auto& w : c.witnesses)
    if (!c.upper || w.norm < *c.upper) c.upper = w.norm;
  std::sort(c.witnesses.begin(), c.witnesses.end(), [](const CertWitness& a, const CertWitness& b) {
    return a.norm < b.norm;
  });
  finish_verdict(c);
  cross_check(c, R, opts);
  c.runtime_ms = elapsed_ms(t0);
  return c;
}

// ---------------------------------------------------------------------------
// rank 48 case analysis over Q(sqrt(-11))

Certificate certify_48(const HermLattice& P, const CertifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Certificate c;
  const QuadField& f = P.field();
  bool ok = f.d == 11;
  c.preconditions.push_back(ok_or_failed(ok, "field is Q(sqrt(-11))"));
  if (!ok) {
    c.claim = "herm_min(P (x) T)";
    c.notes.push_back("certify-48 needs a lattice over Q(sqrt(-11))");
    return c;
  }
  const FieldElement s = f.sqrt_neg_d();
  const HermLattice T(f, matrix_from(f, {{f.from_int(2), f.element(ratio(1, 2), ratio(1, 2))},
                                         {f.element(ratio(1, 2), ratio(-1, 2)), f.from_int(2)}}));
  const HermLattice R = tensor_herm(P, T);
  EnumOptions eo;
  eo.threads = opts.threads;
  const Rational mp = herm_minimum(P, false, eo).min;
  const bool min_ok = mp >= 2;
  bool in_dual = true;
  for (std::size_t i = 0; i < P.rank(); ++i)
    for (std::size_t j = 0; j < P.rank(); ++j)
      if (!f.is_integral(s * P.gram()(i, j))) in_dual = false;
  const bool norms_ok = has_integral_norms(P) && has_integral_norms(R);
  c.preconditions.push_back(ok_or_failed(min_ok, "min(P) = " + to_string(mp) + " >= 2"));
  c.preconditions.push_back(ok_or_failed(in_dual, "h(P, P) lies in (1/sqrt(-11)) O_K"));
  c.preconditions.push_back(ok_or_failed(norms_ok, "Hermitian norms of P and P (x) T are integers"));
  ZLattice tr = trace_lattice(R);
  const bool even_unimodular = zl_is_even(tr) && zl_is_unimodular(tr);
  c.preconditions.push_back(std::string(even_unimodular ? "ok: " : "absent: ") + "trace of P (x) T is even unimodular of dimension " +
                            std::to_string(tr.rank()) + " (needed only for the upper bound)");
  if (!(min_ok && in_dual && norms_ok)) {
    c.claim = "herm_min(P (x) T)";
    c.notes.push_back("preconditions of the case analysis fail");
    c.runtime_ms = elapsed_ms(t0);
    return c;
  }
  const Rational one_minus_mu = 1 - *f.euclidean_min;

  // rank 1: min(P) min(T)
  RankCase r1;
  r1.r = 1;
  r1.dr_l = RootValue::of(mp);
  r1.dr_m = RootValue::of(2);
  r1.inputs_certified = true;
  r1.bound = tensor_rank_bound(r1.dr_l, r1.dr_m, 1);
  r1.lower = r1.bound;
  r1.note = "pure tensors";
  // rank 2: d_2(T) = 1 and d_2(P) >= min^2 (1 - mu)
  RankCase r2;
  r2.r = 2;
  r2.dr_l = RootValue::of(mp * mp * one_minus_mu);
  r2.dr_m = RootValue::of(1);
  r2.bound = tensor_rank_bound(r2.dr_l, r2.dr_m, 2);
  r2.lower = RootValue::of(Rational(r2.bound.ceil()));

  // Sections L of P with d_L <= 1 have a basis of two norm-2 vectors with
  // off-diagonal z in (1/sqrt(-11)) O_K and 4 - N(z) in (1/11)Z.
  const FieldElement inv_s = f.one() / s;
  std::vector<std::string> steps;
  const Rational lo = mp * mp * one_minus_mu;
  std::vector<Rational> norms_z;
  for (long k = 0; k <= 11; ++k) {
    Rational dl = ratio(k, 11);
    if (dl < lo || dl > 1) continue;
    norms_z.push_back(mp * mp - dl);
  }
  std::vector<HermLattice> kinds;
  for (const Rational& nz : norms_z) {
    auto zs = elements_of_norm(f, nz, inv_s);
    steps.push_back("elements of norm " + to_string(nz) + " in (1/sqrt(-11)) O_K: " + std::to_string(zs.size()));
    for (auto& z : zs) {
      HermLattice cand(f, matrix_from(f, {{f.from_int(2), z}, {z.conj(), f.from_int(2)}}));
      bool known = false;
      for (auto& k : kinds)
        if (herm_isometry(cand, k)) known = true;
      if (!known) kinds.push_back(cand);
    }
  }
  for (auto& s2 : steps) c.notes.push_back(s2);
  c.notes.push_back("rank-2 sections with discriminant <= 1 fall into " + std::to_string(kinds.size()) +
                    " isometry classes");

  RepOptions ro;
  ro.threads = opts.threads;
  ro.progress = opts.progress;
  std::uint64_t represented = 0;
  bool exhaustive = true;
  std::optional<CertWitness> wit;
  for (auto& k : kinds) {
    RepCount cnt = count_isometric_sublattices(P, k, ro);
    represented += cnt.count;
    exhaustive = exhaustive && cnt.exhaustive;
    if (cnt.first && !wit) {
      // a minimal vector of section (x) T, mapped into P (x) T
      HermSublattice sec = herm_sublattice(P, *cnt.first);
      HermLattice ST = tensor_herm(HermLattice(f, sec.gram), T);
      HermMinimum sm = herm_minimum(ST, true, eo);
      const HermVector& w = sm.vectors.front();
      std::vector<HermVector> xs, ys;
      for (std::size_t i = 0; i < 2; ++i) {
        HermVector y(2, f.zero());
        for (std::size_t j = 0; j < 2; ++j) y[j] = w[i * 2 + j];
        xs.push_back((*cnt.first)[i]);
        ys.push_back(y);
      }
      HermVector z = tensor_sum(f, xs, ys);
      wit = CertWitness{"minimal vector of section (x) T", norm_in(R, z), z, "rank 2"};
    }
    cnt.first.reset();
    c.rep_counts.push_back(std::move(cnt));
  }
  if (represented > 0) {
    r2.lower = RootValue::of(Rational(r2.bound.ceil()));
    r2.note = "P represents a section of discriminant <= 1";
  } else if (exhaustive) {
    r2.lower = RootValue::of(3);
    r2.note = "no section of discriminant <= 1, so d_2(P) > 1 and rank-2 norms exceed 2";
  } else {
    r2.note = "representation scan partial";
  }
  r2.inputs_certified = exhaustive;

  Rational target;
  if (wit) {
    c.witnesses.push_back(*wit);
    c.upper = wit->norm;
  }
  Rational lower = std::min(*r1.lower.exact(), *r2.lower.exact());
  c.lower = lower;
  if (!c.upper && even_unimodular) {
    Rational ub = extremal_bound(tr.rank()) / 2;
    c.upper = ub;
    c.notes.push_back("upper bound " + to_string(ub) + " from the extremal bound for even unimodular lattices");
  }
  target = c.upper ? std::max(*c.upper, lower) : lower;
  c.claim = "herm_min(P (x) T) = " + to_string(target);
  c.claim_value = target;
  for (RankCase* rc : {&r1, &r2}) {
    if (rc->lower > RootValue::of(target)) rc->status = CaseStatus::excludes;
    else if (rc->lower == RootValue::of(target)) rc->status = CaseStatus::equality_possible;
    else rc->status = CaseStatus::open;
  }
  c.rank_cases = {r1, r2};
  finish_verdict(c);
  cross_check(c, R, opts);
  c.runtime_ms = elapsed_ms(t0);
  return c;
}

// ---------------------------------------------------------------------------
// d_3 >= 1 over Z[alpha]

D3Report certify_d3_at_least(const HermLattice& P, const Rational& threshold, const CertifyOptions& opts) {
  D3Report rep;
  const QuadField& f = P.field();
  if (P.rank() < 3) throw ValidationError("d_3 needs rank >= 3");
  if (P.rank() == 3) {
    Rational d = herm_disc(P);
    rep.holds = d >= threshold;
    rep.steps.push_back("rank 3: d_3 = disc = " + to_string(d));
    return rep;
  }
  EnumOptions eo;
  eo.threads = opts.threads;
  auto pre = [&](bool ok, const std::string& what) {
    rep.preconditions.push_back(ok_or_failed(ok, what));
    if (!ok) rep.certifiable = false;
  };
  pre(f.d == 7, "field is Q(sqrt(-7))");
  if (f.d != 7) return rep;
  pre(threshold <= 1, "threshold " + to_string(threshold) + " <= 1");
  const FieldElement s = f.sqrt_neg_d();
  pre(dual_is_multiple(P, s), "P^# = sqrt(-7) P");
  pre(zl_is_even(trace_lattice(P)), "trace lattice is even");
  const Rational m = herm_minimum(P, false, eo).min;
  pre(m == 2, "min(P) = " + to_string(m));
  if (!rep.certifiable) return rep;
  DrOptions dro = opts.dr;
  dro.threads = opts.threads;
  DrResult d2 = d_r(P, 2, dro);
  const Rational d2v = ratio(12, 7);
  pre(d2.certified && d2.best && *d2.best == d2v, "d_2(P) = 12/7 (" + (d2.best ? to_string(*d2.best) : "-") + ")");
  if (!rep.certifiable) return rep;

  const Rational mu = *f.euclidean_min;
  // (i)
  rep.steps.push_back("(i) h(x,y) in (1/sqrt(-7)) O_K and h(x,x) in Z, so 3-section discriminants lie in (1/7)Z");
  // (ii)
  RootValue lb = hermite_dr_bound(f, m, 3);
  if (!(lb > RootValue::of(ratio(5, 7)))) {
    rep.certifiable = false;
    rep.steps.push_back("(ii) failed: Hermite-type bound " + lb.str() + " is not above 5/7");
    return rep;
  }
  rep.steps.push_back("(ii) d_M >= " + lb.str() + " > 5/7, so d_M < 1 forces d_M = 6/7");
  const Rational dM = ratio(6, 7);
  // (iii) gamma_h(M^#) >= d_2(M) / d_M^(2/3); gamma_h^6 <= 343/3
  const Rational gh6 = ratio(343, 3);
  const Rational d2_no_min = (1 - mu) * m * (m + 1);
  if (!(pow(d2_no_min, 6) / pow(dM, 4) > gh6)) {
    rep.certifiable = false;
    rep.steps.push_back("(iii) failed: bound without two minimal vectors does not exceed gamma_h");
    return rep;
  }
  rep.steps.push_back("(iii) a 2-section without two minimal vectors has d_2 >= " + to_string(d2_no_min) +
                      ", violating gamma_h; so M has a minimal 2-section spanned by minimal vectors");
  // h(e1,e2) = a/sqrt(-7): 12/7 <= 4 - N(a)/7 and (4 - N(a)/7)^6 <= gamma_h^6 d_M^4
  std::vector<long> allowed;
  for (long n = 0; n <= 4 * 7; ++n) {
    Rational v = m * m - ratio(n, 7);
    if (v < d2v || v <= 0) continue;
    if (pow(v, 6) > gh6 * pow(dM, 4)) continue;
    allowed.push_back(n);
  }
  std::vector<long> norms;
  std::string range;
  for (long n : allowed) {
    range += (range.empty() ? "" : ", ") + std::to_string(n);
    if (!elements_of_norm(f, n).empty()) norms.push_back(n);
  }
  rep.steps.push_back("(iii) N(a) in {" + range + "}; norms realised in Z[alpha]: " + std::to_string(norms.size()));
  if (norms.size() != 1 || norms[0] != 16) {
    rep.certifiable = false;
    rep.steps.push_back("(iii) failed: expected N(a) = 16 only");
    return rep;
  }
  // every Gram [[2, a/s], [., 2]] with N(a) = 16 is isometric to the one with a = 4
  const FieldElement four_over_s = f.from_int(4) / s;
  HermLattice Pa(f, matrix_from(f, {{f.from_int(2), four_over_s}, {four_over_s.conj(), f.from_int(2)}}));
  // sections of P have minimum 2, which rules out some choices
  std::size_t iso = 0, low_min = 0;
  auto as = elements_of_norm(f, 16);
  for (auto& a : as) {
    FieldElement z = a / s;
    HermLattice g(f, matrix_from(f, {{f.from_int(2), z}, {z.conj(), f.from_int(2)}}));
    if (herm_isometry(g, Pa)) ++iso;
    else if (herm_minimum(g).min < m) ++low_min;
  }
  if (iso + low_min != as.size()) {
    rep.certifiable = false;
    rep.steps.push_back("(iii) failed: a section with N(a) = 16 and minimum 2 is not isometric to the a = 4 one");
    return rep;
  }
  rep.steps.push_back("(iii) of " + std::to_string(as.size()) + " choices with N(a) = 16, " + std::to_string(iso) +
                      " give sections isometric to h(e1,e2) = 4/sqrt(-7) and " + std::to_string(low_min) +
                      " have minimum < 2");
  // (iv) projection onto F = K e1 + K e2 can be reduced to norm <= mu (g + d2/g)
  const Rational proj = mu * (m + d2v / m);
  const Rational h33_max = dM / d2v + proj;
  const Integer h33 = floor(h33_max);
  if (h33 != m) {
    rep.certifiable = false;
    rep.steps.push_back("(iv) failed: h(e3,e3) <= " + to_string(h33_max) + " does not force 2");
    return rep;
  }
  rep.steps.push_back("(iv) h(p(e3),p(e3)) <= " + to_string(proj) + ", so h(e3,e3) <= " + to_string(h33_max) +
                      " forces h(e3,e3) = 2");
  // (v) candidates a, b with N <= 16
  auto cands = integers_near(f, f.zero(), 16);
  const FieldElement two = f.from_int(2);
  bool saw_a3_case = false;
  for (auto& a : cands)
    for (auto& b : cands) {
      ++rep.candidates;
      FieldElement x = a / s, y = b / s;
      HermMatrix g = matrix_from(f, {{two, four_over_s, x}, {four_over_s.conj(), two, y}, {x.conj(), y.conj(), two}});
      if (herm_disc(f, g) != dM) continue;
      ++rep.det_matches;
      HermLattice Mcand;
      try {
        Mcand = HermLattice(f, g);
      } catch (const ValidationError&) {
        continue;
      }
      Rational mm = herm_minimum(Mcand).min;
      if (a == f.from_int(3) && b.is_zero() && mm == 1) saw_a3_case = true;
      if (mm >= m) rep.survivors.push_back(g);
    }
  rep.steps.push_back("(v) " + std::to_string(rep.candidates) + " candidate pairs, " + std::to_string(rep.det_matches) +
                      " with determinant 6/7, " + std::to_string(rep.survivors.size()) + " of minimum >= 2");
  rep.steps.push_back(std::string("(vi) candidate a = 3, b = 0 ") + (saw_a3_case ? "has minimum 1" : "not seen"));
  rep.holds = rep.survivors.empty();
  return rep;
}

// ---------------------------------------------------------------------------

PerfectionReport tensor_perfection_report(const ZLattice& L, const ZLattice& M, std::size_t max_dim, unsigned threads) {
  PerfectionReport p;
  p.rank_l = L.rank();
  p.rank_m = M.rank();
  p.split_bound = (p.rank_l * (p.rank_l + 1) / 2) * (p.rank_m * (p.rank_m + 1) / 2);
  const std::size_t n = p.rank_l * p.rank_m;
  p.threshold = n * (n + 1) / 2;
  p.in_scope = p.rank_l >= 2 && p.rank_m >= 2;
  p.kitaoka_applies = kitaoka_split_rule(p.rank_l, p.rank_m);
  EnumOptions eo;
  eo.threads = threads;
  if (n <= max_dim) {
    ZLattice T = tensor_z(L, M);
    ZMinimum zm = zl_minimum(T, eo);
    p.enumerated = true;
    p.min = zm.min;
    p.min_is_product = zm.min == zl_minimum(L, eo).min * zl_minimum(M, eo).min;
    p.perfection_rank = outer_product_rank(zm.vectors);
    p.perfect = p.perfection_rank == p.threshold;
    // x in Z^{l*m} is split when its l x m reshape has rank 1
    p.minimal_vectors_split = true;
    for (std::size_t k = 0; k < zm.vectors.size() && p.minimal_vectors_split; ++k) {
      auto x = zm.vectors.vector(k);
      for (std::size_t a = 0; a < p.rank_l && p.minimal_vectors_split; ++a)
        for (std::size_t b = a + 1; b < p.rank_l && p.minimal_vectors_split; ++b)
          for (std::size_t i = 0; i < p.rank_m && p.minimal_vectors_split; ++i)
            for (std::size_t j = i + 1; j < p.rank_m; ++j) {
              __int128 det = static_cast<__int128>(x[a * p.rank_m + i]) * x[b * p.rank_m + j] -
                             static_cast<__int128>(x[a * p.rank_m + j]) * x[b * p.rank_m + i];
              if (det != 0) {
                p.minimal_vectors_split = false;
                break;
              }
            }
    }
  }
  if (!p.in_scope) {
    p.conclusion = "out of scope: both ranks must be at least 2";
  } else if (p.enumerated) {
    p.conclusion = p.perfect ? "perfect" : "not perfect, hence not extreme";
    if (p.minimal_vectors_split && p.perfection_rank > p.split_bound) p.conclusion += " (inconsistent with split bound)";
  } else if (p.kitaoka_applies) {
    p.conclusion = "minimal vectors are split (rank <= 43), so the perfection rank is at most " +
                   std::to_string(p.split_bound) + " < " + std::to_string(p.threshold) + ": not perfect, hence not extreme";
  } else {
    p.conclusion = "not decided";
  }
  return p;
}

}  // namespace hermlat
