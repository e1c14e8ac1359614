#include <algorithm>
#include <map>
#include <set>

#include "hermlat/error.hpp"
#include "hermlat/hermitian.hpp"
#include "hermlat/vector_table.hpp"
#include "parallel.hpp"

namespace hermlat {

namespace {

using i128 = __int128;

// gamma_{2r}^{2r} for r = 1..4
Rational gamma_power(std::size_t r) {
  switch (r) {
    case 1: return ratio(4, 3);
    case 2: return 4;
    case 3: return ratio(64, 3);
    case 4: return 256;
    default: throw UnsupportedError("Hermite constant gamma_" + std::to_string(2 * r) + " is not available");
  }
}

std::size_t disc_abs(const QuadField& f) { return static_cast<std::size_t>(f.half_integral() ? f.d : 4 * f.d); }

std::vector<std::size_t> rep_indices(const QuadField& f, const ShortVectorSet& all) {
  std::map<std::vector<std::int64_t>, std::size_t> where;
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto v = all.vector(k);
    where.emplace(std::vector<std::int64_t>(v.begin(), v.end()), k);
  }
  ShortVectorSet reps = unit_class_representatives(f, all);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    auto v = reps.vector(k);
    out.push_back(where.at(std::vector<std::int64_t>(v.begin(), v.end())));
  }
  return out;
}

HermSublattice sub_from_rows(const HermLattice& L, const VectorTable& t, const std::vector<std::size_t>& idx) {
  std::vector<HermVector> vs;
  for (auto i : idx) vs.push_back(from_trace_coords(L.field(), t.row64(i)));
  return herm_sublattice(L, vs);
}

struct PairHit {
  i128 det = -1;
  std::size_t a = 0, b = 0;
};

bool better(const PairHit& x, const PairHit& y) {
  if (x.det < 0) return false;
  if (y.det < 0) return true;
  if (x.det != y.det) return x.det < y.det;
  return std::pair(x.a, x.b) < std::pair(y.a, y.b);
}

// Best det2 over v1 in `firsts` and all v2 in the table passing `keep`.
template <class Keep>
PairHit scan_pairs(const VectorTable& t, const std::vector<std::size_t>& firsts, unsigned threads, Keep keep) {
  std::vector<PairHit> part(firsts.size());
  detail::parallel_for(firsts.size(), threads, [&](std::size_t k) {
    const std::size_t a = firsts[k];
    std::vector<HKey> keys;
    t.inner_all_row(a, keys);
    PairHit best;
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (!keep(a, b)) continue;
      i128 det = t.det2(t.norm_key(a), t.norm_key(b), keys[b]);
      if (det <= 0) continue;
      PairHit h{det, a, b};
      if (better(h, best)) best = h;
    }
    part[k] = best;
  });
  PairHit best;
  for (auto& p : part)
    if (better(p, best)) best = p;
  return best;
}

DrResult dr_rank2(const HermLattice& L, const DrOptions& opts) {
  const QuadField& f = L.field();
  DrResult res;
  res.r = 2;
  EnumOptions eo;
  eo.threads = opts.threads;
  const Rational m1 = herm_minimum(L, false, eo).min;

  ShortVectorSet mins = herm_short_vectors(L, m1, eo);
  VectorTable tmin(L, mins);
  auto reps = rep_indices(f, mins);
  if (reps.size() > opts.witness_roots) reps.resize(opts.witness_roots);
  PairHit w = scan_pairs(tmin, reps, opts.threads, [](std::size_t, std::size_t) { return true; });
  if (w.det > 0) {
    res.best = tmin.det2_value(w.det);
    res.witness = sub_from_rows(L, tmin, {w.a, w.b});
  }

  if (!f.is_euclidean()) {
    res.lower = hermite_dr_bound(f, m1, 2);
    res.method = "witness scan";
    res.notes.push_back("field is not norm-Euclidean; the exhaustive rank-2 scan does not apply");
    res.certified = res.best && res.lower == RootValue::of(*res.best);
    return res;
  }
  const Rational one_minus_mu = 1 - *f.euclidean_min;
  const Rational lb = m1 * m1 * one_minus_mu;
  res.lower = RootValue::of(lb);
  if (res.best && *res.best == lb) {
    res.certified = true;
    res.method = "witness meets m^2(1-mu)";
    return res;
  }

  // Any rank-2 sublattice of discriminant <= B has a basis x, y with
  // h(x,x) <= h(y,y) and h(x,x) h(y,y) <= B/(1-mu).
  Rational B = res.best ? *res.best : Rational(0);
  if (!res.best) {
    // no pair among minimal vectors is independent: fall back to the box of 2*min
    B = 4 * m1 * m1;
  }
  const Rational prod = B / one_minus_mu;
  const Rational ymax = prod / m1;
  const std::size_t tdim = 2 * L.rank();
  if (ymax > m1 && tdim > 16 && opts.effort < 2) {
    res.method = "witness scan";
    res.notes.push_back("exhaustive rank-2 scan up to norm " + to_string(ymax) + " skipped at this effort");
    return res;
  }
  ShortVectorSet all = herm_short_vectors(L, ymax, eo);
  VectorTable t(L, all);
  const std::int64_t Q = t.denominator();
  // bounds on keys: norm keys are Q*h(v,v)
  const Rational pq = prod * Q * Q;
  std::vector<std::size_t> xs;
  for (auto i : rep_indices(f, all)) {
    Rational nx = Rational(Integer(t.norm_key(i).x));
    if (nx * nx <= pq) xs.push_back(i);
  }
  const Integer pq_floor = floor(pq);
  PairHit e = scan_pairs(t, xs, opts.threads, [&](std::size_t a, std::size_t b) {
    const std::int64_t na = t.norm_key(a).x, nb = t.norm_key(b).x;
    if (nb < na) return false;
    return Integer(na) * Integer(nb) <= pq_floor;
  });
  if (e.det <= 0) throw Error("rank-2 scan found no independent pair");
  res.best = t.det2_value(e.det);
  res.witness = sub_from_rows(L, t, {e.a, e.b});
  res.lower = RootValue::of(*res.best);
  res.certified = true;
  res.method = "exhaustive pair scan, h(x,x)h(y,y) <= " + to_string(prod);
  return res;
}

// Gram determinant of rows idx as an exact rational.
Rational rows_disc(const HermLattice& L, const VectorTable& t, const std::vector<std::size_t>& idx) {
  const std::size_t r = idx.size();
  HermMatrix g(r, r, L.field().zero());
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) g(a, b) = t.value(t.inner(t.row64(idx[a]), t.row64(idx[b])));
  return herm_disc(L.field(), g);
}

struct BeamState {
  Rational disc;
  std::vector<std::size_t> idx;
};

// Greedy beam over r-tuples of table rows ordered by discriminant.
std::optional<BeamState> beam_search(const HermLattice& L, const VectorTable& t, std::size_t r,
                                     const std::vector<std::size_t>& firsts, std::size_t width, unsigned threads) {
  const std::size_t per_value = width;
  std::vector<BeamState> beam;
  {
    std::vector<std::vector<BeamState>> part(firsts.size());
    detail::parallel_for(firsts.size(), threads, [&](std::size_t k) {
      std::vector<HKey> keys;
      t.inner_all_row(firsts[k], keys);
      std::vector<std::pair<i128, std::size_t>> cand;
      for (std::size_t b = 0; b < t.size(); ++b) {
        i128 det = t.det2(t.norm_key(firsts[k]), t.norm_key(b), keys[b]);
        if (det > 0) cand.push_back({det, b});
      }
      std::sort(cand.begin(), cand.end());
      std::size_t values = 0, same = 0;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (i == 0 || cand[i].first != cand[i - 1].first) {
          if (++values > width) break;
          same = 0;
        }
        if (same++ >= per_value) continue;
        part[k].push_back({t.det2_value(cand[i].first), {firsts[k], cand[i].second}});
      }
    });
    for (auto& p : part) beam.insert(beam.end(), p.begin(), p.end());
  }
  // keeps a few states for each of the smallest discriminant values, since
  // the best extension need not start from the best partial tuple
  auto prune = [&](std::vector<BeamState>& b) {
    std::sort(b.begin(), b.end(), [](const BeamState& x, const BeamState& y) {
      if (x.disc != y.disc) return x.disc < y.disc;
      return x.idx < y.idx;
    });
    std::set<std::vector<std::size_t>> seen;
    std::vector<BeamState> out;
    std::size_t values = 0, same = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (k == 0 || b[k].disc != b[k - 1].disc) {
        if (++values > width) break;
        same = 0;
      }
      if (same >= per_value) continue;
      auto key = b[k].idx;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;
      ++same;
      out.push_back(std::move(b[k]));
    }
    b = std::move(out);
  };
  prune(beam);
  for (std::size_t level = 3; level <= r && !beam.empty(); ++level) {
    std::vector<std::vector<BeamState>> part(beam.size());
    detail::parallel_for(beam.size(), threads, [&](std::size_t k) {
      const auto& s = beam[k];
      std::vector<std::vector<HKey>> keys(s.idx.size());
      for (std::size_t a = 0; a < s.idx.size(); ++a) t.inner_all_row(s.idx[a], keys[a]);
      std::vector<std::pair<Rational, std::size_t>> cand;
      for (std::size_t b = 0; b < t.size(); ++b) {
        Rational disc;
        if (level == 3) {
          const HKey h12 = t.inner(t.row64(s.idx[0]), t.row64(s.idx[1]));
          i128 det = t.det3(t.norm_key(s.idx[0]), t.norm_key(s.idx[1]), t.norm_key(b), h12, keys[0][b].conj(), keys[1][b].conj());
          if (det <= 0) continue;
          disc = t.det3_value(det);
        } else {
          auto idx = s.idx;
          idx.push_back(b);
          disc = rows_disc(L, t, idx);
          if (disc <= 0) continue;
        }
        cand.push_back({disc, b});
      }
      std::sort(cand.begin(), cand.end());
      std::size_t values = 0, same = 0;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (i == 0 || cand[i].first != cand[i - 1].first) {
          if (++values > width) break;
          same = 0;
        }
        if (same++ >= per_value) continue;
        auto idx = s.idx;
        idx.push_back(cand[i].second);
        part[k].push_back({cand[i].first, idx});
      }
    });
    beam.clear();
    for (auto& p : part) beam.insert(beam.end(), p.begin(), p.end());
    prune(beam);
  }
  if (beam.empty()) return std::nullopt;
  return beam.front();
}

DrResult dr_high(const HermLattice& L, std::size_t r, const DrOptions& opts) {
  const QuadField& f = L.field();
  const std::size_t m = L.rank();
  DrResult res;
  res.r = r;
  EnumOptions eo;
  eo.threads = opts.threads;
  const Rational m1 = herm_minimum(L, false, eo).min;
  res.lower = hermite_dr_bound(f, m1, r);
  res.method = "Hermite-type bound";
  if (f.d == 7 && r == 3 && opts.use_densest_ternary) {
    RootValue t = RootValue::of(m1 * m1 * m1 / 8);
    if (t > res.lower) {
      res.lower = t;
      res.method = "densest ternary bound min^3/8";
      res.notes.push_back("uses the classification of the densest rank-3 lattice over Q(sqrt(-7))");
    }
  }

  // d_r(L) = d_L * d_{m-r}(L^#)
  const std::size_t co = m - r;
  if (co == 1 || (co == 2 && f.is_euclidean())) {
    DrOptions sub = opts;
    DrResult dual = d_r(herm_dual(L), co, sub);
    if (dual.certified && dual.best) {
      res.best = herm_disc(L) * *dual.best;
      res.lower = RootValue::of(*res.best);
      res.certified = true;
      res.method = "duality with d_" + std::to_string(co) + " of the dual lattice";
      res.notes.push_back("witness not constructed on the duality path");
      return res;
    }
  }

  if (opts.effort <= 0) {
    res.notes.push_back("witness search skipped at effort 0");
    return res;
  }
  Rational bound = m1;
  if (2 * m <= 16) bound = m1 * opts.norm_factor;
  else res.notes.push_back("witness search restricted to minimal vectors (trace dimension above 16)");
  ShortVectorSet vs = herm_short_vectors(L, bound, eo);
  VectorTable t(L, vs);
  auto firsts = rep_indices(f, vs);
  if (firsts.size() > opts.witness_roots) firsts.resize(opts.witness_roots);
  const std::size_t width = 8 * static_cast<std::size_t>(opts.effort);
  auto found = beam_search(L, t, r, firsts, width, opts.threads);
  if (found) {
    res.best = found->disc;
    res.witness = sub_from_rows(L, t, found->idx);
    if (res.lower == RootValue::of(found->disc)) {
      res.certified = true;
      res.method += " met by witness";
    }
  }
  return res;
}

}  // namespace

RootValue hermite_dr_bound(const QuadField& field, const Rational& min, std::size_t r) {
  if (r == 0) throw ValidationError("rank must be positive");
  Rational num = pow(2 * min, static_cast<unsigned>(2 * r));
  Rational den = pow(Rational(Integer(static_cast<long>(disc_abs(field)))), static_cast<unsigned>(r)) * gamma_power(r);
  return RootValue(num / den, 2);
}

RootValue tensor_rank_bound(const RootValue& dr_l, const RootValue& dr_m, std::size_t r) {
  if (r == 0) throw ValidationError("rank must be positive");
  return (dr_l * dr_m).root(static_cast<unsigned>(r)).scaled(Rational(static_cast<long>(r)));
}

DrResult d_r(const HermLattice& L, std::size_t r, const DrOptions& opts) {
  const std::size_t m = L.rank();
  if (r < 1 || r > m) {
    throw ValidationError("d_r needs 1 <= r <= rank (got r = " + std::to_string(r) + ", rank " + std::to_string(m) + ")");
  }
  DrResult res;
  res.r = r;
  if (r == m) {
    Rational d = herm_disc(L);
    res.certified = true;
    res.best = d;
    res.lower = RootValue::of(d);
    res.method = "discriminant";
    res.witness = herm_sublattice(L, HermMatrix::identity(m, L.field().one(), L.field().zero()));
    return res;
  }
  if (r == 1) {
    EnumOptions eo;
    eo.threads = opts.threads;
    HermMinimum hm = herm_minimum(L, true, eo);
    res.certified = true;
    res.best = hm.min;
    res.lower = RootValue::of(hm.min);
    res.method = "minimum";
    res.witness = herm_sublattice(L, std::vector<HermVector>{hm.vectors.front()});
    return res;
  }
  if (r == 2) return dr_rank2(L, opts);
  return dr_high(L, r, opts);
}

}  // namespace hermlat
