#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermlat/hermitian.hpp"
#include "hermlat/zlattice.hpp"

namespace hermlat {

struct RepOptions {
  /// Stop after the first ordered tuple; a zero count is still exhaustive.
  bool stop_at_first = false;
  /// Only scan the first k choices of v1 (0 = all). The count is then partial.
  std::size_t max_roots = 0;
  /// Automorphisms of P (columns act on O_K coordinates) used to scan one v1
  /// per orbit. They are verified before use.
  std::vector<HermMatrix> generators;
  unsigned threads = 1;
  std::function<void(std::size_t, std::size_t)> progress;
};

struct RepCount {
  HermLattice target;
  /// Ordered tuples (v_1..v_r) of vectors of P with Gram equal to the target's.
  std::uint64_t raw = 0;
  /// The same count for the target inside itself.
  std::uint64_t self = 0;
  /// raw / self: number of sublattices isometric to the target.
  std::uint64_t count = 0;
  bool exhaustive = true;
  std::string method;
  /// (orbit size, raw tuples starting at the orbit representative).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> per_orbit;
  /// One realising tuple, when found.
  std::optional<std::vector<HermVector>> first;
};

/// Counts sublattices of P isometric to target (rank <= 3) whose basis vectors
/// have the target's diagonal norms.
RepCount count_isometric_sublattices(const HermLattice& P, const HermLattice& target, const RepOptions& opts = {});

struct ASetProfile {
  std::size_t size = 0;
  /// h(v, w) over ordered pairs v != w in A(v1), sorted by value.
  std::vector<std::pair<FieldElement, std::size_t>> histogram;
};

/// A(v1) = { v minimal : h(v, v1) = value }.
ASetProfile a_set_profile(const HermLattice& P, const HermVector& v1, const FieldElement& value, unsigned threads = 1);

enum class Verdict { proven, bounded, inconclusive };
enum class CaseStatus { excludes, equality_possible, open };

std::string to_string(Verdict v);
std::string to_string(CaseStatus s);

struct RankCase {
  std::size_t r = 0;
  /// r * (d_r(L) d_r(M))^(1/r) from the lower bounds used.
  RootValue bound;
  RootValue dr_l, dr_m;
  bool inputs_certified = false;
  /// Proven lower bound for h(z,z) over vectors of this rank.
  RootValue lower;
  CaseStatus status = CaseStatus::open;
  std::string note;
};

struct CertWitness {
  std::string kind;
  Rational norm;
  /// Coordinates in the basis of the tensor product (or of the lattice).
  HermVector coords;
  std::string note;
};

struct Certificate {
  std::string claim;
  Rational claim_value;
  Verdict verdict = Verdict::inconclusive;
  std::vector<RankCase> rank_cases;
  std::vector<RepCount> rep_counts;
  std::vector<CertWitness> witnesses;
  std::vector<std::string> preconditions;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  std::vector<std::string> notes;
  std::optional<double> runtime_ms;
};

/// Deterministic JSON (sorted keys).
std::string certificate_json(const Certificate& c, bool pretty = true);

struct CertifyOptions {
  DrOptions dr;
  unsigned threads = 1;
  /// Enumerate the trace lattice of the product when its dimension is at
  /// most this and compare.
  std::size_t cross_check_dim = 24;
  /// Replace the d_r lower bound of L (or M) for given r; used to test the
  /// pipeline with weaker inputs.
  std::map<std::size_t, RootValue> l_override, m_override;
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Tries to prove herm_min(L (x) M) = claim.
Certificate certify_tensor_min(const HermLattice& L, const HermLattice& M, const Rational& claim,
                               const CertifyOptions& opts = {});

/// Minimum of P (x) T over Q(sqrt(-11)).
Certificate certify_48(const HermLattice& P, const CertifyOptions& opts = {});

struct D3Report {
  /// d_3(P) >= threshold was established.
  bool holds = false;
  /// False when a precondition failed; holds is then meaningless.
  bool certifiable = true;
  std::vector<std::string> preconditions;
  std::vector<std::string> steps;
  std::size_t candidates = 0;
  std::size_t det_matches = 0;
  std::vector<HermMatrix> survivors;
};

D3Report certify_d3_at_least(const HermLattice& P, const Rational& threshold = 1, const CertifyOptions& opts = {});

struct PerfectionReport {
  std::size_t rank_l = 0, rank_m = 0;
  std::size_t split_bound = 0;
  std::size_t threshold = 0;
  bool in_scope = false;
  bool enumerated = false;
  std::size_t perfection_rank = 0;
  Rational min;
  bool min_is_product = false;
  bool minimal_vectors_split = false;
  bool kitaoka_applies = false;
  bool perfect = false;
  std::string conclusion;
};

/// Perfection of L (x) M over Z; enumerates when the product has dimension <= max_dim.
PerfectionReport tensor_perfection_report(const ZLattice& L, const ZLattice& M, std::size_t max_dim = 16,
                                          unsigned threads = 1);

}  // namespace hermlat
