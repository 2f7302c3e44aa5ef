#pragma once
//
// Code analytics: parity checks, minimum distance (exhaustive and by
// low-weight dependency search), Singleton-type bound, locality
// verification and reports.
//

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geolrc/engine.hpp"

namespace geolrc {

/// Rows span the dual code; G H^T = 0 and rank H = n - k.
Matrix parity_check(const Field& f, const Matrix& basis_rref);
Matrix parity_check(const LinearCode& code);

/// Worker count from LRC_THREADS (default: hardware concurrency).
unsigned worker_count();

struct ExhaustiveResult {
  long distance = 0;
  std::uint64_t codewords = 0;  // projective representatives visited
};

/// Minimum weight over all nonzero codewords of the row space of `basis`
/// (k independent rows).  Throws Error when q^k exceeds budget or k = 0.
ExhaustiveResult min_distance_exhaustive(const Field& f, const Matrix& basis,
                                         std::uint64_t budget = std::uint64_t{1} << 24);

struct LowWeightResult {
  bool exact = false;
  long value = 0;  // d when exact, else the certified lower bound w_max + 1
};

/// Least number of dependent columns of H, searched up to w_max.
LowWeightResult min_distance_low_weight(const Field& f, const Matrix& H, int w_max);

long singleton_bound(long n, long k, long r);
long singleton_gap(long n, long k, long d, long r);

struct LocalityVerdict {
  bool pass = true;
  std::size_t sets_checked = 0;
  std::vector<std::string> failing;  // labels of failing helper sets
  std::uint64_t words_checked = 0;
};

/// Recovery-matrix checks plus repair round trips: every codeword when
/// q^k <= sweep_budget, else the basis rows and `samples` random codewords.
LocalityVerdict verify_locality(const LinearCode& code, std::uint64_t sweep_budget = 1 << 16,
                                std::size_t samples = 10000);

struct DistancePolicy {
  std::uint64_t exact_budget = std::uint64_t{1} << 24;
  int low_weight = 4;  // 0 disables the low-weight search
};

struct ConstructionReport {
  std::string family;
  std::uint64_t q = 0;
  long n = 0, k = 0, raw_rows = 0, kernel_dim = 0, delta = 0;
  std::vector<long> r;
  long d_designed = 0;
  std::optional<long> d_exact;
  std::optional<long> d_lower;  // certified lower bound when not exact
  std::string method;           // exhaustive | low-weight | designed
  long singleton = 0;
  long singleton_gap = 0;  // from d_exact, else from the best lower bound
  bool locality_pass = true;
  std::vector<std::string> failing_sets;
  std::vector<CosetCheck> diagnostics;
  std::map<std::string, long long> counts;
  std::vector<std::string> notes;
  double seconds = 0;

  long distance_used() const { return d_exact ? *d_exact : (d_lower ? *d_lower : d_designed); }
  std::string to_text() const;
  std::string to_json() const;
};

ConstructionReport make_report(const LinearCode& code, const DistancePolicy& policy = {});

}  // namespace geolrc
