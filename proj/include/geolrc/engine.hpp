#pragma once
//
// Generator matrices from cover data, recovery plans for helper sets, and
// erasure recovery.  Also the two-partition construction on a fiber
// product of elliptic curves.
//

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geolrc/covers.hpp"
#include "geolrc/matrix.hpp"

namespace geolrc {

struct HelperSet {
  std::vector<std::size_t> columns;
  Matrix e;  // (r+1) x r e-values, or empty when unknown (loaded codes)
  std::string label;
};

/// Per column: the other columns of its helper set and the coefficients of
/// the repair combination.
struct ColumnRepair {
  std::size_t set = 0;
  std::vector<std::size_t> helpers;
  std::vector<Elem> coeffs;
  bool ok = false;
};

struct Partition {
  std::size_t r = 0;
  std::vector<HelperSet> sets;
  std::vector<ColumnRepair> repair;  // indexed by column
};

struct LinearCode {
  FieldPtr field;
  std::string family;
  std::size_t n = 0;
  Matrix generator;  // raw rows, one per (i, j) index
  std::vector<std::string> row_labels;
  Matrix basis;      // reduced row echelon form, k rows
  std::size_t k = 0;
  int delta = 0;
  std::vector<Partition> partitions;
  std::vector<std::string> column_labels;
  std::vector<CosetCheck> diagnostics;
  std::map<std::string, long long> counts;
  std::vector<std::string> notes;

  long designed_distance() const { return static_cast<long>(n) - delta; }
  std::size_t raw_rows() const { return generator.rows; }
  std::size_t kernel_dim() const { return generator.rows - k; }
  /// Locality of the first partition.
  std::size_t locality() const { return partitions.empty() ? 0 : partitions[0].r; }
};

/// Computes basis, k and repair data for every partition.  Partitions with
/// e-matrices use them; otherwise repair coefficients come from the basis.
void finalize_code(LinearCode& code);

/// Generator entry at row i*t + j, column P is e_i(P) f_j(Q(P)).  Throws
/// ConstructionError when delta >= n unless forced.
LinearCode build_code(const CoverData& cover, bool force = false);

struct RecoveryCheck {
  bool pass = true;
  std::vector<std::size_t> singular;  // deleted rows giving singular minors
};

RecoveryCheck check_recovery_matrix(const Field& f, const Matrix& e);

/// Repair data from e-matrices (or from the basis when a set has none).
std::vector<ColumnRepair> repair_from_e(const LinearCode& code, const Partition& p);
std::vector<ColumnRepair> repair_from_basis(const LinearCode& code, const Partition& p);

using Word = std::vector<std::optional<Elem>>;

/// Recovers the first erased coordinate from its helper set in the given
/// partition.  Throws ConstructionError when that set fails its check or
/// holds another erasure.
Elem local_recover(const LinearCode& code, const Word& word, std::size_t partition = 0);

/// Recovers one erased coordinate, trying the preferred partition first.
Elem recover_with_choice(const LinearCode& code, const Word& word, std::size_t erased,
                         std::size_t preferred = 0);

/// Peels erasures one helper set at a time until none are left, then checks
/// the result is a codeword.  Throws ConstructionError when stuck or when the
/// filled word fails the parity check.
std::vector<Elem> recover_erasures(const LinearCode& code, const Word& word, std::size_t preferred = 0);

bool is_codeword(const LinearCode& code, const std::vector<Elem>& word);
std::vector<Elem> encode(const LinearCode& code, const std::vector<Elem>& message);

struct AvailabilitySpec {
  WeierstrassCurve E;
  Subgroup G1, G2;
  WeierstrassCurve E1, E2;  // quotients, variables u, v
  RatExpr phi1_u, phi1_v, phi2_u, phi2_v;
  /// phi: E -> target with kernel containing G1 + G2; either [multiplier]
  /// on E or explicit expressions.
  std::optional<int> multiplier;
  WeierstrassCurve target;
  RatExpr phi_u, phi_v;
  int t = 0;
};

/// delta = (r1+1)(r2+1)t + r2(r1+1) + r1(r2+1).
int availability_divisor_degree(int r1, int r2, int t);

LinearCode build_availability_code(const AvailabilitySpec& spec, bool force = false);

}  // namespace geolrc
