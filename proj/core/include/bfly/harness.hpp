#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfly/field.hpp"

namespace bfly {

inline constexpr int kReportSchemaVersion = 1;
/// Index convention recorded in every report header.
inline constexpr const char* kPackingConvention =
    "index(x, y) = x * 2^n + y; z = x + gamma y in GF(q^2) with gamma^2 = gamma + 1";

struct ScanConfig {
  unsigned n = 3;
  std::vector<unsigned> i_list{1, 2};
  std::optional<std::uint32_t> modulus;  // default_modulus(n) when unset
  unsigned jobs = 1;
  /// Direct BCTs per i confirming the image criterion when m > 6.
  unsigned direct_samples = 5;
  /// Count every Gold witness instead of stopping at the first.
  bool count_witnesses = false;
};

struct WitnessRecord {
  Elem a = 0, b = 0, c = 0, d = 0;
  std::optional<std::uint64_t> count;
  bool replay_ok = false;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

struct ScanRow {
  unsigned i = 0;
  Elem alpha = 0;
  Elem beta = 0;
  bool in_gamma = false;
  bool is_permutation = false;
  std::optional<std::uint32_t> differential_uniformity;
  std::optional<std::uint32_t> boomerang_uniformity;
  /// "direct", "criterion", "criterion+direct" or empty when not measured.
  std::string boomerang_method;
  std::optional<std::uint32_t> nonlinearity;
  std::optional<unsigned> algebraic_degree;
  std::optional<WitnessRecord> witness;
  bool ok = false;
  std::string note;
  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

struct ScanSummary {
  std::uint64_t rows = 0;
  std::uint64_t violations = 0;
  std::uint64_t in_gamma_rows = 0;
  std::uint64_t permutations = 0;
  std::uint64_t witnessed = 0;
  bool empty_domain = true;
  bool claim_holds = true;
  /// boomerang uniformity -> rows
  std::map<std::uint32_t, std::uint64_t> boomerang_histogram;
  friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

struct ScanReport {
  int schema_version = kReportSchemaVersion;
  std::string scan_id;
  unsigned n = 0;
  std::uint32_t modulus = 0;
  std::vector<unsigned> i_list;
  std::string grid;
  std::string packing = kPackingConvention;
  std::vector<ScanRow> rows;  // sorted by (i, alpha, beta)
  ScanSummary summary;
  /// phase -> wall seconds; informational only.
  std::map<std::string, double> timing;
  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

ScanSummary recompute_summary(const ScanReport& r);

/// Every (alpha, beta) in Gamma: permutation, DU 4, BU 4, nl = 2^(2n-1) - 2^n, degree 2.
/// BU is direct for 2n <= 6, otherwise the image criterion with direct confirmation
/// on direct_samples members per i.
ScanReport scan_theorem1(const ScanConfig& cfg);
/// Every (alpha, beta) outside Gamma with alpha beta != 0: the row fails if V is a
/// permutation with BU 4.
ScanReport scan_conjecture(const ScanConfig& cfg);
/// Open butterfly over every alpha beta != 0 with direct BCTs; the row fails on BU 4.
ScanReport scan_open_butterfly(const ScanConfig& cfg);
/// Gold witness and replay for every member of Gamma.
ScanReport scan_gold(const ScanConfig& cfg);

/// Deterministic JSON; the timing block is left out when include_timing is false.
std::string report_to_json(const ScanReport& r, bool include_timing = true);
void write_report_json(std::ostream& os, const ScanReport& r, bool include_timing = true);
void write_report_csv(std::ostream& os, const ScanReport& r);

/// Accepts either format. Throws ReportError on malformed input, on a schema
/// version other than kReportSchemaVersion, or when a stored summary disagrees
/// with the rows.
ScanReport read_report(std::istream& is);
void save_report(const std::string& path, const ScanReport& r);
ScanReport load_report(const std::string& path);

}  // namespace bfly
