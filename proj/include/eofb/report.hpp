#pragma once

// State documents, bound reports and parameter scans behind the command line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eofb/bounds.hpp"

namespace eofb {

struct AnalyzeOptions {
  BoundOptions bounds;
  Units units = Units::nats;
};

/// Accepts exactly one of
///   {"matrix": [[4x4]] or [16 numbers, row-major]},
///   {"standard_form": {"a", "b", "c1", "c2"}},
///   {"invariants": {"I1", "I2", "I3", "I4"}}.
/// Throws ParseError for malformed documents, DegenerateInvariants when the
/// invariants admit no real standard form, NonPhysicalState otherwise.
CovMat parse_state_document(const nlohmann::json& doc, double psd_tol = kDefaultPsdTol);
CovMat parse_state_text(std::string_view text, double psd_tol = kDefaultPsdTol);

nlohmann::json analyze(const CovMat& v, const AnalyzeOptions& opts = {});

/// Inclusive grid of `steps` points from min to max.
struct Range {
  double min = 1.0;
  double max = 4.0;
  int steps = 40;

  double at(int k) const;
};

struct ScanSpec {
  Range i1;
  Range i2;
  double i3 = -0.2;
  /// Literal I4; when absent I4 = 2|I3| sqrt(I1 I2).
  std::optional<double> i4;
  bool compute_geof = true;
};

/// {"I1": {"min", "max", "steps"}, "I2": {...}, "I3": x, "I4": x | "rule",
///  "geof": bool}; missing keys keep their defaults. Throws ParseError.
ScanSpec parse_scan_document(const nlohmann::json& doc);

/// Throws ParseError for an empty grid or non-finite values.
void validate(const ScanSpec& spec);

enum class RowStatus { ok, skip_degenerate, skip_unphysical, hierarchy_violation, budget_exhausted };

const char* to_string(RowStatus s);

struct ScanRow {
  double i1 = 0.0;
  double i2 = 0.0;
  double i3 = 0.0;
  double i4 = 0.0;
  RowStatus status = RowStatus::ok;
  double mu_tilde_minus = 0.0;
  bool entangled = false;
  EntanglementValue lower_natural;
  EntanglementValue sigma;
  std::optional<EntanglementValue> geof;
  EntanglementValue eeof;
  std::optional<EntanglementValue> upper_natural;

  bool evaluated() const {
    return status != RowStatus::skip_degenerate && status != RowStatus::skip_unphysical;
  }
};

/// Row order follows the grid (I1 outer, I2 inner) for any thread count.
std::vector<ScanRow> scan(const ScanSpec& spec, const AnalyzeOptions& opts = {}, int threads = 1);

extern const char* const kScanCsvHeader;

std::string format_scan_csv(const std::vector<ScanRow>& rows, Units units = Units::nats);

}  // namespace eofb
