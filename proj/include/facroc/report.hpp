#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facroc/roceval.hpp"

namespace facroc {

struct Provenance {
  std::uint64_t seed = 42;
  bool pairs_sampled = false;
  std::size_t pair_sample_size = 0;
  bool silhouette_sampled = false;
  bool audit_approximate = false;
  std::string audit_centers = "cluster medoids";
  std::string phase2_objective;  // fairlet models: "k-median"
  int requested_k = 0;           // models may achieve fewer clusters
  bool k_auto = false;           // k chosen by the AUCC sweep
  std::vector<std::string> notes;
};

struct EvaluationReport {
  std::string dataset, model;
  int k = 0;
  std::uint64_t seed = 42;
  double silhouette = 0.0, aucc = 0.0, balance = 0.0;
  double proportionality = 0.0;  // may be +inf
  double facroc = 0.0;
  RocCurve curve_p, curve_pbar;
  Provenance provenance;
};

// Slice plot: both group ROC curves, diagonal reference, shaded area between
// the curves, FACROC annotated to 4 decimals. Byte-identical output for
// identical reports.
std::string render_slice_plot(const EvaluationReport& r);

// Measure table, rows = measures, columns = models; 4-decimal values,
// infinities as "inf". All reports must share a dataset.
enum class TableFormat { csv, json };
std::string emit_table(const std::vector<EvaluationReport>& reports, TableFormat fmt);

// Full-fidelity JSON serialization of a report (stable key order) and its
// inverse. Curves round-trip exactly.
std::string report_to_json(const EvaluationReport& r);
EvaluationReport report_from_json(const std::string& text);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace facroc
