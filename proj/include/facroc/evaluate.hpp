#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facroc/cluster.hpp"
#include "facroc/ingest.hpp"
#include "facroc/report.hpp"

namespace facroc {

struct EvaluateOptions {
  int k = 2;
  bool k_auto = false;
  std::uint64_t seed = 42;
  double balance_target = 0.4;  // fairlet models
  std::size_t pair_sample_size = 2'000'000;
  std::size_t pair_full_limit = 2000;
  bool any_endpoint_slices = false;
};

// Runs one model end to end on a prepared feature matrix and computes every
// measure: silhouette, AUCC, balance, proportionality, FACROC with its two
// group curves. Models: kmeans, hierarchical, fairlet, scalable, proportional.
EvaluationReport evaluate_model(const FeatureMatrix& X, const std::string& dataset,
                                const std::string& model, const EvaluateOptions& opt);

const std::vector<std::string>& model_names();  // canonical five, table order

// Dispatches one clustering run by model name. D may be null when no dense
// matrix fits in memory; models that require it then refuse.
ClusterResult run_model(const FeatureMatrix& X, const DistanceMatrix* D,
                        const std::string& model, int k, std::uint64_t seed,
                        double balance_target);

// Resolves --dataset: a path to a schema file, or a packaged schema name
// looked up under the schema directory. Relative csv_path entries resolve
// against the data root (FACROC_DATA_DIR or the schema's directory).
DatasetSchema resolve_schema(const std::string& spec);
FeatureMatrix load_dataset(const DatasetSchema& schema);

}  // namespace facroc
