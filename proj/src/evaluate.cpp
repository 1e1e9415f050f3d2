#include "facroc/evaluate.hpp"

#include <cstdlib>
#include <filesystem>
#include <memory>

#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"
#include "facroc/fairness.hpp"
#include "facroc/roceval.hpp"
#include "facroc/selection.hpp"
#include "facroc/synth.hpp"

namespace facroc {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSilhouetteSample = 4000;
constexpr std::size_t kAuditCandidateSample = 2000;

std::string data_root() {
  if (const char* env = std::getenv("FACROC_DATA_DIR"); env && *env) return env;
  return "facroc_data";
}

std::string schema_root() {
  if (const char* env = std::getenv("FACROC_SCHEMA_DIR"); env && *env) return env;
#ifdef FACROC_SCHEMA_DIR
  return FACROC_SCHEMA_DIR;
#else
  return "schemas";
#endif
}

}  // namespace

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"kmeans", "hierarchical", "fairlet",
                                              "scalable", "proportional"};
  return names;
}

ClusterResult run_model(const FeatureMatrix& X, const DistanceMatrix* D,
                        const std::string& model, int k, std::uint64_t seed,
                        double balance_target) {
  if (k < 1) throw usage_error("k must be at least 1");
  ClusterResult res;
  if (model == "kmeans") {
    KMeansConfig cfg;
    cfg.k = k;
    cfg.seed = seed;
    res = kmeans(X, cfg);
  } else if (model == "hierarchical") {
    HierarchicalConfig cfg;
    cfg.k = k;
    res = hierarchical(X, cfg);
  } else if (model == "fairlet") {
    if (!D)
      throw data_error(
          "fairlet model needs the full distance matrix; too many points "
          "(use the scalable model)");
    FairletDecomposition dec = fairlet_decompose(*D, X.groups, balance_target);
    res = fairlet_cluster(dec, *D, k, seed);
  } else if (model == "scalable") {
    FairletDecomposition dec =
        scalable_fairlet_decompose(X, X.groups, balance_target, seed);
    res = D ? fairlet_cluster(dec, *D, k, seed) : fairlet_cluster(dec, X, k, seed);
  } else if (model == "proportional") {
    if (!D)
      throw data_error(
          "proportional model needs the full distance matrix; too many points");
    res = greedy_capture(*D, k);
  } else {
    throw usage_error("unknown model: " + model);
  }
  res.model = model;
  res.seed = seed;
  return res;
}

EvaluationReport evaluate_model(const FeatureMatrix& X, const std::string& dataset,
                                const std::string& model,
                                const EvaluateOptions& opt) {
  X.validate();

  std::unique_ptr<DistanceMatrix> D;
  if (X.n <= kDenseLimit) D = std::make_unique<DistanceMatrix>(distance_matrix(X));

  EvaluationReport r;
  r.dataset = dataset;
  r.model = model;
  r.seed = opt.seed;
  r.provenance.seed = opt.seed;
  r.provenance.k_auto = opt.k_auto;

  int k = opt.k;
  if (opt.k_auto) {
    SelectKResult sel = select_k(X, "kmeans", 2, 10, opt.seed);
    k = sel.k_star;
    r.provenance.notes.push_back("k selected by AUCC sweep over [2, 10]");
  }
  r.provenance.requested_k = k;
  if (model == "fairlet" || model == "scalable")
    r.provenance.phase2_objective = "k-median";

  ClusterResult cr = run_model(X, D.get(), model, k, opt.seed, opt.balance_target);
  r.k = cr.k;

  if (D) {
    r.silhouette = silhouette(*D, cr.labels, cr.k);
  } else {
    r.silhouette = silhouette_sampled(X, cr.labels, cr.k, kSilhouetteSample,
                                      mix_seed(opt.seed, 0x51));
    r.provenance.silhouette_sampled = true;
    r.provenance.notes.push_back("silhouette over a point subsample");
  }

  SamplerConfig cfg;
  cfg.full_enumeration_limit = opt.pair_full_limit;
  cfg.sample_size = opt.pair_sample_size;
  cfg.seed = opt.seed;
  cfg.any_endpoint = opt.any_endpoint_slices;
  auto pairs_for = [&](PairSlice s) {
    return D ? scored_pairs(*D, cr.labels, X.groups, s, cfg)
             : scored_pairs(X, cr.labels, s, cfg);
  };
  ScoredPairSet all = pairs_for(PairSlice::all);
  ScoredPairSet sp = pairs_for(PairSlice::group_p);
  ScoredPairSet spb = pairs_for(PairSlice::group_pbar);

  r.aucc = aucc(all);
  FacrocResult fr = compute_facroc(sp, spb);
  r.facroc = fr.value;
  r.curve_p = fr.curve_p;
  r.curve_pbar = fr.curve_pbar;

  r.balance = clustering_balance(cr.labels, X.groups);

  if (D) {
    AuditResult audit = proportionality_audit(*D, cr.labels, cr.k);
    r.proportionality = audit.rho;
  } else {
    AuditResult audit = proportionality_audit(X, cr.labels, cr.k,
                                              kAuditCandidateSample,
                                              mix_seed(opt.seed, 0x52));
    r.proportionality = audit.rho;
    r.provenance.audit_approximate = true;
    r.provenance.notes.push_back(
        "proportionality audited over sampled candidate centres");
  }

  r.provenance.pairs_sampled = all.sampled || sp.sampled || spb.sampled;
  if (r.provenance.pairs_sampled)
    r.provenance.pair_sample_size = cfg.sample_size;
  return r;
}

DatasetSchema resolve_schema(const std::string& spec) {
  fs::path direct(spec);
  std::string schema_path;
  if (spec.find('/') != std::string::npos || spec.find('\\') != std::string::npos ||
      direct.extension() == ".json") {
    schema_path = spec;
  } else {
    schema_path = (fs::path(schema_root()) / (spec + ".json")).string();
  }
  if (!fs::exists(schema_path))
    throw data_error("no such dataset or schema file: " + spec);
  DatasetSchema schema = load_schema(schema_path);
  fs::path csv(schema.csv_path);
  if (csv.is_relative()) schema.csv_path = (fs::path(data_root()) / csv).string();
  return schema;
}

FeatureMatrix load_dataset(const DatasetSchema& schema) {
  bool generated = false;
  if (!fs::exists(schema.csv_path) && is_standin_name(schema.name)) {
    fs::path parent = fs::path(schema.csv_path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    write_standin_dataset(schema.name, schema.csv_path, 42);
    generated = true;
  }
  DataTable table = load_csv(schema);
  FeatureMatrix X = preprocess(table, schema);
  if (generated)
    X.warnings.insert(X.warnings.begin(),
                      "generated stand-in data at " + schema.csv_path);
  X.validate();
  return X;
}

}  // namespace facroc
