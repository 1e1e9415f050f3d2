// Python bindings: thin wrappers returning plain values or JSON strings that
// the `facroc` package decodes. Heavy lifting stays in the C++ core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "facroc/common.hpp"
#include "facroc/evaluate.hpp"
#include "facroc/fairness.hpp"
#include "facroc/oracles.hpp"
#include "facroc/roceval.hpp"
#include "facroc/selection.hpp"
#include "facroc/synth.hpp"

namespace py = pybind11;
using namespace facroc;

namespace {

ScoredPairSet pairs_from_lists(const std::vector<double>& scores,
                               const std::vector<int>& same_cluster) {
  if (scores.size() != same_cluster.size())
    throw usage_error("scores and same_cluster must have equal length");
  ScoredPairSet out;
  out.member_count = scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    ScoredPair p;
    p.i = 0;
    p.j = 1;
    p.score = scores[i];
    p.same_cluster = same_cluster[i] ? 1 : 0;
    out.pairs.push_back(p);
  }
  return out;
}

std::vector<std::uint8_t> to_groups(const std::vector<int>& groups) {
  std::vector<std::uint8_t> g(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) g[i] = groups[i] ? 1 : 0;
  return g;
}

}  // namespace

PYBIND11_MODULE(_facroc, m) {
  m.doc() =
      "Fairness measures for clusterings (FACROC, balance, proportionality) "
      "and (fair) clustering models";

  py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
  py::register_exception<data_error>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<infeasible_fairness_error>(m, "InfeasibleFairnessError",
                                                    PyExc_RuntimeError);

  m.def(
      "aucc",
      [](const std::vector<double>& scores, const std::vector<int>& same_cluster) {
        return aucc(pairs_from_lists(scores, same_cluster));
      },
      py::arg("scores"), py::arg("same_cluster"),
      "AUC of ranked pair scores against same-cluster outcomes (ties half-credit)");

  m.def(
      "facroc",
      [](const std::vector<double>& scores_p, const std::vector<int>& same_p,
         const std::vector<double>& scores_pbar,
         const std::vector<int>& same_pbar) {
        FacrocResult r = compute_facroc(pairs_from_lists(scores_p, same_p),
                                        pairs_from_lists(scores_pbar, same_pbar));
        py::dict d;
        d["value"] = r.value;
        d["aucc_p"] = r.aucc_p;
        d["aucc_pbar"] = r.aucc_pbar;
        d["crossings"] = r.crossings;
        return d;
      },
      py::arg("scores_p"), py::arg("same_p"), py::arg("scores_pbar"),
      py::arg("same_pbar"),
      "Exact area between the two group ROC curves, with per-group AUCC");

  m.def(
      "balance",
      [](const std::vector<int>& labels, const std::vector<int>& groups) {
        return clustering_balance(labels, to_groups(groups));
      },
      py::arg("labels"), py::arg("groups"),
      "Minimum over clusters of the min group-count ratio");

  m.def(
      "evaluate_json",
      [](const std::string& dataset, const std::string& model, const std::string& k,
         std::uint64_t seed, double balance_target) {
        EvaluateOptions opt;
        if (k == "auto") opt.k_auto = true;
        else opt.k = std::stoi(k);
        opt.seed = seed;
        opt.balance_target = balance_target;
        DatasetSchema schema = resolve_schema(dataset);
        FeatureMatrix X = load_dataset(schema);
        EvaluationReport r = evaluate_model(X, schema.name, model, opt);
        return report_to_json(r);
      },
      py::arg("dataset"), py::arg("model"), py::arg("k") = "2",
      py::arg("seed") = 42, py::arg("balance_target") = 0.4,
      "Full evaluation of one model on a dataset; returns the report as JSON");

  m.def(
      "select_k",
      [](const std::string& dataset, const std::string& model, int k_min, int k_max,
         std::uint64_t seed) {
        DatasetSchema schema = resolve_schema(dataset);
        FeatureMatrix X = load_dataset(schema);
        SelectKResult sel = select_k(X, model, k_min, k_max, seed);
        py::list curve;
        for (const auto& pt : sel.curve) {
          py::dict d;
          d["k"] = pt.k;
          d["aucc"] = pt.aucc;
          d["failed"] = pt.failed;
          curve.append(d);
        }
        py::dict out;
        out["k_star"] = sel.k_star;
        out["curve"] = curve;
        return out;
      },
      py::arg("dataset"), py::arg("model") = "kmeans", py::arg("k_min") = 2,
      py::arg("k_max") = 10, py::arg("seed") = 42,
      "AUCC sweep over a k range; returns the argmax and the curve");

  m.def(
      "run_oracle_suite",
      [](const std::string& name, std::uint64_t seed) {
        oracle::SuiteResult r = oracle::run_suite(name, seed);
        py::dict d;
        d["suite"] = r.suite;
        d["passed"] = r.passed;
        d["failed"] = r.failed;
        d["failures"] = r.failures;
        return d;
      },
      py::arg("name"), py::arg("seed") = 42,
      "Run a brute-force verification suite by name ('all' for every suite)");

  m.def("write_standin_dataset", &write_standin_dataset, py::arg("name"),
        py::arg("csv_path"), py::arg("seed") = 42,
        "Write one of the deterministic stand-in dataset CSVs");

  m.def("model_names", [] { return model_names(); },
        "Canonical model names in table order");
}
