#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "facroc/common.hpp"
#include "facroc/report.hpp"
#include "json.hpp"

using namespace facroc;
namespace fs = std::filesystem;

namespace {

EvaluationReport sample_report() {
  EvaluationReport r;
  r.dataset = "toyset";
  r.model = "kmeans";
  r.k = 3;
  r.seed = 42;
  r.silhouette = 0.512345678;
  r.aucc = 0.87654321;
  r.balance = 0.4;
  r.proportionality = 1.25;
  r.facroc = 0.00291827;
  r.curve_p.fpr = {0.0, 0.25, 1.0};
  r.curve_p.tpr = {0.0, 0.75, 1.0};
  r.curve_p.n_pos = 4;
  r.curve_p.n_neg = 4;
  r.curve_p.auc = 0.75;
  r.curve_pbar.fpr = {0.0, 0.5, 1.0};
  r.curve_pbar.tpr = {0.0, 0.5, 1.0};
  r.curve_pbar.n_pos = 2;
  r.curve_pbar.n_neg = 2;
  r.curve_pbar.auc = 0.5;
  r.provenance.seed = 42;
  r.provenance.pairs_sampled = true;
  r.provenance.pair_sample_size = 1000;
  r.provenance.requested_k = 3;
  r.provenance.notes = {"a note"};
  return r;
}

}  // namespace

TEST_CASE("slice plots are byte-identical and carry the annotation") {
  EvaluationReport r = sample_report();
  std::string svg1 = render_slice_plot(r);
  std::string svg2 = render_slice_plot(r);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("FACROC = 0.0029") != std::string::npos);
  CHECK(svg1.find("#1f5fbf") != std::string::npos);   // protected-group curve
  CHECK(svg1.find("#bf3f2f") != std::string::npos);   // complement curve
  CHECK(svg1.find("stroke-dasharray") != std::string::npos);  // diagonal
  CHECK(svg1.find("toyset") != std::string::npos);
  CHECK(svg1.find("kmeans") != std::string::npos);
  // Every curve vertex appears: interior points of both curves.
  CHECK(svg1.find("fill-rule=\"evenodd\"") != std::string::npos);

  SUBCASE("markup characters in names are escaped") {
    EvaluationReport odd = r;
    odd.dataset = "a<b&c";
    std::string svg = render_slice_plot(odd);
    CHECK(svg.find("a<b&c") == std::string::npos);
    CHECK(svg.find("a&lt;b&amp;c") != std::string::npos);
  }
}

TEST_CASE("the measure table renders CSV with four decimals and inf") {
  EvaluationReport a = sample_report();
  EvaluationReport b = sample_report();
  b.model = "fairlet";
  b.proportionality = kInf;
  b.facroc = 0.125;
  std::string csv = emit_table({a, b}, TableFormat::csv);
  CHECK(csv.find("measure,kmeans,fairlet") == 0);
  CHECK(csv.find("facroc,0.0029,0.1250") != std::string::npos);
  CHECK(csv.find("proportionality,1.2500,inf") != std::string::npos);
  CHECK(csv.find("silhouette,0.5123,") != std::string::npos);
  // Five measure rows plus the header.
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 6);
}

TEST_CASE("the JSON table keeps full precision and tags infinities") {
  EvaluationReport a = sample_report();
  EvaluationReport b = sample_report();
  b.model = "scalable";
  b.proportionality = kInf;
  std::string text = emit_table({a, b}, TableFormat::json);
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["dataset"] == "toyset");
  REQUIRE(j["models"].size() == 2);
  CHECK(j["models"][0] == "kmeans");
  CHECK(j["measures"]["aucc"]["kmeans"].get<double>() == a.aucc);
  CHECK(j["measures"]["proportionality"]["scalable"] == "inf");
  CHECK(j["measures"]["facroc"]["kmeans"].get<double>() == a.facroc);
}

TEST_CASE("reports round-trip through JSON without loss") {
  EvaluationReport r = sample_report();
  r.proportionality = kInf;  // exercise the inf encoding
  std::string text = report_to_json(r);
  EvaluationReport back = report_from_json(text);
  CHECK(back.dataset == r.dataset);
  CHECK(back.model == r.model);
  CHECK(back.k == r.k);
  CHECK(back.seed == r.seed);
  CHECK(back.silhouette == r.silhouette);
  CHECK(back.aucc == r.aucc);
  CHECK(back.balance == r.balance);
  CHECK(std::isinf(back.proportionality));
  CHECK(back.facroc == r.facroc);
  CHECK(back.curve_p.fpr == r.curve_p.fpr);
  CHECK(back.curve_p.tpr == r.curve_p.tpr);
  CHECK(back.curve_p.n_pos == r.curve_p.n_pos);
  CHECK(back.curve_pbar.fpr == r.curve_pbar.fpr);
  CHECK(back.provenance.pairs_sampled == r.provenance.pairs_sampled);
  CHECK(back.provenance.pair_sample_size == r.provenance.pair_sample_size);
  CHECK(back.provenance.notes == r.provenance.notes);

  // Key order is stable: serialize twice, compare bytes.
  CHECK(report_to_json(r) == text);
  CHECK(text.find("\"dataset\"") < text.find("\"model\""));
  CHECK(text.find("\"silhouette\"") < text.find("\"facroc\""));

  SUBCASE("malformed documents raise data errors") {
    CHECK_THROWS_AS(report_from_json("{not json"), data_error);
    CHECK_THROWS_AS(report_from_json("{\"dataset\": 3}"), data_error);
  }
}

TEST_CASE("atomic writes leave no temp file behind") {
  fs::path dir = fs::temp_directory_path() / "facroc_report_test";
  fs::create_directories(dir);
  fs::path target = dir / "out.json";
  atomic_write(target.string(), "hello\n");
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "hello\n");
  bool tmp_left = false;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".tmp") tmp_left = true;
  CHECK(!tmp_left);

  // Overwrites are atomic replacements, not appends.
  atomic_write(target.string(), "second\n");
  std::ifstream in2(target);
  std::string content2((std::istreambuf_iterator<char>(in2)),
                       std::istreambuf_iterator<char>());
  CHECK(content2 == "second\n");
  fs::remove_all(dir);
}
