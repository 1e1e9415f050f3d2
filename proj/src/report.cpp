#include "facroc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "facroc/common.hpp"
#include "json.hpp"

namespace facroc {

namespace {

using ordered_json = nlohmann::ordered_json;

// Plot box: 600x600 canvas, 520x520 drawing area.
constexpr double kCanvas = 600.0;
constexpr double kLeft = 60.0, kTop = 20.0, kSide = 520.0;

std::string px(double fpr) { return format_fixed(kLeft + kSide * fpr, 2); }
std::string py(double tpr) { return format_fixed(kTop + kSide * (1.0 - tpr), 2); }

std::string curve_path(const RocCurve& c, bool move_first) {
  std::string d;
  for (std::size_t i = 0; i < c.fpr.size(); ++i) {
    d += (i == 0 && move_first) ? "M" : "L";
    d += px(c.fpr[i]);
    d += ",";
    d += py(c.tpr[i]);
    d += " ";
  }
  return d;
}

std::string curve_path_reversed(const RocCurve& c) {
  std::string d;
  for (std::size_t i = c.fpr.size(); i > 0; --i) {
    d += "L" + px(c.fpr[i - 1]) + "," + py(c.tpr[i - 1]) + " ";
  }
  return d;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '&') out += "&amp;";
    else if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else out.push_back(ch);
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  bool needs = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out += "\"";
  return out;
}

// Numbers whose textual form must parse back to the identical double.
ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return ordered_json(v > 0 ? "inf" : "-inf");
  return ordered_json(v);
}

double parse_number_or_inf(const ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw data_error("report json: bad numeric field: " + s);
  }
  return j.get<double>();
}

ordered_json curve_to_json(const RocCurve& c) {
  ordered_json j;
  j["fpr"] = c.fpr;
  j["tpr"] = c.tpr;
  j["n_pos"] = c.n_pos;
  j["n_neg"] = c.n_neg;
  j["auc"] = c.auc;
  return j;
}

RocCurve curve_from_json(const ordered_json& j) {
  RocCurve c;
  c.fpr = j.at("fpr").get<std::vector<double>>();
  c.tpr = j.at("tpr").get<std::vector<double>>();
  c.n_pos = j.at("n_pos").get<std::size_t>();
  c.n_neg = j.at("n_neg").get<std::size_t>();
  c.auc = j.at("auc").get<double>();
  return c;
}

double measure_value(const EvaluationReport& r, const std::string& m) {
  if (m == "silhouette") return r.silhouette;
  if (m == "aucc") return r.aucc;
  if (m == "balance") return r.balance;
  if (m == "proportionality") return r.proportionality;
  return r.facroc;
}

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names{"silhouette", "aucc", "balance",
                                              "proportionality", "facroc"};
  return names;
}

}  // namespace

std::string render_slice_plot(const EvaluationReport& r) {
  std::string s;
  s +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
      "viewBox=\"0 0 600 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"#ffffff\"/>\n";
  // Frame.
  s += "<rect x=\"" + format_fixed(kLeft, 2) + "\" y=\"" + format_fixed(kTop, 2) +
       "\" width=\"" + format_fixed(kSide, 2) + "\" height=\"" +
       format_fixed(kSide, 2) + "\" fill=\"none\" stroke=\"#222222\"/>\n";
  // Diagonal reference.
  s += "<path d=\"M" + px(0.0) + "," + py(0.0) + " L" + px(1.0) + "," + py(1.0) +
       "\" stroke=\"#999999\" stroke-dasharray=\"6 4\" fill=\"none\"/>\n";
  // Shaded region between the two curves (even-odd keeps crossing lobes).
  s += "<path d=\"" + curve_path(r.curve_p, true) + curve_path_reversed(r.curve_pbar) +
       "Z\" fill=\"#7f7fbf\" fill-opacity=\"0.35\" fill-rule=\"evenodd\" "
       "stroke=\"none\"/>\n";
  // Group curves, every vertex kept.
  s += "<path d=\"" + curve_path(r.curve_p, true) +
       "\" stroke=\"#1f5fbf\" stroke-width=\"2\" fill=\"none\"/>\n";
  s += "<path d=\"" + curve_path(r.curve_pbar, true) +
       "\" stroke=\"#bf3f2f\" stroke-width=\"2\" fill=\"none\"/>\n";
  // Axis ticks at 0, 0.5, 1.
  for (double t : {0.0, 0.5, 1.0}) {
    s += "<text x=\"" + px(t) + "\" y=\"" + format_fixed(kTop + kSide + 22.0, 2) +
         "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">" +
         format_fixed(t, 1) + "</text>\n";
    s += "<text x=\"" + format_fixed(kLeft - 10.0, 2) + "\" y=\"" +
         format_fixed(kTop + kSide * (1.0 - t) + 4.0, 2) +
         "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"end\">" +
         format_fixed(t, 1) + "</text>\n";
  }
  s += "<text x=\"" + format_fixed(kLeft + kSide / 2, 2) +
       "\" y=\"585.00\" font-family=\"monospace\" font-size=\"14\" "
       "text-anchor=\"middle\">within-group false positive rate</text>\n";
  s += "<text x=\"16.00\" y=\"" + format_fixed(kTop + kSide / 2, 2) +
       "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 16.00 " + format_fixed(kTop + kSide / 2, 2) +
       ")\">within-group true positive rate</text>\n";
  // Legend and annotation.
  s += "<text x=\"" + format_fixed(kLeft + 14.0, 2) + "\" y=\"" +
       format_fixed(kTop + 24.0, 2) +
       "\" font-family=\"monospace\" font-size=\"15\">FACROC = " +
       format_fixed(r.facroc, 4) + "</text>\n";
  s += "<text x=\"" + format_fixed(kLeft + 14.0, 2) + "\" y=\"" +
       format_fixed(kTop + 44.0, 2) +
       "\" font-family=\"monospace\" font-size=\"13\" fill=\"#1f5fbf\">" +
       xml_escape(r.dataset) + " / " + xml_escape(r.model) +
       ": protected group</text>\n";
  s += "<text x=\"" + format_fixed(kLeft + 14.0, 2) + "\" y=\"" +
       format_fixed(kTop + 62.0, 2) +
       "\" font-family=\"monospace\" font-size=\"13\" fill=\"#bf3f2f\">" +
       "remaining group</text>\n";
  s += "</svg>\n";
  return s;
}

std::string emit_table(const std::vector<EvaluationReport>& reports,
                       TableFormat fmt) {
  if (reports.empty()) throw usage_error("table requires at least one result");
  for (const auto& r : reports)
    if (r.dataset != reports.front().dataset)
      throw usage_error("table requires results for a single dataset");

  if (fmt == TableFormat::csv) {
    std::string out = "measure";
    for (const auto& r : reports) out += "," + csv_quote(r.model);
    out += "\n";
    for (const auto& m : measure_names()) {
      out += m;
      for (const auto& r : reports) out += "," + format_fixed(measure_value(r, m), 4);
      out += "\n";
    }
    return out;
  }

  ordered_json j;
  j["dataset"] = reports.front().dataset;
  j["models"] = ordered_json::array();
  for (const auto& r : reports) j["models"].push_back(r.model);
  j["measures"] = ordered_json::object();
  for (const auto& m : measure_names()) {
    ordered_json row = ordered_json::object();
    for (const auto& r : reports) row[r.model] = number_or_inf(measure_value(r, m));
    j["measures"][m] = row;
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const EvaluationReport& r) {
  ordered_json j;
  j["dataset"] = r.dataset;
  j["model"] = r.model;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["silhouette"] = r.silhouette;
  j["aucc"] = r.aucc;
  j["balance"] = r.balance;
  j["proportionality"] = number_or_inf(r.proportionality);
  j["facroc"] = r.facroc;
  j["curve_p"] = curve_to_json(r.curve_p);
  j["curve_pbar"] = curve_to_json(r.curve_pbar);
  ordered_json p;
  p["seed"] = r.provenance.seed;
  p["pairs_sampled"] = r.provenance.pairs_sampled;
  p["pair_sample_size"] = r.provenance.pair_sample_size;
  p["silhouette_sampled"] = r.provenance.silhouette_sampled;
  p["audit_approximate"] = r.provenance.audit_approximate;
  p["audit_centers"] = r.provenance.audit_centers;
  p["phase2_objective"] = r.provenance.phase2_objective;
  p["requested_k"] = r.provenance.requested_k;
  p["k_auto"] = r.provenance.k_auto;
  p["notes"] = r.provenance.notes;
  j["provenance"] = p;
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw data_error(std::string("report json parse failed: ") + e.what());
  }
  try {
    EvaluationReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.k = j.at("k").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.silhouette = j.at("silhouette").get<double>();
    r.aucc = j.at("aucc").get<double>();
    r.balance = j.at("balance").get<double>();
    r.proportionality = parse_number_or_inf(j.at("proportionality"));
    r.facroc = j.at("facroc").get<double>();
    r.curve_p = curve_from_json(j.at("curve_p"));
    r.curve_pbar = curve_from_json(j.at("curve_pbar"));
    const auto& p = j.at("provenance");
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.pairs_sampled = p.at("pairs_sampled").get<bool>();
    r.provenance.pair_sample_size = p.at("pair_sample_size").get<std::size_t>();
    r.provenance.silhouette_sampled = p.at("silhouette_sampled").get<bool>();
    r.provenance.audit_approximate = p.at("audit_approximate").get<bool>();
    r.provenance.audit_centers = p.at("audit_centers").get<std::string>();
    r.provenance.phase2_objective = p.at("phase2_objective").get<std::string>();
    r.provenance.requested_k = p.at("requested_k").get<int>();
    r.provenance.k_auto = p.at("k_auto").get<bool>();
    r.provenance.notes = p.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const data_error&) {
    throw;
  } catch (const std::exception& e) {
    throw data_error(std::string("report json: missing or bad field: ") + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw data_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw data_error("rename failed: " + path);
  }
}

}  // namespace facroc
