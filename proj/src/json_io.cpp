#include "phaselip/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace phaselip {

using nlohmann::json;

namespace {

json scalar_to_json(cx v, ScalarField field) {
  if (field == ScalarField::Real) return v.real();
  return json::array({v.real(), v.imag()});
}

cx scalar_from_json(const json& j) {
  if (j.is_array()) return cx(j.at(0).get<double>(), j.at(1).get<double>());
  return cx(j.get<double>(), 0.0);
}

ScalarField field_from_string(const std::string& s) {
  if (s == "real") return ScalarField::Real;
  if (s == "complex") return ScalarField::Complex;
  throw SpecError("unknown scalar field: " + s);
}

json finite_or_tag(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

json to_json(const Vec& v) {
  json coeffs = json::array();
  for (cx c : v.coeffs()) coeffs.push_back(scalar_to_json(c, v.field()));
  return json{{"field", to_string(v.field())}, {"coeffs", std::move(coeffs)}};
}

Vec vec_from_json(const json& j) {
  const ScalarField field = field_from_string(j.at("field").get<std::string>());
  std::vector<cx> c;
  for (const json& e : j.at("coeffs")) c.push_back(scalar_from_json(e));
  if (field == ScalarField::Real)
    for (cx& v : c) v = cx(v.real(), 0.0);
  return Vec(field, std::move(c));
}

json to_json(const Frame& f) {
  json vectors = json::array();
  for (const Vec& v : f.vectors()) {
    json coeffs = json::array();
    for (cx c : v.coeffs()) coeffs.push_back(scalar_to_json(c, f.field()));
    vectors.push_back(std::move(coeffs));
  }
  return json{{"field", to_string(f.field())},
              {"dim", f.dim()},
              {"vectors", std::move(vectors)},
              {"labels", f.labels()}};
}

Frame frame_from_json(const json& j) {
  const ScalarField field = field_from_string(j.at("field").get<std::string>());
  const auto dim = j.at("dim").get<std::size_t>();
  std::vector<Vec> vs;
  for (const json& row : j.at("vectors")) {
    std::vector<cx> c;
    for (const json& e : row) c.push_back(scalar_from_json(e));
    vs.emplace_back(field, std::move(c));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return Frame(field, dim, std::move(vs), std::move(labels));
}

json to_json(const PriorSet& B) {
  return json{{"provenance",
               B.provenance == PriorProvenance::FromG ? "from_g" : "direct"},
              {"field", to_string(B.field)},
              {"D", B.D},
              {"head_dim", B.head_dim},
              {"gamma", B.gamma},
              {"R", B.R},
              {"envelope", B.t}};
}

PriorSet prior_from_json(const json& j) {
  PriorSet B;
  B.provenance = j.at("provenance").get<std::string>() == "from_g"
                     ? PriorProvenance::FromG
                     : PriorProvenance::Direct;
  B.field = field_from_string(j.at("field").get<std::string>());
  B.D = j.at("D").get<std::size_t>();
  B.head_dim = j.value("head_dim", std::size_t{1});
  B.gamma = j.value("gamma", 0.0);
  B.R = j.value("R", 0.0);
  B.t = j.at("envelope").get<std::vector<double>>();
  B.validate();
  return B;
}

json to_json(const StabilityReport& r) {
  json witnesses = json::array();
  for (const Witness& w : r.witnesses) {
    witnesses.push_back(json{{"f", to_json(w.f)},
                             {"g", to_json(w.g)},
                             {"dq", w.dq},
                             {"dm", w.dm},
                             {"ratio", finite_or_tag(w.ratio)},
                             {"injectivity_violation", w.injectivity_violation}});
  }
  json doc{{"schema_version", 1},
           {"frame_id", r.frame_id},
           {"prior_id", r.prior_id},
           {"max_ratio", finite_or_tag(r.max_ratio)},
           {"verdict", to_string(r.verdict)},
           {"witnesses", std::move(witnesses)}};
  doc["claimed_bound"] =
      r.claimed_bound ? json(*r.claimed_bound) : json(nullptr);
  doc["sigma_fit"] = r.sigma_fit ? json(*r.sigma_fit) : json(nullptr);
  doc["sigma_residual"] =
      r.sigma_residual ? json(*r.sigma_residual) : json(nullptr);
  return doc;
}

std::string scan_to_csv(const std::vector<ScanRecord>& records) {
  std::string out = "m,dq,dm,ratio\n";
  char buf[128];
  for (const ScanRecord& r : records) {
    const double ratio = r.dm > 0.0
                             ? r.dq / r.dm
                             : std::numeric_limits<double>::infinity();
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.m, r.dq, r.dm,
                  ratio);
    out += buf;
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace phaselip
