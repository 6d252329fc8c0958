#include "mixent/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mixent {

namespace {

Json params_to_json(const ExponentTuple& t) {
  return Json{{"p", exponent_to_json(t.p)},
              {"q", exponent_to_json(t.q)},
              {"r", exponent_to_json(t.r)},
              {"u", exponent_to_json(t.u)}};
}

ExponentTuple params_from_json(const Json& j) {
  return {exponent_from_json(j.at("p")), exponent_from_json(j.at("q")), exponent_from_json(j.at("r")),
          exponent_from_json(j.at("u"))};
}

Json matrix_rows(const double* data, int rows, int cols) {
  Json out = Json::array();
  for (int i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < cols; ++j) row.push_back(data[i * cols + j]);
    out.push_back(std::move(row));
  }
  return out;
}

/// Reads rows × cols numbers from a nested array into out (row-major).
void read_rows(const Json& j, int rows, int cols, double* out) {
  if (!j.is_array() || int(j.size()) != rows) throw PreconditionError("matrix has the wrong number of rows");
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[std::size_t(i)];
    if (!row.is_array() || int(row.size()) != cols) throw PreconditionError("matrix row has the wrong length");
    for (int c = 0; c < cols; ++c) out[i * cols + c] = row[std::size_t(c)].get<double>();
  }
}

Json metadata_to_json(const std::map<std::string, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

std::map<std::string, double> metadata_from_json(const Json& j) {
  std::map<std::string, double> out;
  if (j.is_null()) return out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<double>();
  return out;
}

Shape shape_from_json(const Json& j) {
  Shape s{j.at("b").get<int>(), j.at("d").get<int>()};
  if (s.b < 1 || s.d < 1) throw PreconditionError("shape needs b, d >= 1");
  return s;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace

Json exponent_to_json(Exponent e) {
  if (e.is_inf()) return "inf";
  return e.value();
}

Exponent exponent_from_json(const Json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  if (j.is_number()) return Exponent(j.get<double>());
  throw PreconditionError("exponent must be a number or a string");
}

Json to_json(const PackingCertificate& cert) {
  Json points = Json::array();
  for (std::size_t i = 0; i < cert.size(); ++i)
    points.push_back(matrix_rows(cert.points.row(Eigen::Index(i)).data(), cert.shape.b, cert.shape.d));
  return Json{{"construction", cert.construction},
              {"params", params_to_json(cert.params)},
              {"shape", {{"b", cert.shape.b}, {"d", cert.shape.d}}},
              {"sparsity", {{"s", cert.s}, {"t", cert.t}}},
              {"separation", cert.claimed_separation},
              {"seed", cert.seed},
              {"advertised_count", cert.advertised_count},
              {"constructible_count", cert.constructible_count},
              {"metadata", metadata_to_json(cert.metadata)},
              {"points", std::move(points)}};
}

PackingCertificate packing_from_json(const Json& j) {
  return guarded([&] {
    PackingCertificate cert;
    cert.construction = j.value("construction", std::string("external"));
    cert.params = params_from_json(j.at("params"));
    cert.shape = shape_from_json(j.at("shape"));
    if (j.contains("sparsity")) {
      cert.s = j["sparsity"].value("s", 0);
      cert.t = j["sparsity"].value("t", 0);
    }
    cert.claimed_separation = j.at("separation").get<double>();
    cert.seed = j.value("seed", std::uint64_t(0));
    cert.advertised_count = j.value("advertised_count", std::size_t(1));
    cert.constructible_count = j.value("constructible_count", 0.0);
    if (j.contains("metadata")) cert.metadata = metadata_from_json(j["metadata"]);
    const Json& pts = j.at("points");
    if (!pts.is_array()) throw PreconditionError("points must be an array");
    const int b = cert.shape.b, d = cert.shape.d;
    cert.points.resize(Eigen::Index(pts.size()), Eigen::Index(b) * d);
    for (std::size_t i = 0; i < pts.size(); ++i) read_rows(pts[i], b, d, cert.points.row(Eigen::Index(i)).data());
    return cert;
  });
}

Json to_json(const CoveringCertificate& cert) {
  Json sets = Json::array();
  for (const auto& rs : cert.row_sets) sets.push_back(matrix_rows(rs.data(), int(rs.rows()), int(rs.cols())));
  return Json{{"construction", cert.construction},
              {"params", params_to_json(cert.params)},
              {"shape", {{"b", cert.shape.b}, {"d", cert.shape.d}}},
              {"claimed_radius", cert.claimed_radius},
              {"budget", cert.budget},
              {"count", cert.count},
              {"certified_index", cert.certified_index},
              {"coverage_evidence",
               {{"samples", cert.evidence.samples},
                {"max_distance", cert.evidence.max_distance},
                {"misses", cert.evidence.misses},
                {"seed", cert.evidence.seed}}},
              {"metadata", metadata_to_json(cert.metadata)},
              {"row_sets", std::move(sets)},
              {"blocks", cert.blocks}};
}

CoveringCertificate covering_from_json(const Json& j) {
  return guarded([&] {
    CoveringCertificate cert;
    cert.construction = j.value("construction", std::string("external"));
    cert.params = params_from_json(j.at("params"));
    cert.shape = shape_from_json(j.at("shape"));
    cert.claimed_radius = j.at("claimed_radius").get<double>();
    cert.budget = j.value("budget", 0);
    cert.count = j.at("count").get<std::uint64_t>();
    cert.certified_index = j.at("certified_index").get<int>();
    if (j.contains("coverage_evidence")) {
      const Json& ev = j["coverage_evidence"];
      cert.evidence.samples = ev.value("samples", std::size_t(0));
      cert.evidence.max_distance = ev.value("max_distance", 0.0);
      cert.evidence.misses = ev.value("misses", std::size_t(0));
      cert.evidence.seed = ev.value("seed", std::uint64_t(0));
    }
    if (j.contains("metadata")) cert.metadata = metadata_from_json(j["metadata"]);
    const int d = cert.shape.d;
    for (const Json& set : j.at("row_sets")) {
      if (!set.is_array()) throw PreconditionError("row set must be an array");
      RowMajorMatrix m(Eigen::Index(set.size()), d);
      read_rows(set, int(set.size()), d, m.data());
      cert.row_sets.push_back(std::move(m));
    }
    cert.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    for (const auto& blk : cert.blocks) {
      if (int(blk.size()) != cert.shape.b) throw PreconditionError("block length must equal b");
      for (int idx : blk)
        if (idx < 0 || std::size_t(idx) >= cert.row_sets.size()) throw PreconditionError("block index out of range");
    }
    return cert;
  });
}

Json to_json(const GVCode& code) {
  Json words = Json::array();
  for (std::size_t i = 0; i < code.size(); ++i)
    words.push_back(std::vector<int>(code.word(i), code.word(i) + code.length));
  return Json{{"alphabet_size", code.alphabet_size},
              {"length", code.length},
              {"min_distance", code.min_distance},
              {"size", code.size()},
              {"complete", code.complete},
              {"verified_min_distance", code.verified_min_distance()},
              {"gv_lower_bound", code.gv_fraction()},
              {"words", std::move(words)}};
}

Json to_json(const SubsetFamily& family) {
  Json sets = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) sets.push_back(family.members(i));
  return Json{{"ground_size", family.ground_size},
              {"s", family.s},
              {"size", family.size()},
              {"target", family.target()},
              {"randomized", family.randomized},
              {"seed", family.seed},
              {"verified_max_intersection", family.verified_max_intersection()},
              {"sets", std::move(sets)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

}  // namespace mixent
