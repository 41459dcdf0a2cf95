#include "fwlbp/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "fwlbp/error.hpp"
#include "json.hpp"

namespace fwlbp {

using nlohmann::json;

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

json ParseJson(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::vector<double> RowMajor(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

Eigen::MatrixXd FromRowMajor(const std::vector<double>& v, Eigen::Index rows,
                             Eigen::Index cols) {
  Require(static_cast<Eigen::Index>(v.size()) == rows * cols,
          ErrorCode::kShapeMismatch, "matrix payload has the wrong length");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[static_cast<std::size_t>(r * cols + c)];
  }
  return m;
}

std::vector<double> ToStd(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd ToEigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double ParseDouble(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  Require(res.ec == std::errc() && res.ptr == s.data() + s.size(),
          ErrorCode::kParse, "not a number: '" + s + "'");
  return v;
}

}  // namespace

std::string PcaToJson(const PcaModel& model) {
  json j = {
      {"n", model.input_dim()},
      {"k", model.output_dim()},
      {"mean", ToStd(model.mean)},
      {"components", RowMajor(model.components)},
      {"eigenvalues", ToStd(model.eigenvalues)},
  };
  return j.dump();
}

PcaModel PcaFromJson(const std::string& text) {
  const json j = ParseJson(text, "PCA model");
  try {
    PcaModel m;
    const auto n = j.at("n").get<Eigen::Index>();
    const auto k = j.at("k").get<Eigen::Index>();
    m.mean = ToEigen(j.at("mean").get<std::vector<double>>());
    m.components = FromRowMajor(j.at("components").get<std::vector<double>>(), n, k);
    m.eigenvalues = ToEigen(j.at("eigenvalues").get<std::vector<double>>());
    Require(m.mean.size() == n && m.eigenvalues.size() == k,
            ErrorCode::kShapeMismatch, "PCA model fields disagree on n/k");
    return m;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed PCA model: ") + e.what());
  }
}

std::string NscToJson(const NscModel& model,
                      const std::vector<std::string>& class_names) {
  Require(class_names.size() == model.classes().size(), ErrorCode::kShapeMismatch,
          "one class name per NSC class is required");
  json bases = json::array();
  json dims = json::array();
  for (const auto& b : model.bases()) {
    bases.push_back(RowMajor(b));
    dims.push_back(b.cols());
  }
  json policy;
  if (model.policy().kind == SubspacePolicy::Kind::kFixed) {
    policy = {{"kind", "fixed"}, {"dim", model.policy().dim}};
  } else {
    policy = {{"kind", "energy"}, {"energy", model.policy().energy}};
  }
  json j = {
      {"classes", class_names},
      {"labels", model.classes()},
      {"feature_dim", model.feature_dim()},
      {"dims", dims},
      {"bases", bases},
      {"policy", policy},
  };
  return j.dump();
}

NscModel NscFromJson(const std::string& text, std::vector<std::string>* class_names) {
  const json j = ParseJson(text, "NSC model");
  try {
    const auto labels = j.at("labels").get<std::vector<int>>();
    const auto dims = j.at("dims").get<std::vector<Eigen::Index>>();
    const auto fdim = j.at("feature_dim").get<Eigen::Index>();
    const auto& jb = j.at("bases");
    Require(dims.size() == labels.size() && jb.size() == labels.size(),
            ErrorCode::kShapeMismatch, "NSC model fields disagree on class count");
    std::vector<Eigen::MatrixXd> bases;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      bases.push_back(FromRowMajor(jb[i].get<std::vector<double>>(), fdim, dims[i]));
    }
    SubspacePolicy policy;
    const auto& p = j.at("policy");
    if (p.at("kind").get<std::string>() == "fixed") {
      policy = SubspacePolicy::Fixed(p.at("dim").get<int>());
    } else {
      policy = SubspacePolicy::Energy(p.at("energy").get<double>());
    }
    if (class_names) *class_names = j.at("classes").get<std::vector<std::string>>();
    return NscModel(labels, std::move(bases), policy);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed NSC model: ") + e.what());
  }
}

std::string DescriptorsToCsv(const std::vector<DescriptorRow>& rows) {
  std::ostringstream out;
  const std::size_t n = rows.empty() ? 0 : rows.front().values.size();
  out << "path,label";
  for (std::size_t i = 0; i < n; ++i) out << ",f" << i;
  out << '\n';
  for (const auto& r : rows) {
    Require(r.values.size() == n, ErrorCode::kShapeMismatch,
            "descriptor rows differ in length");
    out << CsvField(r.path) << ',' << CsvField(r.label);
    for (double v : r.values) out << ',' << FormatDouble(v);
    out << '\n';
  }
  return out.str();
}

std::vector<DescriptorRow> DescriptorsFromCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          "descriptor CSV has no header");
  const auto header = SplitCsvLine(line);
  Require(header.size() >= 2 && header[0] == "path" && header[1] == "label",
          ErrorCode::kParse, "descriptor CSV header must start with path,label");
  std::vector<DescriptorRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line);
    Require(fields.size() == header.size(), ErrorCode::kParse,
            "descriptor CSV row has the wrong number of fields");
    DescriptorRow r;
    r.path = fields[0];
    r.label = fields[1];
    for (std::size_t i = 2; i < fields.size(); ++i) r.values.push_back(ParseDouble(fields[i]));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string DescriptorsToJson(const std::vector<DescriptorRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"path", r.path}, {"label", r.label}, {"values", r.values}});
  }
  return arr.dump();
}

std::vector<DescriptorRow> DescriptorsFromJson(const std::string& text) {
  const json j = ParseJson(text, "descriptor file");
  std::vector<DescriptorRow> rows;
  try {
    for (const auto& e : j) {
      rows.push_back({e.at("path").get<std::string>(), e.at("label").get<std::string>(),
                      e.at("values").get<std::vector<double>>()});
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed descriptor JSON: ") + e.what());
  }
  return rows;
}

std::string FdImageToCsv(const FdImage& fd) {
  std::string out;
  for (std::size_t y = 0; y < fd.height(); ++y) {
    for (std::size_t x = 0; x < fd.width(); ++x) {
      if (x) out += ',';
      out += FormatDouble(fd.at(x, y));
    }
    out += '\n';
  }
  return out;
}

GrayImage FdImageToDisplay(const FdImage& fd) {
  const auto px = fd.values.pixels();
  const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
  const double span = *hi - *lo;
  std::vector<double> out(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    out[i] = span > 0.0 ? (px[i] - *lo) / span * 255.0 : 0.0;
  }
  return GrayImage(fd.width(), fd.height(), std::move(out));
}

}  // namespace fwlbp
