#pragma once

#include <string>
#include <vector>

#include "fwlbp/classifier.hpp"
#include "fwlbp/features.hpp"
#include "fwlbp/fractal.hpp"

namespace fwlbp {

// Shortest decimal form that parses back to the identical double (at most
// 17 significant digits).
std::string FormatDouble(double v);

// {"n", "k", "mean", "components" (row-major n x k), "eigenvalues"}
std::string PcaToJson(const PcaModel& model);
PcaModel PcaFromJson(const std::string& text);

// {"classes", "labels", "dims", "feature_dim", "bases" (row-major each),
//  "policy"}; `class_names` is parallel to model.classes().
std::string NscToJson(const NscModel& model,
                      const std::vector<std::string>& class_names);
NscModel NscFromJson(const std::string& text,
                     std::vector<std::string>* class_names = nullptr);

struct DescriptorRow {
  std::string path;
  std::string label;
  std::vector<double> values;
};

// Header `path,label,f0,...`; fields containing commas or quotes are quoted.
std::string DescriptorsToCsv(const std::vector<DescriptorRow>& rows);
std::vector<DescriptorRow> DescriptorsFromCsv(const std::string& text);
std::string DescriptorsToJson(const std::vector<DescriptorRow>& rows);
std::vector<DescriptorRow> DescriptorsFromJson(const std::string& text);

// FD export: raw CSV grid, or an 8-bit PGM with values mapped affinely from
// [min, max] to [0, 255].
std::string FdImageToCsv(const FdImage& fd);
GrayImage FdImageToDisplay(const FdImage& fd);

}  // namespace fwlbp
