#ifndef STYLOBENCH_BINNING_BIN_MODEL_H_
#define STYLOBENCH_BINNING_BIN_MODEL_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stylobench/attributes/attributes.h"

namespace stylobench {

// Linear-interpolation sample quantile (Hyndman-Fan type 7) of sorted data.
double QuantileSorted(std::span<const double> sorted, double p);

struct AttributeBins {
  std::vector<double> edges;  // strictly increasing internal cut points
  std::vector<std::string> labels;  // one per bin, unique
  std::size_t count = 0;  // training values seen by the fit

  std::size_t k() const { return edges.size() + 1; }
  // Bin i covers (edges[i-1], edges[i]]; the outer bins are open-ended.
  std::size_t Assign(double value) const;
};

struct BinnedValue {
  std::string attribute;
  std::size_t bin = 0;
  std::string label;

  bool operator==(const BinnedValue&) const = default;
};

// Schema order.
using BinnedVector = std::vector<BinnedValue>;

struct BinFitOptions {
  int max_bins = 10;
  std::string corpus_id;
  // Label precision per attribute; everything else renders as integers.
  std::map<std::string, int> label_decimals = {{"readability", 1}};
};

using AttributeColumns = std::vector<std::pair<std::string, std::vector<double>>>;

// Training values per attribute, in schema order.
AttributeColumns ColumnsOf(std::span<const AttributeVector> vectors);

class BinModel {
 public:
  static constexpr int kFormatVersion = 1;

  // Cut points at the 10th..90th percentiles of each attribute's values;
  // coinciding cut points merge and a cut at the maximum is dropped, so k
  // may be below 10 (a constant attribute has k = 1). With fewer than
  // `max_bins` values the levels are i/n instead (and a warning is logged).
  // Throws NoValues for an attribute with no values.
  static BinModel Fit(const AttributeColumns& columns,
                      const BinFitOptions& options = {});

  const AttributeBins& at(const std::string& attribute) const;
  bool contains(const std::string& attribute) const {
    return bins_.contains(attribute);
  }
  const std::vector<std::string>& order() const { return order_; }
  const std::string& corpus_id() const { return corpus_id_; }

  // Throws UnknownAttribute.
  std::size_t Assign(const std::string& attribute, double value) const;
  BinnedValue AssignValue(const std::string& attribute, double value) const;
  BinnedVector BinVector(const AttributeVector& v) const;

  // Bin index of a label, or throws UnknownAttribute / PrefixParseError.
  std::size_t BinOfLabel(const std::string& attribute,
                         const std::string& label) const;

  Json ToJson() const;
  static BinModel FromJson(const Json& j);
  void Save(const std::filesystem::path& path) const;
  static BinModel Load(const std::filesystem::path& path);

  bool operator==(const BinModel& o) const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, AttributeBins> bins_;
  std::string corpus_id_;
};

OrderedJson BinnedToJson(const BinnedVector& v, const std::string& id_key,
                         const std::string& id);
// Takes ordered JSON so the attribute order survives.
BinnedVector BinnedFromJson(const OrderedJson& j);

}  // namespace stylobench

#endif  // STYLOBENCH_BINNING_BIN_MODEL_H_
