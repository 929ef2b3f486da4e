#include "stylobench/binning/bin_model.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "stylobench/errors.h"

namespace stylobench {
namespace {

std::string Render(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  if (s.starts_with("-") &&
      s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);  // "-0" -> "0"
  }
  return s;
}

std::vector<std::string> RenderLabels(const std::vector<double>& edges,
                                      const std::vector<double>& sorted,
                                      int decimals) {
  const std::size_t k = edges.size() + 1;
  // Observed range per bin.
  std::vector<double> lo(k, NAN), hi(k, NAN);
  for (double v : sorted) {
    std::size_t b = static_cast<std::size_t>(
        std::lower_bound(edges.begin(), edges.end(), v) - edges.begin());
    if (std::isnan(lo[b])) lo[b] = v;
    hi[b] = v;
  }
  std::vector<std::string> labels(k);
  for (std::size_t b = 0; b < k; ++b) {
    double l = lo[b], h = hi[b];
    if (std::isnan(l)) {  // empty bin: fall back to its cut points
      l = b == 0 ? edges.front() : edges[b - 1];
      h = b < edges.size() ? edges[b] : l;
    }
    labels[b] = b + 1 == k ? ">=" + Render(l, decimals)
                           : Render(l, decimals) + "-" + Render(h, decimals);
  }
  return labels;
}

bool Unique(const std::vector<std::string>& labels) {
  std::set<std::string> s(labels.begin(), labels.end());
  return s.size() == labels.size();
}

}  // namespace

double QuantileSorted(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::size_t AttributeBins::Assign(double value) const {
  return static_cast<std::size_t>(
      std::lower_bound(edges.begin(), edges.end(), value) - edges.begin());
}

AttributeColumns ColumnsOf(std::span<const AttributeVector> vectors) {
  AttributeColumns cols;
  if (vectors.empty()) return cols;
  const auto& attrs = vectors.front().schema->attributes();
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    std::vector<double> col;
    col.reserve(vectors.size());
    for (const auto& v : vectors) col.push_back(v.values.at(a));
    cols.emplace_back(attrs[a].name, std::move(col));
  }
  return cols;
}

BinModel BinModel::Fit(const AttributeColumns& columns,
                       const BinFitOptions& options) {
  BinModel model;
  model.corpus_id_ = options.corpus_id;
  for (const auto& [name, values] : columns) {
    if (values.empty()) throw NoValues(name);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    std::size_t levels = static_cast<std::size_t>(options.max_bins);
    if (sorted.size() < levels) {
      spdlog::warn("{}: only {} training values, using {} quantile levels",
                   name, sorted.size(), sorted.size());
      levels = sorted.size();
    }
    AttributeBins bins;
    bins.count = sorted.size();
    for (std::size_t i = 1; i < levels; ++i) {
      double q = QuantileSorted(sorted, static_cast<double>(i) /
                                            static_cast<double>(levels));
      if (bins.edges.empty() || q > bins.edges.back()) bins.edges.push_back(q);
    }
    // A cut at the maximum would leave the top bin without training values.
    while (!bins.edges.empty() && bins.edges.back() >= sorted.back()) {
      bins.edges.pop_back();
    }

    int decimals = 0;
    if (auto it = options.label_decimals.find(name);
        it != options.label_decimals.end()) {
      decimals = it->second;
    }
    for (int d = decimals; d <= 6; ++d) {
      bins.labels = RenderLabels(bins.edges, sorted, d);
      if (Unique(bins.labels)) break;
    }
    if (!Unique(bins.labels)) {
      for (std::size_t b = 0; b < bins.labels.size(); ++b) {
        bins.labels[b] += "#" + std::to_string(b);
      }
    }
    model.order_.push_back(name);
    model.bins_.emplace(name, std::move(bins));
  }
  return model;
}

const AttributeBins& BinModel::at(const std::string& attribute) const {
  auto it = bins_.find(attribute);
  if (it == bins_.end()) throw UnknownAttribute(attribute);
  return it->second;
}

std::size_t BinModel::Assign(const std::string& attribute, double value) const {
  return at(attribute).Assign(value);
}

BinnedValue BinModel::AssignValue(const std::string& attribute,
                                  double value) const {
  const AttributeBins& b = at(attribute);
  std::size_t idx = b.Assign(value);
  return {attribute, idx, b.labels[idx]};
}

BinnedVector BinModel::BinVector(const AttributeVector& v) const {
  BinnedVector out;
  const auto& attrs = v.schema->attributes();
  out.reserve(attrs.size());
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    out.push_back(AssignValue(attrs[i].name, v.values[i]));
  }
  return out;
}

std::size_t BinModel::BinOfLabel(const std::string& attribute,
                                 const std::string& label) const {
  const AttributeBins& b = at(attribute);
  auto it = std::find(b.labels.begin(), b.labels.end(), label);
  if (it == b.labels.end()) {
    throw PrefixParseError("no bin labeled '" + label + "' for " + attribute);
  }
  return static_cast<std::size_t>(it - b.labels.begin());
}

Json BinModel::ToJson() const {
  Json j;
  j["format_version"] = kFormatVersion;
  j["quantile_method"] = "linear";
  j["corpus_id"] = corpus_id_;
  j["order"] = order_;
  Json attrs = Json::object();
  for (const auto& [name, b] : bins_) {
    attrs[name] = {{"edges", b.edges},
                   {"labels", b.labels},
                   {"k", b.k()},
                   {"count", b.count}};
  }
  j["attributes"] = std::move(attrs);
  return j;
}

BinModel BinModel::FromJson(const Json& j) {
  if (j.value("format_version", 0) != kFormatVersion) {
    throw ModelFormatError("unsupported bin model format version");
  }
  BinModel m;
  m.corpus_id_ = j.value("corpus_id", std::string());
  m.order_ = j.at("order").get<std::vector<std::string>>();
  for (const auto& name : m.order_) {
    const Json& a = j.at("attributes").at(name);
    AttributeBins b;
    b.edges = a.at("edges").get<std::vector<double>>();
    b.labels = a.at("labels").get<std::vector<std::string>>();
    b.count = a.value("count", std::size_t{0});
    if (b.labels.size() != b.k() || a.at("k").get<std::size_t>() != b.k() ||
        !std::is_sorted(b.edges.begin(), b.edges.end()) ||
        std::adjacent_find(b.edges.begin(), b.edges.end()) != b.edges.end()) {
      throw ModelFormatError("inconsistent bins for " + name);
    }
    m.bins_.emplace(name, std::move(b));
  }
  return m;
}

void BinModel::Save(const std::filesystem::path& path) const {
  WriteFile(path, ToJson().dump(2) + "\n");
}

BinModel BinModel::Load(const std::filesystem::path& path) {
  try {
    return FromJson(Json::parse(ReadFile(path)));
  } catch (const Json::exception& e) {
    throw ModelFormatError(path.string() + ": " + e.what());
  }
}

bool BinModel::operator==(const BinModel& o) const {
  if (order_ != o.order_ || corpus_id_ != o.corpus_id_) return false;
  for (const auto& [name, b] : bins_) {
    const AttributeBins& ob = o.at(name);
    if (b.edges != ob.edges || b.labels != ob.labels || b.count != ob.count) {
      return false;
    }
  }
  return true;
}

OrderedJson BinnedToJson(const BinnedVector& v, const std::string& id_key,
                         const std::string& id) {
  OrderedJson j;
  j[id_key] = id;
  OrderedJson bins = OrderedJson::object();
  for (const auto& b : v) bins[b.attribute] = {{"bin", b.bin}, {"label", b.label}};
  j["bins"] = std::move(bins);
  return j;
}

BinnedVector BinnedFromJson(const OrderedJson& j) {
  BinnedVector out;
  for (const auto& [name, b] : j.at("bins").items()) {
    out.push_back({name, b.at("bin").get<std::size_t>(),
                   b.at("label").get<std::string>()});
  }
  return out;
}

}  // namespace stylobench
