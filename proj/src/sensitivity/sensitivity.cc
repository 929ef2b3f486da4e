#include "stylobench/sensitivity/sensitivity.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>

#include "stylobench/errors.h"
#include "stylobench/random.h"

namespace stylobench {

std::vector<Document> SelectSensitivityDocs(
    std::span<const Document> dev,
    const std::map<std::string, std::size_t>& train_docs_per_author,
    std::size_t min_train_docs, std::size_t per_author, std::uint64_t seed) {
  std::map<std::string, std::vector<std::string>> by_author;
  for (const auto& d : dev) {
    auto it = train_docs_per_author.find(d.author_id);
    std::size_t n = it == train_docs_per_author.end() ? 0 : it->second;
    if (n >= min_train_docs) by_author[d.author_id].push_back(d.doc_id);
  }
  std::set<std::string> keep;
  for (auto& [author, ids] : by_author) {
    std::sort(ids.begin(), ids.end());
    Rng rng(seed, "sensitivity:" + author);
    rng.Shuffle(ids);
    std::size_t n = per_author == 0 ? ids.size() : std::min(per_author, ids.size());
    keep.insert(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n));
  }
  std::vector<Document> out;
  for (const auto& d : dev) {
    if (keep.contains(d.doc_id)) out.push_back(d);
  }
  return out;
}

std::vector<Perturbation> EnumeratePerturbations(
    std::span<const SensitivityExample> examples, const BinModel& model,
    std::span<const int> placements,
    const std::vector<std::string>& attributes) {
  const std::vector<std::string>& attrs =
      attributes.empty() ? model.order() : attributes;
  std::vector<Perturbation> out;
  for (const auto& ex : examples) {
    for (const auto& name : attrs) {
      const long k = static_cast<long>(model.at(name).k());
      auto it = std::find_if(ex.gold.begin(), ex.gold.end(),
                             [&](const auto& b) { return b.attribute == name; });
      if (it == ex.gold.end()) throw MissingAttribute(name + " in " + ex.doc_id);
      const long gold = static_cast<long>(it->bin);
      for (int d : placements) {
        if (d == 0) continue;
        long assigned = gold + d;
        if (assigned < 0 || assigned >= k) continue;
        out.push_back({ex.doc_id, ex.author_id, name, it->bin,
                       static_cast<std::size_t>(assigned), d});
      }
    }
  }
  return out;
}

BinnedVector PerturbedBins(const SensitivityExample& example,
                           const Perturbation& p, const BinModel& model) {
  BinnedVector v = example.gold;
  for (auto& b : v) {
    if (b.attribute == p.attribute) {
      b.bin = p.assigned_bin;
      b.label = model.at(p.attribute).labels.at(p.assigned_bin);
    }
  }
  return v;
}

bool DirectionalSuccess(int displacement, double generated, double reference) {
  if (generated == reference || displacement == 0) return false;
  return (generated > reference) == (displacement > 0);
}

std::vector<SensitivityCell> Aggregate(std::span<const SensitivityResult> results,
                                       const std::vector<std::string>& order,
                                       std::span<const int> placements) {
  std::map<std::pair<std::string, int>, std::pair<std::size_t, std::size_t>> tally;
  for (const auto& r : results) {
    auto& [n, hits] = tally[{r.attribute, r.displacement}];
    ++n;
    if (r.success) ++hits;
  }
  std::vector<int> ds(placements.begin(), placements.end());
  for (const auto& [key, v] : tally) ds.push_back(key.second);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  ds.erase(std::remove(ds.begin(), ds.end(), 0), ds.end());

  std::vector<SensitivityCell> cells;
  for (const auto& name : order) {
    for (int d : ds) {
      auto it = tally.find({name, d});
      if (it == tally.end()) {
        spdlog::warn("EmptyCell: no results for {} at displacement {}", name, d);
        continue;
      }
      auto [n, hits] = it->second;
      cells.push_back({name, d, n,
                       100.0 * static_cast<double>(hits) / static_cast<double>(n)});
    }
  }
  return cells;
}

std::string CellsToCsv(std::span<const SensitivityCell> cells) {
  std::string out = "attribute,displacement,n,success_pct\n";
  for (const auto& c : cells) {
    out += fmt::format("{},{},{},{:.4f}\n", c.attribute, c.displacement, c.n,
                       c.success_pct);
  }
  return out;
}

OrderedJson CellsToJson(std::span<const SensitivityCell> cells,
                        std::size_t perturbations) {
  OrderedJson j;
  j["perturbations"] = perturbations;
  OrderedJson arr = OrderedJson::array();
  for (const auto& c : cells) {
    OrderedJson r;
    r["attribute"] = c.attribute;
    r["displacement"] = c.displacement;
    r["n"] = c.n;
    r["success_pct"] = c.success_pct;
    arr.push_back(std::move(r));
  }
  j["cells"] = std::move(arr);
  return j;
}

SensitivityRun RunSensitivity(std::span<const SensitivityExample> examples,
                              const EvalInputs& eval,
                              const PrefixEncoding& encoding,
                              const Generator& generator,
                              std::span<const int> placements,
                              const std::vector<std::string>& attributes,
                              int max_tokens, const Decoding& decoding) {
  SensitivityRun run;
  run.perturbations =
      EnumeratePerturbations(examples, *eval.model, placements, attributes);
  std::map<std::string, const SensitivityExample*> by_id;
  for (const auto& ex : examples) by_id[ex.doc_id] = &ex;

  std::vector<GenerationRequest> requests;
  std::vector<BinnedVector> targets;
  requests.reserve(run.perturbations.size());
  for (const auto& p : run.perturbations) {
    const SensitivityExample& ex = *by_id.at(p.doc_id);
    targets.push_back(PerturbedBins(ex, p, *eval.model));
    requests.push_back({p.doc_id, encoding.Render(targets.back()),
                        ex.prompt_sentence, max_tokens, decoding});
  }
  std::vector<GenerationResult> generations =
      GenerateAll(generator, requests, eval.jobs);

  const auto& order = eval.model->order();
  for (std::size_t i = 0; i < run.perturbations.size(); ++i) {
    const Perturbation& p = run.perturbations[i];
    ExampleOutcome o =
        EvaluateGeneration(eval, generations[i], p.author_id, targets[i]);
    std::size_t a = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), p.attribute) - order.begin());
    const SensitivityExample& ex = *by_id.at(p.doc_id);
    bool success = false;
    auto ref = ex.reference.find(p.attribute);
    if (o.values[a] && ref != ex.reference.end()) {
      success = DirectionalSuccess(p.displacement, *o.values[a], ref->second);
    }
    run.results.push_back({p.attribute, p.displacement, success});
  }
  const std::vector<std::string>& attrs = attributes.empty() ? order : attributes;
  run.cells = Aggregate(run.results, attrs, placements);
  return run;
}

std::vector<int> ParsePlacements(const std::string& spec) {
  std::vector<int> out;
  try {
    if (auto dots = spec.find(".."); dots != std::string::npos) {
      int lo = std::stoi(spec.substr(0, dots));
      int hi = std::stoi(spec.substr(dots + 2));
      if (lo > hi) throw ConfigInvalid("empty placement range " + spec);
      for (int d = lo; d <= hi; ++d) {
        if (d != 0) out.push_back(d);
      }
      return out;
    }
    std::size_t pos = 0;
    while (pos <= spec.size() && !spec.empty()) {
      std::size_t comma = spec.find(',', pos);
      std::string item = spec.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos);
      int d = std::stoi(item);
      if (d != 0) out.push_back(d);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw ConfigInvalid("cannot parse placements '" + spec + "'");
  }
  return out;
}

}  // namespace stylobench
