#ifndef STYLOBENCH_SENSITIVITY_SENSITIVITY_H_
#define STYLOBENCH_SENSITIVITY_SENSITIVITY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/binning/bin_model.h"
#include "stylobench/corpus/document.h"
#include "stylobench/evaluation/evaluation.h"
#include "stylobench/generation/generator.h"
#include "stylobench/prefix/prefix.h"

namespace stylobench {

// A dev example with its own (document-level) bins and attribute values.
struct SensitivityExample {
  std::string doc_id;
  std::string author_id;
  std::string prompt_sentence;
  BinnedVector gold;  // bin model order
  std::map<std::string, double> reference;  // gold attribute values
};

struct Perturbation {
  std::string doc_id;
  std::string author_id;
  std::string attribute;
  std::size_t gold_bin = 0;
  std::size_t assigned_bin = 0;
  int displacement = 0;  // assigned - gold
};

// Dev documents of authors with at least `min_train_docs` training
// documents, at most `per_author` of them per author (0 = all), sampled
// with the seed. Output keeps input order.
std::vector<Document> SelectSensitivityDocs(
    std::span<const Document> dev,
    const std::map<std::string, std::size_t>& train_docs_per_author,
    std::size_t min_train_docs, std::size_t per_author, std::uint64_t seed);

// One perturbation per example x attribute x placement whose assigned bin
// lies in [0, k). Zero placements are skipped. `attributes` defaults to the
// whole bin model order.
std::vector<Perturbation> EnumeratePerturbations(
    std::span<const SensitivityExample> examples, const BinModel& model,
    std::span<const int> placements,
    const std::vector<std::string>& attributes = {});

// The example's gold bins with the perturbed attribute moved.
BinnedVector PerturbedBins(const SensitivityExample& example,
                           const Perturbation& p, const BinModel& model);

// sign(generated - reference) == sign(displacement); ties fail.
bool DirectionalSuccess(int displacement, double generated, double reference);

struct SensitivityResult {
  std::string attribute;
  int displacement = 0;
  bool success = false;
};

struct SensitivityCell {
  std::string attribute;
  int displacement = 0;
  std::size_t n = 0;
  double success_pct = 0;
};

// Mean success per (attribute, displacement), attributes in `order` and
// displacements ascending. Expected cells (order x placements) without
// results are left out with a warning.
std::vector<SensitivityCell> Aggregate(std::span<const SensitivityResult> results,
                                       const std::vector<std::string>& order,
                                       std::span<const int> placements);

std::string CellsToCsv(std::span<const SensitivityCell> cells);
OrderedJson CellsToJson(std::span<const SensitivityCell> cells,
                        std::size_t perturbations);

struct SensitivityRun {
  std::vector<Perturbation> perturbations;
  std::vector<SensitivityResult> results;
  std::vector<SensitivityCell> cells;
};

// Generates for every perturbation (prefix from the perturbed bins, prompt
// from the example), re-extracts the perturbed attribute from the output
// and scores its direction against the gold value. A generation whose
// attribute cannot be extracted counts as a failure.
SensitivityRun RunSensitivity(std::span<const SensitivityExample> examples,
                              const EvalInputs& eval,
                              const PrefixEncoding& encoding,
                              const Generator& generator,
                              std::span<const int> placements,
                              const std::vector<std::string>& attributes,
                              int max_tokens, const Decoding& decoding);

// "-4..4" (zero dropped) or a comma list "-2,-1,1,2".
std::vector<int> ParsePlacements(const std::string& spec);

}  // namespace stylobench

#endif  // STYLOBENCH_SENSITIVITY_SENSITIVITY_H_
