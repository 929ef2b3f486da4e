#ifndef STYLOBENCH_EVALUATION_EVALUATION_H_
#define STYLOBENCH_EVALUATION_EVALUATION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/annotation/annotator.h"
#include "stylobench/attributes/attributes.h"
#include "stylobench/binning/bin_model.h"
#include "stylobench/evaluation/stats.h"
#include "stylobench/generation/generator.h"

namespace stylobench {

// 100 / k.
double RandomBaseline(std::size_t k);
// (success - 100/k) / (100/k) * 100; lies in [-100, (k-1)*100].
double RelativeImprovement(double success, std::size_t k);

// One evaluated generation: target and predicted bin per attribute, in bin
// model order. A missing prediction is a failure.
struct ExampleOutcome {
  std::string doc_id;
  std::string author_id;
  std::vector<std::size_t> target;
  std::vector<std::optional<std::size_t>> predicted;
  // Attribute values of the generated text, where extraction succeeded.
  std::vector<std::optional<double>> values;
  std::vector<std::string> failures;  // reasons, for the report
  std::int64_t tokens = 0;            // of the generated text
  std::optional<std::int64_t> errors;  // grammatical errors in it
};

struct AttributeResult {
  std::string name;
  std::size_t k = 1;
  double success_rate = 0;
  double random_baseline = 100;
  double relative_improvement = 0;
};

enum class SuccessAveraging {
  kPerExample,  // pooled over all examples
  kPerAuthor,   // per author first, then the mean over authors
};

// Throws EmptyResults when there are no outcomes.
std::vector<AttributeResult> AttributeSuccess(
    const BinModel& model, std::span<const ExampleOutcome> outcomes,
    SuccessAveraging averaging = SuccessAveraging::kPerExample);

struct Summary {
  double mean_success_rate = 0;
  double median_relative_improvement = 0;
};

// Throws EmptyResults.
Summary Summarize(std::span<const AttributeResult> results);

// Errors per 100 tokens; 0 for an empty text.
double ErrorRate(std::int64_t errors, std::int64_t tokens);

struct ErrorSamples {
  std::vector<double> gold;
  std::vector<double> generated;
};

struct AuthorFluency {
  std::string author_id;
  std::optional<TTestResult> test;  // unset when the samples were too small
  bool fluent = false;
};

struct FluencyResult {
  double score = 0;
  std::vector<AuthorFluency> authors;
  std::size_t skipped = 0;  // authors with too few documents for the test
};

// Percentage of authors whose gold and generated error-rate samples are not
// significantly different (p > 0.05). Authors whose samples are too small to
// test are skipped with a warning; throws SampleTooSmall if that leaves
// none and MissingErrorData for an author with an empty side.
FluencyResult Fluency(const std::map<std::string, ErrorSamples>& samples,
                      double trim = 0.2, double alpha = 0.05);

struct EvalReport {
  std::vector<AttributeResult> attributes;
  Summary summary;
  std::optional<FluencyResult> fluency;
  std::size_t examples = 0;
  std::size_t authors = 0;
  std::size_t annotation_failures = 0;
  SuccessAveraging averaging = SuccessAveraging::kPerExample;

  // Deterministic: no timing or host information.
  OrderedJson ToJson() const;
  // Aligned text table; with `per_attribute` every attribute gets a row.
  std::string ToTable(bool per_attribute) const;
};

// Targets keyed by doc_id.
using TargetIndex = std::map<std::string, BinnedVector>;

struct EvalInputs {
  const BinModel* model = nullptr;
  SchemaPtr schema;
  // Annotates generated texts; its sources are the generation-side ones.
  const Annotator* annotator = nullptr;
  // Gold documents of the evaluated examples (for authors and fluency).
  std::span<const AnnotatedDocument> gold;
  double trim = 0.2;
  SuccessAveraging averaging = SuccessAveraging::kPerExample;
  bool fluency = true;
  int jobs = 1;
};

// Strips the conditioning prefix, annotates and bins one generation.
// Annotation failures are recorded in the outcome, never thrown.
ExampleOutcome EvaluateGeneration(const EvalInputs& in,
                                  const GenerationResult& generation,
                                  const std::string& author_id,
                                  const BinnedVector& target);

// Every generation must have a target and a gold document.
EvalReport Evaluate(const EvalInputs& in, const TargetIndex& targets,
                    std::span<const GenerationResult> generations);

// Evaluate() on already computed outcomes.
EvalReport BuildReport(const EvalInputs& in,
                       std::span<const ExampleOutcome> outcomes);

}  // namespace stylobench

#endif  // STYLOBENCH_EVALUATION_EVALUATION_H_
