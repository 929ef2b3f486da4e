#ifndef STYLOBENCH_PIPELINE_PIPELINE_H_
#define STYLOBENCH_PIPELINE_PIPELINE_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/annotation/annotator.h"
#include "stylobench/generation/reference_generators.h"
#include "stylobench/pipeline/config.h"
#include "stylobench/sensitivity/sensitivity.h"

namespace stylobench {

// Owns the optional annotation resources an Annotator points to.
class AnnotatorBundle {
 public:
  AnnotatorBundle(const AnnotationPaths& paths,
                  const std::optional<fs::path>& tagger_model,
                  const AttributeSchema& schema);
  AnnotatorBundle(const AnnotatorBundle&) = delete;
  AnnotatorBundle& operator=(const AnnotatorBundle&) = delete;

  const Annotator& annotator() const { return *annotator_; }
  const Tagger* tagger() const { return tagger_ ? &*tagger_ : nullptr; }

 private:
  std::optional<Tagger> tagger_;
  std::optional<DeprelMap> label_map_;
  std::optional<SidecarCounts> rst_;
  std::optional<SidecarCounts> errors_;
  std::unique_ptr<Annotator> annotator_;
};

// Document-level vector record: {doc_id, values, author_id}.
struct DocVector {
  std::string doc_id;
  std::string author_id;
  AttributeVector vector;
};

std::vector<DocVector> ReadDocVectors(const fs::path& path, const SchemaPtr& schema);
void WriteDocVectors(const fs::path& path, std::span<const DocVector> vectors);

std::vector<AnnotatedDocument> ReadAnnotated(const fs::path& path);

// Author-level means of `vectors`, keyed by author id.
std::map<std::string, AttributeVector> AuthorVectors(
    std::span<const DocVector> vectors);

BinnedIndex BinIndex(const BinModel& model,
                     const std::map<std::string, AttributeVector>& vectors);

TargetIndex ReadTargets(const fs::path& path);

// Builds the configured generator. `corpus` backs the oracle; `training_texts`
// train the n-gram model.
std::unique_ptr<Generator> MakeGenerator(const GeneratorConfig& config,
                                         std::span<const Document> corpus,
                                         std::span<const std::string> training_texts);

enum class StageStatus { kRan, kCached };

struct StageRecord {
  std::string name;
  StageStatus status = StageStatus::kRan;
};

struct PipelineOptions {
  bool force = false;
};

// Stage names in execution order.
const std::vector<std::string>& AllStages();
// The stages `pipeline` runs by default (everything but sensitivity and
// scaling).
const std::vector<std::string>& CoreStages();

struct ScalingRow {
  std::int64_t budget = 0;
  std::size_t train_docs = 0;
  std::int64_t train_words = 0;
  EvalReport report;
  BinModel bins;
};

class Pipeline {
 public:
  Pipeline(RunConfig config, PipelineOptions options = {});

  // Runs the requested stages and everything they depend on, in order.
  // Validates the config first (ConfigInvalid) and wraps stage errors in
  // StageFailed.
  std::vector<StageRecord> Run(const std::vector<std::string>& stages = {});

  const RunConfig& config() const { return config_; }
  fs::path Out(const std::string& name) const { return config_.output_dir / name; }

 private:
  using Body = std::function<void()>;
  StageStatus RunStage(const std::string& name,
                       const std::vector<fs::path>& inputs, const Json& params,
                       const std::vector<fs::path>& outputs, const Body& body);
  std::optional<fs::path> TaggerPath() const;
  std::vector<Document> Filtered() const;
  std::vector<Document> SplitDocs(Split split) const;

  StageStatus Filter();
  StageStatus SplitStage();
  StageStatus TrainTagger();
  StageStatus Annotate();
  StageStatus ExtractStage();
  StageStatus AuthorVectorsStage();
  StageStatus Bins();
  StageStatus Prefix();
  StageStatus Generate();
  StageStatus EvaluateStage();
  StageStatus SensitivityStage();
  StageStatus ScalingStage();
  std::vector<ScalingRow> RunScaling() const;
  void WriteManifest(const std::vector<StageRecord>& records) const;

  RunConfig config_;
  SchemaPtr schema_;
  PipelineOptions options_;
};

}  // namespace stylobench

#endif  // STYLOBENCH_PIPELINE_PIPELINE_H_
