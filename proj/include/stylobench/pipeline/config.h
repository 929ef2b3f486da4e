#ifndef STYLOBENCH_PIPELINE_CONFIG_H_
#define STYLOBENCH_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stylobench/attributes/schema.h"
#include "stylobench/corpus/corpus.h"
#include "stylobench/evaluation/evaluation.h"
#include "stylobench/generation/http_generator.h"
#include "stylobench/prefix/prefix.h"

namespace stylobench {

namespace fs = std::filesystem;

// External annotation inputs. Every entry is optional.
struct AnnotationPaths {
  std::optional<fs::path> conllu_dir;
  std::optional<fs::path> rst;
  std::optional<fs::path> errors;
  std::optional<fs::path> label_map;

  static AnnotationPaths FromJson(const Json& j, const fs::path& base);
  Json ToJson() const;
};

struct GeneratorConfig {
  std::string backend = "oracle";  // oracle | ngram | http
  int max_tokens = 1024;
  Decoding decoding;
  std::optional<HttpEndpoint> http;
  int ngram_order = 3;
  double ngram_add_k = 0.01;

  static GeneratorConfig FromJson(const Json& j);
  Json ToJson() const;
};

Decoding DecodingFromJson(const Json& j);

struct SensitivityConfig {
  std::vector<int> placements = {-4, -3, -2, -1, 1, 2, 3, 4};
  std::size_t min_train_docs = 1000;
  std::size_t per_author = 0;  // 0 = every selected dev document
  // Attributes to perturb; empty means the lexical and POS attributes.
  std::vector<std::string> attributes;
  std::optional<GeneratorConfig> generator;  // defaults to the main one

  static SensitivityConfig FromJson(const Json& j);
  Json ToJson() const;
};

// Everything a pipeline run needs. Relative paths resolve against the
// directory of the config file.
struct RunConfig {
  fs::path corpus;
  std::string corpus_id;
  FilterConfig filter;
  std::uint64_t seed = 0;
  AttributeSchema schema = AttributeSchema::Default();
  std::optional<fs::path> tagger_model;
  std::optional<fs::path> tagger_train;  // CoNLL-U training data
  int tagger_iterations = 5;
  AnnotationPaths annotations;
  // Sources for re-annotating generated text. Keyed by the generation's
  // doc_id, like the gold ones.
  AnnotationPaths generation_annotations;
  Conditioning conditioning = Conditioning::kAuthor;
  TokenGranularity granularity = TokenGranularity::kPair;
  Split eval_split = Split::kTest;
  SuccessAveraging averaging = SuccessAveraging::kPerExample;
  GeneratorConfig generator;
  double trim = 0.2;
  bool fluency = true;
  fs::path output_dir;
  SensitivityConfig sensitivity;
  std::vector<std::int64_t> budgets = {1000, 5000, 10000, 20000};
  int jobs = 1;

  // Throws ConfigInvalid on unknown keys, bad values or missing files.
  static RunConfig FromJson(const Json& j, const fs::path& base_dir);
  static RunConfig Load(const fs::path& path);

  // Checks that every referenced input exists.
  void Validate() const;

  // Effective configuration with defaults filled in and absolute paths.
  Json Resolved() const;
};

}  // namespace stylobench

#endif  // STYLOBENCH_PIPELINE_CONFIG_H_
