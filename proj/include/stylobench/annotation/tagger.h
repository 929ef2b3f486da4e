#ifndef STYLOBENCH_ANNOTATION_TAGGER_H_
#define STYLOBENCH_ANNOTATION_TAGGER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stylobench/annotation/inventory.h"
#include "stylobench/annotation/token.h"

namespace stylobench {

inline constexpr std::size_t kNumTags = kUposTags.size();
using TagScores = std::array<double, kNumTags>;

// Multiclass perceptron over string features with the 17 UPOS tags as
// classes. Averaging follows the post-update convention: the averaged weight
// equals the mean of the weights observed after each Update() call.
class AveragedPerceptron {
 public:
  // Highest-scoring tag index; ties go to the lower index.
  std::size_t Predict(std::span<const std::string> features) const;

  // One training instance. Always advances the instance counter, even when
  // truth == guess.
  void Update(std::size_t truth, std::size_t guess,
              std::span<const std::string> features);

  // Replaces the live weights by their averages. Idempotent only once.
  void Average();

  double Weight(const std::string& feature, std::size_t tag) const;
  std::uint64_t instances() const { return instances_; }

  const std::unordered_map<std::string, TagScores>& weights() const {
    return weights_;
  }
  void SetWeights(std::unordered_map<std::string, TagScores> weights) {
    weights_ = std::move(weights);
  }

 private:
  struct Param {
    TagScores total{};
    std::array<std::uint64_t, kNumTags> stamp{};
  };

  void Bump(const std::string& feature, std::size_t tag, double delta);

  std::unordered_map<std::string, TagScores> weights_;
  std::unordered_map<std::string, Param> params_;
  std::uint64_t instances_ = 0;
};

struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<std::string> tags;
};

struct TaggerTrainOptions {
  int iterations = 5;
  std::uint64_t seed = 1;
  // Words at least this frequent whose majority tag covers at least
  // `tagdict_min_ratio` of occurrences are tagged by lookup.
  int tagdict_min_count = 20;
  double tagdict_min_ratio = 0.97;
};

struct TaggerTrainReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::optional<double> dev_accuracy;
};

// Greedy left-to-right UPOS tagger.
class Tagger {
 public:
  static constexpr std::string_view kMagic = "STYLOTAG1";

  // Throws EmptyTrainingData when `train` has no tokens and MalformedInput
  // when a gold tag is outside the UPOS inventory.
  static Tagger Train(std::span<const TaggedSentence> train,
                      const TaggerTrainOptions& options,
                      std::span<const TaggedSentence> dev = {},
                      TaggerTrainReport* report = nullptr);

  std::vector<std::string> TagWords(std::span<const std::string> words) const;

  // Fills `upos` on every token, one sentence at a time.
  void Tag(std::vector<Token>& tokens) const;

  double Accuracy(std::span<const TaggedSentence> sentences) const;

  std::string Serialize() const;
  static Tagger Deserialize(std::string_view data);
  void Save(const std::filesystem::path& path) const;
  static Tagger Load(const std::filesystem::path& path);

  const AveragedPerceptron& model() const { return model_; }
  int iterations() const { return iterations_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<std::size_t> TagIndices(std::span<const std::string> words) const;

  AveragedPerceptron model_;
  std::map<std::string, std::size_t> tagdict_;
  int iterations_ = 0;
  std::uint64_t seed_ = 0;
};

// Closed-class override: punctuation-only tokens are PUNCT, or SYM for
// symbols such as "$" and "%". Returns nullopt for anything else.
std::optional<std::string_view> ClosedClassTag(std::string_view word);

// Feature strings for position `i`. `context` is the normalized sentence
// padded with two start and two end markers.
std::vector<std::string> TaggerFeatures(std::size_t i, std::string_view word,
                                        std::span<const std::string> context,
                                        std::string_view prev,
                                        std::string_view prev2);

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_TAGGER_H_
