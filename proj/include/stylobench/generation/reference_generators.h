#ifndef STYLOBENCH_GENERATION_REFERENCE_GENERATORS_H_
#define STYLOBENCH_GENERATION_REFERENCE_GENERATORS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stylobench/corpus/document.h"
#include "stylobench/generation/generator.h"
#include "stylobench/random.h"

namespace stylobench {

// Returns the corpus document whose first sentence is the prompt. When
// several documents share a first sentence, the one with the request's
// doc_id wins, otherwise the first in corpus order.
class OracleGenerator : public Generator {
 public:
  explicit OracleGenerator(std::span<const Document> docs);

  std::string id() const override { return "oracle"; }
  // Throws UnknownPrompt.
  GenerationResult Generate(const GenerationRequest& request) const override;

 private:
  std::map<std::string, std::vector<Document>> by_prompt_;
};

// Word-level n-gram model with add-k smoothing. Context longer than any
// seen history backs off to the longest seen suffix.
class NgramModel {
 public:
  static constexpr std::string_view kBegin = "<s>";
  static constexpr std::string_view kEnd = "</s>";

  explicit NgramModel(int order = 3, double add_k = 0.01);

  void Train(std::span<const std::string> texts);
  int order() const { return order_; }
  std::size_t vocabulary_size() const { return vocab_.size(); }
  std::size_t token_count() const { return tokens_; }

  // Next-token choice given the full context (begin padding included).
  // Throws EmptyModel.
  std::string Greedy(std::span<const std::string> context) const;
  std::string Sample(std::span<const std::string> context, double temperature,
                     Rng& rng) const;

  // Smoothed probability at the order chosen by backoff.
  double Probability(std::span<const std::string> context,
                     const std::string& word) const;

 private:
  using Counts = std::map<std::string, std::int64_t>;
  struct History {
    Counts next;
    std::int64_t total = 0;
  };
  const History& Lookup(std::span<const std::string> context) const;

  int order_;
  double add_k_;
  std::size_t tokens_ = 0;
  std::vector<std::string> vocab_;  // sorted
  // Key: the (n-1) history tokens joined by '\x1f'; one map per history length.
  std::vector<std::unordered_map<std::string, History>> histories_;
};

// Tokens the n-gram model sees: each <...> token of a leading conditioning
// prefix, then the tokenizer's surface tokens.
std::vector<std::string> NgramTokens(std::string_view text);

// Joins tokens with spaces, except before closing punctuation and clitics
// and after opening brackets.
std::string Detokenize(std::span<const std::string> tokens);

class NgramGenerator : public Generator {
 public:
  explicit NgramGenerator(NgramModel model) : model_(std::move(model)) {}

  std::string id() const override {
    return "ngram-" + std::to_string(model_.order());
  }
  GenerationResult Generate(const GenerationRequest& request) const override;

 private:
  NgramModel model_;
};

}  // namespace stylobench

#endif  // STYLOBENCH_GENERATION_REFERENCE_GENERATORS_H_
