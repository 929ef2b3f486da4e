#ifndef STYLOBENCH_PREFIX_PREFIX_H_
#define STYLOBENCH_PREFIX_PREFIX_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylobench/binning/bin_model.h"
#include "stylobench/corpus/document.h"

namespace stylobench {

enum class TokenGranularity {
  kPair,      // one token per (attribute, bin): <VERB:8-11>
  kTwoToken,  // attribute and value tokens: <VERB><=8-11>
};

// Serialization of binned vectors into conditioning prefixes. Attributes are
// written in the order of the bin model they were built from, followed by
// the separator token.
class PrefixEncoding {
 public:
  static constexpr std::string_view kSeparator = "<|style|>";

  explicit PrefixEncoding(const BinModel& model,
                          TokenGranularity granularity = TokenGranularity::kPair);

  const std::vector<std::string>& order() const { return model_->order(); }
  TokenGranularity granularity() const { return granularity_; }

  // Throws MissingAttribute when `binned` lacks an attribute of the order.
  std::string Render(const BinnedVector& binned) const;

  // Inverse of Render. Throws PrefixParseError on anything Render could not
  // have produced with this encoding.
  BinnedVector Parse(std::string_view prefix) const;

  // Every token Render can emit, attributes in canonical order and bins in
  // index order, separator last. For kPair this is sum(k) + 1 tokens.
  std::vector<std::string> Vocabulary() const;

  std::string PairToken(const std::string& attribute,
                        const std::string& label) const;

 private:
  const BinModel* model_;
  TokenGranularity granularity_;
};

// Removes a conditioning prefix (everything through the separator and one
// following space, if any). Text without a separator is returned unchanged.
std::string StripPrefix(std::string_view text);

// First sentence of a document, exactly as it appears in the text.
// Throws EmptyText when the text has no tokens.
std::string FirstSentence(std::string_view text);

enum class Conditioning { kAuthor, kDocument };

// Binned vectors keyed by author id (author conditioning) or doc id
// (document conditioning).
using BinnedIndex = std::map<std::string, BinnedVector>;

const BinnedVector& ConditioningVector(const Document& doc,
                                       const BinnedIndex& binned,
                                       Conditioning conditioning);

// {doc_id, author_id, text: prefix + text}, one per document, input order.
// Throws MissingAuthorVector.
std::vector<OrderedJson> BuildTrainingFile(std::span<const Document> docs,
                                           const BinnedIndex& binned,
                                           const PrefixEncoding& enc,
                                           Conditioning conditioning);

struct InferenceExample {
  std::string doc_id;
  std::string author_id;
  std::string prefix;
  std::string prompt_sentence;
};

OrderedJson InferenceToJson(const InferenceExample& e);
InferenceExample InferenceFromJson(const Json& j);

std::vector<InferenceExample> BuildInferenceExamples(
    std::span<const Document> docs, const BinnedIndex& binned,
    const PrefixEncoding& enc, Conditioning conditioning);

// Instruction prompt for chat-style API models.
std::string FormatApiPrompt(const BinnedVector& binned,
                            std::string_view input_sentence);

// The sentence inside the <input> block of a formatted prompt. Throws
// PrefixParseError when the block is missing.
std::string ExtractInput(std::string_view prompt);

}  // namespace stylobench

#endif  // STYLOBENCH_PREFIX_PREFIX_H_
