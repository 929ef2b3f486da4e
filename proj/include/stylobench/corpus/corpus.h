#ifndef STYLOBENCH_CORPUS_CORPUS_H_
#define STYLOBENCH_CORPUS_CORPUS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylobench/corpus/document.h"

namespace stylobench {

struct FilterConfig {
  int min_words_per_doc = 50;
  int min_docs_per_author = 1;
  std::optional<std::set<std::string>> allowed_categories;
  // Count an author's documents for min_docs_per_author before dropping
  // short ones. The imdb62 and amazon presets turn this on.
  bool count_docs_before_length_filter = false;

  // Dataset presets: blogs (100 docs/author, five largest industry
  // categories), imdb62 (1000), amazon (2800). Other sources get 1.
  static FilterConfig ForSource(SourceKind source);
  // Keys: "source" (selects the preset), then any explicit overrides.
  static FilterConfig FromJson(const Json& j);
  Json ToJson() const;
  void Validate() const;
};

// Whitespace-delimited word count. Filtering deliberately avoids the
// annotation tokenizer.
std::size_t WhitespaceWordCount(std::string_view text);

// Keeps long-enough documents of prolific-enough authors in allowed
// categories. Input order is preserved.
std::vector<Document> FilterCorpus(std::span<const Document> docs,
                                   const FilterConfig& config);

enum class Split { kTrain, kDev, kTest };

const char* SplitName(Split split);
Split ParseSplit(const std::string& name);

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct SplitAssignment {
  std::map<std::string, Split> by_doc;
  std::uint64_t seed = 0;

  Split at(const std::string& doc_id) const;
  std::vector<Json> ToJsonl() const;
  static SplitAssignment FromJsonl(const std::vector<Json>& records);
};

// Per author with n documents: test and dev each get max(1, floor(ratio*n)),
// train gets the rest. Membership is drawn by a seeded shuffle of the
// author's doc ids, so the result does not depend on input order.
// Throws AuthorTooSmall when an author has fewer than three documents.
SplitAssignment SplitCorpus(std::span<const Document> docs,
                            std::uint64_t seed, SplitRatios ratios = {});

// Documents of `docs` whose assigned split is `split`, input order kept.
std::vector<Document> SelectSplit(std::span<const Document> docs,
                                  const SplitAssignment& assignment,
                                  Split split);

// For each author, a seeded random ordering of their documents truncated
// right after the document whose cumulative word count first reaches
// `words_per_author`. The crossing document is kept whole. Output keeps
// input order.
std::vector<Document> BudgetSubset(std::span<const Document> train_docs,
                                   std::int64_t words_per_author,
                                   std::uint64_t seed);

}  // namespace stylobench

#endif  // STYLOBENCH_CORPUS_CORPUS_H_
