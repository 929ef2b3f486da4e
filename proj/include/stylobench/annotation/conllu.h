#ifndef STYLOBENCH_ANNOTATION_CONLLU_H_
#define STYLOBENCH_ANNOTATION_CONLLU_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylobench/annotation/tagger.h"

namespace stylobench {

struct ConlluToken {
  int id = 0;
  std::string form;
  std::optional<std::string> upos;
  std::optional<int> head;
  std::optional<std::string> deprel;

  bool operator==(const ConlluToken&) const = default;
};

struct ConlluSentence {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<ConlluToken> tokens;

  bool operator==(const ConlluSentence&) const = default;
};

// Maps parser-specific dependency labels onto the 32 tracked ClearNLP
// labels. Keys are lowercase. Every target must be a tracked label.
class DeprelMap {
 public:
  DeprelMap() = default;
  explicit DeprelMap(std::map<std::string, std::string> mapping);

  // Two tab-separated columns per line: source label, target label. Lines
  // starting with '#' are comments.
  static DeprelMap Load(const std::filesystem::path& path);

  std::optional<std::string> Lookup(const std::string& label) const;
  bool empty() const { return mapping_.empty(); }

 private:
  std::map<std::string, std::string> mapping_;
};

// Normalizes a DEPREL value: lowercased; kept if tracked; else mapped via
// `map` (full label first, then the part before any ':' subtype). Throws
// UnknownDeprel when nothing matches.
std::string CanonicalDeprel(std::string_view label, const DeprelMap* map);

// Parses CoNLL-U. Multiword-token ("1-2") and empty-node ("1.1") lines are
// skipped; "_" in UPOS, HEAD or DEPREL means absent. Throws MalformedLine
// with the 1-based line number for lines that do not have 10 tab-separated
// columns or have a non-numeric ID or HEAD.
std::vector<ConlluSentence> ParseConllu(std::string_view text,
                                        const DeprelMap* label_map = nullptr);

// Writes ID, FORM, UPOS, HEAD and DEPREL; every other column is "_".
std::string WriteConllu(std::span<const ConlluSentence> sentences);

// Sentences usable as tagger training data. Throws MalformedInput when a
// token lacks UPOS.
std::vector<TaggedSentence> ToTaggedSentences(
    std::span<const ConlluSentence> sentences);

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_CONLLU_H_
