#ifndef STYLOBENCH_ANNOTATION_ANNOTATED_DOCUMENT_H_
#define STYLOBENCH_ANNOTATION_ANNOTATED_DOCUMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/annotation/token.h"
#include "stylobench/corpus/document.h"

namespace stylobench {

using CountMap = std::map<std::string, std::int64_t>;

struct AnnotatedDocument {
  Document doc;
  std::vector<Token> tokens;
  int sentence_count = 0;
  std::vector<int> syllable_counts;  // parallel to tokens
  // Unset until a sidecar has been attached.
  std::optional<CountMap> discourse_counts;
  std::optional<CountMap> error_counts;
};

OrderedJson AnnotatedToJson(const AnnotatedDocument& doc);
AnnotatedDocument AnnotatedFromJson(const Json& j);

// Sidecar file: JSONL records {doc_id, counts: {name: int}}.
using SidecarCounts = std::map<std::string, CountMap>;

// Throws NegativeCount for any count below zero.
SidecarCounts ParseSidecar(const std::vector<Json>& records);

enum class SidecarKind { kDiscourse, kErrors };

// Returns `doc` with discourse or error counts set from `sidecar`. A doc id
// absent from the sidecar gets zero for every name in `zero_names` and a
// logged warning. Throws NegativeCount.
AnnotatedDocument AttachSidecarCounts(AnnotatedDocument doc,
                                      const SidecarCounts& sidecar,
                                      SidecarKind kind,
                                      std::span<const std::string> zero_names = {});

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_ANNOTATED_DOCUMENT_H_
