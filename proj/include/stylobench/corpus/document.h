#ifndef STYLOBENCH_CORPUS_DOCUMENT_H_
#define STYLOBENCH_CORPUS_DOCUMENT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/io.h"

namespace stylobench {

enum class SourceKind { kBlogs, kImdb62, kAmazon, kOther };

// Origin dataset of a document. `name` holds the free-form label for kOther.
struct Source {
  SourceKind kind = SourceKind::kOther;
  std::string name = "other";

  static Source Parse(const std::string& label);
  const std::string& ToString() const { return name; }
  bool operator==(const Source&) const = default;
};

struct Document {
  std::string doc_id;
  std::string author_id;
  Source source;
  std::string text;
  std::optional<std::string> category;
};

Document DocumentFromJson(const Json& j);
OrderedJson DocumentToJson(const Document& doc);

// Parses a JSONL corpus and enforces unique doc ids and non-empty text.
std::vector<Document> ParseCorpus(const std::vector<Json>& records);
std::vector<Document> LoadCorpus(const std::filesystem::path& path);
void SaveCorpus(const std::filesystem::path& path,
                std::span<const Document> docs);

}  // namespace stylobench

#endif  // STYLOBENCH_CORPUS_DOCUMENT_H_
