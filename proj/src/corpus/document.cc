#include "stylobench/corpus/document.h"

#include <unordered_set>

#include "stylobench/errors.h"

namespace stylobench {

Source Source::Parse(const std::string& label) {
  if (label == "blogs") return {SourceKind::kBlogs, label};
  if (label == "imdb62") return {SourceKind::kImdb62, label};
  if (label == "amazon") return {SourceKind::kAmazon, label};
  return {SourceKind::kOther, label.empty() ? "other" : label};
}

Document DocumentFromJson(const Json& j) {
  if (!j.is_object()) throw MalformedInput("document record is not an object");
  auto field = [&](const char* name) -> std::string {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) {
      throw MalformedInput(std::string("document missing string field '") +
                           name + "'");
    }
    return it->get<std::string>();
  };
  Document doc;
  doc.doc_id = field("doc_id");
  doc.author_id = field("author_id");
  doc.text = field("text");
  auto src = j.find("source");
  doc.source = Source::Parse(src != j.end() && src->is_string()
                                 ? src->get<std::string>()
                                 : std::string("other"));
  auto cat = j.find("category");
  if (cat != j.end() && cat->is_string()) doc.category = cat->get<std::string>();
  return doc;
}

OrderedJson DocumentToJson(const Document& doc) {
  OrderedJson j;
  j["doc_id"] = doc.doc_id;
  j["author_id"] = doc.author_id;
  j["source"] = doc.source.ToString();
  j["text"] = doc.text;
  if (doc.category) j["category"] = *doc.category;
  return j;
}

std::vector<Document> ParseCorpus(const std::vector<Json>& records) {
  std::vector<Document> docs;
  docs.reserve(records.size());
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    Document doc = DocumentFromJson(r);
    if (doc.text.empty()) throw MalformedInput("empty text in " + doc.doc_id);
    if (!seen.insert(doc.doc_id).second) {
      throw MalformedInput("duplicate doc_id " + doc.doc_id);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> LoadCorpus(const std::filesystem::path& path) {
  return ParseCorpus(ReadJsonl(path));
}

void SaveCorpus(const std::filesystem::path& path,
                std::span<const Document> docs) {
  std::vector<OrderedJson> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(DocumentToJson(d));
  WriteJsonl(path, out);
}

}  // namespace stylobench
