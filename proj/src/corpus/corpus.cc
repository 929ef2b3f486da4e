#include "stylobench/corpus/corpus.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "stylobench/errors.h"
#include "stylobench/random.h"

namespace stylobench {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Author ids in order of first appearance, each with its documents' indices.
std::vector<std::pair<std::string, std::vector<std::size_t>>> GroupByAuthor(
    std::span<const Document> docs) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto [it, inserted] = slot.emplace(docs[i].author_id, groups.size());
    if (inserted) groups.push_back({docs[i].author_id, {}});
    groups[it->second].second.push_back(i);
  }
  return groups;
}

// The author's document indices sorted by doc id, then shuffled with a
// per-author seed.
std::vector<std::size_t> AuthorPermutation(std::span<const Document> docs,
                                           std::vector<std::size_t> indices,
                                           const std::string& author,
                                           std::uint64_t seed) {
  std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
    return docs[a].doc_id < docs[b].doc_id;
  });
  Rng rng(seed, author);
  rng.Shuffle(indices);
  return indices;
}

}  // namespace

FilterConfig FilterConfig::ForSource(SourceKind source) {
  FilterConfig c;
  switch (source) {
    case SourceKind::kBlogs:
      c.min_docs_per_author = 100;
      // The corpus export spells the last category "Communications-Media".
      c.allowed_categories = std::set<std::string>{
          "Technology", "Education",           "Arts",
          "Internet",   "Communication-media", "Communications-Media"};
      break;
    case SourceKind::kImdb62:
      c.min_docs_per_author = 1000;
      c.count_docs_before_length_filter = true;
      break;
    case SourceKind::kAmazon:
      c.min_docs_per_author = 2800;
      c.count_docs_before_length_filter = true;
      break;
    case SourceKind::kOther:
      c.min_docs_per_author = 1;
      break;
  }
  return c;
}

FilterConfig FilterConfig::FromJson(const Json& j) {
  FilterConfig c;
  if (auto it = j.find("source"); it != j.end()) {
    c = ForSource(Source::Parse(it->get<std::string>()).kind);
  }
  if (auto it = j.find("min_words_per_doc"); it != j.end()) {
    c.min_words_per_doc = it->get<int>();
  }
  if (auto it = j.find("min_docs_per_author"); it != j.end()) {
    c.min_docs_per_author = it->get<int>();
  }
  if (auto it = j.find("count_docs_before_length_filter"); it != j.end()) {
    c.count_docs_before_length_filter = it->get<bool>();
  }
  if (auto it = j.find("allowed_categories"); it != j.end()) {
    if (it->is_null()) {
      c.allowed_categories.reset();
    } else {
      c.allowed_categories = it->get<std::set<std::string>>();
    }
  }
  c.Validate();
  return c;
}

Json FilterConfig::ToJson() const {
  Json j;
  j["min_words_per_doc"] = min_words_per_doc;
  j["min_docs_per_author"] = min_docs_per_author;
  j["allowed_categories"] =
      allowed_categories ? Json(*allowed_categories) : Json(nullptr);
  j["count_docs_before_length_filter"] = count_docs_before_length_filter;
  return j;
}

void FilterConfig::Validate() const {
  if (min_words_per_doc < 1 || min_docs_per_author < 1) {
    throw MalformedInput("filter thresholds must be >= 1");
  }
}

std::size_t WhitespaceWordCount(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    if (IsAsciiSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

std::vector<Document> FilterCorpus(std::span<const Document> docs,
                                   const FilterConfig& config) {
  config.Validate();
  std::vector<bool> keep(docs.size(), false);
  std::unordered_map<std::string, int> per_author;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document& d = docs[i];
    if (config.allowed_categories &&
        (!d.category || !config.allowed_categories->contains(*d.category))) {
      continue;
    }
    if (config.count_docs_before_length_filter) ++per_author[d.author_id];
    if (WhitespaceWordCount(d.text) <
        static_cast<std::size_t>(config.min_words_per_doc)) {
      continue;
    }
    keep[i] = true;
    if (!config.count_docs_before_length_filter) ++per_author[d.author_id];
  }
  std::vector<Document> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (keep[i] && per_author[docs[i].author_id] >= config.min_docs_per_author) {
      out.push_back(docs[i]);
    }
  }
  return out;
}

const char* SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split ParseSplit(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw MalformedInput("unknown split '" + name + "'");
}

Split SplitAssignment::at(const std::string& doc_id) const {
  auto it = by_doc.find(doc_id);
  if (it == by_doc.end()) throw MalformedInput("no split for " + doc_id);
  return it->second;
}

std::vector<Json> SplitAssignment::ToJsonl() const {
  std::vector<Json> out;
  out.reserve(by_doc.size());
  for (const auto& [id, split] : by_doc) {
    out.push_back(Json{{"doc_id", id}, {"split", SplitName(split)}});
  }
  return out;
}

SplitAssignment SplitAssignment::FromJsonl(const std::vector<Json>& records) {
  SplitAssignment a;
  for (const auto& r : records) {
    a.by_doc[r.at("doc_id").get<std::string>()] =
        ParseSplit(r.at("split").get<std::string>());
  }
  return a;
}

SplitAssignment SplitCorpus(std::span<const Document> docs, std::uint64_t seed,
                            SplitRatios ratios) {
  SplitAssignment out;
  out.seed = seed;
  for (auto& [author, indices] : GroupByAuthor(docs)) {
    const std::size_t n = indices.size();
    if (n < 3) {
      throw AuthorTooSmall(author + " has " + std::to_string(n) +
                           " documents, need at least 3");
    }
    auto share = [n](double ratio) {
      auto k = static_cast<std::size_t>(std::floor(ratio * n + 1e-9));
      return std::max<std::size_t>(k, 1);
    };
    const std::size_t n_test = share(ratios.test);
    const std::size_t n_dev = share(ratios.dev);
    auto order = AuthorPermutation(docs, indices, author, seed);
    for (std::size_t r = 0; r < order.size(); ++r) {
      Split s = r < n_test            ? Split::kTest
                : r < n_test + n_dev ? Split::kDev
                                      : Split::kTrain;
      out.by_doc[docs[order[r]].doc_id] = s;
    }
  }
  return out;
}

std::vector<Document> SelectSplit(std::span<const Document> docs,
                                  const SplitAssignment& assignment,
                                  Split split) {
  std::vector<Document> out;
  for (const auto& d : docs) {
    auto it = assignment.by_doc.find(d.doc_id);
    if (it != assignment.by_doc.end() && it->second == split) out.push_back(d);
  }
  return out;
}

std::vector<Document> BudgetSubset(std::span<const Document> train_docs,
                                   std::int64_t words_per_author,
                                   std::uint64_t seed) {
  if (words_per_author < 1) throw MalformedInput("word budget must be >= 1");
  std::vector<bool> keep(train_docs.size(), false);
  for (auto& [author, indices] : GroupByAuthor(train_docs)) {
    std::int64_t total = 0;
    for (std::size_t i : AuthorPermutation(train_docs, indices, author, seed)) {
      keep[i] = true;
      total += static_cast<std::int64_t>(WhitespaceWordCount(train_docs[i].text));
      if (total >= words_per_author) break;
    }
  }
  std::vector<Document> out;
  for (std::size_t i = 0; i < train_docs.size(); ++i) {
    if (keep[i]) out.push_back(train_docs[i]);
  }
  return out;
}

}  // namespace stylobench
