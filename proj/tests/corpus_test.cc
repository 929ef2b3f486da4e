#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "stylobench/corpus/corpus.h"
#include "stylobench/errors.h"
#include "test_util.h"

using namespace stylobench;
using stylobench::testing::Doc;
using stylobench::testing::Words;

namespace {

std::vector<Document> Authors(const std::vector<std::pair<std::string, int>>& sizes,
                              int words = 60) {
  std::vector<Document> docs;
  for (const auto& [author, n] : sizes) {
    for (int i = 0; i < n; ++i) {
      docs.push_back(Doc(author + "-" + std::to_string(i), author, Words(words + i)));
    }
  }
  return docs;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("whitespace word count") {
  CHECK(WhitespaceWordCount("") == 0);
  CHECK(WhitespaceWordCount("   ") == 0);
  CHECK(WhitespaceWordCount("one") == 1);
  CHECK(WhitespaceWordCount("  one\ttwo\n three  ") == 3);
  CHECK(WhitespaceWordCount("don't stop-me now.") == 3);
}

TEST_CASE("filter drops short documents before counting authors") {
  std::vector<Document> docs = Authors({{"a", 3}, {"b", 3}});
  docs.push_back(Doc("a-short", "a", Words(10)));
  docs.push_back(Doc("b-short", "b", Words(10)));
  docs[3].text = Words(10);  // b-0 becomes short

  FilterConfig cfg;
  cfg.min_words_per_doc = 50;
  cfg.min_docs_per_author = 3;
  auto kept = FilterCorpus(docs, cfg);
  std::vector<std::string> ids;
  for (const auto& d : kept) ids.push_back(d.doc_id);
  CHECK(ids == std::vector<std::string>{"a-0", "a-1", "a-2"});
}

TEST_CASE("review presets count authors before the length filter") {
  // Author "a" wrote 1000 reviews, 400 of them short; "b" wrote 999.
  std::vector<Document> docs = Authors({{"a", 600}, {"b", 999}});
  for (int i = 0; i < 400; ++i) {
    docs.push_back(Doc("a-short-" + std::to_string(i), "a", Words(10)));
  }
  auto imdb = FilterConfig::ForSource(SourceKind::kImdb62);
  CHECK(imdb.count_docs_before_length_filter);
  auto kept = FilterCorpus(docs, imdb);
  CHECK(kept.size() == 600);
  CHECK(std::all_of(kept.begin(), kept.end(),
                    [](const Document& d) { return d.author_id == "a"; }));
  CHECK(FilterConfig::ForSource(SourceKind::kAmazon).count_docs_before_length_filter);
  CHECK_FALSE(FilterConfig::ForSource(SourceKind::kBlogs).count_docs_before_length_filter);
  auto off = FilterConfig::FromJson(
      Json{{"source", "imdb62"}, {"count_docs_before_length_filter", false}});
  CHECK(FilterCorpus(docs, off).empty());
}

TEST_CASE("word threshold is inclusive") {
  std::vector<Document> docs = {Doc("x", "a", Words(49)), Doc("y", "a", Words(50))};
  FilterConfig cfg;
  auto kept = FilterCorpus(docs, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].doc_id == "y");
}

TEST_CASE("blogs preset keeps only the five categories") {
  FilterConfig cfg = FilterConfig::ForSource(SourceKind::kBlogs);
  CHECK(cfg.min_docs_per_author == 100);
  REQUIRE(cfg.allowed_categories);
  CHECK(cfg.allowed_categories->contains("Technology"));
  CHECK(cfg.allowed_categories->contains("Education"));
  CHECK(cfg.allowed_categories->contains("Arts"));
  CHECK(cfg.allowed_categories->contains("Internet"));
  CHECK_FALSE(cfg.allowed_categories->contains("Fashion"));

  cfg.min_docs_per_author = 1;
  Document tech = Doc("t", "a", Words(60));
  tech.category = "Technology";
  Document fashion = Doc("f", "a", Words(60));
  fashion.category = "Fashion";
  Document none = Doc("n", "a", Words(60));
  std::vector<Document> docs = {tech, fashion, none};
  auto kept = FilterCorpus(docs, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].doc_id == "t");
}

TEST_CASE("presets and overrides from json") {
  CHECK(FilterConfig::ForSource(SourceKind::kImdb62).min_docs_per_author == 1000);
  CHECK(FilterConfig::ForSource(SourceKind::kAmazon).min_docs_per_author == 2800);
  auto cfg = FilterConfig::FromJson(Json{{"source", "imdb62"}, {"min_words_per_doc", 10}});
  CHECK(cfg.min_docs_per_author == 1000);
  CHECK(cfg.min_words_per_doc == 10);
  CHECK_THROWS_AS(FilterConfig::FromJson(Json{{"min_docs_per_author", 0}}),
                  MalformedInput);
}

TEST_CASE("split sizes, coverage and determinism") {
  auto docs = Authors({{"a", 100}, {"b", 37}, {"c", 3}, {"d", 12}});
  auto split = SplitCorpus(docs, 42);
  std::map<std::string, std::map<Split, int>> counts;
  for (const auto& d : docs) ++counts[d.author_id][split.at(d.doc_id)];

  CHECK(counts["a"][Split::kTrain] == 80);
  CHECK(counts["a"][Split::kDev] == 10);
  CHECK(counts["a"][Split::kTest] == 10);
  CHECK(counts["b"][Split::kTest] == 3);
  CHECK(counts["b"][Split::kDev] == 3);
  CHECK(counts["b"][Split::kTrain] == 31);
  for (const char* author : {"a", "b", "c", "d"}) {
    for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
      CHECK(counts[author][s] >= 1);
    }
  }

  auto again = SplitCorpus(docs, 42);
  CHECK(again.by_doc == split.by_doc);
  std::vector<Document> reversed(docs.rbegin(), docs.rend());
  CHECK(SplitCorpus(reversed, 42).by_doc == split.by_doc);
  CHECK(SplitCorpus(docs, 43).by_doc != split.by_doc);
}

TEST_CASE("authors with fewer than three documents cannot be split") {
  auto docs = Authors({{"a", 5}, {"b", 2}});
  CHECK_THROWS_AS(SplitCorpus(docs, 1), AuthorTooSmall);
}

TEST_CASE("split assignment round trips through jsonl") {
  auto docs = Authors({{"a", 10}});
  auto split = SplitCorpus(docs, 3);
  auto back = SplitAssignment::FromJsonl(split.ToJsonl());
  CHECK(back.by_doc == split.by_doc);
  auto train = SelectSplit(docs, split, Split::kTrain);
  CHECK(train.size() == 8);
  CHECK(std::is_sorted(train.begin(), train.end(), [&](const auto& x, const auto& y) {
    auto pos = [&](const Document& d) {
      return std::find_if(docs.begin(), docs.end(),
                          [&](const auto& e) { return e.doc_id == d.doc_id; }) -
             docs.begin();
    };
    return pos(x) < pos(y);
  }));
}

TEST_CASE("budget subsets are nested and cross the budget") {
  auto docs = Authors({{"a", 40}, {"b", 25}}, 50);
  std::vector<std::set<std::string>> subsets;
  for (std::int64_t budget : {100, 500, 1000, 5000}) {
    auto sub = BudgetSubset(docs, budget, 9);
    std::map<std::string, std::int64_t> words;
    std::set<std::string> ids;
    for (const auto& d : sub) {
      words[d.author_id] += static_cast<std::int64_t>(WhitespaceWordCount(d.text));
      ids.insert(d.doc_id);
    }
    for (const auto& [author, w] : words) {
      std::int64_t total = 0;
      for (const auto& d : docs) {
        if (d.author_id == author) total += WhitespaceWordCount(d.text);
      }
      CHECK(w >= std::min(budget, total));
    }
    subsets.push_back(ids);
  }
  for (std::size_t i = 1; i < subsets.size(); ++i) {
    CHECK(std::includes(subsets[i].begin(), subsets[i].end(), subsets[i - 1].begin(),
                        subsets[i - 1].end()));
  }
}

TEST_CASE("corpus parsing rejects duplicates and empty text") {
  std::vector<Json> ok = {{{"doc_id", "1"}, {"author_id", "a"}, {"text", "hi"}}};
  auto docs = ParseCorpus(ok);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].source.kind == SourceKind::kOther);
  std::vector<Json> dup = {ok[0], ok[0]};
  CHECK_THROWS_AS(ParseCorpus(dup), MalformedInput);
  std::vector<Json> empty = {{{"doc_id", "1"}, {"author_id", "a"}, {"text", ""}}};
  CHECK_THROWS_AS(ParseCorpus(empty), MalformedInput);
  std::vector<Json> missing = {{{"doc_id", "1"}, {"text", "x"}}};
  CHECK_THROWS_AS(ParseCorpus(missing), MalformedInput);
}

}  // TEST_SUITE
