#include "doctest.h"
#include "stylobench/annotation/annotator.h"
#include "stylobench/errors.h"
#include "stylobench/evaluation/evaluation.h"
#include "stylobench/prefix/prefix.h"
#include "test_util.h"

using namespace stylobench;
using stylobench::testing::Doc;

namespace {

BinModel TwoAttributeModel() {
  // a: k = 4 (edges 2.75, 4.5, 6.25); b: every quartile is 0, so k = 2.
  return BinModel::Fit({{"a", {1, 2, 3, 4, 5, 6, 7, 8}}, {"b", {0, 0, 0, 0, 0, 0, 0, 1}}},
                       BinFitOptions{4, "", {}});
}

ExampleOutcome Outcome(std::string author, std::vector<std::size_t> target,
                       std::vector<std::optional<std::size_t>> predicted) {
  ExampleOutcome o;
  o.doc_id = author + std::to_string(target.size());
  o.author_id = std::move(author);
  o.target = std::move(target);
  o.predicted = std::move(predicted);
  return o;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("random baseline and relative improvement") {
  CHECK(RandomBaseline(10) == doctest::Approx(10));
  CHECK(RandomBaseline(1) == 100);
  CHECK(RelativeImprovement(10, 10) == doctest::Approx(0));
  CHECK(RelativeImprovement(100, 10) == doctest::Approx(900));
  CHECK(RelativeImprovement(0, 10) == doctest::Approx(-100));
  CHECK(RelativeImprovement(100, 1) == doctest::Approx(0));
  CHECK(RelativeImprovement(50, 2) == doctest::Approx(0));
}

TEST_CASE("success per attribute, pooled and per author") {
  BinModel m = TwoAttributeModel();
  REQUIRE(m.at("a").k() == 4);
  REQUIRE(m.at("b").k() == 2);
  std::vector<ExampleOutcome> outcomes = {
      Outcome("x", {0, 1}, {0, 1}),
      Outcome("x", {1, 1}, {2, 1}),
      Outcome("x", {3, 0}, {3, std::nullopt}),
      Outcome("y", {2, 0}, {2, 1}),
  };
  auto pooled = AttributeSuccess(m, outcomes);
  CHECK(pooled[0].success_rate == doctest::Approx(75));
  CHECK(pooled[1].success_rate == doctest::Approx(50));
  CHECK(pooled[0].relative_improvement == doctest::Approx(200));
  CHECK(pooled[1].relative_improvement == doctest::Approx(0));

  auto per_author = AttributeSuccess(m, outcomes, SuccessAveraging::kPerAuthor);
  // a: x 2/3, y 1/1; b: x 2/3, y 0/1.
  CHECK(per_author[0].success_rate == doctest::Approx((200.0 / 3 + 100) / 2));
  CHECK(per_author[1].success_rate == doctest::Approx((200.0 / 3 + 0) / 2));

  Summary s = Summarize(pooled);
  CHECK(s.mean_success_rate == doctest::Approx(62.5));
  CHECK(s.median_relative_improvement == doctest::Approx(0));  // lower of {0, 200}

  std::vector<ExampleOutcome> none;
  CHECK_THROWS_AS(AttributeSuccess(m, none), EmptyResults);
}

TEST_CASE("error rates") {
  CHECK(ErrorRate(3, 150) == doctest::Approx(2));
  CHECK(ErrorRate(3, 0) == 0);
}

TEST_CASE("fluency") {
  std::map<std::string, ErrorSamples> samples;
  samples["same"] = {{1, 2, 3, 2, 1, 2}, {2, 1, 3, 2, 2, 1}};
  samples["far"] = {{1, 1.2, 0.9, 1.1, 1.0, 1.05}, {9, 9.5, 8.7, 9.1, 9.3, 8.9}};
  samples["tiny"] = {{1}, {2, 3, 4}};
  FluencyResult f = Fluency(samples);
  CHECK(f.score == doctest::Approx(50));
  CHECK(f.skipped == 1);
  REQUIRE(f.authors.size() == 3);
  for (const auto& a : f.authors) {
    if (a.author_id == "tiny") CHECK_FALSE(a.test);
    if (a.author_id == "same") CHECK(a.fluent);
    if (a.author_id == "far") CHECK_FALSE(a.fluent);
  }
  std::map<std::string, ErrorSamples> only_tiny = {{"tiny", {{1}, {2}}}};
  CHECK_THROWS_AS(Fluency(only_tiny), SampleTooSmall);
  std::map<std::string, ErrorSamples> empty_side = {{"e", {{}, {1, 2, 3}}}};
  CHECK_THROWS_AS(Fluency(empty_side), MissingErrorData);
}

TEST_CASE("evaluating generations end to end") {
  auto schema = std::make_shared<const AttributeSchema>(AttributeSchema::FromJson(
      Json{{"lexical", {"num_tokens", "num_sents"}}, {"pos", Json::array()},
           {"deprel", Json::array()}, {"discourse", Json::array()}}));
  BinModel m = BinModel::Fit({{"num_tokens", {4, 6, 8, 10, 12, 14, 16, 18, 20, 22}},
                              {"num_sents", {1, 1, 2, 2, 3, 3, 4, 4, 5, 5}}});
  Annotator annotator({});
  std::vector<AnnotatedDocument> gold = {
      annotator.Annotate(Doc("g1", "a", "One two three. Four five six seven.")),
      annotator.Annotate(Doc("g2", "a", "Hi."))};
  EvalInputs in;
  in.model = &m;
  in.schema = schema;
  in.annotator = &annotator;
  in.gold = gold;
  in.fluency = false;

  PrefixEncoding enc(m);
  BinnedVector target = {m.AssignValue("num_tokens", 9), m.AssignValue("num_sents", 2)};
  GenerationResult g{"g1", enc.Render(target) + "One two three. Four five six seven.",
                     "test", 0};
  ExampleOutcome o = EvaluateGeneration(in, g, "a", target);
  CHECK(o.tokens == 9);
  REQUIRE(o.values[0]);
  CHECK(*o.values[0] == 9);
  CHECK(*o.predicted[0] == target[0].bin);
  CHECK(*o.predicted[1] == target[1].bin);
  CHECK(o.failures.empty());
  CHECK_FALSE(o.errors);

  TargetIndex targets = {{"g1", target}, {"g2", target}};
  std::vector<GenerationResult> gens = {g, {"g2", "Hi.", "test", 0}};
  EvalReport report = Evaluate(in, targets, gens);
  CHECK(report.examples == 2);
  CHECK(report.authors == 1);
  CHECK(report.attributes[0].success_rate == doctest::Approx(50));
  OrderedJson j = report.ToJson();
  CHECK(j["fluency_score"].is_null());
  CHECK(j["attributes"][0]["attribute"] == "num_tokens");
  CHECK(report.ToTable(true).find("num_sents") != std::string::npos);

  std::vector<GenerationResult> orphan = {{"zz", "Hi.", "test", 0}};
  CHECK_THROWS_AS(Evaluate(in, targets, orphan), MalformedInput);
}

TEST_CASE("annotation failures are recorded, not thrown") {
  auto dir = testing::ScratchDir("evaluation_conllu");
  WriteFile(dir / "d.conllu", "1\tCompletely\t_\tADV\t_\t_\t0\troot\t_\t_\n");
  AnnotationSources src;
  src.conllu_dir = dir;
  Annotator annotator(src);
  auto schema = std::make_shared<const AttributeSchema>(AttributeSchema::FromJson(
      Json{{"lexical", {"num_tokens"}}, {"pos", Json::array()},
           {"deprel", Json::array()}, {"discourse", Json::array()}}));
  BinModel m = BinModel::Fit({{"num_tokens", {1, 2, 3}}});
  EvalInputs in;
  in.model = &m;
  in.schema = schema;
  in.annotator = &annotator;
  BinnedVector target = {m.AssignValue("num_tokens", 1)};
  ExampleOutcome o = EvaluateGeneration(in, {"d", "Different text.", "t", 0}, "a", target);
  CHECK_FALSE(o.predicted[0]);
  REQUIRE(o.failures.size() == 1);
  CHECK(o.failures[0].starts_with("AnnotationFailure"));
  std::vector<ExampleOutcome> outcomes = {o};
  in.fluency = false;
  EvalReport r = BuildReport(in, outcomes);
  CHECK(r.annotation_failures == 1);
  CHECK(r.attributes[0].success_rate == 0);
}

TEST_CASE("fluency needs gold error counts") {
  auto schema = std::make_shared<const AttributeSchema>(AttributeSchema::FromJson(
      Json{{"lexical", {"num_tokens"}}, {"pos", Json::array()},
           {"deprel", Json::array()}, {"discourse", Json::array()}}));
  BinModel m = BinModel::Fit({{"num_tokens", {1, 2, 3}}});
  Annotator annotator({});
  std::vector<AnnotatedDocument> gold = {annotator.Annotate(Doc("d", "a", "Hi."))};
  EvalInputs in;
  in.model = &m;
  in.schema = schema;
  in.annotator = &annotator;
  in.gold = gold;
  ExampleOutcome o = Outcome("a", {0}, {0});
  o.errors = 0;
  o.tokens = 2;
  std::vector<ExampleOutcome> outcomes = {o};
  CHECK_THROWS_AS(BuildReport(in, outcomes), MissingErrorData);
}

}  // TEST_SUITE
