#include <map>

#include "doctest.h"
#include "stylobench/annotation/conllu.h"
#include "stylobench/annotation/tagger.h"
#include "stylobench/errors.h"
#include "stylobench/io.h"
#include "stylobench/random.h"
#include "test_util.h"

using namespace stylobench;

namespace {

std::vector<TaggedSentence> Load(const std::filesystem::path& path) {
  DeprelMap map = DeprelMap::Load(testing::DataDir() / "labelmaps" / "ud_to_clearnlp.tsv");
  return ToTaggedSentences(ParseConllu(ReadFile(path), &map));
}

}  // namespace

TEST_SUITE("tagger") {

TEST_CASE("averaging matches the mean of post-update weights") {
  // Oracle: snapshot every weight after each Update() and average them.
  AveragedPerceptron p;
  std::map<std::pair<std::string, std::size_t>, double> live, sum;
  Rng rng(5);
  const std::vector<std::string> feats = {"a", "b", "c", "d"};
  const int steps = 200;
  for (int step = 0; step < steps; ++step) {
    std::vector<std::string> active;
    for (const auto& f : feats) {
      if (rng.Coin()) active.push_back(f);
    }
    std::size_t truth = rng.Index(4);
    std::size_t guess = rng.Index(4);
    p.Update(truth, guess, active);
    if (truth != guess) {
      for (const auto& f : active) {
        live[{f, truth}] += 1;
        live[{f, guess}] -= 1;
      }
    }
    for (const auto& [key, w] : live) sum[key] += w;
  }
  p.Average();
  for (const auto& f : feats) {
    for (std::size_t t = 0; t < 4; ++t) {
      double expected = sum.contains({f, t}) ? sum[{f, t}] / steps : 0.0;
      CHECK(p.Weight(f, t) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(p.instances() == steps);
}

TEST_CASE("predict breaks ties toward the lower tag index") {
  AveragedPerceptron p;
  std::vector<std::string> none;
  CHECK(p.Predict(none) == 0);
}

TEST_CASE("closed-class overrides") {
  CHECK(ClosedClassTag(".") == "PUNCT");
  CHECK(ClosedClassTag(",") == "PUNCT");
  CHECK(ClosedClassTag("...") == "PUNCT");
  CHECK(ClosedClassTag("$") == "SYM");
  CHECK(ClosedClassTag("%") == "SYM");
  CHECK_FALSE(ClosedClassTag("dog"));
  CHECK_FALSE(ClosedClassTag("3"));
}

TEST_CASE("fixture tagger reaches high accuracy on held-out documents") {
  auto train = Load(testing::FixtureDir() / "tagger_train.conllu");
  TaggerTrainOptions opts;
  opts.iterations = 5;
  opts.seed = 7;
  std::vector<TaggedSentence> held_out;
  for (const char* id : {"ava-001", "ben-002", "cleo-003", "ben-010"}) {
    auto s = Load(testing::FixtureDir() / "conllu" / (std::string(id) + ".conllu"));
    held_out.insert(held_out.end(), s.begin(), s.end());
  }
  TaggerTrainReport report;
  Tagger tagger = Tagger::Train(train, opts, held_out, &report);
  REQUIRE(report.dev_accuracy);
  CHECK(*report.dev_accuracy > 0.95);
  CHECK(report.sentences == train.size());

  SUBCASE("serialization round trip") {
    Tagger back = Tagger::Deserialize(tagger.Serialize());
    CHECK(back.Accuracy(held_out) == tagger.Accuracy(held_out));
    CHECK(back.iterations() == 5);
    CHECK(back.seed() == 7);
    std::vector<std::string> words = {"The", "dog", "slept", "."};
    CHECK(back.TagWords(words) == tagger.TagWords(words));
  }
  SUBCASE("training is deterministic") {
    Tagger again = Tagger::Train(train, opts);
    CHECK(again.Serialize() == tagger.Serialize());
  }
}

TEST_CASE("tagging fills every token") {
  std::vector<TaggedSentence> train = {
      {{"the", "dog", "ran", "."}, {"DET", "NOUN", "VERB", "PUNCT"}},
      {{"a", "cat", "sat", "."}, {"DET", "NOUN", "VERB", "PUNCT"}}};
  Tagger tagger = Tagger::Train(train, {});
  std::vector<Token> tokens = {{"the", 0}, {"cat", 0}, {"ran", 0}, {"!", 0}, {"A", 1}};
  tagger.Tag(tokens);
  for (const auto& t : tokens) CHECK(t.upos.has_value());
  CHECK(*tokens[3].upos == "PUNCT");
}

TEST_CASE("training errors") {
  std::vector<TaggedSentence> empty;
  CHECK_THROWS_AS(Tagger::Train(empty, {}), EmptyTrainingData);
  std::vector<TaggedSentence> bad = {{{"x"}, {"NOPE"}}};
  CHECK_THROWS_AS(Tagger::Train(bad, {}), MalformedInput);
  CHECK_THROWS_AS(Tagger::Deserialize("garbage"), ModelFormatError);
  CHECK_THROWS_AS(Tagger::Deserialize("STYLOTAG1\n{\"format_version\":2}"),
                  ModelFormatError);
}

}  // TEST_SUITE
