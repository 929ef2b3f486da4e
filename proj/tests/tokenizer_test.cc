#include <algorithm>

#include "doctest.h"
#include "stylobench/annotation/tokenizer.h"

using namespace stylobench;

namespace {

std::vector<std::string> Surfaces(const Segmentation& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_SUITE("tokenizer") {

TEST_CASE("two short sentences") {
  auto s = TokenizeAndSegment("I ran. She laughed!");
  CHECK(Surfaces(s) == std::vector<std::string>{"I", "ran", ".", "She", "laughed", "!"});
  CHECK(s.sentence_count == 2);
  CHECK(s.tokens[2].sentence_index == 0);
  CHECK(s.tokens[3].sentence_index == 1);
}

TEST_CASE("clitics split off") {
  auto s = TokenizeAndSegment("I don't think I'm late.");
  CHECK(Surfaces(s) ==
        std::vector<std::string>{"I", "do", "n't", "think", "I", "'m", "late", "."});
}

TEST_CASE("abbreviations keep their period and do not end sentences") {
  auto s = TokenizeAndSegment("Dr. Smith lives in the U.S. now. He likes it.");
  auto v = Surfaces(s);
  CHECK(v[0] == "Dr.");
  CHECK(std::find(v.begin(), v.end(), "U.S.") != v.end());
  CHECK(s.sentence_count == 2);
}

TEST_CASE("spans index into the text") {
  std::string text = "Hello,  world! (Yes.)";
  auto s = TokenizeAndSegment(text);
  for (const auto& t : s.tokens) {
    CHECK(text.substr(t.start, t.end - t.start) == t.surface);
  }
  CHECK(s.sentence_count == 2);
}

TEST_CASE("lowercase after a period continues the sentence") {
  auto s = TokenizeAndSegment("It cost 3.5 dollars. and then more");
  CHECK(s.sentence_count == 1);
  auto v = Surfaces(s);
  CHECK(std::find(v.begin(), v.end(), "3.5") != v.end());
}

TEST_CASE("ellipsis and question marks") {
  auto s = TokenizeAndSegment("Wait... What? \"Really!\" She left.");
  CHECK(s.sentence_count == 4);
}

TEST_CASE("empty and whitespace text") {
  CHECK(TokenizeAndSegment("").tokens.empty());
  CHECK(TokenizeAndSegment("").sentence_count == 0);
  CHECK(TokenizeAndSegment(" \n\t").tokens.empty());
}

TEST_CASE("text without final punctuation is one sentence") {
  auto s = TokenizeAndSegment("no punctuation here");
  CHECK(s.tokens.size() == 3);
  CHECK(s.sentence_count == 1);
}

TEST_CASE("first sentence is a prefix of the text") {
  Tokenizer tok;
  CHECK(tok.FirstSentence("  Hi there.  Next one.") == "  Hi there.");
  CHECK(tok.FirstSentence("Only one") == "Only one");
  CHECK(tok.FirstSentence("") == "");
  CHECK(tok.FirstSentence("\"Go!\" he said. Then.") == "\"Go!\" he said.");
}

TEST_CASE("extra abbreviations") {
  Tokenizer tok({"approx"});
  auto s = tok.Tokenize("It is approx. Ten metres.");
  CHECK(s.sentence_count == 1);
}

}  // TEST_SUITE
