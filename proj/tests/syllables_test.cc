#include "doctest.h"
#include "stylobench/annotation/syllables.h"
#include "syllable_gold.h"

using namespace stylobench;

TEST_SUITE("syllables") {

TEST_CASE("hand-labeled list") {
  int correct = 0;
  for (const auto& [word, gold] : testing::kSyllableGold) {
    int got = CountSyllables(word);
    if (got == gold) {
      ++correct;
    } else {
      MESSAGE(word << ": got " << got << ", expected " << gold);
    }
  }
  CHECK(correct >= 45);
}

TEST_CASE("case does not matter") {
  CHECK(CountSyllables("Beautiful") == CountSyllables("beautiful"));
  CHECK(CountSyllables("WATER") == 2);
}

TEST_CASE("numbers and punctuation") {
  CHECK(CountSyllables("1999") == 1);
  CHECK(CountSyllables("3.5") == 2);
  CHECK(CountSyllables(".") == 0);
  CHECK(CountSyllables("--") == 0);
  CHECK(CountSyllables("") == 0);
}

TEST_CASE("every word with letters has at least one syllable") {
  for (const char* w : {"b", "rhythm", "shh", "n't", "'s", "hmm"}) {
    CHECK(CountSyllables(w) >= 1);
  }
}

}  // TEST_SUITE
