#include "stylobench/attributes/readability.h"

#include <string>

#include "stylobench/errors.h"

namespace stylobench {
namespace {

void Check(std::int64_t words, std::int64_t sentences) {
  if (words < 1 || sentences < 1) {
    throw DegenerateText("need at least one word and one sentence (words=" +
                         std::to_string(words) +
                         ", sentences=" + std::to_string(sentences) + ")");
  }
}

}  // namespace

double ReadabilityFkgl(std::int64_t words, std::int64_t sentences,
                       std::int64_t syllables) {
  Check(words, sentences);
  double w = static_cast<double>(words);
  return 0.39 * (w / static_cast<double>(sentences)) +
         11.8 * (static_cast<double>(syllables) / w) - 15.59;
}

double ReadabilityReadingEase(std::int64_t words, std::int64_t sentences,
                              std::int64_t syllables) {
  Check(words, sentences);
  double w = static_cast<double>(words);
  return 206.835 - 1.015 * (w / static_cast<double>(sentences)) -
         84.6 * (static_cast<double>(syllables) / w);
}

double Readability(ReadabilityFormula formula, const TextCounts& c) {
  return formula == ReadabilityFormula::kFkgl
             ? ReadabilityFkgl(c.words, c.sentences, c.syllables)
             : ReadabilityReadingEase(c.words, c.sentences, c.syllables);
}

}  // namespace stylobench
