#ifndef STYLOBENCH_ATTRIBUTES_READABILITY_H_
#define STYLOBENCH_ATTRIBUTES_READABILITY_H_

#include <cstdint>

#include "stylobench/attributes/schema.h"

namespace stylobench {

struct TextCounts {
  std::int64_t words = 0;  // tokens that are not pure punctuation
  std::int64_t sentences = 0;
  std::int64_t syllables = 0;
};

// Flesch-Kincaid grade level:
//   0.39 * words/sentences + 11.8 * syllables/words - 15.59
// Throws DegenerateText unless words >= 1 and sentences >= 1.
double ReadabilityFkgl(std::int64_t words, std::int64_t sentences,
                       std::int64_t syllables);

// Flesch reading ease, same preconditions:
//   206.835 - 1.015 * words/sentences - 84.6 * syllables/words
double ReadabilityReadingEase(std::int64_t words, std::int64_t sentences,
                              std::int64_t syllables);

double Readability(ReadabilityFormula formula, const TextCounts& counts);

}  // namespace stylobench

#endif  // STYLOBENCH_ATTRIBUTES_READABILITY_H_
