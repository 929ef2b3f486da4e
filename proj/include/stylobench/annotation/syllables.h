#ifndef STYLOBENCH_ANNOTATION_SYLLABLES_H_
#define STYLOBENCH_ANNOTATION_SYLLABLES_H_

#include <string_view>

namespace stylobench {

// Heuristic English syllable count.
//
// Words with letters: vowel groups (a e i o u, and y unless word-initial
// before a vowel) after removing silent endings (-e, -es, -ed), then fixed
// corrections for common hiatus and suffix patterns; at least 1.
// No letters: each maximal run of digits counts as one syllable, so "1999"
// is 1 and "3.5" is 2. Pure punctuation is 0.
int CountSyllables(std::string_view word);

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_SYLLABLES_H_
