#ifndef STYLOBENCH_ANNOTATION_TOKENIZER_H_
#define STYLOBENCH_ANNOTATION_TOKENIZER_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stylobench/annotation/token.h"

namespace stylobench {

struct Segmentation {
  std::vector<Token> tokens;
  int sentence_count = 0;
};

// Rule-based English tokenizer and sentence splitter.
//
// Tokens: whitespace chunks with leading and trailing punctuation detached
// (runs of '.' stay together), em-dashes and "--" split out, and clitics
// separated ("don't" -> "do" "n't", "I'm" -> "I" "'m"). A trailing period
// stays attached to known abbreviations and dotted initialisms ("U.S.").
//
// Sentences end at a run of '.', '!', '?' or '…' tokens, plus any adjacent
// closing quotes or brackets, when followed by end of text or by whitespace
// and an uppercase letter, digit or opening quote.
class Tokenizer {
 public:
  Tokenizer();
  explicit Tokenizer(const std::vector<std::string>& extra_abbreviations);

  Segmentation Tokenize(std::string_view text) const;

  // The first sentence of `text`, from byte 0 through its last token, so the
  // result is always a prefix of `text`. Empty when the text has no tokens.
  std::string FirstSentence(std::string_view text) const;

  static const std::vector<std::string>& DefaultAbbreviations();

 private:
  bool IsAbbreviation(std::string_view word_with_period) const;
  void SplitChunk(std::string_view text, std::size_t begin, std::size_t end,
                  std::vector<Token>& out) const;
  void SplitCore(std::string_view text, std::size_t begin, std::size_t end,
                 std::vector<Token>& out) const;

  std::set<std::string> abbreviations_;  // lowercase, without the period
};

// Tokenize with the default abbreviation list.
Segmentation TokenizeAndSegment(std::string_view text);

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_TOKENIZER_H_
