#ifndef STYLOBENCH_ANNOTATION_UTF8_H_
#define STYLOBENCH_ANNOTATION_UTF8_H_

#include <cstddef>
#include <string_view>

namespace stylobench::utf8 {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed, >= 1
};

// Decodes the code point starting at `pos`. Invalid sequences decode as the
// single raw byte so every input is traversable.
CodePoint Decode(std::string_view s, std::size_t pos);

// Start offset of the code point that ends at `end` (exclusive).
std::size_t PreviousStart(std::string_view s, std::size_t end);

bool IsSpace(char32_t c);
// Punctuation and symbols: ASCII punctuation plus the common Latin-1,
// General Punctuation, currency and CJK punctuation ranges.
bool IsPunct(char32_t c);
bool IsAsciiUpper(char32_t c);
bool IsAsciiDigit(char32_t c);
bool IsAsciiLetter(char32_t c);
// Letters or digits in any script (anything that is neither space nor
// punctuation nor a control character).
bool IsWordChar(char32_t c);

// True when `s` is non-empty and contains no word characters.
bool IsPunctuationOnly(std::string_view s);

}  // namespace stylobench::utf8

#endif  // STYLOBENCH_ANNOTATION_UTF8_H_
