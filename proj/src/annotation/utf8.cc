#include "stylobench/annotation/utf8.h"

namespace stylobench::utf8 {

CodePoint Decode(std::string_view s, std::size_t pos) {
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = (b0 & 0xE0) == 0xC0   ? 2
                    : (b0 & 0xF0) == 0xE0 ? 3
                    : (b0 & 0xF8) == 0xF0 ? 4
                                          : 0;
  if (len == 0 || pos + len > s.size()) return {b0, 1};
  char32_t cp = b0 & (0x7F >> len);
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return {b0, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

std::size_t PreviousStart(std::string_view s, std::size_t end) {
  std::size_t i = end - 1;
  std::size_t limit = end >= 4 ? end - 4 : 0;
  while (i > limit && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) --i;
  if (Decode(s, i).length != end - i) return end - 1;
  return i;
}

bool IsSpace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0x00A0 || (c >= 0x2000 && c <= 0x200A) ||
         c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

bool IsPunct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  return (c >= 0x00A1 && c <= 0x00BF && c != 0x00AA && c != 0x00B2 &&
          c != 0x00B3 && c != 0x00B5 && c != 0x00B9 && c != 0x00BA &&
          c != 0x00BC && c != 0x00BD && c != 0x00BE) ||
         c == 0x00D7 || c == 0x00F7 || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x20A0 && c <= 0x20CF) ||
         (c >= 0x2190 && c <= 0x21FF) || (c >= 0x3001 && c <= 0x303F) ||
         (c >= 0xFF01 && c <= 0xFF0F);
}

bool IsAsciiUpper(char32_t c) { return c >= 'A' && c <= 'Z'; }
bool IsAsciiDigit(char32_t c) { return c >= '0' && c <= '9'; }
bool IsAsciiLetter(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool IsWordChar(char32_t c) {
  if (c < 0x20 || c == 0x7F) return false;
  return !IsSpace(c) && !IsPunct(c);
}

bool IsPunctuationOnly(std::string_view s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size();) {
    CodePoint cp = Decode(s, i);
    if (IsWordChar(cp.value)) return false;
    i += cp.length;
  }
  return true;
}

}  // namespace stylobench::utf8
