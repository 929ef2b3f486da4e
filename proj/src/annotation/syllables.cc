#include "stylobench/annotation/syllables.h"

#include <string>

#include "stylobench/annotation/utf8.h"

namespace stylobench {
namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool IsConsonant(char c) { return c >= 'a' && c <= 'z' && !IsVowel(c); }

bool EndsWith(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Character before a suffix of length n, or '\0'.
char Before(const std::string& w, std::size_t n) {
  return w.size() > n ? w[w.size() - n - 1] : '\0';
}

int CountOccurrences(const std::string& w, std::string_view pattern) {
  int n = 0;
  for (std::size_t p = w.find(pattern); p != std::string::npos;
       p = w.find(pattern, p + 1)) {
    ++n;
  }
  return n;
}

// Strips inflectional endings that do not add a syllable.
std::string StripSilentEndings(std::string w) {
  if (w.size() <= 3) {
    if (w.size() == 3 && w[2] == 'e' && IsConsonant(w[1]) && IsVowel(w[0]) &&
        w[0] != 'y') {
      w.pop_back();  // "ate", "ice"
    }
    return w;
  }
  if (EndsWith(w, "es")) {
    char c = Before(w, 2);
    bool sibilant = c == 's' || c == 'x' || c == 'z' || c == 'c' || c == 'g' ||
                    EndsWith(w, "ches") || EndsWith(w, "shes");
    if (c == 'l' && IsConsonant(Before(w, 3))) {
      w.pop_back();  // "tables" -> "table"
    } else if (!sibilant) {
      w.resize(w.size() - 2);
      return w;
    } else {
      return w;
    }
  } else if (EndsWith(w, "ed")) {
    char c = Before(w, 2);
    if (c == 'l' && IsConsonant(Before(w, 3))) {
      w.pop_back();  // "settled" -> "settle"
    } else if (c != 't' && c != 'd' && c != 'e' && c != 'i') {
      w.resize(w.size() - 2);
      return w;
    } else {
      return w;
    }
  }
  if (w.back() == 'e' && w.size() > 2) {
    char c = Before(w, 1);
    bool consonant_le = c == 'l' && IsConsonant(Before(w, 2));
    if (IsConsonant(c) && !consonant_le) w.pop_back();
  }
  return w;
}

int VowelGroups(const std::string& w) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool vowel = IsVowel(w[i]);
    if (w[i] == 'y' && i == 0 && w.size() > 1 && IsVowel(w[1])) vowel = false;
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  return groups;
}

int Corrections(const std::string& w) {
  int delta = 0;
  // Two-syllable vowel pairs: gi-ant, ra-di-o, me-di-um, ac-tu-al.
  for (std::size_t p = w.find("ia"); p != std::string::npos;
       p = w.find("ia", p + 1)) {
    char c = p > 0 ? w[p - 1] : '\0';
    if (c != 'c' && c != 't' && c != 's' && c != 'g') ++delta;
  }
  for (std::size_t p = w.find("io"); p != std::string::npos;
       p = w.find("io", p + 1)) {
    char c = p > 0 ? w[p - 1] : '\0';
    bool suffix_ion = w.compare(p, 3, "ion") == 0 &&
                      (c == 't' || c == 's' || c == 'c' || c == 'g' || c == 'x');
    bool suffix_ious = w.compare(p, 4, "ious") == 0;
    if (!suffix_ion && !suffix_ious) ++delta;
  }
  delta += CountOccurrences(w, "iu");
  for (std::size_t p = w.find("ua"); p != std::string::npos;
       p = w.find("ua", p + 1)) {
    char c = p > 0 ? w[p - 1] : '\0';
    if (c != 'q' && c != 'g') ++delta;
  }
  if (w.find("creat") != std::string::npos &&
      w.find("creatu") == std::string::npos) {
    ++delta;
  }
  if (EndsWith(w, "ier") || EndsWith(w, "iest")) ++delta;
  if (EndsWith(w, "ism")) ++delta;
  if (w.rfind("mc", 0) == 0) ++delta;
  // "lovely", "safely": the e before -ly is silent.
  if (EndsWith(w, "ely") && IsConsonant(Before(w, 3))) --delta;
  return delta;
}

}  // namespace

int CountSyllables(std::string_view word) {
  std::string letters;
  bool has_other_letters = false;
  int digit_runs = 0;
  bool in_digits = false;
  for (std::size_t i = 0; i < word.size();) {
    utf8::CodePoint cp = utf8::Decode(word, i);
    i += cp.length;
    bool digit = utf8::IsAsciiDigit(cp.value);
    if (digit && !in_digits) ++digit_runs;
    in_digits = digit;
    if (utf8::IsAsciiLetter(cp.value)) {
      letters += static_cast<char>(cp.value | 0x20);
    } else if (!digit && utf8::IsWordChar(cp.value)) {
      has_other_letters = true;
    }
  }
  if (letters.empty()) return has_other_letters ? 1 : digit_runs;

  std::string stem = StripSilentEndings(letters);
  int count = VowelGroups(stem) + Corrections(stem);
  return count < 1 ? 1 : count;
}

}  // namespace stylobench
