#include "stylobench/annotation/tokenizer.h"

#include <algorithm>
#include <cctype>

#include "stylobench/annotation/utf8.h"

namespace stylobench {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool IsDash(char32_t c) { return c == 0x2014 || c == 0x2013; }

bool IsTerminatorToken(std::string_view s) {
  if (s == "…") return true;
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](char c) { return c == '.' || c == '!' || c == '?'; });
}

bool IsCloserToken(std::string_view s) {
  return s == "\"" || s == "'" || s == ")" || s == "]" || s == "}" ||
         s == "”" || s == "’" || s == "»";
}

bool IsOpener(char32_t c) {
  return c == '"' || c == '\'' || c == '(' || c == '`' || c == 0x201C ||
         c == 0x2018 || c == 0x00AB;
}

// Latin-1 uppercase letters count as sentence starters too.
bool StartsSentence(char32_t c) {
  return utf8::IsAsciiUpper(c) || utf8::IsAsciiDigit(c) || IsOpener(c) ||
         (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7);
}

bool IsDottedInitialism(std::string_view w) {
  // w is lowercase without the trailing period: "u.s", "e.g", "a.m".
  if (w.size() < 3) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool want_letter = i % 2 == 0;
    if (want_letter ? !(w[i] >= 'a' && w[i] <= 'z') : w[i] != '.') return false;
  }
  return w.size() % 2 == 1;
}

void Emit(std::string_view text, std::size_t b, std::size_t e,
          std::vector<Token>& out) {
  if (b >= e) return;
  Token t;
  t.surface = std::string(text.substr(b, e - b));
  t.start = b;
  t.end = e;
  out.push_back(std::move(t));
}

}  // namespace

const std::vector<std::string>& Tokenizer::DefaultAbbreviations() {
  static const std::vector<std::string> kList = {
      "mr",  "mrs", "ms",   "dr",  "prof", "sr",  "jr",  "st",
      "mt",  "ft",  "gen",  "gov", "sen",  "rep", "lt",  "col",
      "capt", "sgt", "vs",  "approx", "dept", "est", "fig"};
  return kList;
}

Tokenizer::Tokenizer() : Tokenizer(std::vector<std::string>{}) {}

Tokenizer::Tokenizer(const std::vector<std::string>& extra_abbreviations) {
  for (const auto& a : DefaultAbbreviations()) abbreviations_.insert(a);
  for (const auto& a : extra_abbreviations) {
    std::string w = Lower(a);
    if (!w.empty() && w.back() == '.') w.pop_back();
    if (!w.empty()) abbreviations_.insert(w);
  }
}

bool Tokenizer::IsAbbreviation(std::string_view word_with_period) const {
  if (word_with_period.size() < 2 || word_with_period.back() != '.') {
    return false;
  }
  std::string w = Lower(word_with_period.substr(0, word_with_period.size() - 1));
  return abbreviations_.contains(w) || IsDottedInitialism(w);
}

void Tokenizer::SplitCore(std::string_view text, std::size_t b, std::size_t e,
                          std::vector<Token>& out) const {
  std::string_view core = text.substr(b, e - b);
  std::string lower = Lower(core);
  for (std::string_view neg : {std::string_view("n't"),
                               std::string_view("n’t")}) {
    if (lower.size() > neg.size() && lower.ends_with(neg)) {
      Emit(text, b, e - neg.size(), out);
      Emit(text, e - neg.size(), e, out);
      return;
    }
  }
  for (std::string_view apos : {std::string_view("'"),
                                std::string_view("’")}) {
    std::size_t p = lower.rfind(apos);
    if (p == std::string::npos || p == 0) continue;
    std::string_view suffix = std::string_view(lower).substr(p + apos.size());
    if (suffix == "s" || suffix == "m" || suffix == "d" || suffix == "re" ||
        suffix == "ve" || suffix == "ll") {
      Emit(text, b, b + p, out);
      Emit(text, b + p, e, out);
      return;
    }
  }
  Emit(text, b, e, out);
}

void Tokenizer::SplitChunk(std::string_view text, std::size_t b, std::size_t e,
                           std::vector<Token>& out) const {
  // Leading punctuation, one code point at a time; runs of '.' stay whole.
  while (b < e) {
    utf8::CodePoint cp = utf8::Decode(text, b);
    if (!utf8::IsPunct(cp.value)) break;
    std::size_t stop = b + cp.length;
    if (cp.value == '.') {
      while (stop < e && text[stop] == '.') ++stop;
    }
    Emit(text, b, stop, out);
    b = stop;
  }
  std::vector<Token> trailing;
  while (e > b) {
    std::size_t prev = utf8::PreviousStart(text, e);
    utf8::CodePoint cp = utf8::Decode(text, prev);
    if (!utf8::IsPunct(cp.value)) break;
    if (cp.value == '.') {
      std::size_t s = prev;
      while (s > b && text[s - 1] == '.') --s;
      if (s == prev && IsAbbreviation(text.substr(b, e - b))) break;
      Emit(text, s, e, trailing);
      e = s;
      continue;
    }
    Emit(text, prev, e, trailing);
    e = prev;
  }
  if (b < e) SplitCore(text, b, e, out);
  out.insert(out.end(), std::make_move_iterator(trailing.rbegin()),
             std::make_move_iterator(trailing.rend()));
}

Segmentation Tokenizer::Tokenize(std::string_view text) const {
  Segmentation seg;
  std::vector<Token>& tokens = seg.tokens;

  // Whitespace chunks, further split around dashes.
  std::size_t i = 0;
  while (i < text.size()) {
    utf8::CodePoint cp = utf8::Decode(text, i);
    if (utf8::IsSpace(cp.value)) {
      i += cp.length;
      continue;
    }
    std::size_t chunk_end = i;
    while (chunk_end < text.size()) {
      utf8::CodePoint c = utf8::Decode(text, chunk_end);
      if (utf8::IsSpace(c.value)) break;
      chunk_end += c.length;
    }
    std::size_t seg_start = i;
    std::size_t j = i;
    while (j < chunk_end) {
      utf8::CodePoint c = utf8::Decode(text, j);
      std::size_t dash_end = j;
      if (IsDash(c.value)) {
        dash_end = j + c.length;
      } else if (c.value == '-' && j + 1 < chunk_end && text[j + 1] == '-') {
        dash_end = j;
        while (dash_end < chunk_end && text[dash_end] == '-') ++dash_end;
      }
      if (dash_end > j) {
        if (j > seg_start) SplitChunk(text, seg_start, j, tokens);
        Emit(text, j, dash_end, tokens);
        seg_start = j = dash_end;
      } else {
        j += c.length;
      }
    }
    if (seg_start < chunk_end) SplitChunk(text, seg_start, chunk_end, tokens);
    i = chunk_end;
  }

  int sentence = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    tokens[t].sentence_index = sentence;
    if (!IsTerminatorToken(tokens[t].surface)) continue;
    std::size_t last = t;
    while (last + 1 < tokens.size() &&
           tokens[last + 1].start == tokens[last].end &&
           (IsTerminatorToken(tokens[last + 1].surface) ||
            IsCloserToken(tokens[last + 1].surface))) {
      ++last;
      tokens[last].sentence_index = sentence;
    }
    t = last;
    if (last + 1 >= tokens.size()) break;
    const Token& next = tokens[last + 1];
    if (next.start > tokens[last].end &&
        StartsSentence(utf8::Decode(text, next.start).value)) {
      ++sentence;
    }
  }
  seg.sentence_count = tokens.empty() ? 0 : tokens.back().sentence_index + 1;
  return seg;
}

std::string Tokenizer::FirstSentence(std::string_view text) const {
  Segmentation seg = Tokenize(text);
  std::size_t end = 0;
  for (const Token& t : seg.tokens) {
    if (t.sentence_index != 0) break;
    end = t.end;
  }
  return std::string(text.substr(0, end));
}

Segmentation TokenizeAndSegment(std::string_view text) {
  static const Tokenizer kDefault;
  return kDefault.Tokenize(text);
}

}  // namespace stylobench
