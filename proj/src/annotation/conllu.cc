#include "stylobench/annotation/conllu.h"

#include <cctype>
#include <charconv>

#include "stylobench/annotation/inventory.h"
#include "stylobench/errors.h"
#include "stylobench/io.h"

namespace stylobench {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::optional<int> ParseInt(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

}  // namespace

DeprelMap::DeprelMap(std::map<std::string, std::string> mapping) {
  for (auto& [from, to] : mapping) {
    std::string target = Lower(to);
    if (!IsClearNlpLabel(target)) {
      throw MalformedInput("label map target '" + to +
                           "' is not a tracked ClearNLP label");
    }
    mapping_[Lower(from)] = std::move(target);
  }
}

DeprelMap DeprelMap::Load(const std::filesystem::path& path) {
  std::string text = ReadFile(path);
  std::map<std::string, std::string> mapping;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto cols = SplitTabs(line);
    if (cols.size() != 2) {
      throw MalformedLine(path.string() + ":" + std::to_string(line_no));
    }
    mapping[std::string(cols[0])] = std::string(cols[1]);
  }
  return DeprelMap(std::move(mapping));
}

std::optional<std::string> DeprelMap::Lookup(const std::string& label) const {
  auto it = mapping_.find(label);
  if (it == mapping_.end()) return std::nullopt;
  return it->second;
}

std::string CanonicalDeprel(std::string_view label, const DeprelMap* map) {
  std::string lower = Lower(label);
  if (IsClearNlpLabel(lower)) return lower;
  if (map) {
    if (auto hit = map->Lookup(lower)) return *hit;
    std::size_t colon = lower.find(':');
    if (colon != std::string::npos) {
      std::string base = lower.substr(0, colon);
      if (IsClearNlpLabel(base)) return base;
      if (auto hit = map->Lookup(base)) return *hit;
    }
  }
  throw UnknownDeprel(std::string(label));
}

std::vector<ConlluSentence> ParseConllu(std::string_view text,
                                        const DeprelMap* label_map) {
  std::vector<ConlluSentence> out;
  ConlluSentence current;
  auto flush = [&] {
    if (!current.tokens.empty()) out.push_back(std::move(current));
    current = ConlluSentence{};
  };
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      std::string_view c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.remove_prefix(1);
      current.comments.emplace_back(c);
      continue;
    }
    auto cols = SplitTabs(line);
    if (cols.size() != 10) {
      throw MalformedLine("line " + std::to_string(line_no) + ": expected 10 "
                          "columns, found " + std::to_string(cols.size()));
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    ConlluToken tok;
    auto id = ParseInt(cols[0]);
    if (!id || *id < 1) {
      throw MalformedLine("line " + std::to_string(line_no) + ": bad ID '" +
                          std::string(cols[0]) + "'");
    }
    tok.id = *id;
    tok.form = std::string(cols[1]);
    if (cols[3] != "_") {
      if (!IsUpos(cols[3])) {
        throw MalformedLine("line " + std::to_string(line_no) +
                            ": unknown UPOS '" + std::string(cols[3]) + "'");
      }
      tok.upos = std::string(cols[3]);
    }
    if (cols[6] != "_") {
      auto head = ParseInt(cols[6]);
      if (!head || *head < 0) {
        throw MalformedLine("line " + std::to_string(line_no) +
                            ": bad HEAD '" + std::string(cols[6]) + "'");
      }
      tok.head = *head;
    }
    if (cols[7] != "_") tok.deprel = CanonicalDeprel(cols[7], label_map);
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return out;
}

std::string WriteConllu(std::span<const ConlluSentence> sentences) {
  std::string out;
  for (const auto& s : sentences) {
    for (const auto& c : s.comments) out += "# " + c + "\n";
    for (const auto& t : s.tokens) {
      out += std::to_string(t.id) + "\t" + t.form + "\t_\t" +
             (t.upos ? *t.upos : "_") + "\t_\t_\t" +
             (t.head ? std::to_string(*t.head) : "_") + "\t" +
             (t.deprel ? *t.deprel : "_") + "\t_\t_\n";
    }
    out += "\n";
  }
  return out;
}

std::vector<TaggedSentence> ToTaggedSentences(
    std::span<const ConlluSentence> sentences) {
  std::vector<TaggedSentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    TaggedSentence ts;
    for (const auto& t : s.tokens) {
      if (!t.upos) {
        throw MalformedInput("token '" + t.form + "' has no gold UPOS");
      }
      ts.words.push_back(t.form);
      ts.tags.push_back(*t.upos);
    }
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace stylobench
