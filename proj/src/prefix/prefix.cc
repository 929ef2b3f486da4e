#include "stylobench/prefix/prefix.h"

#include <algorithm>

#include "stylobench/annotation/tokenizer.h"
#include "stylobench/errors.h"

namespace stylobench {
namespace {

constexpr std::string_view kInstruction =
    "Complete the given input sentence so that the stylometric attributes of "
    "the completed text are close to the provided stylometric attributes. The "
    "length of the auto-completed text should be about 1024 tokens.";

const BinnedValue* FindValue(const BinnedVector& v, const std::string& name) {
  for (const auto& b : v) {
    if (b.attribute == name) return &b;
  }
  return nullptr;
}

// Splits "<a><b>...<z>" into {"a", "b", ..., "z"}. Labels may contain '>'
// (">=21"), so tokens are delimited by "><" rather than by '>'.
std::vector<std::string> SplitTokens(std::string_view s) {
  if (s.size() < 2 || s.front() != '<' || s.back() != '>') {
    throw PrefixParseError("prefix must be a sequence of <...> tokens");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find("><", pos);
    if (next == std::string_view::npos) {
      out.emplace_back(s.substr(pos));
      break;
    }
    out.emplace_back(s.substr(pos, next - pos));
    pos = next + 2;
  }
  return out;
}

}  // namespace

PrefixEncoding::PrefixEncoding(const BinModel& model,
                               TokenGranularity granularity)
    : model_(&model), granularity_(granularity) {}

std::string PrefixEncoding::PairToken(const std::string& attribute,
                                      const std::string& label) const {
  if (granularity_ == TokenGranularity::kPair) {
    return "<" + attribute + ":" + label + ">";
  }
  return "<" + attribute + "><=" + label + ">";
}

std::string PrefixEncoding::Render(const BinnedVector& binned) const {
  std::string out;
  for (const auto& name : order()) {
    const BinnedValue* b = FindValue(binned, name);
    if (b == nullptr) throw MissingAttribute(name);
    out += PairToken(name, b->label);
  }
  out += kSeparator;
  return out;
}

BinnedVector PrefixEncoding::Parse(std::string_view prefix) const {
  std::vector<std::string> pieces = SplitTokens(prefix);
  const std::size_t per_attr = granularity_ == TokenGranularity::kPair ? 1 : 2;
  if (pieces.size() != order().size() * per_attr + 1 ||
      "<" + pieces.back() + ">" != kSeparator) {
    throw PrefixParseError("expected " + std::to_string(order().size()) +
                           " attribute tokens and a separator");
  }
  BinnedVector out;
  out.reserve(order().size());
  for (std::size_t i = 0; i < order().size(); ++i) {
    const std::string& name = order()[i];
    std::string label;
    if (granularity_ == TokenGranularity::kPair) {
      const std::string& p = pieces[i];
      if (!p.starts_with(name + ":")) {
        throw PrefixParseError("expected attribute " + name + " in <" + p + ">");
      }
      label = p.substr(name.size() + 1);
    } else {
      const std::string& a = pieces[2 * i];
      const std::string& v = pieces[2 * i + 1];
      if (a != name || !v.starts_with("=")) {
        throw PrefixParseError("expected <" + name + "><=label>");
      }
      label = v.substr(1);
    }
    std::size_t bin = model_->BinOfLabel(name, label);
    out.push_back({name, bin, label});
  }
  return out;
}

std::vector<std::string> PrefixEncoding::Vocabulary() const {
  std::vector<std::string> vocab;
  for (const auto& name : order()) {
    const AttributeBins& b = model_->at(name);
    if (granularity_ == TokenGranularity::kPair) {
      for (const auto& label : b.labels) vocab.push_back(PairToken(name, label));
    } else {
      vocab.push_back("<" + name + ">");
    }
  }
  if (granularity_ == TokenGranularity::kTwoToken) {
    // Value tokens are shared across attributes.
    std::vector<std::string> values;
    for (const auto& name : order()) {
      for (const auto& label : model_->at(name).labels) {
        values.push_back("<=" + label + ">");
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    vocab.insert(vocab.end(), values.begin(), values.end());
  }
  vocab.emplace_back(kSeparator);
  return vocab;
}

std::string StripPrefix(std::string_view text) {
  std::size_t pos = text.find(PrefixEncoding::kSeparator);
  if (pos == std::string_view::npos) return std::string(text);
  text.remove_prefix(pos + PrefixEncoding::kSeparator.size());
  if (text.starts_with(' ')) text.remove_prefix(1);
  return std::string(text);
}

std::string FirstSentence(std::string_view text) {
  static const Tokenizer tokenizer;
  std::string s = tokenizer.FirstSentence(text);
  if (s.empty()) throw EmptyText("document has no tokens");
  return s;
}

const BinnedVector& ConditioningVector(const Document& doc,
                                       const BinnedIndex& binned,
                                       Conditioning conditioning) {
  const std::string& key =
      conditioning == Conditioning::kAuthor ? doc.author_id : doc.doc_id;
  auto it = binned.find(key);
  if (it == binned.end()) {
    throw MissingAuthorVector(conditioning == Conditioning::kAuthor
                                  ? key
                                  : "document " + key);
  }
  return it->second;
}

std::vector<OrderedJson> BuildTrainingFile(std::span<const Document> docs,
                                           const BinnedIndex& binned,
                                           const PrefixEncoding& enc,
                                           Conditioning conditioning) {
  std::vector<OrderedJson> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) {
    OrderedJson j;
    j["doc_id"] = doc.doc_id;
    j["author_id"] = doc.author_id;
    j["text"] = enc.Render(ConditioningVector(doc, binned, conditioning)) +
                doc.text;
    out.push_back(std::move(j));
  }
  return out;
}

OrderedJson InferenceToJson(const InferenceExample& e) {
  OrderedJson j;
  j["doc_id"] = e.doc_id;
  j["author_id"] = e.author_id;
  j["prefix"] = e.prefix;
  j["prompt_sentence"] = e.prompt_sentence;
  return j;
}

InferenceExample InferenceFromJson(const Json& j) {
  try {
    return {j.at("doc_id").get<std::string>(),
            j.value("author_id", std::string()),
            j.value("prefix", std::string()),
            j.at("prompt_sentence").get<std::string>()};
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("inference record: ") + e.what());
  }
}

std::vector<InferenceExample> BuildInferenceExamples(
    std::span<const Document> docs, const BinnedIndex& binned,
    const PrefixEncoding& enc, Conditioning conditioning) {
  std::vector<InferenceExample> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) {
    out.push_back({doc.doc_id, doc.author_id,
                   enc.Render(ConditioningVector(doc, binned, conditioning)),
                   FirstSentence(doc.text)});
  }
  return out;
}

std::string FormatApiPrompt(const BinnedVector& binned,
                            std::string_view input_sentence) {
  std::string attrs;
  for (const auto& b : binned) {
    if (!attrs.empty()) attrs += ", ";
    attrs += b.attribute + ": " + b.label;
  }
  std::string out(kInstruction);
  out += "\n\n<stylometric vector> ";
  out += attrs;
  out += " </stylometric vector>\n<input> ";
  out += input_sentence;
  out += " </input>";
  return out;
}

std::string ExtractInput(std::string_view prompt) {
  constexpr std::string_view kOpen = "\n<input> ";
  constexpr std::string_view kClose = " </input>";
  std::size_t open = prompt.find(kOpen);
  if (open == std::string_view::npos || !prompt.ends_with(kClose) ||
      open + kOpen.size() > prompt.size() - kClose.size()) {
    throw PrefixParseError("prompt has no <input> block");
  }
  std::size_t begin = open + kOpen.size();
  return std::string(prompt.substr(begin, prompt.size() - kClose.size() - begin));
}

}  // namespace stylobench
