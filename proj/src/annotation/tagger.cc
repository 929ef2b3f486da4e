#include "stylobench/annotation/tagger.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "stylobench/annotation/utf8.h"
#include "stylobench/errors.h"
#include "stylobench/io.h"
#include "stylobench/random.h"

namespace stylobench {
namespace {

constexpr std::string_view kStart[] = {"-START-", "-START2-"};
constexpr std::string_view kEnd[] = {"-END-", "-END2-"};

std::size_t TagIndex(std::string_view tag) {
  auto it = std::find(kUposTags.begin(), kUposTags.end(), tag);
  if (it == kUposTags.end()) {
    throw MalformedInput("tag '" + std::string(tag) + "' is not a UPOS tag");
  }
  return static_cast<std::size_t>(it - kUposTags.begin());
}

// First / last n code points.
std::string_view PrefixCp(std::string_view s, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n && pos < s.size(); ++k) {
    pos += utf8::Decode(s, pos).length;
  }
  return s.substr(0, pos);
}

std::string_view SuffixCp(std::string_view s, std::size_t n) {
  std::size_t pos = s.size();
  for (std::size_t k = 0; k < n && pos > 0; ++k) {
    pos = utf8::PreviousStart(s, pos);
  }
  return s.substr(pos);
}

std::string Shape(std::string_view word) {
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    utf8::CodePoint cp = utf8::Decode(word, i);
    char c;
    if (cp.value >= 'A' && cp.value <= 'Z') {
      c = 'X';
    } else if (cp.value >= 'a' && cp.value <= 'z') {
      c = 'x';
    } else if (utf8::IsAsciiDigit(cp.value)) {
      c = 'd';
    } else if (cp.value < 0x80) {
      c = static_cast<char>(cp.value);
    } else {
      c = utf8::IsWordChar(cp.value) ? 'u' : 'p';
    }
    if (out.empty() || out.back() != c) out += c;
    i += cp.length;
  }
  return out;
}

std::string Normalize(std::string_view word) {
  bool all_digits = !word.empty();
  for (char c : word) {
    if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
  }
  if (all_digits && word.size() == 4) return "!YEAR";
  if (!word.empty() && std::isdigit(static_cast<unsigned char>(word[0]))) {
    return "!DIGITS";
  }
  if (word.find('-') != std::string_view::npos && word[0] != '-') {
    return "!HYPHEN";
  }
  std::string out(word);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> Context(std::span<const std::string> words) {
  std::vector<std::string> ctx;
  ctx.reserve(words.size() + 4);
  ctx.emplace_back(kStart[0]);
  ctx.emplace_back(kStart[1]);
  for (const auto& w : words) ctx.push_back(Normalize(w));
  ctx.emplace_back(kEnd[0]);
  ctx.emplace_back(kEnd[1]);
  return ctx;
}

}  // namespace

std::optional<std::string_view> ClosedClassTag(std::string_view word) {
  if (!utf8::IsPunctuationOnly(word)) return std::nullopt;
  utf8::CodePoint cp = utf8::Decode(word, 0);
  if (cp.length == word.size()) {
    switch (cp.value) {
      case '$': case '%': case '&': case '+': case '<': case '=': case '>':
      case '@': case '^': case '|': case '~': case '#': case 0x00D7:
      case 0x00F7: case 0x00A3: case 0x00A5: case 0x00B0:
        return "SYM";
      default:
        if (cp.value >= 0x20A0 && cp.value <= 0x20CF) return "SYM";
    }
  }
  return "PUNCT";
}

std::vector<std::string> TaggerFeatures(std::size_t i, std::string_view word,
                                        std::span<const std::string> context,
                                        std::string_view prev,
                                        std::string_view prev2) {
  const std::size_t c = i + 2;
  const std::string& w = context[c];
  std::vector<std::string> f;
  f.reserve(20);
  auto add = [&f](std::string_view name, std::string_view a,
                  std::string_view b = {}) {
    std::string s(name);
    s += ' ';
    s += a;
    if (!b.empty()) {
      s += ' ';
      s += b;
    }
    f.push_back(std::move(s));
  };
  f.emplace_back("bias");
  add("i word", w);
  add("i shape", Shape(word));
  for (std::size_t n = 1; n <= 3; ++n) {
    add("i pre" + std::to_string(n), PrefixCp(w, n));
    add("i suf" + std::to_string(n), SuffixCp(w, n));
  }
  add("i-1 tag", prev);
  add("i-2 tag", prev2);
  add("i-1 tag+i-2 tag", prev, prev2);
  add("i-1 tag+i word", prev, w);
  add("i-1 word", context[c - 1]);
  add("i-1 suf3", SuffixCp(context[c - 1], 3));
  add("i-2 word", context[c - 2]);
  add("i+1 word", context[c + 1]);
  add("i+1 suf3", SuffixCp(context[c + 1], 3));
  add("i+2 word", context[c + 2]);
  return f;
}

std::size_t AveragedPerceptron::Predict(
    std::span<const std::string> features) const {
  TagScores scores{};
  for (const auto& feat : features) {
    auto it = weights_.find(feat);
    if (it == weights_.end()) continue;
    for (std::size_t t = 0; t < kNumTags; ++t) scores[t] += it->second[t];
  }
  return static_cast<std::size_t>(
      std::max_element(scores.begin(), scores.end()) - scores.begin());
}

void AveragedPerceptron::Bump(const std::string& feature, std::size_t tag,
                              double delta) {
  TagScores& w = weights_[feature];
  Param& p = params_[feature];
  p.total[tag] += static_cast<double>(instances_ - p.stamp[tag]) * w[tag];
  p.stamp[tag] = instances_;
  w[tag] += delta;
}

void AveragedPerceptron::Update(std::size_t truth, std::size_t guess,
                                std::span<const std::string> features) {
  if (truth != guess) {
    for (const auto& feat : features) {
      Bump(feat, truth, 1.0);
      Bump(feat, guess, -1.0);
    }
  }
  ++instances_;
}

void AveragedPerceptron::Average() {
  if (instances_ == 0) return;
  for (auto& [feat, w] : weights_) {
    Param& p = params_[feat];
    for (std::size_t t = 0; t < kNumTags; ++t) {
      double total =
          p.total[t] + static_cast<double>(instances_ - p.stamp[t]) * w[t];
      w[t] = total / static_cast<double>(instances_);
    }
  }
  params_.clear();
  for (auto it = weights_.begin(); it != weights_.end();) {
    bool zero = std::all_of(it->second.begin(), it->second.end(),
                            [](double v) { return v == 0.0; });
    it = zero ? weights_.erase(it) : std::next(it);
  }
}

double AveragedPerceptron::Weight(const std::string& feature,
                                  std::size_t tag) const {
  auto it = weights_.find(feature);
  return it == weights_.end() ? 0.0 : it->second[tag];
}

Tagger Tagger::Train(std::span<const TaggedSentence> train,
                     const TaggerTrainOptions& options,
                     std::span<const TaggedSentence> dev,
                     TaggerTrainReport* report) {
  std::size_t n_tokens = 0;
  std::map<std::string, std::map<std::size_t, int>> counts;
  for (const auto& s : train) {
    if (s.words.size() != s.tags.size()) {
      throw MalformedInput("sentence has mismatched word and tag counts");
    }
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      ++counts[s.words[i]][TagIndex(s.tags[i])];
    }
    n_tokens += s.words.size();
  }
  if (n_tokens == 0) throw EmptyTrainingData("no tagged tokens to train on");

  Tagger tagger;
  tagger.iterations_ = options.iterations;
  tagger.seed_ = options.seed;
  for (const auto& [word, by_tag] : counts) {
    int total = 0;
    std::pair<std::size_t, int> best{0, -1};
    for (const auto& [tag, n] : by_tag) {
      total += n;
      if (n > best.second) best = {tag, n};
    }
    if (total >= options.tagdict_min_count &&
        static_cast<double>(best.second) / total >= options.tagdict_min_ratio) {
      tagger.tagdict_[word] = best.first;
    }
  }

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(options.seed);
  for (int iter = 0; iter < options.iterations; ++iter) {
    rng.Shuffle(order);
    for (std::size_t idx : order) {
      const TaggedSentence& s = train[idx];
      std::vector<std::string> ctx = Context(s.words);
      std::string prev(kStart[0]), prev2(kStart[1]);
      for (std::size_t i = 0; i < s.words.size(); ++i) {
        std::size_t truth = TagIndex(s.tags[i]);
        std::size_t guess;
        if (auto closed = ClosedClassTag(s.words[i])) {
          guess = TagIndex(*closed);
        } else if (auto it = tagger.tagdict_.find(s.words[i]);
                   it != tagger.tagdict_.end()) {
          guess = it->second;
        } else {
          auto feats = TaggerFeatures(i, s.words[i], ctx, prev, prev2);
          guess = tagger.model_.Predict(feats);
          tagger.model_.Update(truth, guess, feats);
        }
        prev2 = std::move(prev);
        prev = std::string(kUposTags[guess]);
      }
    }
  }
  tagger.model_.Average();

  if (report) {
    report->sentences = train.size();
    report->tokens = n_tokens;
    if (!dev.empty()) report->dev_accuracy = tagger.Accuracy(dev);
  }
  return tagger;
}

std::vector<std::size_t> Tagger::TagIndices(
    std::span<const std::string> words) const {
  std::vector<std::string> ctx = Context(words);
  std::vector<std::size_t> out;
  out.reserve(words.size());
  std::string prev(kStart[0]), prev2(kStart[1]);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::size_t tag;
    if (auto closed = ClosedClassTag(words[i])) {
      tag = TagIndex(*closed);
    } else if (auto it = tagdict_.find(words[i]); it != tagdict_.end()) {
      tag = it->second;
    } else {
      tag = model_.Predict(TaggerFeatures(i, words[i], ctx, prev, prev2));
    }
    out.push_back(tag);
    prev2 = std::move(prev);
    prev = std::string(kUposTags[tag]);
  }
  return out;
}

std::vector<std::string> Tagger::TagWords(
    std::span<const std::string> words) const {
  std::vector<std::string> out;
  for (std::size_t t : TagIndices(words)) out.emplace_back(kUposTags[t]);
  return out;
}

void Tagger::Tag(std::vector<Token>& tokens) const {
  std::size_t begin = 0;
  while (begin < tokens.size()) {
    std::size_t end = begin;
    while (end < tokens.size() &&
           tokens[end].sentence_index == tokens[begin].sentence_index) {
      ++end;
    }
    std::vector<std::string> words;
    for (std::size_t i = begin; i < end; ++i) words.push_back(tokens[i].surface);
    std::vector<std::size_t> tags = TagIndices(words);
    for (std::size_t i = begin; i < end; ++i) {
      tokens[i].upos = std::string(kUposTags[tags[i - begin]]);
    }
    begin = end;
  }
}

double Tagger::Accuracy(std::span<const TaggedSentence> sentences) const {
  std::size_t correct = 0, total = 0;
  for (const auto& s : sentences) {
    auto predicted = TagWords(s.words);
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      correct += predicted[i] == s.tags[i];
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

std::string Tagger::Serialize() const {
  Json j;
  j["format_version"] = 1;
  j["iterations"] = iterations_;
  j["seed"] = seed_;
  j["tags"] = Json::array();
  for (auto t : kUposTags) j["tags"].push_back(std::string(t));
  Json dict = Json::object();
  for (const auto& [w, t] : tagdict_) dict[w] = std::string(kUposTags[t]);
  j["tagdict"] = std::move(dict);
  Json weights = Json::object();
  for (const auto& [feat, w] : model_.weights()) {
    weights[feat] = std::vector<double>(w.begin(), w.end());
  }
  j["weights"] = std::move(weights);
  return std::string(kMagic) + "\n" + j.dump() + "\n";
}

Tagger Tagger::Deserialize(std::string_view data) {
  if (!data.starts_with(kMagic) || data.size() <= kMagic.size() ||
      data[kMagic.size()] != '\n') {
    throw ModelFormatError("missing STYLOTAG1 header");
  }
  Json j;
  try {
    j = Json::parse(data.substr(kMagic.size() + 1));
  } catch (const Json::exception& e) {
    throw ModelFormatError(e.what());
  }
  if (j.value("format_version", 0) != 1) {
    throw ModelFormatError("unsupported tagger format version");
  }
  auto tags = j.at("tags").get<std::vector<std::string>>();
  if (!std::equal(tags.begin(), tags.end(), kUposTags.begin(),
                  kUposTags.end())) {
    throw ModelFormatError("tag inventory differs from UPOS");
  }
  Tagger t;
  t.iterations_ = j.at("iterations").get<int>();
  t.seed_ = j.at("seed").get<std::uint64_t>();
  for (const auto& [w, tag] : j.at("tagdict").items()) {
    t.tagdict_[w] = TagIndex(tag.get<std::string>());
  }
  std::unordered_map<std::string, TagScores> weights;
  for (const auto& [feat, arr] : j.at("weights").items()) {
    auto v = arr.get<std::vector<double>>();
    if (v.size() != kNumTags) throw ModelFormatError("bad weight row " + feat);
    TagScores s{};
    std::copy(v.begin(), v.end(), s.begin());
    weights.emplace(feat, s);
  }
  t.model_.SetWeights(std::move(weights));
  return t;
}

void Tagger::Save(const std::filesystem::path& path) const {
  WriteFile(path, Serialize());
}

Tagger Tagger::Load(const std::filesystem::path& path) {
  return Deserialize(ReadFile(path));
}

}  // namespace stylobench
