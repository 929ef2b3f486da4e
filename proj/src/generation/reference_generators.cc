#include "stylobench/generation/reference_generators.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "stylobench/annotation/tokenizer.h"
#include "stylobench/annotation/utf8.h"
#include "stylobench/errors.h"

namespace stylobench {
namespace {

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string JoinKey(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) key += '\x1f';
    key += tokens[i];
  }
  return key;
}

bool NoSpaceBefore(const std::string& t) {
  static const std::set<std::string> kClitics = {
      "n't", "n’t", "'s", "’s", "'m", "’m", "'d", "’d",
      "'re", "’re", "'ve", "’ve", "'ll", "’ll"};
  if (kClitics.contains(t)) return true;
  if (!utf8::IsPunctuationOnly(t)) return false;
  return t != "(" && t != "[" && t != "{" && t != "\"" && t != "“" &&
         t != "-" && t != "--" && t != "—" && t != "–" && t != "$";
}

bool NoSpaceAfter(const std::string& t) {
  return t == "(" || t == "[" || t == "{" || t == "“" || t == "$";
}

}  // namespace

OracleGenerator::OracleGenerator(std::span<const Document> docs) {
  for (const auto& d : docs) {
    Tokenizer tokenizer;
    std::string first = tokenizer.FirstSentence(d.text);
    if (!first.empty()) by_prompt_[first].push_back(d);
  }
}

GenerationResult OracleGenerator::Generate(
    const GenerationRequest& request) const {
  auto start = std::chrono::steady_clock::now();
  auto it = by_prompt_.find(request.prompt_sentence);
  if (it == by_prompt_.end()) {
    throw UnknownPrompt(request.doc_id + ": prompt is not the first sentence "
                        "of any corpus document");
  }
  const Document* chosen = &it->second.front();
  for (const auto& d : it->second) {
    if (d.doc_id == request.doc_id) chosen = &d;
  }
  return {request.doc_id, chosen->text, id(), ElapsedMs(start)};
}

NgramModel::NgramModel(int order, double add_k)
    : order_(order), add_k_(add_k), histories_(static_cast<std::size_t>(order)) {
  if (order < 1) throw ConfigInvalid("n-gram order must be >= 1");
  if (!(add_k > 0)) throw ConfigInvalid("add-k constant must be positive");
}

void NgramModel::Train(std::span<const std::string> texts) {
  std::set<std::string> vocab(vocab_.begin(), vocab_.end());
  const std::size_t pad = static_cast<std::size_t>(order_ - 1);
  for (const auto& text : texts) {
    std::vector<std::string> toks(pad, std::string(kBegin));
    for (auto& t : NgramTokens(text)) toks.push_back(std::move(t));
    toks.emplace_back(kEnd);
    for (std::size_t i = pad; i < toks.size(); ++i) {
      vocab.insert(toks[i]);
      ++tokens_;
      for (std::size_t len = 0; len <= pad; ++len) {
        std::span<const std::string> h(toks.data() + i - len, len);
        History& hist = histories_[len][JoinKey(h)];
        ++hist.next[toks[i]];
        ++hist.total;
      }
    }
  }
  vocab_.assign(vocab.begin(), vocab.end());
}

const NgramModel::History& NgramModel::Lookup(
    std::span<const std::string> context) const {
  if (tokens_ == 0) throw EmptyModel("n-gram model has no training tokens");
  std::size_t max_len = std::min<std::size_t>(order_ - 1, context.size());
  for (std::size_t len = max_len; len > 0; --len) {
    auto h = context.subspan(context.size() - len);
    auto it = histories_[len].find(JoinKey(h));
    if (it != histories_[len].end() && it->second.total > 0) return it->second;
  }
  return histories_[0].at("");
}

std::string NgramModel::Greedy(std::span<const std::string> context) const {
  const History& h = Lookup(context);
  const std::string* best = nullptr;
  std::int64_t best_count = -1;
  for (const auto& [word, count] : h.next) {  // sorted: ties keep the first
    if (count > best_count) {
      best = &word;
      best_count = count;
    }
  }
  return *best;
}

double NgramModel::Probability(std::span<const std::string> context,
                               const std::string& word) const {
  const History& h = Lookup(context);
  auto it = h.next.find(word);
  double c = it == h.next.end() ? 0.0 : static_cast<double>(it->second);
  return (c + add_k_) /
         (static_cast<double>(h.total) + add_k_ * static_cast<double>(vocab_.size()));
}

std::string NgramModel::Sample(std::span<const std::string> context,
                               double temperature, Rng& rng) const {
  const History& h = Lookup(context);
  if (!(temperature > 0)) return Greedy(context);
  std::vector<double> weights(vocab_.size());
  double total = 0;
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    auto it = h.next.find(vocab_[i]);
    double c = it == h.next.end() ? 0.0 : static_cast<double>(it->second);
    weights[i] = std::pow(c + add_k_, 1.0 / temperature);
    total += weights[i];
  }
  double r = rng.Uniform() * total;
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    r -= weights[i];
    if (r < 0) return vocab_[i];
  }
  return vocab_.back();
}

std::vector<std::string> NgramTokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t sep = text.find(PrefixEncoding::kSeparator);
  if (text.starts_with('<') && sep != std::string_view::npos) {
    std::string_view prefix = text.substr(0, sep);
    while (!prefix.empty()) {
      // Tokens are delimited by "><" since labels may contain '>'.
      std::size_t end = prefix.find("><");
      std::size_t len = end == std::string_view::npos ? prefix.size() : end + 1;
      out.emplace_back(prefix.substr(0, len));
      prefix.remove_prefix(len);
    }
    out.emplace_back(PrefixEncoding::kSeparator);
    text.remove_prefix(sep + PrefixEncoding::kSeparator.size());
  }
  for (const Token& t : TokenizeAndSegment(text).tokens) out.push_back(t.surface);
  return out;
}

std::string Detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !NoSpaceBefore(tokens[i]) && !NoSpaceAfter(tokens[i - 1])) {
      out += ' ';
    }
    out += tokens[i];
  }
  return out;
}

GenerationResult NgramGenerator::Generate(
    const GenerationRequest& request) const {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> context(static_cast<std::size_t>(model_.order() - 1),
                                   std::string(NgramModel::kBegin));
  for (auto& t : NgramTokens(request.prefix + request.prompt_sentence)) {
    context.push_back(std::move(t));
  }
  Rng rng(request.decoding.seed, request.doc_id);
  std::vector<std::string> continuation;
  for (int i = 0; i < request.max_tokens; ++i) {
    std::string next =
        request.decoding.mode == Decoding::Mode::kGreedy
            ? model_.Greedy(context)
            : model_.Sample(context, request.decoding.temperature, rng);
    if (next == NgramModel::kEnd) break;
    context.push_back(next);
    continuation.push_back(std::move(next));
  }
  std::string text = request.prompt_sentence;
  if (!continuation.empty()) {
    if (!text.empty() && !NoSpaceBefore(continuation.front())) text += ' ';
    text += Detokenize(continuation);
  }
  return {request.doc_id, std::move(text), id(), ElapsedMs(start)};
}

}  // namespace stylobench
