#include "stylobench/generation/generator.h"

#include <optional>

#include "stylobench/errors.h"
#include "stylobench/parallel.h"

namespace stylobench {

Json Decoding::ToJson() const {
  if (mode == Mode::kGreedy) return {{"mode", "greedy"}};
  return {{"mode", "sampled"}, {"seed", seed}, {"temperature", temperature}};
}

OrderedJson ResultToJson(const GenerationResult& r) {
  OrderedJson j;
  j["doc_id"] = r.doc_id;
  j["generator_id"] = r.generator_id;
  j["text"] = r.generated_text;
  j["latency_ms"] = r.latency_ms;
  return j;
}

GenerationResult ResultFromJson(const Json& j) {
  try {
    return {j.at("doc_id").get<std::string>(), j.at("text").get<std::string>(),
            j.value("generator_id", std::string()),
            j.value("latency_ms", 0.0)};
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("generation record: ") + e.what());
  }
}

GenerationRequest RequestFor(const InferenceExample& e, int max_tokens,
                             const Decoding& decoding) {
  return {e.doc_id, e.prefix, e.prompt_sentence, max_tokens, decoding};
}

std::vector<GenerationResult> GenerateAll(
    const Generator& generator, std::span<const GenerationRequest> requests,
    int jobs) {
  std::vector<std::optional<GenerationResult>> slots(requests.size());
  ParallelFor(requests.size(), jobs,
              [&](std::size_t i) { slots[i] = generator.Generate(requests[i]); });
  std::vector<GenerationResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace stylobench
