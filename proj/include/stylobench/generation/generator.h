#ifndef STYLOBENCH_GENERATION_GENERATOR_H_
#define STYLOBENCH_GENERATION_GENERATOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stylobench/io.h"
#include "stylobench/prefix/prefix.h"

namespace stylobench {

struct Decoding {
  enum class Mode { kGreedy, kSampled };
  Mode mode = Mode::kGreedy;
  std::uint64_t seed = 0;
  double temperature = 1.0;

  static Decoding Greedy() { return {}; }
  static Decoding Sampled(std::uint64_t seed, double temperature = 1.0) {
    return {Mode::kSampled, seed, temperature};
  }
  Json ToJson() const;
};

struct GenerationRequest {
  std::string doc_id;
  std::string prefix;  // may be empty for unconditioned baselines
  std::string prompt_sentence;
  int max_tokens = 1024;
  Decoding decoding;
};

struct GenerationResult {
  std::string doc_id;
  std::string generated_text;  // starts with the prompt sentence
  std::string generator_id;
  double latency_ms = 0;
};

OrderedJson ResultToJson(const GenerationResult& r);
GenerationResult ResultFromJson(const Json& j);

GenerationRequest RequestFor(const InferenceExample& e, int max_tokens,
                             const Decoding& decoding);

// Implementations must be safe to call from several threads at once.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string id() const = 0;
  virtual GenerationResult Generate(const GenerationRequest& request) const = 0;
};

// Runs the requests with at most `jobs` in flight. Results come back in
// request order. If any request fails, the first failure (by position) is
// rethrown once all workers have stopped.
std::vector<GenerationResult> GenerateAll(const Generator& generator,
                                          std::span<const GenerationRequest> requests,
                                          int jobs);

}  // namespace stylobench

#endif  // STYLOBENCH_GENERATION_GENERATOR_H_
