#ifndef STYLOBENCH_GENERATION_HTTP_GENERATOR_H_
#define STYLOBENCH_GENERATION_HTTP_GENERATOR_H_

#include <string>

#include "stylobench/generation/generator.h"

namespace stylobench {

struct HttpEndpoint {
  std::string url;  // http://host:port/path or https://...
  double connect_timeout_s = 5;
  double read_timeout_s = 120;
  int attempts = 3;
  int backoff_ms = 250;  // doubled after every failed attempt
  // Name of the environment variable holding a bearer token, if any.
  std::string api_key_env = "STYLOBENCH_API_KEY";
  std::string id = "http";

  static HttpEndpoint FromJson(const Json& j);
};

// Client for the JSON-over-HTTP generator protocol (docs/generator-protocol.md).
class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(HttpEndpoint endpoint);

  std::string id() const override { return endpoint_.id; }
  GenerationResult Generate(const GenerationRequest& request) const override;

  // The JSON body sent for `request`.
  static Json RequestBody(const GenerationRequest& request);

 private:
  HttpEndpoint endpoint_;
  std::string scheme_host_port_;
  std::string path_;
  std::string api_key_;
};

}  // namespace stylobench

#endif  // STYLOBENCH_GENERATION_HTTP_GENERATOR_H_
