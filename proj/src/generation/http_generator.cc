#include "stylobench/generation/http_generator.h"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "stylobench/errors.h"

namespace stylobench {
namespace {

enum class Failure { kNone, kUnreachable, kTimeout, kServer, kMalformed };

}  // namespace

HttpEndpoint HttpEndpoint::FromJson(const Json& j) {
  HttpEndpoint e;
  e.url = j.at("url").get<std::string>();
  e.connect_timeout_s = j.value("connect_timeout_s", e.connect_timeout_s);
  e.read_timeout_s = j.value("timeout_s", e.read_timeout_s);
  e.attempts = j.value("attempts", e.attempts);
  e.backoff_ms = j.value("backoff_ms", e.backoff_ms);
  e.api_key_env = j.value("api_key_env", e.api_key_env);
  e.id = j.value("id", e.id);
  return e;
}

HttpGenerator::HttpGenerator(HttpEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  const std::string& url = endpoint_.url;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos ||
      (!url.starts_with("http://") && !url.starts_with("https://"))) {
    throw ConfigInvalid("generator url must start with http:// or https://: " +
                        url);
  }
  std::size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (endpoint_.attempts < 1) throw ConfigInvalid("attempts must be >= 1");
  if (!endpoint_.api_key_env.empty()) {
    if (const char* key = std::getenv(endpoint_.api_key_env.c_str())) {
      api_key_ = key;
    }
  }
}

Json HttpGenerator::RequestBody(const GenerationRequest& request) {
  return {{"prefix", request.prefix},
          {"prompt", request.prompt_sentence},
          {"max_tokens", request.max_tokens},
          {"decoding", request.decoding.ToJson()}};
}

GenerationResult HttpGenerator::Generate(const GenerationRequest& request) const {
  const std::string body = RequestBody(request).dump();
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  auto start = std::chrono::steady_clock::now();
  Failure failure = Failure::kNone;
  std::string detail;
  int backoff = endpoint_.backoff_ms;
  for (int attempt = 1; attempt <= endpoint_.attempts; ++attempt) {
    httplib::Client client(scheme_host_port_);
    auto to_duration = [](double s) {
      return std::chrono::microseconds(static_cast<std::int64_t>(s * 1e6));
    };
    client.set_connection_timeout(to_duration(endpoint_.connect_timeout_s));
    client.set_read_timeout(to_duration(endpoint_.read_timeout_s));
    client.set_write_timeout(to_duration(endpoint_.read_timeout_s));

    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      httplib::Error err = res.error();
      failure = err == httplib::Error::ConnectionTimeout ||
                        err == httplib::Error::Read ||
                        err == httplib::Error::Write
                    ? Failure::kTimeout
                    : Failure::kUnreachable;
      detail = httplib::to_string(err);
    } else if (res->status >= 500) {
      failure = Failure::kServer;
      detail = "HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      throw MalformedResponse(request.doc_id + ": HTTP " +
                              std::to_string(res->status));
    } else {
      Json j = Json::parse(res->body, nullptr, /*allow_exceptions=*/false);
      if (j.is_discarded() || !j.is_object() || !j.contains("text") ||
          !j["text"].is_string()) {
        throw MalformedResponse(request.doc_id +
                                ": expected a JSON object with a \"text\" string");
      }
      std::string text = j["text"].get<std::string>();
      if (!text.starts_with(request.prompt_sentence)) {
        text = text.empty() ? request.prompt_sentence
                            : request.prompt_sentence + " " + text;
      }
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      return {request.doc_id, std::move(text), id(), ms};
    }
    if (attempt < endpoint_.attempts) {
      spdlog::warn("{}: attempt {} failed ({}), retrying in {} ms",
                   request.doc_id, attempt, detail, backoff);
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
  }
  std::string msg = endpoint_.url + " after " +
                    std::to_string(endpoint_.attempts) + " attempts: " + detail;
  switch (failure) {
    case Failure::kTimeout:
      throw Timeout(msg);
    case Failure::kServer:
      throw MalformedResponse(msg);
    default:
      throw EndpointUnreachable(msg);
  }
}

}  // namespace stylobench
