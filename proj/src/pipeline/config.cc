#include "stylobench/pipeline/config.h"

#include <set>

#include "stylobench/errors.h"
#include "stylobench/sensitivity/sensitivity.h"

namespace stylobench {
namespace {

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::optional<fs::path> OptionalPath(const Json& j, const char* key,
                                     const fs::path& base) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return Resolve(base, j[key].get<std::string>());
}

Json PathOrNull(const std::optional<fs::path>& p) {
  return p ? Json(p->string()) : Json(nullptr);
}

void CheckKeys(const Json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw ConfigInvalid(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigInvalid("unknown key '" + key + "' in " + where);
    }
  }
}

void RequireExists(const std::optional<fs::path>& p, const std::string& what) {
  if (p && !fs::exists(*p)) {
    throw ConfigInvalid(what + " does not exist: " + p->string());
  }
}

}  // namespace

AnnotationPaths AnnotationPaths::FromJson(const Json& j, const fs::path& base) {
  CheckKeys(j, {"conllu_dir", "rst", "errors", "label_map"}, "annotations");
  return {OptionalPath(j, "conllu_dir", base), OptionalPath(j, "rst", base),
          OptionalPath(j, "errors", base), OptionalPath(j, "label_map", base)};
}

Json AnnotationPaths::ToJson() const {
  return {{"conllu_dir", PathOrNull(conllu_dir)},
          {"rst", PathOrNull(rst)},
          {"errors", PathOrNull(errors)},
          {"label_map", PathOrNull(label_map)}};
}

Decoding DecodingFromJson(const Json& j) {
  CheckKeys(j, {"mode", "seed", "temperature"}, "decoding");
  std::string mode = j.value("mode", std::string("greedy"));
  if (mode == "greedy") return Decoding::Greedy();
  if (mode == "sampled") {
    double temperature = j.value("temperature", 1.0);
    if (!(temperature > 0)) throw ConfigInvalid("temperature must be positive");
    return Decoding::Sampled(j.value("seed", std::uint64_t{0}), temperature);
  }
  throw ConfigInvalid("decoding mode must be greedy or sampled, got " + mode);
}

GeneratorConfig GeneratorConfig::FromJson(const Json& j) {
  CheckKeys(j, {"backend", "max_tokens", "decoding", "http", "ngram"},
            "generator");
  GeneratorConfig g;
  g.backend = j.value("backend", g.backend);
  if (g.backend != "oracle" && g.backend != "ngram" && g.backend != "http") {
    throw ConfigInvalid("unknown generator backend " + g.backend);
  }
  g.max_tokens = j.value("max_tokens", g.max_tokens);
  if (g.max_tokens < 1) throw ConfigInvalid("max_tokens must be >= 1");
  if (j.contains("decoding")) g.decoding = DecodingFromJson(j["decoding"]);
  if (j.contains("http")) g.http = HttpEndpoint::FromJson(j["http"]);
  if (g.backend == "http" && !g.http) {
    throw ConfigInvalid("http backend needs generator.http.url");
  }
  if (j.contains("ngram")) {
    CheckKeys(j["ngram"], {"order", "add_k"}, "generator.ngram");
    g.ngram_order = j["ngram"].value("order", g.ngram_order);
    g.ngram_add_k = j["ngram"].value("add_k", g.ngram_add_k);
    if (g.ngram_order < 1 || !(g.ngram_add_k > 0)) {
      throw ConfigInvalid("n-gram order must be >= 1 and add_k positive");
    }
  }
  return g;
}

Json GeneratorConfig::ToJson() const {
  Json j = {{"backend", backend},
            {"max_tokens", max_tokens},
            {"decoding", decoding.ToJson()},
            {"ngram", {{"order", ngram_order}, {"add_k", ngram_add_k}}}};
  if (http) {
    j["http"] = {{"url", http->url},
                 {"connect_timeout_s", http->connect_timeout_s},
                 {"timeout_s", http->read_timeout_s},
                 {"attempts", http->attempts},
                 {"backoff_ms", http->backoff_ms},
                 {"api_key_env", http->api_key_env},
                 {"id", http->id}};
  }
  return j;
}

SensitivityConfig SensitivityConfig::FromJson(const Json& j) {
  CheckKeys(j, {"placements", "min_train_docs", "per_author", "attributes",
                "generator"},
            "sensitivity");
  SensitivityConfig s;
  if (j.contains("placements")) {
    const Json& p = j["placements"];
    s.placements = p.is_string() ? ParsePlacements(p.get<std::string>())
                                 : p.get<std::vector<int>>();
  }
  s.min_train_docs = j.value("min_train_docs", s.min_train_docs);
  s.per_author = j.value("per_author", s.per_author);
  s.attributes = j.value("attributes", s.attributes);
  if (j.contains("generator")) s.generator = GeneratorConfig::FromJson(j["generator"]);
  return s;
}

Json SensitivityConfig::ToJson() const {
  Json j = {{"placements", placements},
            {"min_train_docs", min_train_docs},
            {"per_author", per_author},
            {"attributes", attributes}};
  j["generator"] = generator ? generator->ToJson() : Json(nullptr);
  return j;
}

RunConfig RunConfig::FromJson(const Json& j, const fs::path& base_dir) {
  CheckKeys(j,
            {"corpus", "corpus_id", "filter", "seed", "schema", "tagger",
             "annotations", "generation_annotations", "conditioning",
             "token_granularity", "eval_split", "averaging", "generator",
             "trim", "fluency", "output_dir", "sensitivity", "scaling",
             "jobs"},
            "run config");
  RunConfig c;
  try {
    if (!j.contains("corpus")) throw ConfigInvalid("missing 'corpus'");
    c.corpus = Resolve(base_dir, j["corpus"].get<std::string>());
    c.corpus_id = j.value("corpus_id", c.corpus.stem().string());
    if (j.contains("filter")) c.filter = FilterConfig::FromJson(j["filter"]);
    c.filter.Validate();
    c.seed = j.value("seed", c.seed);
    if (j.contains("schema")) {
      const Json& s = j["schema"];
      c.schema = s.is_string()
                     ? AttributeSchema::Load(Resolve(base_dir, s.get<std::string>()))
                     : AttributeSchema::FromJson(s);
    }
    if (j.contains("tagger")) {
      const Json& t = j["tagger"];
      CheckKeys(t, {"model", "train_conllu", "iterations"}, "tagger");
      c.tagger_model = OptionalPath(t, "model", base_dir);
      c.tagger_train = OptionalPath(t, "train_conllu", base_dir);
      c.tagger_iterations = t.value("iterations", c.tagger_iterations);
      if (c.tagger_model && c.tagger_train) {
        throw ConfigInvalid("tagger: give either 'model' or 'train_conllu'");
      }
    }
    if (j.contains("annotations")) {
      c.annotations = AnnotationPaths::FromJson(j["annotations"], base_dir);
    }
    if (j.contains("generation_annotations")) {
      c.generation_annotations =
          AnnotationPaths::FromJson(j["generation_annotations"], base_dir);
    }
    std::string cond = j.value("conditioning", std::string("author"));
    if (cond != "author" && cond != "document") {
      throw ConfigInvalid("conditioning must be author or document");
    }
    c.conditioning = cond == "author" ? Conditioning::kAuthor : Conditioning::kDocument;
    std::string gran = j.value("token_granularity", std::string("pair"));
    if (gran != "pair" && gran != "two_token") {
      throw ConfigInvalid("token_granularity must be pair or two_token");
    }
    c.granularity = gran == "pair" ? TokenGranularity::kPair : TokenGranularity::kTwoToken;
    std::string split = j.value("eval_split", std::string("test"));
    if (split != "dev" && split != "test") {
      throw ConfigInvalid("eval_split must be dev or test");
    }
    c.eval_split = ParseSplit(split);
    std::string avg = j.value("averaging", std::string("per_example"));
    if (avg != "per_example" && avg != "per_author") {
      throw ConfigInvalid("averaging must be per_example or per_author");
    }
    c.averaging = avg == "per_example" ? SuccessAveraging::kPerExample
                                       : SuccessAveraging::kPerAuthor;
    if (j.contains("generator")) c.generator = GeneratorConfig::FromJson(j["generator"]);
    c.trim = j.value("trim", c.trim);
    if (!(c.trim >= 0 && c.trim < 0.5)) throw ConfigInvalid("trim must be in [0, 0.5)");
    c.fluency = j.value("fluency", c.fluency);
    c.output_dir = Resolve(base_dir, j.value("output_dir", std::string("out")));
    if (j.contains("sensitivity")) {
      c.sensitivity = SensitivityConfig::FromJson(j["sensitivity"]);
    }
    if (j.contains("scaling")) {
      CheckKeys(j["scaling"], {"budgets"}, "scaling");
      c.budgets = j["scaling"].value("budgets", c.budgets);
      for (auto b : c.budgets) {
        if (b < 1) throw ConfigInvalid("budgets must be positive");
      }
    }
    c.jobs = j.value("jobs", c.jobs);
  } catch (const Json::exception& e) {
    throw ConfigInvalid(e.what());
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const Error& e) {
    throw ConfigInvalid(e.what());
  }
  return c;
}

RunConfig RunConfig::Load(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigInvalid("no such config: " + path.string());
  Json j;
  try {
    j = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw ConfigInvalid(path.string() + ": " + e.what());
  }
  return FromJson(j, fs::absolute(path).parent_path());
}

void RunConfig::Validate() const {
  RequireExists(corpus, "corpus");
  RequireExists(tagger_model, "tagger model");
  RequireExists(tagger_train, "tagger training data");
  for (const auto* a : {&annotations, &generation_annotations}) {
    RequireExists(a->conllu_dir, "CoNLL-U directory");
    RequireExists(a->rst, "RST sidecar");
    RequireExists(a->errors, "error sidecar");
    RequireExists(a->label_map, "label map");
  }
  if (fluency && (!annotations.errors || !generation_annotations.errors)) {
    throw ConfigInvalid(
        "fluency needs annotations.errors and generation_annotations.errors "
        "(or set \"fluency\": false)");
  }
  if (schema.Has(AttributeFamily::kDiscourse) &&
      (!annotations.rst || !generation_annotations.rst)) {
    throw ConfigInvalid("the schema has discourse attributes but no RST "
                        "sidecars are configured");
  }
  if (jobs < 1) throw ConfigInvalid("jobs must be >= 1");
}

Json RunConfig::Resolved() const {
  Json j;
  j["corpus"] = corpus.string();
  j["corpus_id"] = corpus_id;
  j["filter"] = filter.ToJson();
  j["seed"] = seed;
  j["schema"] = schema.ToJson();
  j["tagger"] = {{"model", PathOrNull(tagger_model)},
                 {"train_conllu", PathOrNull(tagger_train)},
                 {"iterations", tagger_iterations}};
  j["annotations"] = annotations.ToJson();
  j["generation_annotations"] = generation_annotations.ToJson();
  j["conditioning"] = conditioning == Conditioning::kAuthor ? "author" : "document";
  j["token_granularity"] =
      granularity == TokenGranularity::kPair ? "pair" : "two_token";
  j["eval_split"] = SplitName(eval_split);
  j["averaging"] =
      averaging == SuccessAveraging::kPerExample ? "per_example" : "per_author";
  j["generator"] = generator.ToJson();
  j["trim"] = trim;
  j["fluency"] = fluency;
  j["output_dir"] = output_dir.string();
  j["sensitivity"] = sensitivity.ToJson();
  j["scaling"] = {{"budgets", budgets}};
  j["jobs"] = jobs;
  return j;
}

}  // namespace stylobench
