#include "stylobench/pipeline/pipeline.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>

#include "stylobench/errors.h"
#include "stylobench/generation/http_generator.h"
#include "stylobench/parallel.h"

namespace stylobench {
namespace {

// Content hash of a file, or of every regular file under a directory.
std::string PathHash(const fs::path& path) {
  if (!fs::exists(path)) return "absent";
  if (!fs::is_directory(path)) return Sha256Hex(ReadFile(path));
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string acc;
  for (const auto& f : files) {
    acc += fs::relative(f, path).generic_string() + ":" +
           Sha256Hex(ReadFile(f)) + "\n";
  }
  return Sha256Hex(acc);
}

std::vector<Document> ReadDocs(const fs::path& path) { return LoadCorpus(path); }

std::int64_t Words(std::span<const Document> docs) {
  std::int64_t n = 0;
  for (const auto& d : docs) n += static_cast<std::int64_t>(WhitespaceWordCount(d.text));
  return n;
}

std::map<std::string, AttributeVector> DocIndex(std::span<const DocVector> vectors) {
  std::map<std::string, AttributeVector> out;
  for (const auto& v : vectors) out.emplace(v.doc_id, v.vector);
  return out;
}

std::vector<DocVector> Restrict(std::span<const DocVector> vectors,
                                std::span<const Document> docs) {
  std::set<std::string> ids;
  for (const auto& d : docs) ids.insert(d.doc_id);
  std::vector<DocVector> out;
  for (const auto& v : vectors) {
    if (ids.contains(v.doc_id)) out.push_back(v);
  }
  return out;
}

// Attributes the sensitivity study perturbs by default: those it can
// re-extract from raw generated text (lexical and POS).
std::vector<std::string> DefaultSensitivityAttributes(const AttributeSchema& schema) {
  std::vector<std::string> out;
  for (const auto& a : schema.attributes()) {
    if (a.family == AttributeFamily::kLexical || a.family == AttributeFamily::kPos) {
      out.push_back(a.name);
    }
  }
  return out;
}

std::vector<std::string> TrainingTexts(const fs::path& prefixed) {
  std::vector<std::string> texts;
  for (const auto& r : ReadJsonl(prefixed)) texts.push_back(r.at("text").get<std::string>());
  return texts;
}

struct EvalArtifacts {
  std::vector<InferenceExample> inference;
  TargetIndex targets;
};

EvalArtifacts BuildEvalArtifacts(std::span<const Document> eval_docs,
                                 const BinnedIndex& binned,
                                 const PrefixEncoding& enc,
                                 Conditioning conditioning) {
  EvalArtifacts a;
  a.inference = BuildInferenceExamples(eval_docs, binned, enc, conditioning);
  for (const auto& d : eval_docs) {
    a.targets[d.doc_id] = ConditioningVector(d, binned, conditioning);
  }
  return a;
}

std::vector<GenerationRequest> Requests(std::span<const InferenceExample> examples,
                                        const GeneratorConfig& g) {
  std::vector<GenerationRequest> out;
  for (const auto& e : examples) out.push_back(RequestFor(e, g.max_tokens, g.decoding));
  return out;
}

}  // namespace

AnnotatorBundle::AnnotatorBundle(const AnnotationPaths& paths,
                                 const std::optional<fs::path>& tagger_model,
                                 const AttributeSchema& schema) {
  if (tagger_model) tagger_ = Tagger::Load(*tagger_model);
  if (paths.label_map) label_map_ = DeprelMap::Load(*paths.label_map);
  if (paths.rst) rst_ = ParseSidecar(ReadJsonl(*paths.rst));
  if (paths.errors) errors_ = ParseSidecar(ReadJsonl(*paths.errors));
  AnnotationSources sources;
  sources.tagger = tagger();
  sources.conllu_dir = paths.conllu_dir;
  sources.label_map = label_map_ ? &*label_map_ : nullptr;
  sources.discourse = rst_ ? &*rst_ : nullptr;
  sources.errors = errors_ ? &*errors_ : nullptr;
  sources.discourse_names = schema.discourse_relations();
  annotator_ = std::make_unique<Annotator>(std::move(sources));
}

std::vector<DocVector> ReadDocVectors(const fs::path& path, const SchemaPtr& schema) {
  std::vector<DocVector> out;
  for (const auto& r : ReadJsonl(path)) {
    out.push_back({r.at("doc_id").get<std::string>(),
                   r.value("author_id", std::string()), VectorFromJson(r, schema)});
  }
  return out;
}

void WriteDocVectors(const fs::path& path, std::span<const DocVector> vectors) {
  std::vector<OrderedJson> records;
  for (const auto& v : vectors) {
    OrderedJson j = VectorToJson(v.vector, "doc_id", v.doc_id);
    j["author_id"] = v.author_id;
    records.push_back(std::move(j));
  }
  WriteJsonl(path, records);
}

std::vector<AnnotatedDocument> ReadAnnotated(const fs::path& path) {
  std::vector<AnnotatedDocument> out;
  for (const auto& r : ReadJsonl(path)) out.push_back(AnnotatedFromJson(r));
  return out;
}

std::map<std::string, AttributeVector> AuthorVectors(std::span<const DocVector> vectors) {
  std::map<std::string, std::vector<AttributeVector>> grouped;
  for (const auto& v : vectors) grouped[v.author_id].push_back(v.vector);
  std::map<std::string, AttributeVector> out;
  for (const auto& [author, vs] : grouped) out.emplace(author, AuthorVector(vs));
  return out;
}

BinnedIndex BinIndex(const BinModel& model,
                     const std::map<std::string, AttributeVector>& vectors) {
  BinnedIndex out;
  for (const auto& [key, v] : vectors) out.emplace(key, model.BinVector(v));
  return out;
}

TargetIndex ReadTargets(const fs::path& path) {
  TargetIndex out;
  for (const auto& r : ReadOrderedJsonl(path)) {
    out[r.at("doc_id").get<std::string>()] = BinnedFromJson(r);
  }
  return out;
}

std::unique_ptr<Generator> MakeGenerator(const GeneratorConfig& config,
                                         std::span<const Document> corpus,
                                         std::span<const std::string> training_texts) {
  if (config.backend == "oracle") return std::make_unique<OracleGenerator>(corpus);
  if (config.backend == "ngram") {
    NgramModel model(config.ngram_order, config.ngram_add_k);
    model.Train(training_texts);
    return std::make_unique<NgramGenerator>(std::move(model));
  }
  if (config.backend == "http") {
    if (!config.http) throw ConfigInvalid("http backend needs an endpoint");
    return std::make_unique<HttpGenerator>(*config.http);
  }
  throw ConfigInvalid("unknown generator backend " + config.backend);
}

const std::vector<std::string>& AllStages() {
  static const std::vector<std::string> kStages = {
      "filter", "split",    "tagger",   "annotate",    "extract",
      "author_vectors",     "bins",     "prefix",      "generate",
      "evaluate",           "sensitivity", "scaling"};
  return kStages;
}

const std::vector<std::string>& CoreStages() {
  static const std::vector<std::string> kStages(AllStages().begin(),
                                                AllStages().end() - 2);
  return kStages;
}

Pipeline::Pipeline(RunConfig config, PipelineOptions options)
    : config_(std::move(config)),
      schema_(std::make_shared<AttributeSchema>(config_.schema)),
      options_(options) {}

std::optional<fs::path> Pipeline::TaggerPath() const {
  if (config_.tagger_model) return config_.tagger_model;
  if (config_.tagger_train) return Out("tagger.model");
  return std::nullopt;
}

std::vector<Document> Pipeline::Filtered() const { return ReadDocs(Out("filtered.jsonl")); }

std::vector<Document> Pipeline::SplitDocs(Split split) const {
  return SelectSplit(Filtered(),
                     SplitAssignment::FromJsonl(ReadJsonl(Out("splits.jsonl"))), split);
}

StageStatus Pipeline::RunStage(const std::string& name,
                               const std::vector<fs::path>& inputs,
                               const Json& params,
                               const std::vector<fs::path>& outputs,
                               const Body& body) {
  std::string material = name + "\n" + params.dump() + "\n";
  for (const auto& in : inputs) material += PathHash(in) + "\n";
  const std::string key = Sha256Hex(material);
  const fs::path record_path = Out(".cache") / (name + ".json");

  if (!options_.force && fs::exists(record_path)) {
    Json record = Json::parse(ReadFile(record_path), nullptr, false);
    bool hit = !record.is_discarded() && record.value("key", "") == key;
    for (const auto& out : outputs) {
      const std::string rel = fs::relative(out, config_.output_dir).generic_string();
      hit = hit && record.contains("outputs") && record["outputs"].contains(rel) &&
            record["outputs"][rel] == PathHash(out);
    }
    if (hit) {
      spdlog::info("stage {}: up to date", name);
      return StageStatus::kCached;
    }
  }

  spdlog::info("stage {}: running", name);
  try {
    body();
  } catch (const StageFailed&) {
    throw;
  } catch (const std::exception& e) {
    throw StageFailed(name, e.what());
  }
  Json record;
  record["key"] = key;
  record["outputs"] = Json::object();
  for (const auto& out : outputs) {
    record["outputs"][fs::relative(out, config_.output_dir).generic_string()] =
        PathHash(out);
  }
  WriteFile(record_path, record.dump(2) + "\n");
  return StageStatus::kRan;
}

StageStatus Pipeline::Filter() {
  return RunStage("filter", {config_.corpus}, config_.filter.ToJson(),
                  {Out("filtered.jsonl")}, [&] {
                    auto docs = ReadDocs(config_.corpus);
                    auto kept = FilterCorpus(docs, config_.filter);
                    std::set<std::string> authors;
                    for (const auto& d : kept) authors.insert(d.author_id);
                    spdlog::info("filter: kept {} of {} documents, {} authors",
                                 kept.size(), docs.size(), authors.size());
                    SaveCorpus(Out("filtered.jsonl"), kept);
                  });
}

StageStatus Pipeline::SplitStage() {
  return RunStage("split", {Out("filtered.jsonl")}, {{"seed", config_.seed}},
                  {Out("splits.jsonl")}, [&] {
                    auto assignment = SplitCorpus(Filtered(), config_.seed);
                    WriteJsonl(Out("splits.jsonl"), assignment.ToJsonl());
                  });
}

StageStatus Pipeline::TrainTagger() {
  if (!config_.tagger_train) return StageStatus::kCached;
  Json params = {{"iterations", config_.tagger_iterations}, {"seed", config_.seed}};
  const auto& map_path = config_.annotations.label_map;
  std::vector<fs::path> inputs = {*config_.tagger_train};
  if (map_path) inputs.push_back(*map_path);
  return RunStage("tagger", inputs, params, {Out("tagger.model")}, [&] {
    std::optional<DeprelMap> map;
    if (map_path) map = DeprelMap::Load(*map_path);
    auto sentences = ParseConllu(ReadFile(*config_.tagger_train), map ? &*map : nullptr);
    auto tagged = ToTaggedSentences(sentences);
    TaggerTrainOptions opts;
    opts.iterations = config_.tagger_iterations;
    opts.seed = config_.seed;
    TaggerTrainReport report;
    Tagger tagger = Tagger::Train(tagged, opts, {}, &report);
    spdlog::info("tagger: trained on {} sentences, {} tokens", report.sentences,
                 report.tokens);
    tagger.Save(Out("tagger.model"));
  });
}

StageStatus Pipeline::Annotate() {
  std::vector<fs::path> inputs = {Out("filtered.jsonl")};
  if (auto t = TaggerPath()) inputs.push_back(*t);
  const AnnotationPaths& a = config_.annotations;
  for (const auto& p : {a.conllu_dir, a.rst, a.errors, a.label_map}) {
    if (p) inputs.push_back(*p);
  }
  Json params = {{"annotations", a.ToJson()},
                 {"discourse", config_.schema.discourse_relations()}};
  return RunStage("annotate", inputs, params, {Out("annotated.jsonl")}, [&] {
    AnnotatorBundle bundle(a, TaggerPath(), config_.schema);
    auto docs = Filtered();
    std::vector<OrderedJson> records(docs.size());
    ParallelFor(docs.size(), config_.jobs, [&](std::size_t i) {
      records[i] = AnnotatedToJson(bundle.annotator().Annotate(docs[i]));
    });
    WriteJsonl(Out("annotated.jsonl"), records);
  });
}

StageStatus Pipeline::ExtractStage() {
  return RunStage("extract", {Out("annotated.jsonl")}, config_.schema.ToJson(),
                  {Out("doc_vectors.jsonl")}, [&] {
                    auto annotated = ReadAnnotated(Out("annotated.jsonl"));
                    std::vector<DocVector> vectors(annotated.size());
                    ParallelFor(annotated.size(), config_.jobs, [&](std::size_t i) {
                      const auto& doc = annotated[i].doc;
                      vectors[i] = {doc.doc_id, doc.author_id,
                                    Extract(annotated[i], schema_)};
                    });
                    WriteDocVectors(Out("doc_vectors.jsonl"), vectors);
                  });
}

StageStatus Pipeline::AuthorVectorsStage() {
  return RunStage(
      "author_vectors", {Out("doc_vectors.jsonl"), Out("splits.jsonl"), Out("filtered.jsonl")},
      config_.schema.ToJson(), {Out("author_vectors.jsonl")}, [&] {
        auto train = Restrict(ReadDocVectors(Out("doc_vectors.jsonl"), schema_),
                              SplitDocs(Split::kTrain));
        std::vector<OrderedJson> records;
        for (const auto& [author, v] : AuthorVectors(train)) {
          records.push_back(VectorToJson(v, "author_id", author));
        }
        WriteJsonl(Out("author_vectors.jsonl"), records);
      });
}

StageStatus Pipeline::Bins() {
  Json params = {{"corpus_id", config_.corpus_id}, {"schema", config_.schema.ToJson()}};
  return RunStage(
      "bins", {Out("doc_vectors.jsonl"), Out("splits.jsonl"), Out("filtered.jsonl")},
      params, {Out("bin_model.json")}, [&] {
        auto train = Restrict(ReadDocVectors(Out("doc_vectors.jsonl"), schema_),
                              SplitDocs(Split::kTrain));
        std::vector<AttributeVector> vs;
        for (const auto& v : train) vs.push_back(v.vector);
        BinFitOptions opts;
        opts.corpus_id = config_.corpus_id;
        BinModel::Fit(ColumnsOf(vs), opts).Save(Out("bin_model.json"));
      });
}

StageStatus Pipeline::Prefix() {
  Json params = {{"conditioning", config_.Resolved()["conditioning"]},
                 {"token_granularity", config_.Resolved()["token_granularity"]},
                 {"eval_split", SplitName(config_.eval_split)}};
  return RunStage(
      "prefix",
      {Out("filtered.jsonl"), Out("splits.jsonl"), Out("bin_model.json"),
       Out("author_vectors.jsonl"), Out("doc_vectors.jsonl")},
      params,
      {Out("train_prefixed.jsonl"), Out("vocab.txt"), Out("inference.jsonl"),
       Out("targets.jsonl")},
      [&] {
        BinModel model = BinModel::Load(Out("bin_model.json"));
        PrefixEncoding enc(model, config_.granularity);
        std::map<std::string, AttributeVector> vectors;
        if (config_.conditioning == Conditioning::kAuthor) {
          for (const auto& r : ReadJsonl(Out("author_vectors.jsonl"))) {
            vectors.emplace(r.at("author_id").get<std::string>(),
                            VectorFromJson(r, schema_));
          }
        } else {
          vectors = DocIndex(ReadDocVectors(Out("doc_vectors.jsonl"), schema_));
        }
        BinnedIndex binned = BinIndex(model, vectors);

        WriteJsonl(Out("train_prefixed.jsonl"),
                   BuildTrainingFile(SplitDocs(Split::kTrain), binned, enc,
                                     config_.conditioning));
        std::string vocab;
        for (const auto& t : enc.Vocabulary()) vocab += t + "\n";
        WriteFile(Out("vocab.txt"), vocab);

        auto eval = BuildEvalArtifacts(SplitDocs(config_.eval_split), binned, enc,
                                       config_.conditioning);
        std::vector<OrderedJson> infer, targets;
        for (const auto& e : eval.inference) {
          infer.push_back(InferenceToJson(e));
          targets.push_back(BinnedToJson(eval.targets.at(e.doc_id), "doc_id", e.doc_id));
        }
        WriteJsonl(Out("inference.jsonl"), infer);
        WriteJsonl(Out("targets.jsonl"), targets);
      });
}

StageStatus Pipeline::Generate() {
  const GeneratorConfig& g = config_.generator;
  std::vector<fs::path> inputs = {Out("inference.jsonl")};
  if (g.backend == "oracle") inputs.push_back(Out("filtered.jsonl"));
  if (g.backend == "ngram") inputs.push_back(Out("train_prefixed.jsonl"));
  return RunStage("generate", inputs, g.ToJson(), {Out("generations.jsonl")}, [&] {
    std::vector<InferenceExample> examples;
    for (const auto& r : ReadJsonl(Out("inference.jsonl"))) {
      examples.push_back(InferenceFromJson(r));
    }
    std::vector<Document> corpus;
    std::vector<std::string> texts;
    if (g.backend == "oracle") corpus = Filtered();
    if (g.backend == "ngram") texts = TrainingTexts(Out("train_prefixed.jsonl"));
    auto generator = MakeGenerator(g, corpus, texts);
    auto requests = Requests(examples, g);
    std::vector<OrderedJson> records;
    for (const auto& r : GenerateAll(*generator, requests, config_.jobs)) {
      records.push_back(ResultToJson(r));
    }
    WriteJsonl(Out("generations.jsonl"), records);
  });
}

StageStatus Pipeline::EvaluateStage() {
  std::vector<fs::path> inputs = {Out("generations.jsonl"), Out("targets.jsonl"),
                                  Out("bin_model.json"), Out("annotated.jsonl")};
  if (auto t = TaggerPath()) inputs.push_back(*t);
  const AnnotationPaths& a = config_.generation_annotations;
  for (const auto& p : {a.conllu_dir, a.rst, a.errors, a.label_map}) {
    if (p) inputs.push_back(*p);
  }
  Json params = {{"generation_annotations", a.ToJson()},
                 {"schema", config_.schema.ToJson()},
                 {"trim", config_.trim},
                 {"fluency", config_.fluency},
                 {"averaging", config_.Resolved()["averaging"]}};
  return RunStage(
      "evaluate", inputs, params,
      {Out("report.json"), Out("report.txt"), Out("outcomes.jsonl")}, [&] {
        BinModel model = BinModel::Load(Out("bin_model.json"));
        AnnotatorBundle bundle(a, TaggerPath(), config_.schema);
        std::vector<GenerationResult> generations;
        for (const auto& r : ReadJsonl(Out("generations.jsonl"))) {
          generations.push_back(ResultFromJson(r));
        }
        std::set<std::string> ids;
        for (const auto& g : generations) ids.insert(g.doc_id);
        std::vector<AnnotatedDocument> gold;
        for (auto& d : ReadAnnotated(Out("annotated.jsonl"))) {
          if (ids.contains(d.doc.doc_id)) gold.push_back(std::move(d));
        }
        EvalInputs in;
        in.model = &model;
        in.schema = schema_;
        in.annotator = &bundle.annotator();
        in.gold = gold;
        in.trim = config_.trim;
        in.averaging = config_.averaging;
        in.fluency = config_.fluency;
        in.jobs = config_.jobs;

        std::map<std::string, const AnnotatedDocument*> gold_by_id;
        for (const auto& g : gold) gold_by_id[g.doc.doc_id] = &g;
        TargetIndex targets = ReadTargets(Out("targets.jsonl"));
        std::vector<ExampleOutcome> outcomes(generations.size());
        ParallelFor(generations.size(), config_.jobs, [&](std::size_t i) {
          const auto& g = generations[i];
          auto t = targets.find(g.doc_id);
          auto d = gold_by_id.find(g.doc_id);
          if (t == targets.end() || d == gold_by_id.end()) {
            throw MalformedInput("generation " + g.doc_id +
                                 " has no target or gold document");
          }
          outcomes[i] = EvaluateGeneration(in, g, d->second->doc.author_id, t->second);
        });
        EvalReport report = BuildReport(in, outcomes);

        std::vector<OrderedJson> rows;
        for (const auto& o : outcomes) {
          OrderedJson r;
          r["doc_id"] = o.doc_id;
          r["author_id"] = o.author_id;
          r["failures"] = o.failures;
          rows.push_back(std::move(r));
        }
        WriteJsonl(Out("outcomes.jsonl"), rows);
        WriteFile(Out("report.json"), report.ToJson().dump(2) + "\n");
        WriteFile(Out("report.txt"), report.ToTable(true));
        spdlog::info("evaluate: mean success {:.2f}, median RI {:.2f}{}",
                     report.summary.mean_success_rate,
                     report.summary.median_relative_improvement,
                     report.fluency ? fmt::format(", fluency {:.2f}", report.fluency->score)
                                    : std::string());
      });
}

StageStatus Pipeline::SensitivityStage() {
  const SensitivityConfig& s = config_.sensitivity;
  const GeneratorConfig& g = s.generator ? *s.generator : config_.generator;
  std::vector<fs::path> inputs = {Out("filtered.jsonl"), Out("splits.jsonl"),
                                  Out("doc_vectors.jsonl"), Out("bin_model.json")};
  if (auto t = TaggerPath()) inputs.push_back(*t);
  Json params = {{"sensitivity", s.ToJson()}, {"generator", g.ToJson()},
                 {"seed", config_.seed}, {"schema", config_.schema.ToJson()}};
  return RunStage(
      "sensitivity", inputs, params, {Out("sensitivity.csv"), Out("sensitivity.json")},
      [&] {
        BinModel model = BinModel::Load(Out("bin_model.json"));
        std::map<std::string, std::size_t> train_counts;
        for (const auto& d : SplitDocs(Split::kTrain)) ++train_counts[d.author_id];
        auto docs = SelectSensitivityDocs(SplitDocs(Split::kDev), train_counts,
                                          s.min_train_docs, s.per_author, config_.seed);
        std::vector<std::string> attrs =
            s.attributes.empty() ? DefaultSensitivityAttributes(config_.schema)
                                 : s.attributes;

        // Generated text only has the tokenizer and tagger available, so the
        // reference values are re-extracted the same way.
        AnnotatorBundle bundle(AnnotationPaths{}, TaggerPath(), config_.schema);
        auto gold_vectors = DocIndex(ReadDocVectors(Out("doc_vectors.jsonl"), schema_));
        std::vector<SensitivityExample> examples;
        for (const auto& d : docs) {
          SensitivityExample ex{d.doc_id, d.author_id, FirstSentence(d.text),
                                model.BinVector(gold_vectors.at(d.doc_id)), {}};
          PartialVector pv =
              ExtractPartial(bundle.annotator().Annotate(d), config_.schema);
          for (const auto& name : attrs) {
            auto idx = config_.schema.IndexOf(name);
            if (!idx) throw UnknownAttribute(name);
            if (pv.values[*idx]) ex.reference[name] = *pv.values[*idx];
          }
          examples.push_back(std::move(ex));
        }
        spdlog::info("sensitivity: {} dev examples", examples.size());

        std::vector<std::string> texts;
        if (g.backend == "ngram") texts = TrainingTexts(Out("train_prefixed.jsonl"));
        auto filtered = Filtered();
        auto generator = MakeGenerator(g, filtered, texts);
        EvalInputs in;
        in.model = &model;
        in.schema = schema_;
        in.annotator = &bundle.annotator();
        in.jobs = config_.jobs;
        PrefixEncoding enc(model, config_.granularity);
        SensitivityRun run = RunSensitivity(examples, in, enc, *generator, s.placements,
                                            attrs, g.max_tokens, g.decoding);
        WriteFile(Out("sensitivity.csv"), CellsToCsv(run.cells));
        WriteFile(Out("sensitivity.json"),
                  CellsToJson(run.cells, run.perturbations.size()).dump(2) + "\n");
      });
}

std::vector<ScalingRow> Pipeline::RunScaling() const {
  auto train_docs = SplitDocs(Split::kTrain);
  auto eval_docs = SplitDocs(config_.eval_split);
  auto all_vectors = ReadDocVectors(Out("doc_vectors.jsonl"), schema_);
  auto filtered = Filtered();
  const GeneratorConfig& g = config_.generator;
  AnnotatorBundle bundle(config_.generation_annotations, TaggerPath(), config_.schema);

  std::set<std::string> eval_ids;
  for (const auto& d : eval_docs) eval_ids.insert(d.doc_id);
  std::vector<AnnotatedDocument> gold;
  for (auto& d : ReadAnnotated(Out("annotated.jsonl"))) {
    if (eval_ids.contains(d.doc.doc_id)) gold.push_back(std::move(d));
  }

  std::vector<ScalingRow> rows;
  for (std::int64_t budget : config_.budgets) {
    auto subset = BudgetSubset(train_docs, budget, config_.seed);
    auto subset_vectors = Restrict(all_vectors, subset);
    std::vector<AttributeVector> vs;
    for (const auto& v : subset_vectors) vs.push_back(v.vector);
    BinFitOptions opts;
    opts.corpus_id = config_.corpus_id + "@" + std::to_string(budget);
    BinModel model = BinModel::Fit(ColumnsOf(vs), opts);
    PrefixEncoding enc(model, config_.granularity);

    BinnedIndex binned =
        config_.conditioning == Conditioning::kAuthor
            ? BinIndex(model, AuthorVectors(subset_vectors))
            : BinIndex(model, DocIndex(Restrict(all_vectors, eval_docs)));
    auto artifacts = BuildEvalArtifacts(eval_docs, binned, enc, config_.conditioning);

    std::vector<std::string> texts;
    if (g.backend == "ngram") {
      for (const auto& r : BuildTrainingFile(subset, binned, enc, config_.conditioning)) {
        texts.push_back(r.at("text").get<std::string>());
      }
    }
    auto generator = MakeGenerator(g, filtered, texts);
    auto generations =
        GenerateAll(*generator, Requests(artifacts.inference, g), config_.jobs);

    EvalInputs in;
    in.model = &model;
    in.schema = schema_;
    in.annotator = &bundle.annotator();
    in.gold = gold;
    in.trim = config_.trim;
    in.averaging = config_.averaging;
    in.fluency = config_.fluency;
    in.jobs = config_.jobs;
    EvalReport report = Evaluate(in, artifacts.targets, generations);
    spdlog::info("scaling: budget {} -> {} train docs, mean success {:.2f}", budget,
                 subset.size(), report.summary.mean_success_rate);
    rows.push_back({budget, subset.size(), Words(subset), std::move(report),
                    std::move(model)});
  }
  return rows;
}

StageStatus Pipeline::ScalingStage() {
  std::vector<fs::path> inputs = {Out("filtered.jsonl"), Out("splits.jsonl"),
                                  Out("doc_vectors.jsonl"), Out("annotated.jsonl")};
  if (auto t = TaggerPath()) inputs.push_back(*t);
  const AnnotationPaths& a = config_.generation_annotations;
  for (const auto& p : {a.conllu_dir, a.rst, a.errors, a.label_map}) {
    if (p) inputs.push_back(*p);
  }
  Json params = config_.Resolved();
  params.erase("output_dir");
  params.erase("jobs");
  params.erase("sensitivity");
  std::vector<fs::path> outputs = {Out("scaling.json"), Out("scaling.csv")};
  for (auto b : config_.budgets) {
    outputs.push_back(Out("scaling") / std::to_string(b) / "bin_model.json");
    outputs.push_back(Out("scaling") / std::to_string(b) / "report.json");
  }
  return RunStage("scaling", inputs, params, outputs, [&] {
    auto rows = RunScaling();
    OrderedJson table = OrderedJson::array();
    std::string csv =
        "budget,train_docs,train_words,mean_success_rate,median_relative_improvement,"
        "fluency_score\n";
    for (const auto& r : rows) {
      fs::path dir = Out("scaling") / std::to_string(r.budget);
      r.bins.Save(dir / "bin_model.json");
      WriteFile(dir / "report.json", r.report.ToJson().dump(2) + "\n");
      OrderedJson row;
      row["budget"] = r.budget;
      row["train_docs"] = r.train_docs;
      row["train_words"] = r.train_words;
      row["mean_success_rate"] = r.report.summary.mean_success_rate;
      row["median_relative_improvement"] = r.report.summary.median_relative_improvement;
      row["fluency_score"] =
          r.report.fluency ? OrderedJson(r.report.fluency->score) : OrderedJson(nullptr);
      OrderedJson ks = OrderedJson::object();
      for (const auto& name : r.bins.order()) ks[name] = r.bins.at(name).k();
      row["bins"] = std::move(ks);
      table.push_back(std::move(row));
      csv += fmt::format("{},{},{},{:.4f},{:.4f},{}\n", r.budget, r.train_docs,
                         r.train_words, r.report.summary.mean_success_rate,
                         r.report.summary.median_relative_improvement,
                         r.report.fluency ? fmt::format("{:.4f}", r.report.fluency->score)
                                          : std::string());
    }
    WriteFile(Out("scaling.json"), table.dump(2) + "\n");
    WriteFile(Out("scaling.csv"), csv);
  });
}

void Pipeline::WriteManifest(const std::vector<StageRecord>& records) const {
  OrderedJson m;
  OrderedJson stages = OrderedJson::array();
  for (const auto& r : records) {
    stages.push_back({{"stage", r.name},
                      {"status", r.status == StageStatus::kRan ? "ran" : "cached"}});
  }
  m["stages"] = std::move(stages);
  OrderedJson models = OrderedJson::object();
  if (fs::exists(Out("bin_model.json"))) {
    models["bin_model"] = {{"path", "bin_model.json"},
                           {"format_version", BinModel::kFormatVersion},
                           {"sha256", PathHash(Out("bin_model.json"))}};
  }
  if (auto t = TaggerPath(); t && fs::exists(*t)) {
    models["tagger"] = {{"path", t->string()},
                        {"format", std::string(Tagger::kMagic)},
                        {"sha256", PathHash(*t)}};
  }
  m["models"] = std::move(models);
  WriteFile(Out("run_manifest.json"), m.dump(2) + "\n");
}

std::vector<StageRecord> Pipeline::Run(const std::vector<std::string>& stages) {
  config_.Validate();
  static const std::map<std::string, std::vector<std::string>> kDeps = {
      {"filter", {}},
      {"split", {"filter"}},
      {"tagger", {}},
      {"annotate", {"filter", "tagger"}},
      {"extract", {"annotate"}},
      {"author_vectors", {"extract", "split"}},
      {"bins", {"extract", "split"}},
      {"prefix", {"bins", "author_vectors", "split"}},
      {"generate", {"prefix"}},
      {"evaluate", {"generate"}},
      {"sensitivity", {"bins", "prefix"}},
      {"scaling", {"extract", "split"}},
  };
  std::set<std::string> wanted;
  std::vector<std::string> todo = stages.empty() ? CoreStages() : stages;
  while (!todo.empty()) {
    std::string s = todo.back();
    todo.pop_back();
    auto it = kDeps.find(s);
    if (it == kDeps.end()) throw ConfigInvalid("unknown stage " + s);
    if (wanted.insert(s).second) {
      todo.insert(todo.end(), it->second.begin(), it->second.end());
    }
  }

  fs::create_directories(config_.output_dir);
  WriteFile(Out("resolved_config.json"), config_.Resolved().dump(2) + "\n");

  const std::map<std::string, StageStatus (Pipeline::*)()> kBodies = {
      {"filter", &Pipeline::Filter},
      {"split", &Pipeline::SplitStage},
      {"tagger", &Pipeline::TrainTagger},
      {"annotate", &Pipeline::Annotate},
      {"extract", &Pipeline::ExtractStage},
      {"author_vectors", &Pipeline::AuthorVectorsStage},
      {"bins", &Pipeline::Bins},
      {"prefix", &Pipeline::Prefix},
      {"generate", &Pipeline::Generate},
      {"evaluate", &Pipeline::EvaluateStage},
      {"sensitivity", &Pipeline::SensitivityStage},
      {"scaling", &Pipeline::ScalingStage},
  };
  std::vector<StageRecord> records;
  for (const auto& name : AllStages()) {
    if (!wanted.contains(name)) continue;
    if (name == "tagger" && !config_.tagger_train) continue;
    records.push_back({name, (this->*kBodies.at(name))()});
  }
  WriteManifest(records);
  return records;
}

}  // namespace stylobench
