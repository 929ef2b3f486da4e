// Command-line entry point.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "stylobench/errors.h"
#include "stylobench/parallel.h"
#include "stylobench/pipeline/pipeline.h"

namespace sb = stylobench;
namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;
constexpr int kStageFailure = 3;

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  bool force = false;
  std::string log_level = "info";
};

sb::SchemaPtr LoadSchema(const std::string& path) {
  return std::make_shared<sb::AttributeSchema>(
      path.empty() ? sb::AttributeSchema::Default() : sb::AttributeSchema::Load(path));
}

std::optional<fs::path> OptPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

sb::RunConfig LoadRunConfig(const Globals& g) {
  if (g.config.empty()) throw sb::ConfigInvalid("this command needs --config");
  sb::RunConfig c = sb::RunConfig::Load(g.config);
  if (g.seed) c.seed = *g.seed;
  if (g.jobs > 0) c.jobs = g.jobs;
  return c;
}

std::vector<sb::GenerationResult> ReadGenerations(const fs::path& path) {
  std::vector<sb::GenerationResult> out;
  for (const auto& r : sb::ReadJsonl(path)) out.push_back(sb::ResultFromJson(r));
  return out;
}

std::map<std::string, sb::AttributeVector> ReadKeyedVectors(
    const fs::path& path, const sb::SchemaPtr& schema) {
  std::map<std::string, sb::AttributeVector> out;
  for (const auto& r : sb::ReadJsonl(path)) {
    std::string key = r.contains("author_id") && !r.contains("doc_id")
                          ? r["author_id"].get<std::string>()
                          : r.at("doc_id").get<std::string>();
    out.emplace(key, sb::VectorFromJson(r, schema));
  }
  return out;
}

sb::Conditioning ParseConditioning(const std::string& s) {
  if (s == "author") return sb::Conditioning::kAuthor;
  if (s == "document") return sb::Conditioning::kDocument;
  throw sb::ConfigInvalid("conditioning must be author or document");
}

void PrintStages(const std::vector<sb::StageRecord>& records) {
  for (const auto& r : records) {
    std::cout << r.name << ": "
              << (r.status == sb::StageStatus::kRan ? "ran" : "cached") << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylobench: stylometric benchmark construction and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Run config (JSON)");
  app.add_option("--seed", g.seed, "Override the configured seed");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--force", g.force, "Ignore cached stage outputs");
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off");

  std::function<void()> action;
  auto jobs = [&] { return g.jobs > 0 ? g.jobs : 1; };
  auto seed = [&] { return g.seed.value_or(0); };

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Filter, split and subset corpora");
  corpus->require_subcommand(1);
  std::string c_in, c_out, c_source = "other", c_filter;
  int c_min_words = -1, c_min_docs = -1;
  auto* filter = corpus->add_subcommand("filter", "Apply document/author filters");
  filter->add_option("--in", c_in)->required();
  filter->add_option("--out", c_out)->required();
  filter->add_option("--source", c_source, "Preset: blogs|imdb62|amazon|other");
  filter->add_option("--filter-config", c_filter, "JSON filter config");
  filter->add_option("--min-words", c_min_words);
  filter->add_option("--min-docs", c_min_docs);
  filter->callback([&] {
    action = [&] {
      sb::Json fj = c_filter.empty() ? sb::Json{{"source", c_source}}
                                     : sb::Json::parse(sb::ReadFile(c_filter));
      if (c_min_words >= 0) fj["min_words_per_doc"] = c_min_words;
      if (c_min_docs >= 0) fj["min_docs_per_author"] = c_min_docs;
      sb::FilterConfig config = sb::FilterConfig::FromJson(fj);
      config.Validate();
      auto docs = sb::LoadCorpus(c_in);
      auto kept = sb::FilterCorpus(docs, config);
      std::set<std::string> authors;
      for (const auto& d : kept) authors.insert(d.author_id);
      sb::SaveCorpus(c_out, kept);
      std::cout << "documents: " << kept.size() << "\nauthors: " << authors.size()
                << "\n";
    };
  });
  auto* split = corpus->add_subcommand("split", "Per-author 80/10/10 split");
  split->add_option("--in", c_in)->required();
  split->add_option("--out", c_out)->required();
  split->callback([&] {
    action = [&] {
      auto assignment = sb::SplitCorpus(sb::LoadCorpus(c_in), seed());
      sb::WriteJsonl(c_out, assignment.ToJsonl());
    };
  });
  std::int64_t c_words = 0;
  std::string c_splits;
  auto* budget = corpus->add_subcommand("budget", "Per-author word-budget subset");
  budget->add_option("--in", c_in)->required();
  budget->add_option("--splits", c_splits, "Restrict to the train split first");
  budget->add_option("--words", c_words)->required()->check(CLI::PositiveNumber);
  budget->add_option("--out", c_out)->required();
  budget->callback([&] {
    action = [&] {
      auto docs = sb::LoadCorpus(c_in);
      if (!c_splits.empty()) {
        docs = sb::SelectSplit(docs, sb::SplitAssignment::FromJsonl(sb::ReadJsonl(c_splits)),
                               sb::Split::kTrain);
      }
      sb::SaveCorpus(c_out, sb::BudgetSubset(docs, c_words, seed()));
    };
  });

  // train-tagger
  std::string t_conllu, t_dev, t_out, t_label_map;
  int t_iterations = 5;
  auto* train_tagger = app.add_subcommand("train-tagger", "Train the UPOS tagger");
  train_tagger->add_option("--conllu", t_conllu)->required();
  train_tagger->add_option("--dev", t_dev);
  train_tagger->add_option("--iterations", t_iterations);
  train_tagger->add_option("--label-map", t_label_map);
  train_tagger->add_option("--out", t_out)->required();
  train_tagger->callback([&] {
    action = [&] {
      std::optional<sb::DeprelMap> map;
      if (!t_label_map.empty()) map = sb::DeprelMap::Load(t_label_map);
      const sb::DeprelMap* m = map ? &*map : nullptr;
      auto train = sb::ToTaggedSentences(sb::ParseConllu(sb::ReadFile(t_conllu), m));
      std::vector<sb::TaggedSentence> dev;
      if (!t_dev.empty()) dev = sb::ToTaggedSentences(sb::ParseConllu(sb::ReadFile(t_dev), m));
      sb::TaggerTrainOptions opts;
      opts.iterations = t_iterations;
      opts.seed = seed();
      sb::TaggerTrainReport report;
      sb::Tagger::Train(train, opts, dev, &report).Save(t_out);
      std::cout << "sentences: " << report.sentences << "\ntokens: " << report.tokens
                << "\n";
      if (report.dev_accuracy) std::cout << "dev accuracy: " << *report.dev_accuracy << "\n";
    };
  });

  // annotate
  std::string a_in, a_out, a_tagger, a_conllu, a_rst, a_errors, a_label_map, schema_path;
  auto* annotate = app.add_subcommand("annotate", "Tokenize, tag and attach sidecars");
  annotate->add_option("--in", a_in)->required();
  annotate->add_option("--out", a_out)->required();
  annotate->add_option("--tagger", a_tagger);
  annotate->add_option("--conllu-dir", a_conllu);
  annotate->add_option("--rst", a_rst);
  annotate->add_option("--errors", a_errors);
  annotate->add_option("--label-map", a_label_map);
  annotate->add_option("--schema", schema_path);
  annotate->callback([&] {
    action = [&] {
      auto schema = LoadSchema(schema_path);
      sb::AnnotationPaths paths{OptPath(a_conllu), OptPath(a_rst), OptPath(a_errors),
                                OptPath(a_label_map)};
      sb::AnnotatorBundle bundle(paths, OptPath(a_tagger), *schema);
      auto docs = sb::LoadCorpus(a_in);
      std::vector<sb::OrderedJson> records(docs.size());
      sb::ParallelFor(docs.size(), jobs(), [&](std::size_t i) {
        records[i] = sb::AnnotatedToJson(bundle.annotator().Annotate(docs[i]));
      });
      sb::WriteJsonl(a_out, records);
    };
  });

  // extract
  std::string e_in, e_out;
  auto* extract = app.add_subcommand("extract", "Document-level attribute vectors");
  extract->add_option("--in", e_in, "Annotated JSONL")->required();
  extract->add_option("--out", e_out)->required();
  extract->add_option("--schema", schema_path);
  extract->callback([&] {
    action = [&] {
      auto schema = LoadSchema(schema_path);
      auto annotated = sb::ReadAnnotated(e_in);
      std::vector<sb::DocVector> vectors(annotated.size());
      sb::ParallelFor(annotated.size(), jobs(), [&](std::size_t i) {
        vectors[i] = {annotated[i].doc.doc_id, annotated[i].doc.author_id,
                      sb::Extract(annotated[i], schema)};
      });
      sb::WriteDocVectors(e_out, vectors);
    };
  });

  // author-vectors
  std::string v_in, v_out, v_corpus, v_splits, v_split = "train";
  auto* author_vectors = app.add_subcommand("author-vectors", "Per-author mean vectors");
  author_vectors->add_option("--in", v_in, "Document vectors")->required();
  author_vectors->add_option("--out", v_out)->required();
  author_vectors->add_option("--corpus", v_corpus);
  author_vectors->add_option("--splits", v_splits);
  author_vectors->add_option("--split", v_split);
  author_vectors->add_option("--schema", schema_path);
  author_vectors->callback([&] {
    action = [&] {
      auto schema = LoadSchema(schema_path);
      auto vectors = sb::ReadDocVectors(v_in, schema);
      if (!v_splits.empty()) {
        auto assignment = sb::SplitAssignment::FromJsonl(sb::ReadJsonl(v_splits));
        sb::Split want = sb::ParseSplit(v_split);
        std::erase_if(vectors, [&](const auto& v) { return assignment.at(v.doc_id) != want; });
      }
      std::vector<sb::OrderedJson> records;
      for (const auto& [author, v] : sb::AuthorVectors(vectors)) {
        records.push_back(sb::VectorToJson(v, "author_id", author));
      }
      sb::WriteJsonl(v_out, records);
    };
  });

  // bins
  auto* bins = app.add_subcommand("bins", "Fit and apply decile bin models");
  bins->require_subcommand(1);
  std::string b_in, b_out, b_model, b_corpus_id;
  auto* bins_fit = bins->add_subcommand("fit", "Fit on training vectors");
  bins_fit->add_option("--in", b_in)->required();
  bins_fit->add_option("--out", b_out)->required();
  bins_fit->add_option("--corpus-id", b_corpus_id);
  bins_fit->add_option("--schema", schema_path);
  bins_fit->callback([&] {
    action = [&] {
      auto schema = LoadSchema(schema_path);
      std::vector<sb::AttributeVector> vs;
      for (const auto& [key, v] : ReadKeyedVectors(b_in, schema)) vs.push_back(v);
      sb::BinFitOptions opts;
      opts.corpus_id = b_corpus_id;
      sb::BinModel::Fit(sb::ColumnsOf(vs), opts).Save(b_out);
    };
  });
  auto* bins_assign = bins->add_subcommand("assign", "Bin attribute vectors");
  bins_assign->add_option("--model", b_model)->required();
  bins_assign->add_option("--in", b_in)->required();
  bins_assign->add_option("--out", b_out)->required();
  bins_assign->add_option("--schema", schema_path);
  bins_assign->callback([&] {
    action = [&] {
      auto schema = LoadSchema(schema_path);
      auto model = sb::BinModel::Load(b_model);
      std::vector<sb::OrderedJson> records;
      for (const auto& r : sb::ReadJsonl(b_in)) {
        std::string key = r.contains("doc_id") ? "doc_id" : "author_id";
        records.push_back(sb::BinnedToJson(model.BinVector(sb::VectorFromJson(r, schema)),
                                           key, r.at(key).get<std::string>()));
      }
      sb::WriteJsonl(b_out, records);
    };
  });

  // prefix
  auto* prefix = app.add_subcommand("prefix", "Conditioning prefixes");
  prefix->require_subcommand(1);
  std::string p_corpus, p_bins, p_vectors, p_out, p_cond = "author", p_targets;
  bool p_two_token = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bins", p_bins)->required();
    sub->add_option("--out", p_out)->required();
    sub->add_flag("--two-token", p_two_token, "Separate attribute and value tokens");
  };
  auto add_docs = [&](CLI::App* sub) {
    sub->add_option("--corpus", p_corpus)->required();
    sub->add_option("--vectors", p_vectors, "Author (or document) vectors")->required();
    sub->add_option("--conditioning", p_cond, "author|document");
    sub->add_option("--schema", schema_path);
  };
  auto granularity = [&] {
    return p_two_token ? sb::TokenGranularity::kTwoToken : sb::TokenGranularity::kPair;
  };
  auto binned_index = [&](const sb::BinModel& model) {
    return sb::BinIndex(model, ReadKeyedVectors(p_vectors, LoadSchema(schema_path)));
  };
  auto* build_train = prefix->add_subcommand("build-train", "Prefixed training file");
  add_common(build_train);
  add_docs(build_train);
  build_train->callback([&] {
    action = [&] {
      auto model = sb::BinModel::Load(p_bins);
      sb::PrefixEncoding enc(model, granularity());
      sb::WriteJsonl(p_out, sb::BuildTrainingFile(sb::LoadCorpus(p_corpus), binned_index(model),
                                                  enc, ParseConditioning(p_cond)));
    };
  });
  auto* build_infer = prefix->add_subcommand("build-infer", "Inference prompts");
  add_common(build_infer);
  add_docs(build_infer);
  build_infer->add_option("--targets", p_targets, "Also write the target bins here");
  build_infer->callback([&] {
    action = [&] {
      auto model = sb::BinModel::Load(p_bins);
      sb::PrefixEncoding enc(model, granularity());
      auto docs = sb::LoadCorpus(p_corpus);
      auto binned = binned_index(model);
      auto cond = ParseConditioning(p_cond);
      std::vector<sb::OrderedJson> records, targets;
      for (const auto& e : sb::BuildInferenceExamples(docs, binned, enc, cond)) {
        records.push_back(sb::InferenceToJson(e));
      }
      sb::WriteJsonl(p_out, records);
      if (!p_targets.empty()) {
        for (const auto& d : docs) {
          targets.push_back(
              sb::BinnedToJson(sb::ConditioningVector(d, binned, cond), "doc_id", d.doc_id));
        }
        sb::WriteJsonl(p_targets, targets);
      }
    };
  });
  auto* vocab = prefix->add_subcommand("vocab", "Added-token vocabulary");
  add_common(vocab);
  vocab->callback([&] {
    action = [&] {
      auto model = sb::BinModel::Load(p_bins);
      std::string out;
      for (const auto& t : sb::PrefixEncoding(model, granularity()).Vocabulary()) {
        out += t + "\n";
      }
      sb::WriteFile(p_out, out);
    };
  });

  // generate
  std::string gen_backend = "oracle", gen_in, gen_out, gen_corpus, gen_train, gen_url;
  int gen_max_tokens = 1024;
  std::optional<std::uint64_t> gen_sample_seed;
  double gen_temperature = 1.0, gen_timeout = 120;
  auto* generate = app.add_subcommand("generate", "Run a generator on inference prompts");
  generate->add_option("--backend", gen_backend)
      ->check(CLI::IsMember({"http", "oracle", "ngram"}));
  generate->add_option("--in", gen_in)->required();
  generate->add_option("--out", gen_out)->required();
  generate->add_option("--corpus", gen_corpus, "Documents the oracle looks up");
  generate->add_option("--train", gen_train, "JSONL with a text field (n-gram training)");
  generate->add_option("--url", gen_url, "HTTP generator endpoint");
  generate->add_option("--timeout", gen_timeout, "HTTP read timeout in seconds");
  generate->add_option("--max-tokens", gen_max_tokens)->check(CLI::PositiveNumber);
  generate->add_option("--sample-seed", gen_sample_seed, "Sample instead of greedy");
  generate->add_option("--temperature", gen_temperature);
  generate->callback([&] {
    action = [&] {
      sb::GeneratorConfig config;
      config.backend = gen_backend;
      config.max_tokens = gen_max_tokens;
      if (gen_sample_seed) config.decoding = sb::Decoding::Sampled(*gen_sample_seed, gen_temperature);
      if (gen_backend == "http") {
        if (gen_url.empty()) throw sb::ConfigInvalid("--backend http needs --url");
        sb::HttpEndpoint e;
        e.url = gen_url;
        e.read_timeout_s = gen_timeout;
        config.http = e;
      }
      std::vector<sb::Document> docs;
      std::vector<std::string> texts;
      if (gen_backend == "oracle") {
        if (gen_corpus.empty()) throw sb::ConfigInvalid("--backend oracle needs --corpus");
        docs = sb::LoadCorpus(gen_corpus);
      }
      if (gen_backend == "ngram") {
        if (gen_train.empty()) throw sb::ConfigInvalid("--backend ngram needs --train");
        for (const auto& r : sb::ReadJsonl(gen_train)) texts.push_back(r.at("text").get<std::string>());
      }
      auto generator = sb::MakeGenerator(config, docs, texts);
      std::vector<sb::GenerationRequest> requests;
      for (const auto& r : sb::ReadJsonl(gen_in)) {
        requests.push_back(sb::RequestFor(sb::InferenceFromJson(r), config.max_tokens,
                                          config.decoding));
      }
      std::vector<sb::OrderedJson> records;
      for (const auto& r : sb::GenerateAll(*generator, requests, jobs())) {
        records.push_back(sb::ResultToJson(r));
      }
      sb::WriteJsonl(gen_out, records);
    };
  });

  // evaluate
  std::string ev_bins, ev_targets, ev_generations, ev_gold, ev_gold_errors, ev_gen_errors,
      ev_gen_conllu, ev_gen_rst, ev_tagger, ev_label_map, ev_out;
  double ev_trim = 0.2;
  bool ev_per_attribute = false, ev_per_author = false, ev_no_fluency = false;
  auto* evaluate = app.add_subcommand("evaluate", "Success rate, relative improvement, fluency");
  evaluate->add_option("--bins", ev_bins)->required();
  evaluate->add_option("--targets", ev_targets)->required();
  evaluate->add_option("--generations", ev_generations)->required();
  evaluate->add_option("--gold", ev_gold, "Annotated gold documents")->required();
  evaluate->add_option("--gold-errors", ev_gold_errors);
  evaluate->add_option("--gen-errors", ev_gen_errors);
  evaluate->add_option("--gen-conllu-dir", ev_gen_conllu);
  evaluate->add_option("--gen-rst", ev_gen_rst);
  evaluate->add_option("--label-map", ev_label_map);
  evaluate->add_option("--tagger", ev_tagger);
  evaluate->add_option("--schema", schema_path);
  evaluate->add_option("--trim", ev_trim);
  evaluate->add_flag("--per-attribute", ev_per_attribute, "Print every attribute");
  evaluate->add_flag("--per-author", ev_per_author, "Average success per author first");
  evaluate->add_flag("--no-fluency", ev_no_fluency);
  evaluate->add_option("--out", ev_out)->required();
  evaluate->callback([&] {
    action = [&] {
      auto schema = LoadSchema(schema_path);
      auto model = sb::BinModel::Load(ev_bins);
      sb::AnnotationPaths gen_paths{OptPath(ev_gen_conllu), OptPath(ev_gen_rst),
                                    OptPath(ev_gen_errors), OptPath(ev_label_map)};
      sb::AnnotatorBundle bundle(gen_paths, OptPath(ev_tagger), *schema);
      auto generations = ReadGenerations(ev_generations);
      std::set<std::string> ids;
      for (const auto& x : generations) ids.insert(x.doc_id);
      std::optional<sb::SidecarCounts> gold_errors;
      if (!ev_gold_errors.empty()) gold_errors = sb::ParseSidecar(sb::ReadJsonl(ev_gold_errors));
      std::vector<sb::AnnotatedDocument> gold;
      for (auto& d : sb::ReadAnnotated(ev_gold)) {
        if (!ids.contains(d.doc.doc_id)) continue;
        if (gold_errors) {
          d = sb::AttachSidecarCounts(std::move(d), *gold_errors, sb::SidecarKind::kErrors);
        }
        gold.push_back(std::move(d));
      }
      sb::EvalInputs in;
      in.model = &model;
      in.schema = schema;
      in.annotator = &bundle.annotator();
      in.gold = gold;
      in.trim = ev_trim;
      in.averaging = ev_per_author ? sb::SuccessAveraging::kPerAuthor
                                   : sb::SuccessAveraging::kPerExample;
      in.fluency = !ev_no_fluency;
      in.jobs = jobs();
      sb::EvalReport report = sb::Evaluate(in, sb::ReadTargets(ev_targets), generations);
      sb::WriteFile(ev_out, report.ToJson().dump(2) + "\n");
      std::cout << report.ToTable(ev_per_attribute);
    };
  });

  // sensitivity / scaling / pipeline
  std::string s_backend, s_placements;
  std::optional<std::size_t> s_min_train;
  auto* sensitivity = app.add_subcommand("sensitivity", "Bin-perturbation study (needs --config)");
  sensitivity->add_option("--backend", s_backend)->check(CLI::IsMember({"http", "oracle", "ngram"}));
  sensitivity->add_option("--placements", s_placements, "e.g. -4..4 or -2,-1,1,2");
  sensitivity->add_option("--min-train-docs", s_min_train);
  sensitivity->callback([&] {
    action = [&] {
      sb::RunConfig c = LoadRunConfig(g);
      if (!s_backend.empty()) {
        sb::GeneratorConfig gc = c.sensitivity.generator.value_or(c.generator);
        gc.backend = s_backend;
        c.sensitivity.generator = gc;
      }
      if (!s_placements.empty()) c.sensitivity.placements = sb::ParsePlacements(s_placements);
      if (s_min_train) c.sensitivity.min_train_docs = *s_min_train;
      sb::Pipeline p(c, {g.force});
      PrintStages(p.Run({"sensitivity"}));
      std::cout << sb::ReadFile(p.Out("sensitivity.csv"));
    };
  });
  std::vector<std::int64_t> sc_budgets;
  auto* scaling = app.add_subcommand("scaling", "Word-budget scaling study (needs --config)");
  scaling->add_option("--budgets", sc_budgets, "Words per author")->delimiter(',');
  scaling->callback([&] {
    action = [&] {
      sb::RunConfig c = LoadRunConfig(g);
      if (!sc_budgets.empty()) c.budgets = sc_budgets;
      sb::Pipeline p(c, {g.force});
      PrintStages(p.Run({"scaling"}));
      std::cout << sb::ReadFile(p.Out("scaling.csv"));
    };
  });
  std::vector<std::string> pl_stages;
  auto* pipeline = app.add_subcommand("pipeline", "Run pipeline stages (needs --config)");
  pipeline->add_option("--stages", pl_stages, "Subset of stages")->delimiter(',');
  pipeline->callback([&] {
    action = [&] {
      sb::Pipeline p(LoadRunConfig(g), {g.force});
      PrintStages(p.Run(pl_stages));
      if (fs::exists(p.Out("report.txt"))) std::cout << sb::ReadFile(p.Out("report.txt"));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  auto level = spdlog::level::from_str(g.log_level);
  spdlog::set_level(level);
  spdlog::set_default_logger(spdlog::stderr_color_mt("stylobench"));
  spdlog::set_level(level);

  try {
    action();
  } catch (const sb::ConfigInvalid& e) {
    spdlog::error("{}", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kStageFailure;
  }
  return 0;
}
