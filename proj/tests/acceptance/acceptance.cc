// Acceptance gate: one PASS/FAIL/SKIP line per criterion. Exits non-zero when
// any criterion fails.

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../syllable_gold.h"
#include "../yuen_fixtures.h"
#include "stylobench/annotation/annotator.h"
#include "stylobench/annotation/syllables.h"
#include "stylobench/attributes/attributes.h"
#include "stylobench/attributes/readability.h"
#include "stylobench/attributes/schema.h"
#include "stylobench/binning/bin_model.h"
#include "stylobench/corpus/corpus.h"
#include "stylobench/corpus/document.h"
#include "stylobench/errors.h"
#include "stylobench/evaluation/evaluation.h"
#include "stylobench/evaluation/stats.h"
#include "stylobench/generation/reference_generators.h"
#include "stylobench/io.h"
#include "stylobench/pipeline/pipeline.h"
#include "stylobench/prefix/prefix.h"
#include "stylobench/random.h"
#include "stylobench/sensitivity/sensitivity.h"

namespace sb = stylobench;
namespace fs = std::filesystem;

namespace {

enum class Status { kPass, kFail, kSkip };

struct Verdict {
  Status status = Status::kPass;
  std::string detail;
};

// Accumulates failed sub-checks of one criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  Verdict Result(const std::string& summary) const {
    if (failed_ == 0) return {Status::kPass, summary};
    std::string d = fmt::format("{} of {} checks failed", failed_, checks_);
    for (const auto& f : failures_) d += "; " + f;
    return {Status::kFail, d};
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

fs::path Scratch(const std::string& name) {
  fs::path p = fs::path(STYLOBENCH_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path FixtureDir() { return fs::path(STYLOBENCH_DATA_DIR) / "fixture"; }

sb::RunConfig FixtureConfig(const fs::path& out) {
  sb::Json j = sb::Json::parse(sb::ReadFile(FixtureDir() / "pipeline.json"));
  j["output_dir"] = out.string();
  j["jobs"] = 1;
  return sb::RunConfig::FromJson(j, FixtureDir());
}

// Fixture runs shared by criteria 1, 9 and 10.
struct FixtureRuns {
  fs::path a;
  fs::path b;
  double seconds_a = 0;
};

FixtureRuns& Runs() {
  static FixtureRuns runs = [] {
    FixtureRuns r;
    r.a = Scratch("run_a");
    r.b = Scratch("run_b");
    auto start = std::chrono::steady_clock::now();
    sb::Pipeline(FixtureConfig(r.a)).Run();
    r.seconds_a = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    sb::Pipeline(FixtureConfig(r.b)).Run();
    return r;
  }();
  return runs;
}

// 1. Oracle end to end on the fixture.
Verdict OracleEndToEnd() {
  FixtureRuns& runs = Runs();
  Checker c;
  sb::Json report = sb::Json::parse(sb::ReadFile(runs.a / "report.json"));
  double mean = report["mean_success_rate"].get<double>();
  c.Expect(mean == 100.0, fmt::format("mean success {}", mean));
  c.Expect(report["fluency_score"].is_number() &&
               report["fluency_score"].get<double>() == 100.0,
           "fluency " + report["fluency_score"].dump());
  std::vector<double> ris;
  for (const auto& a : report["attributes"]) {
    double k = a["k"].get<double>();
    double ri = a["relative_improvement"].get<double>();
    ris.push_back(ri);
    c.Expect(std::fabs(ri - (k - 1) * 100) < 1e-9,
             fmt::format("{} RI {} with k {}", a["attribute"].get<std::string>(), ri, k));
  }
  c.Expect(ris.size() == sb::AttributeSchema::Default().size(), "attribute count");
  double median = report["median_relative_improvement"].get<double>();
  c.Expect(!ris.empty() && median == sb::LowerMedian(ris),
           fmt::format("median RI {}", median));
  c.Expect(runs.seconds_a < 60, fmt::format("runtime {:.1f}s", runs.seconds_a));
  return c.Result(fmt::format("{} examples, mean 100, fluency 100, median RI {}, {:.1f}s",
                              report["examples"].get<int>(), median, runs.seconds_a));
}

// 2. A uniform random bin assigner sits at the baseline.
Verdict RandomCalibration() {
  const auto names = sb::AttributeSchema::Default().names();
  sb::Rng rng(2024);
  sb::AttributeColumns cols;
  for (std::size_t i = 0; i < names.size(); ++i) {
    // Varying numbers of distinct values give a spread of k.
    std::uint64_t levels = 2 + i % 15;
    std::vector<double> v(500);
    for (auto& x : v) x = static_cast<double>(rng.Index(levels));
    cols.emplace_back(names[i], std::move(v));
  }
  sb::BinModel model = sb::BinModel::Fit(cols);
  const std::size_t n = 10000;
  std::vector<sb::ExampleOutcome> outcomes(n);
  for (std::size_t e = 0; e < n; ++e) {
    auto& o = outcomes[e];
    o.doc_id = "e" + std::to_string(e);
    o.author_id = "a" + std::to_string(e % 50);
    for (const auto& name : model.order()) {
      std::size_t k = model.at(name).k();
      o.target.push_back(rng.Index(k));
      o.predicted.emplace_back(rng.Index(k));
    }
  }
  auto results = sb::AttributeSuccess(model, outcomes);
  Checker c;
  std::set<std::size_t> ks;
  for (const auto& r : results) {
    ks.insert(r.k);
    c.Expect(std::fabs(r.success_rate - 100.0 / r.k) <= 2,
             fmt::format("{} success {:.2f} vs {:.2f}", r.name, r.success_rate, 100.0 / r.k));
  }
  sb::Summary s = sb::Summarize(results);
  c.Expect(std::fabs(s.median_relative_improvement) <= 10,
           fmt::format("median RI {:.2f}", s.median_relative_improvement));
  return c.Result(fmt::format("N={}, {} attributes, k in [{}, {}], median RI {:.2f}", n,
                              results.size(), *ks.begin(), *ks.rbegin(),
                              s.median_relative_improvement));
}

// 3. Decile bins on a continuous distribution.
Verdict BinningProperties() {
  std::mt19937_64 engine(99);
  std::normal_distribution<double> normal(3.0, 2.0);
  std::vector<double> values(10000);
  for (auto& x : values) x = normal(engine);
  sb::BinModel model = sb::BinModel::Fit({{"x", values}});
  const sb::AttributeBins& bins = model.at("x");
  Checker c;
  c.Expect(bins.k() == 10, fmt::format("k = {}", bins.k()));
  std::vector<std::size_t> counts(bins.k());
  for (double x : values) ++counts[bins.Assign(x)];
  double worst = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    double share = 100.0 * static_cast<double>(counts[b]) / values.size();
    worst = std::max(worst, std::fabs(share - 10));
    c.Expect(std::fabs(share - 10) <= 1.5, fmt::format("bin {} holds {:.2f}%", b, share));
  }
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  sb::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double x = lo - 5 + rng.Uniform() * (hi - lo + 10);
    double y = lo - 5 + rng.Uniform() * (hi - lo + 10);
    if (x > y) std::swap(x, y);
    std::size_t bx = bins.Assign(x), by = bins.Assign(y);
    c.Expect(bx <= by, fmt::format("monotone at {} {}", x, y));
    c.Expect(by < bins.k(), "in range");
    if (x < lo) c.Expect(bx == 0, fmt::format("clamp low at {}", x));
    if (y > hi) c.Expect(by == bins.k() - 1, fmt::format("clamp high at {}", y));
    if (x <= bins.edges.front()) c.Expect(bx == 0, "below first edge");
    if (y > bins.edges.back()) c.Expect(by == bins.k() - 1, "above last edge");
  }
  c.Expect(bins.Assign(-1e300) == 0 && bins.Assign(1e300) == bins.k() - 1, "extremes");
  return c.Result(fmt::format("k=10, max deviation {:.2f} points, 1000 probes", worst));
}

// 4. Schema layout and split ratios.
Verdict SchemaAndSplit() {
  Checker c;
  const auto schema = sb::AttributeSchema::Default();
  std::map<sb::AttributeFamily, int> per;
  for (const auto& a : schema.attributes()) ++per[a.family];
  c.Expect(per[sb::AttributeFamily::kLexical] == 3, "3 lexical");
  c.Expect(per[sb::AttributeFamily::kPos] == 14, "14 POS");
  c.Expect(per[sb::AttributeFamily::kDeprel] == 32, "32 dependency");
  c.Expect(per[sb::AttributeFamily::kDiscourse] == 3, "3 discourse");
  c.Expect(schema.size() == 52, "52 total");
  auto with_other = sb::AttributeSchema::FromJson(sb::Json{{"pos_other", true}});
  c.Expect(with_other.size() == 53 && with_other.IndexOf("OTHER").has_value(),
           "OTHER grouping");

  std::vector<sb::Document> docs;
  sb::Rng rng(5);
  for (int a = 0; a < 40; ++a) {
    int n = 10 + static_cast<int>(rng.Index(300));
    for (int i = 0; i < n; ++i) {
      docs.push_back({fmt::format("a{}-{}", a, i), fmt::format("a{}", a), sb::Source{},
                      "text", std::nullopt});
    }
  }
  auto fixture = sb::FilterCorpus(sb::LoadCorpus(FixtureDir() / "corpus.jsonl"),
                                  sb::FilterConfig::FromJson(sb::Json{
                                      {"source", "other"},
                                      {"min_words_per_doc", 50},
                                      {"min_docs_per_author", 30}}));
  docs.insert(docs.end(), fixture.begin(), fixture.end());
  auto split = sb::SplitCorpus(docs, 11);
  std::map<std::string, std::array<int, 3>> counts;
  for (const auto& d : docs) ++counts[d.author_id][static_cast<int>(split.at(d.doc_id))];
  std::array<int, 3> total{};
  for (const auto& [author, n3] : counts) {
    int n = n3[0] + n3[1] + n3[2];
    for (int s = 0; s < 3; ++s) {
      total[s] += n3[s];
      c.Expect(n3[s] >= 1, author + " covers every split");
    }
    // Dev and test get floor(n/10), at least one each; train the rest.
    int tenth = std::max(1, n / 10);
    c.Expect(n3[1] == tenth && n3[2] == tenth && n3[0] == n - 2 * tenth,
             fmt::format("{} split {}/{}/{} of {}", author, n3[0], n3[1], n3[2], n));
  }
  double all = static_cast<double>(docs.size());
  const double want[3] = {80, 10, 10};
  for (int s = 0; s < 3; ++s) {
    c.Expect(std::fabs(100 * total[s] / all - want[s]) <= 1,
             fmt::format("overall share {:.2f}", 100 * total[s] / all));
  }
  return c.Result(fmt::format("52 = 3 + 14 + 32 + 3 (+OTHER); split {:.1f}/{:.1f}/{:.1f} over "
                              "{} authors",
                              100 * total[0] / all, 100 * total[1] / all,
                              100 * total[2] / all, counts.size()));
}

// 5. Readability formula and syllables.
Verdict Readability() {
  Checker c;
  struct Case {
    std::int64_t words, sentences, syllables;
    double expected;  // worked by hand
  };
  const Case cases[] = {
      {100, 5, 150, 9.91},            // 7.8 + 17.7 - 15.59
      {10, 1, 15, 6.01},              // 3.9 + 17.7 - 15.59
      {12, 3, 12, -2.23},             // 1.56 + 11.8 - 15.59
      {250, 10, 400, 13.04},          // 9.75 + 18.88 - 15.59
      {7, 2, 11, 4.317857142857143},  // 1.365 + 18.542857... - 15.59
  };
  for (const auto& k : cases) {
    double got = sb::ReadabilityFkgl(k.words, k.sentences, k.syllables);
    c.Expect(std::fabs(got - k.expected) <= 1e-9,
             fmt::format("fkgl({}, {}, {}) = {}", k.words, k.sentences, k.syllables, got));
  }
  int agree = 0;
  for (const auto& [word, gold] : sb::testing::kSyllableGold) {
    if (sb::CountSyllables(word) == gold) ++agree;
  }
  c.Expect(agree >= 45, fmt::format("syllables {}/50", agree));
  return c.Result(fmt::format("5/5 formula cases; syllables {}/50", agree));
}

// 6. Yuen-Welch test.
Verdict Yuen() {
  Checker c;
  std::vector<double> a = {0.3, 1.2, 2.2, 0.9, 4.1, 1.0, 2.5};
  auto same = sb::YuenTTest(a, a);
  c.Expect(same.t == 0.0 && same.p == 1.0, fmt::format("identical t={} p={}", same.t, same.p));
  for (const auto& f : sb::testing::kYuenFixtures) {
    auto r = sb::YuenTTest(f.a, f.b, 0.2);
    c.Expect(std::fabs(r.t - f.t) < 5e-5, fmt::format("t {} vs {}", r.t, f.t));
    c.Expect(std::fabs(r.df - f.df) < 5e-5, fmt::format("df {} vs {}", r.df, f.df));
    c.Expect(std::fabs(r.p - f.p) < 5e-5, fmt::format("p {} vs {}", r.p, f.p));
  }
  // a = 1..5, b = 2, 4, ..., 12: se^2 = 2.5/5 + 14/6 = 17/6.
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y = {2, 4, 6, 8, 10, 12};
  auto w = sb::YuenTTest(x, y, 0.0);
  const double t = -4 / std::sqrt(17.0 / 6);
  const double df = (289.0 / 36) / (1.0 / 16 + 49.0 / 45);
  c.Expect(std::fabs(w.t - t) < 5e-7, fmt::format("welch t {}", w.t));
  c.Expect(std::fabs(w.df - df) < 5e-7, fmt::format("welch df {}", w.df));
  // scipy.stats.ttest_ind(x, y, equal_var=False).pvalue
  c.Expect(std::fabs(w.p - 0.04928433820673049) < 5e-7, fmt::format("welch p {}", w.p));
  return c.Result(fmt::format("identical exact; {} fixtures to 4 dp; welch t={:.6f} df={:.6f}",
                              sb::testing::kYuenFixtures.size(), w.t, w.df));
}

// 7. Prefix round trip and vocabulary size.
Verdict PrefixRoundTrip() {
  const auto names = sb::AttributeSchema::Default().names();
  sb::Rng rng(31);
  sb::AttributeColumns cols;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<double> v(300);
    std::uint64_t levels = 3 + i % 40;
    for (auto& x : v) x = static_cast<double>(rng.Index(levels)) / (i % 3 == 0 ? 7.0 : 1.0);
    cols.emplace_back(names[i], std::move(v));
  }
  sb::BinModel model = sb::BinModel::Fit(cols);
  Checker c;
  std::size_t total_k = 0;
  for (const auto& name : model.order()) total_k += model.at(name).k();
  for (auto gran : {sb::TokenGranularity::kPair, sb::TokenGranularity::kTwoToken}) {
    sb::PrefixEncoding enc(model, gran);
    for (int i = 0; i < 1000; ++i) {
      sb::BinnedVector v;
      for (const auto& name : model.order()) {
        const auto& b = model.at(name);
        std::size_t bin = rng.Index(b.k());
        v.push_back({name, bin, b.labels[bin]});
      }
      c.Expect(enc.Parse(enc.Render(v)) == v, fmt::format("round trip {}", i));
    }
  }
  sb::PrefixEncoding pair(model);
  auto vocab = pair.Vocabulary();
  c.Expect(vocab.size() == total_k + 1,
           fmt::format("vocabulary {} vs {}", vocab.size(), total_k + 1));
  c.Expect(std::set<std::string>(vocab.begin(), vocab.end()).size() == vocab.size(),
           "vocabulary unique");
  return c.Result(fmt::format("2x1000 vectors; vocabulary {} = {} + 1", vocab.size(), total_k));
}

// Synthetic documents for the sensitivity harness: `sentences` sentences and
// `tokens` tokens in total (periods included).
std::string MakeText(const std::string& id, int tokens, int sentences) {
  int words = tokens - sentences;
  std::string out;
  for (int s = 0; s < sentences; ++s) {
    int n = words / sentences + (s < words % sentences ? 1 : 0);
    if (s) out += ' ';
    out += s == 0 ? "Item" + id : "Then";
    for (int w = 1; w < n; ++w) out += " word";
    out += '.';
  }
  return out;
}

struct Measures {
  int tokens;
  int sentences;
};

// Moves the generation into the bin the prefix asks for.
class FollowingGenerator : public sb::Generator {
 public:
  FollowingGenerator(const sb::PrefixEncoding& enc, const sb::BinModel& model,
                     const std::map<std::string, Measures>& gold)
      : enc_(enc), model_(model), gold_(gold) {}
  std::string id() const override { return "follow"; }
  sb::GenerationResult Generate(const sb::GenerationRequest& r) const override {
    Measures m = gold_.at(r.doc_id);
    for (const auto& b : enc_.Parse(r.prefix)) {
      int& v = b.attribute == "num_tokens" ? m.tokens : m.sentences;
      if (model_.Assign(b.attribute, v) != b.bin) v = ValueIn(model_.at(b.attribute), b.bin);
    }
    return {r.doc_id, MakeText(r.doc_id, m.tokens, m.sentences), id(), 0};
  }

 private:
  static int ValueIn(const sb::AttributeBins& bins, std::size_t b) {
    if (b + 1 == bins.k()) return static_cast<int>(std::floor(bins.edges.back())) + 1;
    return static_cast<int>(std::floor(bins.edges[b]));
  }
  const sb::PrefixEncoding& enc_;
  const sb::BinModel& model_;
  const std::map<std::string, Measures>& gold_;
};

// Ignores the prefix and moves both measures by a random nonzero amount.
class RandomGenerator : public sb::Generator {
 public:
  explicit RandomGenerator(const std::map<std::string, Measures>& gold) : gold_(gold) {}
  std::string id() const override { return "random"; }
  sb::GenerationResult Generate(const sb::GenerationRequest& r) const override {
    sb::Rng rng(17, r.doc_id + r.prefix);
    Measures m = gold_.at(r.doc_id);
    auto offset = [&](int max) {
      int d = 1 + static_cast<int>(rng.Index(static_cast<std::uint64_t>(max)));
      return rng.Coin() ? d : -d;
    };
    m.tokens += offset(5);
    m.sentences += offset(2);
    return {r.doc_id, MakeText(r.doc_id, m.tokens, m.sentences), id(), 0};
  }

 private:
  const std::map<std::string, Measures>& gold_;
};

// 8. Sensitivity harness calibration.
Verdict Sensitivity() {
  Checker c;
  auto schema = std::make_shared<const sb::AttributeSchema>(sb::AttributeSchema::FromJson(
      sb::Json{{"lexical", {"num_tokens", "num_sents"}},
               {"pos", sb::Json::array()},
               {"deprel", sb::Json::array()},
               {"discourse", sb::Json::array()}}));
  sb::Rng rng(41);
  std::vector<double> tok(5000), sent(5000);
  for (auto& x : tok) x = static_cast<double>(100 + rng.Index(200));
  for (auto& x : sent) x = static_cast<double>(2 + rng.Index(40));
  sb::BinModel model = sb::BinModel::Fit({{"num_tokens", tok}, {"num_sents", sent}});
  if (model.at("num_tokens").k() != 10 || model.at("num_sents").k() != 10) {
    return {Status::kFail, "harness setup: expected 10 bins per attribute"};
  }
  sb::Annotator annotator({});
  sb::PrefixEncoding enc(model);

  const int n = 1600;
  std::vector<sb::SensitivityExample> examples;
  std::vector<sb::Document> docs;
  std::map<std::string, Measures> gold;
  while (static_cast<int>(examples.size()) < n) {
    int t = 100 + static_cast<int>(rng.Index(200));
    int s = 2 + static_cast<int>(rng.Index(40));
    std::size_t bt = model.Assign("num_tokens", t), bs = model.Assign("num_sents", s);
    // Middle bins keep every placement in -4..4 inside the range.
    if (bt < 4 || bt > 5 || bs < 4 || bs > 5) continue;
    std::string id = std::to_string(examples.size());
    sb::Document doc{id, "a" + std::to_string(examples.size() % 20), sb::Source{},
                     MakeText(id, t, s), std::nullopt};
    sb::AnnotatedDocument ann = annotator.Annotate(doc);
    sb::PartialVector pv = sb::ExtractPartial(ann, *schema);
    double rt = *pv.values[*schema->IndexOf("num_tokens")];
    double rs = *pv.values[*schema->IndexOf("num_sents")];
    if (rt != t || rs != s) {
      return {Status::kFail, fmt::format("harness setup: text measures {} {} vs {} {}", rt,
                                         rs, t, s)};
    }
    sb::SensitivityExample ex;
    ex.doc_id = id;
    ex.author_id = doc.author_id;
    ex.prompt_sentence = sb::FirstSentence(doc.text);
    ex.gold = {model.AssignValue("num_tokens", rt), model.AssignValue("num_sents", rs)};
    ex.reference = {{"num_tokens", rt}, {"num_sents", rs}};
    examples.push_back(std::move(ex));
    docs.push_back(doc);
    gold[id] = {t, s};
  }

  sb::EvalInputs in;
  in.model = &model;
  in.schema = schema;
  in.annotator = &annotator;
  in.fluency = false;
  const std::vector<int> placements = sb::ParsePlacements("-4..4");
  auto run = [&](const sb::Generator& g) {
    return sb::RunSensitivity(examples, in, enc, g, placements, {}, 512,
                              sb::Decoding::Greedy());
  };

  FollowingGenerator follow(enc, model, gold);
  auto f = run(follow);
  c.Expect(f.cells.size() == 16, fmt::format("follow cells {}", f.cells.size()));
  for (const auto& cell : f.cells) {
    c.Expect(cell.success_pct == 100, fmt::format("follow {} {:+d}: {:.2f}", cell.attribute,
                                                  cell.displacement, cell.success_pct));
  }

  RandomGenerator random(gold);
  auto r = run(random);
  c.Expect(r.perturbations.size() >= 2000, fmt::format("{} perturbations", r.perturbations.size()));
  double worst = 0;
  for (const auto& cell : r.cells) {
    worst = std::max(worst, std::fabs(cell.success_pct - 50));
    c.Expect(std::fabs(cell.success_pct - 50) <= 5,
             fmt::format("random {} {:+d}: {:.2f}", cell.attribute, cell.displacement,
                         cell.success_pct));
  }

  sb::OracleGenerator oracle(docs);
  auto o = run(oracle);
  std::map<std::pair<std::string, int>, double> pct;
  for (const auto& cell : o.cells) pct[{cell.attribute, cell.displacement}] = cell.success_pct;
  for (const auto& [key, v] : pct) {
    auto mirror = pct.find({key.first, -key.second});
    c.Expect(mirror != pct.end() && v + mirror->second <= 100,
             fmt::format("oracle {} {:+d}: {} + mirror > 100", key.first, key.second, v));
  }
  return c.Result(fmt::format("follow 100% in {} cells; random max |x-50| {:.2f} over {} "
                              "perturbations; oracle complementarity on {} cells",
                              f.cells.size(), worst, r.perturbations.size(), pct.size()));
}

// 9. Scaling re-fits bins per budget; budget subsets nest.
Verdict Scaling() {
  FixtureRuns& runs = Runs();
  sb::RunConfig config = FixtureConfig(runs.a);
  sb::Pipeline(config).Run({"scaling"});
  Checker c;
  auto small = sb::BinModel::Load(runs.a / "scaling" / "1000" / "bin_model.json");
  auto large = sb::BinModel::Load(runs.a / "scaling" / "20000" / "bin_model.json");
  int differing = 0;
  for (const auto& name : small.order()) {
    if (small.at(name).edges != large.at(name).edges) ++differing;
  }
  c.Expect(differing > 0, "1k and 20k bin edges are identical");

  auto docs = sb::LoadCorpus(runs.a / "filtered.jsonl");
  auto split = sb::SplitAssignment::FromJsonl(sb::ReadJsonl(runs.a / "splits.jsonl"));
  auto train = sb::SelectSplit(docs, split, sb::Split::kTrain);
  std::set<std::string> previous;
  std::size_t previous_size = 0;
  for (std::int64_t budget : {500, 1000, 2000, 5000, 10000, 20000, 50000}) {
    auto subset = sb::BudgetSubset(train, budget, config.seed);
    std::set<std::string> ids;
    for (const auto& d : subset) ids.insert(d.doc_id);
    c.Expect(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()),
             fmt::format("budget {} does not contain the smaller subset", budget));
    c.Expect(ids.size() >= previous_size, "subset shrank");
    previous = std::move(ids);
    previous_size = previous.size();
  }
  return c.Result(fmt::format("{} of {} attributes have different edges at 1k vs 20k; "
                              "subsets nest",
                              differing, small.order().size()));
}

// 10. Two fresh runs produce identical metrics.
Verdict Determinism() {
  FixtureRuns& runs = Runs();
  Checker c;
  for (const char* f : {"report.json", "outcomes.jsonl", "bin_model.json"}) {
    c.Expect(sb::ReadFile(runs.a / f) == sb::ReadFile(runs.b / f), std::string(f) + " differs");
  }
  return c.Result("report.json, outcomes.jsonl and bin_model.json byte-identical");
}

// 11. Corpus statistics on the original data; needs the user's corpora.
Verdict Table1() {
  const char* data = std::getenv("STYLOBENCH_TABLE1_DATA");
  if (!data || !*data) {
    return {Status::kSkip, "set STYLOBENCH_TABLE1_DATA to the original corpora to run "
                           "scripts/check_table1.sh"};
  }
  fs::path script = fs::path(STYLOBENCH_SOURCE_DIR) / "scripts" / "check_table1.sh";
  std::string cmd = "\"" + script.string() + "\" \"" + data + "\"";
  int rc = std::system(cmd.c_str());
  if (rc != 0) return {Status::kFail, fmt::format("check_table1.sh exited with {}", rc)};
  return {Status::kPass, "document and author counts match"};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle end-to-end", OracleEndToEnd},
      {"random-baseline calibration", RandomCalibration},
      {"binning properties", BinningProperties},
      {"schema constants and split", SchemaAndSplit},
      {"readability and syllables", Readability},
      {"yuen t-test", Yuen},
      {"prefix round trip", PrefixRoundTrip},
      {"sensitivity harness", Sensitivity},
      {"scaling driver", Scaling},
      {"determinism", Determinism},
      {"corpus statistics (documented check)", Table1},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = v.status == Status::kPass   ? "PASS"
                      : v.status == Status::kSkip ? "SKIP"
                                                  : "FAIL";
    if (v.status == Status::kFail) ++failed;
    std::cout << fmt::format("{} criterion {:>2} {}: {}", tag, i + 1, criteria[i].first,
                             v.detail)
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
