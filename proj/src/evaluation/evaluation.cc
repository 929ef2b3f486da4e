#include "stylobench/evaluation/evaluation.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>

#include "stylobench/errors.h"
#include "stylobench/parallel.h"
#include "stylobench/prefix/prefix.h"

namespace stylobench {
namespace {

const char* AveragingName(SuccessAveraging a) {
  return a == SuccessAveraging::kPerExample ? "per_example" : "per_author";
}

std::optional<std::int64_t> TotalErrors(const AnnotatedDocument& doc) {
  if (!doc.error_counts) return std::nullopt;
  std::int64_t total = 0;
  for (const auto& [name, n] : *doc.error_counts) total += n;
  return total;
}

}  // namespace

double RandomBaseline(std::size_t k) { return 100.0 / static_cast<double>(k); }

double RelativeImprovement(double success, std::size_t k) {
  const double r = RandomBaseline(k);
  return (success - r) / r * 100.0;
}

std::vector<AttributeResult> AttributeSuccess(
    const BinModel& model, std::span<const ExampleOutcome> outcomes,
    SuccessAveraging averaging) {
  if (outcomes.empty()) throw EmptyResults("no evaluated examples");
  const auto& order = model.order();

  // Group example indices; per-example averaging is one group of everything.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const std::string key = averaging == SuccessAveraging::kPerAuthor
                                ? outcomes[i].author_id
                                : std::string();
    groups[key].push_back(i);
  }

  std::vector<AttributeResult> results;
  results.reserve(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    double sum_of_rates = 0;
    for (const auto& [key, members] : groups) {
      std::size_t hits = 0;
      for (std::size_t i : members) {
        const ExampleOutcome& o = outcomes[i];
        if (o.predicted[a] && *o.predicted[a] == o.target[a]) ++hits;
      }
      sum_of_rates += 100.0 * static_cast<double>(hits) /
                      static_cast<double>(members.size());
    }
    AttributeResult r;
    r.name = order[a];
    r.k = model.at(order[a]).k();
    r.success_rate = sum_of_rates / static_cast<double>(groups.size());
    r.random_baseline = RandomBaseline(r.k);
    r.relative_improvement = RelativeImprovement(r.success_rate, r.k);
    results.push_back(std::move(r));
  }
  return results;
}

Summary Summarize(std::span<const AttributeResult> results) {
  if (results.empty()) throw EmptyResults("no attribute results");
  Summary s;
  std::vector<double> ris;
  for (const auto& r : results) {
    s.mean_success_rate += r.success_rate;
    ris.push_back(r.relative_improvement);
  }
  s.mean_success_rate /= static_cast<double>(results.size());
  s.median_relative_improvement = LowerMedian(ris);
  return s;
}

double ErrorRate(std::int64_t errors, std::int64_t tokens) {
  if (tokens <= 0) return 0;
  return 100.0 * static_cast<double>(errors) / static_cast<double>(tokens);
}

FluencyResult Fluency(const std::map<std::string, ErrorSamples>& samples,
                      double trim, double alpha) {
  FluencyResult out;
  std::size_t tested = 0, fluent = 0;
  for (const auto& [author, s] : samples) {
    if (s.gold.empty() || s.generated.empty()) throw MissingErrorData(author);
    AuthorFluency af{author, std::nullopt, false};
    try {
      af.test = YuenTTest(s.gold, s.generated, trim);
      af.fluent = af.test->p > alpha;
      ++tested;
      if (af.fluent) ++fluent;
    } catch (const SampleTooSmall& e) {
      spdlog::warn("fluency: skipping author {}: {}", author, e.what());
      ++out.skipped;
    }
    out.authors.push_back(std::move(af));
  }
  if (tested == 0) throw SampleTooSmall("no author has enough documents for "
                                        "the fluency test");
  out.score = 100.0 * static_cast<double>(fluent) / static_cast<double>(tested);
  return out;
}

ExampleOutcome EvaluateGeneration(const EvalInputs& in,
                                  const GenerationResult& generation,
                                  const std::string& author_id,
                                  const BinnedVector& target) {
  const auto& order = in.model->order();
  ExampleOutcome o;
  o.doc_id = generation.doc_id;
  o.author_id = author_id;
  o.target.resize(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    auto it = std::find_if(target.begin(), target.end(), [&](const auto& b) {
      return b.attribute == order[a];
    });
    if (it == target.end()) {
      throw MissingAttribute(order[a] + " in targets of " + o.doc_id);
    }
    o.target[a] = it->bin;
  }
  o.predicted.assign(order.size(), std::nullopt);
  o.values.assign(order.size(), std::nullopt);

  Document doc{generation.doc_id, author_id, Source{},
               StripPrefix(generation.generated_text), std::nullopt};
  AnnotatedDocument ann;
  try {
    ann = in.annotator->Annotate(doc);
  } catch (const Error& e) {
    o.failures.push_back(AnnotationFailure(o.doc_id + ": " + e.what()).what());
    return o;
  }
  o.tokens = static_cast<std::int64_t>(ann.tokens.size());
  o.errors = TotalErrors(ann);

  PartialVector pv = ExtractPartial(ann, *in.schema);
  for (std::size_t a = 0; a < order.size(); ++a) {
    auto idx = in.schema->IndexOf(order[a]);
    if (!idx) {
      o.failures.push_back(UnknownAttribute(order[a]).what());
      continue;
    }
    if (pv.values[*idx]) {
      o.values[a] = *pv.values[*idx];
      o.predicted[a] = in.model->Assign(order[a], *pv.values[*idx]);
    } else {
      o.failures.push_back(order[a] + ": " + pv.failures[*idx]);
    }
  }
  return o;
}

EvalReport BuildReport(const EvalInputs& in,
                       std::span<const ExampleOutcome> outcomes) {
  EvalReport report;
  report.averaging = in.averaging;
  report.attributes = AttributeSuccess(*in.model, outcomes, in.averaging);
  report.summary = Summarize(report.attributes);
  report.examples = outcomes.size();
  std::set<std::string> authors;
  for (const auto& o : outcomes) {
    authors.insert(o.author_id);
    bool annotation_failed = std::any_of(
        o.failures.begin(), o.failures.end(),
        [](const std::string& f) { return f.starts_with("AnnotationFailure"); });
    if (annotation_failed) ++report.annotation_failures;
  }
  report.authors = authors.size();

  if (in.fluency) {
    std::map<std::string, ErrorSamples> samples;
    for (const auto& g : in.gold) {
      if (!authors.contains(g.doc.author_id)) continue;
      auto errors = TotalErrors(g);
      if (!errors) throw MissingErrorData(g.doc.author_id + " (gold)");
      samples[g.doc.author_id].gold.push_back(
          ErrorRate(*errors, static_cast<std::int64_t>(g.tokens.size())));
    }
    for (const auto& o : outcomes) {
      if (!o.errors) continue;  // annotation failed
      samples[o.author_id].generated.push_back(ErrorRate(*o.errors, o.tokens));
    }
    for (const auto& a : authors) {
      const ErrorSamples& s = samples[a];
      if (s.gold.empty()) throw MissingErrorData(a + " (gold)");
      if (s.generated.empty()) throw MissingErrorData(a + " (generated)");
    }
    report.fluency = Fluency(samples, in.trim);
  }
  return report;
}

EvalReport Evaluate(const EvalInputs& in, const TargetIndex& targets,
                    std::span<const GenerationResult> generations) {
  std::map<std::string, const AnnotatedDocument*> gold_by_id;
  for (const auto& g : in.gold) gold_by_id[g.doc.doc_id] = &g;

  std::vector<ExampleOutcome> outcomes(generations.size());
  ParallelFor(generations.size(), in.jobs, [&](std::size_t i) {
    const auto& g = generations[i];
    auto t = targets.find(g.doc_id);
    if (t == targets.end()) {
      throw MalformedInput("no target bins for generation " + g.doc_id);
    }
    auto gold = gold_by_id.find(g.doc_id);
    if (gold == gold_by_id.end()) {
      throw MalformedInput("no gold document for generation " + g.doc_id);
    }
    outcomes[i] =
        EvaluateGeneration(in, g, gold->second->doc.author_id, t->second);
  });
  return BuildReport(in, outcomes);
}

OrderedJson EvalReport::ToJson() const {
  OrderedJson j;
  j["examples"] = examples;
  j["authors"] = authors;
  j["annotation_failures"] = annotation_failures;
  j["averaging"] = AveragingName(averaging);
  j["mean_success_rate"] = summary.mean_success_rate;
  j["median_relative_improvement"] = summary.median_relative_improvement;
  if (fluency) {
    j["fluency_score"] = fluency->score;
    OrderedJson per_author = OrderedJson::array();
    for (const auto& a : fluency->authors) {
      OrderedJson r;
      r["author_id"] = a.author_id;
      r["fluent"] = a.fluent;
      if (a.test) {
        r["t"] = a.test->t;
        r["df"] = a.test->df;
        r["p"] = a.test->p;
      } else {
        r["skipped"] = true;
      }
      per_author.push_back(std::move(r));
    }
    j["fluency_authors"] = std::move(per_author);
  } else {
    j["fluency_score"] = nullptr;
  }
  OrderedJson attrs = OrderedJson::array();
  for (const auto& a : attributes) {
    OrderedJson r;
    r["attribute"] = a.name;
    r["k"] = a.k;
    r["success_rate"] = a.success_rate;
    r["random_baseline"] = a.random_baseline;
    r["relative_improvement"] = a.relative_improvement;
    attrs.push_back(std::move(r));
  }
  j["attributes"] = std::move(attrs);
  return j;
}

std::string EvalReport::ToTable(bool per_attribute) const {
  std::string out;
  out += fmt::format("{:<30}{:>12}\n", "examples", examples);
  out += fmt::format("{:<30}{:>12}\n", "authors", authors);
  out += fmt::format("{:<30}{:>12}\n", "annotation failures",
                     annotation_failures);
  out += fmt::format("{:<30}{:>12.2f}\n", "mean success rate",
                     summary.mean_success_rate);
  out += fmt::format("{:<30}{:>12.2f}\n", "median relative improvement",
                     summary.median_relative_improvement);
  if (fluency) {
    out += fmt::format("{:<30}{:>12.2f}\n", "fluency", fluency->score);
  }
  if (per_attribute) {
    out += fmt::format("\n{:<16}{:>4}{:>10}{:>10}{:>12}\n", "attribute", "k",
                       "success", "random", "rel.impr.");
    for (const auto& a : attributes) {
      out += fmt::format("{:<16}{:>4}{:>10.2f}{:>10.2f}{:>12.2f}\n", a.name,
                         a.k, a.success_rate, a.random_baseline,
                         a.relative_improvement);
    }
  }
  return out;
}

}  // namespace stylobench
