#include "stylobench/annotation/annotated_document.h"

#include <spdlog/spdlog.h>

#include "stylobench/errors.h"

namespace stylobench {
namespace {

void CheckCounts(const CountMap& counts, const std::string& doc_id) {
  for (const auto& [name, n] : counts) {
    if (n < 0) {
      throw NegativeCount(doc_id + ": " + name + " = " + std::to_string(n));
    }
  }
}

}  // namespace

OrderedJson AnnotatedToJson(const AnnotatedDocument& d) {
  OrderedJson j = DocumentToJson(d.doc);
  OrderedJson toks = OrderedJson::array();
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    const Token& t = d.tokens[i];
    OrderedJson o;
    o["form"] = t.surface;
    o["sent"] = t.sentence_index;
    o["span"] = {t.start, t.end};
    o["syl"] = i < d.syllable_counts.size() ? d.syllable_counts[i] : 0;
    if (t.upos) o["upos"] = *t.upos;
    if (t.head) o["head"] = *t.head;
    if (t.deprel) o["deprel"] = *t.deprel;
    toks.push_back(std::move(o));
  }
  j["tokens"] = std::move(toks);
  j["sentence_count"] = d.sentence_count;
  j["discourse"] = d.discourse_counts ? OrderedJson(*d.discourse_counts)
                                      : OrderedJson(nullptr);
  j["errors"] =
      d.error_counts ? OrderedJson(*d.error_counts) : OrderedJson(nullptr);
  return j;
}

AnnotatedDocument AnnotatedFromJson(const Json& j) {
  AnnotatedDocument d;
  d.doc = DocumentFromJson(j);
  for (const auto& o : j.at("tokens")) {
    Token t;
    t.surface = o.at("form").get<std::string>();
    t.sentence_index = o.at("sent").get<int>();
    t.start = o.at("span").at(0).get<std::size_t>();
    t.end = o.at("span").at(1).get<std::size_t>();
    if (o.contains("upos")) t.upos = o["upos"].get<std::string>();
    if (o.contains("head")) t.head = o["head"].get<int>();
    if (o.contains("deprel")) t.deprel = o["deprel"].get<std::string>();
    d.syllable_counts.push_back(o.value("syl", 0));
    d.tokens.push_back(std::move(t));
  }
  d.sentence_count = j.at("sentence_count").get<int>();
  if (auto it = j.find("discourse"); it != j.end() && !it->is_null()) {
    d.discourse_counts = it->get<CountMap>();
  }
  if (auto it = j.find("errors"); it != j.end() && !it->is_null()) {
    d.error_counts = it->get<CountMap>();
  }
  return d;
}

SidecarCounts ParseSidecar(const std::vector<Json>& records) {
  SidecarCounts out;
  for (const auto& r : records) {
    std::string id = r.at("doc_id").get<std::string>();
    CountMap counts;
    for (const auto& [name, v] : r.at("counts").items()) {
      if (!v.is_number_integer()) {
        throw MalformedInput(id + ": count '" + name + "' is not an integer");
      }
      counts[name] = v.get<std::int64_t>();
    }
    CheckCounts(counts, id);
    out[id] = std::move(counts);
  }
  return out;
}

AnnotatedDocument AttachSidecarCounts(AnnotatedDocument doc,
                                      const SidecarCounts& sidecar,
                                      SidecarKind kind,
                                      std::span<const std::string> zero_names) {
  CountMap counts;
  if (auto it = sidecar.find(doc.doc.doc_id); it != sidecar.end()) {
    CheckCounts(it->second, doc.doc.doc_id);
    counts = it->second;
  } else {
    spdlog::warn("no {} counts for {}; using zeros",
                 kind == SidecarKind::kDiscourse ? "discourse" : "error",
                 doc.doc.doc_id);
  }
  for (const auto& name : zero_names) counts.try_emplace(name, 0);
  if (kind == SidecarKind::kDiscourse) {
    doc.discourse_counts = std::move(counts);
  } else {
    doc.error_counts = std::move(counts);
  }
  return doc;
}

}  // namespace stylobench
