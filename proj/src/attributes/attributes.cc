#include "stylobench/attributes/attributes.h"

#include <algorithm>

#include "stylobench/annotation/inventory.h"
#include "stylobench/annotation/utf8.h"
#include "stylobench/errors.h"

namespace stylobench {
namespace {

bool IsOtherTag(const std::string& tag) {
  return std::find(kOtherUposTags.begin(), kOtherUposTags.end(), tag) !=
         kOtherUposTags.end();
}

}  // namespace

double AttributeVector::at(const std::string& name) const {
  auto idx = schema->IndexOf(name);
  if (!idx) throw UnknownAttribute(name);
  return values[*idx];
}

TextCounts CountText(const AnnotatedDocument& doc) {
  TextCounts c;
  c.sentences = doc.sentence_count;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (utf8::IsPunctuationOnly(doc.tokens[i].surface)) continue;
    ++c.words;
    c.syllables += i < doc.syllable_counts.size() ? doc.syllable_counts[i] : 0;
  }
  return c;
}

std::map<std::string, std::int64_t> UposHistogram(const AnnotatedDocument& doc) {
  std::map<std::string, std::int64_t> h;
  for (auto tag : kUposTags) h[std::string(tag)] = 0;
  for (const Token& t : doc.tokens) {
    if (t.upos) ++h[*t.upos];
  }
  return h;
}

PartialVector ExtractPartial(const AnnotatedDocument& doc,
                             const AttributeSchema& schema) {
  PartialVector out;
  out.values.resize(schema.size());
  out.failures.resize(schema.size());

  const bool has_tokens = !doc.tokens.empty();
  const bool has_pos =
      has_tokens && std::all_of(doc.tokens.begin(), doc.tokens.end(),
                                [](const Token& t) { return t.upos.has_value(); });
  const bool has_deprel =
      has_tokens &&
      std::all_of(doc.tokens.begin(), doc.tokens.end(),
                  [](const Token& t) { return t.deprel.has_value(); });

  std::map<std::string, std::int64_t> pos_counts, dep_counts;
  std::int64_t other = 0;
  for (const Token& t : doc.tokens) {
    if (t.upos) {
      ++pos_counts[*t.upos];
      if (IsOtherTag(*t.upos)) ++other;
    }
    if (t.deprel) ++dep_counts[*t.deprel];
  }
  auto count_of = [](const std::map<std::string, std::int64_t>& m,
                     const std::string& k) -> double {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : static_cast<double>(it->second);
  };

  const auto& attrs = schema.attributes();
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const Attribute& a = attrs[i];
    auto fail = [&](std::string why) { out.failures[i] = std::move(why); };
    switch (a.family) {
      case AttributeFamily::kLexical:
        if (!has_tokens) {
          fail("MissingAnnotation: lexical");
        } else if (a.key == "num_tokens") {
          out.values[i] = static_cast<double>(doc.tokens.size());
        } else if (a.key == "num_sents") {
          out.values[i] = static_cast<double>(doc.sentence_count);
        } else {
          try {
            out.values[i] = Readability(schema.readability(), CountText(doc));
          } catch (const DegenerateText& e) {
            fail(e.what());
          }
        }
        break;
      case AttributeFamily::kPos:
        if (!has_pos) {
          fail("MissingAnnotation: pos");
        } else {
          out.values[i] = a.key == "OTHER" ? static_cast<double>(other)
                                           : count_of(pos_counts, a.key);
        }
        break;
      case AttributeFamily::kDeprel:
        if (!has_deprel) {
          fail("MissingAnnotation: deprel");
        } else {
          out.values[i] = count_of(dep_counts, a.key);
        }
        break;
      case AttributeFamily::kDiscourse:
        if (!doc.discourse_counts) {
          fail("MissingAnnotation: discourse");
        } else {
          out.values[i] = count_of(*doc.discourse_counts, a.key);
        }
        break;
    }
  }
  return out;
}

AttributeVector Extract(const AnnotatedDocument& doc, const SchemaPtr& schema) {
  PartialVector partial = ExtractPartial(doc, *schema);
  AttributeVector v{schema, {}};
  v.values.reserve(schema->size());
  for (std::size_t i = 0; i < partial.values.size(); ++i) {
    if (!partial.values[i]) {
      const std::string& why = partial.failures[i];
      if (why.starts_with("MissingAnnotation")) {
        throw MissingAnnotation(doc.doc.doc_id + ": " +
                                FamilyName(schema->attributes()[i].family));
      }
      throw DegenerateText(doc.doc.doc_id + ": " + why);
    }
    v.values.push_back(*partial.values[i]);
  }
  return v;
}

AttributeVector AuthorVector(std::span<const AttributeVector> doc_vectors) {
  if (doc_vectors.empty()) throw EmptyInput("no document vectors to average");
  const SchemaPtr& schema = doc_vectors.front().schema;
  for (const auto& v : doc_vectors) {
    if (!(v.schema == schema || (v.schema && schema && *v.schema == *schema)) ||
        v.values.size() != schema->size()) {
      throw SchemaMismatch("vectors do not share a schema");
    }
  }
  AttributeVector out{schema, std::vector<double>(schema->size())};
  std::vector<double> column(doc_vectors.size());
  for (std::size_t a = 0; a < schema->size(); ++a) {
    for (std::size_t i = 0; i < doc_vectors.size(); ++i) {
      column[i] = doc_vectors[i].values[a];
    }
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double x : column) sum += x;
    double mean = sum / static_cast<double>(column.size());
    out.values[a] = std::clamp(mean, column.front(), column.back());
  }
  return out;
}

OrderedJson VectorToJson(const AttributeVector& v, const std::string& id_key,
                         const std::string& id) {
  OrderedJson j;
  j[id_key] = id;
  OrderedJson values = OrderedJson::object();
  const auto& attrs = v.schema->attributes();
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    values[attrs[i].name] = v.values[i];
  }
  j["values"] = std::move(values);
  return j;
}

AttributeVector VectorFromJson(const Json& j, const SchemaPtr& schema) {
  const Json& values = j.at("values");
  if (values.size() != schema->size()) {
    throw SchemaMismatch("record has " + std::to_string(values.size()) +
                         " attributes, schema has " +
                         std::to_string(schema->size()));
  }
  AttributeVector v{schema, {}};
  for (const auto& a : schema->attributes()) {
    auto it = values.find(a.name);
    if (it == values.end()) throw SchemaMismatch("record lacks " + a.name);
    v.values.push_back(it->get<double>());
  }
  return v;
}

}  // namespace stylobench
