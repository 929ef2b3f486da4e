#ifndef STYLOBENCH_ATTRIBUTES_ATTRIBUTES_H_
#define STYLOBENCH_ATTRIBUTES_ATTRIBUTES_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/annotation/annotated_document.h"
#include "stylobench/attributes/readability.h"
#include "stylobench/attributes/schema.h"

namespace stylobench {

using SchemaPtr = std::shared_ptr<const AttributeSchema>;

// Values aligned with the schema's attribute order. Frequency attributes
// are raw counts (or their per-author means); readability is a grade level
// and may be negative.
struct AttributeVector {
  SchemaPtr schema;
  std::vector<double> values;

  double at(const std::string& name) const;
};

// Per-attribute outcome of a lenient extraction: a value, or the reason the
// attribute could not be computed.
struct PartialVector {
  std::vector<std::optional<double>> values;
  std::vector<std::string> failures;  // parallel; empty when value present
};

TextCounts CountText(const AnnotatedDocument& doc);

// Counts of all 17 UPOS tags (tokens without a tag are not counted).
std::map<std::string, std::int64_t> UposHistogram(const AnnotatedDocument& doc);

// Strict extraction. Throws MissingAnnotation(family) when a family in the
// schema lacks its annotation layer, DegenerateText when readability cannot
// be computed.
AttributeVector Extract(const AnnotatedDocument& doc, const SchemaPtr& schema);

// Same computation, but failures are recorded per attribute instead of
// thrown.
PartialVector ExtractPartial(const AnnotatedDocument& doc,
                             const AttributeSchema& schema);

// Element-wise mean. Coordinates are summed in sorted order so the result
// does not depend on input order. Throws EmptyInput or SchemaMismatch.
AttributeVector AuthorVector(std::span<const AttributeVector> doc_vectors);

// JSONL record {<id_key>: id, values: {name: number}} in schema order.
OrderedJson VectorToJson(const AttributeVector& v, const std::string& id_key,
                         const std::string& id);
// Throws SchemaMismatch when the record's names differ from the schema.
AttributeVector VectorFromJson(const Json& j, const SchemaPtr& schema);

}  // namespace stylobench

#endif  // STYLOBENCH_ATTRIBUTES_ATTRIBUTES_H_
