#ifndef STYLOBENCH_ATTRIBUTES_SCHEMA_H_
#define STYLOBENCH_ATTRIBUTES_SCHEMA_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stylobench/io.h"

namespace stylobench {

enum class AttributeFamily { kLexical, kPos, kDeprel, kDiscourse };

const char* FamilyName(AttributeFamily family);

enum class ReadabilityFormula { kFkgl, kReadingEase };

struct Attribute {
  std::string name;  // serialized name, e.g. "num_tokens", "VERB", "nsubj"
  AttributeFamily family;
  // What is counted: the lexical measure, UPOS tag, dependency label or
  // discourse relation. "OTHER" in the POS family counts PUNCT, SYM and X.
  std::string key;

  bool operator==(const Attribute&) const = default;
};

// Ordered attribute list. The order is canonical: it fixes vector layout
// and prefix serialization order.
class AttributeSchema {
 public:
  // 3 lexical + 14 core POS + 32 dependency + 3 discourse = 52.
  static AttributeSchema Default();

  // Keys (all optional, defaults as in Default()): "lexical", "pos",
  // "pos_other", "deprel", "discourse", "readability" ("fkgl" or
  // "reading_ease").
  static AttributeSchema FromJson(const Json& j);
  static AttributeSchema Load(const std::filesystem::path& path);
  Json ToJson() const;

  const std::vector<Attribute>& attributes() const { return attributes_; }
  std::vector<std::string> names() const;
  std::size_t size() const { return attributes_.size(); }
  std::optional<std::size_t> IndexOf(const std::string& name) const;
  bool Has(AttributeFamily family) const;
  ReadabilityFormula readability() const { return readability_; }
  const std::vector<std::string>& discourse_relations() const {
    return discourse_;
  }

  bool operator==(const AttributeSchema& o) const {
    return attributes_ == o.attributes_ && readability_ == o.readability_;
  }

 private:
  void Build(const std::vector<std::string>& lexical,
             const std::vector<std::string>& pos, bool pos_other,
             const std::vector<std::string>& deprel,
             const std::vector<std::string>& discourse);

  std::vector<Attribute> attributes_;
  std::vector<std::string> discourse_;
  ReadabilityFormula readability_ = ReadabilityFormula::kFkgl;
};

}  // namespace stylobench

#endif  // STYLOBENCH_ATTRIBUTES_SCHEMA_H_
