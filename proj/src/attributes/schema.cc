#include "stylobench/attributes/schema.h"

#include <algorithm>
#include <set>

#include "stylobench/annotation/inventory.h"
#include "stylobench/errors.h"

namespace stylobench {
namespace {

const std::vector<std::string> kLexical = {"num_tokens", "num_sents",
                                           "readability"};

template <typename Array>
std::vector<std::string> ToStrings(const Array& a) {
  return std::vector<std::string>(a.begin(), a.end());
}

// Names end up inside prefix tokens "<name:label>".
void CheckName(const std::string& name) {
  if (name.empty()) throw InvalidSchema("empty attribute name");
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == ':' || c == '<' ||
        c == '>' || c == '|') {
      throw InvalidSchema("attribute name '" + name +
                          "' contains a reserved character");
    }
  }
}

}  // namespace

const char* FamilyName(AttributeFamily family) {
  switch (family) {
    case AttributeFamily::kLexical:
      return "lexical";
    case AttributeFamily::kPos:
      return "pos";
    case AttributeFamily::kDeprel:
      return "deprel";
    case AttributeFamily::kDiscourse:
      return "discourse";
  }
  return "lexical";
}

void AttributeSchema::Build(const std::vector<std::string>& lexical,
                            const std::vector<std::string>& pos,
                            bool pos_other,
                            const std::vector<std::string>& deprel,
                            const std::vector<std::string>& discourse) {
  attributes_.clear();
  for (const auto& l : lexical) {
    if (std::find(kLexical.begin(), kLexical.end(), l) == kLexical.end()) {
      throw InvalidSchema("unknown lexical attribute '" + l + "'");
    }
    attributes_.push_back({l, AttributeFamily::kLexical, l});
  }
  for (const auto& p : pos) {
    if (!IsUpos(p)) throw InvalidSchema("'" + p + "' is not a UPOS tag");
    if (pos_other && std::find(kOtherUposTags.begin(), kOtherUposTags.end(),
                               p) != kOtherUposTags.end()) {
      throw InvalidSchema(p + " is already counted by OTHER");
    }
    attributes_.push_back({p, AttributeFamily::kPos, p});
  }
  if (pos_other) attributes_.push_back({"OTHER", AttributeFamily::kPos, "OTHER"});
  for (const auto& d : deprel) {
    if (!IsClearNlpLabel(d)) {
      throw InvalidSchema("'" + d + "' is not a tracked dependency label");
    }
    attributes_.push_back({d, AttributeFamily::kDeprel, d});
  }
  discourse_ = discourse;
  for (const auto& r : discourse) {
    attributes_.push_back({"rst_" + r, AttributeFamily::kDiscourse, r});
  }
  std::set<std::string> seen;
  for (const auto& a : attributes_) {
    CheckName(a.name);
    if (!seen.insert(a.name).second) {
      throw InvalidSchema("duplicate attribute '" + a.name + "'");
    }
  }
}

AttributeSchema AttributeSchema::Default() {
  AttributeSchema s;
  s.Build(kLexical, ToStrings(kCoreUposTags), false, ToStrings(kClearNlpLabels),
          ToStrings(kDefaultRstRelations));
  return s;
}

AttributeSchema AttributeSchema::FromJson(const Json& j) {
  auto list = [&](const char* key, std::vector<std::string> fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<std::vector<std::string>>();
  };
  AttributeSchema s;
  std::string formula = j.value("readability", std::string("fkgl"));
  if (formula == "fkgl") {
    s.readability_ = ReadabilityFormula::kFkgl;
  } else if (formula == "reading_ease") {
    s.readability_ = ReadabilityFormula::kReadingEase;
  } else {
    throw InvalidSchema("unknown readability formula '" + formula + "'");
  }
  s.Build(list("lexical", kLexical), list("pos", ToStrings(kCoreUposTags)),
          j.value("pos_other", false),
          list("deprel", ToStrings(kClearNlpLabels)),
          list("discourse", ToStrings(kDefaultRstRelations)));
  return s;
}

AttributeSchema AttributeSchema::Load(const std::filesystem::path& path) {
  try {
    return FromJson(Json::parse(ReadFile(path)));
  } catch (const Json::exception& e) {
    throw InvalidSchema(path.string() + ": " + e.what());
  }
}

Json AttributeSchema::ToJson() const {
  Json j;
  std::vector<std::string> lexical, pos, deprel;
  bool other = false;
  for (const auto& a : attributes_) {
    switch (a.family) {
      case AttributeFamily::kLexical:
        lexical.push_back(a.key);
        break;
      case AttributeFamily::kPos:
        if (a.key == "OTHER") {
          other = true;
        } else {
          pos.push_back(a.key);
        }
        break;
      case AttributeFamily::kDeprel:
        deprel.push_back(a.key);
        break;
      case AttributeFamily::kDiscourse:
        break;
    }
  }
  j["lexical"] = lexical;
  j["readability"] =
      readability_ == ReadabilityFormula::kFkgl ? "fkgl" : "reading_ease";
  j["pos"] = pos;
  j["pos_other"] = other;
  j["deprel"] = deprel;
  j["discourse"] = discourse_;
  return j;
}

std::vector<std::string> AttributeSchema::names() const {
  std::vector<std::string> out;
  out.reserve(attributes_.size());
  for (const auto& a : attributes_) out.push_back(a.name);
  return out;
}

std::optional<std::size_t> AttributeSchema::IndexOf(
    const std::string& name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

bool AttributeSchema::Has(AttributeFamily family) const {
  return std::any_of(attributes_.begin(), attributes_.end(),
                     [&](const Attribute& a) { return a.family == family; });
}

}  // namespace stylobench
