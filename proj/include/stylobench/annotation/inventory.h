#ifndef STYLOBENCH_ANNOTATION_INVENTORY_H_
#define STYLOBENCH_ANNOTATION_INVENTORY_H_

#include <array>
#include <string_view>

namespace stylobench {

// The 17 Universal POS tags.
inline constexpr std::array<std::string_view, 17> kUposTags = {
    "ADJ",  "ADP",  "ADV",   "AUX",   "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

// Open-class (6) then closed-class (8) core tags, in attribute order.
inline constexpr std::array<std::string_view, 14> kCoreUposTags = {
    "ADJ", "ADV", "INTJ", "NOUN",  "PROPN", "VERB", "ADP",
    "AUX", "CCONJ", "DET", "NUM", "PART",  "PRON", "SCONJ"};

// Tags that fall into the "other" class.
inline constexpr std::array<std::string_view, 3> kOtherUposTags = {"PUNCT",
                                                                   "SYM", "X"};

// The 32 ClearNLP dependency labels tracked as attributes. Labels outside
// this list must be mapped onto it at ingestion (see data/labelmaps/).
inline constexpr std::array<std::string_view, 32> kClearNlpLabels = {
    "acl",   "acomp", "advcl",     "advmod", "amod",     "appos",  "attr",
    "aux",   "auxpass", "case",    "cc",     "ccomp",    "compound", "conj",
    "dep",   "det",   "dobj",      "mark",   "neg",      "npadvmod", "nsubj",
    "nsubjpass", "nummod", "pcomp", "pobj",  "poss",     "prep",   "prt",
    "punct", "relcl", "root",      "xcomp"};

inline constexpr std::array<std::string_view, 3> kDefaultRstRelations = {
    "elaboration", "attribution", "joint"};

bool IsUpos(std::string_view tag);
bool IsClearNlpLabel(std::string_view label);

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_INVENTORY_H_
