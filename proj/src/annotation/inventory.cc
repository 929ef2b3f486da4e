#include "stylobench/annotation/inventory.h"

#include <algorithm>

namespace stylobench {

bool IsUpos(std::string_view tag) {
  return std::find(kUposTags.begin(), kUposTags.end(), tag) != kUposTags.end();
}

bool IsClearNlpLabel(std::string_view label) {
  return std::find(kClearNlpLabels.begin(), kClearNlpLabels.end(), label) !=
         kClearNlpLabels.end();
}

}  // namespace stylobench
