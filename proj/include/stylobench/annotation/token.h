#ifndef STYLOBENCH_ANNOTATION_TOKEN_H_
#define STYLOBENCH_ANNOTATION_TOKEN_H_

#include <cstddef>
#include <optional>
#include <string>

namespace stylobench {

struct Token {
  std::string surface;
  int sentence_index = 0;
  // Half-open byte span into the document text.
  std::size_t start = 0;
  std::size_t end = 0;
  std::optional<std::string> upos;
  std::optional<std::string> deprel;
  // 1-based index of the head within the sentence, 0 for the root.
  std::optional<int> head;

  bool operator==(const Token&) const = default;
};

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_TOKEN_H_
