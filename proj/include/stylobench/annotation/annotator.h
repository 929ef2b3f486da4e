#ifndef STYLOBENCH_ANNOTATION_ANNOTATOR_H_
#define STYLOBENCH_ANNOTATION_ANNOTATOR_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylobench/annotation/annotated_document.h"
#include "stylobench/annotation/conllu.h"
#include "stylobench/annotation/tagger.h"
#include "stylobench/annotation/tokenizer.h"

namespace stylobench {

// Where each annotation layer comes from. Every source is optional; layers
// without a source stay unset and the attribute extractor reports them.
struct AnnotationSources {
  const Tagger* tagger = nullptr;
  // Directory of `<doc_id>.conllu` files. When a document has one, its
  // tokens, sentences, UPOS (where given) and dependencies come from it.
  std::optional<std::filesystem::path> conllu_dir;
  const DeprelMap* label_map = nullptr;
  const SidecarCounts* discourse = nullptr;
  const SidecarCounts* errors = nullptr;
  std::vector<std::string> discourse_names;
};

// Locates each CoNLL-U form in `text` in order, allowing only whitespace
// between consecutive forms. Throws AlignmentError on a mismatch.
std::vector<Token> AlignConllu(std::string_view text,
                               std::span<const ConlluSentence> sentences);

class Annotator {
 public:
  Annotator(AnnotationSources sources, Tokenizer tokenizer = Tokenizer());

  // Pure function of the document and the sources; safe to call
  // concurrently.
  AnnotatedDocument Annotate(const Document& doc) const;

  const Tokenizer& tokenizer() const { return tokenizer_; }

 private:
  AnnotationSources sources_;
  Tokenizer tokenizer_;
};

}  // namespace stylobench

#endif  // STYLOBENCH_ANNOTATION_ANNOTATOR_H_
