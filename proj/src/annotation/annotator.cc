#include "stylobench/annotation/annotator.h"

#include <algorithm>

#include "stylobench/annotation/syllables.h"
#include "stylobench/annotation/utf8.h"
#include "stylobench/errors.h"
#include "stylobench/io.h"

namespace stylobench {

std::vector<Token> AlignConllu(std::string_view text,
                               std::span<const ConlluSentence> sentences) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (const ConlluToken& ct : sentences[s].tokens) {
      while (pos < text.size()) {
        utf8::CodePoint cp = utf8::Decode(text, pos);
        if (!utf8::IsSpace(cp.value)) break;
        pos += cp.length;
      }
      if (ct.form.empty() || text.compare(pos, ct.form.size(), ct.form) != 0) {
        throw AlignmentError("form '" + ct.form + "' not found at byte " +
                             std::to_string(pos));
      }
      Token t;
      t.surface = ct.form;
      t.sentence_index = static_cast<int>(s);
      t.start = pos;
      t.end = pos + ct.form.size();
      t.upos = ct.upos;
      t.head = ct.head;
      t.deprel = ct.deprel;
      tokens.push_back(std::move(t));
      pos += ct.form.size();
    }
  }
  return tokens;
}

Annotator::Annotator(AnnotationSources sources, Tokenizer tokenizer)
    : sources_(std::move(sources)), tokenizer_(std::move(tokenizer)) {}

AnnotatedDocument Annotator::Annotate(const Document& doc) const {
  AnnotatedDocument out;
  out.doc = doc;

  std::optional<std::filesystem::path> conllu_file;
  if (sources_.conllu_dir) {
    auto p = *sources_.conllu_dir / (doc.doc_id + ".conllu");
    if (std::filesystem::exists(p)) conllu_file = p;
  }
  if (conllu_file) {
    auto sentences = ParseConllu(ReadFile(*conllu_file), sources_.label_map);
    try {
      out.tokens = AlignConllu(doc.text, sentences);
    } catch (const AlignmentError& e) {
      throw AlignmentError(doc.doc_id + ": " + e.what());
    }
    out.sentence_count = out.tokens.empty() ? 0 : static_cast<int>(sentences.size());
    bool missing_upos = std::any_of(out.tokens.begin(), out.tokens.end(),
                                    [](const Token& t) { return !t.upos; });
    if (missing_upos && sources_.tagger) {
      std::vector<Token> retagged = out.tokens;
      sources_.tagger->Tag(retagged);
      for (std::size_t i = 0; i < out.tokens.size(); ++i) {
        if (!out.tokens[i].upos) out.tokens[i].upos = retagged[i].upos;
      }
    }
  } else {
    Segmentation seg = tokenizer_.Tokenize(doc.text);
    out.tokens = std::move(seg.tokens);
    out.sentence_count = seg.sentence_count;
    if (sources_.tagger) sources_.tagger->Tag(out.tokens);
  }

  out.syllable_counts.reserve(out.tokens.size());
  for (const Token& t : out.tokens) {
    out.syllable_counts.push_back(CountSyllables(t.surface));
  }
  if (sources_.discourse) {
    out = AttachSidecarCounts(std::move(out), *sources_.discourse,
                              SidecarKind::kDiscourse,
                              sources_.discourse_names);
  }
  if (sources_.errors) {
    out = AttachSidecarCounts(std::move(out), *sources_.errors,
                              SidecarKind::kErrors);
  }
  return out;
}

}  // namespace stylobench
