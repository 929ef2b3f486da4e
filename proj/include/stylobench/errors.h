#ifndef STYLOBENCH_ERRORS_H_
#define STYLOBENCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stylobench {

// Base class for every error raised by the toolkit. `kind()` is the stable
// machine-readable name used in reports and logs.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define STYLOBENCH_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

// corpus
STYLOBENCH_DEFINE_ERROR(AuthorTooSmall);
STYLOBENCH_DEFINE_ERROR(MalformedInput);

// annotation
STYLOBENCH_DEFINE_ERROR(EmptyTrainingData);
STYLOBENCH_DEFINE_ERROR(MalformedLine);
STYLOBENCH_DEFINE_ERROR(UnknownDeprel);
STYLOBENCH_DEFINE_ERROR(NegativeCount);
STYLOBENCH_DEFINE_ERROR(AlignmentError);
STYLOBENCH_DEFINE_ERROR(ModelFormatError);

// attributes
STYLOBENCH_DEFINE_ERROR(MissingAnnotation);
STYLOBENCH_DEFINE_ERROR(DegenerateText);
STYLOBENCH_DEFINE_ERROR(EmptyInput);
STYLOBENCH_DEFINE_ERROR(SchemaMismatch);
STYLOBENCH_DEFINE_ERROR(InvalidSchema);

// binning
STYLOBENCH_DEFINE_ERROR(NoValues);
STYLOBENCH_DEFINE_ERROR(UnknownAttribute);

// prefix
STYLOBENCH_DEFINE_ERROR(MissingAttribute);
STYLOBENCH_DEFINE_ERROR(MissingAuthorVector);
STYLOBENCH_DEFINE_ERROR(EmptyText);
STYLOBENCH_DEFINE_ERROR(PrefixParseError);

// generation
STYLOBENCH_DEFINE_ERROR(EndpointUnreachable);
STYLOBENCH_DEFINE_ERROR(MalformedResponse);
STYLOBENCH_DEFINE_ERROR(Timeout);
STYLOBENCH_DEFINE_ERROR(UnknownPrompt);
STYLOBENCH_DEFINE_ERROR(EmptyModel);

// evaluation
STYLOBENCH_DEFINE_ERROR(AnnotationFailure);
STYLOBENCH_DEFINE_ERROR(EmptyResults);
STYLOBENCH_DEFINE_ERROR(SampleTooSmall);
STYLOBENCH_DEFINE_ERROR(MissingErrorData);

// pipeline
STYLOBENCH_DEFINE_ERROR(ConfigInvalid);
STYLOBENCH_DEFINE_ERROR(IoError);

#undef STYLOBENCH_DEFINE_ERROR

// Wraps the failure of one pipeline stage.
class StageFailed : public Error {
 public:
  StageFailed(const std::string& stage, const std::string& cause)
      : Error("StageFailed", stage + ": " + cause), stage_(stage) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace stylobench

#endif  // STYLOBENCH_ERRORS_H_
