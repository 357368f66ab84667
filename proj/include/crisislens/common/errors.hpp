#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crisislens {

// Base of every error the library throws on purpose. Stage drivers catch this
// type to attach the failing stage name.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CRISISLENS_DEFINE_ERROR(Name)       \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// ingest
CRISISLENS_DEFINE_ERROR(MalformedRecord);
CRISISLENS_DEFINE_ERROR(MissingField);

// netgraph
CRISISLENS_DEFINE_ERROR(UnknownToken);
CRISISLENS_DEFINE_ERROR(IoError);

// topics
CRISISLENS_DEFINE_ERROR(EmptyCorpus);
CRISISLENS_DEFINE_ERROR(DimensionMismatch);
CRISISLENS_DEFINE_ERROR(DegenerateCovariance);
CRISISLENS_DEFINE_ERROR(TooFewPoints);
CRISISLENS_DEFINE_ERROR(NoTopics);
CRISISLENS_DEFINE_ERROR(TooFewTopics);

// sentiment
CRISISLENS_DEFINE_ERROR(InvalidScores);
CRISISLENS_DEFINE_ERROR(AllZero);

// causality
CRISISLENS_DEFINE_ERROR(EmptyWindow);
CRISISLENS_DEFINE_ERROR(MalformedFile);
CRISISLENS_DEFINE_ERROR(WindowMismatch);
CRISISLENS_DEFINE_ERROR(RankDeficient);
CRISISLENS_DEFINE_ERROR(InsufficientData);

// provider client
CRISISLENS_DEFINE_ERROR(ProviderUnavailable);
CRISISLENS_DEFINE_ERROR(ProviderError);

// pipeline
CRISISLENS_DEFINE_ERROR(ConfigError);
CRISISLENS_DEFINE_ERROR(StageInputMissing);

#undef CRISISLENS_DEFINE_ERROR

}  // namespace crisislens
