#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crisislens/common/dates.hpp"
#include "crisislens/common/series.hpp"
#include "crisislens/geo/gazetteer.hpp"

namespace crisislens::provider {
class ProviderClient;
}

namespace crisislens::sentiment {

// Indices match the score order (negative, neutral, positive).
enum class Sentiment { negative = 0, neutral = 1, positive = 2 };

std::string_view sentiment_name(Sentiment s);   // "negative", ...
std::string_view sentiment_short(Sentiment s);  // "NEG", "NEU", "POS"
Sentiment parse_sentiment(std::string_view name);  // either form; throws std::invalid_argument

struct SentimentLabel {
  Sentiment label = Sentiment::neutral;
  std::array<double, 3> scores{0.0, 1.0, 0.0};
};

// argmax with ties broken neutral > negative > positive.
Sentiment argmax_label(const std::array<double, 3>& scores);

class Lexicon {
 public:
  Lexicon() = default;
  static Lexicon builtin();
  // Two columns, term and polarity in [-1, 1], separated by a tab or comma.
  // '#' starts a comment line. Throws MalformedFile.
  static Lexicon from_text(std::string_view text);
  static Lexicon from_file(const std::string& path);

  void set(std::string term, double polarity);
  std::optional<double> polarity(std::string_view term) const;
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_map<std::string, double> terms_;
};

inline constexpr double kDefaultThreshold = 0.1;

// Mean signed polarity over word tokens; a token directly after "not", "no"
// or "never" counts with flipped sign. Empty text scores 0.
double lexicon_score(std::string_view clean_text, const Lexicon& lexicon);

// Label by s > threshold / s < -threshold. Scores follow a piecewise-linear
// map of s onto the simplex whose argmax always equals the label:
//   neutral: neu = 0.6 - 0.1 r (r = |s| / threshold), the lean side takes
//            (1 - neu)(0.5 + 0.25 r), the other side the rest;
//   polar:   q = 0.4 + 0.6 min(1, |s|) on the label, neutral 2(1 - q)/3,
//            the opposite side (1 - q)/3.
SentimentLabel classify_lexicon(std::string_view clean_text, const Lexicon& lexicon,
                                double threshold = kDefaultThreshold);
SentimentLabel label_from_score(double s, double threshold = kDefaultThreshold);

// Scores must be finite, non-negative and sum to 1 within 1e-3; they are
// renormalised. Throws InvalidScores.
SentimentLabel validate_scores(const std::array<double, 3>& scores);

// Throws ProviderUnavailable, InvalidScores.
std::vector<SentimentLabel> classify_external(std::span<const std::string> texts,
                                              provider::ProviderClient& client);

struct Bracket {
  std::array<std::size_t, 3> counts{};  // negative, neutral, positive
  std::size_t total = 0;
  // Percentages in display order neutral, negative, positive.
  std::array<double, 3> percent{};
};

// Regions without tweets are omitted; UNKNOWN is skipped.
std::map<geo::Region, Bracket> region_brackets(std::span<const geo::Region> regions,
                                               std::span<const Sentiment> labels);

// One zero-filled daily series per (group, label), named "<group>:NEG" etc.,
// groups in the given order (sorted distinct keys when `groups` is empty).
// Records whose group is empty or whose date lies outside the window are
// skipped.
std::vector<LabeledSeries> daily_series(std::span<const std::string> group_of_record,
                                        std::span<const Date> dates,
                                        std::span<const Sentiment> labels,
                                        const DateWindow& window,
                                        std::span<const std::string> groups = {});

// Every value times 100 / (largest value in the whole group). Throws AllZero.
std::vector<std::vector<double>> interest(std::span<const LabeledSeries> group);

}  // namespace crisislens::sentiment
