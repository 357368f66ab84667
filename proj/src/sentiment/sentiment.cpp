#include "crisislens/sentiment/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "crisislens/common/bundled.hpp"
#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/text.hpp"
#include "crisislens/ingest/preprocess.hpp"
#include "crisislens/provider/client.hpp"

namespace crisislens::sentiment {

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
    case Sentiment::positive: return "positive";
  }
  return "neutral";
}

std::string_view sentiment_short(Sentiment s) {
  switch (s) {
    case Sentiment::negative: return "NEG";
    case Sentiment::neutral: return "NEU";
    case Sentiment::positive: return "POS";
  }
  return "NEU";
}

Sentiment parse_sentiment(std::string_view name) {
  for (const Sentiment s : {Sentiment::negative, Sentiment::neutral, Sentiment::positive}) {
    if (name == sentiment_name(s) || name == sentiment_short(s)) return s;
  }
  throw std::invalid_argument(fmt::format("unknown sentiment '{}'", name));
}

Sentiment argmax_label(const std::array<double, 3>& scores) {
  Sentiment best = Sentiment::neutral;
  for (const Sentiment s : {Sentiment::negative, Sentiment::positive}) {
    if (scores[static_cast<int>(s)] > scores[static_cast<int>(best)]) best = s;
  }
  return best;
}

Lexicon Lexicon::builtin() { return from_text(bundled::lexicon()); }

Lexicon Lexicon::from_text(std::string_view text) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto sep = line.rfind('\t');
    if (sep == std::string::npos) sep = line.rfind(',');
    if (sep == std::string::npos) {
      throw MalformedFile(fmt::format("lexicon line {}: expected two columns", line_no));
    }
    std::string term = ascii_lower(trim(std::string_view(line).substr(0, sep)));
    std::string value = trim(std::string_view(line).substr(sep + 1));
    if (!value.empty() && value.front() == '+') value.erase(0, 1);
    double polarity = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), polarity);
    if (term.empty() || ec != std::errc() || ptr != value.data() + value.size() ||
        !(polarity >= -1.0 && polarity <= 1.0)) {
      throw MalformedFile(fmt::format("lexicon line {}: bad entry '{}'", line_no, line));
    }
    lex.set(std::move(term), polarity);
  }
  return lex;
}

Lexicon Lexicon::from_file(const std::string& path) { return from_text(read_file(path)); }

void Lexicon::set(std::string term, double polarity) { terms_[std::move(term)] = polarity; }

std::optional<double> Lexicon::polarity(std::string_view term) const {
  const auto it = terms_.find(std::string(term));
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

double lexicon_score(std::string_view clean_text, const Lexicon& lexicon) {
  const auto tokens = word_runs(ingest::strip_placeholders(clean_text));
  double raw = 0.0;
  bool negate = false;
  for (const auto& t : tokens) {
    if (const auto p = lexicon.polarity(t)) raw += negate ? -*p : *p;
    negate = t == "not" || t == "no" || t == "never";
  }
  return raw / static_cast<double>(std::max<std::size_t>(1, tokens.size()));
}

SentimentLabel label_from_score(double s, double threshold) {
  SentimentLabel out;
  const double mag = std::abs(s);
  const int lean = s < 0.0 ? 0 : 2;
  if (mag <= threshold) {
    out.label = Sentiment::neutral;
    const double r = threshold > 0.0 ? mag / threshold : 0.0;
    const double neu = 0.6 - 0.1 * r;
    const double rest = 1.0 - neu;
    const double lean_share = s == 0.0 ? rest / 2.0 : rest * (0.5 + 0.25 * r);
    out.scores[1] = neu;
    out.scores[lean] = lean_share;
    out.scores[2 - lean] = rest - lean_share;
  } else {
    out.label = s < 0.0 ? Sentiment::negative : Sentiment::positive;
    const double q = 0.4 + 0.6 * std::min(1.0, mag);
    out.scores[lean] = q;
    out.scores[1] = 2.0 * (1.0 - q) / 3.0;
    out.scores[2 - lean] = (1.0 - q) / 3.0;
  }
  return out;
}

SentimentLabel classify_lexicon(std::string_view clean_text, const Lexicon& lexicon,
                                double threshold) {
  return label_from_score(lexicon_score(clean_text, lexicon), threshold);
}

SentimentLabel validate_scores(const std::array<double, 3>& scores) {
  double sum = 0.0;
  for (const double v : scores) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidScores(fmt::format("scores ({}, {}, {}) contain a negative or non-finite value",
                                      scores[0], scores[1], scores[2]));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-3) {
    throw InvalidScores(fmt::format("scores sum to {}, expected 1", sum));
  }
  SentimentLabel out;
  for (std::size_t i = 0; i < 3; ++i) out.scores[i] = scores[i] / sum;
  out.label = argmax_label(out.scores);
  return out;
}

std::vector<SentimentLabel> classify_external(std::span<const std::string> texts,
                                              provider::ProviderClient& client) {
  std::vector<SentimentLabel> out;
  if (texts.empty()) return out;
  const auto scores = client.sentiment(texts);
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back(validate_scores(s));
  return out;
}

std::map<geo::Region, Bracket> region_brackets(std::span<const geo::Region> regions,
                                               std::span<const Sentiment> labels) {
  if (regions.size() != labels.size()) {
    throw DimensionMismatch(
        fmt::format("region_brackets: {} regions for {} labels", regions.size(), labels.size()));
  }
  std::map<geo::Region, Bracket> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i] == geo::Region::UNKNOWN) continue;
    auto& b = out[regions[i]];
    ++b.counts[static_cast<int>(labels[i])];
    ++b.total;
  }
  for (auto& [region, b] : out) {
    const double total = static_cast<double>(b.total);
    b.percent = {100.0 * static_cast<double>(b.counts[1]) / total,
                 100.0 * static_cast<double>(b.counts[0]) / total,
                 100.0 * static_cast<double>(b.counts[2]) / total};
  }
  return out;
}

std::vector<LabeledSeries> daily_series(std::span<const std::string> group_of_record,
                                        std::span<const Date> dates,
                                        std::span<const Sentiment> labels,
                                        const DateWindow& window,
                                        std::span<const std::string> groups) {
  if (group_of_record.size() != dates.size() || dates.size() != labels.size()) {
    throw DimensionMismatch("daily_series: input lengths differ");
  }
  if (!window.valid()) throw EmptyWindow("daily_series: window end precedes start");
  std::vector<std::string> names(groups.begin(), groups.end());
  if (names.empty()) {
    const std::set<std::string> distinct(group_of_record.begin(), group_of_record.end());
    for (const auto& g : distinct) {
      if (!g.empty()) names.push_back(g);
    }
  }
  std::map<std::string, std::size_t> index;
  std::vector<LabeledSeries> out;
  for (const auto& g : names) {
    if (!index.emplace(g, out.size()).second) {
      throw std::invalid_argument(fmt::format("daily_series: duplicate group '{}'", g));
    }
    for (const Sentiment s : {Sentiment::negative, Sentiment::neutral, Sentiment::positive}) {
      out.push_back({fmt::format("{}:{}", g, sentiment_short(s)), window.start,
                     std::vector<double>(window.days(), 0.0)});
    }
  }
  for (std::size_t i = 0; i < dates.size(); ++i) {
    if (group_of_record[i].empty() || !window.contains(dates[i])) continue;
    const auto it = index.find(group_of_record[i]);
    if (it == index.end()) continue;
    out[it->second + static_cast<std::size_t>(labels[i])].values[window.index_of(dates[i])] += 1.0;
  }
  return out;
}

std::vector<std::vector<double>> interest(std::span<const LabeledSeries> group) {
  double peak = 0.0;
  for (const auto& s : group) {
    for (const double v : s.values) peak = std::max(peak, v);
  }
  if (!(peak > 0.0)) throw AllZero("interest: no positive count in the group");
  std::vector<std::vector<double>> out;
  out.reserve(group.size());
  for (const auto& s : group) {
    std::vector<double> curve(s.values.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      curve[i] = s.values[i] == peak ? 100.0 : 100.0 * s.values[i] / peak;
    }
    out.push_back(std::move(curve));
  }
  return out;
}

}  // namespace crisislens::sentiment
