#include "crisislens/pipeline/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <memory>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "crisislens/causality/granger.hpp"
#include "crisislens/causality/series.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/common/parallel.hpp"
#include "crisislens/common/text.hpp"
#include "crisislens/geo/gazetteer.hpp"
#include "crisislens/ingest/ingest.hpp"
#include "crisislens/netgraph/export.hpp"
#include "crisislens/provider/client.hpp"
#include "crisislens/sentiment/sentiment.hpp"
#include "crisislens/topics/cluster.hpp"
#include "crisislens/topics/ctfidf.hpp"
#include "crisislens/topics/dynamic.hpp"
#include "crisislens/topics/embedding.hpp"
#include "crisislens/topics/reduce.hpp"
#include "crisislens/topics/similarity.hpp"
#include "crisislens/topics/tokenize.hpp"

namespace crisislens::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kVersion = "0.4.0";

std::string num(double v) { return fmt::format("{}", v); }

// What one stage read and wrote, for the manifest.
struct StageRecord {
  std::map<std::string, std::string> inputs;  // path -> sha256
  std::map<std::string, std::string> outputs;
  std::map<std::string, std::size_t> rows;
  std::map<std::string, std::size_t> counts;
};

class StageContext {
 public:
  StageContext(const PipelineConfig& config, Stage stage) : config_(config), stage_(stage) {}

  const PipelineConfig& config() const { return config_; }

  // Path of an upstream artifact; throws StageInputMissing when absent.
  fs::path upstream(std::string_view name) {
    const fs::path p = config_.out / name;
    if (!fs::is_regular_file(p)) {
      throw StageInputMissing(fmt::format("{} needs {} from an earlier stage", stage_name(stage_),
                                          p.string()));
    }
    record_.inputs[std::string(name)] = sha256_file(p);
    return p;
  }

  void external(const fs::path& p) { record_.inputs[p.generic_string()] = sha256_file(p); }

  void write(std::string_view name, const std::string& content, std::size_t rows) {
    write_file_atomic(config_.out / name, content);
    record_.outputs[std::string(name)] = sha256_hex(content);
    record_.rows[std::string(name)] = rows;
  }

  void write_csv(std::string_view name, const std::string& content) {
    const auto lines = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
    write(name, content, lines == 0 ? 0 : lines - 1);
  }

  void count(std::string_view key, std::size_t value) { record_.counts[std::string(key)] = value; }

  const StageRecord& record() const { return record_; }

 private:
  const PipelineConfig& config_;
  Stage stage_;
  StageRecord record_;
};

std::unique_ptr<provider::ProviderClient> make_client(const PipelineConfig& c) {
  auto [host, port] = provider::ProviderClient::parse_endpoint(*c.provider);
  return std::make_unique<provider::ProviderClient>(std::move(host), port);
}

geo::Gazetteer load_gazetteer(StageContext& ctx) {
  const auto& c = ctx.config();
  if (!c.gazetteer_file) return geo::Gazetteer::builtin();
  ctx.external(*c.gazetteer_file);
  return geo::Gazetteer::from_file(*c.gazetteer_file);
}

std::vector<ingest::TweetRecord> load_records(StageContext& ctx) {
  return ingest::read_canonical_records(ctx.upstream("records.jsonl"));
}

std::vector<Date> record_dates(const std::vector<ingest::TweetRecord>& records,
                               std::chrono::minutes offset) {
  std::vector<Date> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(local_date(r.created_at, offset));
  return out;
}

std::uint64_t parse_u64(const std::string& s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw MalformedFile(fmt::format("{}: bad integer '{}'", what, s));
  }
  return v;
}

// id -> value maps from the stage CSVs, checked against the record list.
std::vector<int> load_assignments(StageContext& ctx, const std::vector<ingest::TweetRecord>& records) {
  const auto rows = parse_csv(read_file(ctx.upstream("assignments.csv")));
  std::map<std::uint64_t, int> by_id;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw MalformedFile("assignments.csv: expected 2 columns");
    by_id[parse_u64(rows[i][0], "assignments.csv")] =
        static_cast<int>(std::stol(rows[i][1]));
  }
  std::vector<int> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      throw MalformedFile(fmt::format("assignments.csv: no topic for record {}", r.id));
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<sentiment::Sentiment> load_labels(StageContext& ctx,
                                              const std::vector<ingest::TweetRecord>& records) {
  const auto rows = parse_csv(read_file(ctx.upstream("labels.csv")));
  std::map<std::uint64_t, sentiment::Sentiment> by_id;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() < 2) throw MalformedFile("labels.csv: expected id,label,...");
    by_id[parse_u64(rows[i][0], "labels.csv")] = sentiment::parse_sentiment(rows[i][1]);
  }
  std::vector<sentiment::Sentiment> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) throw MalformedFile(fmt::format("labels.csv: no label for record {}", r.id));
    out.push_back(it->second);
  }
  return out;
}

std::string join_keywords(const std::vector<topics::Keyword>& kws, std::size_t limit = SIZE_MAX) {
  std::string out;
  for (std::size_t i = 0; i < kws.size() && i < limit; ++i) {
    if (!out.empty()) out += ' ';
    out += kws[i].term;
  }
  return out;
}

// ---------------------------------------------------------------- ingest

void run_ingest(StageContext& ctx) {
  const auto& c = ctx.config();
  std::vector<std::string> lines;
  for (const auto& p : c.inputs) {
    ctx.external(p);
    auto more = read_lines(p);
    lines.insert(lines.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  ingest::TrackingFilter filter;
  if (c.terms_file) {
    ctx.external(*c.terms_file);
    filter.terms = ingest::TrackingFilter::parse_terms(read_file(*c.terms_file));
  } else {
    filter.terms = ingest::TrackingFilter::default_terms();
  }
  filter.require_country = c.country;
  filter.window = c.window;
  filter.tz_offset = c.tz_offset;
  filter.validate();
  if (c.schema != "archival" && c.schema != "flat") ctx.external(c.schema);
  const auto schema = ingest::RecordSchema::resolve(c.schema);

  const auto result = ingest::ingest_lines(lines, schema, &filter, c.workers);
  const auto& n = result.counts;
  spdlog::info("ingest: read {}, malformed {}, missing field {}, duplicate {}, filtered out {}, matched {}",
               n.read, n.malformed, n.missing_field, n.duplicate, n.filtered_out, n.matched);
  ctx.write("records.jsonl", ingest::write_canonical(result.records), result.records.size());
  std::string summary = csv_row({"metric", "value"});
  for (const auto& [k, v] : std::vector<std::pair<std::string, std::size_t>>{
           {"read", n.read}, {"malformed", n.malformed}, {"missing_field", n.missing_field},
           {"duplicate", n.duplicate}, {"filtered_out", n.filtered_out}, {"matched", n.matched}}) {
    summary += csv_row({k, std::to_string(v)});
    ctx.count(k, v);
  }
  ctx.write_csv("ingest_summary.csv", summary);
}

// ----------------------------------------------------------------- graph

void run_graph(StageContext& ctx) {
  const auto& c = ctx.config();
  const auto records = load_records(ctx);
  const auto gazetteer = load_gazetteer(ctx);
  std::size_t unknown = 0;
  for (const auto& r : records) {
    if (gazetteer.normalize_place(r.geo_full_name) == geo::Region::UNKNOWN) ++unknown;
  }
  if (unknown > 0) spdlog::warn("graph: {} of {} records have an unresolved place", unknown, records.size());
  ctx.count("unknown_place", unknown);

  const std::vector<netgraph::RegionGraph> graphs{
      netgraph::build_graph(records, netgraph::RelationMode::hashtag, gazetteer, c.workers),
      netgraph::build_graph(records, netgraph::RelationMode::mention, gazetteer, c.workers)};
  std::size_t edges = 0;
  for (const auto& g : graphs) edges += g.edge_count();
  ctx.write_csv("edges.csv", netgraph::export_edge_csv(graphs));
  ctx.write("graph.gexf", netgraph::export_gexf(graphs), edges);
  ctx.write_csv("degree_table.csv", netgraph::degree_table_csv(graphs));
  ctx.write_csv("prominent.csv", netgraph::prominent_csv(graphs));
  ctx.write_csv("region_specific.csv", netgraph::region_specific_csv(graphs));
}

// ---------------------------------------------------------------- topics

void run_topics(StageContext& ctx) {
  const auto& c = ctx.config();
  const auto records = load_records(ctx);
  if (records.empty()) throw EmptyCorpus("topics: records.jsonl is empty");
  std::vector<std::string> texts;
  texts.reserve(records.size());
  for (const auto& r : records) texts.push_back(r.clean_text);
  const auto tokens = topics::tokenize_all(texts, topics::StopWords::builtin(), c.workers);

  Matrix embeddings;
  if (c.embedding == "external") {
    auto client = make_client(c);
    embeddings = topics::embed_external(texts, *client);
  } else {
    embeddings = topics::embed_default(tokens, {c.dim, c.seed, c.workers});
  }
  const Matrix reduced = c.reduce_dim > 0 && c.reduce_dim < embeddings.cols()
                             ? topics::reduce(embeddings, c.reduce_dim)
                             : embeddings;
  const auto labels = topics::cluster(reduced, {c.min_cluster_size, c.min_samples, c.workers});
  const auto summaries = topics::ctfidf(labels, tokens, c.top_k, &embeddings);
  const auto noise = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), -1));
  spdlog::info("topics: {} topics, {} noise documents of {}", summaries.size(), noise, records.size());
  ctx.count("topics", summaries.size());
  ctx.count("noise", noise);

  std::string topics_csv = csv_row({"topic", "size", "keywords", "weights"});
  for (const auto& s : summaries) {
    std::string weights;
    for (const auto& k : s.keywords) weights += (weights.empty() ? "" : " ") + num(k.weight);
    topics_csv += csv_row({std::to_string(s.topic), std::to_string(s.size), join_keywords(s.keywords), weights});
  }
  ctx.write_csv("topics.csv", topics_csv);

  std::string assignments = csv_row({"id", "topic"});
  for (std::size_t i = 0; i < records.size(); ++i) {
    assignments += csv_row({std::to_string(records[i].id), std::to_string(labels[i])});
  }
  ctx.write_csv("assignments.csv", assignments);

  // Matrix in dendrogram leaf order; a lone topic gets a 1x1 table.
  std::vector<std::size_t> order{0};
  Matrix sim(1, 1, 1.0);
  if (summaries.size() >= 2) {
    const auto result = topics::similarity_matrix(summaries);
    order = result.order;
    sim = result.similarity;
  }
  std::vector<std::string> header{"topic"};
  for (const std::size_t i : order) header.push_back(fmt::format("tp{}", summaries[i].topic));
  std::string similarity = csv_row(header);
  for (const std::size_t i : order) {
    std::vector<std::string> row{fmt::format("tp{}", summaries[i].topic)};
    for (const std::size_t j : order) row.push_back(num(sim(i, j)));
    similarity += csv_row(row);
  }
  ctx.write_csv("similarity.csv", similarity);

  const auto dates = record_dates(records, c.tz_offset);
  std::string dynamic = csv_row({"topic", "month", "size", "keywords"});
  for (const auto& row : topics::dynamic_topics(labels, tokens, dates, c.window, c.top_k)) {
    dynamic += csv_row({std::to_string(row.topic), format_month(row.month), std::to_string(row.size),
                        join_keywords(row.keywords)});
  }
  ctx.write_csv("dynamic_topics.csv", dynamic);
}

// ------------------------------------------------------------- sentiment

void run_sentiment(StageContext& ctx) {
  const auto& c = ctx.config();
  const auto records = load_records(ctx);
  const auto topic_of = load_assignments(ctx, records);
  const auto gazetteer = load_gazetteer(ctx);

  std::vector<sentiment::SentimentLabel> labels(records.size());
  if (c.classifier == "external") {
    std::vector<std::string> texts;
    for (const auto& r : records) texts.push_back(r.clean_text);
    auto client = make_client(c);
    labels = sentiment::classify_external(texts, *client);
  } else {
    sentiment::Lexicon lexicon;
    if (c.lexicon_file) {
      ctx.external(*c.lexicon_file);
      lexicon = sentiment::Lexicon::from_file(c.lexicon_file->string());
    } else {
      lexicon = sentiment::Lexicon::builtin();
    }
    parallel_for(records.size(), c.workers, [&](std::size_t i) {
      labels[i] = sentiment::classify_lexicon(records[i].clean_text, lexicon, c.threshold);
    });
  }

  std::string labels_csv = csv_row({"id", "label", "negative", "neutral", "positive"});
  std::vector<sentiment::Sentiment> plain;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& l = labels[i];
    plain.push_back(l.label);
    labels_csv += csv_row({std::to_string(records[i].id), std::string(sentiment::sentiment_name(l.label)),
                           num(l.scores[0]), num(l.scores[1]), num(l.scores[2])});
  }
  ctx.write_csv("labels.csv", labels_csv);

  std::vector<geo::Region> regions;
  for (const auto& r : records) regions.push_back(gazetteer.normalize_place(r.geo_full_name));
  std::string brackets = csv_row({"region", "tweets", "neutral", "negative", "positive"});
  for (const auto& [region, b] : sentiment::region_brackets(regions, plain)) {
    brackets += csv_row({std::string(geo::region_code(region)), std::to_string(b.total),
                         num(b.percent[0]), num(b.percent[1]), num(b.percent[2])});
  }
  ctx.write_csv("brackets.csv", brackets);

  const auto dates = record_dates(records, c.tz_offset);
  std::vector<std::string> region_group;
  for (const auto r : regions) {
    region_group.emplace_back(r == geo::Region::UNKNOWN ? "" : std::string(geo::region_code(r)));
  }
  std::vector<std::string> region_names;
  for (const auto r : geo::kStates) region_names.emplace_back(geo::region_code(r));
  std::vector<std::string> topic_group;
  int topic_count = 0;
  for (const int t : topic_of) {
    topic_group.push_back(t < 0 ? "" : fmt::format("tp{}", t));
    topic_count = std::max(topic_count, t + 1);
  }
  std::vector<std::string> topic_names;
  for (int t = 0; t < topic_count; ++t) topic_names.push_back(fmt::format("tp{}", t));

  const auto by_region = sentiment::daily_series(region_group, dates, plain, c.window, region_names);
  const auto by_topic = sentiment::daily_series(topic_group, dates, plain, c.window, topic_names);
  std::string daily = csv_row({"group_type", "group", "label", "date", "count"});
  auto emit = [&daily](std::string_view type, const std::vector<LabeledSeries>& series) {
    for (const auto& s : series) {
      const auto colon = s.name.rfind(':');
      const std::string group = s.name.substr(0, colon);
      const std::string label(sentiment::sentiment_name(sentiment::parse_sentiment(s.name.substr(colon + 1))));
      for (std::size_t d = 0; d < s.values.size(); ++d) {
        daily += csv_row({std::string(type), group, label, format_date(s.date_at(d)), num(s.values[d])});
      }
    }
  };
  emit("region", by_region);
  emit("topic", by_topic);
  ctx.write_csv("daily_sentiment.csv", daily);

  // Negative and positive curves of one topic share a divisor.
  std::string interest = csv_row({"topic", "date", "negative", "positive"});
  std::size_t skipped = 0;
  for (int t = 0; t < topic_count; ++t) {
    const std::vector<LabeledSeries> group{by_topic[3 * t], by_topic[3 * t + 2]};
    std::vector<std::vector<double>> curves;
    try {
      curves = sentiment::interest(group);
    } catch (const AllZero&) {
      ++skipped;
      continue;
    }
    for (std::size_t d = 0; d < curves[0].size(); ++d) {
      interest += csv_row({fmt::format("tp{}", t), format_date(group[0].date_at(d)), num(curves[0][d]),
                           num(curves[1][d])});
    }
  }
  if (skipped > 0) spdlog::info("sentiment: {} topics without polar tweets have no interest curve", skipped);
  ctx.write_csv("interest.csv", interest);
}

// ------------------------------------------------------------- causality

void run_causality(StageContext& ctx) {
  const auto& c = ctx.config();
  const auto records = load_records(ctx);
  const auto topic_of = load_assignments(ctx, records);
  const auto labels = load_labels(ctx, records);
  const auto topic_rows = parse_csv(read_file(ctx.upstream("topics.csv")));

  std::map<int, std::string> topic_names;
  for (std::size_t i = 1; i < topic_rows.size(); ++i) {
    if (topic_rows[i].size() < 3) throw MalformedFile("topics.csv: expected topic,size,keywords");
    const auto words = split(topic_rows[i][2], ' ');
    std::string name;
    for (std::size_t w = 0; w < words.size() && w < 3; ++w) name += (name.empty() ? "" : " ") + words[w];
    topic_names[std::stoi(topic_rows[i][0])] = name;
  }
  const std::size_t topic_count = topic_names.empty() ? 0 : static_cast<std::size_t>(topic_names.rbegin()->first + 1);

  const auto dates = record_dates(records, c.tz_offset);
  auto candidates = causality::build_series(topic_of, labels, dates, c.window, topic_count);
  ctx.external(*c.cases_file);
  ctx.external(*c.deaths_file);
  auto cases = causality::load_target(*c.cases_file, "cases", c.window);
  auto deaths = causality::load_target(*c.deaths_file, "deaths", c.window);
  for (const auto* t : {&cases, &deaths}) {
    if (t->clamped > 0) spdlog::warn("causality: {} negative values in {} set to 0", t->clamped, t->series.name);
  }
  ctx.count("cases_clamped", cases.clamped);
  ctx.count("deaths_clamped", deaths.clamped);
  if (c.difference > 0) {
    for (auto& s : candidates) s = causality::difference(s, c.difference);
    cases.series = causality::difference(cases.series, c.difference);
    deaths.series = causality::difference(deaths.series, c.difference);
  }

  const causality::SuiteOptions options{c.max_lag, c.alpha, c.workers};
  auto table = [&](const std::vector<causality::GrangerReport>& reports, std::size_t scanned) {
    const double bonferroni = c.alpha / static_cast<double>(std::max<std::size_t>(1, scanned * c.max_lag));
    std::string out = csv_row({"candidate", "topic_name", "signif_count", "signif_lags", "min_p",
                               "argmin_lag", "bonferroni_alpha"});
    for (const auto& r : reports) {
      std::string name = "-";
      if (r.candidate.rfind("tp", 0) == 0) {
        const int t = std::stoi(r.candidate.substr(2));
        if (const auto it = topic_names.find(t); it != topic_names.end()) name = it->second;
      }
      out += csv_row({r.candidate, name, std::to_string(r.significant_count()),
                      causality::compress_lags(r.significant_lags), num(r.min_p),
                      std::to_string(r.argmin_lag), num(bonferroni)});
    }
    return out;
  };
  const auto for_cases = causality::run_suite(candidates, cases.series, {}, options);
  const std::vector<LabeledSeries> extra{cases.series};
  const auto for_deaths = causality::run_suite(candidates, deaths.series, extra, options);
  spdlog::info("causality: {} candidates Granger-cause cases, {} cause deaths", for_cases.size(),
               for_deaths.size());
  ctx.count("candidates", candidates.size());
  ctx.write_csv("granger_cases.csv", table(for_cases, candidates.size()));
  ctx.write_csv("granger_deaths.csv", table(for_deaths, candidates.size() + 1));
}

void dispatch(Stage s, StageContext& ctx) {
  switch (s) {
    case Stage::ingest: return run_ingest(ctx);
    case Stage::graph: return run_graph(ctx);
    case Stage::topics: return run_topics(ctx);
    case Stage::sentiment: return run_sentiment(ctx);
    case Stage::causality: return run_causality(ctx);
  }
}

json load_json(const fs::path& p) {
  if (!fs::is_regular_file(p)) return json::object();
  try {
    json j = json::parse(read_file(p));
    return j.is_object() ? j : json::object();
  } catch (const json::exception&) {
    return json::object();
  }
}

}  // namespace

StageFailure::StageFailure(Stage stage, const std::string& what)
    : Error(fmt::format("stage {} failed: {}", stage_name(stage), what)), stage_(stage) {}

std::vector<std::string> stage_outputs(Stage s) {
  switch (s) {
    case Stage::ingest: return {"records.jsonl", "ingest_summary.csv"};
    case Stage::graph:
      return {"edges.csv", "graph.gexf", "degree_table.csv", "prominent.csv", "region_specific.csv"};
    case Stage::topics: return {"topics.csv", "assignments.csv", "similarity.csv", "dynamic_topics.csv"};
    case Stage::sentiment: return {"labels.csv", "brackets.csv", "daily_sentiment.csv", "interest.csv"};
    case Stage::causality: return {"granger_cases.csv", "granger_deaths.csv"};
  }
  return {};
}

std::vector<Stage> stages_for(std::string_view subcommand) {
  if (subcommand == "all") {
    return {Stage::ingest, Stage::graph, Stage::topics, Stage::sentiment, Stage::causality};
  }
  for (const Stage s : {Stage::ingest, Stage::graph, Stage::topics, Stage::sentiment, Stage::causality}) {
    if (subcommand == stage_name(s)) return {s};
  }
  throw ConfigError(fmt::format("unknown subcommand '{}'", subcommand));
}

void run_stages(std::span<const Stage> stages, const PipelineConfig& config,
                const fs::path& manifest_path) {
  config.validate(stages);
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw ConfigError(fmt::format("cannot create output directory {}: {}", config.out.string(), ec.message()));

  const fs::path manifest_file = manifest_path.empty() ? config.out / "manifest.json" : manifest_path;
  const fs::path timings_file = config.out / "timings.json";
  const std::string hash = config.hash();
  json manifest = load_json(manifest_file);
  if (manifest.value("config_hash", "") != hash) manifest = json::object();
  manifest["tool"] = "crisislens";
  manifest["version"] = kVersion;
  manifest["config_hash"] = hash;
  manifest["config"] = config.canonical();
  if (!manifest.contains("stages")) manifest["stages"] = json::object();
  json timings = load_json(timings_file);

  for (const Stage s : stages) {
    spdlog::info("stage {}: start", stage_name(s));
    const auto t0 = std::chrono::steady_clock::now();
    StageContext ctx(config, s);
    try {
      dispatch(s, ctx);
    } catch (const ConfigError&) {
      throw;
    } catch (const StageInputMissing&) {
      throw;
    } catch (const std::exception& e) {
      throw StageFailure(s, e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& rec = ctx.record();
    json entry;
    entry["inputs"] = rec.inputs;
    json outputs = json::object();
    for (const auto& [name, digest] : rec.outputs) {
      outputs[name] = {{"sha256", digest}, {"rows", rec.rows.at(name)}};
    }
    entry["outputs"] = outputs;
    entry["counts"] = rec.counts;
    manifest["stages"][std::string(stage_name(s))] = entry;
    timings[std::string(stage_name(s))] = seconds;
    write_file_atomic(manifest_file, manifest.dump(2) + "\n");
    write_file_atomic(timings_file, timings.dump(2) + "\n");
    spdlog::info("stage {}: done in {:.2f} s", stage_name(s), seconds);
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const StageInputMissing*>(&e) != nullptr) return 3;
  return 1;
}

}  // namespace crisislens::pipeline
