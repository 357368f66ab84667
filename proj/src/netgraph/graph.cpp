#include "crisislens/netgraph/graph.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <unordered_map>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/parallel.hpp"

namespace crisislens::netgraph {

std::string_view mode_name(RelationMode mode) {
  return mode == RelationMode::hashtag ? "hashtag" : "mention";
}

void RegionGraph::add(Region region, std::string_view token, std::uint64_t weight) {
  if (weight == 0) return;
  edges_[EdgeKey{region, std::string(token)}] += weight;
}

void RegionGraph::merge(const RegionGraph& other) {
  for (const auto& [key, w] : other.edges_) edges_[key] += w;
}

std::set<Region> RegionGraph::regions() const {
  std::set<Region> out;
  for (const auto& [key, w] : edges_) out.insert(key.first);
  return out;
}

std::set<std::string> RegionGraph::tokens() const {
  std::set<std::string> out;
  for (const auto& [key, w] : edges_) out.insert(key.second);
  return out;
}

std::uint64_t RegionGraph::total_weight() const {
  std::uint64_t sum = 0;
  for (const auto& [key, w] : edges_) sum += w;
  return sum;
}

bool RegionGraph::has_token(std::string_view token) const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const auto& e) { return e.first.second == token; });
}

namespace {

const std::vector<std::string>& tokens_of(const ingest::TweetRecord& r, RelationMode mode) {
  return mode == RelationMode::hashtag ? r.hashtags : r.mentions;
}

}  // namespace

RelationMultiset build_relations(std::span<const ingest::TweetRecord> records, RelationMode mode,
                                 const geo::Gazetteer& gazetteer) {
  RelationMultiset out;
  out.mode = mode;
  for (const auto& r : records) {
    const Region region = gazetteer.normalize_place(r.geo_full_name);
    if (region == Region::UNKNOWN) continue;
    for (const auto& token : tokens_of(r, mode)) out.entries.push_back({region, token});
  }
  return out;
}

RegionGraph aggregate(const RelationMultiset& relations) {
  RegionGraph g(relations.mode);
  for (const auto& e : relations.entries) g.add(e.region, e.token);
  return g;
}

RegionGraph build_graph(std::span<const ingest::TweetRecord> records, RelationMode mode,
                        const geo::Gazetteer& gazetteer, unsigned workers) {
  const std::size_t shards = std::max(1u, workers);
  std::vector<RegionGraph> partial(shards, RegionGraph(mode));
  const std::size_t chunk = (records.size() + shards - 1) / shards;
  parallel_for(shards, workers, [&](std::size_t s) {
    const std::size_t begin = std::min(records.size(), s * chunk);
    const std::size_t end = std::min(records.size(), begin + chunk);
    partial[s] = aggregate(build_relations(records.subspan(begin, end - begin), mode, gazetteer));
  });
  RegionGraph out(mode);
  for (const auto& p : partial) out.merge(p);
  return out;
}

DegreeTable degree_table(const RegionGraph& graph) {
  std::map<Region, RegionDegree> regions;
  std::unordered_map<std::string, TokenDegree> tokens;
  for (const auto& [key, w] : graph.edges()) {
    auto& rd = regions.try_emplace(key.first, RegionDegree{key.first}).first->second;
    ++rd.out_degree;
    rd.weighted_out_degree += w;
    auto& td = tokens.try_emplace(key.second, TokenDegree{key.second}).first->second;
    ++td.in_degree;
    td.weighted_in_degree += w;
  }
  DegreeTable table;
  for (auto& [r, d] : regions) table.regions.push_back(d);
  for (auto& [t, d] : tokens) table.tokens.push_back(std::move(d));
  std::sort(table.tokens.begin(), table.tokens.end(), [](const TokenDegree& a, const TokenDegree& b) {
    if (a.weighted_in_degree != b.weighted_in_degree) {
      return a.weighted_in_degree > b.weighted_in_degree;
    }
    return a.token < b.token;
  });
  return table;
}

namespace {

std::map<Region, std::uint64_t> weighted_out_degrees(const RegionGraph& graph) {
  std::map<Region, std::uint64_t> total;
  for (const auto& [key, w] : graph.edges()) total[key.first] += w;
  return total;
}

struct Candidate {
  Region region = Region::UNKNOWN;
  std::uint64_t weight = 0;
};

// Edges arrive in enum order, so strict comparisons keep the earlier region
// on a full tie.
void consider(Candidate& best, Region region, std::uint64_t weight,
              const std::map<Region, std::uint64_t>& totals) {
  if (best.region == Region::UNKNOWN || weight > best.weight ||
      (weight == best.weight && totals.at(region) > totals.at(best.region))) {
    best = {region, weight};
  }
}

}  // namespace

Region prominent_region(std::string_view token, const RegionGraph& graph) {
  const auto totals = weighted_out_degrees(graph);
  Candidate best;
  for (const auto& [key, w] : graph.edges()) {
    if (key.second == token) consider(best, key.first, w, totals);
  }
  if (best.region == Region::UNKNOWN) {
    throw UnknownToken(fmt::format("token '{}' is not in the graph", token));
  }
  return best.region;
}

std::map<std::string, Region> prominent_regions(const RegionGraph& graph) {
  const auto totals = weighted_out_degrees(graph);
  std::unordered_map<std::string, Candidate> best;
  for (const auto& [key, w] : graph.edges()) consider(best[key.second], key.first, w, totals);
  std::map<std::string, Region> out;
  for (const auto& [token, c] : best) out.emplace(token, c.region);
  return out;
}

std::map<Region, RegionSpecific> region_specific_tokens(const RegionGraph& graph) {
  std::unordered_map<std::string, std::pair<std::uint64_t, Region>> degree;
  std::map<Region, RegionSpecific> out;
  for (const auto& [key, w] : graph.edges()) {
    ++degree[key.second].first;
    degree[key.second].second = key.first;
    out.try_emplace(key.first);
  }
  std::map<Region, std::vector<std::pair<std::uint64_t, std::string>>> picked;
  for (const auto& [key, w] : graph.edges()) {
    if (degree[key.second].first != 1) continue;
    picked[key.first].emplace_back(w, key.second);
  }
  for (auto& [region, list] : picked) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    auto& spec = out[region];
    for (auto& [w, token] : list) {
      spec.tokens.push_back(std::move(token));
      ++spec.count;
      spec.weighted_sum += w;
    }
  }
  return out;
}

}  // namespace crisislens::netgraph
