#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crisislens/geo/gazetteer.hpp"
#include "crisislens/ingest/record.hpp"

namespace crisislens::netgraph {

using geo::Region;

enum class RelationMode { hashtag, mention };

std::string_view mode_name(RelationMode mode);

struct Relation {
  Region region;
  std::string token;

  friend auto operator<=>(const Relation&, const Relation&) = default;
};

// One entry per (region, token) occurrence; never holds UNKNOWN.
struct RelationMultiset {
  RelationMode mode = RelationMode::hashtag;
  std::vector<Relation> entries;
};

// Weighted bipartite graph region -> token. Edges are keyed by (region,
// token) and ordered by region enum order, then token.
class RegionGraph {
 public:
  using EdgeKey = std::pair<Region, std::string>;

  explicit RegionGraph(RelationMode mode = RelationMode::hashtag) : mode_(mode) {}

  RelationMode mode() const { return mode_; }
  const std::map<EdgeKey, std::uint64_t>& edges() const { return edges_; }

  // Adds `weight` (>= 1) to the edge, creating it when absent.
  void add(Region region, std::string_view token, std::uint64_t weight = 1);
  // Merges another graph of the same mode by summing weights.
  void merge(const RegionGraph& other);

  std::set<Region> regions() const;
  std::set<std::string> tokens() const;
  std::size_t node_count() const { return regions().size() + tokens().size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t total_weight() const;
  bool has_token(std::string_view token) const;

  friend bool operator==(const RegionGraph&, const RegionGraph&) = default;

 private:
  RelationMode mode_;
  std::map<EdgeKey, std::uint64_t> edges_;
};

struct RegionDegree {
  Region region;
  std::uint64_t out_degree = 0;
  std::uint64_t weighted_out_degree = 0;
};

struct TokenDegree {
  std::string token;
  std::uint64_t in_degree = 0;
  std::uint64_t weighted_in_degree = 0;
};

struct DegreeTable {
  std::vector<RegionDegree> regions;  // enum order
  std::vector<TokenDegree> tokens;    // weighted_in_degree desc, then token
};

struct RegionSpecific {
  std::vector<std::string> tokens;  // weighted desc, then token
  std::uint64_t count = 0;
  std::uint64_t weighted_sum = 0;
};

RelationMultiset build_relations(std::span<const ingest::TweetRecord> records, RelationMode mode,
                                 const geo::Gazetteer& gazetteer);

RegionGraph aggregate(const RelationMultiset& relations);

// Sharded counting with an associative merge; equal to
// aggregate(build_relations(...)) for any worker count.
RegionGraph build_graph(std::span<const ingest::TweetRecord> records, RelationMode mode,
                        const geo::Gazetteer& gazetteer, unsigned workers = 1);

DegreeTable degree_table(const RegionGraph& graph);

// Region with the heaviest edge to `token`; ties go to the larger weighted
// out-degree, then enum order. Throws UnknownToken.
Region prominent_region(std::string_view token, const RegionGraph& graph);

// prominent_region for every token in one pass.
std::map<std::string, Region> prominent_regions(const RegionGraph& graph);

// Tokens whose in-degree is exactly one, grouped by their region. Every
// region present in the graph gets an entry, possibly empty.
std::map<Region, RegionSpecific> region_specific_tokens(const RegionGraph& graph);

}  // namespace crisislens::netgraph
