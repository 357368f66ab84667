#include <doctest.h>

#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "crisislens/common/errors.hpp"
#include "crisislens/common/fileio.hpp"
#include "crisislens/ingest/ingest.hpp"
#include "crisislens/netgraph/export.hpp"
#include "crisislens/netgraph/graph.hpp"
#include "support.hpp"

using namespace crisislens;
using namespace crisislens::netgraph;
using geo::Region;

namespace {

std::vector<ingest::TweetRecord> netgraph_fixture() {
  const auto lines = read_lines(testsupport::data_path("netgraph_20.jsonl"));
  return ingest::ingest_lines(lines, ingest::RecordSchema::archival(), nullptr, 1).records;
}

RegionGraph random_graph(testsupport::Rng& rng, std::size_t tokens, std::size_t edges) {
  RegionGraph g;
  for (std::size_t e = 0; e < edges; ++e) {
    const auto r = geo::kStates[rng() % geo::kStates.size()];
    g.add(r, "t" + std::to_string(rng() % tokens), 1 + rng() % 9);
  }
  return g;
}

}  // namespace

TEST_CASE("20-record fixture in hashtag mode") {
  const auto records = netgraph_fixture();
  REQUIRE(records.size() == 20);
  const auto g = geo::Gazetteer::builtin();
  const auto rel = build_relations(records, RelationMode::hashtag, g);
  CHECK(rel.entries.size() == 31);
  const auto graph = aggregate(rel);
  CHECK(graph.regions() == std::set<Region>{Region::VIC, Region::NSW, Region::QLD, Region::SA});
  CHECK(graph.tokens().size() == 9);
  CHECK(graph.node_count() == 13);
  CHECK(graph.total_weight() == 31);
  for (unsigned w : {1U, 2U, 3U, 7U}) CHECK(build_graph(records, RelationMode::hashtag, g, w) == graph);
}

TEST_CASE("degree example") {
  RegionGraph g;
  g.add(Region::VIC, "a", 2);
  g.add(Region::VIC, "b", 1);
  g.add(Region::NSW, "a", 5);
  const auto t = degree_table(g);
  REQUIRE(t.regions.size() == 2);
  CHECK(t.regions[0].region == Region::VIC);
  CHECK(t.regions[0].out_degree == 2);
  CHECK(t.regions[0].weighted_out_degree == 3);
  CHECK(t.regions[1].region == Region::NSW);
  CHECK(t.regions[1].weighted_out_degree == 5);
  REQUIRE(t.tokens.size() == 2);
  CHECK(t.tokens[0].token == "a");
  CHECK(t.tokens[0].in_degree == 2);
  CHECK(t.tokens[0].weighted_in_degree == 7);
  CHECK(t.tokens[1].weighted_in_degree == 1);
  CHECK(prominent_region("a", g) == Region::NSW);
  CHECK(prominent_region("b", g) == Region::VIC);
  CHECK_THROWS_AS(prominent_region("zzz", g), UnknownToken);
  const auto spec = region_specific_tokens(g);
  CHECK(spec.at(Region::VIC).tokens == std::vector<std::string>{"b"});
  CHECK(spec.at(Region::NSW).tokens.empty());
}

TEST_CASE("prominence ties go to the larger weighted out-degree") {
  RegionGraph g;
  g.add(Region::VIC, "x", 3);
  g.add(Region::QLD, "x", 3);
  g.add(Region::QLD, "y", 4);
  CHECK(prominent_region("x", g) == Region::QLD);
  g.add(Region::VIC, "z", 5);
  CHECK(prominent_region("x", g) == Region::VIC);
  // Full tie: enum order.
  RegionGraph h;
  h.add(Region::SA, "x", 1);
  h.add(Region::NSW, "x", 1);
  CHECK(prominent_region("x", h) == Region::NSW);
}

TEST_CASE("degree table and prominence agree with brute force") {
  testsupport::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_graph(rng, 1 + rng() % 15, rng() % 60);
    std::map<Region, std::uint64_t> out_w, out_d;
    std::map<std::string, std::uint64_t> in_w, in_d;
    for (const auto& [key, w] : g.edges()) {
      out_w[key.first] += w;
      ++out_d[key.first];
      in_w[key.second] += w;
      ++in_d[key.second];
    }
    const auto t = degree_table(g);
    for (const auto& r : t.regions) {
      CHECK(r.weighted_out_degree == out_w[r.region]);
      CHECK(r.out_degree == out_d[r.region]);
    }
    for (const auto& tok : t.tokens) {
      CHECK(tok.weighted_in_degree == in_w[tok.token]);
      CHECK(tok.in_degree == in_d[tok.token]);
    }
    for (const auto& [token, region] : prominent_regions(g)) {
      Region best = Region::UNKNOWN;
      std::uint64_t best_w = 0;
      for (const Region r : geo::kStates) {
        const auto it = g.edges().find({r, token});
        if (it == g.edges().end()) continue;
        if (best == Region::UNKNOWN || it->second > best_w ||
            (it->second == best_w && out_w[r] > out_w[best])) {
          best = r;
          best_w = it->second;
        }
      }
      CHECK(region == best);
      CHECK(prominent_region(token, g) == region);
    }
  }
}

TEST_CASE("merge is associative and commutative") {
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_graph(rng, 6, 10), b = random_graph(rng, 6, 10), c = random_graph(rng, 6, 10);
    auto ab_c = a;
    ab_c.merge(b);
    ab_c.merge(c);
    auto bc = b;
    bc.merge(c);
    auto a_bc = a;
    a_bc.merge(bc);
    auto ba = b;
    ba.merge(a);
    ba.merge(c);
    CHECK(ab_c == a_bc);
    CHECK(ab_c == ba);
  }
}

TEST_CASE("GEXF parses back with the same nodes and weights") {
  const auto records = netgraph_fixture();
  const auto g = geo::Gazetteer::builtin();
  const std::vector<RegionGraph> graphs{build_graph(records, RelationMode::hashtag, g),
                                        build_graph(records, RelationMode::mention, g)};
  std::istringstream in(export_gexf(graphs));
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(in, tree);
  const auto& graph = tree.get_child("gexf.graph");
  std::size_t nodes = 0;
  for (const auto& [name, node] : graph.get_child("nodes")) {
    if (name == "node") ++nodes;
  }
  std::set<std::string> expected_nodes;
  std::map<std::tuple<std::string, std::string>, std::uint64_t> expected_edges;
  for (const auto& gr : graphs) {
    const char prefix = gr.mode() == RelationMode::hashtag ? 'h' : 'm';
    for (const auto& [key, w] : gr.edges()) {
      expected_nodes.insert(std::string(geo::region_code(key.first)));
      const std::string tok = std::string(1, prefix) + ":" + key.second;
      expected_nodes.insert(tok);
      expected_edges[{std::string(geo::region_code(key.first)), tok}] += w;
    }
  }
  CHECK(nodes == expected_nodes.size());
  std::map<std::tuple<std::string, std::string>, std::uint64_t> seen;
  for (const auto& [name, edge] : graph.get_child("edges")) {
    if (name != "edge") continue;
    seen[{edge.get<std::string>("<xmlattr>.source"), edge.get<std::string>("<xmlattr>.target")}] +=
        edge.get<std::uint64_t>("<xmlattr>.weight");
  }
  CHECK(seen == expected_edges);
}

TEST_CASE("edge csv lists every edge once") {
  RegionGraph g;
  g.add(Region::VIC, "a,b", 2);
  g.add(Region::TAS, "c", 1);
  const std::vector<RegionGraph> graphs{g};
  const auto rows = parse_csv(export_edge_csv(graphs));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"source", "target", "weight", "mode"});
  CHECK(rows[1][1] == "a,b");
  CHECK(rows[2][0] == "TAS");
}
