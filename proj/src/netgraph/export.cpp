#include "crisislens/netgraph/export.hpp"

#include <fmt/format.h>

#include "crisislens/common/fileio.hpp"

namespace crisislens::netgraph {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string token_node_id(RelationMode mode, std::string_view token) {
  return fmt::format("{}:{}", mode == RelationMode::hashtag ? 'h' : 'm', token);
}

std::string token_label(RelationMode mode, std::string_view token) {
  return fmt::format("{}{}", mode == RelationMode::hashtag ? '#' : '@', token);
}

std::string u64(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::string export_edge_csv(std::span<const RegionGraph> graphs) {
  std::string out = csv_row({"source", "target", "weight", "mode"});
  for (const auto& g : graphs) {
    for (const auto& [key, w] : g.edges()) {
      out += csv_row({std::string(geo::region_code(key.first)), key.second, u64(w),
                      std::string(mode_name(g.mode()))});
    }
  }
  return out;
}

std::string export_gexf(std::span<const RegionGraph> graphs) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
  out += "  <meta>\n    <creator>crisislens</creator>\n";
  out += "    <description>region to token relations</description>\n  </meta>\n";
  out += "  <graph mode=\"static\" defaultedgetype=\"directed\">\n";
  out += "    <attributes class=\"node\">\n";
  out += "      <attribute id=\"kind\" title=\"kind\" type=\"string\"/>\n";
  out += "    </attributes>\n";
  out += "    <attributes class=\"edge\">\n";
  out += "      <attribute id=\"mode\" title=\"mode\" type=\"string\"/>\n";
  out += "    </attributes>\n";

  std::set<Region> regions;
  for (const auto& g : graphs) {
    const auto r = g.regions();
    regions.insert(r.begin(), r.end());
  }
  out += "    <nodes>\n";
  auto node = [&out](std::string_view id, std::string_view label, std::string_view kind) {
    out += fmt::format(
        "      <node id=\"{}\" label=\"{}\">\n        <attvalues>\n"
        "          <attvalue for=\"kind\" value=\"{}\"/>\n        </attvalues>\n      </node>\n",
        xml_escape(id), xml_escape(label), kind);
  };
  for (const Region r : regions) node(geo::region_code(r), geo::region_code(r), "region");
  for (const auto& g : graphs) {
    for (const auto& token : g.tokens()) {
      node(token_node_id(g.mode(), token), token_label(g.mode(), token), mode_name(g.mode()));
    }
  }
  out += "    </nodes>\n";

  out += "    <edges>\n";
  std::size_t edge_id = 0;
  for (const auto& g : graphs) {
    for (const auto& [key, w] : g.edges()) {
      out += fmt::format(
          "      <edge id=\"{}\" source=\"{}\" target=\"{}\" weight=\"{}\">\n"
          "        <attvalues>\n          <attvalue for=\"mode\" value=\"{}\"/>\n"
          "        </attvalues>\n      </edge>\n",
          edge_id++, geo::region_code(key.first), xml_escape(token_node_id(g.mode(), key.second)),
          w, mode_name(g.mode()));
    }
  }
  out += "    </edges>\n  </graph>\n</gexf>\n";
  return out;
}

void export_graph(const RegionGraph& graph, GraphFormat format, const std::filesystem::path& path) {
  const std::span<const RegionGraph> one(&graph, 1);
  write_file_atomic(path, format == GraphFormat::gexf ? export_gexf(one) : export_edge_csv(one));
}

std::string degree_table_csv(std::span<const RegionGraph> graphs) {
  std::string out = csv_row({"mode", "node_type", "node", "degree", "weighted_degree"});
  for (const auto& g : graphs) {
    const std::string mode(mode_name(g.mode()));
    const DegreeTable table = degree_table(g);
    for (const auto& r : table.regions) {
      out += csv_row({mode, "region", std::string(geo::region_code(r.region)), u64(r.out_degree),
                      u64(r.weighted_out_degree)});
    }
    for (const auto& t : table.tokens) {
      out += csv_row({mode, "token", t.token, u64(t.in_degree), u64(t.weighted_in_degree)});
    }
  }
  return out;
}

std::string prominent_csv(std::span<const RegionGraph> graphs) {
  std::string out = csv_row({"mode", "token", "region", "in_degree", "weighted_in_degree"});
  for (const auto& g : graphs) {
    const std::string mode(mode_name(g.mode()));
    const auto prominent = prominent_regions(g);
    for (const auto& t : degree_table(g).tokens) {
      out += csv_row({mode, t.token, std::string(geo::region_code(prominent.at(t.token))),
                      u64(t.in_degree), u64(t.weighted_in_degree)});
    }
  }
  return out;
}

std::string region_specific_csv(std::span<const RegionGraph> graphs) {
  std::string out = csv_row({"mode", "region", "count", "weighted_sum", "tokens"});
  for (const auto& g : graphs) {
    const std::string mode(mode_name(g.mode()));
    for (const auto& [region, spec] : region_specific_tokens(g)) {
      std::string joined;
      for (const auto& t : spec.tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t;
      }
      out += csv_row({mode, std::string(geo::region_code(region)), u64(spec.count),
                      u64(spec.weighted_sum), joined});
    }
  }
  return out;
}

}  // namespace crisislens::netgraph
