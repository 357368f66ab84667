#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "crisislens/netgraph/graph.hpp"

namespace crisislens::netgraph {

enum class GraphFormat { edge_csv, gexf };

// source,target,weight,mode; one row per edge in graph order.
std::string export_edge_csv(std::span<const RegionGraph> graphs);

// GEXF 1.2 document with region and token nodes. Token node ids carry a mode
// prefix ("h:" / "m:") so hashtag and mention tokens never collide.
std::string export_gexf(std::span<const RegionGraph> graphs);

// Writes one graph atomically. Throws IoError.
void export_graph(const RegionGraph& graph, GraphFormat format, const std::filesystem::path& path);

// Report tables, one block of rows per graph, header first.
std::string degree_table_csv(std::span<const RegionGraph> graphs);
std::string prominent_csv(std::span<const RegionGraph> graphs);
std::string region_specific_csv(std::span<const RegionGraph> graphs);

}  // namespace crisislens::netgraph
