#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freeflow/bridge.hpp"
#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"

namespace freeflow {

enum class FileFormat { skew, bidir, undir, digraph };

std::optional<FileFormat> format_from_name(std::string_view name);
std::string_view format_name(FileFormat format);

/// One arc or edge line. Skew and digraph records are u -> v (sign_u out,
/// sign_v in); undirected records have both signs out.
struct FileRecord {
  NodeId u = 0;
  Sign sign_u = Sign::out;
  NodeId v = 0;
  Sign sign_v = Sign::in;
  Cap cap = 0;

  bool operator==(const FileRecord&) const = default;
};

/// Contents of a network file with 0-based node ids. Skew files list one
/// arc per mate pair, with mate(v) = v + N/2.
struct NetworkFile {
  FileFormat format = FileFormat::skew;
  int num_nodes = 0;
  std::vector<NodeId> terminals;
  std::vector<FileRecord> records;

  bool operator==(const NetworkFile&) const = default;
};

/// Parses the line format. `expected` rejects a file whose header names a
/// different kind. With `paired`, skew files list both arcs of every pair
/// and are checked for consistency. Errors carry the line number.
NetworkFile read_network_file(std::istream& in, std::optional<FileFormat> expected = {},
                              bool paired = false);
NetworkFile read_network_file(const std::string& path, std::optional<FileFormat> expected = {},
                              bool paired = false);
void write_network_file(std::ostream& out, const NetworkFile& file);

/// Skew file of a network whose mates follow v <-> v + |V|/2, terminals in the
/// lower half, and whose arc pairs are stored as (a, a + 1).
NetworkFile skew_file(const SkewNetwork& n);
NetworkFile bidirected_file(const BidirectedNetwork& h);

/// Solver view of a file. Record r becomes skew arcs 2r (as written) and
/// 2r + 1 (its mate); undirected files append one in-in loop of capacity
/// deg(v)/2 per inner node, numbered after the records.
struct LoadedNetwork {
  NetworkFile file;
  /// Normalized skew network handed to the solvers.
  SkewNetwork skew;
  /// Skew arc -> pre-normalization arc id (2r or 2r + 1).
  std::vector<ArcId> arc_origin;
  /// Bidirected image of `skew`; its node ids are file node ids.
  BidirectedImage image;
  /// H edge -> record index, or -1 for an added loop.
  std::vector<int> edge_record;
  /// Record index -> H edge, or -1 when normalization removed it.
  std::vector<int> record_edge;
};

LoadedNetwork load_network(const NetworkFile& file);

enum class EmitMode { flows, walks };

/// Summary plus either nonzero pair-flow entries or weighted walks, in file
/// ids. Walks in undirected files omit the balancing loops.
struct Solution {
  /// val(F): twice the total walk weight.
  Cap value = 0;
  std::vector<Cap> lambdas;
  bool certified = false;
  EmitMode mode = EmitMode::walks;
  IsMultiflow flows;
  WeightedWalkFamily walks;
};

/// Builds the emitted form of a solver result. Walks are sorted and merged.
Solution make_solution(const LoadedNetwork& net, const IsMultiflow& f, EmitMode mode,
                       const WeightedWalkFamily* walks = nullptr);
void write_solution(std::ostream& out, const LoadedNetwork& net, const Solution& s);
Solution read_solution(std::istream& in, const LoadedNetwork& net);

/// Walks of a solution file mapped onto the bidirected image (loops restored
/// for undirected files).
WeightedWalkFamily walks_on_image(const LoadedNetwork& net, const WeightedWalkFamily& file_walks);

}  // namespace freeflow
