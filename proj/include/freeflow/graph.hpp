#pragma once

#include <span>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

#include "freeflow/common.hpp"

namespace freeflow {

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  Cap cap = 0;
};

/// Directed multigraph with integer capacities. Parallel arcs are kept distinct.
struct DirectedNetwork {
  int num_nodes = 0;
  std::vector<Arc> arcs;

  int num_arcs() const { return static_cast<int>(arcs.size()); }
  NodeId add_node() { return num_nodes++; }
  ArcId add_arc(NodeId tail, NodeId head, Cap cap) {
    arcs.push_back({tail, head, cap});
    return num_arcs() - 1;
  }
};

/// div(v) = outflow - inflow.
std::vector<Cap> divergence(const DirectedNetwork& g, std::span<const Cap> flow);

/// Skew-symmetric network. The mate tables are explicit so that derived
/// networks (shrinking, auxiliary arcs) can add arcs anywhere.
class SkewNetwork {
 public:
  DirectedNetwork graph;
  std::vector<NodeId> node_mate;
  std::vector<ArcId> arc_mate;
  /// Terminal representatives S; the mates form S'.
  std::vector<NodeId> terminals;

  int num_nodes() const { return graph.num_nodes; }
  int num_arcs() const { return graph.num_arcs(); }
  const Arc& arc(ArcId a) const { return graph.arcs[a]; }
  NodeId mate(NodeId v) const { return node_mate[v]; }
  ArcId mate_arc(ArcId a) const { return arc_mate[a]; }

  /// Adds v and its mate; returns v (the mate is `mate(v)`).
  NodeId add_node_pair();
  /// Adds an arc u->v and its mate mate(v)->mate(u), both with capacity `cap`.
  /// Returns the id of the u->v arc; the mate gets the next id.
  ArcId add_arc_pair(NodeId u, NodeId v, Cap cap);

  /// Index of v in `terminals`, or -1.
  int terminal_index(NodeId v) const;
  /// True for v in S or S'.
  bool is_terminal_node(NodeId v) const;
  std::vector<char> terminal_mask() const;

  /// Network with |V|/2 representatives 0..n-1 and mates n..2n-1.
  static SkewNetwork with_node_pairs(int num_pairs);
};

/// sigma-image of an arc function: out[mate(a)] = f[a].
ArcFlow mirror(const SkewNetwork& n, std::span<const Cap> flow);

/// Sign of a bidirected edge at one endpoint.
enum class Sign : unsigned char { out, in };

struct BidirectedEdge {
  NodeId u = 0;
  Sign sign_u = Sign::out;
  NodeId v = 0;
  Sign sign_v = Sign::in;
  Cap cap = 0;

  bool is_loop() const { return u == v; }
  /// Direction of the edge at endpoint w (w must be an endpoint).
  Sign sign_at(NodeId w) const { return w == u ? sign_u : sign_v; }
  NodeId other(NodeId w) const { return w == u ? v : u; }
};

struct BidirectedNetwork {
  int num_nodes = 0;
  std::vector<BidirectedEdge> edges;
  std::vector<NodeId> terminals;

  int num_edges() const { return static_cast<int>(edges.size()); }
  bool is_terminal(NodeId v) const;
};

struct UndirectedEdge {
  NodeId u = 0;
  NodeId v = 0;
  Cap cap = 0;
};

struct UndirectedNetwork {
  int num_nodes = 0;
  std::vector<UndirectedEdge> edges;
  std::vector<NodeId> terminals;

  int num_edges() const { return static_cast<int>(edges.size()); }
};

struct Violation {
  std::string kind;
  std::string location;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string location, std::string detail = {}) {
    violations.push_back({std::move(kind), std::move(location), std::move(detail)});
  }
  bool has(std::string_view kind) const;
  std::string summary() const;
};

/// Violation kinds that normalize_terminals repairs.
inline constexpr std::string_view kArcEntersTerminal = "arc enters terminal";
inline constexpr std::string_view kArcBetweenTerminalMates = "arc between terminal mates";

/// Checks every skew-symmetry invariant plus inner-Eulerianness and the
/// terminal normalization clauses. Never throws.
ValidationReport validate_skew(const SkewNetwork& n);

/// Redirects arcs entering S to the mate terminal (and symmetrically arcs
/// leaving S'), then drops arcs joining a terminal to its own mate. When
/// `origin` is given it receives the input arc of every output arc.
SkewNetwork normalize_terminals(const SkewNetwork& n, std::vector<ArcId>* origin = nullptr);

/// Throws InvalidInput carrying the report summary if validation fails.
void require_valid(const SkewNetwork& n);

}  // namespace freeflow
