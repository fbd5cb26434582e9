#include "freeflow/multiflow.hpp"

namespace freeflow {

IsMultiflow IsMultiflow::zero(int num_terminals, int num_arcs) {
  IsMultiflow f;
  f.num_terminals = num_terminals;
  f.flows.assign(num_terminals * (num_terminals - 1) / 2, ArcFlow(num_arcs, 0));
  return f;
}

ArcFlow IsMultiflow::ordered(const SkewNetwork& n, int i, int j) const {
  if (i < j) return at(i, j);
  return mirror(n, at(j, i));
}

ArcFlow IsMultiflow::total(const SkewNetwork& n) const {
  ArcFlow sum(n.num_arcs(), 0);
  for (const auto& f : flows) {
    for (ArcId a = 0; a < n.num_arcs(); ++a) {
      sum[a] += f[a];
      sum[n.mate_arc(a)] += f[a];
    }
  }
  return sum;
}

Cap flow_value(const SkewNetwork& n, std::span<const Cap> flow, NodeId s) {
  Cap div = 0;
  const NodeId m = n.mate(s);
  for (ArcId a = 0; a < n.num_arcs(); ++a) {
    const Arc& e = n.arc(a);
    if (e.tail == s || e.tail == m) div += flow[a];
    if (e.head == s || e.head == m) div -= flow[a];
  }
  return div;
}

Cap multiflow_value(const SkewNetwork& n, const IsMultiflow& f) {
  Cap v = 0;
  const int k = f.num_terminals;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) v += 2 * flow_value(n, f.at(i, j), n.terminals[i]);
  return v;
}

std::vector<Cap> terminal_totals(const SkewNetwork& n, const IsMultiflow& f) {
  const int k = f.num_terminals;
  std::vector<Cap> out(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const Cap v = flow_value(n, f.at(i, j), n.terminals[i]);
      out[i] += v;
      out[j] += v;
    }
  }
  return out;
}

}  // namespace freeflow
