#include "freeflow/tri_base.hpp"

#include <algorithm>
#include <limits>

#include "freeflow/decompose.hpp"
#include "freeflow/skew_decompose.hpp"

namespace freeflow {

namespace {

// Capacity given to auxiliary arcs; they only host intermediate flow.
constexpr Cap kAuxCapacity = std::numeric_limits<Cap>::max() / 8;

void add_into(ArcFlow& a, const ArcFlow& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

Cap out_value(const DirectedNetwork& d, const ArcFlow& f, NodeId s) {
  Cap v = 0;
  for (ArcId a = 0; a < d.num_arcs(); ++a) {
    if (d.arcs[a].tail == s) v += f[a];
    if (d.arcs[a].head == s) v -= f[a];
  }
  return v;
}

bool inside(const std::vector<char>& zone, const Arc& a) { return zone[a.tail] && zone[a.head]; }
bool crosses(const std::vector<char>& zone, const Arc& a) { return zone[a.tail] != zone[a.head]; }

}  // namespace

Cap AuxNetwork::transfer(const ArcFlow& f, NodeId v) const {
  const auto& q = quads[v];
  ensure(q[0] >= 0, "transfer asked at a node without auxiliary arcs");
  const Cap t = f[q[forward]] + f[q[forward_mate]] - f[q[backward]] - f[q[backward_mate]];
  return partition.in_first[v] ? t : -t;
}

ArcId AuxNetwork::aux_out(NodeId v) const {
  const auto& q = quads[v];
  return partition.in_first[v] ? q[forward] : q[backward];
}

AuxNetwork build_aux_network(const SkewNetwork& n) {
  AuxNetwork aux;
  aux.g1 = n;
  aux.num_real_arcs = n.num_arcs();
  aux.partition = default_partition(n);
  aux.quads.assign(n.num_nodes(), {-1, -1, -1, -1});
  const auto mask = n.terminal_mask();
  for (NodeId v = 0; v < n.num_nodes(); ++v) {
    if (mask[v] || !aux.partition.in_first[v]) continue;
    aux.inner_reps.push_back(v);
    const NodeId m = n.mate(v);
    const ArcId f = aux.g1.add_arc_pair(v, m, kAuxCapacity);
    const ArcId b = aux.g1.add_arc_pair(m, v, kAuxCapacity);
    aux.quads[v] = aux.quads[m] = {f, f + 1, b, b + 1};
  }
  return aux;
}

Cap SixFlowState::value(int i, int j) const {
  return out_value(aux.g1.graph, g[i][j], aux.g1.terminals[i]);
}

void SixFlowState::assign(int i, int j, ArcFlow f) {
  g[j][i] = mirror(aux.g1, f);
  g[i][j] = std::move(f);
}

ArcFlow SixFlowState::real_load() const {
  ArcFlow load(aux.num_real_arcs, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        for (ArcId a = 0; a < aux.num_real_arcs; ++a) load[a] += g[i][j][a];
  return load;
}

BaseInput stage1_solve(const SkewNetwork& n) {
  BaseInput in;
  in.image = skew_to_bidirected(n, default_partition(n));
  in.underlying = underlying_undirected(in.image.h);
  in.stage1 = solve_undirected3(in.underlying.u);
  return in;
}

SixFlowState stage2_lift(const SkewNetwork& n, const BaseInput& in) {
  ensure(n.terminals.size() == 3, "three terminals expected");
  SixFlowState st;
  st.aux = build_aux_network(n);
  const auto& g1 = st.aux.g1;
  const int na = g1.num_arcs();
  for (auto& row : st.g)
    for (auto& f : row) f.assign(na, 0);
  for (int i = 0; i < 3; ++i) {
    st.lambda[i] = in.stage1.lambdas[i].lambda;
    st.zone[i].assign(g1.num_nodes(), 0);
    for (NodeId v = 0; v < g1.num_nodes(); ++v)
      st.zone[i][v] = in.stage1.lambdas[i].cut.contains(in.image.h_node[v]);
  }
  for (const auto& w : in.stage1.family.walks) {
    NodeId cur = in.image.skew_node[w.walk.nodes.front()];
    const int j = g1.terminal_index(cur);
    ensure(j >= 0, "stage-1 path does not start at a terminal");
    std::vector<ArcId> arcs;
    for (int ue : w.walk.edges) {
      const auto& pair = in.image.edge_arcs[in.underlying.edge_of[ue]];
      auto leaving = [&]() -> ArcId {
        for (ArcId a : pair)
          if (g1.arc(a).tail == cur) return a;
        return -1;
      };
      ArcId a = leaving();
      if (a < 0) {
        ensure(!g1.is_terminal_node(cur), "non-transit pair at a terminal");
        const ArcId loop = st.aux.aux_out(cur);
        arcs.push_back(loop);
        cur = g1.arc(loop).head;
        a = leaving();
      }
      ensure(a >= 0, "stage-1 edge is not incident to the lifted walk");
      arcs.push_back(a);
      cur = g1.arc(a).head;
    }
    const int p = g1.terminal_index(g1.mate(cur));
    ensure(p >= 0 && p != j, "lifted path does not end at another terminal mate");
    for (ArcId a : arcs) {
      st.g[j][p][a] += w.weight;
      st.g[p][j][g1.mate_arc(a)] += w.weight;
    }
  }
  const auto load = st.real_load();
  for (ArcId a = 0; a < st.aux.num_real_arcs; ++a)
    ensure(load[a] <= g1.arc(a).cap, "lifted flows exceed capacity");
  check_zone_saturation(st);
  return st;
}

void check_zone_saturation(const SixFlowState& st) {
  const auto& g1 = st.aux.g1;
  const auto load = st.real_load();
  for (ArcId a = 0; a < st.aux.num_real_arcs; ++a)
    ensure(load[a] <= g1.arc(a).cap, "multiflow exceeds capacity on a real arc");
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    for (ArcId a = 0; a < st.aux.num_real_arcs; ++a) {
      const Arc& e = g1.arc(a);
      if (st.zone[i][e.tail] && !st.zone[i][e.head])
        ensure(st.g[i][j][a] + st.g[i][k][a] == e.cap, "arc leaving a terminal zone is not saturated");
      if (!st.zone[i][e.tail] && st.zone[i][e.head])
        ensure(st.g[j][i][a] + st.g[k][i][a] == e.cap, "arc entering a terminal zone is not saturated");
    }
  }
}

namespace {

// Residual capacities on real arcs, extended to auxiliary arcs so that the
// result is a symmetric flow with zero divergence at inner nodes.
ArcFlow extended_residual(const SixFlowState& st) {
  const auto& aux = st.aux;
  const auto& g1 = aux.g1;
  ArcFlow delta(g1.num_arcs(), 0);
  const auto load = st.real_load();
  for (ArcId a = 0; a < aux.num_real_arcs; ++a) delta[a] = g1.arc(a).cap - load[a];
  const auto div = divergence(g1.graph, delta);
  for (NodeId v : aux.inner_reps) {
    Cap sum = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) sum += aux.transfer(st.g[i][j], v);
    ensure(div[v] == sum, "residual divergence differs from the auxiliary transfers");
    ensure(sum % 2 == 0, "odd auxiliary transfer sum at node " + std::to_string(v));
    const Cap m = -sum;
    const auto& q = aux.quads[v];
    if (m >= 0) {
      delta[q[AuxNetwork::forward]] = delta[q[AuxNetwork::forward_mate]] = m / 2;
    } else {
      delta[q[AuxNetwork::backward]] = delta[q[AuxNetwork::backward_mate]] = -m / 2;
    }
  }
  return delta;
}

void zero_quad(const AuxNetwork& aux, ArcFlow& f, NodeId v) {
  for (ArcId a : aux.quads[v]) f[a] = 0;
}

bool quad_is_zero(const AuxNetwork& aux, const ArcFlow& f, NodeId v) {
  for (ArcId a : aux.quads[v])
    if (f[a] != 0) return false;
  return true;
}

}  // namespace

void stage3_clear_terminal_zones(SixFlowState& st) {
  const auto& aux = st.aux;
  const auto& g1 = aux.g1;
  const int na = g1.num_arcs();
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const auto& zone = st.zone[i];
    const NodeId si = g1.terminals[i];
    const ArcFlow delta = extended_residual(st);
    ArcFlow local(na, 0);
    for (ArcId a = 0; a < na; ++a)
      if (inside(zone, g1.arc(a))) local[a] = delta[a];
    const auto local_div = divergence(g1.graph, local);
    ensure(local_div[si] % 2 == 0, "residual flow in a terminal zone has odd value");
    const ArcFlow h = halve_even_flow(g1, local);

    ArcFlow sum = st.g[i][j];
    add_into(sum, st.g[i][k]);
    add_into(sum, h);
    for (NodeId v : aux.inner_reps) {
      if (!zone[v]) continue;
      ensure(aux.transfer(sum, v) == 0, "zone flow keeps an auxiliary transfer");
      ensure(quad_is_zero(aux, st.g[j][k], v), "foreign pair flow inside a terminal zone");
      zero_quad(aux, sum, v);
    }
    const Cap val_j = st.value(i, j), val_k = st.value(i, k);
    const NodeId src[] = {si};
    const NodeId snk[] = {g1.mate(g1.terminals[j]), g1.mate(g1.terminals[k]), g1.mate(si)};
    auto pd = decompose_few_terminals(g1.graph, sum, src, snk);
    ArcFlow fj = std::move(pd.at(0, 0));
    ArcFlow fk = std::move(pd.at(0, 1));
    const ArcFlow& fi = pd.at(0, 2);
    for (ArcId a = 0; a < na; ++a) {
      const Arc& e = g1.arc(a);
      ensure(!crosses(zone, e) || fi[a] == 0, "mate-to-mate flow leaves its zone");
      // Parts of one flow inside the other's zone are circulations; move them over.
      if (inside(st.zone[k], e)) {
        fk[a] += fj[a];
        fj[a] = 0;
      } else if (inside(st.zone[j], e)) {
        fj[a] += fk[a];
        fk[a] = 0;
      }
      if (crosses(st.zone[k], e)) ensure(fj[a] == 0, "flow crosses a foreign zone boundary");
      if (crosses(st.zone[j], e)) ensure(fk[a] == 0, "flow crosses a foreign zone boundary");
    }
    st.assign(i, j, std::move(fj));
    st.assign(i, k, std::move(fk));
    ensure(st.value(i, j) == val_j && st.value(i, k) == val_k, "zone clearing changed a flow value");
    for (NodeId v : aux.inner_reps)
      if (zone[v])
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            if (a != b) ensure(quad_is_zero(aux, st.g[a][b], v), "auxiliary flow left in a zone");
    check_zone_saturation(st);
  }
}

std::vector<NodeId> outside_zone_reps(const SixFlowState& st) {
  std::vector<NodeId> out;
  for (NodeId v : st.aux.inner_reps)
    if (!st.zone[0][v] && !st.zone[1][v] && !st.zone[2][v]) out.push_back(v);
  return out;
}

void stage3_equalize_W(SixFlowState& st) {
  const auto& aux = st.aux;
  const auto& g1 = aux.g1;
  const int na = g1.num_arcs();
  std::vector<char> w(g1.num_nodes(), 1);
  for (NodeId v = 0; v < g1.num_nodes(); ++v)
    if (st.zone[0][v] || st.zone[1][v] || st.zone[2][v]) w[v] = 0;
  const ArcFlow delta = extended_residual(st);
  ArcFlow idle(na, 0);
  for (ArcId a = 0; a < na; ++a)
    if (inside(w, g1.arc(a))) idle[a] = delta[a];
  for (Cap d : divergence(g1.graph, idle)) ensure(d == 0, "idle flow outside the zones is not a circulation");
  const ArcFlow omega = halve_even_flow(g1, idle);
  ArcFlow g01 = st.g[0][1];
  add_into(g01, omega);
  st.assign(0, 1, std::move(g01));
  for (NodeId v : outside_zone_reps(st)) {
    const Cap t = aux.transfer(st.g[0][1], v) + aux.transfer(st.g[1][2], v) + aux.transfer(st.g[0][2], v);
    ensure(t == 0, "pair transfers do not cancel at node " + std::to_string(v));
  }
  check_zone_saturation(st);
}

void stage3_eliminate_pair(SixFlowState& st, NodeId v) {
  const auto& aux = st.aux;
  const auto& g1 = aux.g1;
  const int na = g1.num_arcs();
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::array<Cap, 3> t{};
  for (int x = 0; x < 3; ++x) t[x] = aux.transfer(st.g[pairs[x][0]][pairs[x][1]], v);
  ensure(t[0] + t[1] + t[2] == 0, "pair transfers do not cancel at node " + std::to_string(v));

  std::array<Cap, 3> values{};
  for (int x = 0; x < 3; ++x) values[x] = st.value(pairs[x][0], pairs[x][1]);

  if (t[0] != 0 || t[1] != 0 || t[2] != 0) {
    const int positive = static_cast<int>(std::count_if(t.begin(), t.end(), [](Cap c) { return c > 0; }));
    NodeId x = v;
    if (positive != 1) {
      x = g1.mate(v);
      for (auto& c : t) c = -c;
    }
    const int pos = static_cast<int>(std::find_if(t.begin(), t.end(), [](Cap c) { return c > 0; }) - t.begin());
    const int p = pairs[pos][0], q = pairs[pos][1], r = 3 - p - q;
    auto pair_transfer = [&](int a, int b) {
      for (int y = 0; y < 3; ++y)
        if (pairs[y][0] == std::min(a, b) && pairs[y][1] == std::max(a, b)) return t[y];
      return Cap{0};
    };
    const Cap r0 = -pair_transfer(p, r), r1 = -pair_transfer(q, r);
    ensure(r0 >= 0 && r1 >= 0 && t[pos] == r0 + r1, "transfer signs do not match the elimination pattern");
    const NodeId sp = g1.terminals[p], sq = g1.terminals[q], sr = g1.terminals[r];
    const ArcId across = aux.aux_out(x);

    // Split g_pq into g0, g1 with transfers r0, r1 through a gadget replacing the quadruple.
    DirectedNetwork d = g1.graph;
    ArcFlow h = st.g[p][q];
    zero_quad(aux, h, v);
    const NodeId tt = d.add_node(), t0 = d.add_node(), t1 = d.add_node();
    d.add_arc(tt, g1.mate(x), r0 + r1);
    d.add_arc(x, t0, r0);
    d.add_arc(x, t1, r1);
    const Cap vpq = st.value(p, q);
    d.add_arc(g1.mate(sq), sp, vpq);
    h.push_back(r0 + r1);
    h.push_back(r0);
    h.push_back(r1);
    h.push_back(vpq);
    const NodeId gsrc[] = {tt};
    const NodeId gsnk[] = {t0, t1};
    auto split = decompose_few_terminals(d, h, gsrc, gsnk);
    ArcFlow part0(split.at(0, 0).begin(), split.at(0, 0).begin() + na);
    ArcFlow part1(split.at(0, 1).begin(), split.at(0, 1).begin() + na);
    part0[across] += r0;
    part1[across] += r1;

    ArcFlow f = part0;
    add_into(f, st.g[p][r]);
    ensure(aux.transfer(f, v) == 0, "combined flow keeps a transfer");
    zero_quad(aux, f, v);
    const NodeId src1[] = {sp};
    const NodeId snk1[] = {g1.mate(sq), g1.mate(sr)};
    auto d1 = decompose_few_terminals(g1.graph, f, src1, snk1);

    ArcFlow f2 = st.g[q][r];
    add_into(f2, mirror(g1, part1));
    ensure(aux.transfer(f2, v) == 0, "combined flow keeps a transfer");
    zero_quad(aux, f2, v);
    const NodeId src2[] = {sq};
    const NodeId snk2[] = {g1.mate(sr), g1.mate(sp)};
    auto d2 = decompose_few_terminals(g1.graph, f2, src2, snk2);

    ArcFlow new_pq = d1.at(0, 0);
    add_into(new_pq, mirror(g1, d2.at(0, 1)));
    st.assign(p, q, std::move(new_pq));
    st.assign(p, r, std::move(d1.at(0, 1)));
    st.assign(q, r, std::move(d2.at(0, 0)));
  } else {
    for (int x = 0; x < 3; ++x) {
      ArcFlow f = st.g[pairs[x][0]][pairs[x][1]];
      zero_quad(aux, f, v);
      st.assign(pairs[x][0], pairs[x][1], std::move(f));
    }
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) ensure(quad_is_zero(aux, st.g[a][b], v), "auxiliary flow left after elimination");
  for (int x = 0; x < 3; ++x)
    ensure(st.value(pairs[x][0], pairs[x][1]) == values[x], "elimination changed a flow value");
}

IsMultiflow solve_base(const SkewNetwork& n) {
  const int k = static_cast<int>(n.terminals.size());
  require(k <= 3, "base solver handles at most three terminals");
  require_valid(n);
  const int m = n.num_arcs();
  IsMultiflow out = IsMultiflow::zero(k, m);
  if (k <= 1) return out;

  SkewNetwork padded = n;
  while (padded.terminals.size() < 3) padded.terminals.push_back(padded.add_node_pair());
  const BaseInput in = stage1_solve(padded);
  SixFlowState st = stage2_lift(padded, in);
  stage3_clear_terminal_zones(st);
  stage3_equalize_W(st);
  const auto outside = outside_zone_reps(st);
  for (std::size_t idx = 0; idx < outside.size(); ++idx) {
    stage3_eliminate_pair(st, outside[idx]);
    for (std::size_t prev = 0; prev < idx; ++prev)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (a != b) ensure(quad_is_zero(st.aux, st.g[a][b], outside[prev]), "cleared pair regained flow");
  }
  check_zone_saturation(st);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b)
        for (ArcId e = m; e < st.aux.g1.num_arcs(); ++e)
          ensure(st.g[a][b][e] == 0, "auxiliary arc keeps flow at the end");

  Cap lambda_sum = 0;
  for (int i = 0; i < k; ++i) lambda_sum += st.lambda[i];
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) out.at(i, j).assign(st.g[i][j].begin(), st.g[i][j].begin() + m);
  ensure(multiflow_value(n, out) == lambda_sum, "base multiflow value differs from the cut bound");
  const auto totals = terminal_totals(n, out);
  for (int i = 0; i < k; ++i) ensure(totals[i] == st.lambda[i], "terminal total differs from its cut");
  return out;
}

}  // namespace freeflow
