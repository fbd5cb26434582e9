#include "freeflow/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "freeflow/verify.hpp"

namespace freeflow {

std::optional<FileFormat> format_from_name(std::string_view name) {
  if (name == "skew") return FileFormat::skew;
  if (name == "bidir") return FileFormat::bidir;
  if (name == "undir") return FileFormat::undir;
  if (name == "digraph") return FileFormat::digraph;
  return std::nullopt;
}

std::string_view format_name(FileFormat format) {
  switch (format) {
    case FileFormat::skew: return "skew";
    case FileFormat::bidir: return "bidir";
    case FileFormat::undir: return "undir";
    case FileFormat::digraph: return "digraph";
  }
  return "skew";
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line split into tokens; false at end.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      tokens.clear();
      std::istringstream ss(line);
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (tokens.empty() || tokens[0] == "c") continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("line " + std::to_string(number_) + ": " + what);
  }
  void check(bool ok, const std::string& what) const {
    if (!ok) fail(what);
  }

  long long integer(const std::string& token, const char* what) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      fail(std::string("malformed ") + what + " '" + token + "'");
    }
    check(used == token.size(), std::string("malformed ") + what + " '" + token + "'");
    return v;
  }

  NodeId node(const std::string& token, int num_nodes) const {
    const long long v = integer(token, "node id");
    check(v >= 1 && v <= num_nodes, "node id " + token + " out of range");
    return static_cast<NodeId>(v - 1);
  }

  Cap capacity(const std::string& token) const {
    const long long v = integer(token, "capacity");
    check(v >= 0, "negative capacity " + token);
    return v;
  }

  Sign sign(const std::string& token) const {
    if (token == "+") return Sign::out;
    if (token == "-" || token == "−") return Sign::in;
    fail("malformed sign '" + token + "'");
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

char sign_char(Sign s) { return s == Sign::out ? '+' : '-'; }

}  // namespace

NetworkFile read_network_file(std::istream& in, std::optional<FileFormat> expected, bool paired) {
  LineReader r(in);
  std::vector<std::string> tok;
  NetworkFile file;
  if (!r.next(tok)) throw InvalidInput("empty network file");
  r.check(tok[0] == "p" && tok.size() == 5, "expected header 'p <kind> <N> <M> <K>'");
  const auto format = format_from_name(tok[1]);
  r.check(format.has_value(), "unknown network kind '" + tok[1] + "'");
  r.check(!expected || *expected == *format,
          "file holds a " + tok[1] + " network, expected " + std::string(format_name(*expected)));
  file.format = *format;
  const long long n = r.integer(tok[2], "node count");
  const long long m = r.integer(tok[3], "record count");
  const long long k = r.integer(tok[4], "terminal count");
  r.check(n >= 0 && m >= 0 && k >= 0, "negative count in header");
  const bool skew = file.format == FileFormat::skew;
  r.check(!skew || n % 2 == 0, "skew networks need an even node count");
  file.num_nodes = static_cast<int>(n);

  bool have_terminals = false;
  std::vector<FileRecord> raw;
  const std::string tag = file.format == FileFormat::skew || file.format == FileFormat::digraph ? "a" : "e";
  const std::size_t width = file.format == FileFormat::bidir ? 6 : 4;
  while (r.next(tok)) {
    if (tok[0] == "s") {
      r.check(!have_terminals, "second terminal line");
      have_terminals = true;
      r.check(static_cast<long long>(tok.size()) == k + 1, "terminal line needs " + std::to_string(k) + " ids");
      std::vector<char> seen(file.num_nodes, 0);
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const NodeId s = r.node(tok[i], file.num_nodes);
        r.check(!skew || s < file.num_nodes / 2, "skew terminal " + tok[i] + " is not in the lower node half");
        r.check(!seen[s], "terminal " + tok[i] + " listed twice");
        seen[s] = 1;
        file.terminals.push_back(s);
      }
    } else if (tok[0] == tag) {
      r.check(tok.size() == width, "record needs " + std::to_string(width - 1) + " fields");
      FileRecord rec;
      rec.u = r.node(tok[1], file.num_nodes);
      if (file.format == FileFormat::bidir) {
        rec.sign_u = r.sign(tok[2]);
        rec.v = r.node(tok[3], file.num_nodes);
        rec.sign_v = r.sign(tok[4]);
        rec.cap = r.capacity(tok[5]);
        r.check(!(rec.u == rec.v && rec.sign_u != rec.sign_v), "loop with mixed signs");
      } else {
        rec.v = r.node(tok[2], file.num_nodes);
        rec.cap = r.capacity(tok[3]);
        if (file.format == FileFormat::undir) rec.sign_v = Sign::out;
        r.check(file.format != FileFormat::digraph || rec.u != rec.v, "directed loop");
      }
      raw.push_back(rec);
    } else {
      r.fail("unexpected line tag '" + tok[0] + "'");
    }
  }
  if (!have_terminals) throw InvalidInput("missing terminal line");
  if (static_cast<long long>(raw.size()) != m)
    throw InvalidInput("header announces " + std::to_string(m) + " records, found " + std::to_string(raw.size()));

  if (!(skew && paired)) {
    file.records = std::move(raw);
    return file;
  }
  const NodeId half = file.num_nodes / 2;
  auto mate = [&](NodeId v) { return v < half ? v + half : v - half; };
  std::map<std::tuple<NodeId, NodeId, Cap>, std::vector<std::size_t>> open;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& a = raw[i];
    auto it = open.find({mate(a.v), mate(a.u), a.cap});
    if (it != open.end() && !it->second.empty()) {
      it->second.pop_back();
      continue;
    }
    open[{a.u, a.v, a.cap}].push_back(i);
    file.records.push_back(a);
  }
  for (const auto& [key, idx] : open)
    if (!idx.empty())
      throw InvalidInput("arc " + std::to_string(std::get<0>(key) + 1) + " -> " +
                         std::to_string(std::get<1>(key) + 1) + " has no mate in the paired listing");
  return file;
}

NetworkFile read_network_file(const std::string& path, std::optional<FileFormat> expected, bool paired) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_network_file(in, expected, paired);
}

void write_network_file(std::ostream& out, const NetworkFile& file) {
  out << "p " << format_name(file.format) << ' ' << file.num_nodes << ' ' << file.records.size() << ' '
      << file.terminals.size() << '\n';
  out << 's';
  for (NodeId s : file.terminals) out << ' ' << s + 1;
  out << '\n';
  for (const auto& rec : file.records) {
    switch (file.format) {
      case FileFormat::skew:
      case FileFormat::digraph:
        out << "a " << rec.u + 1 << ' ' << rec.v + 1 << ' ' << rec.cap << '\n';
        break;
      case FileFormat::undir:
        out << "e " << rec.u + 1 << ' ' << rec.v + 1 << ' ' << rec.cap << '\n';
        break;
      case FileFormat::bidir:
        out << "e " << rec.u + 1 << ' ' << sign_char(rec.sign_u) << ' ' << rec.v + 1 << ' '
            << sign_char(rec.sign_v) << ' ' << rec.cap << '\n';
        break;
    }
  }
}

NetworkFile skew_file(const SkewNetwork& n) {
  NetworkFile file;
  file.format = FileFormat::skew;
  file.num_nodes = n.num_nodes();
  const NodeId half = n.num_nodes() / 2;
  require(n.num_nodes() % 2 == 0, "odd node count");
  for (NodeId v = 0; v < half; ++v) require(n.mate(v) == v + half, "mates do not follow v <-> v + N/2");
  for (NodeId s : n.terminals) {
    require(s < half, "terminal in the upper node half");
    file.terminals.push_back(s);
  }
  for (ArcId a = 0; a < n.num_arcs(); ++a) {
    if (n.mate_arc(a) < a) continue;
    const Arc& e = n.arc(a);
    file.records.push_back({e.tail, Sign::out, e.head, Sign::in, e.cap});
  }
  return file;
}

NetworkFile bidirected_file(const BidirectedNetwork& h) {
  NetworkFile file;
  file.format = FileFormat::bidir;
  file.num_nodes = h.num_nodes;
  file.terminals = h.terminals;
  for (const auto& e : h.edges) file.records.push_back({e.u, e.sign_u, e.v, e.sign_v, e.cap});
  return file;
}

LoadedNetwork load_network(const NetworkFile& file) {
  LoadedNetwork net;
  net.file = file;
  SkewNetwork raw;
  if (file.format == FileFormat::skew) {
    raw = SkewNetwork::with_node_pairs(file.num_nodes / 2);
    for (const auto& rec : file.records) raw.add_arc_pair(rec.u, rec.v, rec.cap);
    raw.terminals = file.terminals;
  } else {
    BidirectedNetwork h;
    h.num_nodes = file.num_nodes;
    h.terminals = file.terminals;
    for (const auto& rec : file.records) h.edges.push_back({rec.u, rec.sign_u, rec.v, rec.sign_v, rec.cap});
    if (file.format == FileFormat::undir) {
      std::vector<Cap> degree(file.num_nodes, 0);
      for (const auto& rec : file.records) {
        degree[rec.u] += rec.cap;
        degree[rec.v] += rec.cap;
      }
      std::vector<char> terminal(file.num_nodes, 0);
      for (NodeId s : file.terminals) terminal[s] = 1;
      for (NodeId v = 0; v < file.num_nodes; ++v) {
        if (terminal[v] || degree[v] == 0) continue;
        require(degree[v] % 2 == 0, "inner node " + std::to_string(v + 1) + " has odd degree " +
                                        std::to_string(degree[v]));
        h.edges.push_back({v, Sign::in, v, Sign::in, degree[v] / 2});
      }
    }
    raw = bidirected_to_skew(h).g;
  }
  net.skew = normalize_terminals(raw, &net.arc_origin);
  require_valid(net.skew);
  net.image = skew_to_bidirected(net.skew);
  for (NodeId h = 0; h < net.image.h.num_nodes; ++h)
    ensure(net.image.skew_node[h] == h, "bidirected image does not keep file node ids");
  const int num_records = static_cast<int>(file.records.size());
  net.record_edge.assign(num_records, -1);
  for (int e = 0; e < net.image.h.num_edges(); ++e) {
    const int r = net.arc_origin[net.image.edge_arcs[e][0]] / 2;
    net.edge_record.push_back(r < num_records ? r : -1);
    if (r < num_records) net.record_edge[r] = e;
  }
  return net;
}

namespace {

bool walk_less(const WeightedWalk& a, const WeightedWalk& b) {
  return std::tie(a.walk.nodes, a.walk.edges) < std::tie(b.walk.nodes, b.walk.edges);
}

void reverse_walk(Walk& w) {
  std::reverse(w.nodes.begin(), w.nodes.end());
  std::reverse(w.edges.begin(), w.edges.end());
}

// H walk -> file walk: node ids already agree, edges become records, loops go.
Walk to_file_walk(const LoadedNetwork& net, const Walk& w) {
  Walk out;
  out.nodes.push_back(w.nodes[0]);
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const int r = net.edge_record[w.edges[i]];
    if (r < 0) continue;
    out.edges.push_back(r);
    out.nodes.push_back(w.nodes[i + 1]);
  }
  if (net.file.format == FileFormat::digraph && net.file.records[out.edges[0]].u != out.nodes[0]) {
    reverse_walk(out);
  } else if (net.file.format != FileFormat::digraph && out.nodes.back() < out.nodes.front()) {
    reverse_walk(out);
  }
  return out;
}

}  // namespace

Solution make_solution(const LoadedNetwork& net, const IsMultiflow& f, EmitMode mode,
                       const WeightedWalkFamily* walks) {
  Solution s;
  s.mode = mode;
  s.flows = f;
  const auto cert = certify_optimal(net.skew, f);
  s.value = cert.value;
  s.lambdas = cert.lambdas;
  s.certified = cert.ok;
  if (mode == EmitMode::flows) return s;
  const auto family = walks ? *walks : multiflow_to_walks(net.skew, net.image, f);
  std::vector<WeightedWalk> list;
  for (const auto& w : family.walks) list.push_back({to_file_walk(net, w.walk), w.weight});
  std::sort(list.begin(), list.end(), walk_less);
  for (auto& w : list) {
    if (!s.walks.walks.empty() && !walk_less(s.walks.walks.back(), w))
      s.walks.walks.back().weight += w.weight;
    else
      s.walks.walks.push_back(std::move(w));
  }
  return s;
}

void write_solution(std::ostream& out, const LoadedNetwork& net, const Solution& s) {
  out << "v " << s.value << '\n';
  out << 'l';
  for (Cap l : s.lambdas) out << ' ' << l;
  out << '\n';
  out << "k " << (s.certified ? "ok" : "fail") << '\n';
  const auto& terms = net.file.terminals;
  if (s.mode == EmitMode::flows) {
    const int k = s.flows.num_terminals;
    std::vector<std::pair<ArcId, ArcId>> order;
    for (ArcId a = 0; a < net.skew.num_arcs(); ++a) order.push_back({net.arc_origin[a], a});
    std::sort(order.begin(), order.end());
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (const auto& [origin, a] : order)
          if (const Cap v = s.flows.at(i, j)[a]; v != 0)
            out << "f " << terms[i] + 1 << ' ' << terms[j] + 1 << ' ' << origin + 1 << ' ' << v << '\n';
    return;
  }
  for (const auto& w : s.walks.walks) {
    out << "w " << w.source() + 1 << ' ' << w.sink() + 1 << ' ' << w.weight << ' ' << w.walk.nodes[0] + 1;
    for (std::size_t i = 0; i < w.walk.edges.size(); ++i)
      out << ' ' << w.walk.edges[i] + 1 << ' ' << w.walk.nodes[i + 1] + 1;
    out << '\n';
  }
}

Solution read_solution(std::istream& in, const LoadedNetwork& net) {
  LineReader r(in);
  std::vector<std::string> tok;
  Solution s;
  const int k = static_cast<int>(net.file.terminals.size());
  const int num_nodes = net.file.num_nodes;
  const int num_records = static_cast<int>(net.file.records.size());
  s.flows = IsMultiflow::zero(k, net.skew.num_arcs());
  std::map<ArcId, ArcId> arc_of_origin;
  for (ArcId a = 0; a < net.skew.num_arcs(); ++a) arc_of_origin[net.arc_origin[a]] = a;
  std::vector<int> terminal_index(num_nodes, -1);
  for (int i = 0; i < k; ++i) terminal_index[net.file.terminals[i]] = i;
  auto terminal = [&](const std::string& t) {
    const int i = terminal_index[r.node(t, num_nodes)];
    r.check(i >= 0, "node " + t + " is not a terminal");
    return i;
  };
  bool have_flows = false, have_walks = false;
  while (r.next(tok)) {
    if (tok[0] == "v") {
      r.check(tok.size() == 2, "value line needs one field");
      s.value = r.integer(tok[1], "value");
    } else if (tok[0] == "l") {
      r.check(static_cast<int>(tok.size()) == k + 1, "lambda line needs " + std::to_string(k) + " values");
      s.lambdas.clear();
      for (std::size_t i = 1; i < tok.size(); ++i) s.lambdas.push_back(r.integer(tok[i], "lambda"));
    } else if (tok[0] == "k") {
      r.check(tok.size() == 2 && (tok[1] == "ok" || tok[1] == "fail"), "certificate line is 'k ok' or 'k fail'");
      s.certified = tok[1] == "ok";
    } else if (tok[0] == "f") {
      r.check(tok.size() == 5, "flow line needs four fields");
      const int i = terminal(tok[1]), j = terminal(tok[2]);
      r.check(i != j, "flow between a terminal and itself");
      const long long origin = r.integer(tok[3], "arc id") - 1;
      const auto it = arc_of_origin.find(static_cast<ArcId>(origin));
      r.check(origin >= 0 && it != arc_of_origin.end(), "unknown arc " + tok[3]);
      const Cap v = r.integer(tok[4], "flow value");
      if (i < j) s.flows.at(i, j)[it->second] += v;
      else s.flows.at(j, i)[net.skew.mate_arc(it->second)] += v;
      have_flows = true;
    } else if (tok[0] == "w") {
      r.check(tok.size() >= 7 && tok.size() % 2 == 1, "walk line needs s t weight and an alternating walk");
      WeightedWalk w;
      w.weight = r.integer(tok[3], "weight");
      w.walk.nodes.push_back(r.node(tok[4], num_nodes));
      for (std::size_t i = 5; i + 1 < tok.size(); i += 2) {
        const long long e = r.integer(tok[i], "edge id");
        r.check(e >= 1 && e <= num_records, "edge id " + tok[i] + " out of range");
        w.walk.edges.push_back(static_cast<int>(e - 1));
        w.walk.nodes.push_back(r.node(tok[i + 1], num_nodes));
      }
      r.check(r.node(tok[1], num_nodes) == w.source() && r.node(tok[2], num_nodes) == w.sink(),
              "walk endpoints disagree with its s and t fields");
      s.walks.walks.push_back(std::move(w));
      have_walks = true;
    } else {
      r.fail("unexpected line tag '" + tok[0] + "'");
    }
  }
  if (have_flows && have_walks) throw InvalidInput("solution mixes flow and walk lines");
  s.mode = have_flows ? EmitMode::flows : EmitMode::walks;
  return s;
}

WeightedWalkFamily walks_on_image(const LoadedNetwork& net, const WeightedWalkFamily& file_walks) {
  std::vector<int> loop(net.file.num_nodes, -1);
  for (int e = 0; e < net.image.h.num_edges(); ++e)
    if (net.edge_record[e] < 0) loop[net.image.h.edges[e].u] = e;
  WeightedWalkFamily out;
  for (const auto& fw : file_walks.walks) {
    WeightedWalk w;
    w.weight = fw.weight;
    w.walk.nodes.push_back(fw.walk.nodes[0]);
    for (std::size_t i = 0; i < fw.walk.edges.size(); ++i) {
      const int e = net.record_edge[fw.walk.edges[i]];
      require(e >= 0, "walk uses removed record " + std::to_string(fw.walk.edges[i] + 1));
      w.walk.edges.push_back(e);
      const NodeId v = fw.walk.nodes[i + 1];
      w.walk.nodes.push_back(v);
      if (i + 1 < fw.walk.edges.size() && loop[v] >= 0) {
        w.walk.edges.push_back(loop[v]);
        w.walk.nodes.push_back(v);
      }
    }
    out.walks.push_back(std::move(w));
  }
  return out;
}

}  // namespace freeflow
