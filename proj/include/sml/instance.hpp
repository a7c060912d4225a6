#pragma once
// instance.hpp -- data model for stationary matching instances.
//
// An instance has offline types (arrival rate lambda, departure rate mu,
// optional TOP/BOT section label), online types (arrival rate gamma), and a
// sparse reward map on offline x online pairs. An absent pair is a non-edge;
// an explicit reward of 0 is a real edge with zero reward. Ids are dense and
// 0-based on each side; external names live in sidecar vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sml {

enum class Section { NONE, TOP, BOT };

inline const char* to_string(Section s) {
  switch (s) {
    case Section::TOP: return "TOP";
    case Section::BOT: return "BOT";
    default: return "NONE";
  }
}

struct OfflineType {
  int id = 0;
  double lambda = 0.0;  // arrival rate, > 0
  double mu = 0.0;      // departure rate, > 0
  Section section = Section::NONE;
};

struct OnlineType {
  int id = 0;
  double gamma = 0.0;  // arrival rate, > 0
};

struct Edge {
  int i = 0;     // offline id
  int j = 0;     // online id
  double r = 0;  // reward, >= 0
};

class ProblemInstance {
 public:
  std::vector<OfflineType> offline;
  std::vector<OnlineType> online;
  std::vector<Edge> edges;  // finalize() sorts by (i, j) and indexes them
  std::vector<std::string> offline_names;  // optional sidecar, parallel to offline
  std::vector<std::string> online_names;

  int n_offline() const { return static_cast<int>(offline.size()); }
  int n_online() const { return static_cast<int>(online.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  // Edge indices incident to online type j / offline type i, ascending peer id.
  const std::vector<int>& online_adj(int j) const { return online_adj_.at(j); }
  const std::vector<int>& offline_adj(int i) const { return offline_adj_.at(i); }

  // Index into edges for pair (i,j), or -1 for a non-edge.
  int edge_index(int i, int j) const {
    auto it = edge_map_.find(key(i, j));
    return it == edge_map_.end() ? -1 : it->second;
  }

  // Gamma_i: total online arrival rate over i's instance neighborhood.
  double gamma_around(int i) const {
    double s = 0.0;
    for (int k : offline_adj_.at(i)) s += online[edges[k].j].gamma;
    return s;
  }

  // Smallest rate appearing anywhere in the instance (lambda, mu or gamma).
  double min_rate() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& o : offline) m = std::min({m, o.lambda, o.mu});
    for (const auto& o : online) m = std::min(m, o.gamma);
    return m;
  }

  const std::string& offline_name(int i) const { return offline_names[i]; }
  const std::string& online_name(int j) const { return online_names[j]; }

  // Sorts edges, builds adjacency and the (i,j) -> edge index map, and fills
  // default names. Throws on duplicate edges or dangling ids; run validate()
  // first when the data is untrusted.
  void finalize() {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    edge_map_.clear();
    edge_map_.reserve(edges.size() * 2);
    offline_adj_.assign(offline.size(), {});
    online_adj_.assign(online.size(), {});
    for (int k = 0; k < n_edges(); ++k) {
      const Edge& e = edges[k];
      if (e.i < 0 || e.i >= n_offline() || e.j < 0 || e.j >= n_online())
        throw std::invalid_argument("edge (" + std::to_string(e.i) + "," +
                                    std::to_string(e.j) + ") references an unknown type");
      if (!edge_map_.emplace(key(e.i, e.j), k).second)
        throw std::invalid_argument("duplicate reward entry (" + std::to_string(e.i) +
                                    "," + std::to_string(e.j) + ")");
      offline_adj_[e.i].push_back(k);
      online_adj_[e.j].push_back(k);
    }
    // Adjacency ascending by peer id follows from the (i, j) edge sort for
    // offline_adj; online_adj needs an explicit sort by i.
    for (auto& adj : online_adj_)
      std::sort(adj.begin(), adj.end(), [&](int a, int b) { return edges[a].i < edges[b].i; });
    if (offline_names.size() != offline.size()) {
      offline_names.resize(offline.size());
      for (int i = 0; i < n_offline(); ++i)
        if (offline_names[i].empty()) offline_names[i] = std::to_string(i);
    }
    if (online_names.size() != online.size()) {
      online_names.resize(online.size());
      for (int j = 0; j < n_online(); ++j)
        if (online_names[j].empty()) online_names[j] = std::to_string(j);
    }
  }

 private:
  static std::int64_t key(int i, int j) {
    return (static_cast<std::int64_t>(i) << 32) | static_cast<std::uint32_t>(j);
  }
  std::unordered_map<std::int64_t, int> edge_map_;
  std::vector<std::vector<int>> offline_adj_;
  std::vector<std::vector<int>> online_adj_;
};

// Collects human-readable violations; an empty result means the instance is
// well formed. Never throws.
inline std::vector<std::string> validate(const ProblemInstance& inst) {
  std::vector<std::string> out;
  auto add = [&](std::string s) { out.push_back(std::move(s)); };
  if (inst.offline.empty()) add("instance must have at least one offline type");
  if (inst.online.empty()) add("instance must have at least one online type");
  for (int i = 0; i < inst.n_offline(); ++i) {
    const auto& o = inst.offline[i];
    if (o.id != i) add("offline ids must be dense and 0-based (position " +
                       std::to_string(i) + " has id " + std::to_string(o.id) + ")");
    if (!(o.lambda > 0)) add("offline " + std::to_string(o.id) + ": lambda must be > 0");
    if (!(o.mu > 0)) add("offline " + std::to_string(o.id) + ": mu must be > 0");
  }
  for (int j = 0; j < inst.n_online(); ++j) {
    const auto& o = inst.online[j];
    if (o.id != j) add("online ids must be dense and 0-based (position " +
                       std::to_string(j) + " has id " + std::to_string(o.id) + ")");
    if (!(o.gamma > 0)) add("online " + std::to_string(o.id) + ": gamma must be > 0");
  }
  std::vector<std::pair<int, int>> seen;
  seen.reserve(inst.edges.size());
  for (const Edge& e : inst.edges) {
    if (e.i < 0 || e.i >= inst.n_offline())
      add("reward (" + std::to_string(e.i) + "," + std::to_string(e.j) +
          "): unknown offline id " + std::to_string(e.i));
    if (e.j < 0 || e.j >= inst.n_online())
      add("reward (" + std::to_string(e.i) + "," + std::to_string(e.j) +
          "): unknown online id " + std::to_string(e.j));
    if (!(e.r >= 0))
      add("reward (" + std::to_string(e.i) + "," + std::to_string(e.j) +
          "): reward must be >= 0");
    seen.emplace_back(e.i, e.j);
  }
  std::sort(seen.begin(), seen.end());
  for (size_t k = 1; k < seen.size(); ++k)
    if (seen[k] == seen[k - 1])
      add("duplicate reward entry (" + std::to_string(seen[k].first) + "," +
          std::to_string(seen[k].second) + ")");
  return out;
}

namespace detail {

// Accepts numbers or decimal strings ("0.25") for rate-like JSON fields.
inline double json_number(const nlohmann::json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      size_t pos = 0;
      double d = std::stod(s, &pos);
      if (pos == s.size()) return d;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(what + ": cannot parse number from \"" + s + "\"");
  }
  throw std::invalid_argument(what + ": expected a number or decimal string");
}

inline Section section_from_string(const std::string& s) {
  if (s == "TOP") return Section::TOP;
  if (s == "BOT") return Section::BOT;
  if (s == "NONE" || s.empty()) return Section::NONE;
  throw std::invalid_argument("unknown section label \"" + s + "\"");
}

}  // namespace detail

// Parses an instance from its JSON object form. Ids may be arbitrary distinct
// integers; they are remapped to dense 0-based ids in order of appearance and
// the original ids are kept as names. Throws std::invalid_argument on
// malformed input (including duplicate (i,j) reward entries).
inline ProblemInstance instance_from_json(const nlohmann::json& js) {
  ProblemInstance inst;
  if (!js.is_object() || !js.contains("offline") || !js.contains("online"))
    throw std::invalid_argument("instance JSON must contain offline and online arrays");
  std::unordered_map<std::int64_t, int> off_ids, on_ids;
  for (const auto& v : js.at("offline")) {
    OfflineType t;
    std::int64_t raw = v.at("id").get<std::int64_t>();
    t.id = inst.n_offline();
    t.lambda = detail::json_number(v.at("lambda"), "offline lambda");
    t.mu = detail::json_number(v.at("mu"), "offline mu");
    t.section = detail::section_from_string(v.value("section", "NONE"));
    if (!off_ids.emplace(raw, t.id).second)
      throw std::invalid_argument("duplicate offline id " + std::to_string(raw));
    inst.offline.push_back(t);
    inst.offline_names.push_back(v.value("name", std::to_string(raw)));
  }
  for (const auto& v : js.at("online")) {
    OnlineType t;
    std::int64_t raw = v.at("id").get<std::int64_t>();
    t.id = inst.n_online();
    t.gamma = detail::json_number(v.at("gamma"), "online gamma");
    if (!on_ids.emplace(raw, t.id).second)
      throw std::invalid_argument("duplicate online id " + std::to_string(raw));
    inst.online.push_back(t);
    inst.online_names.push_back(v.value("name", std::to_string(raw)));
  }
  if (js.contains("rewards"))
    for (const auto& v : js.at("rewards")) {
      Edge e;
      std::int64_t ri = v.at("i").get<std::int64_t>(), rj = v.at("j").get<std::int64_t>();
      auto iti = off_ids.find(ri);
      auto itj = on_ids.find(rj);
      if (iti == off_ids.end())
        throw std::invalid_argument("reward (" + std::to_string(ri) + "," +
                                    std::to_string(rj) + "): unknown offline id");
      if (itj == on_ids.end())
        throw std::invalid_argument("reward (" + std::to_string(ri) + "," +
                                    std::to_string(rj) + "): unknown online id");
      e.i = iti->second;
      e.j = itj->second;
      e.r = detail::json_number(v.at("r"), "reward r");
      inst.edges.push_back(e);
    }
  auto violations = validate(inst);
  if (!violations.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  inst.finalize();
  return inst;
}

inline nlohmann::json instance_to_json(const ProblemInstance& inst) {
  nlohmann::json js;
  js["offline"] = nlohmann::json::array();
  for (int i = 0; i < inst.n_offline(); ++i) {
    const auto& o = inst.offline[i];
    nlohmann::json v{{"id", o.id}, {"lambda", o.lambda}, {"mu", o.mu},
                     {"section", to_string(o.section)}};
    if (!inst.offline_names.empty() && inst.offline_names[i] != std::to_string(i))
      v["name"] = inst.offline_names[i];
    js["offline"].push_back(v);
  }
  js["online"] = nlohmann::json::array();
  for (int j = 0; j < inst.n_online(); ++j) {
    const auto& o = inst.online[j];
    nlohmann::json v{{"id", o.id}, {"gamma", o.gamma}};
    if (!inst.online_names.empty() && inst.online_names[j] != std::to_string(j))
      v["name"] = inst.online_names[j];
    js["online"].push_back(v);
  }
  js["rewards"] = nlohmann::json::array();
  for (const Edge& e : inst.edges)
    js["rewards"].push_back({{"i", e.i}, {"j", e.j}, {"r", e.r}});
  return js;
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  nlohmann::json js;
  in >> js;
  return instance_from_json(js);
}

inline void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

// Splits offline type i into K copies with arrival rate lambda_i/K each, the
// same mu, and the same incident rewards; total arrival rate is conserved.
// Copy 0 keeps id i; copies 1..K-1 are appended with fresh ids.
inline ProblemInstance split_offline_type(const ProblemInstance& inst, int i, int K) {
  if (i < 0 || i >= inst.n_offline())
    throw std::invalid_argument("split_offline_type: unknown offline id " + std::to_string(i));
  if (K < 1) throw std::invalid_argument("split_offline_type: K must be >= 1");
  ProblemInstance out = inst;
  out.offline[i].lambda = inst.offline[i].lambda / K;
  if (K > 1) out.offline_names[i] = inst.offline_names[i] + "/0";
  for (int c = 1; c < K; ++c) {
    OfflineType t = out.offline[i];
    t.id = out.n_offline();
    out.offline.push_back(t);
    out.offline_names.push_back(inst.offline_names[i] + "/" + std::to_string(c));
    for (int k : inst.offline_adj(i))
      out.edges.push_back({t.id, inst.edges[k].j, inst.edges[k].r});
  }
  out.finalize();
  return out;
}

// Splits every offline type into a TOP copy and a BOT copy, halving its
// arrival rate; both copies keep the incident rewards. TOP copies occupy ids
// 0..n-1 (original order), BOT copies ids n..2n-1. Errors if any type already
// carries a section label.
inline ProblemInstance top_bot_split(const ProblemInstance& inst) {
  for (const auto& o : inst.offline)
    if (o.section != Section::NONE)
      throw std::invalid_argument("top_bot_split: instance already has TOP/BOT labels");
  ProblemInstance out;
  out.online = inst.online;
  out.online_names = inst.online_names;
  const int n = inst.n_offline();
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < n; ++i) {
      OfflineType t = inst.offline[i];
      t.id = pass * n + i;
      t.lambda = inst.offline[i].lambda / 2;
      t.section = pass == 0 ? Section::TOP : Section::BOT;
      out.offline.push_back(t);
      out.offline_names.push_back(inst.offline_names[i] + (pass == 0 ? ".top" : ".bot"));
      for (int k : inst.offline_adj(i))
        out.edges.push_back({t.id, inst.edges[k].j, inst.edges[k].r});
    }
  out.finalize();
  return out;
}

// One vertex of a general (non-bipartite) stationary matching instance.
struct GeneralVertex {
  int id = 0;
  double lambda = 0.0;
  double mu = 0.0;
};

// General instance with a symmetric reward map; entries may be given once per
// unordered pair or twice (then they must agree exactly).
struct GeneralInstance {
  std::vector<GeneralVertex> vertices;
  std::vector<Edge> rewards;  // (u, v, r), interpreted symmetrically
};

// Reduces a general instance to a bipartite one: each vertex v becomes an
// offline copy with arrival rate lambda_v/2 (same mu) and an online copy with
// gamma = lambda_v/2; each symmetric reward (u,v) becomes edges between
// opposite copies only (offline u -- online v and offline v -- online u).
inline ProblemInstance bipartite_reduction(const GeneralInstance& g) {
  const int n = static_cast<int>(g.vertices.size());
  for (int v = 0; v < n; ++v)
    if (g.vertices[v].id != v)
      throw std::invalid_argument("bipartite_reduction: vertex ids must be dense and 0-based");
  std::unordered_map<std::int64_t, double> sym;
  auto key = [](int a, int b) {
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (const Edge& e : g.rewards) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw std::invalid_argument("bipartite_reduction: reward references an unknown vertex");
    int a = std::min(e.i, e.j), b = std::max(e.i, e.j);
    auto it = sym.find(key(a, b));
    if (it != sym.end() && it->second != e.r)
      throw std::invalid_argument(
          "bipartite_reduction: asymmetric reward between vertices " + std::to_string(a) +
          " and " + std::to_string(b));
    sym.emplace(key(a, b), e.r);
  }
  ProblemInstance out;
  for (int v = 0; v < n; ++v) {
    out.offline.push_back({v, g.vertices[v].lambda / 2, g.vertices[v].mu, Section::NONE});
    out.online.push_back({v, g.vertices[v].lambda / 2});
    out.offline_names.push_back(std::to_string(g.vertices[v].id) + ".off");
    out.online_names.push_back(std::to_string(g.vertices[v].id) + ".on");
  }
  for (const auto& [k, r] : sym) {
    int a = static_cast<int>(k >> 32), b = static_cast<int>(k & 0xffffffff);
    out.edges.push_back({a, b, r});
    if (a != b) out.edges.push_back({b, a, r});
  }
  auto violations = validate(out);
  if (!violations.empty())
    throw std::invalid_argument("bipartite_reduction: invalid result: " + violations.front());
  out.finalize();
  return out;
}

}  // namespace sml
