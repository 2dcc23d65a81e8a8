#pragma once

// Planar-embedded Brauer trees: labelled vertices and edges together with a
// counterclockwise cyclic ordering of the edges at every vertex, plus the
// block metadata carried by the dataset (reality, conjugates, series tags,
// optional degree polynomials, Frobenius tokens).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "brauer/qpoly.hpp"

namespace brauer {

enum class VertexKind { Unipotent, Exceptional, NonUnipotent };

inline std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Unipotent: return "unip";
    case VertexKind::Exceptional: return "exc";
    case VertexKind::NonUnipotent: return "nonunip";
  }
  throw std::logic_error("bad vertex kind");
}

struct Vertex {
  std::string label;
  VertexKind kind = VertexKind::Unipotent;
  bool real = true;
  std::optional<std::string> conjugate;
  std::string series;
  std::optional<QPolynomial> degree;
  std::optional<std::string> frobenius;
};

struct Edge {
  std::string label;
  std::string v1, v2;
  bool cuspidal = false;

  const std::string& other(const std::string& v) const {
    if (v == v1) return v2;
    if (v == v2) return v1;
    throw std::invalid_argument("vertex " + v + " not an endpoint of edge " + label);
  }
  bool touches(const std::string& v) const { return v == v1 || v == v2; }
};

// Multiplicity is either symbolic (the shipped dataset, where it depends on
// the prime) or a concrete integer >= 1.
struct Multiplicity {
  std::optional<int> value;
  bool symbolic() const { return !value.has_value(); }
};

class BrauerTree {
 public:
  BrauerTree(std::string id, Multiplicity m, std::vector<Vertex> vertices,
             std::vector<Edge> edges, std::map<std::string, std::vector<std::string>> order)
      : id_(std::move(id)),
        multiplicity_(m),
        vertices_(std::move(vertices)),
        edges_(std::move(edges)),
        order_(std::move(order)) {
    index();
    validate();
  }

  const std::string& id() const { return id_; }
  const Multiplicity& multiplicity() const { return multiplicity_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Vertex& vertex(const std::string& label) const {
    auto it = vertex_index_.find(label);
    if (it == vertex_index_.end()) throw std::invalid_argument("unknown vertex: " + label);
    return vertices_[it->second];
  }
  const Edge& edge(const std::string& label) const {
    auto it = edge_index_.find(label);
    if (it == edge_index_.end()) throw std::invalid_argument("unknown edge: " + label);
    return edges_[it->second];
  }
  bool has_vertex(const std::string& label) const { return vertex_index_.count(label) > 0; }
  bool has_edge(const std::string& label) const { return edge_index_.count(label) > 0; }

  // Counterclockwise cyclic order of the edges at a vertex.
  const std::vector<std::string>& order_at(const std::string& vertex) const {
    auto it = order_.find(vertex);
    if (it == order_.end()) throw std::invalid_argument("unknown vertex: " + vertex);
    return it->second;
  }

  std::size_t degree_of(const std::string& vertex) const { return order_at(vertex).size(); }

  const std::string& successor(const std::string& vertex, const std::string& edge) const {
    const auto& cyc = order_at(vertex);
    for (std::size_t i = 0; i < cyc.size(); ++i)
      if (cyc[i] == edge) return cyc[(i + 1) % cyc.size()];
    throw std::invalid_argument("edge " + edge + " not incident to vertex " + vertex);
  }

  std::optional<std::string> exceptional_vertex() const {
    for (const auto& v : vertices_)
      if (v.kind == VertexKind::Exceptional) return v.label;
    return std::nullopt;
  }

  // Edge between two vertices, if present.
  std::optional<std::string> edge_between(const std::string& a, const std::string& b) const {
    for (const std::string& e : order_at(a))
      if (edge(e).other(a) == b) return e;
    return std::nullopt;
  }

  std::vector<std::string> leaves() const {
    std::vector<std::string> out;
    for (const auto& v : vertices_)
      if (degree_of(v.label) == 1) out.push_back(v.label);
    return out;
  }

  // Tree metric; vertices of a tree are joined by a unique path.
  std::vector<std::string> path(const std::string& from, const std::string& to) const {
    vertex(from);
    vertex(to);
    std::map<std::string, std::string> parent;
    std::vector<std::string> frontier{from};
    parent[from] = from;
    while (!frontier.empty() && !parent.count(to)) {
      std::vector<std::string> next;
      for (const auto& v : frontier)
        for (const auto& e : order_at(v)) {
          const std::string& w = edge(e).other(v);
          if (!parent.count(w)) {
            parent[w] = v;
            next.push_back(w);
          }
        }
      frontier = std::move(next);
    }
    std::vector<std::string> rev;
    for (std::string v = to;; v = parent[v]) {
      rev.push_back(v);
      if (v == from) break;
    }
    return {rev.rbegin(), rev.rend()};
  }

  std::size_t distance(const std::string& a, const std::string& b) const {
    return path(a, b).size() - 1;
  }

  // Canonical text form (see the parser for the grammar).  Vertices and
  // edges are emitted sorted by label and each ORDER line is rotated to
  // start at its lexicographically least edge, so serialization is a
  // fixed point of parse/serialize.
  std::string serialize() const;

  BrauerTree with_id(std::string id) const {
    BrauerTree t = *this;
    t.id_ = std::move(id);
    return t;
  }

  BrauerTree with_multiplicity(Multiplicity m) const {
    return BrauerTree(id_, m, vertices_, edges_, order_);
  }

 private:
  void index() {
    vertex_index_.clear();
    edge_index_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!vertex_index_.emplace(vertices_[i].label, i).second)
        throw std::invalid_argument("duplicate vertex label: " + vertices_[i].label);
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!edge_index_.emplace(edges_[i].label, i).second)
        throw std::invalid_argument("duplicate edge label: " + edges_[i].label);
    }
  }

  void validate() const {
    if (edges_.empty()) throw std::invalid_argument("a Brauer tree has at least one edge");
    if (edges_.size() + 1 != vertices_.size())
      throw std::invalid_argument("not a tree: |V| != |E| + 1");

    for (const auto& e : edges_) {
      if (e.v1 == e.v2) throw std::invalid_argument("loop edge: " + e.label);
      if (!vertex_index_.count(e.v1) || !vertex_index_.count(e.v2))
        throw std::invalid_argument("edge " + e.label + " references unknown vertex");
    }

    // Cyclic orders must list exactly the incident edges, once each.
    std::map<std::string, std::set<std::string>> incident;
    for (const auto& v : vertices_) incident[v.label];
    for (const auto& e : edges_) {
      incident[e.v1].insert(e.label);
      incident[e.v2].insert(e.label);
    }
    for (const auto& v : vertices_) {
      auto it = order_.find(v.label);
      if (it == order_.end())
        throw std::invalid_argument("order-incomplete: no ORDER line for vertex " + v.label);
      std::set<std::string> seen(it->second.begin(), it->second.end());
      if (seen.size() != it->second.size())
        throw std::invalid_argument("order-incomplete: repeated edge at vertex " + v.label);
      if (seen != incident[v.label])
        throw std::invalid_argument("order-incomplete: ORDER at " + v.label +
                                    " does not match incidences");
    }
    if (order_.size() != vertices_.size())
      throw std::invalid_argument("order-incomplete: ORDER line for unknown vertex");

    // Connectivity (acyclicity follows from the edge count).
    std::set<std::string> reached;
    std::vector<std::string> stack{vertices_.front().label};
    reached.insert(stack.front());
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      for (const auto& e : order_.at(v)) {
        const std::string& w = edge(e).other(v);
        if (reached.insert(w).second) stack.push_back(w);
      }
    }
    if (reached.size() != vertices_.size()) throw std::invalid_argument("tree is not connected");

    int exceptional = 0;
    for (const auto& v : vertices_) {
      if (v.kind == VertexKind::Exceptional) ++exceptional;
      bool self_conj = !v.conjugate || *v.conjugate == v.label;
      if (v.real != self_conj)
        throw std::invalid_argument("real flag inconsistent with conjugate at " + v.label);
      if (v.conjugate && !vertex_index_.count(*v.conjugate))
        throw std::invalid_argument("conjugate of " + v.label + " is not a vertex");
    }
    if (exceptional > 1) throw std::invalid_argument("two exceptional vertices");
    if (!multiplicity_.symbolic() && *multiplicity_.value == 1 && exceptional > 0)
      throw std::invalid_argument("multiplicity 1 forbids an exceptional vertex");
    if (!multiplicity_.symbolic() && *multiplicity_.value < 1)
      throw std::invalid_argument("multiplicity must be >= 1");
  }

  std::string id_;
  Multiplicity multiplicity_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::vector<std::string>> order_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> edge_index_;
};

// #unipotent vertices = #edges whenever the tree has exactly one
// non-unipotent vertex.
inline bool census_holds(const BrauerTree& t) {
  std::size_t unip = 0, nonunip = 0;
  for (const auto& v : t.vertices())
    v.kind == VertexKind::Unipotent ? ++unip : ++nonunip;
  if (nonunip != 1) return true;
  return unip == t.edges().size();
}

inline std::string BrauerTree::serialize() const {
  std::ostringstream os;
  os << "TREE " << id_ << "\n";
  os << "MULTIPLICITY " << (multiplicity_.symbolic() ? std::string("symbolic")
                                                     : std::to_string(*multiplicity_.value))
     << "\n";
  std::vector<const Vertex*> vs;
  for (const auto& v : vertices_) vs.push_back(&v);
  std::sort(vs.begin(), vs.end(),
            [](const Vertex* a, const Vertex* b) { return a->label < b->label; });
  for (const Vertex* v : vs) {
    os << "VERTEX " << v->label << " kind=" << to_string(v->kind) << " real=" << (v->real ? 1 : 0);
    if (v->conjugate) os << " conj=" << *v->conjugate;
    if (!v->series.empty()) os << " series=" << v->series;
    if (v->degree) os << " deg=" << v->degree->to_string();
    if (v->frobenius) os << " frob=" << *v->frobenius;
    os << "\n";
  }
  std::vector<const Edge*> es;
  for (const auto& e : edges_) es.push_back(&e);
  std::sort(es.begin(), es.end(), [](const Edge* a, const Edge* b) { return a->label < b->label; });
  for (const Edge* e : es) {
    std::string a = e->v1, b = e->v2;
    if (b < a) std::swap(a, b);
    os << "EDGE " << e->label << " " << a << " " << b;
    if (e->cuspidal) os << " cuspidal";
    os << "\n";
  }
  for (const Vertex* v : vs) {
    const auto& cyc = order_.at(v->label);
    std::size_t start =
        std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
    os << "ORDER " << v->label << ":";
    for (std::size_t i = 0; i < cyc.size(); ++i) os << " " << cyc[(i + start) % cyc.size()];
    os << "\n";
  }
  os << "END\n";
  return os.str();
}

// Line-based format:
//   TREE <id>
//   MULTIPLICITY symbolic | <int>
//   VERTEX <label> kind=<unip|exc|nonunip> real=<0|1> [conj=..] [series=..]
//          [deg=<poly>] [frob=..]
//   EDGE <label> <v1> <v2> [cuspidal]
//   ORDER <vertex>: <edge> <edge> ...     (counterclockwise)
//   END
// '#' starts a comment; blank lines are ignored.
inline BrauerTree parse_tree(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string id;
  std::optional<Multiplicity> mult;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> order;
  bool ended = false;

  auto fail = [](const std::string& msg) -> void { throw std::invalid_argument(msg); };

  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (ended) fail("content after END");
    if (word == "TREE") {
      if (!(ls >> id)) fail("TREE line without id");
    } else if (word == "MULTIPLICITY") {
      std::string m;
      if (!(ls >> m)) fail("MULTIPLICITY line without value");
      if (m == "symbolic")
        mult = Multiplicity{};
      else
        mult = Multiplicity{std::stoi(m)};
    } else if (word == "VERTEX") {
      Vertex v;
      if (!(ls >> v.label)) fail("VERTEX line without label");
      std::string kv;
      bool have_kind = false, have_real = false;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail("bad vertex attribute: " + kv);
        std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "kind") {
          have_kind = true;
          if (value == "unip")
            v.kind = VertexKind::Unipotent;
          else if (value == "exc")
            v.kind = VertexKind::Exceptional;
          else if (value == "nonunip")
            v.kind = VertexKind::NonUnipotent;
          else
            fail("bad vertex kind: " + value);
        } else if (key == "real") {
          have_real = true;
          v.real = value == "1";
        } else if (key == "conj") {
          v.conjugate = value;
        } else if (key == "series") {
          v.series = value;
        } else if (key == "deg") {
          v.degree = parse_qpoly(value);
        } else if (key == "frob") {
          v.frobenius = value;
        } else {
          fail("unknown vertex attribute: " + key);
        }
      }
      if (!have_kind || !have_real) fail("vertex " + v.label + " missing kind or real");
      vertices.push_back(std::move(v));
    } else if (word == "EDGE") {
      Edge e;
      if (!(ls >> e.label >> e.v1 >> e.v2)) fail("bad EDGE line");
      std::string extra;
      while (ls >> extra) {
        if (extra == "cuspidal")
          e.cuspidal = true;
        else
          fail("unknown edge attribute: " + extra);
      }
      edges.push_back(std::move(e));
    } else if (word == "ORDER") {
      std::string v;
      if (!(ls >> v)) fail("bad ORDER line");
      if (v.back() == ':')
        v.pop_back();
      else {
        std::string colon;
        if (!(ls >> colon) || colon != ":") fail("ORDER line missing ':'");
      }
      if (order.count(v)) fail("duplicate ORDER line for " + v);
      std::vector<std::string> cyc;
      std::string e;
      while (ls >> e) cyc.push_back(e);
      order[v] = std::move(cyc);
    } else if (word == "END") {
      ended = true;
    } else {
      fail("unknown directive: " + word);
    }
  }
  if (id.empty()) fail("missing TREE line");
  if (!mult) fail("missing MULTIPLICITY line");
  if (!ended) fail("missing END line");
  return BrauerTree(id, *mult, std::move(vertices), std::move(edges), std::move(order));
}

}  // namespace brauer
