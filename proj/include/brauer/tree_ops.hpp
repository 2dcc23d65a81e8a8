#pragma once

// Operations on planar-embedded trees: isomorphism testing, the folding
// construction and its quotient, real stems, relabelling.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "brauer/tree.hpp"

namespace brauer {

struct IsoFlags {
  bool respect_exceptional = true;
  bool respect_kind = false;
  bool respect_series = false;
  bool respect_labels = false;
};

using VertexMap = std::map<std::string, std::string>;

namespace detail {

inline bool vertex_compatible(const Vertex& a, const Vertex& b, const IsoFlags& f) {
  if (f.respect_labels && a.label != b.label) return false;
  if (f.respect_exceptional &&
      (a.kind == VertexKind::Exceptional) != (b.kind == VertexKind::Exceptional))
    return false;
  if (f.respect_kind && a.kind != b.kind) return false;
  if (f.respect_series && a.series != b.series) return false;
  return true;
}

// Extends the seed pair (a -> b, entry edge ea -> eb) over the whole tree,
// aligning the cyclic orders.  Entry edges may be empty at the root, in
// which case `rot` selects the rotation tried at the root.
inline std::optional<VertexMap> grow_iso(const BrauerTree& t1, const BrauerTree& t2,
                                         const std::string& root1, const std::string& root2,
                                         std::size_t rot, const IsoFlags& flags) {
  VertexMap vmap;
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> stack;
  // (vertex1, vertex2, entry edge1, entry edge2)
  vmap[root1] = root2;
  stack.emplace_back(root1, root2, "", "");
  bool first = true;
  while (!stack.empty()) {
    auto [v1, v2, e1, e2] = stack.back();
    stack.pop_back();
    if (!vertex_compatible(t1.vertex(v1), t2.vertex(v2), flags)) return std::nullopt;
    const auto& cyc1 = t1.order_at(v1);
    const auto& cyc2 = t2.order_at(v2);
    if (cyc1.size() != cyc2.size()) return std::nullopt;
    std::size_t i1 = 0, i2 = 0;
    if (first) {
      first = false;
      i2 = rot % std::max<std::size_t>(cyc2.size(), 1);
    } else {
      while (cyc1[i1] != e1) ++i1;
      while (cyc2[i2] != e2) ++i2;
    }
    for (std::size_t k = 0; k < cyc1.size(); ++k) {
      const std::string& f1 = cyc1[(i1 + k) % cyc1.size()];
      const std::string& f2 = cyc2[(i2 + k) % cyc2.size()];
      const std::string& w1 = t1.edge(f1).other(v1);
      const std::string& w2 = t2.edge(f2).other(v2);
      auto it = vmap.find(w1);
      if (it != vmap.end()) {
        if (it->second != w2) return std::nullopt;
        continue;  // entry edge, already matched from the other side
      }
      vmap[w1] = w2;
      stack.emplace_back(w1, w2, f1, f2);
    }
  }
  if (vmap.size() != t1.vertices().size()) return std::nullopt;
  return vmap;
}

}  // namespace detail

// All planar isomorphisms T1 -> T2 honouring the flags, each preserving
// incidence and every counterclockwise cyclic order.
inline std::vector<VertexMap> planar_isos(const BrauerTree& t1, const BrauerTree& t2,
                                          const IsoFlags& flags = {}) {
  std::vector<VertexMap> found;
  if (t1.vertices().size() != t2.vertices().size() || t1.edges().size() != t2.edges().size())
    return found;
  std::string root1 = t1.vertices().front().label;
  for (const auto& v : t1.vertices())
    if (v.label < root1) root1 = v.label;
  std::vector<std::string> candidates;
  for (const auto& v : t2.vertices()) candidates.push_back(v.label);
  std::sort(candidates.begin(), candidates.end());
  for (const auto& root2 : candidates) {
    if (t1.degree_of(root1) != t2.degree_of(root2)) continue;
    for (std::size_t rot = 0; rot < t2.degree_of(root2); ++rot) {
      auto iso = detail::grow_iso(t1, t2, root1, root2, rot, flags);
      if (iso && std::find(found.begin(), found.end(), *iso) == found.end())
        found.push_back(std::move(*iso));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

// Deterministic: the lexicographically least bijection, or nothing.
inline std::optional<VertexMap> planar_iso(const BrauerTree& t1, const BrauerTree& t2,
                                           const IsoFlags& flags = {}) {
  auto all = planar_isos(t1, t2, flags);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline std::string folded_label(const std::string& base, int i) {
  return "(" + base + "," + std::to_string(i) + ")";
}

// Splits a label of the shape (<base>,<i>); nothing when the label is not
// of folded shape.
inline std::optional<std::pair<std::string, int>> split_folded_label(const std::string& label) {
  if (label.size() < 4 || label.front() != '(' || label.back() != ')') return std::nullopt;
  auto comma = label.rfind(',');
  if (comma == std::string::npos || comma < 1) return std::nullopt;
  std::string idx = label.substr(comma + 1, label.size() - comma - 2);
  if (idx.empty()) return std::nullopt;
  for (char c : idx)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::make_pair(label.substr(1, comma - 1), std::stoi(idx));
}

// The covering tree with d copies of everything outside the exceptional
// vertex.  The cyclic order at the merged vertex interleaves the copies,
// (l1,0),(l2,0),...,(lr,0),(l1,1),...: this is the unique arrangement fixed
// by the deck transformation (v,i) -> (v,i+1), which must be a planar
// automorphism.
inline BrauerTree fold(const BrauerTree& t, int d) {
  if (t.multiplicity().symbolic())
    throw std::invalid_argument("fold requires a concrete multiplicity");
  int m = *t.multiplicity().value;
  auto exc = t.exceptional_vertex();
  if (!exc) throw std::invalid_argument("fold requires an exceptional vertex");
  if (d <= 1) throw std::invalid_argument("fold requires d > 1");
  if (m % d != 0) throw std::invalid_argument("d does not divide m");

  int new_m = m / d;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> order;

  Vertex center = t.vertex(*exc);
  center.kind = new_m > 1 ? VertexKind::Exceptional : VertexKind::NonUnipotent;
  vertices.push_back(center);

  for (int i = 0; i < d; ++i) {
    for (const auto& v : t.vertices()) {
      if (v.label == *exc) continue;
      Vertex copy = v;
      copy.label = folded_label(v.label, i);
      copy.conjugate.reset();
      copy.real = true;
      vertices.push_back(std::move(copy));
    }
    for (const auto& e : t.edges()) {
      Edge copy = e;
      copy.label = folded_label(e.label, i);
      copy.v1 = e.v1 == *exc ? *exc : folded_label(e.v1, i);
      copy.v2 = e.v2 == *exc ? *exc : folded_label(e.v2, i);
      edges.push_back(std::move(copy));
    }
  }

  std::vector<std::string> center_order;
  for (int i = 0; i < d; ++i)
    for (const auto& e : t.order_at(*exc)) center_order.push_back(folded_label(e, i));
  order[*exc] = std::move(center_order);
  for (int i = 0; i < d; ++i)
    for (const auto& v : t.vertices()) {
      if (v.label == *exc) continue;
      std::vector<std::string> cyc;
      for (const auto& e : t.order_at(v.label)) cyc.push_back(folded_label(e, i));
      order[folded_label(v.label, i)] = std::move(cyc);
    }

  return BrauerTree(t.id() + "_fold" + std::to_string(d), Multiplicity{new_m},
                    std::move(vertices), std::move(edges), std::move(order));
}

namespace detail {

// The merged vertex of a folded tree: the unique vertex whose label does not
// carry the (.,i) shape.
inline std::string folded_center(const BrauerTree& t) {
  std::optional<std::string> center;
  for (const auto& v : t.vertices()) {
    if (!split_folded_label(v.label)) {
      if (center) throw std::invalid_argument("labels not of folded shape: two centers");
      center = v.label;
    }
  }
  if (!center) throw std::invalid_argument("labels not of folded shape: no center");
  return *center;
}

}  // namespace detail

// The deck transformation (v,i) -> (v,i+1 mod d) of a folded tree, as a
// vertex permutation.  Verified to be a planar automorphism.
inline VertexMap fold_automorphism(const BrauerTree& t, int d) {
  if (d <= 1) throw std::invalid_argument("fold automorphism requires d > 1");
  std::string center = detail::folded_center(t);
  VertexMap sigma;
  sigma[center] = center;
  for (const auto& v : t.vertices()) {
    if (v.label == center) continue;
    auto parts = split_folded_label(v.label);
    if (!parts || parts->second >= d)
      throw std::invalid_argument("labels not of folded shape: " + v.label);
    sigma[v.label] = folded_label(parts->first, (parts->second + 1) % d);
  }
  // Incidence and all cyclic orders must be preserved.
  auto edge_image = [&](const std::string& e) -> std::string {
    const Edge& ed = t.edge(e);
    const std::string &a = sigma.at(ed.v1), &b = sigma.at(ed.v2);
    for (const auto& f : t.order_at(a))
      if (t.edge(f).touches(b)) return f;
    throw std::invalid_argument("automorphism does not preserve incidence at edge " + e);
  };
  for (const auto& v : t.vertices()) {
    const auto& cyc = t.order_at(v.label);
    const auto& img = t.order_at(sigma.at(v.label));
    if (cyc.size() != img.size())
      throw std::invalid_argument("automorphism does not preserve degrees");
    if (cyc.empty()) continue;
    std::string first = edge_image(cyc[0]);
    std::size_t shift = 0;
    while (shift < img.size() && img[shift] != first) ++shift;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      if (edge_image(cyc[k]) != img[(shift + k) % img.size()])
        throw std::invalid_argument("fold automorphism is not planar at vertex " + v.label);
  }
  return sigma;
}

// Collapses the deck-transformation orbits of a folded tree; inverse to fold
// up to planar isomorphism.
inline BrauerTree quotient(const BrauerTree& t, int d) {
  if (t.multiplicity().symbolic())
    throw std::invalid_argument("quotient requires a concrete multiplicity");
  fold_automorphism(t, d);  // validates the free action off the center
  std::string center = detail::folded_center(t);

  int new_m = *t.multiplicity().value * d;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> order;

  Vertex center_v = t.vertex(center);
  center_v.kind = new_m > 1 ? VertexKind::Exceptional : center_v.kind;
  vertices.push_back(center_v);

  std::set<std::string> seen;
  for (const auto& v : t.vertices()) {
    if (v.label == center) continue;
    auto parts = *split_folded_label(v.label);
    if (parts.second != 0) continue;
    Vertex base = v;
    base.label = parts.first;
    vertices.push_back(std::move(base));
  }
  for (const auto& e : t.edges()) {
    auto parts = split_folded_label(e.label);
    if (!parts) throw std::invalid_argument("edge label not of folded shape: " + e.label);
    if (parts->second != 0) continue;
    Edge base = e;
    base.label = parts->first;
    auto strip = [&](const std::string& v) {
      if (v == center) return v;
      return split_folded_label(v)->first;
    };
    base.v1 = strip(e.v1);
    base.v2 = strip(e.v2);
    edges.push_back(std::move(base));
  }

  // Induced cyclic order at the center: the orbit walk visits the base
  // edges in blocks of size degree/d.
  {
    const auto& cyc = t.order_at(center);
    if (cyc.size() % d != 0) throw std::invalid_argument("center degree not divisible by d");
    std::size_t r = cyc.size() / d;
    std::vector<std::string> base;
    for (std::size_t k = 0; k < r; ++k) base.push_back(split_folded_label(cyc[k])->first);
    order[center] = std::move(base);
  }
  for (const auto& v : t.vertices()) {
    if (v.label == center) continue;
    auto parts = *split_folded_label(v.label);
    if (parts.second != 0) continue;
    std::vector<std::string> cyc;
    for (const auto& e : t.order_at(v.label)) cyc.push_back(split_folded_label(e)->first);
    order[parts.first] = std::move(cyc);
  }

  std::string id = t.id();
  auto suffix = id.rfind("_fold");
  if (suffix != std::string::npos) id.erase(suffix);
  return BrauerTree(id, Multiplicity{new_m}, std::move(vertices), std::move(edges),
                    std::move(order));
}

// The full subgraph on the real vertices plus the non-unipotent vertex,
// which must be a path; returned in path order, deterministically from its
// lexicographically smaller endpoint.
inline std::vector<std::string> real_stem(const BrauerTree& t) {
  std::set<std::string> stem;
  for (const auto& v : t.vertices())
    if (v.real || v.kind != VertexKind::Unipotent) stem.insert(v.label);
  if (stem.empty()) throw std::invalid_argument("real-stem-not-a-line: no real vertices");

  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& v : stem) adj[v];
  for (const auto& e : t.edges())
    if (stem.count(e.v1) && stem.count(e.v2)) {
      adj[e.v1].push_back(e.v2);
      adj[e.v2].push_back(e.v1);
    }
  std::vector<std::string> ends;
  for (const auto& [v, nb] : adj) {
    if (nb.size() > 2) throw std::invalid_argument("real-stem-not-a-line: branch at " + v);
    if (nb.size() <= 1) ends.push_back(v);
  }
  if (stem.size() == 1) return {*stem.begin()};
  if (ends.size() != 2) throw std::invalid_argument("real-stem-not-a-line: disconnected stem");
  std::sort(ends.begin(), ends.end());
  std::vector<std::string> path{ends.front()};
  std::string prev;
  while (path.back() != ends.back()) {
    const auto& nb = adj[path.back()];
    std::string next;
    for (const auto& w : nb)
      if (w != prev) next = w;
    if (next.empty()) throw std::invalid_argument("real-stem-not-a-line: disconnected stem");
    prev = path.back();
    path.push_back(next);
  }
  if (path.size() != stem.size())
    throw std::invalid_argument("real-stem-not-a-line: disconnected stem");
  return path;
}

// Injective relabelling of vertices (labels absent from the map are kept).
inline BrauerTree relabel(const BrauerTree& t, const VertexMap& map,
                          const std::string& new_id) {
  auto rename = [&](const std::string& label) {
    auto it = map.find(label);
    return it == map.end() ? label : it->second;
  };
  std::set<std::string> images;
  for (const auto& v : t.vertices())
    if (!images.insert(rename(v.label)).second)
      throw std::invalid_argument("relabel map is not injective");

  std::vector<Vertex> vertices;
  for (const auto& v : t.vertices()) {
    Vertex copy = v;
    copy.label = rename(v.label);
    if (copy.conjugate) copy.conjugate = rename(*copy.conjugate);
    vertices.push_back(std::move(copy));
  }
  std::vector<Edge> edges;
  for (const auto& e : t.edges()) {
    Edge copy = e;
    copy.v1 = rename(e.v1);
    copy.v2 = rename(e.v2);
    edges.push_back(std::move(copy));
  }
  std::map<std::string, std::vector<std::string>> order;
  for (const auto& v : t.vertices()) order[rename(v.label)] = t.order_at(v.label);
  return BrauerTree(new_id, t.multiplicity(), std::move(vertices), std::move(edges),
                    std::move(order));
}

}  // namespace brauer
