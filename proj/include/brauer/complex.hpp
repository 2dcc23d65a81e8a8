#pragma once

// Bounded complexes of projectives over a tree algebra, their homology over
// the rationals, and the canonical walk-path complexes with their torsion
// predictions.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "brauer/algebra.hpp"

namespace brauer {

// Degrees increase along the differentials: d_i : C^i -> C^{i+1}.
class ProjComplex {
 public:
  ProjComplex(const TreeAlgebra& a, std::string id,
              std::map<int, std::vector<std::string>> terms,
              std::map<int, Matrix> custom_diffs = {})
      : algebra_(&a), id_(std::move(id)), terms_(std::move(terms)) {
    for (const auto& [deg, blocks] : terms_) {
      std::vector<StringModule> parts;
      for (const auto& b : blocks) parts.push_back(projective_module(a, b));
      modules_.emplace(deg, detail::direct_sum(a, parts));
    }
    for (const auto& [deg, blocks] : terms_) {
      if (!terms_.count(deg + 1)) continue;
      auto it = custom_diffs.find(deg);
      diffs_.emplace(deg, it != custom_diffs.end() ? it->second : canonical_differential(deg));
    }
    check_complex();
  }

  const TreeAlgebra& algebra() const { return *algebra_; }
  const std::string& id() const { return id_; }
  const std::map<int, std::vector<std::string>>& terms() const { return terms_; }
  const StringModule& term_module(int deg) const { return modules_.at(deg); }
  const Matrix& differential(int deg) const { return diffs_.at(deg); }

  int lowest_degree() const { return terms_.begin()->first; }
  int highest_degree() const { return terms_.rbegin()->first; }

 private:
  // Blockwise canonical generators: the canonical map between adjacent
  // edges, the socle map between equal ones, zero otherwise.
  Matrix canonical_differential(int deg) const {
    const auto& src_blocks = terms_.at(deg);
    const auto& tgt_blocks = terms_.at(deg + 1);
    const StringModule& src = modules_.at(deg);
    const StringModule& tgt = modules_.at(deg + 1);
    Matrix d(tgt.dim(), src.dim());
    std::size_t col = 0;
    for (const auto& sb : src_blocks) {
      StringModule ps = projective_module(*algebra_, sb);
      std::size_t row = 0;
      for (const auto& tb : tgt_blocks) {
        StringModule pt = projective_module(*algebra_, tb);
        bool adjacent = sb == tb;
        if (!adjacent) {
          const Edge& es = algebra_->tree().edge(sb);
          const Edge& et = algebra_->tree().edge(tb);
          adjacent = et.touches(es.v1) || et.touches(es.v2);
        }
        if (adjacent) {
          Matrix block = canonical_map_matrix(*algebra_, sb, ps, tb, pt);
          for (std::size_t i = 0; i < pt.dim(); ++i)
            for (std::size_t j = 0; j < ps.dim(); ++j)
              if (block(i, j) != 0) d(row + i, col + j) = block(i, j);
        }
        row += pt.dim();
      }
      col += ps.dim();
    }
    return d;
  }

  void check_complex() const {
    for (const auto& [deg, d] : diffs_) {
      // module map check
      const StringModule& src = modules_.at(deg);
      const StringModule& tgt = modules_.at(deg + 1);
      for (const auto& v : algebra_->arrow_vertices())
        if (!(tgt.action(v) * d == d * src.action(v)))
          throw std::invalid_argument("differential at degree " + std::to_string(deg) +
                                      " is not a module map");
      auto next = diffs_.find(deg + 1);
      if (next != diffs_.end() && !(next->second * d).is_zero())
        throw std::invalid_argument("non-complex input: d o d != 0 at degree " +
                                    std::to_string(deg));
    }
  }

  const TreeAlgebra* algebra_;
  std::string id_;
  std::map<int, std::vector<std::string>> terms_;
  std::map<int, StringModule> modules_;
  std::map<int, Matrix> diffs_;
};

struct HomologyDegree {
  std::size_t dim = 0;
  std::map<std::string, int> factors;
};

// Exact homology over the rationals; per degree the dimension and the
// composition-factor multiset.  Kernels and images are submodules, so the
// factor counts are tag-block dimension differences.
inline std::map<int, HomologyDegree> homology(const ProjComplex& c) {
  std::map<int, HomologyDegree> out;
  for (const auto& [deg, blocks] : c.terms()) {
    const StringModule& term = c.term_module(deg);
    bool has_out = c.terms().count(deg + 1) > 0;
    bool has_in = c.terms().count(deg - 1) > 0;
    HomologyDegree h;
    for (const auto& edge : c.algebra().edge_labels()) {
      auto rows = term.indices_with_tag(edge);
      if (rows.empty()) continue;
      std::size_t ker_dim = rows.size();
      if (has_out) {
        const Matrix& d = c.differential(deg);
        const StringModule& tgt = c.term_module(deg + 1);
        auto trows = tgt.indices_with_tag(edge);
        Matrix block(trows.size(), rows.size());
        for (std::size_t i = 0; i < trows.size(); ++i)
          for (std::size_t j = 0; j < rows.size(); ++j) block(i, j) = d(trows[i], rows[j]);
        ker_dim = rows.size() - rank(block);
      }
      std::size_t im_dim = 0;
      if (has_in) {
        const Matrix& d = c.differential(deg - 1);
        const StringModule& srcm = c.term_module(deg - 1);
        auto scols = srcm.indices_with_tag(edge);
        Matrix block(rows.size(), scols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < scols.size(); ++j) block(i, j) = d(rows[i], scols[j]);
        im_dim = rank(block);
      }
      if (ker_dim > im_dim) {
        h.factors[edge] = static_cast<int>(ker_dim - im_dim);
        h.dim += ker_dim - im_dim;
      }
    }
    if (h.dim > 0) out.emplace(deg, std::move(h));
  }
  return out;
}

// Canonical complex over a walk path.  The path S_0 ... S_{t-1} runs from a
// leaf V_0 up the tree; S_t is the edge from the far endpoint V_t to the
// extra vertex.  The complex places P_{S_t} in the base degree and P_{S_0}
// in degree base+t, with canonical differentials.  For 0 <= i <= t-1 the
// predicted torsion factors in degree base+t-i are the edges passed when
// walking the cyclic successor at V_{i+1} from S_i to S_{i+1}.
struct WalkPathComplex {
  ProjComplex complex;
  std::vector<std::string> path_vertices;   // V_0 ... V_t
  std::string vprime;                       // V'
  std::string new_edge;                     // S_t
  std::map<int, std::vector<std::string>> torsion;  // by i in 0..t-1
};

inline WalkPathComplex lemma_complex(const TreeAlgebra& a,
                                     const std::vector<std::string>& path,
                                     const std::string& vprime, int base_degree,
                                     const std::string& id = "walk-path") {
  if (path.empty()) throw std::invalid_argument("empty walk path");
  const BrauerTree& t = a.tree();

  // Orient the path: V_0 is a leaf endpoint of S_0.
  const Edge& s0 = t.edge(path.front());
  std::string v0;
  for (const std::string& cand : {s0.v1, s0.v2}) {
    bool inner = path.size() > 1 && t.edge(path[1]).touches(cand);
    if (!inner && t.degree_of(cand) == 1) v0 = cand;
  }
  if (v0.empty()) throw std::invalid_argument("walk path does not end at a leaf");
  std::vector<std::string> vertices{v0};
  for (const auto& e : path) {
    const Edge& ed = t.edge(e);
    if (!ed.touches(vertices.back()))
      throw std::invalid_argument("walk path is not a connected line at edge " + e);
    vertices.push_back(ed.other(vertices.back()));
  }

  const std::string& vt = vertices.back();
  auto new_edge = t.edge_between(vt, vprime);
  if (!new_edge)
    throw std::invalid_argument("certificate-requires-edge: no edge between " + vt + " and " +
                                vprime);

  const int tlen = static_cast<int>(path.size());
  std::map<int, std::vector<std::string>> terms;
  terms[base_degree] = {*new_edge};
  for (int i = 0; i < tlen; ++i) terms[base_degree + tlen - i] = {path[i]};

  // Torsion predictions at the shared vertices.
  std::map<int, std::vector<std::string>> torsion;
  std::vector<std::string> full_path = path;
  full_path.push_back(*new_edge);
  for (int i = 0; i + 1 <= tlen; ++i) {
    const std::string& shared = vertices[i + 1];
    std::vector<std::string> between;
    if (a.has_arrows(shared)) {
      std::string cur = t.successor(shared, full_path[i]);
      while (cur != full_path[i + 1]) {
        between.push_back(cur);
        cur = t.successor(shared, cur);
      }
    }
    if (!between.empty()) torsion[i] = std::move(between);
  }

  return WalkPathComplex{ProjComplex(a, id, std::move(terms)), std::move(vertices), vprime,
                         *new_edge, std::move(torsion)};
}

// Expected field-level homology of a walk-path complex under the
// universal-coefficient bookkeeping: degree base+t-i collects torsion(i)
// and torsion(i-1), the base degree adds the reduction of the V' lattice,
// and the top degree adds the reduction of the V_0 lattice.
inline std::map<int, std::map<std::string, int>> predicted_homology(const TreeAlgebra& a,
                                                                    const WalkPathComplex& w) {
  const BrauerTree& t = a.tree();
  int base = w.complex.lowest_degree();
  int tlen = w.complex.highest_degree() - base;
  std::map<int, std::map<std::string, int>> pred;
  auto add_torsion = [&](int deg, int i) {
    auto it = w.torsion.find(i);
    if (it == w.torsion.end()) return;
    for (const auto& e : it->second) ++pred[deg][e];
  };
  for (int i = 0; i <= tlen - 1; ++i) {
    add_torsion(base + tlen - i, i);
    add_torsion(base + tlen - i - 1, i);
  }
  // free parts at the two ends reduce to the incidence factors
  for (const auto& e : t.order_at(w.path_vertices.front())) ++pred[base + tlen][e];
  for (const auto& e : t.order_at(w.vprime)) ++pred[base][e];
  return pred;
}

// Text format:
//   COMPLEX <id> ON <tree-id> M <int>
//   DEG <int>: <proj> <proj> ...
//   DIFF <int>: canonical | matrix <r> <c> <entries...>
inline ProjComplex parse_complex(const TreeAlgebra& a, const std::string& text,
                                 std::string* tree_id_out = nullptr, int* m_out = nullptr) {
  std::istringstream in(text);
  std::string line, id, tree_id;
  int m = 0;
  std::map<int, std::vector<std::string>> terms;
  std::map<int, Matrix> diffs;
  bool header = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "COMPLEX") {
      std::string on, mkw;
      if (!(ls >> id >> on >> tree_id >> mkw >> m) || on != "ON" || mkw != "M")
        throw std::invalid_argument("bad COMPLEX header");
      header = true;
    } else if (word == "DEG") {
      std::string degtok;
      if (!(ls >> degtok) || degtok.back() != ':')
        throw std::invalid_argument("bad DEG line");
      int deg = std::stoi(degtok.substr(0, degtok.size() - 1));
      std::vector<std::string> blocks;
      std::string b;
      while (ls >> b) blocks.push_back(b);
      terms[deg] = std::move(blocks);
    } else if (word == "DIFF") {
      std::string degtok, kind;
      if (!(ls >> degtok) || degtok.back() != ':') throw std::invalid_argument("bad DIFF line");
      int deg = std::stoi(degtok.substr(0, degtok.size() - 1));
      if (!(ls >> kind)) throw std::invalid_argument("bad DIFF line");
      if (kind == "canonical") continue;
      if (kind != "matrix") throw std::invalid_argument("bad DIFF kind: " + kind);
      std::size_t r, c;
      if (!(ls >> r >> c)) throw std::invalid_argument("bad DIFF matrix shape");
      Matrix d(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          long long x;
          if (!(ls >> x)) throw std::invalid_argument("bad DIFF matrix entries");
          d(i, j) = x;
        }
      diffs.emplace(deg, std::move(d));
    } else {
      throw std::invalid_argument("unknown complex directive: " + word);
    }
  }
  if (!header) throw std::invalid_argument("missing COMPLEX header");
  if (tree_id_out) *tree_id_out = tree_id;
  if (m_out) *m_out = m;
  return ProjComplex(a, id, std::move(terms), std::move(diffs));
}

inline std::pair<std::string, int> complex_header(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word, id, on, tree_id, mkw;
    int m;
    if (ls >> word && word == "COMPLEX" && ls >> id >> on >> tree_id >> mkw >> m && on == "ON" &&
        mkw == "M")
      return {tree_id, m};
  }
  throw std::invalid_argument("missing COMPLEX header");
}

}  // namespace brauer
