#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fin2/nnimat.hpp"
#include "fin2/twocat.hpp"

namespace fin2 {

struct Arrow {
  std::string name;
  std::string src;
  std::string tgt;
};

/// A path is a sequence of arrow indices in traversal order: consecutive
/// arrows satisfy tgt(p[k]) == src(p[k+1]). Length-0 paths are vertex
/// idempotents and carry their vertex explicitly.
struct Path {
  std::size_t start = 0;  // vertex index
  std::size_t end = 0;    // vertex index
  std::vector<std::size_t> arrows;
};

/// Basic finite-dimensional algebra k Q / I with I generated by paths.
/// The basis is all paths containing no relation as a contiguous subpath.
class QuiverAlgebra {
 public:
  QuiverAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                std::vector<std::vector<std::string>> relations);

  /// Relations by arrow name, exactly as given.
  const std::vector<std::vector<std::string>>& relation_names() const { return relation_names_; }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t vertex_index(const std::string& name) const;
  std::size_t arrow_src(std::size_t a) const { return arrow_src_[a]; }
  std::size_t arrow_tgt(std::size_t a) const { return arrow_tgt_[a]; }
  /// Relations as arrow-index sequences, redundant ones (containing another
  /// relation) removed, sorted.
  const std::vector<std::vector<std::size_t>>& relations() const { return relations_; }
  const std::vector<Path>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> arrow_src_;
  std::vector<std::size_t> arrow_tgt_;
  std::vector<std::vector<std::string>> relation_names_;
  std::vector<std::vector<std::size_t>> relations_;
  std::vector<Path> basis_;
};

/// Upper bound on the size of the basis before load_quiver gives up.
inline constexpr std::size_t kMaxBasisSize = 1'000'000;

QuiverAlgebra load_quiver(const std::string& text);
QuiverAlgebra quiver_from_json(const nlohmann::json& j);
nlohmann::json quiver_to_json(const QuiverAlgebra& a);

/// D(b, a) = dim e_b A e_a = number of basis paths from a to b.
NNIMatrix dims_matrix(const QuiverAlgebra& a);

/// Connected components (undirected arrow connectivity), each listing vertex
/// indices ascending; components ordered by their first vertex.
std::vector<std::vector<std::size_t>> component_partition(const QuiverAlgebra& a);

/// The sub-algebra on one component (vertices and arrows restricted).
QuiverAlgebra restrict_to(const QuiverAlgebra& a, const std::vector<std::size_t>& vertices);

/// Direct sum of algebras. Vertex and arrow names get a "<part>." prefix so
/// they stay unique.
QuiverAlgebra algebra_direct_sum(const std::vector<QuiverAlgebra>& parts);

/// The one-vertex algebra k.
QuiverAlgebra ground_field();

/// Objects "1".."k" (components), 1-morphisms P[b,a] : comp(a) -> comp(b) for
/// vertex pairs, plus identities. P[b,a] ∘ P[d,c] = dim e_a A e_d · P[b,c].
/// A component that is just k has its identity identified with P[v,v].
TwoCatPresentation build_projfun_2cat(const QuiverAlgebra& a);

/// Some vertex pair (a, b) with dim e_b A e_a == 1.
std::optional<std::pair<std::size_t, std::size_t>> dim_one_pair(const QuiverAlgebra& a);
bool has_dim_one_pair(const QuiverAlgebra& a);

/// Canonical encoding of a connected algebra up to relabeling of vertices and
/// arrows (minimum over all relabelings; exhaustive, at most 8 vertices).
std::string canonical_form(const QuiverAlgebra& a);

inline constexpr std::size_t kMaxCanonicalVertices = 8;

struct MoritaNormalForm {
  std::vector<std::string> core;  // canonical forms of the components of dimension > 1, sorted
  int epsilon = 0;                // 1 iff exactly one copy of k cannot be removed

  friend bool operator==(const MoritaNormalForm&, const MoritaNormalForm&) = default;
};

MoritaNormalForm morita_normal_form(const QuiverAlgebra& a);
bool morita_equivalent(const QuiverAlgebra& a, const QuiverAlgebra& b);

}  // namespace fin2
