#include "fin2/projfun.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fin2 {

namespace {

bool has_suffix(const std::vector<std::size_t>& path, const std::vector<std::size_t>& rel) {
  return rel.size() <= path.size() && std::equal(rel.rbegin(), rel.rend(), path.rbegin());
}

bool contains_subpath(const std::vector<std::size_t>& path, const std::vector<std::size_t>& rel) {
  return std::search(path.begin(), path.end(), rel.begin(), rel.end()) != path.end();
}

}  // namespace

QuiverAlgebra::QuiverAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                             std::vector<std::vector<std::string>> relations)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), relation_names_(std::move(relations)) {
  if (vertices_.empty()) throw Error("ParseError", "an algebra needs at least one vertex");
  std::map<std::string, std::size_t> vertex_lookup;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (!vertex_lookup.emplace(vertices_[v], v).second) throw Error("ParseError", "duplicate vertex " + vertices_[v]);
  }
  std::map<std::string, std::size_t> arrow_lookup;
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    const auto& arrow = arrows_[a];
    if (!arrow_lookup.emplace(arrow.name, a).second) throw Error("ParseError", "duplicate arrow " + arrow.name);
    auto s = vertex_lookup.find(arrow.src);
    auto t = vertex_lookup.find(arrow.tgt);
    if (s == vertex_lookup.end() || t == vertex_lookup.end()) {
      throw Error("ParseError", "arrow " + arrow.name + " has an unknown endpoint");
    }
    arrow_src_.push_back(s->second);
    arrow_tgt_.push_back(t->second);
  }

  std::size_t relation_length_sum = 0;
  std::vector<std::vector<std::size_t>> rels;
  for (const auto& rel : relation_names_) {
    if (rel.size() < 2) throw Error("IllTypedRelation", "relations must have length at least 2");
    std::vector<std::size_t> path;
    for (const auto& name : rel) {
      auto it = arrow_lookup.find(name);
      if (it == arrow_lookup.end()) throw Error("IllTypedRelation", "unknown arrow " + name + " in relation");
      if (!path.empty() && arrow_tgt_[path.back()] != arrow_src_[it->second]) {
        throw Error("IllTypedRelation", "relation is not a path at arrow " + name);
      }
      path.push_back(it->second);
    }
    relation_length_sum += path.size();
    rels.push_back(std::move(path));
  }
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  for (const auto& rel : rels) {
    const bool redundant = std::any_of(rels.begin(), rels.end(), [&](const auto& other) {
      return other != rel && contains_subpath(rel, other);
    });
    if (!redundant) relations_.push_back(rel);
  }

  // Paths are extended one arrow at a time, so only suffixes can newly match a
  // relation. A basis path at least as long as the number of
  // (vertex, relation-prefix) states revisits a state and can be pumped
  // forever.
  const std::size_t pump_bound = vertices_.size() * (1 + relation_length_sum);
  std::vector<std::vector<std::size_t>> out_arrows(vertices_.size());
  for (std::size_t a = 0; a < arrows_.size(); ++a) out_arrows[arrow_src_[a]].push_back(a);

  std::function<void(Path&)> extend = [&](Path& path) {
    if (basis_.size() >= kMaxBasisSize) throw Error("InfiniteDimensional", "basis exceeds the size cap");
    basis_.push_back(path);
    if (path.arrows.size() >= pump_bound && pump_bound > 0) {
      throw Error("InfiniteDimensional", "an unbounded family of nonzero paths exists");
    }
    for (std::size_t a : out_arrows[path.end]) {
      path.arrows.push_back(a);
      const bool killed = std::any_of(relations_.begin(), relations_.end(),
                                      [&](const auto& rel) { return has_suffix(path.arrows, rel); });
      if (!killed) {
        const std::size_t previous_end = path.end;
        path.end = arrow_tgt_[a];
        extend(path);
        path.end = previous_end;
      }
      path.arrows.pop_back();
    }
  };
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    Path start{v, v, {}};
    extend(start);
  }
}

std::size_t QuiverAlgebra::vertex_index(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) throw Error("UnknownVertex", "no vertex named " + name);
  return static_cast<std::size_t>(it - vertices_.begin());
}

QuiverAlgebra quiver_from_json(const nlohmann::json& j) {
  try {
    auto vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Arrow> arrows;
    if (j.contains("arrows")) {
      for (const auto& a : j.at("arrows")) {
        arrows.push_back({a.at("name").get<std::string>(), a.at("src").get<std::string>(), a.at("tgt").get<std::string>()});
      }
    }
    std::vector<std::vector<std::string>> relations;
    if (j.contains("relations")) relations = j.at("relations").get<std::vector<std::vector<std::string>>>();
    return QuiverAlgebra(std::move(vertices), std::move(arrows), std::move(relations));
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

QuiverAlgebra load_quiver(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
  return quiver_from_json(j);
}

nlohmann::json quiver_to_json(const QuiverAlgebra& a) {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& arrow : a.arrows()) arrows.push_back({{"name", arrow.name}, {"src", arrow.src}, {"tgt", arrow.tgt}});
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& rel : a.relation_names()) relations.push_back(rel);
  return {{"vertices", a.vertices()}, {"arrows", arrows}, {"relations", relations}};
}

NNIMatrix dims_matrix(const QuiverAlgebra& a) {
  const auto n = static_cast<Eigen::Index>(a.vertices().size());
  NNIMatrix d = NNIMatrix::Zero(n, n);
  for (const auto& path : a.basis()) {
    auto& slot = d(static_cast<Eigen::Index>(path.end), static_cast<Eigen::Index>(path.start));
    slot = checked_add<std::uint64_t>(slot, 1);
  }
  return d;
}

std::vector<std::vector<std::size_t>> component_partition(const QuiverAlgebra& a) {
  const std::size_t n = a.vertices().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (std::size_t arrow = 0; arrow < a.arrows().size(); ++arrow) {
    const std::size_t x = find(a.arrow_src(arrow));
    const std::size_t y = find(a.arrow_tgt(arrow));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t v = 0; v < n; ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

QuiverAlgebra restrict_to(const QuiverAlgebra& a, const std::vector<std::size_t>& vertices) {
  std::set<std::size_t> keep(vertices.begin(), vertices.end());
  std::vector<std::string> names;
  for (std::size_t v : vertices) names.push_back(a.vertices().at(v));
  std::vector<Arrow> arrows;
  std::set<std::string> kept_arrows;
  for (std::size_t arrow = 0; arrow < a.arrows().size(); ++arrow) {
    if (keep.count(a.arrow_src(arrow)) && keep.count(a.arrow_tgt(arrow))) {
      arrows.push_back(a.arrows()[arrow]);
      kept_arrows.insert(a.arrows()[arrow].name);
    }
  }
  std::vector<std::vector<std::string>> relations;
  for (const auto& rel : a.relation_names()) {
    if (std::all_of(rel.begin(), rel.end(), [&](const auto& name) { return kept_arrows.count(name) > 0; })) {
      relations.push_back(rel);
    }
  }
  return QuiverAlgebra(std::move(names), std::move(arrows), std::move(relations));
}

QuiverAlgebra algebra_direct_sum(const std::vector<QuiverAlgebra>& parts) {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<std::string>> relations;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string prefix = std::to_string(i + 1) + ".";
    for (const auto& v : parts[i].vertices()) vertices.push_back(prefix + v);
    for (const auto& arrow : parts[i].arrows()) {
      arrows.push_back({prefix + arrow.name, prefix + arrow.src, prefix + arrow.tgt});
    }
    for (const auto& rel : parts[i].relation_names()) {
      std::vector<std::string> renamed;
      for (const auto& name : rel) renamed.push_back(prefix + name);
      relations.push_back(std::move(renamed));
    }
  }
  return QuiverAlgebra(std::move(vertices), std::move(arrows), std::move(relations));
}

QuiverAlgebra ground_field() { return QuiverAlgebra({"1"}, {}, {}); }

TwoCatPresentation build_projfun_2cat(const QuiverAlgebra& a) {
  const auto components = component_partition(a);
  const NNIMatrix dims = dims_matrix(a);
  const std::size_t n = a.vertices().size();
  std::vector<std::size_t> component_of(n);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t v : components[c]) component_of[v] = c;
  }
  auto object_name = [](std::size_t c) { return std::to_string(c + 1); };
  auto symbol = [&](std::size_t b, std::size_t v) { return "P[" + a.vertices()[b] + "," + a.vertices()[v] + "]"; };
  auto dim = [&](std::size_t row, std::size_t col) {
    return dims(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  };

  PresentationSpec spec;
  std::vector<bool> merged(components.size(), false);
  for (std::size_t c = 0; c < components.size(); ++c) {
    spec.objects.push_back(object_name(c));
    std::uint64_t total = 0;
    for (std::size_t x : components[c]) {
      for (std::size_t y : components[c]) total += dim(x, y);
    }
    // A component equal to k: the regular bimodule is projective, so the
    // identity is the symbol P[v,v] itself.
    merged[c] = total == 1;
    spec.identities[object_name(c)] = merged[c] ? symbol(components[c].front(), components[c].front()) : "1_" + object_name(c);
  }
  for (std::size_t src_v = 0; src_v < n; ++src_v) {
    for (std::size_t tgt_v = 0; tgt_v < n; ++tgt_v) {
      const bool is_merged_identity = src_v == tgt_v && merged[component_of[src_v]];
      if (is_merged_identity) continue;
      spec.onemorphisms.push_back(
          {symbol(tgt_v, src_v), object_name(component_of[src_v]), object_name(component_of[tgt_v]), false});
    }
  }
  // P[b,x] ∘ P[d,c] = P[b,c]^{dim e_x A e_d}, defined when x and d share a component.
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t d = 0; d < n; ++d) {
        if (component_of[x] != component_of[d]) continue;
        const std::uint64_t mult = dim(x, d);
        if (mult == 0) continue;
        for (std::size_t c = 0; c < n; ++c) {
          spec.composition.push_back({symbol(b, x), symbol(d, c), {{symbol(b, c), mult}}});
        }
      }
    }
  }
  return TwoCatPresentation(spec);
}

std::optional<std::pair<std::size_t, std::size_t>> dim_one_pair(const QuiverAlgebra& a) {
  const NNIMatrix d = dims_matrix(a);
  for (Eigen::Index col = 0; col < d.cols(); ++col) {
    for (Eigen::Index row = 0; row < d.rows(); ++row) {
      if (d(row, col) == 1) return std::make_pair(static_cast<std::size_t>(col), static_cast<std::size_t>(row));
    }
  }
  return std::nullopt;
}

bool has_dim_one_pair(const QuiverAlgebra& a) { return dim_one_pair(a).has_value(); }

std::string canonical_form(const QuiverAlgebra& a) {
  const std::size_t n = a.vertices().size();
  if (n > kMaxCanonicalVertices) throw Error("TooLarge", "canonical form limited to 8 vertices");
  const std::size_t m = a.arrows().size();

  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::vector<std::size_t> best;
  bool have_best = false;

  do {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t arrow) { return std::make_pair(label[a.arrow_src(arrow)], label[a.arrow_tgt(arrow)]); };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) of parallel arrows
    for (std::size_t i = 0; i < m;) {
      std::size_t j = i;
      while (j < m && key(order[j]) == key(order[i])) ++j;
      groups.emplace_back(i, j);
      i = j;
    }

    std::function<void(std::size_t)> visit = [&](std::size_t g) {
      if (g < groups.size()) {
        auto first = order.begin() + static_cast<std::ptrdiff_t>(groups[g].first);
        auto last = order.begin() + static_cast<std::ptrdiff_t>(groups[g].second);
        std::sort(first, last);
        do {
          visit(g + 1);
        } while (std::next_permutation(first, last));
        return;
      }
      std::vector<std::size_t> position(m);
      for (std::size_t i = 0; i < m; ++i) position[order[i]] = i;
      std::vector<std::size_t> code{n, m};
      for (std::size_t i = 0; i < m; ++i) {
        code.push_back(key(order[i]).first);
        code.push_back(key(order[i]).second);
      }
      std::vector<std::vector<std::size_t>> rels;
      for (const auto& rel : a.relations()) {
        std::vector<std::size_t> renamed;
        for (std::size_t arrow : rel) renamed.push_back(position[arrow]);
        rels.push_back(std::move(renamed));
      }
      std::sort(rels.begin(), rels.end());
      code.push_back(rels.size());
      for (const auto& rel : rels) {
        code.push_back(rel.size());
        code.insert(code.end(), rel.begin(), rel.end());
      }
      if (!have_best || code < best) {
        best = std::move(code);
        have_best = true;
      }
    };
    visit(0);
  } while (std::next_permutation(label.begin(), label.end()));

  std::ostringstream out;
  // n vertices; m arrows as src>tgt; relations as arrow positions.
  out << "Q" << best[0] << ":";
  std::size_t i = 2;
  for (std::size_t k = 0; k < m; ++k, i += 2) out << (k ? "," : "") << best[i] << ">" << best[i + 1];
  out << "|R:";
  const std::size_t relation_count = best[i++];
  for (std::size_t r = 0; r < relation_count; ++r) {
    const std::size_t len = best[i++];
    out << (r ? "," : "");
    for (std::size_t k = 0; k < len; ++k) out << (k ? "." : "") << best[i++];
  }
  return out.str();
}

MoritaNormalForm morita_normal_form(const QuiverAlgebra& a) {
  MoritaNormalForm form;
  std::size_t field_copies = 0;
  bool core_has_pair = false;
  for (const auto& component : component_partition(a)) {
    const QuiverAlgebra part = restrict_to(a, component);
    if (part.dimension() == 1) {
      ++field_copies;
      continue;
    }
    form.core.push_back(canonical_form(part));
    core_has_pair = core_has_pair || has_dim_one_pair(part);
  }
  std::sort(form.core.begin(), form.core.end());
  // Copies of k can be removed one by one while the remainder still has a
  // dimension-one pair. With a core lacking one, the last copy is stuck,
  // except that k^n (no core) normalizes to k.
  form.epsilon = (field_copies > 0 && !form.core.empty() && !core_has_pair) ? 1 : 0;
  return form;
}

bool morita_equivalent(const QuiverAlgebra& a, const QuiverAlgebra& b) {
  return morita_normal_form(a) == morita_normal_form(b);
}

}  // namespace fin2
