#include "fin2/projclass.hpp"

#include <algorithm>
#include <numeric>

namespace fin2 {

bool descriptor_holds(const TwoCatPresentation& p, const ProjectiveDescriptor& d) {
  if (p.src(d.g) != d.object || p.tgt(d.g) != d.object) return false;
  const MorSum g = single(p, d.g);
  const MorSum gg = compose_sums(p, g, g);
  if (gg.multiplicity(d.g) != 1 || gg != direct_sum(g, d.q) || d.e != gg) return false;
  if (!compose_sums(p, g, d.q).is_zero() || !compose_sums(p, d.q, g).is_zero() || !compose_sums(p, d.q, d.q).is_zero()) {
    return false;
  }
  return is_weakly_idempotent(p, d.e);
}

std::vector<ProjectiveDescriptor> classify_projectives(const TwoCatPresentation& p) {
  std::vector<ProjectiveDescriptor> out;
  for (ObjectIndex i = 0; i < p.object_count(); ++i) {
    for (MorIndex m : indecomposables_between(p, i, i)) {
      const MorSum g = single(p, m);
      const MorSum gg = compose_sums(p, g, g);
      if (gg.multiplicity(m) != 1) continue;
      ProjectiveDescriptor d{i, m, subtract(gg, g), gg};
      if (descriptor_holds(p, d)) out.push_back(std::move(d));
    }
  }
  return out;
}

EndoMatrix retract_idempotent(const PresentationPtr& p, const ProjectiveDescriptor& d) {
  if (!descriptor_holds(*p, d)) throw Error("DescriptorInvalid", "descriptor conditions fail for " + p->mor_id(d.g));
  EndoMatrix out(p, {d.object});
  out.set(0, 0, d.e);
  if (!is_idempotent_endo(out)) throw Error("DescriptorInvalid", "retract endomorphism is not idempotent");
  return out;
}

LocalEndoTable local_endo_products(const TwoCatPresentation& p, const ProjectiveDescriptor& d) {
  LocalEndoTable table;
  const auto local = indecomposables_between(p, d.object, d.object);
  for (MorIndex f : local) {
    table.sandwiches.emplace_back(f, compose_sums(p, d.e, compose_sums(p, single(p, f), d.e)));
  }
  for (const auto& [f, ef] : table.sandwiches) {
    for (const auto& [f2, ef2] : table.sandwiches) table.products.push_back({f, f2, compose_sums(p, ef, ef2)});
  }
  return table;
}

std::optional<std::pair<MorIndex, MorIndex>> preorder_witness(const TwoCatPresentation& p, ObjectIndex i,
                                                              ObjectIndex j) {
  const MorSum unit = identity_sum(p, i);
  for (MorIndex phi : indecomposables_between(p, j, i)) {
    for (MorIndex psi : indecomposables_between(p, i, j)) {
      if (compose_sums(p, single(p, phi), single(p, psi)) == unit) return std::make_pair(phi, psi);
    }
  }
  return std::nullopt;
}

Preorder preorder(const TwoCatPresentation& p) {
  const std::size_t n = p.object_count();
  Preorder below(n, std::vector<bool>(n, false));
  for (ObjectIndex i = 0; i < n; ++i) {
    for (ObjectIndex j = 0; j < n; ++j) below[i][j] = preorder_witness(p, i, j).has_value();
  }
  return below;
}

std::vector<ObjectIndex> essential_objects(const TwoCatPresentation& p) {
  const Preorder below = preorder(p);
  const std::size_t n = p.object_count();
  std::vector<ObjectIndex> out;
  for (ObjectIndex i = 0; i < n; ++i) {
    bool maximal = true;
    bool representative = true;
    for (ObjectIndex j = 0; j < n; ++j) {
      if (j == i || !below[i][j]) continue;
      if (!below[j][i]) {
        maximal = false;
      } else if (p.object_name(j) < p.object_name(i)) {
        representative = false;
      }
    }
    if (maximal && representative) out.push_back(i);
  }
  std::sort(out.begin(), out.end(), [&](ObjectIndex x, ObjectIndex y) { return p.object_name(x) < p.object_name(y); });
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> equivalence_hints(const TwoCatPresentation& p,
                                                                   const std::vector<ProjectiveDescriptor>& ds) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < ds.size(); ++a) {
    for (std::size_t b = a + 1; b < ds.size(); ++b) {
      const auto& da = ds[a];
      const auto& db = ds[b];
      bool found = false;
      for (MorIndex x : indecomposables_between(p, da.object, db.object)) {
        const MorSum ex = compose_sums(p, db.e, compose_sums(p, single(p, x), da.e));
        if (ex.is_zero()) continue;
        for (MorIndex y : indecomposables_between(p, db.object, da.object)) {
          const MorSum ey = compose_sums(p, da.e, compose_sums(p, single(p, y), db.e));
          if (ey.is_zero()) continue;
          if (compose_sums(p, ey, ex).multiplicity(da.g) > 0 && compose_sums(p, ex, ey).multiplicity(db.g) > 0) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace fin2
