#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fin2/projclass.hpp"
#include "fin2/projfun.hpp"
#include "fin2/soergel.hpp"
#include "support.hpp"

using namespace fin2;
using testing::fixture;
using testing::fixture_presentation;
using testing::sum_of;

namespace {

using J = nlohmann::json;

PresentationPtr projfun_presentation(const std::string& quiver) {
  return std::make_shared<const TwoCatPresentation>(build_projfun_2cat(quiver_from_json(fixture(quiver))));
}

// Brute force: test the three conditions directly on every endomorphism indecomposable.
std::vector<std::pair<ObjectIndex, MorIndex>> brute_force_projectives(const TwoCatPresentation& p) {
  std::vector<std::pair<ObjectIndex, MorIndex>> out;
  for (ObjectIndex i = 0; i < p.object_count(); ++i) {
    for (MorIndex g = 0; g < p.mor_count(); ++g) {
      if (p.src(g) != i || p.tgt(g) != i) continue;
      const auto gs = single(p, g);
      const auto square = compose_sums(p, gs, gs);
      if (square.multiplicity(g) != 1) continue;
      MorSum q = square;
      q.terms.erase(g);
      if (!compose_sums(p, gs, q).is_zero() || !compose_sums(p, q, gs).is_zero() || !compose_sums(p, q, q).is_zero())
        continue;
      if (!is_weakly_idempotent(p, square)) continue;
      out.emplace_back(i, g);
    }
  }
  return out;
}

std::vector<std::pair<ObjectIndex, MorIndex>> found(const std::vector<ProjectiveDescriptor>& ds) {
  std::vector<std::pair<ObjectIndex, MorIndex>> out;
  for (const auto& d : ds) out.emplace_back(d.object, d.g);
  return out;
}

std::vector<std::string> essential_names(const TwoCatPresentation& p) {
  std::vector<std::string> out;
  for (ObjectIndex i : essential_objects(p)) out.push_back(p.object_name(i));
  return out;
}

}  // namespace

TEST_CASE("classification for F∘F = F + K") {
  const auto p = fixture_presentation("square_fk.json");
  const auto ds = classify_projectives(*p);
  REQUIRE(ds.size() == 2);
  CHECK(p->mor_id(ds[0].g) == "1_i");
  CHECK(ds[0].q.is_zero());
  CHECK(ds[0].e == identity_sum(*p, 0));
  CHECK(p->mor_id(ds[1].g) == "F");
  CHECK(ds[1].q == sum_of(*p, J{{"K", 1}}));
  CHECK(ds[1].e == sum_of(*p, J{{"F", 1}, {"K", 1}}));
}

TEST_CASE("classification for F∘F = F") {
  const auto p = fixture_presentation("square_f.json");
  const auto ds = classify_projectives(*p);
  REQUIRE(ds.size() == 2);
  CHECK(p->mor_id(ds[0].g) == "1_i");
  CHECK(ds[0].q.is_zero());
  CHECK(p->mor_id(ds[1].g) == "F");
  CHECK(ds[1].q.is_zero());
  CHECK(ds[1].e == sum_of(*p, J{{"F", 1}}));
}

TEST_CASE("Soergel A2 has only the identity") {
  const auto p = build_soergel_2cat(coxeter_from_json(fixture("A2.json")));
  const auto ds = classify_projectives(p);
  REQUIRE(ds.size() == 1);
  CHECK(p.is_identity(ds[0].g));
}

TEST_CASE("classification agrees with brute force and re-checks") {
  std::vector<PresentationPtr> all{fixture_presentation("square_fk.json"), fixture_presentation("square_f.json")};
  for (const char* q : {"cc.json", "cx2.json", "cx2_plus_c.json", "path12.json", "path12_plus_c.json", "cx2_plus_path12.json"})
    all.push_back(projfun_presentation(q));
  for (const auto& p : all) {
    const auto ds = classify_projectives(*p);
    CHECK(found(ds) == brute_force_projectives(*p));
    for (const auto& d : ds) {
      CHECK(descriptor_holds(*p, d));
      const auto e = retract_idempotent(p, d);
      CHECK(is_idempotent_endo(e));
      const auto parts = gamma_theta_pi(e);
      CHECK(parts.gamma.at(0, 0) == single(*p, d.g));
      CHECK(parts.theta.at(0, 0) == d.q);
      CHECK(parts.pi.is_zero());
    }
  }
}

TEST_CASE("retract idempotents") {
  const auto p = fixture_presentation("square_fk.json");
  const auto ds = classify_projectives(*p);
  CHECK(retract_idempotent(p, ds[0]) == EndoMatrix::identity(p, {0}));
  CHECK(retract_idempotent(p, ds[1]).at(0, 0) == sum_of(*p, J{{"F", 1}, {"K", 1}}));
  ProjectiveDescriptor bad{0, p->mor_at("K"), zero_sum(0, 0), sum_of(*p, J{{"K", 1}})};
  try {
    retract_idempotent(p, bad);
    FAIL("expected DescriptorInvalid");
  } catch (const Error& e) {
    CHECK(e.name() == "DescriptorInvalid");
  }

  const auto p_f = fixture_presentation("square_f.json");
  const auto d_f = classify_projectives(*p_f);
  CHECK(retract_idempotent(p_f, d_f[1]).at(0, 0) == sum_of(*p_f, J{{"F", 1}}));
}

TEST_CASE("local endomorphism products") {
  const auto p = fixture_presentation("square_fk.json");
  const auto ds = classify_projectives(*p);

  const auto identity_table = local_endo_products(*p, ds[0]);
  for (const auto& entry : identity_table.products) {
    CHECK(entry.value == compose_sums(*p, single(*p, entry.f), single(*p, entry.f2)));
  }

  const auto table = local_endo_products(*p, ds[1]);
  for (const auto& [f, sandwich] : table.sandwiches) {
    const auto& id = p->mor_id(f);
    if (id == "F" || id == "1_i") CHECK(sandwich == sum_of(*p, J{{"F", 1}, {"K", 1}}));
    if (id == "K") CHECK(sandwich.is_zero());
  }

  const auto p_f = fixture_presentation("square_f.json");
  const auto t_f = local_endo_products(*p_f, classify_projectives(*p_f)[1]);
  for (const auto& [f, sandwich] : t_f.sandwiches) CHECK(sandwich == sum_of(*p_f, J{{"F", 1}}));
}

TEST_CASE("preorder examples") {
  const auto cc = projfun_presentation("cc.json");
  const auto below = preorder(*cc);
  CHECK(below[0][0]);
  CHECK(below[0][1]);
  CHECK(below[1][0]);
  CHECK(essential_names(*cc).size() == 1);

  const auto pc = projfun_presentation("path12_plus_c.json");
  const auto order = preorder(*pc);
  const auto a = pc->object_at("1");
  const auto m = pc->object_at("2");
  CHECK(order[m][a]);
  CHECK_FALSE(order[a][m]);
  CHECK(essential_names(*pc) == std::vector<std::string>{"1"});

  const auto single_object = fixture_presentation("square_fk.json");
  CHECK(essential_names(*single_object) == std::vector<std::string>{"i"});

  PresentationSpec spec;
  spec.objects = {"i", "j"};
  spec.identities = {{"i", "1_i"}, {"j", "1_j"}};
  CHECK(essential_names(TwoCatPresentation(spec)) == std::vector<std::string>{"i", "j"});
}

TEST_CASE("preorder is reflexive and transitive with composable witnesses") {
  for (const char* q : {"cc.json", "ccc.json", "path12_plus_c.json", "cx2_plus_cc.json", "cx2_plus_path12.json"}) {
    const auto p = projfun_presentation(q);
    const auto below = preorder(*p);
    const auto n = p->object_count();
    for (ObjectIndex i = 0; i < n; ++i) {
      CHECK(below[i][i]);
      for (ObjectIndex j = 0; j < n; ++j) {
        if (!below[i][j]) continue;
        const auto w = preorder_witness(*p, i, j);
        REQUIRE(w);
        CHECK(compose_sums(*p, single(*p, w->first), single(*p, w->second)) == identity_sum(*p, i));
        for (ObjectIndex k = 0; k < n; ++k) {
          if (!below[j][k]) continue;
          CHECK(below[i][k]);
          const auto v = preorder_witness(*p, j, k);
          // (phi_ij o phi_jk) o (psi_jk o psi_ij) collapses to 1_i.
          const auto phi = compose_sums(*p, single(*p, w->first), single(*p, v->first));
          const auto psi = compose_sums(*p, single(*p, v->second), single(*p, w->second));
          CHECK(compose_sums(*p, phi, psi) == identity_sum(*p, i));
        }
      }
    }
  }
}

TEST_CASE("essential objects do not depend on object names") {
  const auto p = projfun_presentation("path12_plus_c.json");
  auto spec = presentation_spec_from_json(presentation_to_json(*p));
  // Swap the two object names everywhere.
  auto rename = [](std::string& s) {
    if (s == "1") s = "2";
    else if (s == "2") s = "1";
  };
  for (auto& o : spec.objects) rename(o);
  std::map<std::string, std::string> identities;
  for (const auto& [o, id] : spec.identities) {
    auto renamed = o;
    rename(renamed);
    identities[renamed] = id;
  }
  spec.identities = identities;
  for (auto& m : spec.onemorphisms) {
    rename(m.src);
    rename(m.tgt);
  }
  TwoCatPresentation swapped(spec);
  REQUIRE(validate_presentation(swapped).ok());
  CHECK(essential_names(swapped) == std::vector<std::string>{"2"});
}

TEST_CASE("equivalence hints") {
  const auto cc = projfun_presentation("cc.json");
  const auto ds = classify_projectives(*cc);
  CHECK_FALSE(equivalence_hints(*cc, ds).empty());
  const auto p = fixture_presentation("square_fk.json");
  CHECK(equivalence_hints(*p, classify_projectives(*p)).empty());
}
