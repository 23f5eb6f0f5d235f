#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fin2/projclass.hpp"
#include "fin2/projfun.hpp"
#include "morita_oracle.hpp"
#include "support.hpp"

using namespace fin2;
using testing::fixture;

namespace {

using J = nlohmann::json;

const std::vector<std::string> kQuivers = {"c.json",          "cc.json",           "ccc.json",
                                           "cx2.json",        "cx2_plus_c.json",   "cx2_plus_cc.json",
                                           "cy2.json",        "cx3.json",          "path12.json",
                                           "path12_plus_c.json", "path21.json",    "cx2_plus_path12.json",
                                           "two_loops_a.json", "two_loops_b.json"};

QuiverAlgebra algebra(const std::string& name) { return quiver_from_json(fixture(name)); }

NNIMatrix mat(std::initializer_list<std::initializer_list<std::uint64_t>> rows) { return matrix_from_json(J(rows)); }

std::string name_error(const std::string& text) {
  try {
    load_quiver(text);
  } catch (const Error& e) {
    return e.name();
  }
  return "none";
}

}  // namespace

TEST_CASE("loading examples") {
  const auto k = algebra("c.json");
  CHECK(k.dimension() == 1);
  CHECK(same_matrix(dims_matrix(k), mat({{1}})));

  const auto path = algebra("path12.json");
  CHECK(path.dimension() == 3);
  CHECK(same_matrix(dims_matrix(path), mat({{1, 0}, {1, 1}})));

  const auto dual = algebra("cx2.json");
  CHECK(dual.dimension() == 2);
  CHECK(same_matrix(dims_matrix(dual), mat({{2}})));

  CHECK(algebra("cx3.json").dimension() == 3);
}

TEST_CASE("loading errors") {
  CHECK(name_error(R"({"vertices":["1"],"arrows":[{"name":"x","src":"1","tgt":"1"}],"relations":[]})") ==
        "InfiniteDimensional");
  CHECK(name_error(R"({"vertices":["1"],"arrows":[{"name":"x","src":"1","tgt":"1"},{"name":"y","src":"1","tgt":"1"}],
                      "relations":[["x","x"],["y","y"]]})") == "InfiniteDimensional");
  CHECK(name_error(R"({"vertices":["1","2"],"arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"1"}],
                      "relations":[["a","b","a"]]})") == "none");
  CHECK(name_error(R"({"vertices":["1","2"],"arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"1"}],
                      "relations":[["a","b"],["b","a"]]})") == "none");
  CHECK(name_error(R"({"vertices":["1","2"],"arrows":[{"name":"a","src":"1","tgt":"2"}],"relations":[["a","a"]]})") ==
        "IllTypedRelation");
  CHECK(name_error(R"({"vertices":["1"],"arrows":[{"name":"x","src":"1","tgt":"1"}],"relations":[["x"]]})") ==
        "IllTypedRelation");
  CHECK(name_error(R"({"vertices":["1"],"arrows":[{"name":"x","src":"1","tgt":"9"}],"relations":[]})") == "ParseError");
  CHECK(name_error("not json") == "ParseError");
}

TEST_CASE("relations follow path order") {
  // a: 1 -> 2, b: 2 -> 3; the relation [a, b] kills the path "a then b".
  const auto a = load_quiver(R"({"vertices":["1","2","3"],
    "arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"3"}],"relations":[["a","b"]]})");
  CHECK(a.dimension() == 5);
  CHECK(dims_matrix(a)(2, 0) == 0);
  const auto free = load_quiver(R"({"vertices":["1","2","3"],
    "arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"3"}],"relations":[]})");
  CHECK(dims_matrix(free)(2, 0) == 1);
}

TEST_CASE("cycle with both relations is finite") {
  const auto a = load_quiver(R"({"vertices":["1","2"],"arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"1"}],
                                 "relations":[["a","b"],["b","a"]]})");
  CHECK(a.dimension() == 4);
  CHECK(same_matrix(dims_matrix(a), mat({{1, 1}, {1, 1}})));
}

TEST_CASE("dims count basis paths") {
  for (const auto& name : kQuivers) {
    const auto a = algebra(name);
    const auto d = dims_matrix(a);
    NNIMatrix count = NNIMatrix::Zero(d.rows(), d.cols());
    for (const auto& p : a.basis()) ++count(static_cast<Eigen::Index>(p.end), static_cast<Eigen::Index>(p.start));
    CHECK(same_matrix(d, count));
    for (Eigen::Index v = 0; v < d.rows(); ++v) CHECK(d(v, v) >= 1);
  }
}

TEST_CASE("components") {
  CHECK(component_partition(algebra("path12_plus_c.json")) == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  CHECK(component_partition(algebra("ccc.json")).size() == 3);
  CHECK(component_partition(algebra("path12.json")).size() == 1);
}

TEST_CASE("projective functor presentations") {
  SUBCASE("path algebra 1 -> 2") {
    const auto p = build_projfun_2cat(algebra("path12.json"));
    CHECK(validate_presentation(p).ok());
    CHECK(p.object_count() == 1);
    const auto f = single(p, p.mor_at("P[2,2]"));
    CHECK(compose_sums(p, f, f) == f);
    CHECK(is_weakly_idempotent(p, f));
  }
  SUBCASE("k + k") {
    const auto p = build_projfun_2cat(algebra("cc.json"));
    CHECK(validate_presentation(p).ok());
    CHECK(p.object_count() == 2);
    CHECK(indecomposables_between(p, "1", "2").size() == 1);
    CHECK(indecomposables_between(p, "2", "1").size() == 1);
    CHECK(p.mor_count() == 4);
    CHECK(p.is_identity(p.mor_at("P[1,1]")));
    CHECK(p.is_identity(p.mor_at("P[2,2]")));
    for (MorIndex x = 0; x < p.mor_count(); ++x)
      for (MorIndex y = 0; y < p.mor_count(); ++y)
        if (p.src(x) == p.tgt(y)) {
          const auto& terms = p.product(x, y);
          REQUIRE(terms.size() == 1);
          CHECK(terms[0].second == 1);
        }
  }
  SUBCASE("k[x]/x^2") {
    const auto p = build_projfun_2cat(algebra("cx2.json"));
    CHECK(validate_presentation(p).ok());
    CHECK(p.mor_count() == 2);
    const auto f = single(p, p.mor_at("P[1,1]"));
    CHECK(compose_sums(p, f, f) == single(p, p.mor_at("P[1,1]"), 2));
  }
}

TEST_CASE("every fixture builds a valid presentation") {
  for (const auto& name : kQuivers) {
    INFO(name);
    CHECK(validate_presentation(build_projfun_2cat(algebra(name))).ok());
  }
}

TEST_CASE("bimodule symbols are weakly idempotent exactly on dimension one") {
  for (const auto& name : kQuivers) {
    const auto a = algebra(name);
    const auto p = build_projfun_2cat(a);
    const auto d = dims_matrix(a);
    for (std::size_t x = 0; x < a.vertices().size(); ++x) {
      for (std::size_t y = 0; y < a.vertices().size(); ++y) {
        const auto id = p.find_mor("P[" + a.vertices()[y] + "," + a.vertices()[x] + "]");
        REQUIRE(id);
        if (p.src(*id) != p.tgt(*id)) continue;
        // P[y,x] o P[y,x] = dim e_x A e_y P[y,x].
        INFO(name << " " << p.mor_id(*id));
        CHECK(is_weakly_idempotent(p, single(p, *id)) == (d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) == 1));
      }
    }
  }
}

TEST_CASE("dimension one pairs") {
  CHECK(has_dim_one_pair(algebra("c.json")));
  CHECK_FALSE(has_dim_one_pair(algebra("cx2.json")));
  CHECK(has_dim_one_pair(algebra("path12.json")));
  const auto w = dim_one_pair(algebra("path12.json"));
  REQUIRE(w);
  CHECK(dims_matrix(algebra("path12.json"))(static_cast<Eigen::Index>(w->second), static_cast<Eigen::Index>(w->first)) == 1);
}

TEST_CASE("canonical forms ignore names") {
  CHECK(canonical_form(algebra("cx2.json")) == canonical_form(algebra("cy2.json")));
  CHECK(canonical_form(algebra("path12.json")) == canonical_form(algebra("path21.json")));
  CHECK(canonical_form(algebra("cx2.json")) != canonical_form(algebra("cx3.json")));
  std::vector<QuiverAlgebra> many(9, ground_field());
  CHECK_THROWS_AS(canonical_form(algebra_direct_sum(many)), Error);
}

TEST_CASE("Morita normal forms") {
  const auto k = morita_normal_form(algebra("c.json"));
  CHECK(k.core.empty());
  CHECK(k.epsilon == 0);
  CHECK(morita_normal_form(algebra("ccc.json")) == k);

  const auto nf = morita_normal_form(algebra("cx2_plus_cc.json"));
  CHECK(nf.core.size() == 1);
  CHECK(nf.epsilon == 1);
  CHECK(morita_normal_form(algebra("cx2_plus_c.json")) == nf);
  CHECK(morita_normal_form(algebra("cx2.json")).epsilon == 0);

  const auto path = morita_normal_form(algebra("path12.json"));
  CHECK(path.core.size() == 1);
  CHECK(path.epsilon == 0);
}

TEST_CASE("Morita verdicts") {
  CHECK(morita_equivalent(algebra("c.json"), algebra("cc.json")));
  CHECK_FALSE(morita_equivalent(algebra("cx2.json"), algebra("cx2_plus_c.json")));
  CHECK(morita_equivalent(algebra("path12.json"), algebra("path12_plus_c.json")));
  CHECK(morita_equivalent(algebra("cx2.json"), algebra("cy2.json")));
  CHECK(morita_equivalent(algebra("path12.json"), algebra("path21.json")));
  CHECK(morita_equivalent(algebra_direct_sum({algebra("path12.json"), ground_field()}), algebra("path12_plus_c.json")));
}

TEST_CASE("normal forms agree with move search on all fixture pairs") {
  for (const auto& x : kQuivers) {
    for (const auto& y : kQuivers) {
      INFO(x << " vs " << y);
      const auto a = algebra(x);
      const auto b = algebra(y);
      const bool verdict = morita_equivalent(a, b);
      CHECK(verdict == testing::moves_connect(a, b, 4));
      CHECK(verdict == morita_equivalent(b, a));
      if (x == y) CHECK(verdict);
      for (const auto& z : kQuivers) {
        if (verdict && morita_equivalent(b, algebra(z))) CHECK(morita_equivalent(a, algebra(z)));
      }
    }
  }
}

TEST_CASE("quiver files round trip") {
  for (const auto& name : kQuivers) {
    const auto text = testing::read_text(testing::fixture_path(name));
    CHECK(quiver_to_json(quiver_from_json(J::parse(text))).dump(2) + "\n" == text);
  }
}
