#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "fin2/nnimat.hpp"
#include "support.hpp"

using namespace fin2;

namespace {

NNIMatrix mat(std::initializer_list<std::initializer_list<std::uint64_t>> rows) {
  return matrix_from_json(nlohmann::json(rows));
}

// Plain triple loop, kept separate from the library product.
NNIMatrix naive_product(const NNIMatrix& x, const NNIMatrix& y) {
  NNIMatrix out = NNIMatrix::Zero(x.rows(), y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      for (Eigen::Index k = 0; k < x.cols(); ++k) out(i, j) += x(i, k) * y(k, j);
  return out;
}

NNIMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, std::uint64_t max_entry) {
  std::uniform_int_distribution<std::uint64_t> entry(0, max_entry);
  NNIMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

struct Planted {
  NNIMatrix m;
  std::size_t a, b, c;
};

Planted planted_idempotent(std::mt19937_64& rng, std::size_t max_block, std::uint64_t max_entry) {
  std::uniform_int_distribution<std::size_t> size(0, max_block);
  FlorBlockForm form;
  form.a = size(rng);
  form.b = size(rng);
  form.c = size(rng);
  const auto n = form.a + form.b + form.c;
  form.blockA = random_matrix(rng, static_cast<Eigen::Index>(form.a), static_cast<Eigen::Index>(form.b), max_entry);
  form.blockB = random_matrix(rng, static_cast<Eigen::Index>(form.b), static_cast<Eigen::Index>(form.c), max_entry);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> inverse(n);
  for (std::size_t k = 0; k < n; ++k) inverse[perm[k]] = k;
  return {conjugate(form.assemble(), inverse), form.a, form.b, form.c};
}

}  // namespace

TEST_CASE("multiplication examples") {
  const NNIMatrix id3 = NNIMatrix::Identity(3, 3);
  CHECK(same_matrix(nni_multiply(id3, id3), id3));
  const auto m = mat({{0, 1}, {0, 1}});
  CHECK(same_matrix(nni_multiply(m, m), m));
  CHECK(same_matrix(nni_multiply(mat({{1, 1}}), mat({{1}, {1}})), mat({{2}})));
}

TEST_CASE("multiplication agrees with a naive product") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<Eigen::Index> dim(0, 5);
    const auto r = dim(rng), k = dim(rng), c = dim(rng);
    const auto x = random_matrix(rng, r, k, 9);
    const auto y = random_matrix(rng, k, c, 9);
    CHECK(same_matrix(nni_multiply(x, y), naive_product(x, y)));
  }
}

TEST_CASE("multiplication errors") {
  CHECK_THROWS_AS(nni_multiply(mat({{1, 2}}), mat({{1, 2}})), Error);
  NNIMatrix big(1, 1);
  big(0, 0) = std::numeric_limits<std::uint64_t>::max();
  try {
    nni_multiply(big, mat({{2}}));
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.name() == "Overflow");
  }
  NNIMatrix half(1, 2);
  half << std::numeric_limits<std::uint64_t>::max() / 2 + 1, std::numeric_limits<std::uint64_t>::max() / 2 + 1;
  CHECK_THROWS_AS(nni_multiply(half, mat({{1}, {1}})), Error);
}

TEST_CASE("idempotency") {
  CHECK(is_idempotent_matrix(NNIMatrix(NNIMatrix::Zero(4, 4))));
  CHECK(is_idempotent_matrix(mat({{0, 1, 1}, {0, 1, 1}, {0, 0, 0}})));
  CHECK_FALSE(is_idempotent_matrix(mat({{2}})));
  CHECK_FALSE(is_idempotent_matrix(mat({{0, 2}, {0, 0}})));
  try {
    is_idempotent_matrix(mat({{1, 0}}));
    FAIL("expected NotSquare");
  } catch (const Error& e) {
    CHECK(e.name() == "NotSquare");
  }
}

TEST_CASE("normal form examples") {
  const auto one = flor_normal_form(mat({{1}}));
  CHECK(one.a == 0);
  CHECK(one.b == 1);
  CHECK(one.c == 0);
  CHECK(one.perm == std::vector<std::size_t>{0});

  const auto zero = flor_normal_form(NNIMatrix(NNIMatrix::Zero(3, 3)));
  CHECK(zero.a == 0);
  CHECK(zero.b == 0);
  CHECK(zero.c == 3);

  const auto m = mat({{0, 1, 1}, {0, 1, 1}, {0, 0, 0}});
  const auto form = flor_normal_form(m);
  CHECK(form.perm == std::vector<std::size_t>{0, 1, 2});
  CHECK(form.a == 1);
  CHECK(form.b == 1);
  CHECK(form.c == 1);
  CHECK(same_matrix(form.blockA, mat({{1}})));
  CHECK(same_matrix(form.blockB, mat({{1}})));
  CHECK(satisfies_block_form(m, form));

  try {
    flor_normal_form(mat({{0, 2}, {0, 0}}));
    FAIL("expected NotIdempotent");
  } catch (const Error& e) {
    CHECK(e.name() == "NotIdempotent");
  }
}

TEST_CASE("oracle agrees on the identity") {
  const auto form = flor_oracle(mat({{1}}));
  CHECK(form.b == 1);
  CHECK(form.perm == std::vector<std::size_t>{0});
}

TEST_CASE("all idempotent 2x2 and 3x3 matrices with entries at most 2") {
  for (Eigen::Index n : {2, 3}) {
    const auto cells = static_cast<std::size_t>(n * n);
    std::size_t total = 1;
    for (std::size_t k = 0; k < cells; ++k) total *= 3;
    std::size_t idempotents = 0;
    for (std::size_t code = 0; code < total; ++code) {
      NNIMatrix m(n, n);
      std::size_t rest = code;
      for (std::size_t k = 0; k < cells; ++k, rest /= 3) m(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) = rest % 3;
      if (!is_idempotent_matrix(m)) continue;
      ++idempotents;
      const auto form = flor_normal_form(m);
      const auto oracle = flor_oracle(m);
      REQUIRE(satisfies_block_form(m, form));
      REQUIRE(satisfies_block_form(m, oracle));
      CHECK(form.a == oracle.a);
      CHECK(form.b == oracle.b);
      CHECK(form.c == oracle.c);
      CHECK(trace(m) == form.b);
    }
    CHECK(idempotents > 0);
  }
}

TEST_CASE("planted forms up to size 5 agree with the oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    auto planted = planted_idempotent(rng, 2, 2);
    if (planted.m.rows() > 5 || planted.m.rows() == 0) continue;
    const auto form = flor_normal_form(planted.m);
    const auto oracle = flor_oracle(planted.m);
    CHECK(satisfies_block_form(planted.m, form));
    CHECK(form.a == oracle.a);
    CHECK(form.b == oracle.b);
    CHECK(form.c == oracle.c);
    CHECK(form.b == planted.b);
  }
}

TEST_CASE("planted forms round trip") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    auto planted = planted_idempotent(rng, 3, 3);
    REQUIRE(is_idempotent_matrix(planted.m));
    const auto form = flor_normal_form(planted.m);
    CHECK(satisfies_block_form(planted.m, form));
    CHECK(form.a + form.b + form.c == static_cast<std::size_t>(planted.m.rows()));
    CHECK(trace(planted.m) == form.b);
  }
}

TEST_CASE("oracle refuses large input") {
  CHECK_THROWS_AS(flor_oracle(NNIMatrix(NNIMatrix::Zero(8, 8))), Error);
}

TEST_CASE("json round trip") {
  const auto m = mat({{1, 0, 0, 2}, {0, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}});
  CHECK(same_matrix(matrix_from_json(matrix_to_json(m)), m));
  const auto form = flor_normal_form(m);
  const auto back = flor_from_json(flor_to_json(form));
  CHECK(back.perm == form.perm);
  CHECK(back.a == form.a);
  CHECK(back.b == form.b);
  CHECK(back.c == form.c);
  CHECK(same_matrix(back.blockA, form.blockA));
  CHECK(same_matrix(back.blockB, form.blockB));
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1,-1]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1,0],[1]]")), Error);

  for (const char* name : {"flor_block.json", "flor_zero.json", "flor_mixed.json"}) {
    const auto text = testing::read_text(testing::fixture_path(name));
    CHECK(matrix_to_json(matrix_from_json(nlohmann::json::parse(text))).dump(2) + "\n" == text);
  }
}
