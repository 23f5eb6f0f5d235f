#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fin2/error.hpp"

namespace fin2 {

template <typename Scalar>
using IntegerMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ElementIndex = std::size_t;
using GeneratorIndex = std::size_t;

inline constexpr std::size_t kDefaultCoxeterCap = 1152;

/// Cartan matrix of the integral geometric representation: 2 on the
/// diagonal; for s < t the pair (C(s,t), C(t,s)) is (0,0), (-1,-1), (-1,-2),
/// (-1,-3) for m = 2, 3, 4, 6. Throws NonCrystallographic otherwise.
IntegerMatrix<std::int64_t> cartan_matrix(const std::vector<std::vector<int>>& m);

/// Reflection of generator s: fixes every simple root but the s-th row,
/// which becomes e_s - C(s, :).
template <typename Scalar>
IntegerMatrix<Scalar> simple_reflection(const IntegerMatrix<Scalar>& cartan, Eigen::Index s) {
  IntegerMatrix<Scalar> r = IntegerMatrix<Scalar>::Identity(cartan.rows(), cartan.cols());
  r.row(s) -= cartan.row(s);
  return r;
}

/// Finite crystallographic Coxeter group, fully enumerated.
/// Elements are indexed in breadth-first order, so index 0 is the identity
/// and indices are sorted by length. Each element's reduced word is its
/// lexicographically least one (by generator index).
class CoxeterSystem {
 public:
  CoxeterSystem(std::vector<std::string> generators, std::vector<std::vector<int>> m,
                std::size_t cap = kDefaultCoxeterCap);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return m_; }
  std::size_t rank() const { return generators_.size(); }
  std::size_t order() const { return length_.size(); }

  ElementIndex identity() const { return 0; }
  ElementIndex longest() const { return order() - 1; }
  std::size_t length(ElementIndex w) const { return length_.at(w); }
  const std::vector<GeneratorIndex>& reduced_word(ElementIndex w) const { return word_.at(w); }
  const std::string& name(ElementIndex w) const { return name_.at(w); }
  ElementIndex find(const std::string& name) const;

  ElementIndex right_multiply(ElementIndex w, GeneratorIndex s) const { return right_[w * rank() + s]; }
  ElementIndex left_multiply(GeneratorIndex s, ElementIndex w) const { return left_[w * rank() + s]; }
  ElementIndex multiply(ElementIndex x, ElementIndex y) const;
  ElementIndex inverse(ElementIndex w) const { return inverse_.at(w); }

  const IntegerMatrix<std::int64_t>& representation(ElementIndex w) const { return matrices_.at(w); }
  const std::vector<ElementIndex>& reflections() const { return reflections_; }

  /// Bruhat order, generated by x < t x whenever t is a reflection and
  /// length(t x) > length(x).
  bool bruhat_leq(ElementIndex x, ElementIndex w) const;

 private:
  std::vector<std::string> generators_;
  std::vector<std::vector<int>> m_;
  std::vector<IntegerMatrix<std::int64_t>> matrices_;
  std::vector<std::size_t> length_;
  std::vector<std::vector<GeneratorIndex>> word_;
  std::vector<std::string> name_;
  std::vector<ElementIndex> right_;
  std::vector<ElementIndex> left_;
  std::vector<ElementIndex> inverse_;
  std::vector<ElementIndex> reflections_;
  std::vector<std::vector<std::uint64_t>> below_;  // bitset rows: below_[w] has x iff x < w
};

CoxeterSystem build_coxeter(const std::vector<std::string>& generators, const std::vector<std::vector<int>>& m,
                            std::size_t cap = kDefaultCoxeterCap);
CoxeterSystem coxeter_from_json(const nlohmann::json& j, std::size_t cap = kDefaultCoxeterCap);
nlohmann::json coxeter_to_json(const CoxeterSystem& w);

}  // namespace fin2
