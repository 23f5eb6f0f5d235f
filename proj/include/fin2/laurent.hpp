#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace fin2 {

/// Integer Laurent polynomial in v. Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t constant);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(std::int64_t coefficient, int exponent);
  static LaurentPoly v() { return monomial(1, 1); }
  static LaurentPoly v_inverse() { return monomial(1, -1); }

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(int exponent) const;
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const { return terms_.begin()->first; }
  int max_degree() const { return terms_.rbegin()->first; }

  /// v -> v^{-1}
  LaurentPoly bar() const;
  bool is_bar_invariant() const { return bar() == *this; }
  bool has_nonnegative_coefficients() const;
  std::int64_t evaluate_at_one() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
  friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const;

 private:
  void add_term(int exponent, std::int64_t coefficient);
  std::map<int, std::int64_t> terms_;
};

/// [[exponent, coefficient], ...] in ascending exponent order.
nlohmann::json laurent_to_json(const LaurentPoly& p);

}  // namespace fin2
