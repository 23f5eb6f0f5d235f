#include "fin2/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "fin2/error.hpp"

namespace fin2 {

namespace {

std::int64_t add_checked(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw Error("Overflow", "Laurent coefficient overflow");
  return out;
}

std::int64_t mul_checked(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw Error("Overflow", "Laurent coefficient overflow");
  return out;
}

}  // namespace

LaurentPoly::LaurentPoly(std::int64_t constant) {
  if (constant != 0) terms_.emplace(0, constant);
}

LaurentPoly LaurentPoly::monomial(std::int64_t coefficient, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, coefficient);
  return p;
}

void LaurentPoly::add_term(int exponent, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coefficient);
  if (inserted) return;
  it->second = add_checked(it->second, coefficient);
  if (it->second == 0) terms_.erase(it);
}

std::int64_t LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

bool LaurentPoly::has_nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

std::int64_t LaurentPoly::evaluate_at_one() const {
  std::int64_t sum = 0;
  for (const auto& [e, c] : terms_) sum = add_checked(sum, c);
  return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, mul_checked(c, -1));
  return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
  LaurentPoly out;
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) out.add_term(ex + ey, mul_checked(cx, cy));
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    const std::int64_t mag = c < 0 ? -c : c;
    if (e == 0) {
      out << mag;
      continue;
    }
    if (mag != 1) out << mag;
    out << "v";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

nlohmann::json laurent_to_json(const LaurentPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({e, c});
  return out;
}

}  // namespace fin2
