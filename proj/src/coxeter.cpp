#include "fin2/coxeter.hpp"

#include <algorithm>
#include <map>

namespace fin2 {

IntegerMatrix<std::int64_t> cartan_matrix(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  IntegerMatrix<std::int64_t> c = IntegerMatrix<std::int64_t>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) {
    if (m[s].size() != n) throw Error("ParseError", "Coxeter matrix must be square");
    if (m[s][s] != 1) throw Error("NonCrystallographic", "Coxeter matrix needs m(s,s) = 1");
    c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = 2;
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (m[s][t] != m[t][s]) throw Error("ParseError", "Coxeter matrix must be symmetric");
      std::int64_t short_entry = -1;
      std::int64_t long_entry = 0;
      switch (m[s][t]) {
        case 2: short_entry = 0; long_entry = 0; break;
        case 3: long_entry = -1; break;
        case 4: long_entry = -2; break;
        case 6: long_entry = -3; break;
        default:
          throw Error("NonCrystallographic", "m = " + std::to_string(m[s][t]) + " is not in {2, 3, 4, 6}");
      }
      c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = short_entry;
      c(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = long_entry;
    }
  }
  return c;
}

namespace {

std::vector<std::int64_t> flatten(const IntegerMatrix<std::int64_t>& x) {
  return std::vector<std::int64_t>(x.data(), x.data() + x.size());
}

}  // namespace

CoxeterSystem::CoxeterSystem(std::vector<std::string> generators, std::vector<std::vector<int>> m, std::size_t cap)
    : generators_(std::move(generators)), m_(std::move(m)) {
  if (generators_.size() != m_.size()) throw Error("ParseError", "one Coxeter matrix row per generator");
  const auto cartan = cartan_matrix(m_);
  const std::size_t r = rank();
  std::vector<IntegerMatrix<std::int64_t>> gens;
  for (std::size_t s = 0; s < r; ++s) gens.push_back(simple_reflection(cartan, static_cast<Eigen::Index>(s)));

  std::map<std::vector<std::int64_t>, ElementIndex> lookup;
  const auto n = static_cast<Eigen::Index>(r);
  matrices_.push_back(IntegerMatrix<std::int64_t>::Identity(n, n));
  length_.push_back(0);
  word_.emplace_back();
  lookup.emplace(flatten(matrices_[0]), 0);

  // Breadth-first over right multiplication; visiting parents in index order
  // and generators in order yields lexicographically least reduced words.
  for (ElementIndex w = 0; w < matrices_.size(); ++w) {
    for (GeneratorIndex s = 0; s < r; ++s) {
      IntegerMatrix<std::int64_t> next = matrices_[w] * gens[s];
      auto key = flatten(next);
      auto [it, inserted] = lookup.emplace(std::move(key), matrices_.size());
      if (inserted) {
        if (matrices_.size() >= cap) {
          throw Error("CapExceeded", "group order exceeds the cap of " + std::to_string(cap));
        }
        matrices_.push_back(std::move(next));
        length_.push_back(length_[w] + 1);
        auto word = word_[w];
        word.push_back(s);
        word_.push_back(std::move(word));
      }
      right_.push_back(it->second);
    }
  }

  left_.assign(order() * r, 0);
  for (ElementIndex w = 0; w < order(); ++w) {
    for (GeneratorIndex s = 0; s < r; ++s) left_[w * r + s] = lookup.at(flatten(gens[s] * matrices_[w]));
  }

  const bool short_names = std::all_of(generators_.begin(), generators_.end(), [](const auto& g) { return g.size() == 1; });
  for (ElementIndex w = 0; w < order(); ++w) {
    if (word_[w].empty()) {
      name_.push_back("e");
      continue;
    }
    std::string name;
    for (std::size_t k = 0; k < word_[w].size(); ++k) {
      if (k > 0 && !short_names) name += ".";
      name += generators_[word_[w][k]];
    }
    name_.push_back(std::move(name));
  }

  inverse_.resize(order());
  for (ElementIndex w = 0; w < order(); ++w) {
    ElementIndex x = identity();
    const auto& word = word_[w];
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = right_multiply(x, *it);
    inverse_[w] = x;
  }

  std::vector<bool> is_reflection(order(), false);
  for (ElementIndex w = 0; w < order(); ++w) {
    for (GeneratorIndex s = 0; s < r; ++s) is_reflection[multiply(right_multiply(w, s), inverse_[w])] = true;
  }
  for (ElementIndex t = 0; t < order(); ++t) {
    if (is_reflection[t]) reflections_.push_back(t);
  }

  const std::size_t words = (order() + 63) / 64;
  below_.assign(order(), std::vector<std::uint64_t>(words, 0));
  for (ElementIndex w = 0; w < order(); ++w) {
    for (ElementIndex t : reflections_) {
      const ElementIndex x = multiply(t, w);
      if (length_[x] >= length_[w]) continue;
      // x has smaller length, hence a smaller index, so its row is final.
      below_[w][x / 64] |= std::uint64_t{1} << (x % 64);
      for (std::size_t k = 0; k < words; ++k) below_[w][k] |= below_[x][k];
    }
  }
}

ElementIndex CoxeterSystem::find(const std::string& name) const {
  auto it = std::find(name_.begin(), name_.end(), name);
  if (it == name_.end()) throw Error("UnknownElement", "no element named " + name);
  return static_cast<ElementIndex>(it - name_.begin());
}

ElementIndex CoxeterSystem::multiply(ElementIndex x, ElementIndex y) const {
  for (GeneratorIndex s : word_.at(y)) x = right_multiply(x, s);
  return x;
}

bool CoxeterSystem::bruhat_leq(ElementIndex x, ElementIndex w) const {
  return x == w || ((below_.at(w)[x / 64] >> (x % 64)) & 1U) != 0;
}

CoxeterSystem build_coxeter(const std::vector<std::string>& generators, const std::vector<std::vector<int>>& m,
                            std::size_t cap) {
  return CoxeterSystem(generators, m, cap);
}

CoxeterSystem coxeter_from_json(const nlohmann::json& j, std::size_t cap) {
  try {
    return CoxeterSystem(j.at("generators").get<std::vector<std::string>>(), j.at("m").get<std::vector<std::vector<int>>>(),
                         cap);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

nlohmann::json coxeter_to_json(const CoxeterSystem& w) {
  return {{"generators", w.generators()}, {"m", w.coxeter_matrix()}};
}

}  // namespace fin2
