#pragma once

#include <optional>
#include <random>
#include <vector>

#include "fin2/endodecomp.hpp"

namespace fin2::testing {

// Every endomorphism sum of object i with total multiplicity <= max_total.
inline std::vector<MorSum> sums_up_to(const TwoCatPresentation& p, ObjectIndex i, Multiplicity max_total) {
  const auto mors = indecomposables_between(p, i, i);
  std::vector<MorSum> out;
  std::vector<Multiplicity> counts(mors.size(), 0);
  while (true) {
    MorSum f = zero_sum(i, i);
    for (std::size_t k = 0; k < mors.size(); ++k)
      if (counts[k]) f.terms[mors[k]] = counts[k];
    if (f.total() <= max_total) out.push_back(f);
    std::size_t k = 0;
    while (k < counts.size() && ++counts[k] > max_total) counts[k++] = 0;
    if (k == counts.size()) break;
  }
  return out;
}

// Idempotent candidates shaped like a block-triangular idempotent: diagonal
// entries are weak idempotents or zero, entries above the diagonal are
// arbitrary small sums. Only candidates that square to themselves are kept.
class TriangularIdempotents {
 public:
  explicit TriangularIdempotents(PresentationPtr p) : p_(std::move(p)) {
    for (ObjectIndex i = 0; i < p_->object_count(); ++i) {
      std::vector<MorSum> diagonal{zero_sum(i, i)};
      for (const auto& f : sums_up_to(*p_, i, 3))
        if (!f.is_zero() && is_weakly_idempotent(*p_, f)) diagonal.push_back(f);
      diagonal_.push_back(std::move(diagonal));
    }
  }

  std::optional<EndoMatrix> draw(std::mt19937_64& rng, std::size_t max_size, Multiplicity max_total) const {
    const auto k = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    std::vector<ObjectIndex> summands(k);
    for (auto& s : summands) s = std::uniform_int_distribution<ObjectIndex>(0, p_->object_count() - 1)(rng);
    EndoMatrix phi = sample_endo(p_, summands, max_total, rng);
    for (std::size_t r = 0; r < k; ++r) {
      const auto& options = diagonal_[summands[r]];
      phi.set(r, r, options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
      for (std::size_t s = 0; s < r; ++s) phi.set(r, s, zero_sum(summands[s], summands[r]));
    }
    if (!is_idempotent_endo(phi)) return std::nullopt;
    return phi;
  }

 private:
  PresentationPtr p_;
  std::vector<std::vector<MorSum>> diagonal_;
};

}  // namespace fin2::testing
