#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fin2/nnimat.hpp"
#include "fin2/twocat.hpp"

namespace fin2 {

using PresentationPtr = std::shared_ptr<const TwoCatPresentation>;

/// Endomorphism of a direct sum of principal 2-representations P_{i_1} ⊕ ... ⊕ P_{i_k},
/// realized as right multiplication by a k x k matrix of 1-morphisms.
///
/// Entry (r, s) is a sum i_s -> i_r. A tuple (F_r) with F_r : i_r -> j is sent
/// to the tuple whose s-component is ⊕_r F_r ∘ entry(r, s).
class EndoMatrix {
 public:
  EndoMatrix() = default;
  EndoMatrix(PresentationPtr presentation, std::vector<ObjectIndex> summands);

  static EndoMatrix identity(PresentationPtr presentation, std::vector<ObjectIndex> summands);

  std::size_t size() const { return summands_.size(); }
  const TwoCatPresentation& presentation() const { return *presentation_; }
  const PresentationPtr& presentation_ptr() const { return presentation_; }
  const std::vector<ObjectIndex>& summands() const { return summands_; }

  const MorSum& at(std::size_t r, std::size_t s) const { return entries_.at(r * size() + s); }
  /// Replaces entry (r, s); throws TypeMismatch unless the sum is i_s -> i_r.
  void set(std::size_t r, std::size_t s, MorSum value);

  bool is_zero() const;
  bool same_shape(const EndoMatrix& other) const;

  friend bool operator==(const EndoMatrix& x, const EndoMatrix& y) {
    return x.presentation_ == y.presentation_ && x.summands_ == y.summands_ && x.entries_ == y.entries_;
  }

 private:
  PresentationPtr presentation_;
  std::vector<ObjectIndex> summands_;
  std::vector<MorSum> entries_;
};

/// "first, then second": result(r, t) = ⊕_s compose(first(r, s), second(s, t)).
EndoMatrix endo_compose(const EndoMatrix& first, const EndoMatrix& second);
EndoMatrix endo_sum(const EndoMatrix& x, const EndoMatrix& y);
/// Entrywise multiset difference; throws SubtractionUnderflow.
EndoMatrix endo_subtract(const EndoMatrix& x, const EndoMatrix& y);

/// Row/column labels of the multiplicity matrix: (block, indecomposable with source i_block).
std::vector<std::pair<std::size_t, MorIndex>> multiplicity_labels(const EndoMatrix& phi);

/// Entry (F, G) of block (r, s) is the multiplicity of G in F ∘ phi(r, s).
/// With this layout multiplicity_matrix(endo_compose(x, y)) equals
/// multiplicity_matrix(x) * multiplicity_matrix(y).
NNIMatrix multiplicity_matrix(const EndoMatrix& phi);

/// Checks phi∘phi == phi entrywise and M_phi^2 == M_phi; throws
/// InternalDisagreement if the two answers differ.
bool is_idempotent_endo(const EndoMatrix& phi);

/// One nonzero diagonal position of M_phi and the unique summand responsible for it.
struct DiagonalWitness {
  std::size_t block = 0;
  MorIndex f = 0;  // indexes the nonzero diagonal entry
  MorIndex g = 0;  // unique summand of phi(block, block) with F in F∘G
  MorSum x;        // F∘G = F ⊕ X
  MorSum q;        // G∘G = G ⊕ Q
};

struct GammaThetaPi {
  EndoMatrix gamma;
  EndoMatrix theta;
  EndoMatrix pi;
  std::vector<DiagonalWitness> witnesses;
};

/// Splits an idempotent phi as gamma ⊕ theta ⊕ pi: gamma is the
/// multiplicity-free diagonal part selected by the nonzero diagonal of M_phi,
/// gamma∘gamma = gamma ⊕ theta, and pi is what remains.
GammaThetaPi gamma_theta_pi(const EndoMatrix& phi);

struct IdentityCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct IdentityReport {
  GammaThetaPi parts;
  std::vector<IdentityCheck> checks;
  bool all_hold() const;
};

/// The thirteen identities an idempotent endomorphism's gamma/theta/pi parts
/// satisfy. Products are written as composition of endomorphisms: XY means
/// "Y first, then X".
IdentityReport verify_idempotent_identities(const EndoMatrix& phi);

EndoMatrix endo_from_json(PresentationPtr presentation, const nlohmann::json& j);
nlohmann::json endo_to_json(const EndoMatrix& phi);
std::string format_endo(const EndoMatrix& phi);

/// Uniformly random endomorphism: every entry gets a total multiplicity drawn
/// from [0, max_total], spread over indecomposables of the right type.
EndoMatrix sample_endo(PresentationPtr presentation, std::vector<ObjectIndex> summands, Multiplicity max_total,
                       std::mt19937_64& rng);

}  // namespace fin2
