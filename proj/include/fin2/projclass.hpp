#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fin2/endodecomp.hpp"
#include "fin2/twocat.hpp"

namespace fin2 {

/// Data of an indecomposable projective 2-representation: an indecomposable
/// G on `object` with G∘G = G ⊕ Q, G∘Q = Q∘G = Q∘Q = 0 and E = G∘G weakly
/// idempotent.
struct ProjectiveDescriptor {
  ObjectIndex object = 0;
  MorIndex g = 0;
  MorSum q;
  MorSum e;
};

/// Independent re-check of the three descriptor conditions.
bool descriptor_holds(const TwoCatPresentation& p, const ProjectiveDescriptor& d);

/// All descriptors, ordered by (object, G). Identities always qualify.
std::vector<ProjectiveDescriptor> classify_projectives(const TwoCatPresentation& p);

/// The 1x1 idempotent endomorphism [E] of P_object whose image is the retract.
EndoMatrix retract_idempotent(const PresentationPtr& p, const ProjectiveDescriptor& d);

struct LocalProduct {
  MorIndex f = 0;
  MorIndex f2 = 0;
  MorSum value;  // (E∘F∘E) ∘ (E∘F'∘E)
};

struct LocalEndoTable {
  std::vector<std::pair<MorIndex, MorSum>> sandwiches;  // F -> E∘F∘E
  std::vector<LocalProduct> products;
};

/// Multiplicity shadow of the endomorphism category of the retract: every
/// E∘F∘E for F in C(i,i) and all pairwise products, expanded in P's
/// indecomposables. Deliberately not a presentation, since whether E∘F∘E is
/// indecomposable there is not visible at this level.
LocalEndoTable local_endo_products(const TwoCatPresentation& p, const ProjectiveDescriptor& d);

/// below[i][j] is true iff i ⪯ j: some Φ: j -> i and Ψ: i -> j have Φ∘Ψ ≅ 1_i.
/// Only indecomposable pairs are searched: 1_i is indecomposable, so any sums
/// realizing it contain a single indecomposable pair that already does.
using Preorder = std::vector<std::vector<bool>>;
Preorder preorder(const TwoCatPresentation& p);

/// A witnessing pair (Φ, Ψ) for i ⪯ j, if any.
std::optional<std::pair<MorIndex, MorIndex>> preorder_witness(const TwoCatPresentation& p, ObjectIndex i, ObjectIndex j);

/// One representative (lexicographically least name) per maximal class of ⪯.
std::vector<ObjectIndex> essential_objects(const TwoCatPresentation& p);

/// Pairs of descriptors on different objects whose G's have mutually inverse
/// indecomposable witnesses at multiplicity level. Necessary for the retracts
/// to be equivalent, not sufficient.
std::vector<std::pair<std::size_t, std::size_t>> equivalence_hints(const TwoCatPresentation& p,
                                                                   const std::vector<ProjectiveDescriptor>& ds);

}  // namespace fin2
