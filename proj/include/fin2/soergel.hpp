#pragma once

#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "fin2/coxeter.hpp"
#include "fin2/laurent.hpp"
#include "fin2/twocat.hpp"

namespace fin2 {

/// Element of the Hecke algebra in the standard basis: coefficient of H_w at
/// index w. Normalization: H_s^2 = (v^-1 - v) H_s + 1.
using HeckeElement = std::vector<LaurentPoly>;

HeckeElement hecke_standard(const CoxeterSystem& w, ElementIndex x);
HeckeElement hecke_right_multiply(const CoxeterSystem& w, const HeckeElement& h, GeneratorIndex s);
HeckeElement hecke_left_multiply(const CoxeterSystem& w, GeneratorIndex s, const HeckeElement& h);
/// x * H_u, by right multiplication along the reduced word of u.
HeckeElement hecke_times_standard(const CoxeterSystem& w, const HeckeElement& x, ElementIndex u);
HeckeElement hecke_product(const CoxeterSystem& w, const HeckeElement& x, const HeckeElement& y);

/// Bar involution: v -> v^-1 and H_x -> (H_{x^-1})^-1.
HeckeElement hecke_bar(const CoxeterSystem& w, const HeckeElement& h);

/// Canonical basis b_w = sum over x <= w of h(x, w) H_x.
class KLTable {
 public:
  explicit KLTable(std::vector<HeckeElement> basis) : basis_(std::move(basis)) {}

  std::size_t size() const { return basis_.size(); }
  const HeckeElement& basis_element(ElementIndex w) const { return basis_.at(w); }
  const LaurentPoly& h(ElementIndex x, ElementIndex w) const { return basis_.at(w).at(x); }

 private:
  std::vector<HeckeElement> basis_;
};

/// Builds b_w inductively from b_s = H_s + v and asserts: h(w,w) = 1,
/// h(x,w) in v·Z>=0[v] for x < w, support inside the Bruhat interval, and
/// bar invariance by explicit expansion.
KLTable kl_table(const CoxeterSystem& w);

/// Throws BarInvarianceViolated unless every b_w is bar invariant.
void check_bar_invariance(const CoxeterSystem& w, const KLTable& kl);

/// c with b_x b_y = sum over z of c[z] b_z. Throws ConversionResidue if the
/// product does not expand in the canonical basis.
std::map<ElementIndex, LaurentPoly> kl_structure_constants(const CoxeterSystem& w, const KLTable& kl, ElementIndex x,
                                                          ElementIndex y);

/// One object "i"; indecomposables B_w with B_e the identity;
/// B_x ∘ B_y = sum over z of c[z](1) B_z. Throws NegativeStructureConstant if
/// some c[z] has a negative coefficient or is not bar symmetric.
TwoCatPresentation build_soergel_2cat(const CoxeterSystem& w, const KLTable& kl);
TwoCatPresentation build_soergel_2cat(const CoxeterSystem& w);
PresentationSpec soergel_spec(const CoxeterSystem& w, const KLTable& kl);

std::string soergel_mor_name(const CoxeterSystem& w, ElementIndex x);

/// True iff the identity is the only weakly idempotent indecomposable and the
/// only projective descriptor.
bool verify_soergel_idempotents(const TwoCatPresentation& p);
bool verify_soergel_idempotents(const CoxeterSystem& w);

/// {"order", "elements": [{"name","length"}], "h": {"x|w": [[exp,coef],...]}}
nlohmann::json kl_table_to_json(const CoxeterSystem& w, const KLTable& kl);

}  // namespace fin2
