#include "fin2/soergel.hpp"

#include <algorithm>

#include "fin2/projclass.hpp"

namespace fin2 {

namespace {

LaurentPoly v_inv_minus_v() { return LaurentPoly::v_inverse() - LaurentPoly::v(); }

void add_scaled(HeckeElement& into, const HeckeElement& h, const LaurentPoly& c) {
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (!h[x].is_zero()) into[x] += c * h[x];
  }
}

bool is_zero(const HeckeElement& h) {
  return std::all_of(h.begin(), h.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

// Non-positive part of p, made bar symmetric.
LaurentPoly symmetric_low_part(const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (e > 0) continue;
    out += LaurentPoly::monomial(c, e);
    if (e < 0) out += LaurentPoly::monomial(c, -e);
  }
  return out;
}

}  // namespace

HeckeElement hecke_standard(const CoxeterSystem& w, ElementIndex x) {
  HeckeElement h(w.order());
  h.at(x) = 1;
  return h;
}

HeckeElement hecke_right_multiply(const CoxeterSystem& w, const HeckeElement& h, GeneratorIndex s) {
  HeckeElement out(w.order());
  for (ElementIndex x = 0; x < h.size(); ++x) {
    if (h[x].is_zero()) continue;
    const ElementIndex xs = w.right_multiply(x, s);
    out[xs] += h[x];
    if (w.length(xs) < w.length(x)) out[x] += h[x] * v_inv_minus_v();
  }
  return out;
}

HeckeElement hecke_left_multiply(const CoxeterSystem& w, GeneratorIndex s, const HeckeElement& h) {
  HeckeElement out(w.order());
  for (ElementIndex x = 0; x < h.size(); ++x) {
    if (h[x].is_zero()) continue;
    const ElementIndex sx = w.left_multiply(s, x);
    out[sx] += h[x];
    if (w.length(sx) < w.length(x)) out[x] += h[x] * v_inv_minus_v();
  }
  return out;
}

HeckeElement hecke_times_standard(const CoxeterSystem& w, const HeckeElement& x, ElementIndex u) {
  HeckeElement out = x;
  for (GeneratorIndex s : w.reduced_word(u)) out = hecke_right_multiply(w, out, s);
  return out;
}

HeckeElement hecke_product(const CoxeterSystem& w, const HeckeElement& x, const HeckeElement& y) {
  HeckeElement out(w.order());
  for (ElementIndex u = 0; u < y.size(); ++u) {
    if (!y[u].is_zero()) add_scaled(out, hecke_times_standard(w, x, u), y[u]);
  }
  return out;
}

HeckeElement hecke_bar(const CoxeterSystem& w, const HeckeElement& h) {
  // bar(H_x) = H_{s1}^-1 ... H_{sk}^-1 for a reduced word s1...sk of x,
  // with H_s^-1 = H_s + (v - v^-1).
  std::vector<HeckeElement> bar_standard(w.order());
  bar_standard[w.identity()] = hecke_standard(w, w.identity());
  for (ElementIndex x = 1; x < w.order(); ++x) {
    const auto& word = w.reduced_word(x);
    const GeneratorIndex s = word.back();
    const HeckeElement& prefix = bar_standard[w.right_multiply(x, s)];
    HeckeElement next = hecke_right_multiply(w, prefix, s);
    add_scaled(next, prefix, LaurentPoly::v() - LaurentPoly::v_inverse());
    bar_standard[x] = std::move(next);
  }
  HeckeElement out(w.order());
  for (ElementIndex x = 0; x < h.size(); ++x) {
    if (!h[x].is_zero()) add_scaled(out, bar_standard[x], h[x].bar());
  }
  return out;
}

KLTable kl_table(const CoxeterSystem& w) {
  std::vector<HeckeElement> basis(w.order());
  basis[w.identity()] = hecke_standard(w, w.identity());
  for (ElementIndex x = 1; x < w.order(); ++x) {
    const GeneratorIndex s = w.reduced_word(x).front();
    const ElementIndex rest = w.left_multiply(s, x);
    HeckeElement c = hecke_left_multiply(w, s, basis[rest]);
    add_scaled(c, basis[rest], LaurentPoly::v());
    for (ElementIndex z = x; z-- > 0;) {
      if (c[z].is_zero()) continue;
      const LaurentPoly q = symmetric_low_part(c[z]);
      if (!q.is_zero()) add_scaled(c, basis[z], LaurentPoly() - q);
    }
    if (c[x] != LaurentPoly(1)) throw Error("PositivityViolated", "h(w,w) != 1 for w = " + w.name(x));
    for (ElementIndex z = 0; z < x; ++z) {
      if (c[z].is_zero()) continue;
      if (!w.bruhat_leq(z, x)) {
        throw Error("PositivityViolated", "b_" + w.name(x) + " has support outside its Bruhat interval");
      }
      if (c[z].min_degree() < 1 || !c[z].has_nonnegative_coefficients()) {
        throw Error("PositivityViolated", "h(" + w.name(z) + "," + w.name(x) + ") = " + c[z].to_string());
      }
    }
    basis[x] = std::move(c);
  }
  KLTable kl(std::move(basis));
  check_bar_invariance(w, kl);
  return kl;
}

void check_bar_invariance(const CoxeterSystem& w, const KLTable& kl) {
  for (ElementIndex x = 0; x < kl.size(); ++x) {
    if (hecke_bar(w, kl.basis_element(x)) != kl.basis_element(x)) {
      throw Error("BarInvarianceViolated", "b_" + w.name(x) + " is not bar invariant");
    }
  }
}

std::map<ElementIndex, LaurentPoly> kl_structure_constants(const CoxeterSystem& w, const KLTable& kl, ElementIndex x,
                                                          ElementIndex y) {
  HeckeElement rest = hecke_product(w, kl.basis_element(x), kl.basis_element(y));
  std::map<ElementIndex, LaurentPoly> out;
  for (ElementIndex z = w.order(); z-- > 0;) {
    if (rest[z].is_zero()) continue;
    const LaurentPoly c = rest[z];
    add_scaled(rest, kl.basis_element(z), LaurentPoly() - c);
    out.emplace(z, c);
  }
  if (!is_zero(rest)) {
    throw Error("ConversionResidue", "b_" + w.name(x) + " b_" + w.name(y) + " left a remainder");
  }
  return out;
}

std::string soergel_mor_name(const CoxeterSystem& w, ElementIndex x) { return "B_" + w.name(x); }

PresentationSpec soergel_spec(const CoxeterSystem& w, const KLTable& kl) {
  PresentationSpec spec;
  spec.objects = {"i"};
  spec.identities["i"] = soergel_mor_name(w, w.identity());
  for (ElementIndex x = 1; x < w.order(); ++x) spec.onemorphisms.push_back({soergel_mor_name(w, x), "i", "i", false});
  for (ElementIndex x = 0; x < w.order(); ++x) {
    for (ElementIndex y = 0; y < w.order(); ++y) {
      CompositionEntry entry{soergel_mor_name(w, x), soergel_mor_name(w, y), {}};
      for (const auto& [z, c] : kl_structure_constants(w, kl, x, y)) {
        if (!c.has_nonnegative_coefficients() || !c.is_bar_invariant()) {
          throw Error("NegativeStructureConstant", "coefficient of b_" + w.name(z) + " in b_" + w.name(x) + " b_" +
                                                       w.name(y) + " is " + c.to_string());
        }
        entry.result[soergel_mor_name(w, z)] = static_cast<Multiplicity>(c.evaluate_at_one());
      }
      spec.composition.push_back(std::move(entry));
    }
  }
  return spec;
}

TwoCatPresentation build_soergel_2cat(const CoxeterSystem& w, const KLTable& kl) {
  return TwoCatPresentation(soergel_spec(w, kl));
}

TwoCatPresentation build_soergel_2cat(const CoxeterSystem& w) { return build_soergel_2cat(w, kl_table(w)); }

bool verify_soergel_idempotents(const TwoCatPresentation& p) {
  for (const auto& d : classify_projectives(p)) {
    if (!p.is_identity(d.g)) return false;
  }
  for (MorIndex m = 0; m < p.mor_count(); ++m) {
    if (!p.is_identity(m) && is_weakly_idempotent(p, single(p, m))) return false;
  }
  return true;
}

bool verify_soergel_idempotents(const CoxeterSystem& w) { return verify_soergel_idempotents(build_soergel_2cat(w)); }

nlohmann::json kl_table_to_json(const CoxeterSystem& w, const KLTable& kl) {
  nlohmann::json elements = nlohmann::json::array();
  nlohmann::json h = nlohmann::json::object();
  for (ElementIndex x = 0; x < w.order(); ++x) {
    elements.push_back({{"name", w.name(x)}, {"length", w.length(x)}});
    for (ElementIndex z = 0; z <= x; ++z) {
      if (!kl.h(z, x).is_zero()) h[w.name(z) + "|" + w.name(x)] = laurent_to_json(kl.h(z, x));
    }
  }
  return {{"order", w.order()}, {"elements", elements}, {"h", h}};
}

}  // namespace fin2
