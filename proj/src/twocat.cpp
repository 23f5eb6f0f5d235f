#include "fin2/twocat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fin2/nnimat.hpp"

namespace fin2 {

TwoCatPresentation::TwoCatPresentation(const PresentationSpec& spec) {
  for (const auto& name : spec.objects) {
    if (name.empty()) {
      issues_.push_back("EmptyName: object with empty name");
      continue;
    }
    if (object_lookup_.count(name)) {
      issues_.push_back("DuplicateObject: " + name);
      continue;
    }
    object_lookup_.emplace(name, objects_.size());
    objects_.push_back(name);
  }

  // Collect identities and non-identities, then sort by id.
  std::vector<Indecomposable1Mor> all;
  std::set<std::string> seen_ids;
  auto admit = [&](Indecomposable1Mor m) {
    if (m.id.empty()) {
      issues_.push_back("EmptyName: 1-morphism with empty id");
      return;
    }
    if (!seen_ids.insert(m.id).second) {
      issues_.push_back("DuplicateId: " + m.id);
      return;
    }
    if (!object_lookup_.count(m.src) || !object_lookup_.count(m.tgt)) {
      issues_.push_back("UnknownObject: 1-morphism " + m.id + " has endpoint outside the object list");
      return;
    }
    all.push_back(std::move(m));
  };
  for (const auto& [object, id] : spec.identities) {
    if (!object_lookup_.count(object)) {
      issues_.push_back("UnknownObject: identity declared for " + object);
      continue;
    }
    admit({id, object, object, true});
  }
  for (auto m : spec.onemorphisms) {
    m.is_identity = false;
    admit(std::move(m));
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.id < y.id; });

  identity_of_.assign(objects_.size(), std::nullopt);
  for (const auto& m : all) {
    const MorIndex idx = mors_.size();
    mor_lookup_.emplace(m.id, idx);
    mor_src_.push_back(object_lookup_.at(m.src));
    mor_tgt_.push_back(object_lookup_.at(m.tgt));
    if (m.is_identity) identity_of_[object_lookup_.at(m.src)] = idx;
    mors_.push_back(m);
  }
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!identity_of_[i]) issues_.push_back("MissingIdentity: object " + objects_[i]);
  }

  const std::size_t n = mors_.size();
  table_.assign(n * n, {});
  has_entry_.assign(n * n, false);
  synthesized_.assign(n * n, false);

  for (const auto& entry : spec.composition) {
    auto l = find_mor(entry.left);
    auto r = find_mor(entry.right);
    if (!l || !r) {
      issues_.push_back("UnknownId: composition entry (" + entry.left + ", " + entry.right + ")");
      continue;
    }
    if (mor_src_[*l] != mor_tgt_[*r]) {
      issues_.push_back("TypeMismatch: composition entry (" + entry.left + ", " + entry.right + ") is not composable");
      continue;
    }
    const std::size_t slot = *l * n + *r;
    if (has_entry_[slot]) {
      issues_.push_back("DuplicateEntry: composition entry (" + entry.left + ", " + entry.right + ")");
      continue;
    }
    Terms terms;
    bool bad = false;
    for (const auto& [id, mult] : entry.result) {
      auto t = find_mor(id);
      if (!t) {
        issues_.push_back("UnknownId: " + id + " in result of (" + entry.left + ", " + entry.right + ")");
        bad = true;
        continue;
      }
      if (mor_src_[*t] != mor_src_[*r] || mor_tgt_[*t] != mor_tgt_[*l]) {
        issues_.push_back("TypeMismatch: " + id + " in result of (" + entry.left + ", " + entry.right + ")");
        bad = true;
        continue;
      }
      if (mult > 0) terms.emplace_back(*t, mult);
    }
    if (bad) continue;
    std::sort(terms.begin(), terms.end());
    table_[slot] = std::move(terms);
    has_entry_[slot] = true;
  }

  // Identity laws are synthesized wherever the input left them out.
  for (MorIndex f = 0; f < n; ++f) {
    if (auto id_t = identity_of_[mor_tgt_[f]]; id_t && !has_entry_[*id_t * n + f]) {
      table_[*id_t * n + f] = {{f, 1}};
      has_entry_[*id_t * n + f] = true;
      synthesized_[*id_t * n + f] = true;
    }
    if (auto id_s = identity_of_[mor_src_[f]]; id_s && !has_entry_[f * n + *id_s]) {
      table_[f * n + *id_s] = {{f, 1}};
      has_entry_[f * n + *id_s] = true;
      synthesized_[f * n + *id_s] = true;
    }
  }
}

std::optional<ObjectIndex> TwoCatPresentation::find_object(const std::string& name) const {
  auto it = object_lookup_.find(name);
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

ObjectIndex TwoCatPresentation::object_at(const std::string& name) const {
  if (auto i = find_object(name)) return *i;
  throw Error("UnknownObject", "no object named " + name);
}

std::optional<MorIndex> TwoCatPresentation::find_mor(const std::string& id) const {
  auto it = mor_lookup_.find(id);
  if (it == mor_lookup_.end()) return std::nullopt;
  return it->second;
}

MorIndex TwoCatPresentation::mor_at(const std::string& id) const {
  if (auto m = find_mor(id)) return *m;
  throw Error("UnknownId", "no 1-morphism with id " + id);
}

MorIndex TwoCatPresentation::identity(ObjectIndex i) const {
  if (auto m = identity_of_.at(i)) return *m;
  throw Error("MissingIdentity", "object " + objects_.at(i) + " has no identity");
}

const Terms& TwoCatPresentation::product(MorIndex left, MorIndex right) const {
  if (mor_src_.at(left) != mor_tgt_.at(right)) {
    throw Error("TypeMismatch", "cannot compose " + mors_[left].id + " after " + mors_[right].id);
  }
  return table_[left * mors_.size() + right];
}

Multiplicity MorSum::total() const {
  Multiplicity t = 0;
  for (const auto& [m, k] : terms) t = checked_add(t, k);
  return t;
}

MorSum zero_sum(ObjectIndex src, ObjectIndex tgt) { return MorSum{src, tgt, {}}; }

MorSum single(const TwoCatPresentation& p, MorIndex m, Multiplicity mult) {
  MorSum out{p.src(m), p.tgt(m), {}};
  if (mult > 0) out.terms.emplace(m, mult);
  return out;
}

MorSum identity_sum(const TwoCatPresentation& p, ObjectIndex i) { return single(p, p.identity(i)); }

namespace {

void require_same_type(const MorSum& f, const MorSum& g) {
  if (f.src != g.src || f.tgt != g.tgt) throw Error("TypeMismatch", "direct sum of 1-morphisms between different objects");
}

}  // namespace

MorSum& accumulate(MorSum& into, const MorSum& g) {
  require_same_type(into, g);
  for (const auto& [m, k] : g.terms) {
    auto& slot = into.terms[m];
    slot = checked_add(slot, k);
  }
  return into;
}

MorSum direct_sum(const MorSum& f, const MorSum& g) {
  MorSum out = f;
  return accumulate(out, g);
}

bool contains(const MorSum& f, const MorSum& g) {
  if (f.src != g.src || f.tgt != g.tgt) return g.is_zero();
  return std::all_of(g.terms.begin(), g.terms.end(), [&](const auto& t) { return f.multiplicity(t.first) >= t.second; });
}

MorSum subtract(const MorSum& f, const MorSum& g) {
  require_same_type(f, g);
  MorSum out = f;
  for (const auto& [m, k] : g.terms) {
    auto it = out.terms.find(m);
    if (it == out.terms.end() || it->second < k) {
      throw Error("SubtractionUnderflow", "subtrahend is not a summand");
    }
    it->second -= k;
    if (it->second == 0) out.terms.erase(it);
  }
  return out;
}

MorSum compose_sums(const TwoCatPresentation& p, const MorSum& f, const MorSum& g) {
  if (f.src != g.tgt) throw Error("TypeMismatch", "composition needs src(f) == tgt(g)");
  MorSum out = zero_sum(g.src, f.tgt);
  for (const auto& [fm, fk] : f.terms) {
    for (const auto& [gm, gk] : g.terms) {
      const Multiplicity scale = checked_mul(fk, gk);
      for (const auto& [h, hk] : p.product(fm, gm)) {
        auto& slot = out.terms[h];
        slot = checked_add(slot, checked_mul(scale, hk));
      }
    }
  }
  return out;
}

bool is_weakly_idempotent(const TwoCatPresentation& p, const MorSum& f) {
  if (f.src != f.tgt) throw Error("TypeMismatch", "weak idempotency needs an endomorphism");
  return !f.is_zero() && compose_sums(p, f, f) == f;
}

std::vector<MorIndex> indecomposables_between(const TwoCatPresentation& p, ObjectIndex i, ObjectIndex j) {
  std::vector<MorIndex> out;
  for (MorIndex m = 0; m < p.mor_count(); ++m) {
    if (p.src(m) == i && p.tgt(m) == j) out.push_back(m);
  }
  return out;
}

std::vector<MorIndex> indecomposables_between(const TwoCatPresentation& p, const std::string& i, const std::string& j) {
  return indecomposables_between(p, p.object_at(i), p.object_at(j));
}

bool ValidationReport::has(const std::string& kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const auto& v) { return v.kind == kind; });
}

ValidationReport validate_presentation(const TwoCatPresentation& p) {
  ValidationReport report;
  for (const auto& issue : p.structural_issues()) {
    const auto colon = issue.find(':');
    report.violations.push_back({issue.substr(0, colon), colon == std::string::npos ? "" : issue.substr(colon + 2)});
  }

  const std::size_t n = p.mor_count();
  if (p.object_count() == 0) report.violations.push_back({"NoObjects", "a presentation needs at least one object"});
  for (MorIndex f = 0; f < n; ++f) {
    const MorSum expected = single(p, f);
    for (const bool left_side : {true, false}) {
      MorIndex id;
      try {
        id = p.identity(left_side ? p.tgt(f) : p.src(f));
      } catch (const Error&) {
        continue;
      }
      const MorSum got = left_side ? compose_sums(p, single(p, id), expected) : compose_sums(p, expected, single(p, id));
      if (got != expected) {
        report.violations.push_back({"IdentityLaw", (left_side ? p.mor_id(id) + "∘" + p.mor_id(f)
                                                               : p.mor_id(f) + "∘" + p.mor_id(id)) +
                                                        " = " + format_sum(p, got)});
      }
    }
  }

  for (MorIndex f = 0; f < n; ++f) {
    for (MorIndex g = 0; g < n; ++g) {
      if (p.src(f) != p.tgt(g)) continue;
      const MorSum fg = compose_sums(p, single(p, f), single(p, g));
      for (MorIndex h = 0; h < n; ++h) {
        if (p.src(g) != p.tgt(h)) continue;
        const MorSum left = compose_sums(p, fg, single(p, h));
        const MorSum right = compose_sums(p, single(p, f), compose_sums(p, single(p, g), single(p, h)));
        if (left != right) {
          report.violations.push_back({"Associativity", "(" + p.mor_id(f) + ", " + p.mor_id(g) + ", " + p.mor_id(h) +
                                                            "): " + format_sum(p, left) + " vs " + format_sum(p, right)});
        }
      }
    }
  }
  return report;
}

std::string format_sum(const TwoCatPresentation& p, const MorSum& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, k] : f.terms) {
    if (!first) out << " + ";
    first = false;
    if (k != 1) out << k << "*";
    out << p.mor_id(m);
  }
  return out.str();
}

PresentationSpec presentation_spec_from_json(const nlohmann::json& j) {
  try {
    PresentationSpec spec;
    spec.objects = j.at("objects").get<std::vector<std::string>>();
    if (j.contains("identities")) spec.identities = j.at("identities").get<std::map<std::string, std::string>>();
    if (j.contains("onemorphisms")) {
      for (const auto& m : j.at("onemorphisms")) {
        spec.onemorphisms.push_back({m.at("id").get<std::string>(), m.at("src").get<std::string>(),
                                     m.at("tgt").get<std::string>(), false});
      }
    }
    if (j.contains("composition")) {
      for (const auto& e : j.at("composition")) {
        spec.composition.push_back({e.at("left").get<std::string>(), e.at("right").get<std::string>(),
                                    e.at("result").get<std::map<std::string, Multiplicity>>()});
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

TwoCatPresentation presentation_from_json(const nlohmann::json& j) {
  return TwoCatPresentation(presentation_spec_from_json(j));
}

nlohmann::json presentation_to_json(const TwoCatPresentation& p) {
  nlohmann::json identities = nlohmann::json::object();
  nlohmann::json onemors = nlohmann::json::array();
  for (MorIndex m = 0; m < p.mor_count(); ++m) {
    const auto& mor = p.mor(m);
    if (mor.is_identity) {
      identities[mor.src] = mor.id;
    } else {
      onemors.push_back({{"id", mor.id}, {"src", mor.src}, {"tgt", mor.tgt}});
    }
  }
  nlohmann::json composition = nlohmann::json::array();
  for (MorIndex l = 0; l < p.mor_count(); ++l) {
    for (MorIndex r = 0; r < p.mor_count(); ++r) {
      if (p.src(l) != p.tgt(r) || !p.has_entry(l, r) || p.is_synthesized(l, r)) continue;
      const Terms& terms = p.product(l, r);
      if (terms.empty()) continue;
      const bool identity_law = (p.is_identity(l) && terms == Terms{{r, 1}}) || (p.is_identity(r) && terms == Terms{{l, 1}});
      if (identity_law) continue;
      nlohmann::json result = nlohmann::json::object();
      for (const auto& [m, k] : terms) result[p.mor_id(m)] = k;
      composition.push_back({{"left", p.mor_id(l)}, {"right", p.mor_id(r)}, {"result", result}});
    }
  }
  return {{"objects", p.objects()}, {"identities", identities}, {"onemorphisms", onemors}, {"composition", composition}};
}

MorSum sum_from_json(const TwoCatPresentation& p, const nlohmann::json& j, ObjectIndex src, ObjectIndex tgt) {
  if (!j.is_object()) throw Error("ParseError", "a 1-morphism sum must be a JSON object");
  MorSum out = zero_sum(src, tgt);
  for (const auto& [id, mult] : j.items()) {
    if (!mult.is_number_integer() || (!mult.is_number_unsigned() && mult.get<std::int64_t>() < 0)) throw Error("ParseError", "multiplicity of " + id + " must be a non-negative integer");
    const MorIndex m = p.mor_at(id);
    if (p.src(m) != src || p.tgt(m) != tgt) {
      throw Error("TypeMismatch", id + " is not a 1-morphism " + p.object_name(src) + " -> " + p.object_name(tgt));
    }
    const auto k = mult.get<Multiplicity>();
    if (k > 0) out.terms[m] = k;
  }
  return out;
}

nlohmann::json sum_to_json(const TwoCatPresentation& p, const MorSum& f) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [m, k] : f.terms) out[p.mor_id(m)] = k;
  return out;
}

}  // namespace fin2
