#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fin2/error.hpp"

namespace fin2 {

using ObjectIndex = std::size_t;
using MorIndex = std::size_t;
using Multiplicity = std::uint64_t;

struct Indecomposable1Mor {
  std::string id;
  std::string src;
  std::string tgt;
  bool is_identity = false;
};

struct CompositionEntry {
  std::string left;
  std::string right;
  std::map<std::string, Multiplicity> result;
};

/// A presentation exactly as written in a file. Nothing is checked here.
/// `onemorphisms` lists only non-identity indecomposables; identities are
/// declared per object in `identities`.
struct PresentationSpec {
  std::vector<std::string> objects;
  std::map<std::string, std::string> identities;
  std::vector<Indecomposable1Mor> onemorphisms;
  std::vector<CompositionEntry> composition;
};

/// Sparse product of two indecomposables: (indecomposable, multiplicity)
/// pairs sorted by index, no zero multiplicities.
using Terms = std::vector<std::pair<MorIndex, Multiplicity>>;

/// Decategorified finitary 2-category. Indecomposables are stored sorted by
/// id, so index order is lexicographic id order everywhere.
///
/// Composition convention: product(left, right) is "right first, then left",
/// defined when src(left) == tgt(right). Missing table entries are zero.
///
/// Construction never throws on bad content: malformed parts are dropped and
/// recorded in structural_issues(), which validate_presentation() reports.
class TwoCatPresentation {
 public:
  TwoCatPresentation() = default;
  explicit TwoCatPresentation(const PresentationSpec& spec);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t mor_count() const { return mors_.size(); }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object_name(ObjectIndex i) const { return objects_.at(i); }
  std::optional<ObjectIndex> find_object(const std::string& name) const;
  ObjectIndex object_at(const std::string& name) const;

  const Indecomposable1Mor& mor(MorIndex m) const { return mors_.at(m); }
  const std::string& mor_id(MorIndex m) const { return mors_.at(m).id; }
  ObjectIndex src(MorIndex m) const { return mor_src_.at(m); }
  ObjectIndex tgt(MorIndex m) const { return mor_tgt_.at(m); }
  bool is_identity(MorIndex m) const { return mors_.at(m).is_identity; }
  std::optional<MorIndex> find_mor(const std::string& id) const;
  MorIndex mor_at(const std::string& id) const;
  /// Identity 1-morphism of an object; throws MissingIdentity if none.
  MorIndex identity(ObjectIndex i) const;

  /// Composite of two indecomposables. Throws TypeMismatch if not composable.
  const Terms& product(MorIndex left, MorIndex right) const;

  /// Whether the table held an explicit (or synthesized) entry for the pair.
  bool has_entry(MorIndex left, MorIndex right) const { return has_entry_.at(left * mors_.size() + right); }
  bool is_synthesized(MorIndex left, MorIndex right) const { return synthesized_.at(left * mors_.size() + right); }

  const std::vector<std::string>& structural_issues() const { return issues_; }

 private:
  std::vector<std::string> objects_;
  std::map<std::string, ObjectIndex> object_lookup_;
  std::vector<Indecomposable1Mor> mors_;
  std::vector<ObjectIndex> mor_src_;
  std::vector<ObjectIndex> mor_tgt_;
  std::map<std::string, MorIndex> mor_lookup_;
  std::vector<std::optional<MorIndex>> identity_of_;
  std::vector<Terms> table_;
  std::vector<bool> has_entry_;
  std::vector<bool> synthesized_;
  std::vector<std::string> issues_;
};

/// Formal N-linear combination of indecomposables with fixed source and
/// target. An empty term map is the zero 1-morphism.
struct MorSum {
  ObjectIndex src = 0;
  ObjectIndex tgt = 0;
  std::map<MorIndex, Multiplicity> terms;

  bool is_zero() const { return terms.empty(); }
  Multiplicity multiplicity(MorIndex m) const {
    auto it = terms.find(m);
    return it == terms.end() ? 0 : it->second;
  }
  Multiplicity total() const;

  friend bool operator==(const MorSum&, const MorSum&) = default;
};

MorSum zero_sum(ObjectIndex src, ObjectIndex tgt);
MorSum single(const TwoCatPresentation& p, MorIndex m, Multiplicity mult = 1);
MorSum identity_sum(const TwoCatPresentation& p, ObjectIndex i);

/// Direct sum. Throws TypeMismatch when (src, tgt) differ.
MorSum direct_sum(const MorSum& f, const MorSum& g);
MorSum& accumulate(MorSum& into, const MorSum& g);
/// Multiset difference f - g. Throws SubtractionUnderflow if g is not contained in f.
MorSum subtract(const MorSum& f, const MorSum& g);
bool contains(const MorSum& f, const MorSum& g);

/// Bilinear extension of the composition table: "g first, then f".
MorSum compose_sums(const TwoCatPresentation& p, const MorSum& f, const MorSum& g);

/// f nonzero, f an endomorphism, and f∘f == f as multisets.
bool is_weakly_idempotent(const TwoCatPresentation& p, const MorSum& f);

/// Indecomposables i -> j in lexicographic id order.
std::vector<MorIndex> indecomposables_between(const TwoCatPresentation& p, ObjectIndex i, ObjectIndex j);
std::vector<MorIndex> indecomposables_between(const TwoCatPresentation& p, const std::string& i, const std::string& j);

struct Violation {
  std::string kind;  // e.g. "DuplicateId", "IdentityLaw", "Associativity"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const;
};

ValidationReport validate_presentation(const TwoCatPresentation& p);

std::string format_sum(const TwoCatPresentation& p, const MorSum& f);

PresentationSpec presentation_spec_from_json(const nlohmann::json& j);
TwoCatPresentation presentation_from_json(const nlohmann::json& j);
/// Canonical form: indecomposables by id, composition entries by (left, right),
/// zero entries and identity-law entries omitted.
nlohmann::json presentation_to_json(const TwoCatPresentation& p);

/// Reads a {"id": multiplicity} object as a sum i_src -> i_tgt. Empty object is zero.
MorSum sum_from_json(const TwoCatPresentation& p, const nlohmann::json& j, ObjectIndex src, ObjectIndex tgt);
nlohmann::json sum_to_json(const TwoCatPresentation& p, const MorSum& f);

}  // namespace fin2
