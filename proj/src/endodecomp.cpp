#include "fin2/endodecomp.hpp"

#include <algorithm>
#include <sstream>

namespace fin2 {

EndoMatrix::EndoMatrix(PresentationPtr presentation, std::vector<ObjectIndex> summands)
    : presentation_(std::move(presentation)), summands_(std::move(summands)) {
  if (!presentation_) throw Error("InvalidArgument", "endomorphism needs a presentation");
  for (ObjectIndex i : summands_) {
    if (i >= presentation_->object_count()) throw Error("UnknownObject", "summand index out of range");
  }
  entries_.reserve(size() * size());
  for (std::size_t r = 0; r < size(); ++r) {
    for (std::size_t s = 0; s < size(); ++s) entries_.push_back(zero_sum(summands_[s], summands_[r]));
  }
}

EndoMatrix EndoMatrix::identity(PresentationPtr presentation, std::vector<ObjectIndex> summands) {
  EndoMatrix out(std::move(presentation), std::move(summands));
  for (std::size_t r = 0; r < out.size(); ++r) out.set(r, r, identity_sum(out.presentation(), out.summands_[r]));
  return out;
}

void EndoMatrix::set(std::size_t r, std::size_t s, MorSum value) {
  if (value.src != summands_.at(s) || value.tgt != summands_.at(r)) {
    throw Error("TypeMismatch", "entry (" + std::to_string(r) + ", " + std::to_string(s) + ") has the wrong type");
  }
  entries_[r * size() + s] = std::move(value);
}

bool EndoMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const MorSum& f) { return f.is_zero(); });
}

bool EndoMatrix::same_shape(const EndoMatrix& other) const {
  return presentation_ == other.presentation_ && summands_ == other.summands_;
}

namespace {

void require_same_shape(const EndoMatrix& x, const EndoMatrix& y) {
  if (!x.same_shape(y)) throw Error("SummandMismatch", "endomorphisms act on different direct sums");
}

}  // namespace

EndoMatrix endo_compose(const EndoMatrix& first, const EndoMatrix& second) {
  require_same_shape(first, second);
  const auto& p = first.presentation();
  const std::size_t k = first.size();
  EndoMatrix out(first.presentation_ptr(), first.summands());
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t t = 0; t < k; ++t) {
      MorSum acc = zero_sum(first.summands()[t], first.summands()[r]);
      for (std::size_t s = 0; s < k; ++s) accumulate(acc, compose_sums(p, first.at(r, s), second.at(s, t)));
      out.set(r, t, std::move(acc));
    }
  }
  return out;
}

EndoMatrix endo_sum(const EndoMatrix& x, const EndoMatrix& y) {
  require_same_shape(x, y);
  EndoMatrix out = x;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t s = 0; s < x.size(); ++s) out.set(r, s, direct_sum(x.at(r, s), y.at(r, s)));
  }
  return out;
}

EndoMatrix endo_subtract(const EndoMatrix& x, const EndoMatrix& y) {
  require_same_shape(x, y);
  EndoMatrix out = x;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t s = 0; s < x.size(); ++s) out.set(r, s, subtract(x.at(r, s), y.at(r, s)));
  }
  return out;
}

std::vector<std::pair<std::size_t, MorIndex>> multiplicity_labels(const EndoMatrix& phi) {
  const auto& p = phi.presentation();
  std::vector<std::pair<std::size_t, MorIndex>> labels;
  for (std::size_t r = 0; r < phi.size(); ++r) {
    for (MorIndex m = 0; m < p.mor_count(); ++m) {
      if (p.src(m) == phi.summands()[r]) labels.emplace_back(r, m);
    }
  }
  return labels;
}

NNIMatrix multiplicity_matrix(const EndoMatrix& phi) {
  const auto& p = phi.presentation();
  const auto labels = multiplicity_labels(phi);
  const auto n = static_cast<Eigen::Index>(labels.size());
  NNIMatrix m = NNIMatrix::Zero(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const auto [r, f] = labels[static_cast<std::size_t>(row)];
    for (std::size_t s = 0; s < phi.size(); ++s) {
      const MorSum image = compose_sums(p, single(p, f), phi.at(r, s));
      for (Eigen::Index col = 0; col < n; ++col) {
        const auto [block, g] = labels[static_cast<std::size_t>(col)];
        if (block == s) m(row, col) = image.multiplicity(g);
      }
    }
  }
  return m;
}

bool is_idempotent_endo(const EndoMatrix& phi) {
  const bool by_entries = endo_compose(phi, phi) == phi;
  const bool by_matrix = is_idempotent_matrix(multiplicity_matrix(phi));
  if (by_entries != by_matrix) {
    throw Error("InternalDisagreement", "entrywise and multiplicity-matrix idempotency disagree");
  }
  return by_entries;
}

GammaThetaPi gamma_theta_pi(const EndoMatrix& phi) {
  if (!is_idempotent_endo(phi)) throw Error("NotIdempotent", "endomorphism is not idempotent");
  if (phi.is_zero()) throw Error("ZeroEndomorphism", "the zero endomorphism has no gamma part");
  const auto& p = phi.presentation();
  const NNIMatrix m = multiplicity_matrix(phi);
  const auto labels = multiplicity_labels(phi);

  EndoMatrix gamma(phi.presentation_ptr(), phi.summands());
  std::vector<DiagonalWitness> witnesses;
  for (std::size_t idx = 0; idx < labels.size(); ++idx) {
    const auto i = static_cast<Eigen::Index>(idx);
    if (m(i, i) == 0) continue;
    if (m(i, i) != 1) throw Error("MultiplicityViolated", "diagonal entry of an idempotent exceeds 1");
    const auto [r, f] = labels[idx];
    const MorSum& diag = phi.at(r, r);

    std::vector<MorIndex> contributors;
    for (const auto& [g, k] : diag.terms) {
      const Multiplicity hits = compose_sums(p, single(p, f), single(p, g)).multiplicity(f);
      if (hits == 0) continue;
      if (k != 1 || hits != 1) {
        throw Error("MultiplicityViolated", p.mor_id(g) + " contributes " + p.mor_id(f) + " more than once");
      }
      contributors.push_back(g);
    }
    if (contributors.size() != 1) {
      throw Error("UniquenessViolated", "diagonal entry at " + p.mor_id(f) + " has " +
                                            std::to_string(contributors.size()) + " contributing summands");
    }
    const MorIndex g = contributors.front();
    DiagonalWitness w;
    w.block = r;
    w.f = f;
    w.g = g;
    w.x = subtract(compose_sums(p, single(p, f), single(p, g)), single(p, f));
    w.q = subtract(compose_sums(p, single(p, g), single(p, g)), single(p, g));
    witnesses.push_back(std::move(w));

    MorSum entry = gamma.at(r, r);
    entry.terms[g] = 1;
    gamma.set(r, r, std::move(entry));
  }

  EndoMatrix gamma_sq = endo_compose(gamma, gamma);
  EndoMatrix theta = endo_subtract(gamma_sq, gamma);
  EndoMatrix pi = endo_subtract(endo_subtract(phi, gamma), theta);
  return {std::move(gamma), std::move(theta), std::move(pi), std::move(witnesses)};
}

bool IdentityReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

namespace {

// Composition of endomorphisms, x∘y: y acts first.
EndoMatrix after(const EndoMatrix& x, const EndoMatrix& y) { return endo_compose(y, x); }

struct CheckBuilder {
  IdentityCheck check;
  explicit CheckBuilder(std::string name) { check = {std::move(name), true, ""}; }
  void require(bool ok, const std::string& what) {
    if (ok) return;
    check.holds = false;
    check.detail += (check.detail.empty() ? "" : "; ") + what;
  }
};

}  // namespace

IdentityReport verify_idempotent_identities(const EndoMatrix& phi) {
  IdentityReport report;
  report.parts = gamma_theta_pi(phi);
  const auto& p = phi.presentation();
  const EndoMatrix& gamma = report.parts.gamma;
  const EndoMatrix& theta = report.parts.theta;
  const EndoMatrix& pi = report.parts.pi;
  const EndoMatrix zero(phi.presentation_ptr(), phi.summands());

  {
    CheckBuilder c("G_i Q_i = Q_i G_i = 0, phi(Q_i) = 0");
    for (const auto& w : report.parts.witnesses) {
      const MorSum g = single(p, w.g);
      c.require(compose_sums(p, g, w.q).is_zero(), "G∘Q != 0 for G = " + p.mor_id(w.g));
      c.require(compose_sums(p, w.q, g).is_zero(), "Q∘G != 0 for G = " + p.mor_id(w.g));
      for (std::size_t s = 0; s < phi.size(); ++s) {
        c.require(compose_sums(p, w.q, phi.at(w.block, s)).is_zero(), "phi(Q) != 0 for G = " + p.mor_id(w.g));
      }
    }
    report.checks.push_back(c.check);
  }
  {
    CheckBuilder c("G_i G_j = 0 for G_i != G_j");
    auto placed = [&](const DiagonalWitness& w) {
      EndoMatrix out = zero;
      out.set(w.block, w.block, single(p, w.g));
      return out;
    };
    for (const auto& wi : report.parts.witnesses) {
      for (const auto& wj : report.parts.witnesses) {
        if (wi.g == wj.g) continue;
        c.require(after(placed(wi), placed(wj)) == zero, p.mor_id(wi.g) + "∘" + p.mor_id(wj.g) + " != 0 in block " +
                                                             std::to_string(wi.block));
      }
    }
    report.checks.push_back(c.check);
  }
  {
    CheckBuilder c("phi theta = 0");
    c.require(after(phi, theta) == zero, "phi∘theta != 0");
    report.checks.push_back(c.check);
  }

  const EndoMatrix pi2 = after(pi, pi);
  const EndoMatrix gamma_pi = after(gamma, pi);
  const EndoMatrix pi_gamma = after(pi, gamma);
  {
    CheckBuilder c("gamma pi gamma = theta pi = gamma pi^2 = pi^2 gamma = 0");
    c.require(after(gamma_pi, gamma) == zero, "gamma pi gamma != 0");
    c.require(after(theta, pi) == zero, "theta pi != 0");
    c.require(after(gamma, pi2) == zero, "gamma pi^2 != 0");
    c.require(after(pi2, gamma) == zero, "pi^2 gamma != 0");
    report.checks.push_back(c.check);
  }
  {
    CheckBuilder c("pi = gamma pi + pi gamma + pi^2");
    c.require(pi == endo_sum(endo_sum(gamma_pi, pi_gamma), pi2), "decomposition of pi fails");
    report.checks.push_back(c.check);
  }
  {
    CheckBuilder c("pi^3 = 0");
    c.require(after(pi, pi2) == zero, "pi^3 != 0");
    report.checks.push_back(c.check);
  }
  {
    CheckBuilder c("pi^2 = pi gamma pi");
    c.require(pi2 == after(pi_gamma, pi), "pi^2 != pi gamma pi");
    report.checks.push_back(c.check);
  }

  const EndoMatrix gt = endo_sum(gamma, theta);
  const EndoMatrix gtp = endo_sum(gt, pi_gamma);
  auto push = [&](std::string name, bool ok) {
    report.checks.push_back({std::move(name), ok, ok ? "" : "identity fails"});
  };
  push("(gamma + theta)^2 = gamma + theta", after(gt, gt) == gt);
  push("(gamma + theta + pi gamma)^2 = gamma + theta + pi gamma", after(gtp, gtp) == gtp);
  push("(gamma + theta + pi gamma)(gamma + theta) = gamma + theta + pi gamma", after(gtp, gt) == gtp);
  push("(gamma + theta)(gamma + theta + pi gamma) = gamma + theta", after(gt, gtp) == gt);
  push("phi (gamma + theta + pi gamma) = gamma + theta + pi gamma", after(phi, gtp) == gtp);
  push("(gamma + theta + pi gamma) phi = phi", after(gtp, phi) == phi);
  return report;
}

EndoMatrix endo_from_json(PresentationPtr presentation, const nlohmann::json& j) {
  try {
    std::vector<ObjectIndex> summands;
    for (const auto& name : j.at("summands")) summands.push_back(presentation->object_at(name.get<std::string>()));
    EndoMatrix out(presentation, summands);
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != out.size()) throw Error("ParseError", "entries must be a k x k array");
    for (std::size_t r = 0; r < out.size(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != out.size()) throw Error("ParseError", "entries must be a k x k array");
      for (std::size_t s = 0; s < out.size(); ++s) {
        out.set(r, s, sum_from_json(*presentation, rows[r][s], summands[s], summands[r]));
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

nlohmann::json endo_to_json(const EndoMatrix& phi) {
  const auto& p = phi.presentation();
  nlohmann::json summands = nlohmann::json::array();
  for (ObjectIndex i : phi.summands()) summands.push_back(p.object_name(i));
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t r = 0; r < phi.size(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t s = 0; s < phi.size(); ++s) row.push_back(sum_to_json(p, phi.at(r, s)));
    entries.push_back(std::move(row));
  }
  return {{"summands", summands}, {"entries", entries}};
}

std::string format_endo(const EndoMatrix& phi) {
  std::ostringstream out;
  for (std::size_t r = 0; r < phi.size(); ++r) {
    out << "[";
    for (std::size_t s = 0; s < phi.size(); ++s) {
      out << (s ? " | " : " ") << format_sum(phi.presentation(), phi.at(r, s));
    }
    out << " ]\n";
  }
  return out.str();
}

EndoMatrix sample_endo(PresentationPtr presentation, std::vector<ObjectIndex> summands, Multiplicity max_total,
                       std::mt19937_64& rng) {
  EndoMatrix out(presentation, summands);
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t s = 0; s < out.size(); ++s) {
      const auto candidates = indecomposables_between(*presentation, summands[s], summands[r]);
      MorSum entry = zero_sum(summands[s], summands[r]);
      if (!candidates.empty()) {
        const auto total = std::uniform_int_distribution<Multiplicity>(0, max_total)(rng);
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        for (Multiplicity t = 0; t < total; ++t) ++entry.terms[candidates[pick(rng)]];
      }
      out.set(r, s, std::move(entry));
    }
  }
  return out;
}

}  // namespace fin2
