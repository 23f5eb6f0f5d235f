#include "fin2/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "fin2/endodecomp.hpp"
#include "fin2/nnimat.hpp"
#include "fin2/projclass.hpp"
#include "fin2/projfun.hpp"
#include "fin2/soergel.hpp"
#include "fin2/twocat.hpp"

namespace fin2 {

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace {

struct Report {
  nlohmann::json data;
  std::string text;
  std::optional<nlohmann::json> file;  // written to -o, or printed if no -o
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

TwoCatPresentation load_presentation(const std::string& path) {
  try {
    return presentation_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

void require_valid(const TwoCatPresentation& p) {
  const auto report = validate_presentation(p);
  if (report.ok()) return;
  const auto& v = report.violations.front();
  throw Error("InvalidPresentation", v.kind + ": " + v.detail);
}

QuiverAlgebra load_algebra(const std::string& path) {
  try {
    return quiver_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

std::string matrix_text(const NNIMatrix& m) { return matrix_to_json(m).dump(); }

Report cmd_validate(const std::string& path) {
  const auto p = load_presentation(path);
  const auto report = validate_presentation(p);
  Report out;
  nlohmann::json violations = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", v.kind}, {"detail", v.detail}});
    text << v.kind << ": " << v.detail << "\n";
  }
  out.data = {{"valid", report.ok()},
              {"objects", p.object_count()},
              {"onemorphisms", p.mor_count()},
              {"violations", violations}};
  out.text = (report.ok() ? "valid" : "invalid") + std::string("\nobjects: ") + std::to_string(p.object_count()) +
             "\nindecomposable 1-morphisms: " + std::to_string(p.mor_count()) + "\n" + text.str();
  return out;
}

Report cmd_flor(const std::string& path) {
  NNIMatrix m;
  try {
    m = matrix_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
  const auto form = flor_normal_form(m);
  const bool verified = satisfies_block_form(m, form);
  if (!verified) throw Error("VerificationFailed", "block equations do not hold");
  Report out;
  out.data = {{"matrix", matrix_to_json(m)}, {"form", flor_to_json(form)}, {"verified", verified}};
  std::ostringstream text;
  text << "matrix: " << matrix_text(m) << "\n";
  text << "perm: " << nlohmann::json(form.perm).dump() << "\n";
  text << "blocks: a=" << form.a << " b=" << form.b << " c=" << form.c << "\n";
  text << "A: " << matrix_text(form.blockA) << "\n";
  text << "B: " << matrix_text(form.blockB) << "\n";
  text << "normal form: " << matrix_text(form.assemble()) << "\n";
  text << "block equations: verified\n";
  out.text = text.str();
  return out;
}

Report cmd_decompose(const std::string& presentation_path, const std::string& endo_path) {
  auto p = std::make_shared<const TwoCatPresentation>(load_presentation(presentation_path));
  require_valid(*p);
  EndoMatrix phi;
  try {
    phi = endo_from_json(p, read_json(endo_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", endo_path + ": " + e.what());
  }
  const auto report = verify_idempotent_identities(phi);
  Report out;
  nlohmann::json checks = nlohmann::json::array();
  std::ostringstream text;
  text << "phi:\n" << format_endo(phi);
  text << "Gamma:\n" << format_endo(report.parts.gamma);
  text << "Theta:\n" << format_endo(report.parts.theta);
  text << "Pi:\n" << format_endo(report.parts.pi);
  text << "checks:\n";
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
    text << "  [" << (c.holds ? "ok" : "FAIL") << "] " << c.name;
    if (!c.holds) text << " (" << c.detail << ")";
    text << "\n";
  }
  text << (report.all_hold() ? "all identities hold\n" : "some identities fail\n");
  out.data = {{"phi", endo_to_json(phi)},
              {"gamma", endo_to_json(report.parts.gamma)},
              {"theta", endo_to_json(report.parts.theta)},
              {"pi", endo_to_json(report.parts.pi)},
              {"checks", checks},
              {"all_hold", report.all_hold()}};
  out.text = text.str();
  if (!report.all_hold()) throw Error("IdentityViolated", "see checks:\n" + out.text);
  return out;
}

Report cmd_projectives(const std::string& path) {
  const auto p = load_presentation(path);
  require_valid(p);
  const auto ds = classify_projectives(p);
  Report out;
  nlohmann::json descriptors = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& d : ds) {
    descriptors.push_back({{"object", p.object_name(d.object)},
                           {"G", p.mor_id(d.g)},
                           {"Q", sum_to_json(p, d.q)},
                           {"E", sum_to_json(p, d.e)}});
    text << "object " << p.object_name(d.object) << ": G = " << p.mor_id(d.g) << ", Q = " << format_sum(p, d.q)
         << ", E = " << format_sum(p, d.e) << "\n";
  }
  nlohmann::json hints = nlohmann::json::array();
  for (const auto& [x, y] : equivalence_hints(p, ds)) {
    hints.push_back({x, y});
    text << "possibly equivalent: #" << x << " and #" << y << "\n";
  }
  out.data = {{"descriptors", descriptors}, {"equivalence_hints", hints}};
  out.text = std::to_string(ds.size()) + " projective descriptor(s)\n" + text.str();
  return out;
}

Report cmd_essential(const std::string& path) {
  const auto p = load_presentation(path);
  require_valid(p);
  const auto below = preorder(p);
  const auto essential = essential_objects(p);
  Report out;
  std::ostringstream text;
  nlohmann::json relations = nlohmann::json::array();
  for (ObjectIndex i = 0; i < p.object_count(); ++i) {
    for (ObjectIndex j = 0; j < p.object_count(); ++j) {
      if (!below[i][j]) continue;
      const auto w = preorder_witness(p, i, j);
      relations.push_back({{"below", p.object_name(i)},
                           {"above", p.object_name(j)},
                           {"phi", p.mor_id(w->first)},
                           {"psi", p.mor_id(w->second)}});
      text << p.object_name(i) << " <= " << p.object_name(j) << " via " << p.mor_id(w->first) << " o "
           << p.mor_id(w->second) << "\n";
    }
  }
  nlohmann::json kept = nlohmann::json::array();
  text << "essential:";
  for (ObjectIndex i : essential) {
    kept.push_back(p.object_name(i));
    text << " " << p.object_name(i);
  }
  text << "\n";
  out.data = {{"preorder", relations}, {"essential", kept}};
  out.text = text.str();
  return out;
}

Report cmd_projfun_build(const std::string& path) {
  const auto a = load_algebra(path);
  const auto p = build_projfun_2cat(a);
  Report out;
  out.file = presentation_to_json(p);
  out.data = {{"objects", p.object_count()}, {"onemorphisms", p.mor_count()}, {"dimension", a.dimension()}};
  out.text = "objects: " + std::to_string(p.object_count()) +
             "\nindecomposable 1-morphisms: " + std::to_string(p.mor_count()) + "\n";
  return out;
}

nlohmann::json normal_form_json(const QuiverAlgebra& a, const MoritaNormalForm& nf) {
  nlohmann::json pair = nullptr;
  if (const auto w = dim_one_pair(a)) pair = {a.vertices()[w->first], a.vertices()[w->second]};
  return {{"core", nf.core}, {"epsilon", nf.epsilon}, {"dim_one_pair", pair}, {"dimension", a.dimension()}};
}

std::string normal_form_text(const std::string& label, const QuiverAlgebra& a, const MoritaNormalForm& nf) {
  std::ostringstream text;
  text << label << ": core = {";
  for (std::size_t k = 0; k < nf.core.size(); ++k) text << (k ? ", " : "") << nf.core[k];
  text << "}, epsilon = " << nf.epsilon << "\n";
  if (const auto w = dim_one_pair(a)) {
    text << label << ": dim e_" << a.vertices()[w->second] << " A e_" << a.vertices()[w->first] << " = 1\n";
  } else {
    text << label << ": no vertex pair of dimension 1\n";
  }
  return text.str();
}

// Isomorphism invariants of the core: per component of dimension > 1, the
// vertex and arrow counts and the sorted entries of its dims matrix.
std::vector<std::vector<std::uint64_t>> core_signature(const QuiverAlgebra& a) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& part : component_partition(a)) {
    const auto sub = restrict_to(a, part);
    if (sub.dimension() <= 1) continue;
    const auto d = dims_matrix(sub);
    std::vector<std::uint64_t> entries(d.data(), d.data() + d.size());
    std::sort(entries.begin(), entries.end());
    entries.insert(entries.begin(), {sub.vertices().size(), sub.arrows().size()});
    out.push_back(std::move(entries));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Report cmd_projfun_morita(const std::string& path_a, const std::string& path_b) {
  const auto a = load_algebra(path_a);
  const auto b = load_algebra(path_b);
  const auto nf_a = morita_normal_form(a);
  const auto nf_b = morita_normal_form(b);
  const bool equivalent = nf_a == nf_b;
  Report out;
  out.data = {{"verdict", equivalent ? "equivalent" : "inequivalent"},
              {"A", normal_form_json(a, nf_a)},
              {"B", normal_form_json(b, nf_b)}};
  out.text = std::string(equivalent ? "equivalent" : "inequivalent") + "\n" + normal_form_text("A", a, nf_a) +
             normal_form_text("B", b, nf_b);
  // Different monomial presentations can still give isomorphic algebras.
  if (!equivalent && nf_a.epsilon == nf_b.epsilon && core_signature(a) == core_signature(b)) {
    out.data["note"] = "undecided-beyond-scope";
    out.text += "note: undecided-beyond-scope (the cores share their invariants but not their presentations)\n";
  }
  return out;
}

CoxeterSystem load_coxeter(const std::string& path, std::size_t cap) { return coxeter_from_json(read_json(path), cap); }

Report cmd_soergel_check(const std::string& path, std::size_t cap) {
  const auto w = load_coxeter(path, cap);
  const auto p = build_soergel_2cat(w);
  require_valid(p);
  nlohmann::json hits = nlohmann::json::array();
  std::string names;
  for (MorIndex m = 0; m < p.mor_count(); ++m) {
    if (!is_weakly_idempotent(p, single(p, m))) continue;
    hits.push_back(p.mor_id(m));
    names += " " + p.mor_id(m);
  }
  const bool only_identity = verify_soergel_idempotents(p);
  Report out;
  out.data = {{"order", w.order()}, {"weakly_idempotent", hits}, {"only_identity", only_identity}};
  out.text = "order: " + std::to_string(w.order()) + "\nweakly idempotent indecomposables:" + names +
             "\nonly the identity is weakly idempotent: " + (only_identity ? "true" : "false") + "\n";
  return out;
}

Report cmd_soergel_kl(const std::string& path, std::size_t cap) {
  const auto w = load_coxeter(path, cap);
  const auto kl = kl_table(w);
  Report out;
  out.data = kl_table_to_json(w, kl);
  std::ostringstream text;
  text << "order: " << w.order() << "\n";
  for (ElementIndex x = 0; x < w.order(); ++x) {
    for (ElementIndex z = 0; z <= x; ++z) {
      if (!kl.h(z, x).is_zero()) text << "h(" << w.name(z) << ", " << w.name(x) << ") = " << kl.h(z, x).to_string() << "\n";
    }
  }
  out.text = text.str();
  return out;
}

Report cmd_soergel_build(const std::string& path, std::size_t cap) {
  const auto w = load_coxeter(path, cap);
  const auto p = build_soergel_2cat(w);
  Report out;
  out.file = presentation_to_json(p);
  out.data = {{"order", w.order()}, {"onemorphisms", p.mor_count()}};
  out.text = "order: " + std::to_string(w.order()) + "\n";
  return out;
}

Report cmd_idempotents(const std::string& path, std::uint64_t seed, std::size_t trials, std::size_t max_size,
                       Multiplicity max_total) {
  auto p = std::make_shared<const TwoCatPresentation>(load_presentation(path));
  require_valid(*p);
  if (max_size == 0) throw Error("InvalidArgument", "--size must be positive");
  std::mt19937_64 rng(seed);
  std::size_t idempotent = 0;
  std::size_t nontrivial = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto k = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    std::vector<ObjectIndex> summands(k);
    for (auto& s : summands) s = std::uniform_int_distribution<ObjectIndex>(0, p->object_count() - 1)(rng);
    const auto phi = sample_endo(p, summands, max_total, rng);
    if (phi.is_zero() || !is_idempotent_endo(phi)) continue;
    ++idempotent;
    const auto report = verify_idempotent_identities(phi);
    if (!report.parts.theta.is_zero() || !report.parts.pi.is_zero()) ++nontrivial;
    if (!report.all_hold()) failures.push_back(endo_to_json(phi));
  }
  Report out;
  out.data = {{"seed", seed},
              {"trials", trials},
              {"idempotent", idempotent},
              {"nontrivial", nontrivial},
              {"failures", failures}};
  out.text = "seed: " + std::to_string(seed) + "\ntrials: " + std::to_string(trials) +
             "\nidempotent: " + std::to_string(idempotent) + "\nnontrivial (Theta or Pi nonzero): " +
             std::to_string(nontrivial) + "\nfailures: " + std::to_string(failures.size()) + "\n";
  if (!failures.empty()) throw Error("IdentityViolated", out.text + failures.dump());
  return out;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"fin2: multiplicity-level computations for finitary 2-categories", "fin2"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::string output_path;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", output_path, "write the produced file here");

  std::string path_a;
  std::string path_b;
  auto* validate = app.add_subcommand("validate", "check a presentation file");
  validate->add_option("presentation", path_a)->required();
  auto* flor = app.add_subcommand("flor", "normal form of an idempotent matrix");
  flor->add_option("matrix", path_a)->required();
  auto* decompose = app.add_subcommand("decompose", "Gamma/Theta/Pi parts of an idempotent endomorphism");
  decompose->add_option("presentation", path_a)->required();
  decompose->add_option("endomorphism", path_b)->required();
  auto* projectives = app.add_subcommand("projectives", "indecomposable projective 2-representations");
  projectives->add_option("presentation", path_a)->required();
  auto* essential = app.add_subcommand("essential", "retract preorder and essential objects");
  essential->add_option("presentation", path_a)->required();

  auto* projfun = app.add_subcommand("projfun", "2-categories of projective functors");
  projfun->require_subcommand(1);
  auto* pf_build = projfun->add_subcommand("build", "presentation of C_A");
  pf_build->add_option("quiver", path_a)->required();
  auto* pf_morita = projfun->add_subcommand("morita", "decide Morita equivalence of C_A and C_B");
  pf_morita->add_option("A", path_a)->required();
  pf_morita->add_option("B", path_b)->required();

  std::size_t cap = kDefaultCoxeterCap;
  auto* soergel = app.add_subcommand("soergel", "decategorified Soergel 2-categories");
  soergel->require_subcommand(1);
  soergel->add_option("--cap", cap, "maximal group order")->check(CLI::PositiveNumber);
  auto* sg_check = soergel->add_subcommand("check", "weak idempotents of the Soergel 2-category");
  sg_check->add_option("coxeter", path_a)->required();
  auto* sg_kl = soergel->add_subcommand("kl", "Kazhdan-Lusztig table");
  sg_kl->add_option("coxeter", path_a)->required();
  auto* sg_build = soergel->add_subcommand("build", "presentation of the Soergel 2-category");
  sg_build->add_option("coxeter", path_a)->required();

  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::size_t max_size = 3;
  Multiplicity max_total = 3;
  auto* idempotents = app.add_subcommand("idempotents", "random check of the idempotent identities");
  idempotents->add_option("presentation", path_a)->required();
  idempotents->add_option("--seed", seed);
  idempotents->add_option("--trials", trials);
  idempotents->add_option("--size", max_size, "largest number of summands");
  idempotents->add_option("--max-total", max_total, "largest total multiplicity per entry");

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.report = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.report = std::string("usage error: ") + e.what() + "\n" + app.help();
    return result;
  }

  const bool json = format == "json";
  try {
    Report report;
    if (validate->parsed()) report = cmd_validate(path_a);
    else if (flor->parsed()) report = cmd_flor(path_a);
    else if (decompose->parsed()) report = cmd_decompose(path_a, path_b);
    else if (projectives->parsed()) report = cmd_projectives(path_a);
    else if (essential->parsed()) report = cmd_essential(path_a);
    else if (pf_build->parsed()) report = cmd_projfun_build(path_a);
    else if (pf_morita->parsed()) report = cmd_projfun_morita(path_a, path_b);
    else if (sg_check->parsed()) report = cmd_soergel_check(path_a, cap);
    else if (sg_kl->parsed()) report = cmd_soergel_kl(path_a, cap);
    else if (sg_build->parsed()) report = cmd_soergel_build(path_a, cap);
    else if (idempotents->parsed()) report = cmd_idempotents(path_a, seed, trials, max_size, max_total);

    if (report.file) {
      if (output_path.empty()) {
        result.report = canonical_dump(*report.file);
        return result;
      }
      result.output = OutputFile{output_path, canonical_dump(*report.file)};
      report.data["output"] = output_path;
      report.text += "wrote " + output_path + "\n";
    } else if (!output_path.empty()) {
      result.output = OutputFile{output_path, json ? canonical_dump(report.data) : report.text};
    }
    result.report = json ? canonical_dump(report.data) : report.text;
  } catch (const Error& e) {
    result.exit_code = 1;
    result.report = json ? canonical_dump({{"error", e.name()}, {"message", e.what()}})
                         : "error: " + e.name() + ": " + e.what() + "\n";
  } catch (const nlohmann::json::exception& e) {
    result.exit_code = 1;
    result.report = json ? canonical_dump({{"error", "ParseError"}, {"message", e.what()}})
                         : std::string("error: ParseError: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace fin2
