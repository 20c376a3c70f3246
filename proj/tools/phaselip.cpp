// phaselip: build a construction, run a stability command, write the report.
//
// Exit codes: 0 Certified / scan complete, 2 Refuted, 3 Inconclusive,
// 1 usage or experiment-file error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "phaselip/constructions.hpp"
#include "phaselip/errors.hpp"
#include "phaselip/json_io.hpp"
#include "phaselip/priors.hpp"
#include "phaselip/stability.hpp"

using nlohmann::json;
using namespace phaselip;

namespace {

struct Experiment {
  std::string command;
  std::string construction = "counterexample";
  double gamma = 2.0;
  double R = 1.0;
  double epsilon = 0.1;
  std::size_t D = 40;
  std::optional<std::uint64_t> seed;
  std::optional<double> bound;
  std::string m_range;  // "5..20" or "5"
  std::string out;
  int restarts = 32;
};

struct Setup {
  Frame frame;
  PriorSet prior;
  double default_bound = 0.0;
  bool has_default_bound = false;
};

std::pair<std::size_t, std::size_t> parse_m_range(const std::string& s) {
  if (s.empty()) throw SpecError("--m is required for this command");
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t m = std::stoul(s);
      return {m, m};
    }
    const std::size_t lo = std::stoul(s.substr(0, dots));
    const std::size_t hi = std::stoul(s.substr(dots + 2));
    if (lo > hi) throw SpecError("--m range is empty: " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw SpecError("--m expects an integer or lo..hi, got: " + s);
  }
}

// The multidimensional setups share fixed shape parameters: head dimension 4,
// two rotated basis blocks, hypothesis constants chosen with a margin of 2.
Setup make_md(ScalarField field, std::size_t D, double epsilon,
              std::uint64_t seed, int restarts) {
  const std::size_t N = 4, blocks = 2;
  Rng psi_rng(derive_seed(seed, 101));
  SearchConfig est;
  est.restarts = std::max(8, restarts / 4);
  est.max_iters = 120;
  est.seed = derive_seed(seed, 102);
  auto [psi, c_est] =
      stable_parseval_family(N, field == ScalarField::Real ? 3 : 4, field,
                             psi_rng, &est);
  Rng phi_rng(derive_seed(seed, 103));
  Frame phi = rotated_onb_union(N, blocks, field, phi_rng);

  MDParams md;
  md.N = int(N);
  // margin 2 over the lower estimate; the floor of 4 also keeps the
  // flatness requirement 1/C at or below the guaranteed density 1/4 of
  // the two-block rotated basis union at c = 1/4
  md.C = std::max(4.0, 2.0 * c_est);
  md.A = 1.0;
  md.B = 1.0;
  md.J_size = int(phi.size());
  md.I_size = int(psi.size());
  const bool real = field == ScalarField::Real;
  md.c = real ? 0.25 : 0.1;
  md.kappa = real ? 4.0 : 8.0;

  SequenceEnvelope env =
      default_sequences(real ? ConstraintKind::RealMD4_1
                             : ConstraintKind::ComplexMD4_3,
                        D - N, epsilon, md);
  Frame frame = real ? real_md_frame(psi, phi, md, env, D)
                     : complex_md_frame(psi, phi, md, env, D);
  PriorSet prior = envelope_from_beta(env, D, N, field);
  Setup s{std::move(frame), std::move(prior)};
  s.has_default_bound = true;
  const double denom = 1.0 - epsilon;
  s.default_bound =
      real ? std::sqrt(1.0 / denom) * md.C
           : std::sqrt(std::max(md.C, 64.0 * md.kappa / (md.c * md.c)) / denom);
  return s;
}

Setup make_setup(const Experiment& e) {
  if (!e.seed) throw SpecError("--seed is required");
  const std::uint64_t seed = *e.seed;
  if (e.construction == "counterexample") {
    auto spec = make_counterexample_spec(e.D, e.gamma, e.R, 1.0,
                                         ScalarField::Real, seed);
    auto [frame, G] = counterexample_frame(spec);
    PriorSet prior =
        envelope_from_G([G](int m) { return G(m); }, e.gamma, e.R, e.D);
    return {std::move(frame), std::move(prior)};
  }
  if (e.construction == "real3_1") {
    SequenceEnvelope env =
        default_sequences(ConstraintKind::Real3_1, e.D - 1, e.epsilon);
    Setup s{real_onedim_frame(e.D, env),
            envelope_from_beta(env, e.D, 1, ScalarField::Real)};
    s.has_default_bound = true;
    s.default_bound = std::sqrt(1.0 / (1.0 - e.epsilon));
    return s;
  }
  if (e.construction == "complex3_2") {
    SequenceEnvelope env =
        default_sequences(ConstraintKind::Complex3_2, e.D - 1, e.epsilon);
    Setup s{complex_onedim_frame(e.D, env),
            envelope_from_beta(env, e.D, 1, ScalarField::Complex)};
    s.has_default_bound = true;
    s.default_bound = 5.0;
    return s;
  }
  if (e.construction == "realmd4_1")
    return make_md(ScalarField::Real, e.D, e.epsilon, seed, e.restarts);
  if (e.construction == "complexmd4_3")
    return make_md(ScalarField::Complex, e.D, e.epsilon, seed, e.restarts);
  throw SpecError("unknown construction: " + e.construction);
}

void emit(const json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Certified: return 0;
    case Verdict::Refuted: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 1;
}

int run_certify(const Experiment& e, bool refute_mode) {
  Setup s = make_setup(e);
  double bound = 0.0;
  if (e.bound)
    bound = *e.bound;
  else if (s.has_default_bound)
    bound = s.default_bound;
  else
    throw SpecError("--bound is required for construction " + e.construction);
  SearchConfig cfg;
  cfg.restarts = e.restarts;
  cfg.seed = derive_seed(*e.seed, 7);
  StabilityReport rep = certify_lipschitz(s.frame, s.prior, bound, cfg);
  rep.frame_id = e.construction;
  rep.prior_id = s.prior.provenance == PriorProvenance::FromG
                     ? "B_gamma(R)" : "B";
  json doc = to_json(rep);
  doc["command"] = refute_mode ? "refute" : "certify";
  emit(doc, e.out);
  return exit_code(rep.verdict);
}

int run_scan(const Experiment& e) {
  if (e.construction != "counterexample")
    throw SpecError("scan supports only the counterexample construction");
  Setup s = make_setup(e);
  auto [lo, hi] = parse_m_range(e.m_range.empty() ? "5..20" : e.m_range);
  const auto records = holder_scan(s.frame, e.gamma, e.R, 1.0, lo, hi);
  const HolderFit fit = holder_fit(records);
  if (!e.out.empty()) write_text_file(e.out, scan_to_csv(records));
  json doc;
  doc["schema_version"] = 1;
  doc["command"] = "scan";
  doc["construction"] = e.construction;
  doc["m_lo"] = lo;
  doc["m_hi"] = hi;
  doc["sigma_fit"] = fit.sigma;
  doc["sigma_residual"] = fit.residual;
  doc["rows"] = records.size();
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_bounds(const Experiment& e) {
  Setup s = make_setup(e);
  const auto [A, B] = frame_bounds(s.frame);
  json doc;
  doc["schema_version"] = 1;
  doc["command"] = "bounds";
  doc["construction"] = e.construction;
  doc["A"] = A;
  doc["B"] = B;
  doc["vectors"] = s.frame.size();
  doc["dim"] = s.frame.dim();
  emit(doc, e.out);
  return 0;
}

int run_sample(const Experiment& e) {
  Setup s = make_setup(e);
  Rng rng(derive_seed(*e.seed, 11));
  json arr = json::array();
  const int count = std::max(1, e.restarts);
  for (int i = 0; i < count; ++i) {
    Vec v = sample(s.prior, rng);
    const Membership mem = membership(s.prior, v);
    json rec;
    rec["vector"] = to_json(v);
    rec["member"] = mem.ok;
    rec["margin"] = mem.margin;
    arr.push_back(std::move(rec));
  }
  json doc;
  doc["schema_version"] = 1;
  doc["command"] = "sample";
  doc["construction"] = e.construction;
  doc["samples"] = std::move(arr);
  emit(doc, e.out);
  return 0;
}

int run_subspace(const Experiment& e) {
  Setup s = make_setup(e);
  auto [lo, hi] = parse_m_range(e.m_range);
  if (lo != hi) throw SpecError("subspace expects a single --m value");
  SearchConfig cfg;
  cfg.restarts = e.restarts;
  cfg.seed = derive_seed(*e.seed, 13);
  const SubspaceEstimate est = subspace_constant(s.frame, lo, cfg);
  json doc;
  doc["schema_version"] = 1;
  doc["command"] = "subspace";
  doc["construction"] = e.construction;
  doc["m"] = lo;
  doc["estimate"] = est.diverged ? json("inf") : json(est.value);
  doc["diverged"] = est.diverged;
  emit(doc, e.out);
  return 0;
}

int run(const Experiment& e) {
  if (e.command == "certify") return run_certify(e, false);
  if (e.command == "refute") return run_certify(e, true);
  if (e.command == "scan") return run_scan(e);
  if (e.command == "bounds") return run_bounds(e);
  if (e.command == "sample") return run_sample(e);
  if (e.command == "subspace") return run_subspace(e);
  throw SpecError("unknown command: " + e.command);
}

void load_spec_file(const std::string& path, Experiment& e) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open experiment file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw SpecError("experiment file " + path + ": " + err.what());
  }
  try {
    if (j.contains("command")) e.command = j.at("command").get<std::string>();
    if (j.contains("construction"))
      e.construction = j.at("construction").get<std::string>();
    if (j.contains("gamma")) e.gamma = j.at("gamma").get<double>();
    if (j.contains("R")) e.R = j.at("R").get<double>();
    if (j.contains("epsilon")) e.epsilon = j.at("epsilon").get<double>();
    if (j.contains("D")) e.D = j.at("D").get<std::size_t>();
    if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("bound")) e.bound = j.at("bound").get<double>();
    if (j.contains("m")) e.m_range = j.at("m").get<std::string>();
    if (j.contains("out")) e.out = j.at("out").get<std::string>();
    if (j.contains("restarts")) e.restarts = j.at("restarts").get<int>();
  } catch (const json::exception& err) {
    throw SpecError("experiment file " + path + ": " + err.what());
  }
  if (e.command.empty())
    throw SpecError("experiment file " + path + ": field 'command' missing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable phase retrieval experiments on nonlinear priors"};
  app.require_subcommand(0, 1);

  Experiment e;
  std::string spec_file;
  app.add_option("--spec", spec_file, "Experiment file (JSON); one file = one run");

  std::uint64_t seed_value = 0;
  bool seed_given = false;
  double bound_value = 0.0;
  bool bound_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--construction", e.construction,
                    "counterexample | real3_1 | complex3_2 | realmd4_1 | "
                    "complexmd4_3");
    cmd->add_option("--gamma", e.gamma, "Tail decay exponent");
    cmd->add_option("--R", e.R, "Prior radius");
    cmd->add_option("--epsilon", e.epsilon, "Construction epsilon");
    cmd->add_option("--D", e.D, "Ambient dimension");
    cmd->add_option("--seed", seed_value, "RNG seed (required)")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--bound", bound_value, "Claimed Lipschitz bound")
        ->each([&](const std::string&) { bound_given = true; });
    cmd->add_option("--m", e.m_range, "Depth m or range lo..hi");
    cmd->add_option("--out", e.out, "Output path (JSON report / CSV for scan)");
    cmd->add_option("--restarts", e.restarts, "Search restarts");
  };
  for (const char* name : {"certify", "refute", "scan", "bounds", "sample",
                           "subspace"})
    add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);

  try {
    if (!spec_file.empty()) {
      if (!app.get_subcommands().empty())
        throw SpecError("--spec and a subcommand are mutually exclusive");
      load_spec_file(spec_file, e);
    } else {
      const auto subs = app.get_subcommands();
      if (subs.empty()) throw SpecError("a subcommand or --spec is required");
      e.command = subs[0]->get_name();
      if (seed_given) e.seed = seed_value;
      if (bound_given) e.bound = bound_value;
    }
    return run(e);
  } catch (const SpecError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
