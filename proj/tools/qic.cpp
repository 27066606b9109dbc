// Command-line front end: experiment subcommands emitting CSV.

#include "qic/complement.hpp"
#include "qic/harness.hpp"
#include "qic/monotones.hpp"
#include "qic/sampling.hpp"
#include "qic/tcm.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qic;

// All subcommands write CSV to stdout or --out.
struct Output {
  std::string path;

  int emit(const std::string& csv) const {
    if (path.empty()) {
      std::cout << csv;
      return 0;
    }
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot open output file: " << path << "\n";
      return 1;
    }
    f << csv;
    return 0;
  }
};

tcm::FieldKind parse_field(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--field", "expected fock:N or coherent:ALPHA");
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "fock") return tcm::FockField{std::stoi(arg)};
  if (kind == "coherent") return tcm::CoherentField{std::stod(arg)};
  throw CLI::ValidationError("--field", "unknown field kind '" + kind + "'");
}

tcm::AtomicKind parse_atoms(const std::string& spec) {
  if (spec == "ee") return tcm::AtomicKind::EE;
  if (spec == "gg") return tcm::AtomicKind::GG;
  if (spec == "sym-eg") return tcm::AtomicKind::SymmetricEG;
  if (spec == "sym-ggee") return tcm::AtomicKind::SymmetricGGEE;
  throw CLI::ValidationError("--atoms", "unknown atomic kind '" + spec + "'");
}

Lattice parse_shape(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--shape", "expected chain:N or grid:RxC");
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "chain") return Lattice::chain(std::stoi(arg));
  if (kind == "grid") {
    auto x = arg.find('x');
    if (x == std::string::npos)
      throw CLI::ValidationError("--shape", "grid needs RxC");
    return Lattice::grid(std::stoi(arg.substr(0, x)), std::stoi(arg.substr(x + 1)));
  }
  throw CLI::ValidationError("--shape", "unknown shape '" + kind + "'");
}

Scope parse_scope(const std::string& spec, std::uint64_t seed) {
  if (spec == "all") return Scope::all();
  if (spec.rfind("sample:", 0) == 0)
    return Scope::sample(std::stoull(spec.substr(7)), seed);
  throw CLI::ValidationError("--scope", "expected all or sample:K");
}

std::string csv_double(double v) {
  std::ostringstream s;
  s.precision(15);
  s << v;
  return s.str();
}

int cmd_tcm(const std::string& field, const std::string& atoms, double tmax,
            double dt, const Output& out) {
  tcm::TCMConfig cfg;
  cfg.field = parse_field(field);
  cfg.atoms = parse_atoms(atoms);
  double lost = tcm::initial_state(cfg).discarded_mass;
  if (lost > 1e-9)
    std::cerr << "warning: photon window truncation discarded probability mass "
              << lost << "\n";
  auto rows = tcm::run_trace(cfg, tmax, dt);
  std::ostringstream csv;
  csv << "t,inversion,tau_F_ens,tau_atom_rest,tau_atom_atom,tau_atom_field,"
         "tau_residual,tau_approx\n";
  for (const auto& r : rows)
    csv << csv_double(r.t) << "," << csv_double(r.inversion) << ","
        << csv_double(r.tau_field_ens) << "," << csv_double(r.tau_atom_rest) << ","
        << csv_double(r.tau_atom_atom) << "," << csv_double(r.tau_atom_field) << ","
        << csv_double(r.tau_residual) << "," << csv_double(r.tau_approx) << "\n";
  return out.emit(csv.str());
}

int cmd_monotone(const std::string& path, const Output& out) {
  LoadedState st = load_state_file(path);
  std::ostringstream csv;
  csv << "measure,value\n";
  auto row = [&](const char* name, double v) { csv << name << "," << csv_double(v) << "\n"; };

  if (const auto* psi = std::get_if<PureStateVector>(&st)) {
    if (psi->dims.size() != 2)
      throw std::runtime_error("monotone: pure states must carry bipartite dims");
    row("E_S", entropy_of_entanglement(*psi));
    double tau = i_tangle_pure(*psi).value;
    row("C", std::sqrt(tau));
    row("tau", tau);
    ComplexMatrix rho = psi->projector();
    row("N", negativity(rho).value);
    LowerBounds b = lower_bounds(rho);
    row("L_C", b.l_c);
    row("L_tau", b.l_tau);
    if (psi->dims == std::vector<Index>{2, 2}) {
      row("C2", concurrence_two_qubit(rho).value);
      row("tau2", tangle_two_qubit(rho).value);
      row("E_F", eof_two_qubit(rho));
    }
    return out.emit(csv.str());
  }

  const auto& rho = std::get<ComplexMatrix>(st);
  if (!rho.is_bipartite())
    throw std::runtime_error("monotone: density matrices must carry bipartite dims");
  require_density(rho, "monotone");
  row("N", negativity(rho).value);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    std::string mp = "M_" + std::to_string(p).substr(0, 3);
    csv << mp << "," << csv_double(pt_monotone(rho, p, PtMode::root).value) << "\n";
  }
  LowerBounds b = lower_bounds(rho);
  row("L_C", b.l_c);
  row("L_tau", b.l_tau);
  if (rho.dims == std::vector<Index>{2, 2}) {
    row("C2", concurrence_two_qubit(rho).value);
    row("tau2", tangle_two_qubit(rho).value);
    row("E_F", eof_two_qubit(rho));
  }
  return out.emit(csv.str());
}

int cmd_isotropic(int d, int grid, const Output& out) {
  std::ostringstream csv;
  csv << "omega,fidelity,lc_numeric,lc_analytic,l_tau";
  if (d == 2) csv << ",tangle2";
  csv << "\n";
  for (int i = 0; i < grid; ++i) {
    double omega = grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1);
    auto fam = IsotropicFamily::from_omega(d, omega);
    ComplexMatrix rho = isotropic_state(fam);
    LowerBounds b = lower_bounds(rho);
    csv << csv_double(omega) << "," << csv_double(fam.fidelity) << ","
        << csv_double(b.l_c) << "," << csv_double(isotropic_lc_analytic(fam)) << ","
        << csv_double(b.l_tau);
    if (d == 2) csv << "," << csv_double(tangle_two_qubit(rho).value);
    csv << "\n";
  }
  return out.emit(csv.str());
}

int cmd_complementarity(const std::string& relation, int samples, std::uint64_t seed,
                        int n, const Output& out) {
  Rng rng(seed);
  std::ostringstream csv;
  csv << "sample,residual\n";
  for (int s = 0; s < samples; ++s) {
    double residual = 0.0;
    if (relation == "4.6") {
      std::vector<Index> dims(static_cast<std::size_t>(n), 2);
      residual = check_pure_relation(haar_random_pure(dims, rng));
    } else if (relation == "4.7") {
      residual = check_three_qubit_relation(haar_random_pure({2, 2, 2}, rng));
    } else if (relation == "4.23") {
      Index rank = 1 + static_cast<Index>(s % 4);
      ComplexMatrix rho = random_density_matrix({2, 2}, rank, rng);
      TwoQubitReport r = two_qubit_report(rho);
      residual = std::abs(r.separable_uncertainty + r.tangle +
                          r.props1.mean_square + r.props2.mean_square - 1.0);
    } else {
      throw CLI::ValidationError("--relation", "expected 4.6, 4.7 or 4.23");
    }
    csv << s << "," << csv_double(residual) << "\n";
  }
  return out.emit(csv.str());
}

int emit_diff(const DiffReport& rep, const Output& out) {
  int rc = out.emit(diff_report_csv(rep));
  return rc != 0 ? rc : (rep.mismatches.empty() ? 0 : 1);
}

int emit_consistency(const ConsistencyReport& rep, const Output& out) {
  std::ostringstream csv;
  csv << "elements,assignments,checked,failures,bits_communicated\n";
  csv << rep.elements << "," << rep.assignments << "," << rep.checked << ","
      << rep.failures << "," << rep.bits_communicated << "\n";
  int rc = out.emit(csv.str());
  return rc != 0 ? rc : (rep.failures == 0 ? 0 : 1);
}

int cmd_ghz(int n, const std::string& mode, const Output& out) {
  if (mode == "mermin") {
    MerminReport rep = mermin_demo();
    std::ostringstream csv;
    csv << "survivors,unanimous_minus,stabilizer_xxx,control_survivors,control_both_signs\n";
    csv << rep.survivors << "," << (rep.unanimous_minus ? 1 : 0) << ","
        << prediction_char(rep.stabilizer_xxx) << "," << rep.control_survivors << ","
        << (rep.control_both_signs ? 1 : 0) << "\n";
    return out.emit(csv.str());
  }
  Circuit c = build_ghz_circuit(n);
  SignPattern pat = ghz_sign_pattern(n);
  if (mode == "diff") return emit_diff(dual_run(c, pat), out);
  if (mode == "consistency") return emit_consistency(consistency_run(c, pat), out);
  std::cerr << "ghz: unknown mode '" << mode << "'\n";
  return 1;
}

int cmd_cluster(const std::string& shape, const std::string& mode, const Output& out) {
  Lattice lat = parse_shape(shape);
  Circuit c = build_cluster_circuit(lat);
  SignPattern pat = checkerboard_sign_pattern(lat);
  if (mode == "diff") return emit_diff(dual_run(c, pat), out);
  if (mode == "consistency") return emit_consistency(consistency_run(c, pat), out);
  std::cerr << "cluster: unknown mode '" << mode << "'\n";
  return 1;
}

int cmd_gk_diff(const std::string& path, const std::string& signs,
                const std::string& scope, std::uint64_t seed, bool allow_p,
                const Output& out) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open circuit file: " << path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  Circuit c = parse_circuit(buf.str());
  SignPattern pat = signs == "ghz" ? ghz_sign_pattern(c.n)
                                   : checkerboard_sign_pattern(Lattice::chain(c.n));
  return emit_diff(dual_run(c, pat, parse_scope(scope, seed), allow_p), out);
}

int cmd_pattern(const std::string& sequence, const std::string& input, const Output& out) {
  PauliString in = PauliString::parse(input);
  if (in.size() != 1 || in.letters[0] == Pauli::I)
    throw CLI::ValidationError("--input", "expected one of X, Y, Z");

  // Walk the gate list, selecting each pattern by the letter flowing into it.
  std::vector<ClusterGate> gates;
  std::stringstream ss(sequence);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "H") gates.push_back(ClusterGate::H);
    else if (tok == "P") gates.push_back(ClusterGate::P);
    else throw CLI::ValidationError("--sequence", "unknown gate '" + tok + "'");
  }
  if (gates.empty()) throw CLI::ValidationError("--sequence", "empty sequence");

  Lattice five = Lattice::chain(5);
  LHVTable table5 = [&] {
    Circuit c = build_cluster_circuit(five);
    LHVTable t = new_table(5, checkerboard_sign_pattern(five));
    for (const Gate& g : c.gates)
      g.kind == Gate::Kind::H ? apply_h(t, g.a) : apply_cnot(t, g.a, g.b);
    return t;
  }();

  std::ostringstream csv;
  csv << "step,gate,input,output\n";
  Pauli letter = in.letters[0];
  GatePattern composite = identity_pattern();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    GatePattern gp = gate_pattern(gates[i], letter);
    PatternEval ev = eval_pattern(table5, gp.element(), 4);
    csv << i + 1 << "," << (gates[i] == ClusterGate::H ? "H" : "P") << ","
        << pauli_char(letter) << "," << (ev.sign < 0 ? "-" : "+")
        << pauli_char(ev.letter) << "\n";
    composite = concat_patterns(composite, gp);
    letter = ev.letter;
  }

  // Evaluate the composite correlation-center pattern on its own chain.
  Lattice big = composite.lattice;
  Circuit c = build_cluster_circuit(big);
  LHVTable table = new_table(big.size(), checkerboard_sign_pattern(big));
  for (const Gate& g : c.gates)
    g.kind == Gate::Kind::H ? apply_h(table, g.a) : apply_cnot(table, g.a, g.b);
  PatternEval total = eval_pattern(table, composite.element(), composite.outputs[0]);
  csv << "composite," << sequence << "," << input << ","
      << (total.sign < 0 ? "-" : "+") << pauli_char(total.letter) << "\n";
  return out.emit(csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum information machinery: entanglement monotones, "
               "Tavis-Cummings dynamics, complementarity relations, and a dual "
               "stabilizer/LHV simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  app.add_option("--out", out.path, "write CSV to a file instead of stdout")
      ->configurable(false);

  // tcm
  auto* tcm_cmd = app.add_subcommand("tcm", "two-atom Tavis-Cummings tangle trace");
  std::string field = "fock:10", atoms = "ee";
  double tmax = 100.0, dt = 1.0;
  tcm_cmd->add_option("--field", field, "fock:N or coherent:ALPHA");
  tcm_cmd->add_option("--atoms", atoms, "ee|gg|sym-eg|sym-ggee");
  tcm_cmd->add_option("--tmax", tmax, "final time in units of 1/g");
  tcm_cmd->add_option("--dt", dt, "time step");

  // monotone
  auto* mono_cmd = app.add_subcommand("monotone", "measure table for a state file");
  std::string state_path;
  mono_cmd->add_option("--state", state_path, "state file")->required();

  // isotropic
  auto* iso_cmd = app.add_subcommand("isotropic", "isotropic-family lower bounds");
  int iso_d = 3, iso_grid = 50;
  iso_cmd->add_option("--d", iso_d, "subsystem dimension");
  iso_cmd->add_option("--grid", iso_grid, "number of omega grid points");

  // complementarity
  auto* comp_cmd = app.add_subcommand("complementarity", "relation residual sweep");
  std::string relation = "4.23";
  int samples = 1000, comp_n = 3;
  std::uint64_t seed = 1;
  comp_cmd->add_option("--relation", relation, "4.6, 4.7 or 4.23");
  comp_cmd->add_option("--samples", samples, "sample count");
  comp_cmd->add_option("--seed", seed, "rng seed");
  comp_cmd->add_option("--n", comp_n, "qubit count for relation 4.6");

  // ghz
  auto* ghz_cmd = app.add_subcommand("ghz", "GHZ-state simulations");
  int ghz_n = 3;
  std::string ghz_mode = "diff";
  ghz_cmd->add_option("--n", ghz_n, "qubit count");
  ghz_cmd->add_option("mode", ghz_mode, "diff|consistency|mermin");

  // cluster
  auto* cl_cmd = app.add_subcommand("cluster", "cluster-state simulations");
  std::string shape = "chain:5", cl_mode = "diff";
  cl_cmd->add_option("--shape", shape, "chain:N or grid:RxC");
  cl_cmd->add_option("mode", cl_mode, "diff|consistency");

  // gk-diff
  auto* gk_cmd = app.add_subcommand("gk-diff", "dual-simulator diff for a circuit file");
  std::string circuit_path, signs = "ghz", scope = "all";
  std::uint64_t gk_seed = 1;
  bool allow_p = false;
  gk_cmd->add_option("--circuit", circuit_path, "circuit DSL file")->required();
  gk_cmd->add_option("--signs", signs, "ghz|checkerboard");
  gk_cmd->add_option("--scope", scope, "all or sample:K");
  gk_cmd->add_option("--seed", gk_seed, "rng seed for sampling");
  gk_cmd->add_flag("--allow-experimental-p", allow_p, "allow the experimental P rule");

  // pattern
  auto* pat_cmd = app.add_subcommand("pattern", "cluster gate-pattern evaluation");
  std::string sequence = "H", pat_input = "X";
  pat_cmd->add_option("--sequence", sequence, "comma-separated gates, e.g. H,P,H");
  pat_cmd->add_option("--input", pat_input, "input Pauli letter");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tcm_cmd->parsed()) return cmd_tcm(field, atoms, tmax, dt, out);
    if (mono_cmd->parsed()) return cmd_monotone(state_path, out);
    if (iso_cmd->parsed()) return cmd_isotropic(iso_d, iso_grid, out);
    if (comp_cmd->parsed())
      return cmd_complementarity(relation, samples, seed, comp_n, out);
    if (ghz_cmd->parsed()) return cmd_ghz(ghz_n, ghz_mode, out);
    if (cl_cmd->parsed()) return cmd_cluster(shape, cl_mode, out);
    if (gk_cmd->parsed())
      return cmd_gk_diff(circuit_path, signs, scope, gk_seed, allow_p, out);
    if (pat_cmd->parsed()) return cmd_pattern(sequence, pat_input, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
