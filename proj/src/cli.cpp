#include "qlab/cli.hpp"

#include "qlab/decompose.hpp"
#include "qlab/error.hpp"
#include "qlab/fock.hpp"
#include "qlab/interferometer.hpp"
#include "qlab/json_io.hpp"
#include "qlab/omega.hpp"
#include "qlab/two_state.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlab {

namespace {

constexpr std::uint64_t kDefaultSeed = 20260809ULL;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileError", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Complex parse_complex_pair(const std::string& text) {
  double re = 0, im = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) != 2)
    fail("InvalidArgument", "expected RE,IM - got '" + text + "'");
  return {re, im};
}

Json params_json(const TwoPortParams& p) {
  Json j;
  j["omega"] = p.omega;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["phi"] = p.phi;
  return j;
}

void print_matrix_pretty(std::ostream& out, const Matrix& m) {
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", m(r, c).real(),
                    m(r, c).imag());
      out << (c ? "  " : "") << buf;
    }
    out << "]\n";
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QAIT_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    fail("InvalidArgument", "QAIT_SEED must be an unsigned integer");
  }
  return kDefaultSeed;
}

int cmd_compile(const std::string& path, const std::string& mirror_phase,
                bool json, std::ostream& out) {
  MirrorPhase mp;
  if (mirror_phase == "omit")
    mp = MirrorPhase::omit;
  else if (mirror_phase == "exact")
    mp = MirrorPhase::exact;
  else
    fail("InvalidArgument", "--mirror-phase must be 'omit' or 'exact'");

  Circuit circuit = parse_netlist(read_file(path));
  CompiledCircuit compiled = compile(circuit, mp);

  const bool square = compiled.map.rows() == compiled.map.cols();
  Json j;
  j["unitary"] = square ? matrix_to_json(compiled.map) : Json(nullptr);
  Json probs = Json::object();
  for (const auto& [label, p] : compiled.detector_probs) probs[label] = p;
  j["detector_probs"] = std::move(probs);
  j["input_modes"] = compiled.input_modes;
  j["output_modes"] = compiled.output_modes;
  if (!square) {
    Json cols = Json::array();
    for (Eigen::Index c = 0; c < compiled.map.cols(); ++c)
      cols.push_back(vector_to_json(compiled.map.col(c)));
    j["isometry_columns"] = std::move(cols);
  }

  if (json) {
    out << j.dump() << '\n';
  } else {
    out << "inputs:";
    for (const auto& m : compiled.input_modes) out << ' ' << m;
    out << "\noutputs:";
    for (const auto& m : compiled.output_modes) out << ' ' << m;
    out << "\nmap:\n";
    print_matrix_pretty(out, compiled.map);
    for (const auto& [label, p] : compiled.detector_probs)
      out << "P(" << label << ") = " << p << '\n';
  }
  return 0;
}

int cmd_mz(double phi, int scan, bool json, bool csv, std::ostream& out) {
  if (scan > 0) {
    if (scan < 2) fail("InvalidArgument", "--scan needs at least 2 points");
    std::vector<std::array<double, 3>> rows(scan);
    const double step = 2.0 * std::numbers::pi / (scan - 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < scan; ++i) {
      auto [p1, p2] = mz_probabilities(i * step);
      rows[i] = {i * step, p1, p2};
    }
    if (json) {
      Json j = Json::array();
      for (const auto& r : rows)
        j.push_back(Json{{"phi", r[0]}, {"P_D1", r[1]}, {"P_D2", r[2]}});
      out << j.dump() << '\n';
    } else {
      if (csv) out << "phi,P_D1,P_D2\n";
      char buf[128];
      for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", r[0], r[1], r[2]);
        out << buf << '\n';
      }
    }
    return 0;
  }
  auto [p1, p2] = mz_probabilities(phi);
  if (json) {
    Json j;
    j["P_D1"] = p1;
    j["P_D2"] = p2;
    out << j.dump() << '\n';
  } else {
    out << "P_D1 = " << p1 << "\nP_D2 = " << p2 << '\n';
  }
  return 0;
}

int cmd_gate(const std::string& name, bool json, std::ostream& out) {
  GateName g = parse_gate_name(name);
  Eigen::Matrix2cd m = gate(g);
  GateRealization real = gate_realization(g);
  FixedPointReport fixed = fixed_point_report(m);
  if (json) {
    Json j;
    j["name"] = gate_name_string(g);
    j["matrix"] = matrix_to_json(m);
    j["t_bs_params"] = params_json(real.bs);
    j["t_mz_params"] = params_json(real.mz);
    Json vectors = Json::array();
    for (const StateVector& v : fixed.fixed_vectors)
      vectors.push_back(vector_to_json(v.amps));
    j["fixed_point"] = Json{{"has_fixed_point", fixed.has_fixed_point},
                            {"eigenphases", fixed.eigenphases},
                            {"fixed_vectors", std::move(vectors)}};
    out << j.dump() << '\n';
  } else {
    out << name << ":\n";
    print_matrix_pretty(out, m);
    out << "t_bs params: omega=" << real.bs.omega << " alpha=" << real.bs.alpha
        << " beta=" << real.bs.beta << " phi=" << real.bs.phi << '\n';
    out << "t_mz params: alpha=" << real.mz.alpha << " beta=" << real.mz.beta
        << " omega=" << real.mz.omega << " phi=" << real.mz.phi << '\n';
    if (fixed.has_fixed_point) {
      out << "fixed point:";
      for (const StateVector& v : fixed.fixed_vectors)
        out << " (" << v.amps(0).real() << "," << v.amps(1).real() << ")";
      out << '\n';
    } else {
      out << "no fixed point\n";
    }
  }
  return 0;
}

int cmd_decompose(const std::string& input, bool emit_netlist, bool json,
                  std::ostream& out) {
  Matrix u = matrix_from_json(Json::parse(read_file(input)));
  if (emit_netlist) {
    out << emit_mesh(u);
    return 0;
  }
  Decomposition d = decompose(u);
  double err = (recompose(d) - u).norm();
  if (json) {
    Json factors = Json::array();
    for (const TwoLevelFactor& f : d.factors) {
      Json fj;
      fj["i"] = f.i;
      fj["j"] = f.j;
      fj["params"] = Json{{"omega", f.params.omega},
                          {"alpha", f.params.alpha},
                          {"beta", f.params.beta},
                          {"phi", f.params.phi}};
      factors.push_back(std::move(fj));
    }
    Json j;
    j["n"] = d.n;
    j["factors"] = std::move(factors);
    j["diagonal"] = d.diagonal;
    j["recompose_error"] = err;
    out << j.dump() << '\n';
  } else {
    out << d.factors.size() << " factor(s) on " << d.n
        << " modes, recompose error " << err << '\n';
    for (const TwoLevelFactor& f : d.factors)
      out << "  (" << f.i << "," << f.j << ") omega=" << f.params.omega
          << " alpha=" << f.params.alpha << " beta=" << f.params.beta
          << " phi=" << f.params.phi << '\n';
  }
  return 0;
}

int cmd_evolve(double E, double A, double t, double hbar, int grid,
               const std::string& psi0_text, bool stationary,
               const std::string& a_text, const std::string& b_text, bool json,
               std::ostream& out) {
  if (stationary) {
    auto [p1, p2] = stationary_probs(E, 0.0, parse_complex_pair(a_text),
                                     parse_complex_pair(b_text), t);
    if (json) {
      Json j;
      j["P1"] = p1;
      j["P2"] = p2;
      out << j.dump() << '\n';
    } else {
      out << "P1 = " << p1 << "\nP2 = " << p2 << '\n';
    }
    return 0;
  }

  TwoStateProblem problem = TwoStateProblem::ground_start(E, A, hbar);
  if (!psi0_text.empty()) {
    double r0, i0, r1, i1;
    if (std::sscanf(psi0_text.c_str(), "%lf,%lf,%lf,%lf", &r0, &i0, &r1, &i1) != 4)
      fail("InvalidArgument", "--psi0 expects RE,IM,RE,IM");
    problem = TwoStateProblem::make(
        E, A, hbar, StateVector::from({Complex(r0, i0), Complex(r1, i1)}));
  }

  const int n = std::max(grid, 1);
  std::vector<std::array<double, 3>> rows(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double ti = n == 1 ? t : t * i / (n - 1);
    auto [p1, p2] = propagator_probs(problem, ti);
    rows[i] = {ti, p1, p2};
  }
  if (json) {
    Json j = Json::array();
    for (const auto& r : rows)
      j.push_back(Json{{"t", r[0]}, {"P1", r[1]}, {"P2", r[2]}});
    out << j.dump() << '\n';
  } else {
    out << "t,P1,P2\n";
    char buf[128];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", r[0], r[1], r[2]);
      out << buf << '\n';
    }
  }
  return 0;
}

int cmd_fock(const std::string& demo, const std::string& alpha_text,
             const std::string& beta_text, bool json, std::ostream& out) {
  if (demo != "cloning")
    fail("InvalidArgument", "the only available demo is 'cloning'");
  CloningReport report =
      cloning_analysis(parse_complex_pair(alpha_text), parse_complex_pair(beta_text));
  if (json) {
    Json copy = Json::array();
    for (const auto& [occ, amp] : report.true_copy.terms)
      copy.push_back(Json{{"occupancy", occ}, {"amp", complex_to_json(amp)}});
    Json j;
    j["alpha"] = complex_to_json(report.alpha);
    j["beta"] = complex_to_json(report.beta);
    j["defect"] = report.defect;
    j["true_copy"] = std::move(copy);
    out << j.dump() << '\n';
  } else {
    out << "cloning defect = " << report.defect << "\ntrue copy:\n";
    for (const auto& [occ, amp] : report.true_copy.terms) {
      out << "  |";
      for (std::size_t i = 0; i < occ.size(); ++i)
        out << (i ? "," : "") << occ[i];
      out << "> x (" << amp.real() << (amp.imag() < 0 ? "" : "+") << amp.imag()
          << "i)\n";
    }
  }
  return 0;
}

int cmd_omega(int maxlen, int registers, const std::string& report_kind,
              int threads, bool json, std::ostream& out) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
  MachineModel m = MachineModel::standard(registers);
  OmegaAccumulator acc = omega(m, maxlen);
  ProbabilityReport probs = probabilities(m, maxlen);

  std::vector<Qbit> all_zero(m.k, Qbit{1.0, 0.0});
  Complex upsilon_zero = upsilon(all_zero, m, maxlen);
  ComplexityResult h_zero = complexity(all_zero, m, maxlen);
  ComplexityResult h_zero_cond = conditional_complexity(all_zero, all_zero, m, maxlen);

  Json j;
  j["omega"] = complex_to_json(acc.omega);
  j["omega_sq"] = acc.omega_sq;
  j["kraft"] = acc.kraft;
  j["max_len"] = acc.max_len;
  j["chain_ok"] = probs.chain_ok;
  Json complexities = Json::array();
  for (const OutputClass& cls : probs.classes) {
    Json states = Json::array();
    for (const Qbit& q : cls.states) states.push_back(qbit_to_json(q));
    complexities.push_back(Json{{"state", std::move(states)},
                                {"H", cls.h},
                                {"P", cls.prob},
                                {"canonical", cls.canonical.bits}});
  }
  j["complexities"] = std::move(complexities);
  j["upsilon_all_zero"] = complex_to_json(upsilon_zero);
  j["h_all_zero"] = h_zero.h ? Json(*h_zero.h) : Json(nullptr);
  j["h_zero_given_zero"] = h_zero_cond.h ? Json(*h_zero_cond.h) : Json(nullptr);

  if (report_kind == "relations") {
    InequalityReport rep = inequality_report(m, maxlen);
    Json slacks = Json::object();
    for (const InequalityEntry& e : rep.entries)
      slacks[e.relation] = Json{{"slack", e.slack}, {"pairs", e.pairs}};
    j["slacks"] = std::move(slacks);
    j["machine_independence"] = rep.machine_independence;
    j["common_outputs"] = rep.common_outputs;
    if (rep.witness) {
      j["witness"] = Json{{"H_set", rep.witness->h_set},
                          {"max_member_H", rep.witness->h_max_member},
                          {"low", qbit_to_json(rep.witness->low)},
                          {"high", qbit_to_json(rep.witness->high)}};
    } else {
      j["witness"] = nullptr;
    }
  } else if (!report_kind.empty()) {
    fail("InvalidArgument", "--report supports only 'relations'");
  }

  if (json) {
    out << j.dump() << '\n';
  } else {
    out << "omega = " << acc.omega.real() << (acc.omega.imag() < 0 ? "" : "+")
        << acc.omega.imag() << "i\nomega_sq = " << acc.omega_sq
        << "\nkraft = " << acc.kraft << "\nclasses = " << probs.classes.size()
        << " (chain " << (probs.chain_ok ? "ok" : "VIOLATED") << ")\n";
    for (const OutputClass& cls : probs.classes)
      out << "  H=" << cls.h << " P=" << cls.prob << " canonical=" << cls.canonical.bits
          << '\n';
    if (j.contains("slacks")) {
      for (const auto& [rel, entry] : j["slacks"].items())
        out << "  " << rel << ": slack " << entry["slack"] << " over "
            << entry["pairs"] << " pair(s)\n";
      out << "  machine independence: " << j["machine_independence"] << " over "
          << j["common_outputs"] << " common output(s)\n";
    }
  }
  return 0;
}

int cmd_qbit(const std::string& code_text, std::uint64_t n, bool have_seed,
             std::uint64_t seed, const std::string& alpha_text,
             const std::string& beta_text, bool json, std::ostream& out) {
  Qbit q = halting_fixed_point();
  if (!code_text.empty()) {
    double w, p, d;
    if (std::sscanf(code_text.c_str(), "%lf,%lf,%lf", &w, &p, &d) != 3)
      fail("InvalidArgument", "--code expects OMEGA,PHI,DELTA");
    q = code_qbit(w, p, d);
  } else if (!alpha_text.empty() || !beta_text.empty()) {
    if (alpha_text.empty() || beta_text.empty())
      fail("InvalidArgument", "--alpha and --beta must be given together");
    q = make_qbit(parse_complex_pair(alpha_text), parse_complex_pair(beta_text));
  }

  auto [pt, pf] = measure_probs(q);
  const char* cls = classify(q) == CbitClass::classical_one    ? "classical-one"
                    : classify(q) == CbitClass::classical_zero ? "classical-zero"
                                                               : "nonclassical";
  Json j;
  j["alpha"] = complex_to_json(q.alpha);
  j["beta"] = complex_to_json(q.beta);
  j["class"] = cls;
  j["P_t"] = pt;
  j["P_f"] = pf;

  if (n > 0) {
    std::uint64_t s = have_seed ? seed : default_seed();
    SampleCounts counts = sample_measurements(q, n, s);
    j["seed"] = s;
    j["count_t"] = counts.count_t;
    j["count_f"] = counts.count_f;
    j["freq_t"] = static_cast<double>(counts.count_t) / static_cast<double>(n);
  }

  if (json) {
    out << j.dump() << '\n';
  } else {
    out << "alpha = " << q.alpha.real() << (q.alpha.imag() < 0 ? "" : "+")
        << q.alpha.imag() << "i, beta = " << q.beta.real()
        << (q.beta.imag() < 0 ? "" : "+") << q.beta.imag() << "i (" << cls
        << ")\nP_t = " << pt << ", P_f = " << pf << '\n';
    if (n > 0)
      out << "count_t = " << j["count_t"] << ", count_f = " << j["count_f"]
          << " (seed " << j["seed"] << ")\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"desk-scale quantum laboratory"};
  app.require_subcommand(1);

  // compile
  auto* compile_cmd = app.add_subcommand("compile", "compile a netlist file");
  std::string compile_path, mirror_phase = "omit";
  bool compile_json = false;
  compile_cmd->add_option("file", compile_path)->required();
  compile_cmd->add_option("--mirror-phase", mirror_phase);
  compile_cmd->add_flag("--json", compile_json);

  // mz
  auto* mz_cmd = app.add_subcommand("mz", "Mach-Zehnder detection probabilities");
  double mz_phi = 0.0;
  int mz_scan = 0;
  bool mz_json = false, mz_csv = false;
  mz_cmd->add_option("--phi", mz_phi);
  mz_cmd->add_option("--scan", mz_scan);
  mz_cmd->add_flag("--json", mz_json);
  mz_cmd->add_flag("--csv", mz_csv);

  // gate
  auto* gate_cmd = app.add_subcommand("gate", "gate catalog lookup");
  std::string gate_name;
  bool gate_json = false;
  gate_cmd->add_option("name", gate_name)->required();
  gate_cmd->add_flag("--json", gate_json);

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "two-level decomposition");
  std::string dec_input;
  bool dec_emit = false, dec_json = false;
  dec_cmd->add_option("--input", dec_input)->required();
  dec_cmd->add_flag("--emit-netlist", dec_emit);
  dec_cmd->add_flag("--json", dec_json);

  // evolve
  auto* ev_cmd = app.add_subcommand("evolve", "two-state dynamics");
  double ev_E = 0, ev_A = 0, ev_t = 0, ev_hbar = 1.0;
  int ev_grid = 1;
  std::string ev_psi0, ev_a, ev_b;
  bool ev_stationary = false, ev_json = false;
  ev_cmd->add_option("--E", ev_E);
  ev_cmd->add_option("--A", ev_A);
  ev_cmd->add_option("--t", ev_t);
  ev_cmd->add_option("--hbar", ev_hbar);
  ev_cmd->add_option("--grid", ev_grid);
  ev_cmd->add_option("--psi0", ev_psi0);
  ev_cmd->add_flag("--stationary", ev_stationary);
  ev_cmd->add_option("--a", ev_a);
  ev_cmd->add_option("--b", ev_b);
  ev_cmd->add_flag("--json", ev_json);

  // fock
  auto* fock_cmd = app.add_subcommand("fock", "Fock-space demos");
  std::string fock_demo, fock_alpha, fock_beta;
  bool fock_json = false;
  fock_cmd->add_option("--demo", fock_demo)->required();
  fock_cmd->add_option("--alpha", fock_alpha)->required();
  fock_cmd->add_option("--beta", fock_beta)->required();
  fock_cmd->add_flag("--json", fock_json);

  // omega
  auto* om_cmd = app.add_subcommand("omega", "halting amplitudes and complexity");
  int om_maxlen = 8, om_registers = 2, om_threads = 0;
  std::string om_report;
  bool om_json = false;
  om_cmd->add_option("--maxlen", om_maxlen)->required();
  om_cmd->add_option("--registers", om_registers);
  om_cmd->add_option("--report", om_report);
  om_cmd->add_option("--threads", om_threads);
  om_cmd->add_flag("--json", om_json);

  // qbit
  auto* qb_cmd = app.add_subcommand("qbit", "qbit coding and sampling");
  std::string qb_code, qb_alpha, qb_beta;
  std::uint64_t qb_n = 0, qb_seed = 0;
  bool qb_json = false;
  qb_cmd->add_option("--code", qb_code);
  qb_cmd->add_option("--sample", qb_n);
  auto* seed_opt = qb_cmd->add_option("--seed", qb_seed);
  qb_cmd->add_option("--alpha", qb_alpha);
  qb_cmd->add_option("--beta", qb_beta);
  qb_cmd->add_flag("--json", qb_json);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (app.got_subcommand(compile_cmd))
      return cmd_compile(compile_path, mirror_phase, compile_json, out);
    if (app.got_subcommand(mz_cmd))
      return cmd_mz(mz_phi, mz_scan, mz_json, mz_csv, out);
    if (app.got_subcommand(gate_cmd)) return cmd_gate(gate_name, gate_json, out);
    if (app.got_subcommand(dec_cmd))
      return cmd_decompose(dec_input, dec_emit, dec_json, out);
    if (app.got_subcommand(ev_cmd))
      return cmd_evolve(ev_E, ev_A, ev_t, ev_hbar, ev_grid, ev_psi0,
                        ev_stationary, ev_a, ev_b, ev_json, out);
    if (app.got_subcommand(fock_cmd))
      return cmd_fock(fock_demo, fock_alpha, fock_beta, fock_json, out);
    if (app.got_subcommand(om_cmd))
      return cmd_omega(om_maxlen, om_registers, om_report, om_threads, om_json, out);
    if (app.got_subcommand(qb_cmd))
      return cmd_qbit(qb_code, qb_n, seed_opt->count() > 0, qb_seed, qb_alpha,
                      qb_beta, qb_json, out);
  } catch (const Error& e) {
    Json j;
    j["error"] = e.kind();
    j["detail"] = e.what();
    out << j.dump() << '\n';
    return 1;
  }
  err << "no subcommand selected\n";
  return 2;
}

}  // namespace qlab
