#pragma once

// The `cohere` command line. `run` is the whole program so tests can drive it
// in-process.
//
// Exit codes: 0 ok, 2 invalid input, 3 mode or dimension mismatch, 4 I/O
// failure, 1 anything else.

#include "cohere/gdc_decide.hpp"
#include "cohere/gdc_numeric.hpp"
#include "cohere/gdc_twoqubit.hpp"
#include "cohere/incoherent_unitary.hpp"
#include "cohere/io.hpp"
#include "cohere/measures.hpp"
#include "cohere/named_states.hpp"
#include "cohere/structure.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace cohere::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidInput = 2, kModeMismatch = 3, kIoFailure = 4 };

class ModeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline double num(double x) { return round_sig12(x); }

inline json unitary_json(const IncoherentUnitary& u) {
  json phases = json::array();
  for (double p : u.phases()) phases.push_back(num(p));
  return {{"dims", u.dims()}, {"permutation", u.perm()}, {"phases", phases}};
}

inline json decision_json(const GdcDecision& d) {
  return {{"is_zero", d.is_zero},
          {"max_overlap", num(d.max_overlap)},
          {"witness_permutation", d.witness_permutation ? json(*d.witness_permutation) : json(nullptr)},
          {"shortcut_used", to_string(d.shortcut_used)},
          {"exhaustive", d.exhaustive},
          {"arrangements_tested", d.arrangements_tested}};
}

inline json two_qubit_json(const TwoQubitReport& r) {
  return {{"c_dc", num(r.c_dc)},
          {"c_gdc", num(r.c_gdc)},
          {"optimal_arrangement", to_string(r.optimal_arrangement)},
          {"det_abs_sq", num(r.det_abs_sq)},
          {"marginal_entropies", {num(r.marginal_entropies[0]), num(r.marginal_entropies[1])}},
          {"dephased_entropies",
           {num(r.dephased_entropies[0]), num(r.dephased_entropies[1]), num(r.dephased_entropies[2])}}};
}

inline json search_json(const SearchResult& r) {
  return {{"upper_bound", num(r.upper_bound)},
          {"evaluations", r.evaluations},
          {"exhaustive", r.exhaustive},
          {"best_unitary", unitary_json(r.best_unitary)}};
}

inline json coherence_summary(const DensityMatrix& rho) {
  json locals = json::array();
  for (int k = 0; k < static_cast<int>(rho.dims().size()); ++k)
    locals.push_back(num(rel_entropy_coherence(partial_trace(rho, {k}))));
  return {{"global_coherence", num(rel_entropy_coherence(rho))},
          {"local_coherences", locals},
          {"distributed_coherence", num(distributed_coherence(rho))}};
}

inline json measure_json(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) {
    json j = coherence_summary(rho);
    return j;
  }
  const MeasureReport r = measure_report(rho);
  return {{"global_coherence", num(r.global_coherence)},
          {"local_coherences", {num(r.local_coherences[0]), num(r.local_coherences[1])}},
          {"distributed_coherence", num(r.distributed_coherence)},
          {"mutual_information", num(r.mutual_information)},
          {"dephased_mutual_information", num(r.dephased_mutual_information)}};
}

inline json certificate_json(const PartitionCertificate& c) {
  json blocks = json::array();
  for (const auto& e : c.block_factors)
    blocks.push_back({{"side", e.side == Side::A ? "A" : "B"},
                      {"block", e.block},
                      {"weight", num(e.weight)},
                      {"reconstruction_error", num(e.reconstruction_error)}});
  return {{"partition_A", c.partition_A}, {"partition_B", c.partition_B}, {"block_factors", blocks}};
}

inline const PureState& require_pure_bipartite(const AnyState& s, const char* mode) {
  const auto* p = std::get_if<PureState>(&s);
  if (!p || p->dims().size() != 2) throw ModeMismatch(std::string("mode ") + mode + " needs a bipartite pure state");
  return *p;
}

inline void maybe_dump(const std::string& path, const AnyState& s) {
  if (!path.empty()) write_text(path, state_json(s).dump(2) + "\n");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Coherence quantifiers for multipartite quantum states", "cohere"};
  app.require_subcommand(1);

  std::string input, dump_path, mode = "decide", out_path, svg_path, demo_name, state_name;
  double tol = 1e-9, structure_tol = 1e-8;
  std::uint64_t budget = 100000, seed = 0;
  int restarts = 16, theta_steps = 101, phi_steps = 101, d = 2;

  auto* measure = app.add_subcommand("measure", "Global, local and distributed coherence report");
  measure->add_option("input", input, "State file")->required();
  measure->add_option("--dump-state", dump_path, "Write the parsed state back out");

  auto* gdc = app.add_subcommand("gdc", "Genuine distributed coherence");
  gdc->add_option("input", input, "State file")->required();
  gdc->add_option("--mode", mode, "decide | two-qubit | search")->check(CLI::IsMember({"decide", "two-qubit", "search"}));
  gdc->add_option("--tol", tol, "Overlap tolerance for deciding zero GDC");
  gdc->add_option("--budget", budget, "Arrangement evaluation budget");
  gdc->add_option("--restarts", restarts, "Phase-search restarts (search mode)");
  gdc->add_option("--seed", seed, "Random seed");
  gdc->add_option("--dump-state", dump_path, "Write the parsed state back out");

  auto* scan = app.add_subcommand("scan", "C_GDC over the rank-three (theta, phi) family");
  scan->add_option("--theta-steps", theta_steps, "Grid points in theta")->default_val(101);
  scan->add_option("--phi-steps", phi_steps, "Grid points in phi")->default_val(101);
  scan->add_option("--out", out_path, "CSV output path")->required();
  scan->add_option("--svg", svg_path, "Optional SVG heatmap path");

  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->add_option("--name", demo_name, "localize | embedding")->required()->check(CLI::IsMember({"localize", "embedding"}));
  demo->add_option("--d", d, "Local dimension for localize")->default_val(2);

  auto* structure = app.add_subcommand("structure", "Certificate of vanishing distributed coherence");
  structure->add_option("input", input, "State file")->required();
  structure->add_option("--tol", structure_tol, "Block product tolerance");
  structure->add_option("--dump-state", dump_path, "Write the parsed state back out");

  auto* state = app.add_subcommand("state", "Emit a named state file");
  state->add_option("--name", state_name, "plus-plus | bell | graph | maximal-gdc | qutrit-example | max-entangled")
      ->required();
  state->add_option("--d", d, "Local dimension for max-entangled")->default_val(2);

  std::vector<const char*> argv{"cohere"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (measure->parsed()) {
      const AnyState s = load_state(input);
      detail::maybe_dump(dump_path, s);
      const DensityMatrix rho = as_density(s);
      if (rho.dims().size() < 2) throw ModeMismatch("measure needs at least two subsystems");
      out << detail::measure_json(rho).dump(2) << '\n';
    } else if (gdc->parsed()) {
      const AnyState s = load_state(input);
      detail::maybe_dump(dump_path, s);
      if (mode == "decide") {
        const PureState& p = detail::require_pure_bipartite(s, "decide");
        DecideOptions opt;
        opt.budget = budget;
        opt.tol = tol;
        opt.seed = seed;
        out << detail::decision_json(decide_gdc(coefficient_matrix(p), opt)).dump(2) << '\n';
      } else if (mode == "two-qubit") {
        const PureState& p = detail::require_pure_bipartite(s, "two-qubit");
        if (p.dims() != Dims{2, 2}) throw ModeMismatch("mode two-qubit needs dims [2, 2]");
        out << detail::two_qubit_json(c_gdc_exact(p)).dump(2) << '\n';
      } else if (mode == "search") {
        if (dims_of(s).size() != 2) throw ModeMismatch("mode search needs a bipartite state");
        if (dims_of(s)[0] > 6 || dims_of(s)[1] > 6) throw ModeMismatch("mode search supports at most 6x6");
        SearchOptions opt;
        opt.budget = budget;
        opt.restarts = restarts;
        opt.seed = seed;
        out << detail::search_json(estimate_gdc(s, opt)).dump(2) << '\n';
      } else {
        throw ModeMismatch("unknown mode " + mode);
      }
    } else if (scan->parsed()) {
      if (theta_steps < 2 || phi_steps < 2) throw InvalidState("steps must be >= 2");
      const auto points = scan_rank_three(theta_steps, phi_steps);
      write_text(out_path, scan_csv(points));
      if (!svg_path.empty()) write_text(svg_path, scan_svg(points, theta_steps, phi_steps));
      std::size_t best = 0;
      for (std::size_t k = 1; k < points.size(); ++k)
        if (points[k].c_gdc > points[best].c_gdc) best = k;
      out << json{{"points", points.size()},
                  {"max_c_gdc", detail::num(points[best].c_gdc)},
                  {"argmax_theta", detail::num(points[best].theta)},
                  {"argmax_phi", detail::num(points[best].phi)}}
                 .dump(2)
          << '\n';
    } else if (demo->parsed()) {
      if (demo_name == "localize") {
        if (d < 2) throw InvalidState("--d must be >= 2");
        const PureState before = states::max_entangled(d);
        const IncoherentUnitary u = invert(generalized_cnot(d, d));
        const PureState after = cohere::apply(u, before);
        out << json{{"d", d},
                    {"before", detail::coherence_summary(projector(before))},
                    {"after", detail::coherence_summary(projector(after))},
                    {"after_state", state_json(after)}}
                   .dump(2)
            << '\n';
      } else if (demo_name == "embedding") {
        const EmbeddingResult r = embed_four_qubit(states::maximal_gdc());
        out << json{{"passed", r.passed},
                    {"max_error", r.max_error},
                    {"regrouped_coherence_rank", coherence_rank(r.regrouped)}}
                   .dump(2)
            << '\n';
        if (!r.passed) return kFailure;
      } else {
        throw ModeMismatch("unknown demo " + demo_name);
      }
    } else if (structure->parsed()) {
      const AnyState s = load_state(input);
      detail::maybe_dump(dump_path, s);
      const DensityMatrix rho = as_density(s);
      if (rho.dims().size() != 2) throw ModeMismatch("structure needs a bipartite state");
      if (rho.dims()[0] > 5 || rho.dims()[1] > 5) throw ModeMismatch("structure supports at most 5x5");
      const auto cert = find_zero_dc_certificate(rho, structure_tol);
      out << json{{"certificate", cert ? detail::certificate_json(*cert) : json("none")},
                  {"delta_mutual_information", detail::num(delta_mutual_information(rho))}}
                 .dump(2)
          << '\n';
    } else if (state->parsed()) {
      if (state_name == "max-entangled") {
        if (d < 2) throw InvalidState("--d must be >= 2");
        out << state_json(states::max_entangled(d)).dump(2) << '\n';
      } else {
        const auto& cat = states::catalog();
        const auto it = cat.find(state_name);
        if (it == cat.end()) throw ModeMismatch("unknown state " + state_name);
        out << state_json(it->second()).dump(2) << '\n';
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ModeMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kModeMismatch;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kModeMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace cohere::cli
