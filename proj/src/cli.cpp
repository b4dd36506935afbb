#include "statemap/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "statemap/channels.hpp"
#include "statemap/duality.hpp"
#include "statemap/io.hpp"
#include "statemap/limits_lab.hpp"
#include "statemap/positivity.hpp"
#include "statemap/schmidt.hpp"

namespace statemap::cli {

namespace {

using io::Json;

void emit(const CommandConfig& cfg, const Json& j, std::ostream& out) {
  if (cfg.output.empty()) {
    out << io::dump(j);
  } else {
    io::write_json_file(cfg.output, j);
  }
}

SuperOperator load_map(const Json& j) {
  if (j.is_object() && j.contains("dim_in")) return io::superoperator_from_json(j);
  const auto c = io::choi_from_json(j);
  return c.twisted ? twisted_jamiolkowski_inverse(c.twisted_op) : jamiolkowski_inverse(c.plain);
}

int do_convert(const CommandConfig& cfg, std::ostream& out) {
  const Json in = io::read_json_file(cfg.input);
  if (cfg.direction == "j") {
    emit(cfg, io::to_json(jamiolkowski(io::superoperator_from_json(in))), out);
  } else if (cfg.direction == "jtilde") {
    emit(cfg, io::to_json(twisted_jamiolkowski(io::superoperator_from_json(in))), out);
  } else {
    const auto c = io::choi_from_json(in);
    const bool want_twisted = cfg.direction == "inverse-jtilde";
    if (c.twisted != want_twisted) {
      throw MalformedInput(std::string("direction ") + cfg.direction + " needs a Choi file with twisted=" +
                           (want_twisted ? "true" : "false"));
    }
    emit(cfg, io::to_json(want_twisted ? twisted_jamiolkowski_inverse(c.twisted_op) : jamiolkowski_inverse(c.plain)),
         out);
  }
  return kOk;
}

int do_check(const CommandConfig& cfg, std::ostream& out) {
  const SuperOperator phi = load_map(io::read_json_file(cfg.input));
  PositivityVerdict v;
  if (cfg.kind == "hermiticity") {
    v = preserves_hermiticity(phi, cfg.tol);
  } else if (cfg.kind == "positivity") {
    v = preserves_hermiticity(phi, cfg.tol);
    if (v.is_yes()) v = preserves_positivity(phi, cfg.restarts, cfg.seed);
  } else if (cfg.kind == "cp") {
    v = is_completely_positive(phi, cfg.tol);
  } else {
    const std::size_t k = cfg.harness_k.value_or(std::max(phi.dim_in, phi.dim_out));
    const HarnessReport rep = choi_theorem_harness(phi, k, cfg.trials, cfg.seed);
    emit(cfg, io::to_json(rep), out);
    return rep.cp.is_yes() ? kOk : kCertifiedNo;
  }
  emit(cfg, io::to_json(v), out);
  return v.is_yes() ? kOk : kCertifiedNo;
}

int do_kraus(const CommandConfig& cfg, std::ostream& out) {
  const Json in = io::read_json_file(cfg.input);
  ChoiOperator choi;
  if (in.is_object() && in.contains("dim_in")) {
    choi = jamiolkowski(io::superoperator_from_json(in));
  } else {
    const auto c = io::choi_from_json(in);
    choi = c.twisted ? jamiolkowski(twisted_jamiolkowski_inverse(c.twisted_op)) : c.plain;
  }
  emit(cfg, io::to_json(choi_map(choi, cfg.tol)), out);
  return kOk;
}

int do_schmidt(const CommandConfig& cfg, std::ostream& out) {
  const Json in = io::read_json_file(cfg.input);
  Json result;
  if (in.is_object() && in.contains("data")) {
    const BipartiteVector v = io::vector_from_json(in);
    result["schmidt_rank"] = schmidt_rank_vector(v, cfg.tol);
    result["tol"] = cfg.tol;
    emit(cfg, result, out);
    return kOk;
  }
  const auto c = io::choi_from_json(in);
  if (!c.twisted) throw MalformedInput("schmidt expects a state on H1 (x) H2, i.e. a Choi file with twisted=true");
  const TwistedChoiOperator& rho = c.twisted_op;
  result["schmidt_rank"] = schmidt_rank_state(rho, cfg.tol);
  result["tol"] = cfg.tol;
  if (cfg.measure) {
    MeasureOptions opts;
    opts.tol = cfg.tol;
    opts.restarts = cfg.restarts;
    opts.mix_dim = cfg.mix_dim;
    opts.seed = cfg.seed;
    result["measure"] = io::to_json(schmidt_measure(DensityState(rho.matrix), rho.dim1, rho.dim2, opts));
  }
  emit(cfg, result, out);
  return kOk;
}

int do_lab(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.n_values.empty()) throw MalformedInput("lab needs --n");
  TruncationSeries s;
  switch (family_from_string(cfg.family)) {
    case Family::jam_discontinuity:
      s = run_jam_discontinuity(cfg.n_values, cfg.seed);
      break;
    case Family::kraus_sqrt_n:
      s = run_kraus_sqrt_n(cfg.n_values);
      break;
    case Family::nuclear_blowup:
      s = run_nuclear_blowup(cfg.n_values, cfg.coefficients);
      break;
  }
  if (cfg.csv.empty()) {
    write_csv(out, s);
  } else {
    std::ofstream f(cfg.csv);
    if (!f) throw MalformedInput("cannot write '" + cfg.csv + "'");
    write_csv(f, s);
  }
  return kOk;
}

}  // namespace

int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol > 0.0)) throw MalformedInput("--tol must be positive");
    if (cfg.command == "convert") return do_convert(cfg, out);
    if (cfg.command == "check") return do_check(cfg, out);
    if (cfg.command == "kraus") return do_kraus(cfg, out);
    if (cfg.command == "schmidt") return do_schmidt(cfg, out);
    if (cfg.command == "lab") return do_lab(cfg, out);
    throw MalformedInput("unknown command '" + cfg.command + "'");
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kShapeMismatch;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kMalformedInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformedInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Channel-state duality toolkit"};
  app.require_subcommand(1);

  auto add_in = [&](CLI::App* sub) { sub->add_option("--in", cfg.input, "input JSON file")->required(); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.output, "output JSON file (default stdout)"); };
  auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", cfg.tol, "relative tolerance"); };

  auto* convert = app.add_subcommand("convert", "superoperator <-> Choi operator");
  add_in(convert);
  add_out(convert);
  convert->add_option("--direction", cfg.direction)
      ->check(CLI::IsMember({"j", "jtilde", "inverse-j", "inverse-jtilde"}));

  auto* check = app.add_subcommand("check", "hermiticity / positivity / complete positivity");
  add_in(check);
  add_out(check);
  add_tol(check);
  auto* kind_opt =
      check->add_option("--kind", cfg.kind)->check(CLI::IsMember({"hermiticity", "positivity", "cp", "choi-harness"}));
  // --cp etc. as shorthand for --kind cp
  for (const char* name : {"hermiticity", "positivity", "cp", "choi-harness"}) {
    const std::string kind = name;
    check->add_flag_callback("--" + kind, [&cfg, kind] { cfg.kind = kind; }, "same as --kind " + kind)
        ->excludes(kind_opt);
  }
  check->add_option("--seed", cfg.seed);
  check->add_option("--restarts", cfg.restarts)->check(CLI::PositiveNumber);
  check->add_option("--k", cfg.harness_k, "ancilla dimension for choi-harness")->check(CLI::PositiveNumber);
  check->add_option("--trials", cfg.trials, "random inputs for choi-harness");

  auto* kraus = app.add_subcommand("kraus", "Choi operator -> Kraus-sum channel");
  add_in(kraus);
  add_out(kraus);
  add_tol(kraus);

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt rank of vectors and states");
  add_in(schmidt);
  add_out(schmidt);
  add_tol(schmidt);
  schmidt->add_flag("--measure", cfg.measure, "also estimate the Schmidt measure");
  schmidt->add_option("--seed", cfg.seed);
  schmidt->add_option("--restarts", cfg.restarts);
  schmidt->add_option("--mix-dim", cfg.mix_dim);

  auto* lab = app.add_subcommand("lab", "truncation sweeps");
  lab->add_option("family", cfg.family)
      ->required()
      ->check(CLI::IsMember({"jam-discontinuity", "kraus-sqrt-n", "nuclear-blowup"}));
  lab->add_option("--n", cfg.n_values, "comma-separated N values")->delimiter(',')->required();
  lab->add_option("--csv", cfg.csv, "output CSV (default stdout)");
  lab->add_option("--coeffs", cfg.coefficients, "custom nuclear-blowup coefficients")->delimiter(',');
  lab->add_option("--seed", cfg.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformedInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace statemap::cli
