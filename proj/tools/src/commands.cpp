#include "oneshot/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oneshot/assist.hpp"
#include "oneshot/channels.hpp"
#include "oneshot/correlations.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/io.hpp"
#include "oneshot/protocol.hpp"
#include "oneshot/radius.hpp"

namespace oneshot::cli {

using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  int restarts = 0;
  double tolerance = 0.0;
  int threads = 1;
  std::string format = "text";
  std::string out_path;

  SolverOptions solver() const {
    SolverOptions o;
    o.seed = seed;
    o.restarts = restarts;
    o.tolerance = tolerance;
    o.threads = threads;
    return o;
  }
};

// Marks a report whose own certificate does not check out; the report is
// still written and the command exits with kCertificate.
void certify(Json& r, bool ok, const std::string& what) {
  if (!r.contains("certified") || r["certified"].get<bool>()) r["certified"] = ok;
  if (!ok) r["failure"] = what;
}

int parse_int_suffix(const std::string& spec, const std::string& prefix) {
  const std::string rest = spec.substr(prefix.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError("bad built-in name '" + spec + "'");
  return std::stoi(rest);
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// A channel argument is a file path, or one of the built-in names
// prevedel, hashing-M, noiseless-R, uniform-RxK.
Channel resolve_channel(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::load_channel(spec);
  if (spec == "prevedel") return make_prevedel();
  if (starts_with(spec, "hashing-")) return make_hashing_channel(parse_int_suffix(spec, "hashing-"));
  if (starts_with(spec, "noiseless-")) return make_noiseless_channel(parse_int_suffix(spec, "noiseless-"));
  if (starts_with(spec, "uniform-")) {
    const auto x = spec.find('x', 8);
    if (x == std::string::npos) throw ValidationError("bad built-in name '" + spec + "' (expected uniform-RxK)");
    return make_uniform_channel(parse_int_suffix(spec.substr(0, x), "uniform-"),
                                parse_int_suffix("k" + spec.substr(x + 1), "k"));
  }
  throw ValidationError("no such file or built-in channel: '" + spec + "'");
}

// A correlation argument is a file path, or one of pr-J+ / pr-J-, tsirelson,
// device-e-M, det-I.
Correlation resolve_correlation(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::load_correlation(spec);
  if (spec == "tsirelson") return tsirelson_box();
  if (starts_with(spec, "device-e-")) return device_E(parse_int_suffix(spec, "device-e-"));
  if (starts_with(spec, "det-")) {
    const int i = parse_int_suffix(spec, "det-");
    if (i < 0 || i > 15) throw ValidationError("deterministic box index must be in 0..15");
    return deterministic_boxes()[i];
  }
  if (starts_with(spec, "pr-") && spec.size() == 5 && (spec[4] == '+' || spec[4] == '-'))
    return pr_box(parse_int_suffix(spec.substr(0, 4), "pr-"), spec[4] == '+' ? 1 : -1);
  throw ValidationError("no such file or built-in correlation: '" + spec + "'");
}

Json hermitian_json(const HermitianOp& h) {
  Json rows = Json::array();
  for (int i = 0; i < h.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < h.dim(); ++j) row.push_back({h(i, j).real(), h(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string number_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void render_text(const Json& j, std::ostream& os, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    os << indent << it.key() << ":";
    if (v.is_object()) {
      os << "\n";
      render_text(v, os, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << "\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << indent << "  - [" << i << "]\n";
        render_text(v[i], os, indent + "    ");
      }
    } else if (v.is_number_float()) {
      os << " " << number_text(v.get<double>()) << "\n";
    } else if (v.is_string()) {
      os << " " << v.get<std::string>() << "\n";
    } else {
      os << " " << v.dump() << "\n";
    }
  }
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream os;
  if (cfg.format == "json") {
    os << report.dump(2) << "\n";
  } else {
    render_text(report, os, "");
  }
  if (cfg.out_path.empty())
    out << os.str();
  else
    io::write_file(cfg.out_path, os.str());
}

Json cmd_succ(const std::string& spec) {
  const Channel ch = resolve_channel(spec);
  const double value = succ_unassisted(ch);
  const BruteForceSucc oracle = brute_force_succ(ch);
  const bool agree = std::abs(value - oracle.value) <= 1e-9;
  Json r;
  r["command"] = "succ";
  r["channel"] = ch.name();
  r["value"] = value;
  r["witness"] = {{"x0", ch.inputs()[oracle.x0]}, {"x1", ch.inputs()[oracle.x1]}};
  r["oracle_value"] = oracle.value;
  r["oracle_agreement"] = agree;
  certify(r, agree, "succ: closed form and brute-force oracle disagree");
  return r;
}

Json cmd_succ_ns(const std::string& spec) {
  const Channel ch = resolve_channel(spec);
  const SuccNsResult res = succ_ns(ch);
  const double residual = std::abs(res.max_distance - 2.0 * (res.value - 0.5));
  Json r;
  r["command"] = "succ-ns";
  r["channel"] = ch.name();
  r["value"] = res.value;
  r["radius"] = 2.0 * (res.value - 0.5);
  r["center"] = res.center;
  r["max_distance"] = res.max_distance;
  r["center_residual"] = residual;
  certify(r, !(residual > 1e-8), "succ-ns: center does not attain the radius");
  return r;
}

Json cmd_succ_q2(const std::string& spec, int n, const RunConfig& cfg) {
  const Channel ch = resolve_channel(spec);
  const SuccQnResult res = succ_qn(ch, n, cfg.solver());
  Json fam = Json::array();
  for (std::size_t y = 0; y < res.family.elements.size(); ++y) {
    const FamilyElement& e = res.family.elements[y];
    Json el;
    el["output"] = ch.outputs()[y];
    el["type"] = to_string(e.type);
    if (e.type == ElementType::Rank1 && n == 2) {
      el["theta"] = e.theta;
      el["phi"] = e.phi;
    }
    if (n > 2) el["projector"] = hermitian_json(e.projector.op());
    fam.push_back(std::move(el));
  }
  const double cert_tol = 1e-6;
  const bool gap_ok = res.radius.gap() <= cert_tol;
  const bool witness_ok = !res.witness.rho0.empty() && res.value - res.witness_value <= cert_tol;
  Json r;
  r["command"] = "succ-q2";
  r["channel"] = ch.name();
  r["dimension"] = n;
  r["value"] = res.value;
  r["heuristic"] = res.heuristic;
  r["family"] = std::move(fam);
  r["radius"] = res.radius.radius;
  r["center"] = hermitian_json(res.radius.center);
  r["dual_lower_bound"] = res.radius.dual_lower_bound;
  r["pairwise_bound"] = res.radius.pairwise_bound;
  r["gap"] = res.radius.gap();
  r["witness_value"] = res.witness_value;
  r["assignments_searched"] = res.assignments_searched;
  certify(r, gap_ok && witness_ok, "succ-q2: radius certificate gap exceeds 1e-6");
  return r;
}

Json cmd_locfrac(const std::string& spec) {
  const Correlation d = resolve_correlation(spec);
  if (!d.is_binary()) throw ValidationError("locfrac: the box must have binary alphabets");
  const LocalFraction lf = local_fraction(d);
  // Reconstruct d from the decomposition.
  const auto boxes = deterministic_boxes();
  double err = 0.0;
  for (std::size_t e = 0; e < d.table().size(); ++e) {
    double v = lf.residual ? (1.0 - lf.alpha) * lf.residual->table()[e] : 0.0;
    for (int i = 0; i < 16; ++i) v += lf.weights[i] * boxes[i].table()[e];
    err = std::max(err, std::abs(v - d.table()[e]));
  }
  Json r;
  r["command"] = "locfrac";
  r["local_fraction"] = lf.alpha;
  r["weights"] = lf.weights;
  r["chsh"] = chsh_values(d);
  r["residual_nonsignaling"] = lf.residual ? is_nonsignaling(*lf.residual, 1e-6) : true;
  r["reconstruction_error"] = err;
  certify(r, err <= 1e-8, "locfrac: decomposition does not reconstruct the box");
  return r;
}

Json strategy_json(const ProtocolStrategy& st) { return Json::parse(io::format_strategy(st)); }

Json cmd_simulate(const std::string& chan, const std::string& corr, const std::string& strat_path,
                  const std::string& save_path, const RunConfig& cfg) {
  const Channel ch = resolve_channel(chan);
  const Correlation d = resolve_correlation(corr);
  Json r;
  r["command"] = "simulate";
  r["channel"] = ch.name();
  r["nonsignaling"] = is_nonsignaling(d);
  if (!strat_path.empty()) {
    const ProtocolStrategy st = io::load_strategy(strat_path);
    r["supplied_strategy_value"] = simulate(ch, d, st);
  }
  const AssistedResult res = optimal_assisted_succ(ch, d, cfg.solver());
  const double replay = simulate(ch, d, res.strategy);
  r["optimum"] = res.value;
  r["encoders_enumerated"] = res.encoders;
  r["strategy"] = strategy_json(res.strategy);
  r["unassisted"] = succ_unassisted(ch);
  r["device_bound"] = res.device_bound;
  r["device_alphabet_bound"] = device_alphabet_bound(ch, d);
  r["device_bound_holds"] = res.value <= res.device_bound + 1e-9;
  r["device_bound_equality"] = std::abs(res.value - res.device_bound) <= 1e-9;
  if (res.local_fraction_bound) {
    r["local_fraction_bound"] = *res.local_fraction_bound;
    r["local_fraction_bound_holds"] = res.value <= *res.local_fraction_bound + 1e-6;
  }
  r["witness_replay"] = replay;
  if (!save_path.empty()) io::write_file(save_path, io::format_strategy(res.strategy));
  certify(r, std::abs(replay - res.value) <= 1e-12, "simulate: witness does not reproduce the optimum");
  certify(r, r["device_bound_holds"].get<bool>() && (!res.local_fraction_bound || r["local_fraction_bound_holds"].get<bool>()),
          "simulate: optimum exceeds a proven bound");
  return r;
}

struct GenArgs {
  std::string target;
  int m = 2;
  int j = 1;
  std::string sign = "+";
  int inputs = 2;
  int outputs = 2;
  int index = 0;
};

std::string cmd_gen(const GenArgs& g) {
  const std::string& t = g.target;
  if (t == "prevedel") return io::format_channel(make_prevedel());
  if (t == "hashing") return io::format_channel(make_hashing_channel(g.m));
  if (t == "uniform") return io::format_channel(make_uniform_channel(g.inputs, g.outputs));
  if (t == "noiseless") return io::format_channel(make_noiseless_channel(g.inputs));
  if (t == "pr") {
    if (g.sign != "+" && g.sign != "-") throw ValidationError("gen pr: --sign must be + or -");
    return io::format_correlation(pr_box(g.j, g.sign == "+" ? 1 : -1));
  }
  if (t == "tsirelson") return io::format_correlation(tsirelson_box());
  if (t == "device-e") return io::format_correlation(device_E(g.m));
  if (t == "deterministic") {
    if (g.index < 0 || g.index > 15) throw ValidationError("gen deterministic: --index must be in 0..15");
    return io::format_correlation(deterministic_boxes()[g.index]);
  }
  throw ValidationError("gen: unknown target '" + t + "'");
}

Json cmd_verify_bounds(const std::vector<std::string>& channels, const std::vector<std::string>& correlations,
                       const RunConfig& cfg, bool& all_hold) {
  Json r;
  r["command"] = "verify-bounds";
  Json chans = Json::array();
  all_hold = true;
  for (const auto& spec : channels) {
    const Channel ch = resolve_channel(spec);
    Json c;
    c["channel"] = ch.name();
    const BoundCheck t4 = check_ns_advantage_bound(ch);
    c["ns_advantage"] = {{"lhs", t4.lhs}, {"rhs", t4.rhs}, {"holds", t4.holds}};
    all_hold = all_hold && t4.holds;
    const double succ = succ_unassisted(ch);
    if (ch.num_outputs() <= 8 && succ > 0.5 + 1e-12) {
      const SuccQnResult q = succ_qn(ch, 2, cfg.solver());
      const RatioCheck c9 = check_binary_quantum_ratio(ch, q.value);
      c["binary_quantum_ratio"] = {{"succ_q2", q.value}, {"ratio", c9.ratio}, {"bound", c9.bound}, {"holds", c9.holds}};
      all_hold = all_hold && c9.holds;
    }
    Json pairs = Json::array();
    for (const auto& cspec : correlations) {
      const Correlation d = resolve_correlation(cspec);
      Json p;
      p["correlation"] = cspec;
      if (encoder_count(ch, d) > kEncoderBudget) {
        p["skipped"] = "encoder budget exceeded";
        pairs.push_back(std::move(p));
        continue;
      }
      const AssistedResult a = optimal_assisted_succ(ch, d, cfg.solver());
      const BoundResult t5 = check_device_bound(ch, d, a.value);
      p["value"] = a.value;
      p["device_bound"] = {{"bound", t5.bound}, {"holds", t5.holds}};
      all_hold = all_hold && t5.holds;
      if (d.is_binary() && is_nonsignaling(d)) {
        const BoundResult t6 = check_local_fraction_bound(ch, d, a.value);
        p["local_fraction_bound"] = {{"bound", t6.bound}, {"holds", t6.holds}};
        all_hold = all_hold && t6.holds;
      }
      pairs.push_back(std::move(p));
    }
    if (!correlations.empty()) c["assisted"] = std::move(pairs);
    chans.push_back(std::move(c));
  }
  r["channels"] = std::move(chans);
  r["all_hold"] = all_hold;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-shot single-bit success probabilities with and without assistance", "oneshot"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Master seed for randomized restarts");
    sub->add_option("--restarts", cfg.restarts, "Restarts per search (0 = default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", cfg.tolerance, "Solver tolerance (0 = default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
  };

  std::string channel, correlation, strategy_path, save_path;
  int dim = 2;
  auto* succ = app.add_subcommand("succ", "Unassisted success probability");
  succ->add_option("channel", channel, "Channel file or built-in name")->required();
  add_common(succ);
  auto* succ_ns_cmd = app.add_subcommand("succ-ns", "Non-signaling assisted success probability");
  succ_ns_cmd->add_option("channel", channel, "Channel file or built-in name")->required();
  add_common(succ_ns_cmd);
  auto* succ_q2 = app.add_subcommand("succ-q2", "Success probability with a shared entangled pair");
  succ_q2->add_option("channel", channel, "Channel file or built-in name")->required();
  succ_q2->add_option("--dim", dim, "Local dimension n (2 is exhaustive, 3-4 heuristic)")->check(CLI::Range(2, 4));
  add_common(succ_q2);
  auto* locfrac = app.add_subcommand("locfrac", "Local fraction of a binary box");
  locfrac->add_option("correlation", correlation, "Correlation file or built-in name")->required();
  add_common(locfrac);
  auto* sim = app.add_subcommand("simulate", "Optimal deterministic protocol for a channel and device");
  sim->add_option("channel", channel, "Channel file or built-in name")->required();
  sim->add_option("correlation", correlation, "Correlation file or built-in name")->required();
  sim->add_option("--strategy", strategy_path, "Also evaluate this strategy file");
  sim->add_option("--save-strategy", save_path, "Write the optimal strategy here");
  add_common(sim);
  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a built-in channel or correlation file");
  gen->add_option("target", gen_args.target, "prevedel|hashing|uniform|noiseless|pr|tsirelson|device-e|deterministic")
      ->required();
  gen->add_option("--m", gen_args.m, "Parameter m for hashing and device-e");
  gen->add_option("--j", gen_args.j, "PR box index 1..4");
  gen->add_option("--sign", gen_args.sign, "PR box sign + or -");
  gen->add_option("--inputs", gen_args.inputs, "Input alphabet size for uniform and noiseless");
  gen->add_option("--outputs", gen_args.outputs, "Output alphabet size for uniform");
  gen->add_option("--index", gen_args.index, "Deterministic box index 0..15");
  add_common(gen);
  std::vector<std::string> vb_channels, vb_corrs;
  auto* vb = app.add_subcommand("verify-bounds", "Check the advantage bounds on the given files");
  vb->add_option("--channel", vb_channels, "Channel files or built-in names")->required();
  vb->add_option("--correlation", vb_corrs, "Correlation files or built-in names");
  add_common(vb);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (cfg.out_path.size() && !std::filesystem::path(cfg.out_path).parent_path().empty() &&
        !std::filesystem::is_directory(std::filesystem::path(cfg.out_path).parent_path()))
      throw ValidationError("output directory for '" + cfg.out_path + "' does not exist");
    if (*gen) {
      const std::string text = cmd_gen(gen_args);
      if (cfg.out_path.empty())
        out << text;
      else
        io::write_file(cfg.out_path, text);
      return kOk;
    }
    Json report;
    bool holds = true;
    if (*succ) report = cmd_succ(channel);
    if (*succ_ns_cmd) report = cmd_succ_ns(channel);
    if (*succ_q2) report = cmd_succ_q2(channel, dim, cfg);
    if (*locfrac) report = cmd_locfrac(correlation);
    if (*sim) report = cmd_simulate(channel, correlation, strategy_path, save_path, cfg);
    if (*vb) report = cmd_verify_bounds(vb_channels, vb_corrs, cfg, holds);
    emit(report, cfg, out);
    if (report.contains("failure")) {
      err << "certificate check failed: " << report["failure"].get<std::string>() << "\n";
      return kCertificate;
    }
    return holds ? kOk : kCertificate;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InternalError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kBudget;
  }
}

}  // namespace oneshot::cli
