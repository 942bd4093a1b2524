#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ddrf/adversarial_gen.hpp"
#include "ddrf/cli_io.hpp"
#include "ddrf/dynamic_drf.hpp"
#include "ddrf/ratio_harness.hpp"

namespace {

using namespace ddrf;

// Exit codes: 0 ok, 1 parse, 2 validation, 3 property violation,
// 4 internal inconsistency.
constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kValidationError = 2;
constexpr int kPropertyViolation = 3;
constexpr int kInternalError = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

ParsedInstance load_instance(const std::string& path) {
  ParsedInstance parsed = parse_instance(read_file(path));
  for (Index agent : parsed.renormalized_agents) {
    std::cerr << "warning: demand row " << agent + 1
              << " was not normalized; scaled by its maximum\n";
  }
  if (auto violation = validate(parsed.instance)) {
    throw Error("invalid instance: " + violation->describe());
  }
  return parsed;
}

Rational parse_eps(const std::string& text) {
  auto eps = Rational::parse(text);
  if (!eps) throw BadParams("eps must be a rational like 1/100");
  return *eps;
}

Algo parse_algo(const std::string& name) {
  if (name == "bisect") return Algo::kBisect;
  if (name == "naive") return Algo::kNaive;
  if (name == "lp") return Algo::kLp;
  throw BadParams("unknown algorithm '" + name + "'");
}

int cmd_gen(const std::string& family, AdversarialParams params,
            bool n_given, const std::string& out_path) {
  Instance instance;
  std::ostringstream note;
  if (family == "t1") {
    instance = gen_theorem1(params.m, params.n, params.eps);
    note << "family=t1 m=" << params.m << " n=" << params.n
         << " eps=" << params.eps;
  } else if (family == "t2") {
    if (n_given && params.n != params.m * params.m + 1) {
      throw BadParams("family t2 forces n = m^2 + 1");
    }
    instance = gen_theorem2(params.m, params.eps);
    note << "family=t2 m=" << params.m << " eps=" << params.eps;
    if (!theorem2_hypothesis_met(params.m)) {
      std::cerr << "warning: m = " << params.m
                << " is outside the maxmin bound's hypothesis (needs m > 2)\n";
      note << " hypothesis=unmet";
    }
  } else if (family == "random") {
    if (!n_given) throw BadParams("family random needs --n");
    instance = gen_random(params.n, params.m, params.seed, params.denom_bound);
    note << "family=random m=" << params.m << " n=" << params.n
         << " seed=" << params.seed << " denom-bound=" << params.denom_bound;
  } else {
    throw BadParams("unknown family '" + family + "'");
  }
  write_output(out_path, write_instance(instance, note.str()));
  return kOk;
}

int cmd_allocate(const std::string& in_path, const std::string& algo_name,
                 const std::string& out_path) {
  ParsedInstance parsed = load_instance(in_path);
  const std::vector<StepSolution> steps =
      run(parsed.instance, parse_algo(algo_name));
  write_output(out_path,
               write_run_report(make_run_report(parsed.instance, steps,
                                                algo_name)));
  return kOk;
}

int cmd_ratio(const std::string& in_path, const std::string& objective,
              const std::string& out_path) {
  ParsedInstance parsed = load_instance(in_path);
  const std::vector<StepSolution> steps = run(parsed.instance, Algo::kBisect);
  RunReport report = make_run_report(parsed.instance, steps, "bisect");
  if (objective == "maxsum") {
    report.ratio = cr_maxsum(parsed.instance);
  } else if (objective == "maxmin") {
    report.ratio = cr_maxmin(parsed.instance);
  } else if (objective == "both") {
    report.ratio = cr_both(parsed.instance);
  } else {
    throw BadParams("unknown objective '" + objective + "'");
  }
  report.ratio_objective = objective;
  write_output(out_path, write_run_report(report));
  return kOk;
}

int cmd_verify(const std::string& in_path, const std::string& report_path) {
  ParsedInstance parsed = load_instance(in_path);
  if (report_path.empty()) {
    PropertyReport outcome = verify_run(parsed.instance);
    if (!outcome.passed) {
      std::cerr << "violation: " << outcome.violation->describe() << "\n";
      return kPropertyViolation;
    }
    std::cout << "ok: " << parsed.instance.agent_count() << " steps, "
              << outcome.properties.size() << " properties verified\n";
    return kOk;
  }

  RunReport report = parse_run_report(read_file(report_path));
  if (report.n != parsed.instance.agent_count() ||
      report.m != parsed.instance.resource_count()) {
    throw Error("report dimensions do not match the instance");
  }
  const std::vector<StepSolution> steps = report_solutions(report);
  PropertyReport outcome = verify_solutions(parsed.instance, steps);
  if (!outcome.passed) {
    std::cerr << "violation: " << outcome.violation->describe() << "\n";
    return kPropertyViolation;
  }
  for (std::size_t s = 0; s < steps.size(); ++s) {
    std::vector<Index> expected =
        saturated_resources(parsed.instance, steps[s].shares);
    for (Index& r : expected) ++r;
    if (expected != report.steps[s].saturated_resources) {
      std::cerr << "violation: SaturationList at step " << s + 1 << "\n";
      return kPropertyViolation;
    }
  }
  std::cout << "ok: report matches all checked properties\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic multi-resource fair allocation engine"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string family;
  AdversarialParams params;
  std::string out_path;
  gen->add_option("--family", family, "t1 | t2 | random")->required();
  gen->add_option("--m", params.m, "resource count");
  auto* n_opt = gen->add_option("--n", params.n, "agent count");
  std::string eps_text = "1/100";
  gen->add_option("--eps", eps_text, "near-zero demand, a rational like 1/100");
  gen->add_option("--seed", params.seed, "random family seed");
  gen->add_option("--denom-bound", params.denom_bound,
                  "random family denominator bound");
  gen->add_option("--out", out_path, "output file (default stdout)");

  // allocate
  auto* allocate = app.add_subcommand("allocate", "run all arrivals");
  std::string in_path;
  std::string algo_name = "bisect";
  std::string alloc_out;
  allocate->add_option("--in", in_path, "instance file")->required();
  allocate->add_option("--algo", algo_name, "bisect | naive | lp");
  allocate->add_option("--out", alloc_out, "report file (default stdout)");

  // ratio
  auto* ratio = app.add_subcommand("ratio",
                                   "run and compare against offline optima");
  std::string ratio_in;
  std::string objective = "both";
  std::string ratio_out;
  ratio->add_option("--in", ratio_in, "instance file")->required();
  ratio->add_option("--objective", objective, "maxsum | maxmin | both");
  ratio->add_option("--out", ratio_out, "report file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property battery");
  std::string verify_in;
  std::string verify_report;
  verify->add_option("--in", verify_in, "instance file")->required();
  verify->add_option("--report", verify_report,
                     "check this run report instead of a fresh run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (gen->parsed()) {
      params.eps = parse_eps(eps_text);
      return cmd_gen(family, params, n_opt->count() > 0, out_path);
    }
    if (allocate->parsed()) return cmd_allocate(in_path, algo_name, alloc_out);
    if (ratio->parsed()) return cmd_ratio(ratio_in, objective, ratio_out);
    if (verify->parsed()) return cmd_verify(verify_in, verify_report);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kOk;
}
