#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <redukt/checker.hpp>
#include <redukt/petri.hpp>

#include "bench.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBug = 70;

std::vector<std::string> ap_names(const std::vector<redukt::AtomicPropDef>& aps) {
  std::vector<std::string> names;
  names.reserve(aps.size());
  for (const auto& d : aps)
    names.push_back(d.name);
  return names;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out)
    throw redukt::Error("cannot write '" + path + "'");
  out << content;
}

redukt::CancelToken deadline_token(std::int64_t timeout_ms) {
  if (timeout_ms > 0)
    return redukt::CancelToken::with_deadline(std::chrono::milliseconds(timeout_ms));
  return {};
}

std::string flag(bool b) { return b ? "true" : "false"; }

struct CheckArgs {
  std::string net_path;
  std::string formula;
  std::string mode = "semi";
  std::size_t state_limit = 1000000;
  std::int64_t timeout_ms = 0;
  std::string json_path;
  std::string dot_dir;
};

int run_check(const CheckArgs& args) {
  using namespace redukt;
  Model model = load_model_file(args.net_path);
  ApSet aps(ap_names(model.aps));
  FormulaPtr f = parse_formula(args.formula, aps);

  CancelToken token = deadline_token(args.timeout_ms);
  Verdict v;
  if (args.mode == "semi")
    v = check_semi(model.net, model.aps, f, args.state_limit, {}, token);
  else if (args.mode == "full")
    v = check_full(model.net, model.aps, f, args.state_limit, {}, token);
  else
    v = portfolio(model.net, model.aps, f, args.state_limit, {}, token);

  if (!args.dot_dir.empty()) {
    std::filesystem::create_directories(args.dot_dir);
    auto dir = std::filesystem::path(args.dot_dir);
    KripkeStructure ks = build_kripke(model.net, model.aps, args.state_limit);
    write_file((dir / "kripke.dot").string(), to_dot(ks));
    if (args.mode != "full") {
      auto reduced = reduce(model.net, model.aps).first;
      KripkeStructure ksr = build_kripke(reduced, model.aps, args.state_limit);
      write_file((dir / "kripke_reduced.dot").string(), to_dot(ksr));
    }
    write_file((dir / "negation.dot").string(), to_dot(translate(negate(f), aps.alphabet())));
  }

  std::cout << to_string(v.value) << " (" << (v.trusted ? "trusted" : "untrusted") << ", mode "
            << v.mode << ")\n";
  if (v.witness)
    std::cout << "witness: " << v.witness->word.str() << "\n";
  if (!v.stats.note.empty())
    std::cout << "note: " << v.stats.note << "\n";
  std::cout << "phi: shortening=" << flag(v.classification.of_formula.shortening)
            << " lengthening=" << flag(v.classification.of_formula.lengthening)
            << " | negation: shortening=" << flag(v.classification.of_negation.shortening)
            << " lengthening=" << flag(v.classification.of_negation.lengthening) << "\n";
  std::cout << "states: " << v.stats.ks_states << " kripke, " << v.stats.product_states
            << " product; net " << v.stats.original_places << "p/" << v.stats.original_transitions
            << "t -> " << v.stats.reduced_places << "p/" << v.stats.reduced_transitions << "t\n";

  if (!args.json_path.empty())
    write_file(args.json_path, verdict_to_json(v) + "\n");

  switch (v.value) {
  case VerdictValue::True:
    return kExitTrue;
  case VerdictValue::False:
    return kExitFalse;
  case VerdictValue::Unknown:
    return kExitUnknown;
  }
  return kExitUnknown;
}

int run_classify(const std::string& formula, const std::string& json_path) {
  using namespace redukt;
  ApSet aps(collect_ap_names(formula));
  FormulaPtr f = parse_formula(formula, aps);
  Classification c = classify(f, aps);
  std::cout << "shortening=" << flag(c.of_formula.shortening)
            << " lengthening=" << flag(c.of_formula.lengthening) << "\n";
  std::cout << "negation: shortening=" << flag(c.of_negation.shortening)
            << " lengthening=" << flag(c.of_negation.lengthening) << "\n";
  if (!json_path.empty()) {
    Verdict v;
    v.formula = f->str();
    v.mode = "classify";
    v.classification = c;
    write_file(json_path, verdict_to_json(v) + "\n");
  }
  return kExitTrue;
}

int run_reduce(const std::string& net_path, const std::string& out_path,
               const std::string& json_path) {
  using namespace redukt;
  Model model = load_model_file(net_path);
  auto [reduced, report] = reduce(model.net, model.aps);
  Model out{std::move(reduced), model.aps};
  std::string rendered = to_rnet(out);
  if (out_path.empty()) {
    std::cout << rendered;
    std::cerr << report.str() << "\n";
  } else {
    write_file(out_path, rendered);
    std::cout << report.str() << "\n";
  }
  if (!json_path.empty()) {
    // A small structural report; the reduced net itself travels as .rnet.
    std::ostringstream events;
    events << "{\n  \"placesBefore\": " << report.places_before
           << ",\n  \"placesAfter\": " << report.places_after
           << ",\n  \"transitionsBefore\": " << report.transitions_before
           << ",\n  \"transitionsAfter\": " << report.transitions_after
           << ",\n  \"applications\": " << report.events.size() << "\n}\n";
    write_file(json_path, events.str());
  }
  return kExitTrue;
}

int run_kripke(const std::string& net_path, const std::string& out_path, bool reduced,
               std::size_t state_limit) {
  using namespace redukt;
  Model model = load_model_file(net_path);
  PetriNet net = reduced ? reduce(model.net, model.aps).first : model.net;
  KripkeStructure ks = build_kripke(net, model.aps, state_limit);
  std::string dot = to_dot(ks);
  if (out_path.empty())
    std::cout << dot;
  else
    write_file(out_path, dot);
  return kExitTrue;
}

int run_bench_cmd(const redukt::BenchOptions& opt, const std::string& json_path) {
  using namespace redukt;
  BenchResult result = run_bench(opt);
  std::cout << bench_summary(result);
  if (!json_path.empty())
    write_file(json_path, bench_to_json(result) + "\n");
  return kExitTrue;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTL model checking on Petri nets with stutter-aware reductions"};
  app.require_subcommand(1);

  // classify
  std::string classify_formula, classify_json;
  CLI::App* classify_cmd = app.add_subcommand("classify", "Sensitivity of a formula's language");
  classify_cmd->add_option("-f,--formula", classify_formula, "LTL formula")->required();
  classify_cmd->add_option("--json", classify_json, "write the result as JSON");

  // check
  CheckArgs check_args;
  CLI::App* check_cmd = app.add_subcommand("check", "Model check a formula on a net");
  check_cmd->add_option("--net", check_args.net_path, "net file (.rnet)")->required();
  check_cmd->add_option("-f,--formula", check_args.formula, "LTL formula")->required();
  check_cmd->add_option("--mode", check_args.mode, "semi, full or portfolio")
      ->check(CLI::IsMember({"semi", "full", "portfolio"}));
  check_cmd->add_option("--state-limit", check_args.state_limit, "marking cap for exploration");
  check_cmd->add_option("--timeout-ms", check_args.timeout_ms, "deadline per checking arm");
  check_cmd->add_option("--json", check_args.json_path, "write the verdict as JSON");
  check_cmd->add_option("--dot", check_args.dot_dir, "dump graphviz files into this directory");

  // reduce
  std::string reduce_net, reduce_out, reduce_json;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "Agglomerate a net and print the result");
  reduce_cmd->add_option("--net", reduce_net, "net file (.rnet)")->required();
  reduce_cmd->add_option("-o,--out", reduce_out, "write the reduced net here (default stdout)");
  reduce_cmd->add_option("--json", reduce_json, "write a structural report as JSON");

  // kripke
  std::string kripke_net, kripke_out;
  bool kripke_reduced = false;
  std::size_t kripke_limit = 1000000;
  CLI::App* kripke_cmd = app.add_subcommand("kripke", "Dump a net's state graph as DOT");
  kripke_cmd->add_option("--net", kripke_net, "net file (.rnet)")->required();
  kripke_cmd->add_option("-o,--out", kripke_out, "output file (default stdout)");
  kripke_cmd->add_flag("--reduced", kripke_reduced, "agglomerate before building");
  kripke_cmd->add_option("--state-limit", kripke_limit, "marking cap for exploration");

  // bench
  redukt::BenchOptions bench_opt;
  std::string bench_json;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a net/formula matrix through both arms");
  bench_cmd->add_option("--dir", bench_opt.dir, "directory scanned for .rnet files")->required();
  bench_cmd->add_option("--formulas", bench_opt.formulas_file, "formula file, one per line")
      ->required();
  bench_cmd->add_option("--state-limit", bench_opt.state_limit, "marking cap for exploration");
  bench_cmd->add_option("--timeout-ms", bench_opt.timeout_ms, "deadline per checking arm");
  bench_cmd->add_option("--jobs", bench_opt.jobs, "worker threads (default: hardware)");
  bench_cmd->add_option("--json", bench_json, "write all records as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e); // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed())
      return run_classify(classify_formula, classify_json);
    if (check_cmd->parsed())
      return run_check(check_args);
    if (reduce_cmd->parsed())
      return run_reduce(reduce_net, reduce_out, reduce_json);
    if (kripke_cmd->parsed())
      return run_kripke(kripke_net, kripke_out, kripke_reduced, kripke_limit);
    if (bench_cmd->parsed())
      return run_bench_cmd(bench_opt, bench_json);
  } catch (const redukt::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitBug;
  } catch (const redukt::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const redukt::CancelledError& e) {
    std::cerr << "cancelled: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const redukt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
