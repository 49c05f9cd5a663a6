#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace redukt {

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open net file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError& e) {
    // The position suffix is already in the message; just add the path.
    throw Error(path + ": " + e.what());
  }
}

std::vector<std::string> load_formula_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open formula file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  return lines;
}

namespace {

std::vector<std::string> ap_names(const std::vector<AtomicPropDef>& aps) {
  std::vector<std::string> names;
  names.reserve(aps.size());
  for (const auto& d : aps)
    names.push_back(d.name);
  return names;
}

BenchRecord run_pair(const Model& model, const std::string& net_name, const std::string& text,
                     const BenchOptions& opt) {
  BenchRecord rec;
  rec.net = net_name;
  rec.formula = text;
  FormulaPtr f;
  try {
    ApSet apset(ap_names(model.aps));
    f = parse_formula(text, apset);
  } catch (const Error& e) {
    rec.error = e.what();
    rec.agreement = "error";
    return rec;
  }

  auto arm_token = [&] {
    return opt.timeout_ms > 0 ? CancelToken::with_deadline(std::chrono::milliseconds(opt.timeout_ms))
                              : CancelToken{};
  };
  Verdict semi = check_semi(model.net, model.aps, f, opt.state_limit, {}, arm_token());
  Verdict full = check_full(model.net, model.aps, f, opt.state_limit, {}, arm_token());

  rec.classification = semi.classification;
  rec.semi_value = semi.value;
  rec.semi_trusted = semi.trusted;
  rec.full_value = full.value;
  rec.semi_ms = semi.stats.wall_time_ms;
  rec.full_ms = full.stats.wall_time_ms;
  rec.ks_states = full.stats.ks_states;
  rec.reduced_ks_states = semi.stats.ks_states;

  if (semi.value == VerdictValue::Unknown || full.value == VerdictValue::Unknown) {
    rec.agreement = "timeout";
  } else if (semi.trusted) {
    if (semi.value != full.value)
      throw InternalError("trusted semi verdict disagrees with full on " + net_name + " / " +
                          text);
    rec.agreement = "trusted-match";
  } else if (semi.value == full.value) {
    rec.agreement = "untrusted-match";
  } else {
    rec.agreement = "untrusted-mismatch";
  }
  return rec;
}

} // namespace

BenchResult run_bench(const BenchOptions& opt) {
  std::vector<std::filesystem::path> net_paths;
  for (const auto& entry : std::filesystem::directory_iterator(opt.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".rnet")
      net_paths.push_back(entry.path());
  }
  std::sort(net_paths.begin(), net_paths.end());

  std::vector<Model> models;
  std::vector<std::string> net_names;
  models.reserve(net_paths.size());
  for (const auto& p : net_paths) {
    models.push_back(load_model_file(p.string()));
    net_names.push_back(p.stem().string());
  }
  std::vector<std::string> formulas = load_formula_lines(opt.formulas_file);

  BenchResult result;
  result.records.resize(models.size() * formulas.size());

  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(result.records.size(), 1));

  // Each worker claims the next undone pair; slot i is written by exactly
  // one worker, so the merge is the input order by construction.
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= result.records.size())
        return;
      const Model& model = models[i / formulas.size()];
      const std::string& net_name = net_names[i / formulas.size()];
      const std::string& text = formulas[i % formulas.size()];
      try {
        result.records[i] = run_pair(model, net_name, text, opt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error)
          first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned i = 0; i < jobs; ++i)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (first_error)
    std::rethrow_exception(first_error);

  for (const auto& rec : result.records) {
    if (rec.agreement == "trusted-match")
      ++result.trusted_match;
    else if (rec.agreement == "untrusted-match")
      ++result.untrusted_match;
    else if (rec.agreement == "untrusted-mismatch")
      ++result.untrusted_mismatch;
    else if (rec.agreement == "timeout")
      ++result.timeout;
    else
      ++result.errors;
  }
  return result;
}

namespace {

nlohmann::json sensitivity_json(const Sensitivity& s) {
  return {{"shortening", s.shortening},
          {"lengthening", s.lengthening},
          {"stutterInsensitive", s.stutter_insensitive()}};
}

std::string percent(std::size_t part, std::size_t whole) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", whole ? 100.0 * part / whole : 0.0);
  return buf;
}

} // namespace

std::string bench_to_json(const BenchResult& r, int indent) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : r.records) {
    nlohmann::json j;
    j["net"] = rec.net;
    j["formula"] = rec.formula;
    j["agreement"] = rec.agreement;
    if (!rec.error.empty()) {
      j["error"] = rec.error;
    } else {
      j["sensitivityOfPhi"] = sensitivity_json(rec.classification.of_formula);
      j["sensitivityOfNegPhi"] = sensitivity_json(rec.classification.of_negation);
      j["semi"] = {{"value", to_string(rec.semi_value)},
                   {"trusted", rec.semi_trusted},
                   {"wallTimeMs", rec.semi_ms},
                   {"ksStates", rec.reduced_ks_states}};
      j["full"] = {{"value", to_string(rec.full_value)},
                   {"wallTimeMs", rec.full_ms},
                   {"ksStates", rec.ks_states}};
    }
    records.push_back(std::move(j));
  }
  std::size_t pairs = r.records.size();
  nlohmann::json summary;
  summary["pairs"] = pairs;
  summary["trustedMatch"] = r.trusted_match;
  summary["untrustedMatch"] = r.untrusted_match;
  summary["untrustedMismatch"] = r.untrusted_mismatch;
  summary["timeout"] = r.timeout;
  summary["errors"] = r.errors;
  summary["trustedMatchPercent"] = percent(r.trusted_match, pairs);
  summary["untrustedMatchPercent"] = percent(r.untrusted_match, pairs);
  summary["untrustedMismatchPercent"] = percent(r.untrusted_mismatch, pairs);

  nlohmann::json out;
  out["records"] = std::move(records);
  out["summary"] = std::move(summary);
  return out.dump(indent);
}

std::string bench_summary(const BenchResult& r) {
  std::size_t pairs = r.records.size();
  std::ostringstream out;
  out << "net x formula pairs: " << pairs << "\n";
  out << "  trusted-match:      " << r.trusted_match << " (" << percent(r.trusted_match, pairs)
      << "%)\n";
  out << "  untrusted-match:    " << r.untrusted_match << " (" << percent(r.untrusted_match, pairs)
      << "%)\n";
  out << "  untrusted-mismatch: " << r.untrusted_mismatch << " ("
      << percent(r.untrusted_mismatch, pairs) << "%)\n";
  out << "  timeout:            " << r.timeout << " (" << percent(r.timeout, pairs) << "%)\n";
  out << "  errors:             " << r.errors << "\n";
  for (const auto& rec : r.records) {
    if (rec.agreement == "untrusted-mismatch")
      out << "  mismatch: " << rec.net << " / " << rec.formula << " (semi "
          << to_string(rec.semi_value) << " vs full " << to_string(rec.full_value) << ")\n";
  }
  return out.str();
}

} // namespace redukt
