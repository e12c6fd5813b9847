#include "qent/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qent/format.hpp"
#include "qent/oracle.hpp"

namespace qent {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": invalid number \"" + item + "\"");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<long> parse_long_list(const std::string& text, const char* flag) {
  std::vector<long> out;
  for (double v : parse_double_list(text, flag)) {
    if (std::abs(v - std::round(v)) > 1e-9 || v < 1.0) {
      throw UsageError(std::string(flag) + ": expected positive integers");
    }
    out.push_back(static_cast<long>(std::llround(v)));
  }
  return out;
}

Geometry make_geometry(const RunConfig& config) {
  if (config.ratio_form) {
    return Geometry::from_ratios(config.sites, config.x1, config.x2, config.y);
  }
  return Geometry(config.sites, config.len_a, config.gap, config.len_b);
}

ordered_json measures_json(const MeasureSet& m) {
  ordered_json j;
  j["S_R"] = round_sig(m.reflected_entropy);
  j["I"] = round_sig(m.mutual_information);
  j["E_N"] = round_sig(m.log_negativity);
  j["gap"] = round_sig(m.markov_gap);
  return j;
}

std::string measures_summary(const MeasureSet& m) {
  std::ostringstream out;
  out << "S_R=" << format_sig(m.reflected_entropy)
      << " I=" << format_sig(m.mutual_information)
      << " E_N=" << format_sig(m.log_negativity)
      << " gap=" << format_sig(m.markov_gap);
  return out.str();
}

// Single write point for all file output.
void emit(const RunConfig& config, const std::string& payload,
          const std::string& summary) {
  if (config.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file " + config.out_path);
  }
  out << payload;
  out.close();
  std::cout << summary << "\n" << "wrote " << config.out_path << "\n";
}

int run_measure(const RunConfig& config) {
  const Geometry g = make_geometry(config);
  const MomentumMultiset k = config.state.resolve(g.sites());
  const MeasureSet m = evaluate_state(k, g, config.stats);

  std::string payload;
  if (config.format == "csv") {
    std::ostringstream out;
    out << "L,x1,x2,y,K,S_R,I,E_N,gap\n"
        << g.sites() << "," << format_sig(g.x1()) << "," << format_sig(g.x2())
        << "," << format_sig(g.y()) << ",\"" << k.str() << "\","
        << format_sig(m.reflected_entropy) << "," << format_sig(m.mutual_information)
        << "," << format_sig(m.log_negativity) << "," << format_sig(m.markov_gap)
        << "\n";
    payload = out.str();
  } else {
    ordered_json j = measures_json(m);
    j["input"] = {{"command", "measure"},
                  {"stats", to_string(config.stats)},
                  {"L", g.sites()},
                  {"x1", round_sig(g.x1())},
                  {"x2", round_sig(g.x2())},
                  {"y", round_sig(g.y())},
                  {"K", k.str()}};
    payload = j.dump(2) + "\n";
  }
  emit(config, payload, measures_summary(m));
  return 0;
}

int run_classical(const RunConfig& config) {
  MomentumMultiset species = config.state.resolve(1);  // labels only, L-free
  const MeasureSet m = measure_classical_species(species, config.x1, config.x2);

  std::string payload;
  if (config.format == "csv") {
    std::ostringstream out;
    out << "L,x1,x2,y,K,S_R,I,E_N,gap\n"
        << "," << format_sig(config.x1) << "," << format_sig(config.x2) << ",,\""
        << species.str() << "\"," << format_sig(m.reflected_entropy) << ","
        << format_sig(m.mutual_information) << "," << format_sig(m.log_negativity)
        << "," << format_sig(m.markov_gap) << "\n";
    payload = out.str();
  } else {
    ordered_json j = measures_json(m);
    j["input"] = {{"command", "classical"},
                  {"x1", round_sig(config.x1)},
                  {"x2", round_sig(config.x2)},
                  {"K", species.str()}};
    payload = j.dump(2) + "\n";
  }
  emit(config, payload, measures_summary(m));
  return 0;
}

int run_sweep(const RunConfig& config) {
  const GeometrySpec geo{config.x1, config.x2, config.y};
  const SweepResult result =
      sweep(config.state, geo, config.sites, config.parameter, config.values);
  const std::string payload =
      config.format == "csv" ? to_csv(result) : to_json(result);
  std::ostringstream summary;
  summary << "sweep over " << result.parameter_name << ": " << result.rows.size()
          << " points";
  emit(config, payload, summary.str());
  return 0;
}

int run_extrapolate(const RunConfig& config) {
  const GeometrySpec geo{config.x1, config.x2, config.y};
  const SweepResult result = extrapolate_sites(config.state, geo, config.ladder);
  const std::string payload =
      config.format == "csv" ? to_csv(result) : to_json(result);
  std::ostringstream summary;
  summary << "extrapolated " << result.rows.size()
          << " L values: " << measures_summary(*result.extrapolated);
  emit(config, payload, summary.str());
  return 0;
}

int run_additivity(const RunConfig& config) {
  const GeometrySpec geo{config.x1, config.x2, config.y};
  const AdditivityReport report =
      additivity_report(config.stats, config.parts, geo, config.ladder, config.bound);
  const std::string payload =
      config.format == "csv" ? to_csv(report) : to_json(report);
  std::ostringstream summary;
  summary << "additivity deviations (bound " << format_sig(config.bound) << " nats):";
  for (const auto& row : report.rows) {
    summary << "\n  L=" << row.sites << " dS_R=" << format_sig(row.dev_sr)
            << " dI=" << format_sig(row.dev_i) << " dE_N=" << format_sig(row.dev_en);
  }
  summary << "\nadditivity: " << (report.pass ? "PASS" : "FAIL");
  if (config.out_path.empty()) {
    std::cout << payload;
    std::cout << "additivity: " << (report.pass ? "PASS" : "FAIL") << "\n";
  } else {
    emit(config, payload, summary.str());
  }
  return report.pass ? 0 : 1;
}

int run_oracle_check(const RunConfig& config) {
  const auto cases = oracle_check_suite(config.tolerance);
  std::size_t passed = 0;
  std::ostringstream table;
  table << "stats,K,L,ell1,d,ell2,max_error,pass\n";
  for (const auto& c : cases) {
    if (c.pass) ++passed;
    table << to_string(c.stats) << ",\"" << c.k.str() << "\"," << c.sites << ","
          << c.len_a << "," << c.gap << "," << c.len_b << ","
          << format_sig(c.max_error) << "," << (c.pass ? "yes" : "no") << "\n";
  }
  const bool all_pass = passed == cases.size();
  std::cout << table.str();
  std::cout << "oracle-check: " << passed << "/" << cases.size()
            << " cases within " << format_sig(config.tolerance) << "\n";
  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + config.out_path);
    out << table.str();
  }
  return all_pass ? 0 : 1;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Double-interval entanglement measures (reflected entropy, mutual "
               "information, logarithmic negativity) for quasiparticle excited "
               "states of free chains"};
  app.require_subcommand(0, 1);

  RunConfig config;
  std::string stats_text, k_text, k1_text, k2_text, k3_text;
  std::string param_text, values_text, ladder_text, suite = "small";
  int classical_r = 1;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", config.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", config.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  auto* measure = app.add_subcommand("measure", "Measures for one quasiparticle state");
  measure->add_option("--stats", stats_text, "classical | boson | fermion")->required();
  measure->add_option("--L", config.sites, "Chain length (sites)")->required();
  auto* m_x1 = measure->add_option("--x1", config.x1, "Ratio l1/L");
  auto* m_x2 = measure->add_option("--x2", config.x2, "Ratio l2/L");
  auto* m_y = measure->add_option("--y", config.y, "Ratio d/L");
  auto* m_l1 = measure->add_option("--ell1", config.len_a, "Sites in block A");
  auto* m_l2 = measure->add_option("--ell2", config.len_b, "Sites in block B");
  auto* m_d = measure->add_option("--d", config.gap, "Sites between A and B");
  measure->add_option("--K", k_text, "Momentum multiset, e.g. \"1,2\" or \"1^2,L/4\"")
      ->required();
  add_output(measure);

  auto* classical = app.add_subcommand("classical", "Closed-pipeline classical state");
  classical->add_option("--x1", config.x1, "Probability of block A")->required();
  classical->add_option("--x2", config.x2, "Probability of block B")->required();
  auto* c_r = classical->add_option("--r", classical_r, "Identical-particle count");
  auto* c_k = classical->add_option("--K", k_text, "Species spec, e.g. \"1^2,2\"");
  add_output(classical);

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep x2, y, or L");
  sweep_cmd->add_option("--stats", stats_text)->required();
  sweep_cmd->add_option("--K", k_text)->required();
  sweep_cmd->add_option("--param", param_text, "x2 | y | L")->required();
  sweep_cmd->add_option("--values", values_text, "Comma-separated values")->required();
  auto* s_l = sweep_cmd->add_option("--L", config.sites, "Chain length template");
  sweep_cmd->add_option("--x1", config.x1)->required();
  sweep_cmd->add_option("--x2", config.x2);
  sweep_cmd->add_option("--y", config.y);
  add_output(sweep_cmd);

  auto* extrapolate = app.add_subcommand("extrapolate", "L -> infinity extrapolation");
  extrapolate->add_option("--stats", stats_text)->required();
  extrapolate->add_option("--K", k_text)->required();
  extrapolate->add_option("--x1", config.x1)->required();
  extrapolate->add_option("--x2", config.x2)->required();
  extrapolate->add_option("--y", config.y);
  extrapolate->add_option("--ladder", ladder_text, "L values (default 32,64,128,256)");
  add_output(extrapolate);

  auto* additivity = app.add_subcommand("additivity", "Additivity deviation report");
  additivity->add_option("--stats", stats_text)->required();
  additivity->add_option("--K1", k1_text)->required();
  additivity->add_option("--K2", k2_text)->required();
  additivity->add_option("--K3", k3_text);
  additivity->add_option("--x1", config.x1)->required();
  additivity->add_option("--x2", config.x2)->capture_default_str();
  additivity->add_option("--y", config.y);
  additivity->add_option("--ladder", ladder_text, "L values (default 64,128,256)");
  additivity->add_option("--bound", config.bound, "PASS bound in nats")
      ->capture_default_str();
  add_output(additivity);

  auto* oracle = app.add_subcommand("oracle-check", "Pipeline vs brute-force oracle");
  oracle->add_option("--suite", suite, "Verification suite")
      ->check(CLI::IsMember({"small"}))
      ->capture_default_str();
  oracle->add_option("--tol", config.tolerance, "Agreement tolerance")
      ->capture_default_str();
  oracle->add_option("--out", config.out_path, "Write the case table as CSV");

  // only the additivity command leaves --x2 optional
  config.x2 = 0.25;

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<const char*> argv;
    argv.reserve(argv_copy.size() + 1);
    argv.push_back("qent");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    config.command = Command::help;
    return config;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  try {
    if (measure->parsed()) {
      config.command = Command::measure;
      config.stats = parse_statistics(stats_text);
      const bool ratio = m_x1->count() || m_x2->count() || m_y->count();
      const bool sitesform = m_l1->count() || m_l2->count() || m_d->count();
      if (ratio && sitesform) {
        throw UsageError("measure: give either --x1/--x2/--y or --ell1/--d/--ell2, not both");
      }
      if (sitesform) {
        config.ratio_form = false;
        if (!m_l1->count() || !m_l2->count()) {
          throw UsageError("measure: site form needs --ell1 and --ell2");
        }
      } else {
        config.ratio_form = true;
        if (!m_x1->count() || !m_x2->count()) {
          throw UsageError("measure: ratio form needs --x1 and --x2");
        }
      }
      config.state = StateSpec::parse(config.stats, k_text);
    } else if (classical->parsed()) {
      config.command = Command::classical;
      config.stats = Statistics::classical;
      if (c_k->count() && c_r->count()) {
        throw UsageError("classical: give either --r or --K, not both");
      }
      if (c_k->count()) {
        config.state = StateSpec::parse(Statistics::classical, k_text);
      } else {
        if (classical_r < 1) throw UsageError("classical: --r must be >= 1");
        MomentumTerm term;
        term.offset = 1;
        term.multiplicity = classical_r;
        config.state = StateSpec{Statistics::classical, {term}};
      }
    } else if (sweep_cmd->parsed()) {
      config.command = Command::sweep;
      config.stats = parse_statistics(stats_text);
      config.state = StateSpec::parse(config.stats, k_text);
      config.parameter = parse_sweep_parameter(param_text);
      config.values = parse_double_list(values_text, "--values");
      if (config.parameter != SweepParameter::sites && !s_l->count()) {
        throw UsageError("sweep: --L is required unless sweeping L");
      }
      const bool has_x2 = sweep_cmd->get_option("--x2")->count() > 0;
      if (config.parameter == SweepParameter::x2) {
        config.x2 = 0.0;  // swept; the template value is unused
      } else if (!has_x2) {
        throw UsageError("sweep: --x2 is required when it is not the swept parameter");
      }
    } else if (extrapolate->parsed()) {
      config.command = Command::extrapolate;
      config.stats = parse_statistics(stats_text);
      config.state = StateSpec::parse(config.stats, k_text);
      config.ladder = ladder_text.empty() ? std::vector<long>{32, 64, 128, 256}
                                          : parse_long_list(ladder_text, "--ladder");
    } else if (additivity->parsed()) {
      config.command = Command::additivity;
      config.stats = parse_statistics(stats_text);
      config.parts.push_back(StateSpec::parse(config.stats, k1_text).momenta);
      config.parts.push_back(StateSpec::parse(config.stats, k2_text).momenta);
      if (!k3_text.empty())
        config.parts.push_back(StateSpec::parse(config.stats, k3_text).momenta);
      config.ladder = ladder_text.empty() ? std::vector<long>{64, 128, 256}
                                          : parse_long_list(ladder_text, "--ladder");
    } else if (oracle->parsed()) {
      config.command = Command::oracle_check;
    } else {
      std::cout << app.help();
      config.command = Command::help;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

int run(const RunConfig& config) {
  switch (config.command) {
    case Command::help: return 0;
    case Command::measure: return run_measure(config);
    case Command::classical: return run_classical(config);
    case Command::sweep: return run_sweep(config);
    case Command::extrapolate: return run_extrapolate(config);
    case Command::additivity: return run_additivity(config);
    case Command::oracle_check: return run_oracle_check(config);
  }
  return 2;
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const RunConfig config = parse_args(args);
    return run(config);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qent
