#include "qent/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qent/format.hpp"

namespace qent {

namespace {

using ordered_json = nlohmann::ordered_json;

int worker_count() {
  if (const char* env = std::getenv("QENT_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed >= 1) return static_cast<int>(std::min(parsed, 256L));
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

long parse_long(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid integer \"" + text + "\" in " + context);
  }
}

// "k", "L", "L/4", "3L/8", "1+L/2", with optional "^r" multiplicity suffix.
MomentumTerm parse_momentum_term(const std::string& raw) {
  MomentumTerm term;
  std::string text = raw;
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    term.multiplicity =
        static_cast<int>(parse_long(text.substr(caret + 1), "momentum term \"" + raw + "\""));
    if (term.multiplicity < 1) {
      throw std::invalid_argument("momentum multiplicity must be >= 1 in \"" + raw + "\"");
    }
    text = text.substr(0, caret);
  }

  const auto lpos = text.find('L');
  if (lpos == std::string::npos) {
    term.offset = parse_long(text, "momentum term \"" + raw + "\"");
    return term;
  }

  std::string before = text.substr(0, lpos);
  const auto plus = before.find('+');
  std::string coeff = before;
  if (plus != std::string::npos) {
    term.offset = parse_long(before.substr(0, plus), "momentum term \"" + raw + "\"");
    coeff = before.substr(plus + 1);
  }
  term.num = coeff.empty() ? 1 : parse_long(coeff, "momentum term \"" + raw + "\"");

  std::string after = text.substr(lpos + 1);
  if (!after.empty()) {
    if (after[0] != '/') {
      throw std::invalid_argument("invalid momentum term \"" + raw + "\"");
    }
    term.den = parse_long(after.substr(1), "momentum term \"" + raw + "\"");
    if (term.den < 1) {
      throw std::invalid_argument("momentum term divisor must be >= 1 in \"" + raw + "\"");
    }
  }
  return term;
}

ordered_json measures_json(const MeasureSet& m) {
  ordered_json j;
  j["S_R"] = round_sig(m.reflected_entropy);
  j["I"] = round_sig(m.mutual_information);
  j["E_N"] = round_sig(m.log_negativity);
  j["gap"] = round_sig(m.markov_gap);
  return j;
}

ordered_json row_json(const SweepRow& row) {
  ordered_json j;
  j["L"] = row.sites;
  j["x1"] = round_sig(row.x1);
  j["x2"] = round_sig(row.x2);
  j["y"] = round_sig(row.y);
  j["K"] = row.state;
  j.update(measures_json(row.measures));
  return j;
}

void append_row_csv(std::ostringstream& out, const SweepRow& row) {
  out << row.sites << "," << format_sig(row.x1) << "," << format_sig(row.x2)
      << "," << format_sig(row.y) << ",\"" << row.state << "\","
      << format_sig(row.measures.reflected_entropy) << ","
      << format_sig(row.measures.mutual_information) << ","
      << format_sig(row.measures.log_negativity) << ","
      << format_sig(row.measures.markov_gap) << "\n";
}

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

long MomentumTerm::resolve(long sites) const {
  long k = offset;
  if (num != 0) {
    const long scaled = num * sites;
    if (scaled % den != 0) {
      std::ostringstream msg;
      msg << "momentum term " << str() << " is not an integer at L = " << sites;
      throw std::invalid_argument(msg.str());
    }
    k += scaled / den;
  }
  return k;
}

std::string MomentumTerm::str() const {
  std::ostringstream out;
  if (num == 0) {
    out << offset;
  } else {
    if (offset != 0) out << offset << "+";
    if (num != 1) out << num;
    out << "L";
    if (den != 1) out << "/" << den;
  }
  if (multiplicity > 1) out << "^" << multiplicity;
  return out.str();
}

StateSpec StateSpec::parse(Statistics stats, const std::string& text) {
  StateSpec spec;
  spec.stats = stats;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, ',')) {
    if (term.empty()) {
      throw std::invalid_argument("empty term in momentum spec \"" + text + "\"");
    }
    spec.momenta.push_back(parse_momentum_term(term));
  }
  if (spec.momenta.empty()) {
    throw std::invalid_argument("empty momentum spec \"" + text + "\"");
  }
  if (stats == Statistics::fermionic) {
    for (const auto& t : spec.momenta) {
      if (t.multiplicity > 1) {
        throw std::invalid_argument("fermionic momentum " + t.str() +
                                    " has multiplicity > 1 (Pauli exclusion)");
      }
    }
  }
  return spec;
}

MomentumMultiset StateSpec::resolve(long sites) const {
  std::vector<MomentumMultiset::Entry> entries;
  entries.reserve(momenta.size());
  for (const auto& t : momenta) entries.push_back({t.resolve(sites), t.multiplicity});
  MomentumMultiset resolved(std::move(entries));
  if (stats == Statistics::fermionic && !resolved.all_single()) {
    std::ostringstream msg;
    msg << "fermionic momenta collide at L = " << sites << ": " << resolved.str();
    throw std::invalid_argument(msg.str());
  }
  return resolved;
}

std::string StateSpec::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    if (i) out << ",";
    out << momenta[i].str();
  }
  return out.str();
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "x2") return SweepParameter::x2;
  if (name == "y") return SweepParameter::y;
  if (name == "L") return SweepParameter::sites;
  throw std::invalid_argument("unknown sweep parameter \"" + name +
                              "\" (expected x2, y, or L)");
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::x2: return "x2";
    case SweepParameter::y: return "y";
    case SweepParameter::sites: return "L";
  }
  return "?";
}

SweepResult sweep(const StateSpec& state, const GeometrySpec& geo, long sites,
                  SweepParameter parameter, const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("sweep: no parameter values");

  // Commensurability pre-check, listing every offender.
  std::vector<std::string> offenders;
  for (double v : values) {
    if (parameter == SweepParameter::sites) {
      if (std::abs(v - std::round(v)) > 1e-9 || v < 1.0) offenders.push_back(format_sig(v));
    } else {
      const double raw = v * static_cast<double>(sites);
      if (std::abs(raw - std::round(raw)) > 1e-6) offenders.push_back(format_sig(v));
    }
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "sweep: non-commensurate " << to_string(parameter) << " values:";
    for (const auto& o : offenders) msg << " " << o;
    throw std::invalid_argument(msg.str());
  }

  SweepResult result;
  result.parameter_name = to_string(parameter);
  result.parameter_values = values;
  result.rows.resize(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const double v = values[i];
    const long sites_i =
        parameter == SweepParameter::sites ? static_cast<long>(std::llround(v)) : sites;
    const double x2_i = parameter == SweepParameter::x2 ? v : geo.x2;
    const double y_i = parameter == SweepParameter::y ? v : geo.y;
    const Geometry g = Geometry::from_ratios(sites_i, geo.x1, x2_i, y_i);
    const MomentumMultiset k = state.resolve(sites_i);
    result.rows[i] = SweepRow{sites_i, geo.x1, x2_i, y_i, k.str(),
                              evaluate_state(k, g, state.stats)};
  });
  return result;
}

SweepResult extrapolate_sites(const StateSpec& state, const GeometrySpec& geo,
                              const std::vector<long>& ladder) {
  std::vector<long> usable;
  for (long sites : ladder) {
    bool ok = sites >= 1;
    for (double ratio : {geo.x1, geo.x2, geo.y}) {
      const double raw = ratio * static_cast<double>(sites);
      if (std::abs(raw - std::round(raw)) > 1e-6) ok = false;
    }
    if (ok) {
      try {
        state.resolve(sites);
      } catch (const std::invalid_argument&) {
        ok = false;
      }
    }
    if (ok) usable.push_back(sites);
  }
  if (usable.size() < 3) {
    std::ostringstream msg;
    msg << "extrapolation needs at least 3 usable L values, got " << usable.size();
    throw std::invalid_argument(msg.str());
  }

  SweepResult result;
  result.parameter_name = "L";
  result.parameter_values.assign(usable.begin(), usable.end());
  result.rows.resize(usable.size());
  parallel_for(usable.size(), [&](std::size_t i) {
    const long sites = usable[i];
    const Geometry g = Geometry::from_ratios(sites, geo.x1, geo.x2, geo.y);
    const MomentumMultiset k = state.resolve(sites);
    result.rows[i] = SweepRow{sites, geo.x1, geo.x2, geo.y, k.str(),
                              evaluate_state(k, g, state.stats)};
  });

  // Least-squares fit X(L) = X_inf + a/L + b/L^2 per measure.
  const auto n = static_cast<Eigen::Index>(usable.size());
  Eigen::MatrixXd design(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double inv = 1.0 / static_cast<double>(usable[static_cast<std::size_t>(i)]);
    design(i, 0) = 1.0;
    design(i, 1) = inv;
    design(i, 2) = inv * inv;
  }
  const auto solver = design.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);

  std::array<double, 3> limits{};
  std::array<double, 3> residuals{};
  for (int m = 0; m < 3; ++m) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& ms = result.rows[static_cast<std::size_t>(i)].measures;
      y(i) = m == 0   ? ms.reflected_entropy
             : m == 1 ? ms.mutual_information
                      : ms.log_negativity;
    }
    const Eigen::VectorXd coef = solver.solve(y);
    limits[static_cast<std::size_t>(m)] = coef(0);
    residuals[static_cast<std::size_t>(m)] = (design * coef - y).cwiseAbs().maxCoeff();
  }
  result.extrapolated = MeasureSet{limits[0], limits[1], limits[2], limits[0] - limits[1]};
  result.fit_residuals = residuals;
  return result;
}

AdditivityReport additivity_report(Statistics stats,
                                   const std::vector<std::vector<MomentumTerm>>& parts,
                                   const GeometrySpec& geo,
                                   const std::vector<long>& ladder, double bound) {
  if (parts.size() < 2) {
    throw std::invalid_argument("additivity_report: need at least two momentum sets");
  }
  if (ladder.empty()) {
    throw std::invalid_argument("additivity_report: empty L ladder");
  }

  AdditivityReport report;
  report.bound = bound;
  report.rows.resize(ladder.size());

  parallel_for(ladder.size(), [&](std::size_t idx) {
    const long sites = ladder[idx];
    const Geometry g = Geometry::from_ratios(sites, geo.x1, geo.x2, geo.y);

    std::vector<MomentumMultiset> resolved;
    resolved.reserve(parts.size());
    for (const auto& terms : parts) {
      StateSpec spec{stats, terms};
      resolved.push_back(spec.resolve(sites));
    }
    for (std::size_t i = 0; i < resolved.size(); ++i) {
      for (std::size_t j = i + 1; j < resolved.size(); ++j) {
        for (const auto& e : resolved[i].entries()) {
          if (resolved[j].multiplicity_of(e.momentum) > 0) {
            std::ostringstream msg;
            msg << "additivity_report: momentum sets overlap at k = " << e.momentum
                << " for L = " << sites << " (K_i must be pairwise disjoint)";
            throw std::invalid_argument(msg.str());
          }
        }
      }
    }

    MomentumMultiset combined = resolved[0];
    for (std::size_t i = 1; i < resolved.size(); ++i)
      combined = multiset_union(combined, resolved[i]);

    AdditivityRow row;
    row.sites = sites;
    row.combined = evaluate_state(combined, g, stats);
    std::vector<MeasureSet> part_measures;
    part_measures.reserve(resolved.size());
    for (const auto& k : resolved) part_measures.push_back(evaluate_state(k, g, stats));
    row.parts_sum = compose_additive(part_measures);
    row.dev_sr = std::abs(row.combined.reflected_entropy - row.parts_sum.reflected_entropy);
    row.dev_i =
        std::abs(row.combined.mutual_information - row.parts_sum.mutual_information);
    row.dev_en = std::abs(row.combined.log_negativity - row.parts_sum.log_negativity);
    report.rows[idx] = std::move(row);
  });

  bool pass = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    const auto& cur = report.rows[i];
    if (cur.dev_sr > prev.dev_sr + 1e-12 || cur.dev_i > prev.dev_i + 1e-12 ||
        cur.dev_en > prev.dev_en + 1e-12) {
      pass = false;
    }
  }
  const auto& last = report.rows.back();
  if (last.dev_sr > bound || last.dev_i > bound || last.dev_en > bound) pass = false;
  report.pass = pass;
  return report;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "L,x1,x2,y,K,S_R,I,E_N,gap\n";
  for (const auto& row : result.rows) append_row_csv(out, row);
  return out.str();
}

std::string to_json(const SweepResult& result) {
  ordered_json j;
  j["parameter"]["name"] = result.parameter_name;
  j["parameter"]["values"] = ordered_json::array();
  for (double v : result.parameter_values) j["parameter"]["values"].push_back(round_sig(v));
  j["rows"] = ordered_json::array();
  for (const auto& row : result.rows) j["rows"].push_back(row_json(row));
  if (result.extrapolated) j["extrapolated"] = measures_json(*result.extrapolated);
  if (result.fit_residuals) {
    j["fit_residuals"]["S_R"] = round_sig((*result.fit_residuals)[0]);
    j["fit_residuals"]["I"] = round_sig((*result.fit_residuals)[1]);
    j["fit_residuals"]["E_N"] = round_sig((*result.fit_residuals)[2]);
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const AdditivityReport& report) {
  std::ostringstream out;
  out << "L,delta_S_R,delta_I,delta_E_N\n";
  for (const auto& row : report.rows) {
    out << row.sites << "," << format_sig(row.dev_sr) << "," << format_sig(row.dev_i)
        << "," << format_sig(row.dev_en) << "\n";
  }
  return out.str();
}

std::string to_json(const AdditivityReport& report) {
  ordered_json j;
  j["bound"] = round_sig(report.bound);
  j["pass"] = report.pass;
  j["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["L"] = row.sites;
    r["delta_S_R"] = round_sig(row.dev_sr);
    r["delta_I"] = round_sig(row.dev_i);
    r["delta_E_N"] = round_sig(row.dev_en);
    r["combined"] = measures_json(row.combined);
    r["parts_sum"] = measures_json(row.parts_sum);
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

}  // namespace qent
