#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qent/measures.hpp"

namespace qent {

// Momentum affine in L: offset + num * L / den, repeated `multiplicity`
// times. Covers forms like "1", "L/4", "1+L/2".
struct MomentumTerm {
  long offset = 0;
  long num = 0;
  long den = 1;
  int multiplicity = 1;

  // Throws std::invalid_argument when num * L is not divisible by den.
  long resolve(long sites) const;
  std::string str() const;
};

// Statistics plus a momentum-term list; resolves to a MomentumMultiset at a
// given L. For classical statistics the terms label species.
struct StateSpec {
  Statistics stats = Statistics::classical;
  std::vector<MomentumTerm> momenta;

  // Grammar: comma-separated "k" or "k^r" with k an integer or an
  // affine-in-L expression ("L/4", "1+L/2", "3L/8").
  static StateSpec parse(Statistics stats, const std::string& text);

  MomentumMultiset resolve(long sites) const;
  std::string str() const;
};

// Geometry template in ratio form; L is supplied per sweep point.
struct GeometrySpec {
  double x1 = 0.0;
  double x2 = 0.0;
  double y = 0.0;
};

enum class SweepParameter { x2, y, sites };
SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

struct SweepRow {
  long sites = 0;
  double x1 = 0.0, x2 = 0.0, y = 0.0;
  std::string state;
  MeasureSet measures;
};

struct SweepResult {
  std::string parameter_name;
  std::vector<double> parameter_values;
  std::vector<SweepRow> rows;
  std::optional<MeasureSet> extrapolated;                 // L -> infinity fit
  std::optional<std::array<double, 3>> fit_residuals;     // max |res| per measure
};

// One MeasureSet per swept value; values must give integer site counts
// (offenders are listed in the error). Points evaluate concurrently,
// capped by QENT_THREADS.
SweepResult sweep(const StateSpec& state, const GeometrySpec& geo, long sites,
                  SweepParameter parameter, const std::vector<double>& values);

// Evaluate along an L ladder (non-commensurate entries are filtered) and fit
// X(L) = X_inf + a/L + b/L^2 by least squares. Needs >= 3 usable L values.
SweepResult extrapolate_sites(const StateSpec& state, const GeometrySpec& geo,
                              const std::vector<long>& ladder);

struct AdditivityRow {
  long sites = 0;
  MeasureSet combined;
  MeasureSet parts_sum;
  double dev_sr = 0.0, dev_i = 0.0, dev_en = 0.0;
};

struct AdditivityReport {
  std::vector<AdditivityRow> rows;
  double bound = 0.05;
  bool pass = false;       // deviations non-increasing and final row under bound
};

// Deviation |X_{union} - sum X_{part}| per measure along the ladder. Parts
// must be pairwise disjoint at every L (>= 2 parts; the union is their
// multiset sum).
AdditivityReport additivity_report(Statistics stats,
                                   const std::vector<std::vector<MomentumTerm>>& parts,
                                   const GeometrySpec& geo,
                                   const std::vector<long>& ladder,
                                   double bound = 0.05);

std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);
std::string to_csv(const AdditivityReport& report);
std::string to_json(const AdditivityReport& report);

// Runs body(0..count-1) on up to QENT_THREADS workers (default: hardware
// concurrency); rethrows the first worker exception.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qent
