#pragma once

namespace qent {

// One state's entanglement measures, in nats.
struct MeasureSet {
  double reflected_entropy = 0.0;
  double mutual_information = 0.0;
  double log_negativity = 0.0;
  double markov_gap = 0.0;  // reflected_entropy - mutual_information
};

// Builds a MeasureSet and enforces S_R >= I - 1e-9 and E_N >= -1e-10;
// throws std::runtime_error naming the violated inequality.
MeasureSet make_measure_set(double reflected_entropy, double mutual_information,
                            double log_negativity);

}  // namespace qent
