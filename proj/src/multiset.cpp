#include "qent/multiset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qent {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::map<long, int> as_map(const MomentumMultiset& m) {
  std::map<long, int> out;
  for (const auto& e : m.entries()) out[e.momentum] = e.multiplicity;
  return out;
}

void require_partition(const MomentumMultiset& k, const Splitting& split) {
  auto a = as_map(split.part_a);
  auto b = as_map(split.part_b);
  auto c = as_map(split.part_c);
  std::map<long, int> total;
  for (const auto& [mom, mult] : a) total[mom] += mult;
  for (const auto& [mom, mult] : b) total[mom] += mult;
  for (const auto& [mom, mult] : c) total[mom] += mult;
  auto parent = as_map(k);
  if (total != parent) {
    throw std::invalid_argument("splitting does not partition the parent multiset " + k.str());
  }
}

}  // namespace

MomentumMultiset::MomentumMultiset(std::vector<Entry> entries) {
  std::map<long, int> merged;
  for (const auto& e : entries) {
    if (e.multiplicity < 1) {
      throw std::invalid_argument("momentum multiplicity must be >= 1");
    }
    merged[e.momentum] += e.multiplicity;
  }
  entries_.reserve(merged.size());
  for (const auto& [mom, mult] : merged) entries_.push_back({mom, mult});
}

MomentumMultiset MomentumMultiset::parse(const std::string& text) {
  std::vector<Entry> entries;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, ',')) {
    if (term.empty()) {
      throw std::invalid_argument("empty term in momentum multiset \"" + text + "\"");
    }
    const auto caret = term.find('^');
    Entry e;
    try {
      e.momentum = std::stol(term.substr(0, caret));
      e.multiplicity =
          caret == std::string::npos ? 1 : std::stoi(term.substr(caret + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid momentum term \"" + term + "\"");
    }
    entries.push_back(e);
  }
  if (entries.empty()) {
    throw std::invalid_argument("empty momentum multiset \"" + text + "\"");
  }
  return MomentumMultiset(std::move(entries));
}

MomentumMultiset MomentumMultiset::single(long momentum, int multiplicity) {
  return MomentumMultiset({{momentum, multiplicity}});
}

int MomentumMultiset::particle_count() const {
  int n = 0;
  for (const auto& e : entries_) n += e.multiplicity;
  return n;
}

int MomentumMultiset::multiplicity_of(long momentum) const {
  for (const auto& e : entries_)
    if (e.momentum == momentum) return e.multiplicity;
  return 0;
}

bool MomentumMultiset::all_single() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.multiplicity == 1; });
}

std::vector<long> MomentumMultiset::expanded() const {
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(particle_count()));
  for (const auto& e : entries_)
    for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.momentum);
  return out;
}

std::string MomentumMultiset::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : entries_) {
    if (!first) out << ",";
    first = false;
    out << e.momentum;
    if (e.multiplicity > 1) out << "^" << e.multiplicity;
  }
  return out.str();
}

bool MomentumMultiset::operator<(const MomentumMultiset& other) const {
  return std::lexicographical_compare(
      entries_.begin(), entries_.end(), other.entries_.begin(),
      other.entries_.end(), [](const Entry& a, const Entry& b) {
        return a.momentum != b.momentum ? a.momentum < b.momentum
                                        : a.multiplicity < b.multiplicity;
      });
}

std::vector<MomentumMultiset> sub_multisets(const MomentumMultiset& k) {
  const auto& parent = k.entries();
  const std::size_t s = parent.size();
  std::vector<int> counts(s, 0);
  std::vector<MomentumMultiset> out;
  while (true) {
    std::vector<MomentumMultiset::Entry> entries;
    for (std::size_t i = 0; i < s; ++i) {
      if (counts[i] > 0) entries.push_back({parent[i].momentum, counts[i]});
    }
    out.push_back(MomentumMultiset(std::move(entries)));
    // odometer over multiplicity vectors, last digit fastest
    std::size_t pos = s;
    while (pos > 0) {
      --pos;
      if (counts[pos] < parent[pos].multiplicity) {
        ++counts[pos];
        break;
      }
      counts[pos] = 0;
      if (pos == 0) return out;
    }
    if (s == 0) return out;
  }
}

std::optional<MomentumMultiset> multiset_subtract(const MomentumMultiset& k,
                                                  const MomentumMultiset& m) {
  auto remaining = as_map(k);
  for (const auto& e : m.entries()) {
    auto it = remaining.find(e.momentum);
    if (it == remaining.end() || it->second < e.multiplicity) return std::nullopt;
    it->second -= e.multiplicity;
  }
  std::vector<MomentumMultiset::Entry> entries;
  for (const auto& [mom, mult] : remaining)
    if (mult > 0) entries.push_back({mom, mult});
  return MomentumMultiset(std::move(entries));
}

double bosonic_coefficient(const MomentumMultiset& k, const Splitting& split) {
  require_partition(k, split);
  double coeff = 1.0;
  for (const auto& e : k.entries()) {
    const int a = split.part_a.multiplicity_of(e.momentum);
    const int b = split.part_b.multiplicity_of(e.momentum);
    const int c = split.part_c.multiplicity_of(e.momentum);
    coeff *= std::sqrt(factorial(e.multiplicity)) /
             (factorial(a) * factorial(b) * factorial(c));
  }
  return coeff;
}

int fermionic_sign(const MomentumMultiset& k, const Splitting& split) {
  if (!k.all_single()) {
    throw std::invalid_argument(
        "fermionic_sign: multiplicity > 1 in " + k.str() +
        " (fermionic multisets must have all multiplicities 1)");
  }
  require_partition(k, split);
  // Block label per momentum, in ascending momentum order.
  std::vector<int> blocks;
  blocks.reserve(k.entries().size());
  for (const auto& e : k.entries()) {
    if (split.part_a.multiplicity_of(e.momentum)) blocks.push_back(0);
    else if (split.part_b.multiplicity_of(e.momentum)) blocks.push_back(1);
    else blocks.push_back(2);
  }
  int inversions = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (blocks[i] > blocks[j]) ++inversions;
  return (inversions & 1) ? -1 : 1;
}

MomentumMultiset multiset_union(const MomentumMultiset& a, const MomentumMultiset& b) {
  std::vector<MomentumMultiset::Entry> entries(a.entries());
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return MomentumMultiset(std::move(entries));
}

}  // namespace qent
