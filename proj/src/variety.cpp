#include "requisite/variety.hpp"

#include "requisite/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <utility>

namespace requisite {

double log2_count(const Count& count) {
  if (count.is_zero()) return -std::numeric_limits<double>::infinity();
  const std::size_t width = boost::multiprecision::msb(count) + 1;
  if (width <= 53) return std::log2(count.convert_to<double>());
  const std::size_t shift = width - 53;
  const Count top = count >> shift;
  return static_cast<double>(shift) + std::log2(top.convert_to<double>());
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ValidationError("alphabet must not be empty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) throw ValidationError("duplicate alphabet symbol '" + s + "'");
  }
}

Alphabet Alphabet::numbered(std::size_t size) {
  std::vector<std::string> symbols;
  symbols.reserve(size);
  for (std::size_t i = 1; i <= size; ++i) symbols.push_back(std::to_string(i));
  return Alphabet(std::move(symbols));
}

SuccessorConstraint::SuccessorConstraint(std::size_t size, std::vector<bool> allowed)
    : size_(size), allowed_(std::move(allowed)) {
  if (size_ == 0) throw ValidationError("constraint over an empty alphabet");
  if (allowed_.size() != size_ * size_) {
    throw ValidationError("transfer matrix must be " + std::to_string(size_) + "x" +
                          std::to_string(size_));
  }
}

SuccessorConstraint SuccessorConstraint::unconstrained(std::size_t size) {
  return SuccessorConstraint(size, std::vector<bool>(size * size, true));
}

SuccessorConstraint SuccessorConstraint::adjacent_within(std::size_t size, std::size_t max_step) {
  std::vector<bool> allowed(size * size, false);
  for (std::size_t p = 0; p < size; ++p) {
    for (std::size_t s = 0; s < size; ++s) {
      const std::size_t step = p > s ? p - s : s - p;
      allowed[p * size + s] = step <= max_step;
    }
  }
  return SuccessorConstraint(size, std::move(allowed));
}

std::size_t SuccessorConstraint::allowed_pairs() const {
  return static_cast<std::size_t>(std::count(allowed_.begin(), allowed_.end(), true));
}

SequenceSpace::SequenceSpace(Alphabet alphabet, std::size_t length,
                             std::optional<SuccessorConstraint> constraint,
                             std::optional<std::vector<bool>> initial_allowed)
    : alphabet_(std::move(alphabet)),
      length_(length),
      constraint_(std::move(constraint)),
      initial_(std::move(initial_allowed)) {
  if (length_ == 0) throw ValidationError("sequence length must be at least 1");
  if (constraint_ && constraint_->size() != alphabet_.size()) {
    throw ValidationError("constraint dimension " + std::to_string(constraint_->size()) +
                          " does not match alphabet size " + std::to_string(alphabet_.size()));
  }
  if (initial_ && initial_->size() != alphabet_.size()) {
    throw ValidationError("initial symbol mask does not match alphabet size");
  }
}

SequenceSpace SequenceSpace::without_constraint() const {
  return SequenceSpace(alphabet_, length_, std::nullopt, initial_);
}

VarietyMeasure::VarietyMeasure(Count count) : count_(std::move(count)) {
  if (count_ < 0) throw ValidationError("variety count must be non-negative");
}

Distribution::Distribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw ValidationError("distribution has no outcomes");
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw ValidationError("negative or NaN probability in distribution");
    total += p;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

Distribution Distribution::uniform(std::size_t outcomes) {
  if (outcomes == 0) throw DomainError("uniform distribution needs at least one outcome");
  return Distribution(std::vector<double>(outcomes, 1.0 / static_cast<double>(outcomes)));
}

double entropy_bits(const Distribution& dist) {
  double h = 0.0;
  for (double p : dist.probabilities()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double variety_bits(const Count& count) {
  if (count <= 0) throw DomainError("variety of zero states is undefined");
  return log2_count(count);
}

VarietyMeasure combined_variety(std::span<const Count> component_counts) {
  if (component_counts.empty()) throw DomainError("no components to combine");
  Count product = 1;
  for (const auto& c : component_counts) {
    if (c < 1) throw DomainError("component count must be at least 1");
    product *= c;
  }
  return VarietyMeasure(std::move(product));
}

VarietyMeasure variety_count(const SequenceSpace& space) {
  const std::size_t k = space.alphabet().size();
  // ending[s]: sequences of the current length whose last symbol is s
  std::vector<Count> ending(k);
  for (std::size_t s = 0; s < k; ++s) ending[s] = space.initial_allowed(s) ? 1 : 0;

  std::vector<Count> next(k);
  for (std::size_t step = 1; step < space.length(); ++step) {
    for (std::size_t s = 0; s < k; ++s) {
      next[s] = 0;
      for (std::size_t p = 0; p < k; ++p) {
        if (space.transition_allowed(p, s)) next[s] += ending[p];
      }
    }
    std::swap(ending, next);
  }
  Count total = 0;
  for (const auto& c : ending) total += c;
  return VarietyMeasure(std::move(total));
}

namespace {

std::uint64_t guarded_space_size(const SequenceSpace& space) {
  const std::uint64_t k = space.alphabet().size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < space.length(); ++i) {
    if (total > kBruteForceGuard / k) {
      throw RefusalError("brute-force enumeration refused: alphabet_size^length exceeds " +
                         std::to_string(kBruteForceGuard));
    }
    total *= k;
  }
  return total;
}

bool admissible(const SequenceSpace& space, std::span<const std::size_t> seq) {
  if (!space.initial_allowed(seq[0])) return false;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (!space.transition_allowed(seq[i - 1], seq[i])) return false;
  }
  return true;
}

}  // namespace

namespace {

// Counts admissible sequences whose first `fixed` symbols are already set in
// `seq`, stepping the remaining positions like an odometer.
std::uint64_t count_suffixes(const SequenceSpace& space, std::vector<std::size_t>& seq, std::size_t fixed) {
  const std::size_t k = space.alphabet().size();
  const std::size_t n = seq.size();
  std::fill(seq.begin() + static_cast<std::ptrdiff_t>(fixed), seq.end(), 0);
  std::uint64_t count = 0;
  while (true) {
    if (admissible(space, seq)) ++count;
    std::size_t pos = n;
    while (true) {
      if (pos == fixed) return count;
      --pos;
      if (++seq[pos] < k) break;
      seq[pos] = 0;
    }
  }
}

}  // namespace

Count brute_force_count(const SequenceSpace& space) {
  guarded_space_size(space);
  std::vector<std::size_t> seq(space.length(), 0);
  return Count(count_suffixes(space, seq, 0));
}

Count brute_force_count_parallel(const SequenceSpace& space) {
  guarded_space_size(space);
  const std::size_t k = space.alphabet().size();
  const std::size_t n = space.length();

  // enough leading-symbol prefixes to keep every thread busy
  std::size_t fixed = 0;
  std::uint64_t prefixes = 1;
  while (fixed < n && prefixes < 256) {
    prefixes *= k;
    ++fixed;
  }

  std::uint64_t count = 0;
#pragma omp parallel reduction(+ : count)
  {
    std::vector<std::size_t> seq(n);
#pragma omp for schedule(dynamic)
    for (std::int64_t index = 0; index < static_cast<std::int64_t>(prefixes); ++index) {
      auto rest = static_cast<std::uint64_t>(index);
      for (std::size_t pos = fixed; pos-- > 0;) {
        seq[pos] = rest % k;
        rest /= k;
      }
      count += count_suffixes(space, seq, fixed);
    }
  }
  return Count(count);
}

Count fibonacci(std::size_t k) {
  Count a = 0;
  Count b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    Count t = a + b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

Count adjacent_step_closed_form(std::size_t n) {
  if (n == 0) throw DomainError("closed form defined for n >= 1");
  return 2 * fibonacci(2 * n + 1);
}

}  // namespace requisite
