#pragma once

// Variety and entropy measures over finite alphabets and successor-constrained
// sequence spaces.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace requisite {

/// Exact, arbitrary-precision count of distinguishable states.
using Count = boost::multiprecision::cpp_int;

/// log2 of an exact count. Counts wider than a double's mantissa are reduced
/// by their bit length first, so the result keeps full relative precision.
/// Returns -inf for zero.
double log2_count(const Count& count);

/// Ordered set of distinct symbol labels. Indices into the alphabet are what
/// constraints refer to.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  /// Symbols "1", "2", ..., "size".
  static Alphabet numbered(std::size_t size);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(std::size_t index) const { return symbols_.at(index); }
  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
};

/// 0/1 transfer matrix: allowed(p, s) is true iff symbol s may follow symbol p.
class SuccessorConstraint {
 public:
  /// `allowed` is row-major, size * size entries.
  SuccessorConstraint(std::size_t size, std::vector<bool> allowed);

  /// Every successor allowed.
  static SuccessorConstraint unconstrained(std::size_t size);
  /// |successor - predecessor| <= max_step on symbol indices.
  static SuccessorConstraint adjacent_within(std::size_t size, std::size_t max_step);

  std::size_t size() const { return size_; }
  bool allowed(std::size_t predecessor, std::size_t successor) const {
    return allowed_[predecessor * size_ + successor];
  }

  /// Number of allowed (predecessor, successor) pairs.
  std::size_t allowed_pairs() const;

 private:
  std::size_t size_;
  std::vector<bool> allowed_;
};

/// Sequences of a fixed length over an alphabet, optionally restricted by a
/// successor constraint and by the set of permitted first symbols.
class SequenceSpace {
 public:
  SequenceSpace(Alphabet alphabet, std::size_t length,
                std::optional<SuccessorConstraint> constraint = std::nullopt,
                std::optional<std::vector<bool>> initial_allowed = std::nullopt);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t length() const { return length_; }
  const std::optional<SuccessorConstraint>& constraint() const { return constraint_; }

  bool initial_allowed(std::size_t symbol) const {
    return !initial_ || (*initial_)[symbol];
  }
  bool transition_allowed(std::size_t predecessor, std::size_t successor) const {
    return !constraint_ || constraint_->allowed(predecessor, successor);
  }

  /// The same space with the successor constraint removed.
  SequenceSpace without_constraint() const;

 private:
  Alphabet alphabet_;
  std::size_t length_;
  std::optional<SuccessorConstraint> constraint_;
  std::optional<std::vector<bool>> initial_;
};

/// A count of distinguishable states together with its logarithmic form.
/// Only the count is stored; bits() is always derived from it.
class VarietyMeasure {
 public:
  explicit VarietyMeasure(Count count);

  const Count& count() const { return count_; }
  /// log2(count); negative infinity when the count is zero.
  double bits() const { return log2_count(count_); }

  friend bool operator==(const VarietyMeasure&, const VarietyMeasure&) = default;

 private:
  Count count_;
};

/// Probability vector summing to one within 1e-9.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probabilities);

  static Distribution uniform(std::size_t outcomes);

  std::span<const double> probabilities() const { return probabilities_; }
  std::size_t size() const { return probabilities_.size(); }

 private:
  std::vector<double> probabilities_;
};

inline constexpr double kDistributionTolerance = 1e-9;
inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

/// Shannon entropy in bits, -sum p log2 p, with 0 log 0 = 0.
///
/// Written with the leading minus sign so the result is non-negative and
/// directly comparable with variety in bits; the unsigned form differs only by
/// sign.
double entropy_bits(const Distribution& dist);

/// log2(count). Throws DomainError for zero.
double variety_bits(const Count& count);

/// Variety of independently varying components: product of the counts.
VarietyMeasure combined_variety(std::span<const Count> component_counts);

/// Exact number of sequences in the space, by dynamic programming over the
/// transfer matrix (per-symbol ending counts advanced length - 1 times).
VarietyMeasure variety_count(const SequenceSpace& space);

/// Exhaustive enumeration. Refuses spaces with more than kBruteForceGuard
/// candidate sequences. Serial reference implementation.
Count brute_force_count(const SequenceSpace& space);

/// Same enumeration with leading-symbol prefixes split across OpenMP threads.
Count brute_force_count_parallel(const SequenceSpace& space);

/// 2 * F(2n + 1), F(1) = F(2) = 1: the number of length-n sequences over four
/// symbols in which adjacent symbols differ by at most one.
Count adjacent_step_closed_form(std::size_t n);

/// Fibonacci number F(k), F(0) = 0, F(1) = 1.
Count fibonacci(std::size_t k);

}  // namespace requisite
