#ifndef ARIMLE_TYPES_H_
#define ARIMLE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace arimle {

// A single classifier vote or label: always exactly -1 or +1.
using Vote = std::int8_t;

// +1 if x >= 0, else -1. Throws kNonFiniteInput for NaN or infinity.
Vote SignWithTiebreak(double x);

// Immutable n x m grid of base-classifier votes, row j holding the m votes
// for sample j. Construction goes through Validate, so every instance is
// guaranteed to hold only -1/+1 entries and unique classifier ids.
class PredictionMatrix {
 public:
  static PredictionMatrix Validate(const std::vector<std::vector<int>>& grid,
                                   std::vector<std::string> ids);

  // Builds from a row-major buffer of size n*m. Entries are checked.
  static PredictionMatrix FromRowMajor(std::size_t n, std::size_t m,
                                       std::vector<Vote> votes,
                                       std::vector<std::string> ids);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  Vote vote(std::size_t sample, std::size_t classifier) const {
    return votes_[sample * m_ + classifier];
  }
  std::span<const Vote> row(std::size_t sample) const {
    return {votes_.data() + sample * m_, m_};
  }
  std::vector<Vote> column(std::size_t classifier) const;

  const std::vector<std::string>& ids() const { return ids_; }

  // Columns reordered so that new column k is old column order[k].
  PredictionMatrix PermuteColumns(std::span<const std::size_t> order) const;
  // Every vote multiplied by -1.
  PredictionMatrix Negated() const;

  friend bool operator==(const PredictionMatrix&,
                         const PredictionMatrix&) = default;

 private:
  PredictionMatrix(std::size_t n, std::size_t m, std::vector<Vote> votes,
                   std::vector<std::string> ids)
      : n_(n), m_(m), votes_(std::move(votes)), ids_(std::move(ids)) {}

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Vote> votes_;
  std::vector<std::string> ids_;
};

// Hidden or estimated class labels, one per sample, each -1 or +1.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<Vote> labels);

  std::size_t size() const { return labels_.size(); }
  Vote operator[](std::size_t j) const { return labels_[j]; }
  const std::vector<Vote>& values() const { return labels_; }

  std::size_t CountPositive() const;
  LabelVector Negated() const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<Vote> labels_;
};

// Per-classifier rates: sensitivity psi = P(f=+1 | Y=+1), specificity
// eta = P(f=-1 | Y=-1), balanced accuracy pi and error rate e.
struct ClassifierProfile {
  double psi = 0.5;
  double eta = 0.5;
  double pi = 0.5;
  double e = 0.5;

  // pi = (psi + eta) / 2 and e = 1 - pi.
  static ClassifierProfile FromRates(double psi, double eta);

  friend bool operator==(const ClassifierProfile&,
                         const ClassifierProfile&) = default;
};

// Log-weights of the linear maximum-likelihood decision rule.
struct MleWeights {
  std::vector<double> log_alpha;
  std::vector<double> log_beta;
};

// One E/M pass of the refinement loop, recorded for inspection.
struct EmPass {
  std::vector<ClassifierProfile> profiles;
  MleWeights weights;
  std::vector<double> scores;
  LabelVector labels;
  std::size_t changed = 0;  // labels that differ from the previous pass
};

struct AggregationResult {
  LabelVector labels;
  std::vector<double> scores;
  // Empty for methods that do not estimate classifier rates (majority vote).
  std::vector<ClassifierProfile> profiles;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;
  std::vector<EmPass> trace;
};

}  // namespace arimle

#endif  // ARIMLE_TYPES_H_
