#ifndef ARIMLE_AGREEMENT_H_
#define ARIMLE_AGREEMENT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "arimle/types.h"

namespace arimle {

// Symmetric m x m matrix of pairwise agreement rates
// a(i, k) = P(f_i(X) = f_k(X)), with a(i, i) = 1.
class AgreementMatrix {
 public:
  // Validates symmetry, unit diagonal and [0, 1] entries. `values` is
  // row-major m*m.
  static AgreementMatrix FromValues(std::size_t m, std::vector<double> values);

  // Noise-free agreement rates implied by independent classifiers with the
  // given error rates, one PredictedAgreement per pair.
  static AgreementMatrix FromErrorRates(std::span<const double> error_rates);

  std::size_t m() const { return m_; }
  double operator()(std::size_t i, std::size_t k) const {
    return values_[i * m_ + k];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  AgreementMatrix(std::size_t m, std::vector<double> values)
      : m_(m), values_(std::move(values)) {}

  std::size_t m_ = 0;
  std::vector<double> values_;
};

struct SolverConfig {
  int max_iters = 2000;
  double tol = 1e-8;
  double initial_error_rate = 0.25;
};

struct ErrorRateEstimate {
  std::vector<double> e;
  // Root-mean-square misfit of the pairwise model over all m(m-1)/2 pairs.
  double residual = 0.0;
  // True when the solution was reflected e -> 1 - e to make mean(e) <= 0.5.
  bool flipped = false;
  int iterations = 0;
  bool converged = false;
};

// Fraction of samples on which each pair of classifiers votes the same way.
AgreementMatrix ComputeAgreementRates(const PredictionMatrix& predictions);

// 1 - e1 - e2 + 2 e1 e2: the agreement rate of two classifiers whose errors
// are independent. Throws kOutOfRange unless both rates lie in [0, 1].
double PredictedAgreement(double e1, double e2);

// Least-squares fit of per-classifier error rates to the observed agreement
// rates under the independence model, constrained to [0, 1]^m.
//
// Projected gradient descent with an Armijo backtracking line search, started
// from e_i = config.initial_error_rate. Stops once the projected gradient's
// infinity norm drops below config.tol or after config.max_iters steps. The
// model is invariant under e -> 1 - e, so a solution with mean(e) > 0.5 is
// reflected and reported with flipped = true.
//
// Throws kTooFewClassifiers when m < 3 and kSolverDiverged if the residual is
// not finite.
ErrorRateEstimate SolveErrorRates(const AgreementMatrix& agreement,
                                  const SolverConfig& config = {});

// pi_i = 1 - e_i. Throws kOutOfRange for rates outside [0, 1].
std::vector<double> BcaFromErrorRates(std::span<const double> error_rates);

}  // namespace arimle

#endif  // ARIMLE_AGREEMENT_H_
