#include "arimle/types.h"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "arimle/error.h"

namespace arimle {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kRaggedGrid: return "RaggedGrid";
    case ErrorCode::kNonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::kDuplicateClassifierId: return "DuplicateClassifierId";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewClassifiers: return "TooFewClassifiers";
    case ErrorCode::kSolverDiverged: return "SolverDiverged";
    case ErrorCode::kBoundaryRate: return "BoundaryRate";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kSingleClassTruth: return "SingleClassTruth";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Vote SignWithTiebreak(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kNonFiniteInput, "sign of non-finite value");
  }
  return x >= 0.0 ? Vote{1} : Vote{-1};
}

namespace {

void CheckIds(std::size_t m, const std::vector<std::string>& ids) {
  if (ids.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(m) + " classifier ids, got " +
                    std::to_string(ids.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateClassifierId,
                  "duplicate classifier id '" + id + "'");
    }
  }
}

}  // namespace

PredictionMatrix PredictionMatrix::Validate(
    const std::vector<std::vector<int>>& grid, std::vector<std::string> ids) {
  if (grid.empty() || grid.front().empty()) {
    throw Error(ErrorCode::kEmptyMatrix, "prediction matrix is empty");
  }
  const std::size_t n = grid.size();
  const std::size_t m = grid.front().size();
  std::vector<Vote> votes;
  votes.reserve(n * m);
  for (std::size_t j = 0; j < n; ++j) {
    if (grid[j].size() != m) {
      throw Error(ErrorCode::kRaggedGrid,
                  "row " + std::to_string(j) + " has " +
                      std::to_string(grid[j].size()) + " entries, expected " +
                      std::to_string(m));
    }
    for (std::size_t i = 0; i < m; ++i) {
      const int v = grid[j][i];
      if (v != 1 && v != -1) {
        throw Error(ErrorCode::kNonBinaryEntry,
                    "entry (" + std::to_string(j) + ", " + std::to_string(i) +
                        ") is " + std::to_string(v) + ", expected -1 or 1");
      }
      votes.push_back(static_cast<Vote>(v));
    }
  }
  CheckIds(m, ids);
  return PredictionMatrix(n, m, std::move(votes), std::move(ids));
}

PredictionMatrix PredictionMatrix::FromRowMajor(std::size_t n, std::size_t m,
                                                std::vector<Vote> votes,
                                                std::vector<std::string> ids) {
  if (n == 0 || m == 0) {
    throw Error(ErrorCode::kEmptyMatrix, "prediction matrix is empty");
  }
  if (votes.size() != n * m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vote buffer size does not equal n*m");
  }
  for (std::size_t k = 0; k < votes.size(); ++k) {
    if (votes[k] != 1 && votes[k] != -1) {
      throw Error(ErrorCode::kNonBinaryEntry,
                  "entry (" + std::to_string(k / m) + ", " +
                      std::to_string(k % m) + ") is not -1 or 1");
    }
  }
  CheckIds(m, ids);
  return PredictionMatrix(n, m, std::move(votes), std::move(ids));
}

std::vector<Vote> PredictionMatrix::column(std::size_t classifier) const {
  std::vector<Vote> col(n_);
  for (std::size_t j = 0; j < n_; ++j) col[j] = vote(j, classifier);
  return col;
}

PredictionMatrix PredictionMatrix::PermuteColumns(
    std::span<const std::size_t> order) const {
  if (order.size() != m_) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation length != m");
  }
  std::vector<Vote> votes(votes_.size());
  std::vector<std::string> ids(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    if (order[k] >= m_) {
      throw Error(ErrorCode::kOutOfRange, "permutation index out of range");
    }
    ids[k] = ids_[order[k]];
    for (std::size_t j = 0; j < n_; ++j) {
      votes[j * m_ + k] = vote(j, order[k]);
    }
  }
  CheckIds(m_, ids);
  return PredictionMatrix(n_, m_, std::move(votes), std::move(ids));
}

PredictionMatrix PredictionMatrix::Negated() const {
  std::vector<Vote> votes(votes_);
  for (auto& v : votes) v = static_cast<Vote>(-v);
  return PredictionMatrix(n_, m_, std::move(votes), ids_);
}

LabelVector::LabelVector(std::vector<Vote> labels)
    : labels_(std::move(labels)) {
  for (Vote v : labels_) {
    if (v != 1 && v != -1) {
      throw Error(ErrorCode::kNonBinaryEntry, "label is not -1 or 1");
    }
  }
}

std::size_t LabelVector::CountPositive() const {
  std::size_t count = 0;
  for (Vote v : labels_) count += (v > 0);
  return count;
}

LabelVector LabelVector::Negated() const {
  std::vector<Vote> flipped(labels_);
  for (auto& v : flipped) v = static_cast<Vote>(-v);
  return LabelVector(std::move(flipped));
}

ClassifierProfile ClassifierProfile::FromRates(double psi, double eta) {
  for (double r : {psi, eta}) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange, "rate outside [0, 1]");
    }
  }
  const double pi = 0.5 * (psi + eta);
  return ClassifierProfile{psi, eta, pi, 1.0 - pi};
}

}  // namespace arimle
