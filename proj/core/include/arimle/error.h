#ifndef ARIMLE_ERROR_H_
#define ARIMLE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace arimle {

enum class ErrorCode {
  kEmptyMatrix,
  kRaggedGrid,
  kNonBinaryEntry,
  kDuplicateClassifierId,
  kNonFiniteInput,
  kOutOfRange,
  kDimensionMismatch,
  kTooFewClassifiers,
  kSolverDiverged,
  kBoundaryRate,
  kInvalidSpec,
  kSingleClassTruth,
  kLengthMismatch,
  kParse,
  kIo,
  kInvalidConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the library surfaces as an Error carrying a code, so the
// CLI can map it onto its exit-status contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arimle

#endif  // ARIMLE_ERROR_H_
