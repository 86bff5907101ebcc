#ifndef ARIMLE_METHODS_H_
#define ARIMLE_METHODS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arimle/agreement.h"
#include "arimle/baselines.h"
#include "arimle/mle.h"
#include "arimle/types.h"

namespace arimle {

enum class Method { kMv, kSml, kImle, kArimle, kOsml };

// "mv", "sml", "imle", "arimle", "osml".
std::string_view MethodName(Method method);
const std::vector<Method>& AllMethods();
// Throws kInvalidConfig naming the valid choices.
Method ParseMethod(std::string_view name);
// Comma-separated list, e.g. "mv,arimle,osml".
std::vector<Method> ParseMethodList(std::string_view list);

struct AggregateOptions {
  SolverConfig solver;
  EmConfig em;
  SpectralOptions spectral;
  // Required by kOsml only.
  std::optional<OracleProfiles> oracle;
};

AggregationResult Aggregate(const PredictionMatrix& predictions, Method method,
                            const AggregateOptions& options = {});

}  // namespace arimle

#endif  // ARIMLE_METHODS_H_
