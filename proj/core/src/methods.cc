#include "arimle/methods.h"

#include <string>

#include "arimle/error.h"

namespace arimle {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kMv: return "mv";
    case Method::kSml: return "sml";
    case Method::kImle: return "imle";
    case Method::kArimle: return "arimle";
    case Method::kOsml: return "osml";
  }
  return "unknown";
}

const std::vector<Method>& AllMethods() {
  static const std::vector<Method> kAll = {Method::kMv, Method::kSml,
                                           Method::kImle, Method::kArimle,
                                           Method::kOsml};
  return kAll;
}

Method ParseMethod(std::string_view name) {
  for (Method m : AllMethods()) {
    if (MethodName(m) == name) return m;
  }
  std::string valid;
  for (Method m : AllMethods()) {
    if (!valid.empty()) valid += ", ";
    valid += MethodName(m);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown method '" +
                                             std::string(name) +
                                             "'; valid methods: " + valid);
}

std::vector<Method> ParseMethodList(std::string_view list) {
  std::vector<Method> methods;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    methods.push_back(ParseMethod(list.substr(start, comma - start)));
    start = comma + 1;
  }
  return methods;
}

AggregationResult Aggregate(const PredictionMatrix& predictions, Method method,
                            const AggregateOptions& options) {
  switch (method) {
    case Method::kMv:
      return MajorityVote(predictions);
    case Method::kSml:
      return Sml(predictions, options.spectral);
    case Method::kImle:
      return Imle(predictions, options.em, options.spectral);
    case Method::kArimle:
      return Arimle(predictions, options.solver, options.em);
    case Method::kOsml:
      if (!options.oracle) {
        throw Error(ErrorCode::kInvalidConfig,
                    "method osml requires oracle profiles");
      }
      return OracleSml(predictions, *options.oracle);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown method");
}

}  // namespace arimle
