#ifndef ARIMLE_JSON_UTIL_H_
#define ARIMLE_JSON_UTIL_H_

#include <span>

#include <nlohmann/json.hpp>

#include "arimle/types.h"

namespace arimle {

// Insertion-ordered JSON, so serialized key order is fixed by the code.
using Json = nlohmann::ordered_json;

// x rounded to 12 significant digits; NaN and infinities become null. The
// shortest round-trip form of the rounded double is what gets printed, so
// output is byte-stable across platforms.
Json JsonNumber(double x);
Json JsonNumbers(std::span<const double> xs);
Json JsonLabels(const LabelVector& labels);
Json JsonProfile(const ClassifierProfile& profile);

}  // namespace arimle

#endif  // ARIMLE_JSON_UTIL_H_
