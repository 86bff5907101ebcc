#include "arimle/json_util.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace arimle {

Json JsonNumber(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  double rounded = std::strtod(buf, nullptr);
  if (rounded == 0.0) rounded = 0.0;  // no "-0.0"
  return rounded;
}

Json JsonNumbers(std::span<const double> xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(JsonNumber(x));
  return out;
}

Json JsonLabels(const LabelVector& labels) {
  Json out = Json::array();
  for (Vote v : labels.values()) out.push_back(static_cast<int>(v));
  return out;
}

Json JsonProfile(const ClassifierProfile& profile) {
  Json out = Json::object();
  out["psi"] = JsonNumber(profile.psi);
  out["eta"] = JsonNumber(profile.eta);
  out["pi"] = JsonNumber(profile.pi);
  out["e"] = JsonNumber(profile.e);
  return out;
}

}  // namespace arimle
