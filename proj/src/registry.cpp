#include "isogeo/diffeomorphism.hpp"

#include "isogeo/error.hpp"

#include <cmath>
#include <set>

namespace isogeo {
namespace {

double take(const ParamMap& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(std::string_view name, const ParamMap& params,
                    std::initializer_list<std::string_view> known) {
  const std::set<std::string_view> allowed(known);
  for (const auto& [key, value] : params) {
    if (!allowed.contains(key)) {
      throw InputError(std::string(name) + ": unknown parameter '" + key + "'");
    }
  }
}

}  // namespace

std::shared_ptr<const Diffeomorphism> make_diffeomorphism(
    std::string_view name, const ParamMap& params) {
  if (name == "identity") {
    reject_unknown(name, params, {"dim"});
    const double dim = take(params, "dim", 2.0);
    if (dim < 1.0 || dim != std::floor(dim)) {
      throw InputError("identity: dim must be a positive integer");
    }
    return std::make_shared<IdentityDiffeo>(static_cast<Eigen::Index>(dim));
  }
  if (name == "river") {
    reject_unknown(name, params, {"beta", "eta"});
    return std::make_shared<RiverDiffeo>(take(params, "beta", 5.0),
                                         take(params, "eta", 0.25));
  }
  if (name == "spiral") {
    reject_unknown(name, params, {"beta"});
    return std::make_shared<SpiralDiffeo>(take(params, "beta", 0.25));
  }
  if (name == "banana") {
    reject_unknown(name, params, {"a", "z"});
    return std::make_shared<BananaDiffeo>(take(params, "a", 1.0 / 9.0),
                                          take(params, "z", 0.0));
  }
  if (name == "sinh_shift") {
    reject_unknown(name, params, {});
    return std::make_shared<SinhShiftDiffeo>();
  }
  throw InputError("unknown geometry '" + std::string(name) + "'");
}

std::vector<std::string> registered_diffeomorphisms() {
  return {"identity", "river", "spiral", "banana", "sinh_shift"};
}

}  // namespace isogeo
