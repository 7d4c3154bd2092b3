#include "fermat_app/json_io.hpp"

namespace fermat::app {

Json to_json(const WeilBoundResult& bound) {
  Json j;
  j["q"] = bound.q;
  j["s"] = bound.s;
  j["d"] = bound.d;
  j["i_value"] = bound.i_value;
  j["radius"] = bound.radius;
  j["exact"] = bound.exact();
  j["lower"] = bound.lower;
  j["upper"] = bound.upper;
  return j;
}

Json to_json(const CountResult& count, std::uint32_t q) {
  Json j;
  j["q"] = q;
  j["n_points"] = count.n_points;
  j["method"] = std::string(to_string(count.method));
  j["residual"] = count.residual;
  return j;
}

Json to_json(const ClassificationResult& result) {
  Json j;
  j["status"] = std::string(to_string(result.status));
  j["r"] = result.r ? Json(*result.r) : Json(nullptr);
  j["epsilon"] = result.epsilon ? Json(*result.epsilon) : Json(nullptr);
  j["theta_matches"] = result.theta_matches;
  j["reasons"] = result.reasons;
  j["bound"] = {{"lower", result.bound.lower}, {"upper", result.bound.upper}, {"i_value", result.bound.i_value}};
  j["count"] = result.verified_count ? Json(result.verified_count->n_points) : Json(nullptr);
  return j;
}

Json to_json(const IdentityCheck& check) {
  Json j;
  j["identity"] = check.name;
  j["max_residual"] = check.max_residual;
  j["tolerance"] = check.tolerance;
  j["cases"] = check.cases;
  j["pass"] = check.pass;
  return j;
}

Json to_json(const PurityReport& report) {
  Json j;
  j["is_pure"] = report.is_pure;
  j["order"] = report.order ? Json(*report.order) : Json(nullptr);
  j["search_bound"] = report.search_bound;
  return j;
}

}  // namespace fermat::app
