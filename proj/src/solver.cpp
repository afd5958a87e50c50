#include "dhtsp/solver.hpp"

#include <chrono>

namespace dhtsp {

template <class T>
std::optional<double> SolveResult<T>::ratio_vs_dual() const {
  if (!(dual_objective > T(0))) return std::nullopt;
  if constexpr (Numeric<T>::exact) {
    return Numeric<T>::to_double(total() / dual_objective);
  } else {
    return total() / dual_objective;
  }
}

template <class T>
SolveResult<T> solve(const Instance& instance, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto run = run_growth<T>(instance, options.growth);
  SolveResult<T> result;
  result.hsf = prune(run.state, instance);
  result.tours = build_tours(result.hsf, instance);
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  result.history = run.state.history();
  result.dual_objective = dual_objective(result.history);
  result.iterations = run.events.size();
  result.events = std::move(run.events);
  if (options.certificate) result.certificate = certify(result.history, instance, result.hsf, result.tours);
  return result;
}

namespace {

template <class T>
ordered_json number(const T& v) {
  return json_number(Numeric<T>::to_double(v));
}

ordered_json optional_number(const std::optional<double>& v) { return v ? json_number(*v) : ordered_json(); }

}  // namespace

template <class T>
ordered_json to_json(const SolveResult<T>& r) {
  ordered_json j;
  j["total"] = number(r.total());
  j["cost1"] = number(r.tours.tour1.cost);
  j["cost2"] = number(r.tours.tour2.cost);
  j["tour1"] = r.tours.tour1.sequence;
  j["tour2"] = r.tours.tour2.sequence;
  j["hsf_cost"] = number(r.hsf.cost());
  j["dual_objective"] = number(r.dual_objective);
  j["ratio_vs_dual"] = optional_number(r.ratio_vs_dual());
  j["iterations"] = r.iterations;
  if (r.certificate) {
    j["feasible"] = r.certificate->feasible;
    if (!r.certificate->violations.empty()) {
      auto vs = ordered_json::array();
      for (const auto& v : r.certificate->violations) {
        vs.push_back({{"constraint", v.constraint}, {"where", v.where}, {"slack", json_number(v.slack)},
                      {"detail", v.detail}});
      }
      j["violations"] = std::move(vs);
    }
  }
  j["arithmetic"] = Numeric<T>::name;
  if constexpr (Numeric<T>::exact) {
    j["exact"] = {{"total", Numeric<T>::to_string(r.total())},
                  {"hsf_cost", Numeric<T>::to_string(r.hsf.cost())},
                  {"dual_objective", Numeric<T>::to_string(r.dual_objective)}};
  }
  return j;
}

template <class T>
ordered_json to_json(const ExactSolution<T>& s) {
  ordered_json j;
  j["optimal"] = number(s.cost);
  auto targets = ordered_json::array();
  for (int v : s.assigned_to_v2) targets.push_back(v - 1);
  j["assigned_to_v2"] = std::move(targets);
  j["tour1"] = s.tour1;
  j["tour2"] = s.tour2;
  if constexpr (Numeric<T>::exact) j["exact"] = {{"optimal", Numeric<T>::to_string(s.cost)}};
  return j;
}

ordered_json to_json(const ValidationReport& report) {
  ordered_json j;
  j["valid"] = report.ok();
  auto vs = ordered_json::array();
  for (const auto& v : report.violations) {
    vs.push_back({{"rule", rule_name(v.rule)}, {"indices", v.indices}, {"message", v.message}});
  }
  j["violations"] = std::move(vs);
  if (report.truncated) j["truncated"] = true;
  return j;
}

template struct SolveResult<double>;
template struct SolveResult<Rational>;
template SolveResult<double> solve<double>(const Instance&, const SolveOptions&);
template SolveResult<Rational> solve<Rational>(const Instance&, const SolveOptions&);
template ordered_json to_json<double>(const SolveResult<double>&);
template ordered_json to_json<Rational>(const SolveResult<Rational>&);
template ordered_json to_json<double>(const ExactSolution<double>&);
template ordered_json to_json<Rational>(const ExactSolution<Rational>&);

}  // namespace dhtsp
