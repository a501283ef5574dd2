#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "constants.hpp"
#include "verify.hpp"

namespace lorentz {

using json = nlohmann::ordered_json;

inline json as_json(const InequalityInstance& inst) {
  json params = json::object();
  for (const auto& p : inst.params) params[p.name] = p.value;
  json j{{"name", inst.name}, {"params", params}, {"lhs", inst.lhs}, {"mid", inst.mid},
         {"rhs", inst.rhs}, {"slack", inst.slack}};
  if (inst.bracketed) j["bracketed"] = true;
  return j;
}

/// Report document. runtime_ms is emitted as null unless `with_runtime`, so two
/// runs of the same configuration serialize identically.
inline json as_json(const VerificationReport& r, const json& config = nullptr,
                    bool with_runtime = false) {
  json grid = json::object();
  for (const auto& [k, v] : r.grid) grid[k] = v;
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(as_json(v));
  json doc{{"statement", r.statement},
           {"passed", r.passed()},
           {"grid", grid},
           {"tolerance", r.tolerance},
           {"instances", r.instances},
           {"violation_count", r.violation_count},
           {"violations", violations},
           {"min_slack", r.min_slack},
           {"min_slack_instance", r.min_instance ? as_json(*r.min_instance) : json(nullptr)},
           {"strict_positive_observed", r.strict_positive_observed()},
           {"bracketed_instances", r.bracketed_count},
           {"seed", r.seed ? json(*r.seed) : json(nullptr)},
           {"runtime_ms", with_runtime && r.runtime_ms ? json(*r.runtime_ms) : json(nullptr)},
           {"notes", r.notes}};
  if (!config.is_null()) doc["config"] = config;
  return doc;
}

inline json as_json(const FiniteVector& v) {
  json arr = json::array();
  for (const auto& [n, a] : v.entries()) arr.push_back(json::array({n, a}));
  return arr;
}

inline json as_json(const EquivEstimate& e) {
  return json{{"lower", e.lower}, {"estimate", e.estimate}, {"witness", as_json(e.witness)},
              {"iterations", e.iterations}};
}

namespace detail {

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// One row per recorded violation, with a header row.
inline void write_csv(std::ostream& os, const VerificationReport& r) {
  os << "statement,name,params,lhs,mid,rhs,slack\n";
  for (const auto& v : r.violations) {
    std::string params;
    for (std::size_t n = 0; n < v.params.size(); ++n)
      params += (n ? ";" : "") + v.params[n].name + "=" + detail::fmt_double(v.params[n].value);
    os << r.statement << ',' << v.name << ',' << params << ',' << detail::fmt_double(v.lhs) << ','
       << detail::fmt_double(v.mid) << ',' << detail::fmt_double(v.rhs) << ','
       << detail::fmt_double(v.slack) << '\n';
  }
}

}  // namespace lorentz
