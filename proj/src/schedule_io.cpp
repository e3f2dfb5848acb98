#include "qwsearch/schedule_io.hpp"

#include <cmath>
#include <json.hpp>

#include "qwsearch/errors.hpp"

namespace qws {

using ordered_json = nlohmann::ordered_json;

std::string schedule_to_json(const Schedule& sch, int indent) {
  ordered_json doc;
  doc["direction"] = to_string(sch.direction);
  doc["hamiltonian"] = to_string(sch.hamiltonian);
  doc["gamma"] = sch.gamma;
  ordered_json steps = ordered_json::array();
  for (const auto& st : sch.steps) {
    ordered_json j;
    if (const auto* w = std::get_if<WalkStep>(&st)) {
      j["type"] = "walk";
      if (w->exact) {
        j["t_num"] = w->exact->num;
        j["t_den"] = w->exact->den;
      }
      j["t"] = w->t;
    } else {
      j["type"] = "oracle";
      j["theta"] = std::get<OracleStep>(st).theta;
    }
    steps.push_back(std::move(j));
  }
  doc["steps"] = std::move(steps);
  doc["oracle_count"] = oracle_count(sch);
  doc["total_walk_time"] = total_walk_time(sch);
  return doc.dump(indent > 0 ? indent : -1);
}

Schedule schedule_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("schedule JSON: ") + e.what());
  }

  try {
    Schedule sch;
    sch.direction = parse_direction(doc.at("direction").get<std::string>());
    sch.hamiltonian = parse_hamiltonian(doc.at("hamiltonian").get<std::string>());
    sch.gamma = doc.at("gamma").get<double>();
    sch.scale = sch.hamiltonian == HamiltonianKind::laplacian ? 1 : 0;
    for (const auto& j : doc.at("steps")) {
      const auto type = j.at("type").get<std::string>();
      if (type == "walk") {
        WalkStep w{j.at("t").get<double>(), std::nullopt};
        if (j.contains("t_num") != j.contains("t_den")) {
          throw ValidationError("walk step has only one of t_num/t_den");
        }
        if (j.contains("t_num")) {
          w.exact = PiRational(j.at("t_num").get<long long>(), j.at("t_den").get<long long>());
          if (std::abs(w.exact->radians() - w.t) > 1e-9 * std::max(1.0, std::abs(w.t))) {
            throw ValidationError("walk step t disagrees with t_num/t_den");
          }
        }
        sch.steps.emplace_back(w);
      } else if (type == "oracle") {
        sch.steps.emplace_back(OracleStep{j.at("theta").get<double>()});
      } else {
        throw ValidationError("unknown step type '" + type + "'");
      }
    }
    if (doc.contains("oracle_count") && doc.at("oracle_count").get<int>() != oracle_count(sch)) {
      throw ValidationError("oracle_count does not match the listed steps");
    }
    return sch;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("schedule JSON: ") + e.what());
  }
}

}  // namespace qws
