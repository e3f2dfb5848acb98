#pragma once
// JSON form of a Schedule:
// {"direction", "hamiltonian", "gamma", "steps": [{"type": "walk", "t_num", "t_den", "t"} |
//  {"type": "oracle", "theta"}], "oracle_count", "total_walk_time"}

#include <string>
#include <string_view>

#include "qwsearch/schedule.hpp"

namespace qws {

// indent <= 0 gives a single line.
std::string schedule_to_json(const Schedule& sch, int indent = -1);

// Throws ValidationError on malformed documents or inconsistent counts.
Schedule schedule_from_json(std::string_view text);

}  // namespace qws
