#pragma once

#include <iosfwd>
#include <string>

#include "dgc/protocols.hpp"

namespace dgc {

// Schedule CSV: header "time,site,kind,u,v,w", kind in {I, D}. A comment
// line "# t=<int> s=<int>" preserves the declared horizon; otherwise t and
// s default to the maxima seen (overridable by hints).
StreamSchedule read_schedule(std::istream& in, int t_hint = 0, int s_hint = 0);
StreamSchedule read_schedule_file(const std::string& path, int t_hint = 0, int s_hint = 0);

void write_schedule(std::ostream& out, const StreamSchedule& sched);
void write_schedule_file(const std::string& path, const StreamSchedule& sched);

}  // namespace dgc
