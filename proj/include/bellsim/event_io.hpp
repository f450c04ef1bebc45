#ifndef BELLSIM_EVENT_IO_HPP
#define BELLSIM_EVENT_IO_HPP

#include <iosfwd>
#include <string>

#include "bellsim/coincidence.hpp"

namespace bellsim {

// Event-stream CSV: header "time_ns,party,basis,outcome", one event per
// row, rows sorted by time_ns, party in {alice, bob, eve}.

std::string event_csv_string(const EventStream& stream);
void write_event_csv_file(const std::string& path, const EventStream& stream);

// Throws AnalysisError with the offending line number on malformed input.
EventStream read_event_csv(std::istream& in, const std::string& name);
EventStream read_event_csv_file(const std::string& path);

}  // namespace bellsim

#endif
