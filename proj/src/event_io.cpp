#include "bellsim/event_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

constexpr const char* kHeader = "time_ns,party,basis,outcome";

const char* party_name(Party p) {
  switch (p) {
    case Party::Alice: return "alice";
    case Party::Bob: return "bob";
    case Party::Eve: return "eve";
  }
  return "?";
}

Party party_from(const std::string& s, const std::string& where) {
  if (s == "alice") return Party::Alice;
  if (s == "bob") return Party::Bob;
  if (s == "eve") return Party::Eve;
  throw AnalysisError(where + ": unknown party \"" + s + "\"");
}

std::int64_t int_field(const std::string& s, const std::string& where) {
  std::int64_t value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw AnalysisError(where + ": not an integer: \"" + s + "\"");
  }
  return value;
}

}  // namespace

std::string event_csv_string(const EventStream& stream) {
  std::string out(kHeader);
  out += '\n';
  char row[64];
  for (const DetectionEvent& ev : stream) {
    std::snprintf(row, sizeof row, "%lld,%s,%d,%d\n",
                  static_cast<long long>(ev.time_ns), party_name(ev.party),
                  static_cast<int>(ev.basis), static_cast<int>(ev.outcome));
    out += row;
  }
  return out;
}

void write_event_csv_file(const std::string& path, const EventStream& stream) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AnalysisError("cannot open " + path + " for writing");
  out << event_csv_string(stream);
}

EventStream read_event_csv(std::istream& in, const std::string& name) {
  EventStream stream;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw AnalysisError(name + ": empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw AnalysisError(name + ":1: expected header \"" + kHeader + "\"");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no);

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 4) {
      throw AnalysisError(where + ": expected 4 fields, got " +
                          std::to_string(fields.size()));
    }

    DetectionEvent ev;
    ev.time_ns = int_field(fields[0], where);
    ev.party = party_from(fields[1], where);
    const std::int64_t basis = int_field(fields[2], where);
    const std::int64_t outcome = int_field(fields[3], where);
    if (basis < 0 || basis > 1 || outcome < 0 || outcome > 1) {
      throw AnalysisError(where + ": basis and outcome must be 0 or 1");
    }
    ev.basis = static_cast<std::uint8_t>(basis);
    ev.outcome = static_cast<std::uint8_t>(outcome);
    stream.push_back(ev);
  }
  return stream;
}

EventStream read_event_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AnalysisError("cannot open event file " + path);
  return read_event_csv(in, path);
}

}  // namespace bellsim
