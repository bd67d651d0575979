#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evolab/family.hpp"
#include "evolab/state_space.hpp"

namespace evolab {

// Stream CSV format: header "t,state", then one row per element with
// t = 0..T and the state's printable label. Row 0 carries the start state.
void write_stream_csv(std::ostream& out, const std::vector<std::string>& labels);
std::vector<std::string> read_stream_labels_csv(std::istream& in);

void write_stream_csv(std::ostream& out, const Stream& stream, const StateSpace& space);
Stream read_stream_csv(std::istream& in, const StateSpace& space);

Stream load_stream_file(const std::string& path, const StateSpace& space);
void save_stream_file(const std::string& path, const Stream& stream,
                      const StateSpace& space);

}  // namespace evolab
