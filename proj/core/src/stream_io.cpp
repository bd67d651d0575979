#include "evolab/stream_io.hpp"

#include <fstream>
#include <sstream>

#include "evolab/errors.hpp"

namespace evolab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void write_stream_csv(std::ostream& out, const std::vector<std::string>& labels) {
  out << "t,state\n";
  for (std::size_t t = 0; t < labels.size(); ++t) out << t << "," << labels[t] << "\n";
}

std::vector<std::string> read_stream_labels_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("stream CSV is empty");
  if (trim(line) != "t,state")
    throw SpecError("stream CSV must start with header 't,state'");
  std::vector<std::string> labels;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    std::string row = trim(line);
    if (row.empty()) continue;
    std::size_t comma = row.find(',');
    if (comma == std::string::npos)
      throw SpecError("stream CSV row lacks a comma: '" + row + "'");
    std::string t_field = trim(row.substr(0, comma));
    std::string label = trim(row.substr(comma + 1));
    std::size_t t;
    try {
      t = static_cast<std::size_t>(std::stoull(t_field));
    } catch (const std::exception&) {
      throw SpecError("stream CSV row index is not a number: '" + t_field + "'");
    }
    if (t != expected)
      throw SpecError("stream CSV rows must be consecutive starting at 0");
    labels.push_back(label);
    ++expected;
  }
  if (labels.empty()) throw SpecError("stream CSV must contain a start state");
  return labels;
}

void write_stream_csv(std::ostream& out, const Stream& stream, const StateSpace& space) {
  std::vector<std::string> labels;
  labels.reserve(stream.size());
  for (State x : stream) labels.push_back(space.label(x));
  write_stream_csv(out, labels);
}

Stream read_stream_csv(std::istream& in, const StateSpace& space) {
  Stream stream;
  for (const auto& label : read_stream_labels_csv(in))
    stream.push_back(space.require(label));
  return stream;
}

Stream load_stream_file(const std::string& path, const StateSpace& space) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stream file '" + path + "'");
  return read_stream_csv(in, space);
}

void save_stream_file(const std::string& path, const Stream& stream,
                      const StateSpace& space) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write stream file '" + path + "'");
  write_stream_csv(out, stream, space);
}

}  // namespace evolab
