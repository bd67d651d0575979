#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "evolab/errors.hpp"
#include "evolab/stream_io.hpp"

namespace evolab {
namespace {

StateSpace abc() { return StateSpace({"a", "b", "c"}); }

TEST(StreamIo, CsvRoundTrip) {
  StateSpace space = abc();
  Stream stream{0, 2, 1, 1};
  std::stringstream buffer;
  write_stream_csv(buffer, stream, space);
  EXPECT_EQ(buffer.str().substr(0, 8), "t,state\n");
  EXPECT_EQ(read_stream_csv(buffer, space), stream);
}

TEST(StreamIo, RejectsMalformedCsv) {
  StateSpace space = abc();
  std::stringstream empty;
  EXPECT_THROW(read_stream_csv(empty, space), IoError);
  std::stringstream bad_header("state\n0,a\n");
  EXPECT_THROW(read_stream_csv(bad_header, space), SpecError);
  std::stringstream gap("t,state\n0,a\n2,b\n");
  EXPECT_THROW(read_stream_csv(gap, space), SpecError);
  std::stringstream unknown_label("t,state\n0,z\n");
  EXPECT_THROW(read_stream_csv(unknown_label, space), SpecError);
  std::stringstream no_rows("t,state\n");
  EXPECT_THROW(read_stream_csv(no_rows, space), SpecError);
}

TEST(StreamIo, FileRoundTripAndMissingFile) {
  auto path = std::filesystem::temp_directory_path() / "evolab_stream_io_test.csv";
  StateSpace space = abc();
  Stream stream{2, 0, 1};
  save_stream_file(path.string(), stream, space);
  EXPECT_EQ(load_stream_file(path.string(), space), stream);
  std::filesystem::remove(path);
  EXPECT_THROW(load_stream_file(path.string(), space), IoError);
}

}  // namespace
}  // namespace evolab
