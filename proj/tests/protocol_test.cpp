#include <gtest/gtest.h>

#include <sstream>

#include "supercap/errors.hpp"
#include "supercap/image_io.hpp"
#include "supercap/protocol.hpp"

namespace supercap {
namespace {

std::string as_string(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

class ConstantClassifier final : public ClassifierPort {
 public:
  explicit ConstantClassifier(ClassIndex i) : index_(i) {}
  ClassIndex predict(const Canvas&) override {
    ++calls;
    return index_;
  }
  int calls = 0;

 private:
  ClassIndex index_;
};

TEST(Frame, LengthIsBigEndian) {
  std::vector<std::uint8_t> payload(0x010203, 0xAB);
  const auto frame = wire::encode_frame(payload);
  ASSERT_EQ(frame.size(), payload.size() + 4);
  EXPECT_EQ(frame[0], 0x00);
  EXPECT_EQ(frame[1], 0x01);
  EXPECT_EQ(frame[2], 0x02);
  EXPECT_EQ(frame[3], 0x03);
  std::istringstream in(as_string(frame));
  EXPECT_EQ(*wire::read_frame(in), payload);
  EXPECT_FALSE(wire::read_frame(in));
}

TEST(Frame, EmptyStreamIsCleanEnd) {
  std::istringstream in("");
  EXPECT_FALSE(wire::read_frame(in));
}

TEST(Frame, TruncationIsAProtocolError) {
  std::istringstream short_header(std::string("\x00\x00", 2));
  EXPECT_THROW(wire::read_frame(short_header), ProtocolError);
  std::istringstream short_body(std::string("\x00\x00\x00\x05" "abc", 7));
  EXPECT_THROW(wire::read_frame(short_body), ProtocolError);
  std::istringstream huge(std::string("\xFF\xFF\xFF\xFF", 4));
  EXPECT_THROW(wire::read_frame(huge), ProtocolError);
}

TEST(Response, FormatAndParse) {
  EXPECT_EQ(wire::format_response(0), "0\n");
  EXPECT_EQ(wire::format_response(11570), "11570\n");
  EXPECT_EQ(wire::parse_response("11570"), 11570u);
  EXPECT_EQ(wire::parse_response("007"), 7u);
  for (const char* bad : {"", "banana", "-1", "+3", " 3", "3 ", "3\r", "1e3", "99999999999999999999999"}) {
    EXPECT_THROW(wire::parse_response(bad), ProtocolError) << bad;
  }
}

TEST(Serve, AnswersEachFrameInOrder) {
  std::string requests;
  for (int i = 0; i < 3; ++i) requests += as_string(wire::encode_frame(encode_png(Canvas(224, 224, kWhite))));
  std::istringstream in(requests);
  std::ostringstream out;
  ConstantClassifier c(42);
  const wire::ServeStats stats = wire::serve(c, in, out);
  EXPECT_EQ(stats.requests, 3u);
  EXPECT_EQ(c.calls, 3);
  EXPECT_EQ(out.str(), "42\n42\n42\n");
}

TEST(Serve, RejectsTruncatedOrNonPngFrames) {
  ConstantClassifier c(1);
  std::string frame = as_string(wire::encode_frame(encode_png(Canvas(8, 8, kWhite))));
  std::istringstream truncated(frame.substr(0, frame.size() - 3));
  std::ostringstream out;
  EXPECT_THROW(wire::serve(c, truncated, out), ProtocolError);

  const std::vector<std::uint8_t> junk = {'h', 'e', 'l', 'l', 'o'};
  std::istringstream not_png(as_string(wire::encode_frame(junk)));
  EXPECT_THROW(wire::serve(c, not_png, out), ProtocolError);
}

}  // namespace
}  // namespace supercap
