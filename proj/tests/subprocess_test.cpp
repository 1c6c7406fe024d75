#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <string>

#include "supercap/errors.hpp"
#include "supercap/subprocess.hpp"
#include "test_util.hpp"

namespace supercap {
namespace {

using namespace std::chrono_literals;

std::string stub(const std::string& flags) { return std::string(STUB_CLASSIFIER_BIN) + " " + flags; }

const Canvas kCanvas(224, 224, kWhite);

long read_count(const std::filesystem::path& p) {
  std::ifstream in(p);
  long n = -1;
  in >> n;
  return n;
}

TEST(SubprocessClassifier, EchoStubReturnsEos) {
  SubprocessClassifier c(stub("--reply 0"), 10);
  EXPECT_EQ(c.predict(kCanvas), 0u);
  EXPECT_EQ(c.predict(kCanvas), 0u);
  EXPECT_EQ(c.round_trips(), 2u);
}

TEST(SubprocessClassifier, AcceptsLargestIndex) {
  SubprocessClassifier c(stub("--reply 11570"), 11571);
  EXPECT_EQ(c.predict(kCanvas), 11570u);
}

TEST(SubprocessClassifier, RejectsIndexBeyondVocabulary) {
  SubprocessClassifier c(stub("--reply 11571"), 11571);
  EXPECT_THROW(c.predict(kCanvas), IndexOutOfRange);
  // The handle is unusable after a failure.
  EXPECT_THROW(c.predict(kCanvas), TransportError);
}

TEST(SubprocessClassifier, NonIntegerReplyIsProtocolError) {
  SubprocessClassifier c(stub("--reply banana"), 10);
  EXPECT_THROW(c.predict(kCanvas), ProtocolError);
}

TEST(SubprocessClassifier, ExtraBytesAreProtocolError) {
  SubprocessClassifier c(stub("--reply 3 --extra 4"), 10);
  EXPECT_THROW(c.predict(kCanvas), ProtocolError);
}

TEST(SubprocessClassifier, ProcessExitIsTransportError) {
  SubprocessClassifier c(stub("--exit-after 1"), 10);
  EXPECT_EQ(c.predict(kCanvas), 0u);
  try {
    c.predict(kCanvas);
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find("closed"), std::string::npos) << e.what();
  }
}

TEST(SubprocessClassifier, MissingProgramIsTransportError) {
  SubprocessClassifier c("/nonexistent/classifier-binary", 10);
  EXPECT_THROW(c.predict(kCanvas), TransportError);
}

TEST(SubprocessClassifier, SlowReplyTimesOut) {
  SubprocessClassifier c(stub("--sleep-ms 2000"), 10, {.timeout = 200ms});
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(c.predict(kCanvas), TimeoutError);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 1500ms);
}

TEST(SubprocessClassifier, OneFramePerPredict) {
  testing::TempDir dir;
  const auto count = dir / "frames";
  {
    SubprocessClassifier c(stub("--reply 2 --count-file " + count.string()), 10);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(c.predict(kCanvas), 2u);
    EXPECT_EQ(c.round_trips(), 7u);
    const int status = c.shutdown();
    EXPECT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0);
  }
  EXPECT_EQ(read_count(count), 7);
}

TEST(SubprocessClassifier, RejectsBadConstruction) {
  EXPECT_THROW(SubprocessClassifier("", 10), InvalidArgument);
  EXPECT_THROW(SubprocessClassifier(stub(""), 0), InvalidArgument);
}

}  // namespace
}  // namespace supercap
