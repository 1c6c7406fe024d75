#include "supercap/protocol.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "supercap/errors.hpp"
#include "supercap/image_io.hpp"

namespace supercap::wire {

std::vector<std::uint8_t> encode_frame(std::span<const std::uint8_t> payload) {
  if (payload.size() > kMaxFrameBytes) throw ProtocolError("frame payload too large");
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::vector<std::uint8_t> frame;
  frame.reserve(payload.size() + 4);
  frame.push_back(static_cast<std::uint8_t>(n >> 24));
  frame.push_back(static_cast<std::uint8_t>(n >> 16));
  frame.push_back(static_cast<std::uint8_t>(n >> 8));
  frame.push_back(static_cast<std::uint8_t>(n));
  frame.insert(frame.end(), payload.begin(), payload.end());
  return frame;
}

std::optional<std::vector<std::uint8_t>> read_frame(std::istream& in) {
  char header[4];
  in.read(header, 4);
  const std::streamsize got = in.gcount();
  if (got == 0 && in.eof()) return std::nullopt;
  if (got != 4) throw ProtocolError("truncated frame header (" + std::to_string(got) + " of 4 bytes)");
  const std::uint32_t n = (static_cast<std::uint32_t>(static_cast<std::uint8_t>(header[0])) << 24) |
                          (static_cast<std::uint32_t>(static_cast<std::uint8_t>(header[1])) << 16) |
                          (static_cast<std::uint32_t>(static_cast<std::uint8_t>(header[2])) << 8) |
                          static_cast<std::uint32_t>(static_cast<std::uint8_t>(header[3]));
  if (n > kMaxFrameBytes) throw ProtocolError("frame length " + std::to_string(n) + " exceeds limit");
  std::vector<std::uint8_t> payload(n);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::uint32_t>(in.gcount()) != n) {
    throw ProtocolError("truncated frame: expected " + std::to_string(n) + " bytes, got " +
                        std::to_string(in.gcount()));
  }
  return payload;
}

std::string format_response(ClassIndex index) { return std::to_string(index) + "\n"; }

ClassIndex parse_response(std::string_view line) {
  if (line.empty()) throw ProtocolError("empty response line");
  for (char c : line) {
    if (c < '0' || c > '9') throw ProtocolError("non-numeric response '" + std::string(line) + "'");
  }
  ClassIndex value = 0;
  const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
  if (ec != std::errc() || ptr != line.data() + line.size()) {
    throw ProtocolError("response index out of range: '" + std::string(line) + "'");
  }
  return value;
}

ServeStats serve(ClassifierPort& classifier, std::istream& in, std::ostream& out) {
  ServeStats stats;
  while (auto frame = read_frame(in)) {
    Canvas canvas;
    try {
      canvas = decode_png(*frame);
    } catch (const ImageDecodeError& e) {
      throw ProtocolError(std::string("request payload is not a valid PNG: ") + e.what());
    }
    out << format_response(classifier.predict(canvas)) << std::flush;
    if (!out) throw TransportError("response stream closed");
    ++stats.requests;
  }
  return stats;
}

}  // namespace supercap::wire
