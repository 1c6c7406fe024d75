#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "supercap/classifier.hpp"

namespace supercap::wire {

// Classifier wire protocol over a child's standard streams.
//
//   request:  u32 big-endian length L, then L bytes of a PNG canvas
//   response: ASCII decimal class index, then exactly one '\n'
//
// Requests and responses alternate strictly. Closing the request stream
// ends the session.

/// Frames larger than this are refused as malformed.
inline constexpr std::uint32_t kMaxFrameBytes = 64U << 20;

std::vector<std::uint8_t> encode_frame(std::span<const std::uint8_t> payload);

/// Reads one request frame. Returns nullopt on a clean end of stream before
/// the first length byte; throws ProtocolError on a truncated or oversized
/// frame.
std::optional<std::vector<std::uint8_t>> read_frame(std::istream& in);

std::string format_response(ClassIndex index);

/// Parses one response line without its terminating '\n'. Only ASCII digits
/// are accepted; throws ProtocolError otherwise.
ClassIndex parse_response(std::string_view line);

struct ServeStats {
  std::size_t requests = 0;
};

/// Answers frames from `in` with `classifier` until end of stream. Each
/// response is flushed before the next frame is read.
ServeStats serve(ClassifierPort& classifier, std::istream& in, std::ostream& out);

}  // namespace supercap::wire
