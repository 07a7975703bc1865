#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitpool/assignment.hpp"
#include "splitpool/decoder.hpp"
#include "splitpool/hash_assignment.hpp"

namespace splitpool {

// Standard base64 (RFC 4648, with padding).
std::string base64_encode(std::span<const unsigned char> data);
std::vector<unsigned char> base64_decode(const std::string& text);

// Slot arrays packed as little-endian 32-bit integers, then base64.
std::string pack_slots_base64(std::span<const std::uint32_t> slots);
std::vector<std::uint32_t> unpack_slots_base64(const std::string& text);

nlohmann::ordered_json params_to_json(const ProblemParams& p);
nlohmann::ordered_json layout_to_json(const TestLayout& l);

// Bit-exact golden-file dumps. Two designs built from the same flags must
// serialize to byte-identical text.
nlohmann::ordered_json design_to_json(const ExplicitAssignment& a);
nlohmann::ordered_json design_to_json(const HashAssignment& a);

nlohmann::ordered_json decode_result_to_json(const DecodeResult& r);

}  // namespace splitpool
