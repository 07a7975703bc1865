#include "splitpool/design_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace splitpool {

namespace {
constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

std::string hex_u64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}
}  // namespace

std::string base64_encode(std::span<const unsigned char> data) {
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= data.size(); i += 3) {
    const std::uint32_t v = (std::uint32_t{data[i]} << 16) |
                            (std::uint32_t{data[i + 1]} << 8) | data[i + 2];
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += kB64Alphabet[v & 63];
  }
  const std::size_t rest = data.size() - i;
  if (rest == 1) {
    const std::uint32_t v = std::uint32_t{data[i]} << 16;
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += "==";
  } else if (rest == 2) {
    const std::uint32_t v =
        (std::uint32_t{data[i]} << 16) | (std::uint32_t{data[i + 1]} << 8);
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
  if (text.size() % 4 != 0)
    throw std::invalid_argument("base64 length must be a multiple of 4");
  std::vector<unsigned char> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pad = 0;
    for (int j = 0; j < 4; ++j) {
      const char c = text[i + j];
      if (c == '=') {
        if (i + 4 != text.size() || j < 2)
          throw std::invalid_argument("misplaced base64 padding");
        vals[j] = 0;
        ++pad;
      } else {
        if (pad > 0) throw std::invalid_argument("data after base64 padding");
        vals[j] = b64_value(c);
        if (vals[j] < 0) throw std::invalid_argument("invalid base64 character");
      }
    }
    const std::uint32_t v = (std::uint32_t(vals[0]) << 18) |
                            (std::uint32_t(vals[1]) << 12) |
                            (std::uint32_t(vals[2]) << 6) | std::uint32_t(vals[3]);
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    if (pad < 2) out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<unsigned char>(v & 0xff));
  }
  return out;
}

std::string pack_slots_base64(std::span<const std::uint32_t> slots) {
  std::vector<unsigned char> bytes;
  bytes.reserve(slots.size() * 4);
  for (std::uint32_t s : slots) {
    bytes.push_back(static_cast<unsigned char>(s & 0xff));
    bytes.push_back(static_cast<unsigned char>((s >> 8) & 0xff));
    bytes.push_back(static_cast<unsigned char>((s >> 16) & 0xff));
    bytes.push_back(static_cast<unsigned char>((s >> 24) & 0xff));
  }
  return base64_encode(bytes);
}

std::vector<std::uint32_t> unpack_slots_base64(const std::string& text) {
  const std::vector<unsigned char> bytes = base64_decode(text);
  if (bytes.size() % 4 != 0)
    throw std::invalid_argument("packed slots must be 4-byte aligned");
  std::vector<std::uint32_t> slots;
  slots.reserve(bytes.size() / 4);
  for (std::size_t i = 0; i < bytes.size(); i += 4) {
    slots.push_back(std::uint32_t{bytes[i]} | (std::uint32_t{bytes[i + 1]} << 8) |
                    (std::uint32_t{bytes[i + 2]} << 16) |
                    (std::uint32_t{bytes[i + 3]} << 24));
  }
  return slots;
}

nlohmann::ordered_json params_to_json(const ProblemParams& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["k"] = p.k;
  j["requested_n"] = p.requested_n;
  j["requested_k"] = p.requested_k;
  j["C"] = p.C;
  j["Cprime"] = p.Cprime;
  j["Ctil"] = p.Ctil;
  j["seed"] = p.seed;
  j["ell_min"] = p.ell_min;
  j["ell_max"] = p.ell_max;
  j["final_sequences"] = p.final_sequences;
  j["num_tests"] = num_tests(p);
  return j;
}

nlohmann::ordered_json layout_to_json(const TestLayout& l) {
  nlohmann::ordered_json j;
  j["level_block_len"] = l.level_block_len;
  j["final_block_len"] = l.final_block_len;
  j["num_tests"] = l.num_tests();
  j["total_words"] = l.total_words();
  auto& blocks = j["level_blocks"] = nlohmann::ordered_json::array();
  for (std::uint32_t level = l.ell_min; level < l.ell_max; ++level) {
    for (std::uint32_t rep = 0; rep < l.repetitions; ++rep) {
      nlohmann::ordered_json b;
      b["level"] = level;
      b["repetition"] = rep;
      b["test_offset"] = l.level_test_offset(level, rep);
      b["tests"] = l.level_block_len;
      b["word_offset"] = l.level_word_offset(level, rep);
      blocks.push_back(std::move(b));
    }
  }
  auto& finals = j["final_blocks"] = nlohmann::ordered_json::array();
  for (std::uint32_t seq = 0; seq < l.final_sequences; ++seq) {
    nlohmann::ordered_json b;
    b["sequence"] = seq;
    b["test_offset"] = l.final_test_offset(seq);
    b["tests"] = l.final_block_len;
    b["word_offset"] = l.final_word_offset(seq);
    finals.push_back(std::move(b));
  }
  return j;
}

nlohmann::ordered_json design_to_json(const ExplicitAssignment& a) {
  nlohmann::ordered_json j;
  j["format"] = "splitpool-design-v1";
  j["variant"] = "explicit";
  j["params"] = params_to_json(a.params());
  j["layout"] = layout_to_json(a.layout());
  const TestLayout& l = a.layout();
  auto& levels = j["level_slots"] = nlohmann::ordered_json::array();
  for (std::uint32_t level = l.ell_min; level < l.ell_max; ++level) {
    for (std::uint32_t rep = 0; rep < l.repetitions; ++rep) {
      nlohmann::ordered_json b;
      b["level"] = level;
      b["repetition"] = rep;
      b["slots"] = pack_slots_base64(a.level_block_slots(level, rep));
      levels.push_back(std::move(b));
    }
  }
  auto& finals = j["final_slots"] = nlohmann::ordered_json::array();
  for (std::uint32_t seq = 0; seq < l.final_sequences; ++seq) {
    nlohmann::ordered_json b;
    b["sequence"] = seq;
    b["slots"] = pack_slots_base64(a.final_sequence_slots(seq));
    finals.push_back(std::move(b));
  }
  return j;
}

namespace {
nlohmann::ordered_json hash_to_json(const PolyHash& h) {
  nlohmann::ordered_json j;
  j["m"] = h.field().degree();
  j["modulus"] = hex_u64(h.field().modulus());
  j["out_bits"] = h.out_bits();
  j["r"] = h.r();
  auto& coeffs = j["coeffs"] = nlohmann::ordered_json::array();
  for (std::uint64_t c : h.coeffs()) coeffs.push_back(hex_u64(c));
  return j;
}
}  // namespace

nlohmann::ordered_json design_to_json(const HashAssignment& a) {
  nlohmann::ordered_json j;
  j["format"] = "splitpool-design-v1";
  j["variant"] = "hashed";
  j["params"] = params_to_json(a.params());
  j["r"] = a.r();
  j["layout"] = layout_to_json(a.layout());
  const TestLayout& l = a.layout();
  auto& levels = j["level_hashes"] = nlohmann::ordered_json::array();
  for (std::uint32_t level = l.ell_min; level < l.ell_max; ++level) {
    for (std::uint32_t rep = 0; rep < l.repetitions; ++rep) {
      nlohmann::ordered_json b;
      b["level"] = level;
      b["repetition"] = rep;
      b["hash"] = hash_to_json(a.level_hash(level, rep));
      levels.push_back(std::move(b));
    }
  }
  auto& finals = j["final_hashes"] = nlohmann::ordered_json::array();
  for (std::uint32_t seq = 0; seq < l.final_sequences; ++seq) {
    nlohmann::ordered_json b;
    b["sequence"] = seq;
    b["hash"] = hash_to_json(a.final_hash(seq));
    finals.push_back(std::move(b));
  }
  return j;
}

nlohmann::ordered_json decode_result_to_json(const DecodeResult& r) {
  nlohmann::ordered_json j;
  j["estimate"] = r.estimate;
  j["pd_per_level"] = r.pd_per_level;
  j["nodes_visited"] = r.nodes_visited;
  j["n_leaf_pd"] = r.n_leaf_pd;
  j["decode_ns"] = r.decode_ns;
  return j;
}

}  // namespace splitpool
