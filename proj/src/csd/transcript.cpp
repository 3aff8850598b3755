// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/csd/transcript.hpp"

#include "certguide/csd/cursor.hpp"

namespace certguide::csd {

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if (c >= 0xC2 && c <= 0xDF) {
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      extra = 2;
    } else if (c >= 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size() + (extra == 0 ? 1 : 0)) return false;
    if (extra > 1) {
      auto c1 = static_cast<unsigned char>(s[i + 1]);
      if ((c == 0xE0 && c1 < 0xA0) || (c == 0xED && c1 >= 0xA0) || (c == 0xF0 && c1 < 0x90) ||
          (c == 0xF4 && c1 >= 0x90)) {
        return false;
      }
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace

std::vector<std::string> Transcript::block_contents() const {
  std::vector<std::string> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(b.content);
  return out;
}

std::vector<Block> certified_blocks(const CompletionEngine& engine, std::string_view text) {
  RegionCursor cursor(engine, true);
  if (cursor.feed(text) != text.size() || cursor.in_constrained()) {
    throw std::invalid_argument("text does not validate");
  }
  std::vector<Block> out;
  for (const auto& seg : cursor.segments()) {
    if (seg.mode == Region::Mode::Constrained) out.push_back({seg.region, seg.content, true});
  }
  return out;
}

std::vector<Block> delimited_blocks(std::string_view text, std::string_view open, std::string_view close) {
  std::vector<Block> out;
  std::size_t pos = 0;
  std::size_t region = 0;
  while (pos <= text.size()) {
    std::size_t o = text.find(open, pos);
    if (o == std::string_view::npos) break;
    std::size_t start = o + open.size();
    std::size_t c = text.find(close, start);
    region += 1;
    if (c == std::string_view::npos) {
      out.push_back({region, std::string(text.substr(start)), false});
      break;
    }
    out.push_back({region, std::string(text.substr(start, c - start)), false});
    region += 1;
    pos = c + close.size();
  }
  return out;
}

void put_bytes(nlohmann::json& j, const std::string& key, std::string_view bytes) {
  if (valid_utf8(bytes)) {
    j[key] = std::string(bytes);
  } else {
    j[key + "_hex"] = lexical::hex_encode(bytes);
  }
}

std::string get_bytes(const nlohmann::json& j, const std::string& key) {
  if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
  if (j.contains(key + "_hex") && j[key + "_hex"].is_string()) {
    try {
      return lexical::hex_decode(j[key + "_hex"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw TranscriptFormatError("field `" + key + "_hex`: " + e.what());
    }
  }
  throw TranscriptFormatError("missing field `" + key + "`");
}

nlohmann::json to_json(const Transcript& t) {
  nlohmann::json j = nlohmann::json::object();
  put_bytes(j, "text", t.full_text);
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : t.blocks) {
    nlohmann::json jb{{"region", b.region}, {"certified", b.certified}};
    put_bytes(jb, "content", b.content);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  j["violations"] = t.violation_count;
  j["aborted"] = t.aborted;
  nlohmann::json discarded = nlohmann::json::array();
  for (const auto& d : t.discarded) {
    nlohmann::json jd = nlohmann::json::object();
    put_bytes(jd, "text", d);
    discarded.push_back(std::move(jd));
  }
  j["discarded"] = std::move(discarded);
  return j;
}

Transcript transcript_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw TranscriptFormatError("transcript record is not an object");
  Transcript t;
  t.full_text = get_bytes(j, "text");
  if (!j.contains("blocks") || !j["blocks"].is_array()) throw TranscriptFormatError("missing field `blocks`");
  for (const auto& jb : j["blocks"]) {
    if (!jb.contains("region") || !jb["region"].is_number_unsigned()) {
      throw TranscriptFormatError("block without numeric `region`");
    }
    Block b;
    b.region = jb["region"].get<std::size_t>();
    b.content = get_bytes(jb, "content");
    b.certified = jb.value("certified", false);
    t.blocks.push_back(std::move(b));
  }
  if (!j.contains("violations") || !j["violations"].is_number_unsigned()) {
    throw TranscriptFormatError("missing field `violations`");
  }
  t.violation_count = j["violations"].get<std::size_t>();
  if (!j.contains("aborted") || !j["aborted"].is_boolean()) throw TranscriptFormatError("missing field `aborted`");
  t.aborted = j["aborted"].get<bool>();
  if (j.contains("discarded") && j["discarded"].is_array()) {
    for (const auto& jd : j["discarded"]) t.discarded.push_back(get_bytes(jd, "text"));
  }
  return t;
}

}  // namespace certguide::csd
