// Copyright 2026 The treeswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace treeswap {

// Decodes the UTF-8 sequence starting at `pos` and stores its byte length in
// `len`. Invalid bytes decode as single Latin-1 characters, so arbitrary
// input never throws.
inline char32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t* len) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[pos + i]); };
  const auto cont = [&](std::size_t i) {
    return pos + i < s.size() && (byte(i) & 0xC0) == 0x80;
  };
  const unsigned char b0 = byte(0);
  if (b0 < 0x80) {
    *len = 1;
    return b0;
  }
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    *len = 2;
    return (char32_t(b0 & 0x1F) << 6) | (byte(1) & 0x3F);
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    *len = 3;
    return (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(1) & 0x3F) << 6) | (byte(2) & 0x3F);
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    *len = 4;
    return (char32_t(b0 & 0x07) << 18) | (char32_t(byte(1) & 0x3F) << 12) |
           (char32_t(byte(2) & 0x3F) << 6) | (byte(3) & 0x3F);
  }
  *len = 1;
  return b0;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Quotation marks recognized by the edge-stripping filter:
// " ' LEFT/RIGHT DOUBLE QUOTATION MARK, guillemets, LEFT/RIGHT SINGLE
// QUOTATION MARK.
inline bool is_quote_char(char32_t cp) {
  switch (cp) {
    case U'"':
    case U'\'':
    case 0x201C:
    case 0x201D:
    case 0x00AB:
    case 0x00BB:
    case 0x2018:
    case 0x2019:
      return true;
    default:
      return false;
  }
}

// HYPHEN-MINUS, EN DASH, EM DASH.
inline bool is_dash_char(char32_t cp) {
  return cp == U'-' || cp == 0x2013 || cp == 0x2014;
}

// True when every character of `form` is a quote or dash character.
inline bool is_edge_strippable(std::string_view form) {
  if (form.empty()) return false;
  std::size_t pos = 0;
  while (pos < form.size()) {
    std::size_t len = 0;
    const char32_t cp = decode_utf8(form, pos, &len);
    if (!is_quote_char(cp) && !is_dash_char(cp)) return false;
    pos += len;
  }
  return true;
}

// Case flips for ASCII, the Latin-1 supplement and the paired ranges of
// Latin Extended-A. Characters without a simple counterpart are returned
// unchanged.
inline char32_t to_upper_char(char32_t c) {
  if (c >= U'a' && c <= U'z') return c - 32;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 32;
  if (c == 0xFF) return 0x178;
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 1) ? c - 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 0) ? c - 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 1) ? c - 1 : c;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 0) ? c - 1 : c;
  return c;
}

inline char32_t to_lower_char(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c == 0x178) return 0xFF;
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
  return c;
}

namespace detail {
inline std::string map_first_char(std::string_view s, char32_t (*f)(char32_t)) {
  if (s.empty()) return std::string(s);
  std::size_t len = 0;
  const char32_t cp = decode_utf8(s, 0, &len);
  std::string out;
  out.reserve(s.size());
  append_utf8(out, f(cp));
  out.append(s.substr(len));
  return out;
}
}  // namespace detail

inline std::string capitalize_first(std::string_view s) {
  return detail::map_first_char(s, &to_upper_char);
}

inline std::string lowercase_first(std::string_view s) {
  return detail::map_first_char(s, &to_lower_char);
}

}  // namespace treeswap
