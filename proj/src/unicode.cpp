// unicode.cpp : UTF-8 handling, Latin NFC/NFD normalization, case folding
//
///////////////////////////////////////////////////////////////////////////
//
// Copyright 2026 lexforge contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
///////////////////////////////////////////////////////////////////////////

#include "lexforge/unicode.hpp"

#include <algorithm>
#include <array>

namespace lexforge::uni {

namespace {

struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// Combining marks: 0300 grave, 0301 acute, 0302 circumflex, 0303 tilde,
// 0308 diaeresis, 0327 cedilla.
constexpr std::array<Composition, 52> kCompositions{{
    {U'a', 0x0300, 0x00E0}, {U'a', 0x0301, 0x00E1}, {U'a', 0x0302, 0x00E2},
    {U'a', 0x0303, 0x00E3}, {U'a', 0x0308, 0x00E4},
    {U'e', 0x0300, 0x00E8}, {U'e', 0x0301, 0x00E9}, {U'e', 0x0302, 0x00EA},
    {U'e', 0x0308, 0x00EB},
    {U'i', 0x0300, 0x00EC}, {U'i', 0x0301, 0x00ED}, {U'i', 0x0302, 0x00EE},
    {U'i', 0x0308, 0x00EF},
    {U'o', 0x0300, 0x00F2}, {U'o', 0x0301, 0x00F3}, {U'o', 0x0302, 0x00F4},
    {U'o', 0x0303, 0x00F5}, {U'o', 0x0308, 0x00F6},
    {U'u', 0x0300, 0x00F9}, {U'u', 0x0301, 0x00FA}, {U'u', 0x0302, 0x00FB},
    {U'u', 0x0308, 0x00FC},
    {U'n', 0x0303, 0x00F1}, {U'c', 0x0327, 0x00E7},
    {U'y', 0x0301, 0x00FD}, {U'y', 0x0308, 0x00FF},
    {U'A', 0x0300, 0x00C0}, {U'A', 0x0301, 0x00C1}, {U'A', 0x0302, 0x00C2},
    {U'A', 0x0303, 0x00C3}, {U'A', 0x0308, 0x00C4},
    {U'E', 0x0300, 0x00C8}, {U'E', 0x0301, 0x00C9}, {U'E', 0x0302, 0x00CA},
    {U'E', 0x0308, 0x00CB},
    {U'I', 0x0300, 0x00CC}, {U'I', 0x0301, 0x00CD}, {U'I', 0x0302, 0x00CE},
    {U'I', 0x0308, 0x00CF},
    {U'O', 0x0300, 0x00D2}, {U'O', 0x0301, 0x00D3}, {U'O', 0x0302, 0x00D4},
    {U'O', 0x0303, 0x00D5}, {U'O', 0x0308, 0x00D6},
    {U'U', 0x0300, 0x00D9}, {U'U', 0x0301, 0x00DA}, {U'U', 0x0302, 0x00DB},
    {U'U', 0x0308, 0x00DC},
    {U'N', 0x0303, 0x00D1}, {U'C', 0x0327, 0x00C7},
    {U'Y', 0x0301, 0x00DD}, {U'Y', 0x0308, 0x0178},
}};

bool compose_pair(char32_t base, char32_t mark, char32_t& out) {
  for (const auto& c : kCompositions) {
    if (c.base == base && c.mark == mark) {
      out = c.composed;
      return true;
    }
  }
  return false;
}

bool decompose_cp(char32_t cp, char32_t& base, char32_t& mark) {
  for (const auto& c : kCompositions) {
    if (c.composed == cp) {
      base = c.base;
      mark = c.mark;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    size_t len = 1;
    if (b < 0x80) {
      cp = b;
    } else if ((b >> 5) == 0x6 && i + 1 < s.size()) {
      cp = (b & 0x1F) << 6 | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((b >> 4) == 0xE && i + 2 < s.size()) {
      cp = (b & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
      len = 3;
    } else if ((b >> 3) == 0x1E && i + 3 < s.size()) {
      cp = (b & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
           (s[i + 3] & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
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
  return out;
}

std::string nfc(std::string_view s) {
  auto cps = decode(s);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    char32_t composed;
    if (!out.empty() && compose_pair(out.back(), cp, composed)) {
      out.back() = composed;
    } else {
      out.push_back(cp);
    }
  }
  return encode(out);
}

std::string nfd(std::string_view s) {
  auto cps = decode(s);
  std::vector<char32_t> out;
  out.reserve(cps.size() + 4);
  for (char32_t cp : cps) {
    char32_t base, mark;
    if (decompose_cp(cp, base, mark)) {
      out.push_back(base);
      out.push_back(mark);
    } else {
      out.push_back(cp);
    }
  }
  return encode(out);
}

std::string fold_case(std::string_view s) {
  auto cps = decode(nfc(s));
  for (char32_t& cp : cps) {
    if (cp >= U'A' && cp <= U'Z') {
      cp += 0x20;
    } else if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) {
      cp += 0x20;  // Latin-1 uppercase block
    } else if (cp == 0x0178) {
      cp = 0x00FF;
    }
  }
  return encode(cps);
}

bool is_vowel(char32_t c) {
  static const std::u32string vowels =
      U"aeiouáéíóúàèìòù"
      U"äëïöüâêîôû";
  return vowels.find(c) != std::u32string::npos;
}

}  // namespace lexforge::uni
