// unicode.hpp : UTF-8 handling, Latin NFC/NFD normalization, case folding
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexforge::uni {

// Decode UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::vector<char32_t> decode(std::string_view s);
std::string encode(const std::vector<char32_t>& cps);

// Canonical composition / decomposition for the Latin repertoire used by
// the shipped Spanish and English data (combining grave, acute, circumflex,
// tilde, diaeresis, cedilla over ASCII bases; Latin-1 + Latin Extended-A
// precomposed forms). Code points outside that repertoire pass through.
std::string nfc(std::string_view s);
std::string nfd(std::string_view s);

// Lowercase fold over ASCII and the Latin-1 uppercase range, NFC first.
std::string fold_case(std::string_view s);

bool is_vowel(char32_t c);  // a e i o u plus accented Latin forms

}  // namespace lexforge::uni
