// morphgen.hpp : constructive derivational morphology generator
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

#include <map>
#include <string>
#include <vector>

#include "lexforge/bank.hpp"
#include "lexforge/lexicon.hpp"

namespace lexforge::morph {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One row of morpho-semantic output: a surface form, its POS and the
// ordered semantic LR labels that later generate the entry.
struct DerivedForm {
  std::string surface;
  lex::Pos pos = lex::Pos::N;
  std::vector<std::string> labels;
  std::vector<std::string> derivation;  // affix/compound rule ids applied
  std::string source_sense;
};

// Stem slots of the most specific matching alternation classes; slots from
// more specific patterns shadow the general ones. Throws when no class
// pattern matches the citation form.
std::map<std::string, std::string> alternants(const std::string& citation,
                                              const bank::Bank& bank);

// Allomorph selection plus seam repair (vowel elision with the soft c/g
// guard, c->qu / g->gu before front vowels, NFC). `base` is the stem for
// suffix rules and the whole form for prefix rules.
std::string attach(const bank::AffixRule& rule, const std::string& base);

// All predictable derivations of the superentry's verb senses up to
// depth_limit, deduplicated per (surface, pos, labels, sense), in
// deterministic bank order. Throws when the superentry has no verb sense.
std::vector<DerivedForm> derive_forms(const lex::Superentry& s,
                                      const bank::Bank& bank,
                                      int depth_limit = 2);

// Re-derives the surface from a citation form and a recorded derivation;
// every DerivedForm satisfies replay(citation, derivation) == surface.
std::string replay(const std::string& citation,
                   const std::vector<std::string>& derivation,
                   const bank::Bank& bank);

std::string tsv_row(const DerivedForm& df);  // form<TAB>pos<TAB>labels

}  // namespace lexforge::morph
