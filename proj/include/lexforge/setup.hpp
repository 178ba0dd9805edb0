// setup.hpp : shared wiring — type hierarchy assembly from ontology + bank
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

#include "lexforge/bank.hpp"
#include "lexforge/ontology.hpp"
#include "lexforge/tfs.hpp"

namespace lexforge {

// top > syncat (v n adj adv np vp), atom, plus every ontology concept and
// every feature-value symbol the banks use
inline tfs::TypeHierarchy make_hierarchy(
    const onto::Ontology& ontology,
    const std::vector<const bank::Bank*>& banks = {}) {
  tfs::TypeHierarchy h;
  h.add("syncat", {"top"});
  for (const char* cat : {"v", "n", "adj", "adv", "np", "vp"})
    h.add(cat, {"syncat"});
  h.add("atom", {"top"});
  ontology.extend_hierarchy(h);
  for (const bank::Bank* b : banks)
    if (b) b->extend_hierarchy(h);
  return h;
}

}  // namespace lexforge
