// ontology.hpp : mini world model (concepts, kinds, case roles)
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
#include <optional>
#include <string>
#include <vector>

#include "lexforge/tfs.hpp"

namespace lexforge::onto {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Event, Object, Property };

std::string kind_name(Kind k);
Kind kind_from(const std::string& s);

struct Concept {
  std::string name;
  Kind kind = Kind::Object;
  std::vector<std::string> parents;            // empty = kind root
  std::map<std::string, std::string> roles;    // role -> filler constraint
};

// Read-only after load; concept graph is a DAG rooted at one top concept
// per kind (event / object / property).
class Ontology {
 public:
  void add(Concept c);
  bool has(const std::string& name) const;
  const Concept& get(const std::string& name) const;

  // reflexive-transitive ancestry
  bool is_a(const std::string& concept_name, const std::string& ancestor) const;

  // nearest constraint walking up the parent chain; nullopt when none
  std::optional<std::string> role_constraint(const std::string& concept_name,
                                             const std::string& role) const;

  Kind kind_of(const std::string& concept_name) const;

  // validates DAG shape, kind roots, and that no role filler dangles
  void validate() const;

  // registers every concept as a type under its kind root
  void extend_hierarchy(tfs::TypeHierarchy& h) const;

  const std::map<std::string, Concept>& concepts() const { return concepts_; }

  static Ontology load(const std::string& path);
  void save(const std::string& path) const;
  std::string to_text() const;  // canonical serialization (sorted by name)

 private:
  std::map<std::string, Concept> concepts_;
};

}  // namespace lexforge::onto
