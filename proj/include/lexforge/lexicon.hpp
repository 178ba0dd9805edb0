// lexicon.hpp : superentry/entry model and the persistent lexicon store
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
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "lexforge/ontology.hpp"
#include "lexforge/tfs.hpp"

namespace lexforge::lex {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Pos { V, N, Adj, Adv };

std::string pos_upper(Pos p);  // sense-id segment: V N ADJ ADV
std::string pos_lower(Pos p);  // listing output: v n adj adv
Pos pos_from(const std::string& s);

struct Admin {
  std::string who;   // acquirer login or rule id
  std::string when;  // "d/m HH:MM:SS"
};

std::string now_stamp();

// itemized lexical-rule reference on an entry; surface empty = derive
// the surface morphologically, nonempty = suppletive override
struct ItemizedRule {
  std::string rule_id;
  std::string surface;
};

// One word sense. syn and sem are two roots into one feature-structure
// graph so coindex tags (Figure-2 style [11]/[21]) are genuinely shared.
struct Entry {
  std::string sense_id;  // <citation>-<CAT><ordinal>
  Pos cat = Pos::V;
  std::string dfn;
  std::string ex;
  Admin admin;
  tfs::Graph graph;
  int syn_root = -1;
  int sem_root = -1;
  std::vector<std::pair<std::string, std::string>> lex_rul;  // (source, rule)
  std::vector<ItemizedRule> lr_item;

  tfs::View syn() const { return {&graph, syn_root}; }
  tfs::View sem() const { return {&graph, sem_root}; }
  std::string sem_head() const;  // type of the sem root
  std::string citation() const;  // sense_id minus the -CATn suffix
  int ordinal() const;
};

// Splits "compra-N1" into (compra, N, 1); throws on malformed ids.
void split_sense_id(const std::string& id, std::string& citation, Pos& cat,
                    int& ordinal);

struct Superentry {
  std::string citation;  // NFC-normalized surface form
  std::string language;  // BCP-47-ish tag, e.g. "es", "en"
  std::vector<Entry> entries;  // order is meaningful, preserved exactly
};

// JSON record round-trip for one superentry (used by store and wire format)
std::string superentry_to_json(const Superentry& s);
Superentry superentry_from_json(const std::string& line);
std::string entry_to_json(const Entry& e);
Entry entry_from_json(const std::string& text);

bool entry_equal(const Entry& a, const Entry& b, bool ignore_admin = false);

// Persistent store. Concurrent readers; writes serialize behind one lock
// and readers only ever see committed states.
class Store {
 public:
  Store(const onto::Ontology* ontology, const tfs::TypeHierarchy* hierarchy)
      : onto_(ontology), hier_(hierarchy) {}

  Store(Store&& other) noexcept
      : onto_(other.onto_),
        hier_(other.hier_),
        by_key_(std::move(other.by_key_)),
        blocklist_(std::move(other.blocklist_)),
        reserved_ids_(std::move(other.reserved_ids_)) {}

  void put_superentry(Superentry s);
  std::optional<Superentry> get_superentry(const std::string& citation,
                                           const std::string& language) const;
  // any-language lookup (citation forms in the shipped data are unique)
  std::optional<Superentry> get_superentry(const std::string& citation) const;

  // smallest unused ordinal for (citation, cat); monotone per session
  std::string next_sense_id(const std::string& citation, Pos cat);

  // all entries whose citation form equals the normalized input
  std::vector<Entry> lookup_form(const std::string& surface) const;

  // appends an entry under its citation's superentry (created on demand)
  void admit_entry(const Entry& e, const std::string& language);

  void add_block(const std::string& sense_id, const std::string& rule_id);
  bool blocked(const std::string& sense_id, const std::string& rule_id) const;
  std::set<std::pair<std::string, std::string>> blocklist() const;

  size_t superentry_count() const;
  size_t entry_count() const;
  std::vector<Superentry> all() const;  // committed snapshot, file order

  void save(const std::string& path) const;
  static Store load(const std::string& path, const onto::Ontology* ontology,
                    const tfs::TypeHierarchy* hierarchy);
  std::string to_text() const;  // canonical serialization

 private:
  void validate_superentry(const Superentry& s) const;
  void check_provenance_acyclic(const Superentry& incoming) const;

  const onto::Ontology* onto_;
  const tfs::TypeHierarchy* hier_;
  std::map<std::pair<std::string, std::string>, Superentry> by_key_;
  std::set<std::pair<std::string, std::string>> blocklist_;
  std::set<std::string> reserved_ids_;
  mutable std::shared_mutex mu_;
};

}  // namespace lexforge::lex
