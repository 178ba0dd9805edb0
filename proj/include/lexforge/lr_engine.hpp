// lr_engine.hpp : lexical rule processor — triggering, entry
//                 transformation, chaining, blocking/preemption
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

#include <optional>
#include <string>
#include <vector>

#include "lexforge/bank.hpp"
#include "lexforge/lexicon.hpp"
#include "lexforge/morphgen.hpp"
#include "lexforge/ontology.hpp"

namespace lexforge::lr {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct blocked_error : error {
  using error::error;
};

enum class TriggerMode { Itemized, Lhs, Hybrid };

TriggerMode mode_from(const std::string& s);

enum class BlockVerdict { No, Listed, Preempted };

// A generated entry awaiting validation/review.
struct Candidate {
  lex::Entry entry;      // provisional sense id already allocated
  std::string surface;
  std::string source_sense;
  std::vector<std::string> rule_chain;  // canonical rule ids, in order
  std::string language;
};

// Everything apply_rule needs besides the rule and the source entry.
struct Context {
  const onto::Ontology* ontology = nullptr;
  const tfs::TypeHierarchy* hierarchy = nullptr;
  lex::Store* store = nullptr;  // sense-id allocation + blocking lookups
  bool reserve_ids = true;      // previews peek without reserving
};

bool trigger_match(const bank::LexicalRule& rule, const lex::Entry& e,
                   const Context& ctx);

// applicable rules for an entry under the given triggering mode; itemized
// mode errors on unknown rule ids in the entry's itemization
std::vector<const bank::LexicalRule*> trigger_rules(const lex::Entry& e,
                                                    const bank::Bank& bank,
                                                    TriggerMode mode,
                                                    const Context& ctx);

// listed: source citation/sense in the rule's block list (bank or store
// overlay); preempted: rule preempts and an underived homograph of the
// surface exists; otherwise no blocking
BlockVerdict is_blocked(const bank::LexicalRule& rule, const lex::Entry& source,
                        const std::string& surface, const lex::Store& store);

// One rule application: new entry with copied dfn, empty ex, rule-stamped
// admin, transformed sem, templated syn and extended provenance. Throws
// blocked_error / error(sem-transform-failure) per contract.
lex::Entry apply_rule(const bank::LexicalRule& rule, const lex::Entry& source,
                      const std::string& surface, const Context& ctx);

// Applies a label chain (already resolved rules) without allocating ids for
// the intermediates; used by expand and by provenance replay.
lex::Entry apply_chain(const std::vector<const bank::LexicalRule*>& chain,
                       const lex::Entry& source, const std::string& surface,
                       const Context& ctx);

// Figure-1 expansion step: one candidate per surviving derived row (plus
// itemized suppletive rules with surface overrides in itemized/hybrid
// mode), per source sense, blocking enforced.
std::vector<Candidate> expand(const lex::Superentry& s,
                              const std::vector<morph::DerivedForm>& derived,
                              const bank::Bank& bank, TriggerMode mode,
                              const Context& ctx);

std::string chain_key(const std::vector<std::string>& chain);

}  // namespace lexforge::lr
