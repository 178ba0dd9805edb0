// bank.hpp : declarative rule bank — stem alternation classes, affix rules,
//            compound itemizations, lexical rules (one file, two sections)
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
#include <string>
#include <vector>

#include "lexforge/lexicon.hpp"
#include "lexforge/ontology.hpp"

namespace lexforge::bank {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Surface-shape condition language used by allomorph selection and rule
// applicability: "" or "default" (always true), "starts:a|b|c",
// "ends:x|y", conjunction with '&'.
bool cond_match(const std::string& cond, const std::string& form);

// A conjugation/alternation class. Slot values are produced by stripping
// the pattern suffix from the citation form and appending the slot's
// replacement string.
struct StemAlternation {
  std::string class_id;
  std::string pattern;  // citation suffix; longer pattern = more specific
  std::vector<std::pair<std::string, std::string>> slots;
};

struct Allomorph {
  std::string cond;  // evaluated on the attachment base
  std::string form;
};

enum class AffixKind { Prefix, Suffix, Parasynthetic };
enum class BaseKind { Citation, Derived };

struct AffixRule {
  std::string rule_id;
  AffixKind kind = AffixKind::Suffix;
  std::string affix;                 // display form, e.g. "-able"
  std::string slot;                  // stem slot (suffix / parasynthetic)
  std::vector<Allomorph> allomorphs; // ordered, final default
  std::string prefix_part;           // parasynthetic leading piece
  lex::Pos out_pos = lex::Pos::N;
  std::vector<std::string> labels;   // semantic LR labels, ordered
  BaseKind base = BaseKind::Citation;
  std::optional<lex::Pos> base_pos;  // required base POS when base=derived
  std::string base_cond;             // condition on the base surface
  std::string citation_cond;         // condition on the source citation
  std::vector<std::string> chain;    // suffix rules riding on this prefix
  bool chainable = true;
};

// Lexically itemized compound attached to one superentry.
struct CompoundRule {
  std::string rule_id;
  std::string citation;
  std::string surface;
  lex::Pos pos = lex::Pos::N;
  std::vector<std::string> labels;
};

enum class TransformOp { PreserveHead, AddRoleFiller, AddFeature, ReifyRole };

struct Transform {
  TransformOp op;
  std::string arg1;  // role / feature
  std::string arg2;  // concept, "@constraint", value, or fallback role
};

struct Trigger {
  std::optional<lex::Pos> cat;
  std::optional<onto::Kind> sem_kind;
  std::optional<bool> scalar;
  std::string sem_pattern;  // fs text; matched by subsumption when set
};

enum class SynTemplate { RootOnly, CopySource };

struct LexicalRule {
  std::string rule_id;
  std::vector<std::string> aliases;
  Trigger trigger;
  lex::Pos out_cat = lex::Pos::N;
  std::vector<Transform> transforms;
  SynTemplate syn_template = SynTemplate::RootOnly;
  std::set<std::string> block;  // citation forms or sense ids
  bool preempt = false;
};

class Bank {
 public:
  std::string language;
  std::string verb_base_label;
  std::vector<StemAlternation> alternations;
  std::vector<AffixRule> affixes;
  std::vector<CompoundRule> compounds;
  std::vector<LexicalRule> rules;

  // label/alias resolution, case-insensitive; null when absent
  const LexicalRule* rule_for_label(const std::string& label) const;
  const AffixRule* affix_by_id(const std::string& id) const;
  const CompoundRule* compound_by_id(const std::string& id) const;

  // hard error when any emitted label has no rule, chains dangle, slots
  // are unknown, or allomorph lists lack a default
  void validate() const;

  // registers feature-value symbols used by transforms as atom types
  void extend_hierarchy(tfs::TypeHierarchy& h) const;

  static Bank load(const std::string& path);

 private:
  void index();
  std::map<std::string, size_t> label_index_;

  friend Bank bank_from_json_text(const std::string& text);
};

}  // namespace lexforge::bank
