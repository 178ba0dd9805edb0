// morphgen.cpp : stem alternation, affix attachment, derivation closure
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

#include "lexforge/morphgen.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "lexforge/unicode.hpp"

namespace lexforge::morph {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// joins stem + suffix allomorph with orthographic repair at the seam
std::string join_suffix(const std::string& stem, const std::string& allo) {
  std::string s = stem;
  if (!allo.empty() && !s.empty()) {
    char first = allo[0];
    bool vowel = first == 'a' || first == 'e' || first == 'i' ||
                 first == 'o' || first == 'u';
    if (vowel && s.back() == 'e' && s.size() >= 2 &&
        s[s.size() - 2] != 'c' && s[s.size() - 2] != 'g') {
      s.pop_back();  // final-e elision (abusive, relatable, bebible);
                     // kept after soft c/g (noticeable, manageable)
    } else if (vowel && s.back() == first) {
      s.pop_back();  // identical-vowel merge
    }
    if (first == 'e' && !s.empty()) {
      // keep the hard consonant before e: saque, pague
      if (s.back() == 'c') {
        s.pop_back();
        s += "qu";
      } else if (s.back() == 'g') {
        s += "u";
      }
    }
  }
  return uni::nfc(s + allo);
}

const bank::Allomorph& pick_allomorph(const bank::AffixRule& rule,
                                      const std::string& base) {
  for (const auto& a : rule.allomorphs)
    if (bank::cond_match(a.cond, base)) return a;
  throw error("condition unevaluable: no allomorph of " + rule.rule_id +
              " matches '" + base + "'");
}

}  // namespace

std::map<std::string, std::string> alternants(const std::string& citation,
                                              const bank::Bank& bank) {
  std::string form = uni::nfc(citation);
  // collect matching classes, most specific (longest pattern) last so its
  // slots shadow the general ones
  std::vector<const bank::StemAlternation*> matches;
  for (const auto& alt : bank.alternations)
    if (ends_with(form, alt.pattern)) matches.push_back(&alt);
  if (matches.empty())
    throw error("no alternation class matches '" + citation + "'");
  std::stable_sort(matches.begin(), matches.end(),
                   [](const bank::StemAlternation* a,
                      const bank::StemAlternation* b) {
                     return a->pattern.size() < b->pattern.size();
                   });
  std::map<std::string, std::string> out;
  for (const auto* alt : matches) {
    std::string root = form.substr(0, form.size() - alt->pattern.size());
    for (const auto& [slot, repl] : alt->slots) {
      std::string stem = root + repl;
      if (!stem.empty()) out[slot] = uni::nfc(stem);
    }
  }
  return out;
}

std::string attach(const bank::AffixRule& rule, const std::string& base) {
  std::string b = uni::nfc(base);
  const bank::Allomorph& allo = pick_allomorph(rule, b);
  switch (rule.kind) {
    case bank::AffixKind::Prefix:
      return uni::nfc(allo.form + b);
    case bank::AffixKind::Suffix:
      return join_suffix(b, allo.form);
    case bank::AffixKind::Parasynthetic:
      return uni::nfc(rule.prefix_part + join_suffix(b, allo.form));
  }
  return b;
}

namespace {

// resolves the attachment base of a rule against a (possibly derived)
// verb form, then attaches; nullopt when the rule does not apply
std::optional<std::string> apply_to_verb(const bank::AffixRule& rule,
                                         const std::string& verb_form,
                                         const bank::Bank& bank) {
  if (!bank::cond_match(rule.citation_cond, verb_form)) return std::nullopt;
  if (rule.kind == bank::AffixKind::Prefix)
    return attach(rule, verb_form);
  auto slots = alternants(verb_form, bank);
  auto it = slots.find(rule.slot);
  if (it == slots.end()) return std::nullopt;
  return attach(rule, it->second);
}

struct Emitter {
  std::vector<DerivedForm> rows;
  std::set<std::tuple<std::string, lex::Pos, std::vector<std::string>,
                      std::string>>
      seen;

  void emit(DerivedForm df) {
    auto key = std::make_tuple(df.surface, df.pos, df.labels, df.source_sense);
    if (seen.insert(key).second) rows.push_back(std::move(df));
  }
};

std::vector<std::string> compose_labels(const bank::AffixRule& rule,
                                        lex::Pos base_pos,
                                        const std::vector<std::string>& base) {
  std::vector<std::string> out = rule.labels;
  if (rule.out_pos == base_pos)
    out.insert(out.end(), base.begin(), base.end());
  return out;
}

}  // namespace

std::vector<DerivedForm> derive_forms(const lex::Superentry& s,
                                      const bank::Bank& bank,
                                      int depth_limit) {
  std::vector<const lex::Entry*> verbs;
  for (const auto& e : s.entries)
    if (e.cat == lex::Pos::V) verbs.push_back(&e);
  if (verbs.empty())
    throw error("superentry '" + s.citation + "' has no verb sense");
  if (depth_limit < 1) throw error("depth limit must be >= 1");

  Emitter em;
  for (const auto* verb : verbs) {
    const std::string citation = uni::nfc(s.citation);
    DerivedForm base{citation, lex::Pos::V, {}, {}, verb->sense_id};
    if (!bank.verb_base_label.empty())
      base.labels.push_back(bank.verb_base_label);
    em.emit(base);

    size_t derived_start = em.rows.size();

    // citation-based rules, bank order; prefix rows pull their chained
    // suffix rows in directly behind them
    for (const auto& rule : bank.affixes) {
      if (rule.base != bank::BaseKind::Citation) continue;
      auto surface = apply_to_verb(rule, citation, bank);
      if (!surface) continue;
      if (*surface == citation) continue;  // affixation must change the form
      DerivedForm row{*surface, rule.out_pos,
                      compose_labels(rule, lex::Pos::V, base.labels),
                      {rule.rule_id},
                      verb->sense_id};
      em.emit(row);
      if (depth_limit >= 2 && rule.kind == bank::AffixKind::Prefix &&
          rule.out_pos == lex::Pos::V) {
        for (const auto& cid : rule.chain) {
          const bank::AffixRule* chained = bank.affix_by_id(cid);
          auto s2 = apply_to_verb(*chained, *surface, bank);
          if (!s2 || *s2 == citation) continue;
          em.emit(DerivedForm{*s2, chained->out_pos,
                              compose_labels(*chained, lex::Pos::V,
                                             row.labels),
                              {rule.rule_id, cid},
                              verb->sense_id});
        }
      }
    }

    // rules that attach to derived output (negative in-, tele-, un-)
    for (const auto& rule : bank.affixes) {
      if (rule.base != bank::BaseKind::Derived) continue;
      size_t upto = em.rows.size();
      for (size_t i = derived_start; i < upto; ++i) {
        DerivedForm cur = em.rows[i];  // copy: emit() may reallocate
        if (cur.source_sense != verb->sense_id) continue;
        if (static_cast<int>(cur.derivation.size()) + 1 > depth_limit)
          continue;
        if (rule.base_pos && cur.pos != *rule.base_pos) continue;
        if (!bank::cond_match(rule.base_cond, cur.surface)) continue;
        std::string surface = attach(rule, cur.surface);
        if (surface == citation) continue;
        auto deriv = cur.derivation;
        deriv.push_back(rule.rule_id);
        em.emit(DerivedForm{surface, rule.out_pos,
                            compose_labels(rule, cur.pos, cur.labels),
                            std::move(deriv), verb->sense_id});
      }
    }

    // lexically itemized compounds attached to this superentry
    for (const auto& comp : bank.compounds) {
      if (uni::nfc(comp.citation) != citation) continue;
      em.emit(DerivedForm{uni::nfc(comp.surface), comp.pos, comp.labels,
                          {comp.rule_id}, verb->sense_id});
    }
  }
  return em.rows;
}

std::string replay(const std::string& citation,
                   const std::vector<std::string>& derivation,
                   const bank::Bank& bank) {
  std::string cur = uni::nfc(citation);
  for (const auto& rid : derivation) {
    if (const bank::CompoundRule* comp = bank.compound_by_id(rid)) {
      cur = uni::nfc(comp->surface);
      continue;
    }
    const bank::AffixRule* rule = bank.affix_by_id(rid);
    if (!rule) throw error("replay: unknown rule id " + rid);
    if (rule->base == bank::BaseKind::Derived) {
      cur = attach(*rule, cur);
    } else {
      auto surface = apply_to_verb(*rule, cur, bank);
      if (!surface) throw error("replay: rule " + rid + " inapplicable to '" +
                                cur + "'");
      cur = *surface;
    }
  }
  return cur;
}

std::string tsv_row(const DerivedForm& df) {
  std::string labels;
  for (size_t i = 0; i < df.labels.size(); ++i) {
    if (i) labels += " ";
    labels += df.labels[i];
  }
  return df.surface + "\t" + lex::pos_lower(df.pos) + "\t" + labels;
}

}  // namespace lexforge::morph
