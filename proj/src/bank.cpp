// bank.cpp : rule bank loading and validation
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

#include "lexforge/bank.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lexforge::bank {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

bool cond_match(const std::string& cond, const std::string& form) {
  if (cond.empty() || cond == "default") return true;
  for (const auto& part : split(cond, '&')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw error("bad condition: " + cond);
    std::string op = part.substr(0, colon);
    bool ok = false;
    for (const auto& alt : split(part.substr(colon + 1), '|')) {
      if (op == "starts")
        ok = ok || form.rfind(alt, 0) == 0;
      else if (op == "ends")
        ok = ok || (form.size() >= alt.size() &&
                    form.compare(form.size() - alt.size(), alt.size(), alt) ==
                        0);
      else
        throw error("bad condition operator: " + op);
    }
    if (!ok) return false;
  }
  return true;
}

const LexicalRule* Bank::rule_for_label(const std::string& label) const {
  auto it = label_index_.find(lower(label));
  if (it == label_index_.end()) return nullptr;
  return &rules[it->second];
}

const AffixRule* Bank::affix_by_id(const std::string& id) const {
  for (const auto& a : affixes)
    if (a.rule_id == id) return &a;
  return nullptr;
}

const CompoundRule* Bank::compound_by_id(const std::string& id) const {
  for (const auto& c : compounds)
    if (c.rule_id == id) return &c;
  return nullptr;
}

void Bank::index() {
  label_index_.clear();
  for (size_t i = 0; i < rules.size(); ++i) {
    auto put = [&](const std::string& key) {
      auto [it, fresh] = label_index_.emplace(lower(key), i);
      if (!fresh && it->second != i)
        throw error("label '" + key + "' resolves to two rules");
    };
    put(rules[i].rule_id);
    for (const auto& a : rules[i].aliases) put(a);
  }
}

void Bank::validate() const {
  std::set<std::string> slot_names;
  for (const auto& alt : alternations)
    for (const auto& [slot, _] : alt.slots) slot_names.insert(slot);

  auto check_label = [&](const std::string& label, const std::string& where) {
    if (!rule_for_label(label))
      throw error("unknown label '" + label + "' emitted by " + where);
  };

  if (!verb_base_label.empty()) check_label(verb_base_label, "verb_base_label");

  std::set<std::string> affix_ids;
  for (const auto& a : affixes) {
    if (!affix_ids.insert(a.rule_id).second)
      throw error("duplicate affix rule id: " + a.rule_id);
    if (a.labels.empty())
      throw error("affix rule " + a.rule_id + " emits no labels");
    for (const auto& l : a.labels) check_label(l, "affix " + a.rule_id);
    if (a.allomorphs.empty() || a.allomorphs.back().cond != "default")
      throw error("affix rule " + a.rule_id +
                  " needs an allomorph list ending in a default");
    if ((a.kind == AffixKind::Suffix || a.kind == AffixKind::Parasynthetic) &&
        !slot_names.count(a.slot))
      throw error("affix rule " + a.rule_id + " names unknown slot '" +
                  a.slot + "'");
    if (a.base == BaseKind::Derived && !a.base_pos)
      throw error("affix rule " + a.rule_id + " has base=derived but no "
                  "base_pos");
  }
  for (const auto& a : affixes)
    for (const auto& cid : a.chain) {
      const AffixRule* c = affix_by_id(cid);
      if (!c)
        throw error("affix rule " + a.rule_id + " chains unknown rule '" +
                    cid + "'");
      if (c->kind != AffixKind::Suffix)
        throw error("affix rule " + a.rule_id + " chains non-suffix '" + cid +
                    "'");
    }
  for (const auto& c : compounds) {
    if (c.labels.empty())
      throw error("compound " + c.rule_id + " emits no labels");
    for (const auto& l : c.labels) check_label(l, "compound " + c.rule_id);
  }
  std::set<std::string> rule_ids;
  for (const auto& r : rules)
    if (!rule_ids.insert(r.rule_id).second)
      throw error("duplicate lexical rule id: " + r.rule_id);
}

void Bank::extend_hierarchy(tfs::TypeHierarchy& h) const {
  if (!h.defined("atom")) h.add("atom", {"top"});
  for (const auto& r : rules)
    for (const auto& t : r.transforms)
      if (t.op == TransformOp::AddFeature && !h.defined(t.arg2))
        h.add(t.arg2, {"atom"});
}

Bank bank_from_json_text(const std::string& text) {
  json j = json::parse(text);
  Bank b;
  b.language = j.value("language", std::string());
  b.verb_base_label = j.value("verb_base_label", std::string());

  for (const auto& aj : j.value("alternations", json::array())) {
    StemAlternation alt;
    alt.class_id = aj.at("class").get<std::string>();
    alt.pattern = aj.at("pattern").get<std::string>();
    for (auto it = aj.at("slots").begin(); it != aj.at("slots").end(); ++it)
      alt.slots.emplace_back(it.key(), it.value().get<std::string>());
    b.alternations.push_back(std::move(alt));
  }

  for (const auto& aj : j.value("affixes", json::array())) {
    AffixRule a;
    a.rule_id = aj.at("id").get<std::string>();
    std::string kind = aj.value("kind", std::string("suffix"));
    a.kind = kind == "prefix" ? AffixKind::Prefix
             : kind == "parasynthetic" ? AffixKind::Parasynthetic
                                       : AffixKind::Suffix;
    a.affix = aj.value("affix", std::string());
    a.slot = aj.value("slot", std::string());
    for (const auto& alj : aj.at("allomorphs"))
      a.allomorphs.push_back({alj.at("cond").get<std::string>(),
                              alj.at("form").get<std::string>()});
    a.prefix_part = aj.value("prefix_part", std::string());
    a.out_pos = lex::pos_from(aj.at("pos").get<std::string>());
    a.labels = aj.at("labels").get<std::vector<std::string>>();
    a.base = aj.value("base", std::string("citation")) == "derived"
                 ? BaseKind::Derived
                 : BaseKind::Citation;
    if (aj.contains("base_pos"))
      a.base_pos = lex::pos_from(aj.at("base_pos").get<std::string>());
    a.base_cond = aj.value("base_cond", std::string());
    a.citation_cond = aj.value("citation_cond", std::string());
    a.chain = aj.value("chain", std::vector<std::string>{});
    a.chainable = aj.value("chainable", true);
    b.affixes.push_back(std::move(a));
  }

  for (const auto& cj : j.value("compounds", json::array())) {
    CompoundRule c;
    c.rule_id = cj.at("id").get<std::string>();
    c.citation = cj.at("citation").get<std::string>();
    c.surface = cj.at("surface").get<std::string>();
    c.pos = lex::pos_from(cj.at("pos").get<std::string>());
    c.labels = cj.at("labels").get<std::vector<std::string>>();
    b.compounds.push_back(std::move(c));
  }

  for (const auto& rj : j.value("rules", json::array())) {
    LexicalRule r;
    r.rule_id = rj.at("id").get<std::string>();
    r.aliases = rj.value("aliases", std::vector<std::string>{});
    if (rj.contains("trigger")) {
      const auto& tj = rj.at("trigger");
      if (tj.contains("cat"))
        r.trigger.cat = lex::pos_from(tj.at("cat").get<std::string>());
      if (tj.contains("sem_kind"))
        r.trigger.sem_kind =
            onto::kind_from(tj.at("sem_kind").get<std::string>());
      if (tj.contains("scalar")) r.trigger.scalar = tj.at("scalar").get<bool>();
      r.trigger.sem_pattern = tj.value("sem", std::string());
    }
    r.out_cat = lex::pos_from(rj.at("out").get<std::string>());
    std::string syn = rj.value("syn", std::string("root-only"));
    r.syn_template =
        syn == "copy" ? SynTemplate::CopySource : SynTemplate::RootOnly;
    for (const auto& tj : rj.at("transforms")) {
      Transform t;
      std::string op = tj.at(0).get<std::string>();
      if (op == "preserve-head") t.op = TransformOp::PreserveHead;
      else if (op == "add-role-filler") t.op = TransformOp::AddRoleFiller;
      else if (op == "add-feature") t.op = TransformOp::AddFeature;
      else if (op == "reify-role") t.op = TransformOp::ReifyRole;
      else throw error("unknown transform op: " + op);
      if (tj.size() > 1) t.arg1 = tj.at(1).get<std::string>();
      if (tj.size() > 2) t.arg2 = tj.at(2).get<std::string>();
      r.transforms.push_back(std::move(t));
    }
    for (const auto& bl : rj.value("block", std::vector<std::string>{}))
      r.block.insert(bl);
    r.preempt = rj.value("preempt", false);
    b.rules.push_back(std::move(r));
  }

  b.index();
  b.validate();
  return b;
}

Bank Bank::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read bank file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return bank_from_json_text(buf.str());
  } catch (const json::exception& e) {
    throw error(path + ": " + e.what());
  }
}

}  // namespace lexforge::bank
