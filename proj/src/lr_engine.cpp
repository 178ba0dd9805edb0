// lr_engine.cpp : lexical rule triggering, application, blocking
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

#include "lexforge/lr_engine.hpp"

#include <algorithm>
#include <set>

#include "lexforge/unicode.hpp"

namespace lexforge::lr {

TriggerMode mode_from(const std::string& s) {
  if (s == "itemized") return TriggerMode::Itemized;
  if (s == "lhs") return TriggerMode::Lhs;
  if (s == "hybrid") return TriggerMode::Hybrid;
  throw error("unknown trigger mode: " + s);
}

std::string chain_key(const std::vector<std::string>& chain) {
  std::string key;
  for (size_t i = 0; i < chain.size(); ++i) {
    if (i) key += "+";
    key += chain[i];
  }
  return key;
}

bool trigger_match(const bank::LexicalRule& rule, const lex::Entry& e,
                   const Context& ctx) {
  const bank::Trigger& t = rule.trigger;
  if (t.cat && *t.cat != e.cat) return false;
  if (t.sem_kind || t.scalar) {
    const std::string& head = e.sem_head();
    if (!ctx.ontology->has(head)) return false;
    if (t.sem_kind && ctx.ontology->kind_of(head) != *t.sem_kind) return false;
    if (t.scalar) {
      bool scalar = ctx.ontology->has("scalar-property") &&
                    ctx.ontology->is_a(head, "scalar-property");
      if (*t.scalar != scalar) return false;
    }
  }
  if (!t.sem_pattern.empty()) {
    tfs::Fs pattern = tfs::parse(t.sem_pattern);
    if (!tfs::subsumes(pattern.view(), e.sem(), *ctx.hierarchy)) return false;
  }
  return true;
}

std::vector<const bank::LexicalRule*> trigger_rules(const lex::Entry& e,
                                                    const bank::Bank& bank,
                                                    TriggerMode mode,
                                                    const Context& ctx) {
  std::vector<const bank::LexicalRule*> out;
  std::set<const bank::LexicalRule*> seen;
  if (mode == TriggerMode::Itemized || mode == TriggerMode::Hybrid) {
    for (const auto& item : e.lr_item) {
      const bank::LexicalRule* r = bank.rule_for_label(item.rule_id);
      if (!r)
        throw error("unknown rule id '" + item.rule_id +
                    "' itemized on " + e.sense_id);
      if (seen.insert(r).second) out.push_back(r);
    }
  }
  if (mode == TriggerMode::Lhs || mode == TriggerMode::Hybrid) {
    for (const auto& r : bank.rules)
      if (trigger_match(r, e, ctx) && seen.insert(&r).second)
        out.push_back(&r);
  }
  return out;
}

BlockVerdict is_blocked(const bank::LexicalRule& rule,
                        const lex::Entry& source, const std::string& surface,
                        const lex::Store& store) {
  if (rule.block.count(source.citation()) || rule.block.count(source.sense_id))
    return BlockVerdict::Listed;
  if (store.blocked(source.sense_id, rule.rule_id))
    return BlockVerdict::Listed;
  if (rule.preempt) {
    for (const auto& e : store.lookup_form(surface))
      if (e.cat == rule.out_cat && e.lex_rul.empty())
        return BlockVerdict::Preempted;
  }
  return BlockVerdict::No;
}

namespace {

// locate-or-create a role filler on the sem root; returns its node index
int ensure_role(lex::Entry& e, const std::string& role,
                const std::string& filler_spec, const Context& ctx) {
  tfs::Graph::Node& root = e.graph.at(e.sem_root);
  int slot = root.find_attr(role);
  if (slot >= 0) return root.attrs[static_cast<size_t>(slot)].second;
  std::string filler = filler_spec;
  if (filler.empty() || filler == "@constraint") {
    auto c = ctx.ontology->role_constraint(e.sem_head(), role);
    if (!c)
      throw error("sem-transform-failure: no constraint for role '" + role +
                  "' of " + e.sem_head());
    filler = *c;
  }
  if (!ctx.ontology->has(filler))
    throw error("sem-transform-failure: unknown filler concept '" + filler +
                "'");
  int node = e.graph.add_node(filler);
  e.graph.set_attr(e.sem_root, role, node);
  return node;
}

void apply_transform(lex::Entry& e, const bank::Transform& t,
                     const std::string& source_head, const Context& ctx) {
  switch (t.op) {
    case bank::TransformOp::PreserveHead:
      if (e.sem_head() != source_head)
        throw error("sem-transform-failure: head drifted from " + source_head);
      break;
    case bank::TransformOp::AddFeature: {
      tfs::Graph::Node& root = e.graph.at(e.sem_root);
      int slot = root.find_attr(t.arg1);
      if (slot >= 0) {
        const auto& existing =
            e.graph.at(root.attrs[static_cast<size_t>(slot)].second);
        if (existing.type != t.arg2)
          throw error("sem-transform-failure: feature '" + t.arg1 +
                      "' already set to " + existing.type);
        break;
      }
      int node = e.graph.add_node(t.arg2);
      e.graph.set_attr(e.sem_root, t.arg1, node);
      break;
    }
    case bank::TransformOp::AddRoleFiller:
      ensure_role(e, t.arg1, t.arg2, ctx);
      break;
    case bank::TransformOp::ReifyRole: {
      int node = -1;
      try {
        node = ensure_role(e, t.arg1, "@constraint", ctx);
      } catch (const error&) {
        if (t.arg2.empty()) throw;
        node = ensure_role(e, t.arg2, "@constraint", ctx);
      }
      tfs::Graph::Node& root = e.graph.at(e.sem_root);
      int slot = root.find_attr("denotes");
      if (slot < 0) e.graph.set_attr(e.sem_root, "denotes", node);
      else root.attrs[static_cast<size_t>(slot)].second = node;
      // the reified node needs a tag once it is shared
      if (e.graph.at(node).tag < 0) {
        int next = std::max(tfs::max_tag(e.sem()), tfs::max_tag(e.syn())) + 1;
        e.graph.at(node).tag = next;
      }
      break;
    }
  }
}

lex::Entry transform_entry(const bank::LexicalRule& rule,
                           const lex::Entry& source,
                           const std::string& sense_id, const Context& ctx) {
  lex::Entry out;
  out.sense_id = sense_id;
  out.cat = rule.out_cat;
  out.dfn = source.dfn;
  out.ex = "";
  out.admin = {rule.rule_id, lex::now_stamp()};
  out.lex_rul = source.lex_rul;

  // sem is carried over wholesale (transcategoriality); syn is rebuilt
  std::map<int, int> moved;
  out.sem_root = out.graph.import(source.graph, source.sem_root, moved);
  if (out.graph.at(out.sem_root).tag < 0)
    out.graph.at(out.sem_root).tag = 10;

  if (rule.syn_template == bank::SynTemplate::CopySource) {
    out.syn_root = out.graph.import(source.graph, source.syn_root, moved);
  } else {
    // minimal frame: [root: [0] [cat: x], sem: [n]] with the sem zone shared
    out.syn_root = out.graph.add_node();
    int root_node = out.graph.add_node("top", 0);
    int cat_node = out.graph.add_node(lex::pos_lower(rule.out_cat));
    out.graph.set_attr(root_node, "cat", cat_node);
    out.graph.set_attr(out.syn_root, "root", root_node);
    out.graph.set_attr(out.syn_root, "sem", out.sem_root);
  }

  const std::string source_head = source.sem_head();
  for (const auto& t : rule.transforms)
    apply_transform(out, t, source_head, ctx);
  return out;
}

}  // namespace

lex::Entry apply_rule(const bank::LexicalRule& rule, const lex::Entry& source,
                      const std::string& surface, const Context& ctx) {
  BlockVerdict verdict = is_blocked(rule, source, surface, *ctx.store);
  if (verdict != BlockVerdict::No)
    throw blocked_error("blocked: " + surface + " (" +
                        (verdict == BlockVerdict::Listed ? "listed"
                                                         : "preempted") +
                        ")");
  std::string id = ctx.reserve_ids
                       ? ctx.store->next_sense_id(surface, rule.out_cat)
                       : uni::nfc(surface) + "-" + lex::pos_upper(rule.out_cat) +
                             "1";
  lex::Entry out = transform_entry(rule, source, id, ctx);
  out.lex_rul.emplace_back(source.sense_id, rule.rule_id);
  return out;
}

lex::Entry apply_chain(const std::vector<const bank::LexicalRule*>& chain,
                       const lex::Entry& source, const std::string& surface,
                       const Context& ctx) {
  if (chain.empty()) throw error("empty rule chain");
  lex::Entry cur = source;
  std::vector<std::pair<std::string, std::string>> provenance = source.lex_rul;
  for (const bank::LexicalRule* rule : chain) {
    cur = transform_entry(*rule, cur, "pending", ctx);
    provenance.emplace_back(source.sense_id, rule->rule_id);
    cur.lex_rul = provenance;
  }
  cur.sense_id = ctx.reserve_ids
                     ? ctx.store->next_sense_id(surface, chain.back()->out_cat)
                     : uni::nfc(surface) + "-" +
                           lex::pos_upper(chain.back()->out_cat) + "1";
  return cur;
}

std::vector<Candidate> expand(const lex::Superentry& s,
                              const std::vector<morph::DerivedForm>& derived,
                              const bank::Bank& bank, TriggerMode mode,
                              const Context& ctx) {
  std::vector<Candidate> out;
  std::set<std::tuple<std::string, lex::Pos, std::string, std::string>> seen;

  std::map<std::string, const lex::Entry*> senses;
  for (const auto& e : s.entries) senses[e.sense_id] = &e;

  auto emit = [&](const lex::Entry& source,
                  const std::vector<const bank::LexicalRule*>& chain,
                  const std::string& surface) {
    // canonical ids, blocking, triggering
    std::vector<std::string> ids;
    for (const auto* r : chain) ids.push_back(r->rule_id);
    if (ctx.store->blocked(source.sense_id, chain_key(ids))) return;
    lex::Entry cur = source;
    for (const auto* rule : chain) {
      if (!trigger_match(*rule, cur, ctx)) return;
      if (is_blocked(*rule, source, surface, *ctx.store) != BlockVerdict::No)
        return;
      cur = transform_entry(*rule, cur, "pending", ctx);
    }
    auto key = std::make_tuple(surface, chain.back()->out_cat,
                               source.sense_id, chain_key(ids));
    if (!seen.insert(key).second) return;  // one candidate per chain

    Candidate c;
    c.entry = apply_chain(chain, source, surface, ctx);
    c.surface = uni::nfc(surface);
    c.source_sense = source.sense_id;
    c.rule_chain = ids;
    c.language = s.language;
    out.push_back(std::move(c));
  };

  for (const auto& df : derived) {
    auto it = senses.find(df.source_sense);
    if (it == senses.end())
      throw error("derived row references unknown sense " + df.source_sense);
    std::vector<const bank::LexicalRule*> chain;
    for (const auto& label : df.labels) {
      const bank::LexicalRule* rule = bank.rule_for_label(label);
      if (!rule) throw error("unknown label '" + label + "'");
      chain.push_back(rule);
    }
    if (chain.empty()) continue;
    emit(*it->second, chain, df.surface);
  }

  // itemized rules with explicit surface overrides (suppletive forms)
  if (mode == TriggerMode::Itemized || mode == TriggerMode::Hybrid) {
    for (const auto& e : s.entries) {
      for (const auto& item : e.lr_item) {
        if (item.surface.empty()) continue;
        const bank::LexicalRule* rule = bank.rule_for_label(item.rule_id);
        if (!rule)
          throw error("unknown rule id '" + item.rule_id + "' itemized on " +
                      e.sense_id);
        // itemization is an explicit instruction: skip the LHS check but
        // honor blocking
        if (is_blocked(*rule, e, item.surface, *ctx.store) !=
            BlockVerdict::No)
          continue;
        if (ctx.store->blocked(e.sense_id, rule->rule_id)) continue;
        auto key = std::make_tuple(uni::nfc(item.surface), rule->out_cat,
                                   e.sense_id, rule->rule_id);
        if (!seen.insert(key).second) continue;
        Candidate c;
        c.entry = apply_chain({rule}, e, item.surface, ctx);
        c.surface = uni::nfc(item.surface);
        c.source_sense = e.sense_id;
        c.rule_chain = {rule->rule_id};
        c.language = s.language;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace lexforge::lr
