// pipeline.cpp : acquisition flow, review queue, hybrid run-time fallback
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

#include "lexforge/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lexforge/morphgen.hpp"
#include "lexforge/unicode.hpp"

namespace lexforge::pipe {

using nlohmann::json;

// ---- Report ----------------------------------------------------------------

std::string Report::to_json() const {
  json j;
  j["verbs_processed"] = verbs_processed;
  j["senses_processed"] = senses_processed;
  j["candidates_generated"] = candidates_generated;
  j["per_sense_mean"] = per_sense_mean;
  j["accepted"] = accepted;
  j["deferred"] = deferred;
  j["rejected"] = rejected;
  j["pending_review"] = pending_review;
  j["unresolved"] = unresolved;
  return j.dump();
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "verbs processed:      " << verbs_processed << "\n"
      << "senses processed:     " << senses_processed << "\n"
      << "candidates generated: " << candidates_generated << "\n"
      << "per-sense mean:       " << per_sense_mean << "\n"
      << "accepted:             " << accepted << "\n"
      << "deferred:             " << deferred << "\n"
      << "rejected:             " << rejected << "\n"
      << "pending review:       " << pending_review << "\n";
  if (!unresolved.empty()) {
    out << "unresolved:          ";
    for (const auto& u : unresolved) out << " " << u;
    out << "\n";
  }
  return out.str();
}

// ---- QueueItem --------------------------------------------------------------

std::string QueueItem::to_json() const {
  json j;
  j["candidate_id"] = candidate_id;
  j["entry"] = json::parse(lex::entry_to_json(candidate.entry));
  j["surface"] = candidate.surface;
  j["source_sense"] = candidate.source_sense;
  j["rule_chain"] = candidate.rule_chain;
  j["language"] = candidate.language;
  json ev = json::array();
  for (const auto& [name, hit] : verdict.evidence) ev.push_back({name, hit});
  j["validation"] = {{"status", val::status_name(verdict.status)},
                     {"corpus_count", verdict.corpus_count},
                     {"evidence", ev}};
  j["review_status"] = review_status;
  j["version"] = version;
  j["fast_track"] = fast_track;
  return j.dump();
}

QueueItem QueueItem::from_json(const std::string& line) {
  json j = json::parse(line);
  QueueItem item;
  item.candidate_id = j.at("candidate_id").get<std::string>();
  item.candidate.entry = lex::entry_from_json(j.at("entry").dump());
  item.candidate.surface = j.at("surface").get<std::string>();
  item.candidate.source_sense = j.at("source_sense").get<std::string>();
  item.candidate.rule_chain =
      j.at("rule_chain").get<std::vector<std::string>>();
  item.candidate.language = j.at("language").get<std::string>();
  const auto& vj = j.at("validation");
  std::string status = vj.at("status").get<std::string>();
  item.verdict.status = status == "accepted" ? val::Status::Accepted
                        : status == "deferred" ? val::Status::Deferred
                                               : val::Status::Rejected;
  item.verdict.corpus_count = vj.at("corpus_count").get<long>();
  for (const auto& ev : vj.at("evidence"))
    item.verdict.evidence.emplace_back(ev.at(0).get<std::string>(),
                                       ev.at(1).get<bool>());
  item.review_status = j.at("review_status").get<std::string>();
  item.version = j.at("version").get<int>();
  item.fast_track = j.at("fast_track").get<bool>();
  return item;
}

std::string Queue::append(lr::Candidate c, val::Verdict v, bool pending) {
  QueueItem item;
  char buf[16];
  std::snprintf(buf, sizeof buf, "c%06ld", next_id_++);
  item.candidate_id = buf;
  item.fast_track = v.status == val::Status::Accepted;
  item.review_status = pending ? "pending" : "archived";
  item.candidate = std::move(c);
  item.verdict = std::move(v);
  items_.push_back(std::move(item));
  return items_.back().candidate_id;
}

QueueItem* Queue::find(const std::string& candidate_id) {
  for (auto& item : items_)
    if (item.candidate_id == candidate_id) return &item;
  return nullptr;
}

long Queue::pending_count() const {
  long n = 0;
  for (const auto& item : items_)
    if (item.review_status == "pending") n++;
  return n;
}

void Queue::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write queue file " + path);
  for (const auto& item : items_) out << item.to_json() << "\n";
}

Queue Queue::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read queue file " + path);
  Queue q;
  std::string line;
  long max_id = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    q.items_.push_back(QueueItem::from_json(line));
    const std::string& id = q.items_.back().candidate_id;
    max_id = std::max(max_id, std::stol(id.substr(1)));
  }
  q.next_id_ = max_id + 1;
  return q;
}

// ---- Pipeline ---------------------------------------------------------------

lr::Context Pipeline::context() const {
  lr::Context ctx;
  ctx.ontology = ontology;
  ctx.hierarchy = hierarchy;
  ctx.store = store;
  return ctx;
}

std::vector<lr::Candidate> Pipeline::generate(const lex::Superentry& s) {
  auto derived = morph::derive_forms(s, *bank, depth_limit);
  return lr::expand(s, derived, *bank, mode, context());
}

Report Pipeline::acquire(
    const std::vector<std::string>& verb_citations, bool auto_admit_accepted,
    std::vector<std::pair<lr::Candidate, val::Verdict>>* audit) {
  Report report;
  for (const auto& citation : verb_citations) {
    auto s = store->get_superentry(citation);
    if (!s) {
      report.unresolved.push_back(citation);
      continue;
    }
    std::vector<lr::Candidate> candidates;
    long verb_senses = 0;
    for (const auto& e : s->entries)
      if (e.cat == lex::Pos::V) verb_senses++;
    try {
      candidates = generate(*s);
    } catch (const morph::error&) {
      report.unresolved.push_back(citation);
      continue;
    }
    report.verbs_processed++;
    report.senses_processed += verb_senses;
    report.candidates_generated += static_cast<long>(candidates.size());

    std::vector<val::Verdict> verdicts;
    val::validate(candidates, *resources, &verdicts);
    for (size_t i = 0; i < candidates.size(); ++i) {
      const auto& verdict = verdicts[i];
      switch (verdict.status) {
        case val::Status::Accepted: report.accepted++; break;
        case val::Status::Deferred: report.deferred++; break;
        case val::Status::Rejected: report.rejected++; break;
      }
      if (audit) audit->emplace_back(candidates[i], verdict);
      bool keep = verdict.status != val::Status::Rejected;
      if (keep && auto_admit_accepted &&
          verdict.status == val::Status::Accepted) {
        store->admit_entry(candidates[i].entry, candidates[i].language);
        continue;
      }
      if (queue) {
        queue->append(candidates[i], verdict, keep);
        if (keep) report.pending_review++;
      }
    }
  }
  if (report.senses_processed > 0)
    report.per_sense_mean = static_cast<double>(report.candidates_generated) /
                            static_cast<double>(report.senses_processed);
  return report;
}

std::vector<std::string> Pipeline::reverse_citations(
    const std::string& surface) const {
  // propose base citations by stripping affix allomorphs, longest first,
  // inverting slot rewrites, and consulting compound itemizations
  std::set<std::string> proposals;
  std::set<std::string> visited;
  std::vector<std::pair<std::string, int>> work{{uni::nfc(surface),
                                                 depth_limit}};
  auto propose = [&](const std::string& citation, int depth_left) {
    if (proposals.count(citation)) return;
    proposals.insert(citation);
    if (depth_left > 0) work.emplace_back(citation, depth_left);
  };

  while (!work.empty()) {
    auto [form, depth] = work.back();
    work.pop_back();
    if (depth <= 0 || !visited.insert(form).second) continue;

    for (const auto& comp : bank->compounds)
      if (uni::nfc(comp.surface) == form) propose(comp.citation, depth - 1);

    std::vector<std::pair<const bank::AffixRule*, std::string>> strips;
    for (const auto& rule : bank->affixes)
      for (const auto& allo : rule.allomorphs) {
        if (allo.form.empty()) continue;
        strips.emplace_back(&rule, allo.form);
      }
    std::stable_sort(strips.begin(), strips.end(),
                     [](const auto& a, const auto& b) {
                       return a.second.size() > b.second.size();
                     });

    for (const auto& [rule, allo] : strips) {
      if (rule->kind == bank::AffixKind::Prefix) {
        if (form.rfind(allo, 0) != 0 || form.size() <= allo.size()) continue;
        std::string rest = form.substr(allo.size());
        propose(rest, depth - 1);
        work.emplace_back(rest, depth - 1);
        continue;
      }
      if (form.size() <= allo.size() ||
          form.compare(form.size() - allo.size(), allo.size(), allo) != 0)
        continue;
      std::string stem0 = form.substr(0, form.size() - allo.size());
      // undo seam repairs conservatively: the stem may have lost a final e
      std::vector<std::string> stems{stem0, stem0 + "e"};
      for (const auto& stem : stems) {
        for (const auto& alt : bank->alternations) {
          for (const auto& [slot, repl] : alt.slots) {
            if (slot != rule->slot) continue;
            if (stem.size() < repl.size() ||
                stem.compare(stem.size() - repl.size(), repl.size(), repl) !=
                    0)
              continue;
            std::string citation =
                stem.substr(0, stem.size() - repl.size()) + alt.pattern;
            if (!citation.empty()) propose(citation, depth - 1);
          }
        }
      }
    }
  }
  // keep only citations the lexicon can ground in a verb sense
  std::vector<std::string> out;
  for (const auto& c : proposals) {
    auto s = store->get_superentry(c);
    if (!s) continue;
    for (const auto& e : s->entries)
      if (e.cat == lex::Pos::V) {
        out.push_back(c);
        break;
      }
  }
  return out;
}

LookupResult Pipeline::runtime_lookup(const std::string& surface) {
  std::string key = uni::nfc(surface);
  LookupResult result;

  auto direct = store->lookup_form(key);
  if (!direct.empty()) {
    result.entries = std::move(direct);
    result.generated.assign(result.entries.size(), false);
    return result;  // direct hit short-circuits: zero derivations
  }

  {
    std::lock_guard lock(cache_mu_);
    auto it = runtime_cache_.find(key);
    if (it != runtime_cache_.end()) return it->second;
  }

  for (const auto& citation : reverse_citations(key)) {
    auto s = store->get_superentry(citation);
    if (!s) continue;
    std::vector<morph::DerivedForm> hits;
    for (auto& df : morph::derive_forms(*s, *bank, depth_limit)) {
      result.derivations_attempted++;
      if (df.surface == key) hits.push_back(std::move(df));
    }
    if (hits.empty()) continue;
    for (auto& c : lr::expand(*s, hits, *bank, mode, context())) {
      result.entries.push_back(c.entry);
      result.generated.push_back(true);
      if (persist_runtime_entries) store->admit_entry(c.entry, c.language);
    }
  }

  std::lock_guard lock(cache_mu_);
  runtime_cache_[key] = result;
  return result;
}

long Pipeline::load_time_expand() {
  long added = 0;
  for (const auto& snapshot : store->all()) {
    if (!bank->language.empty() && snapshot.language != bank->language)
      continue;
    // expansion starts from the base lexicon: underived verb senses only,
    // otherwise a second pass would chain off its own output
    lex::Superentry s;
    s.citation = snapshot.citation;
    s.language = snapshot.language;
    for (const auto& e : snapshot.entries)
      if (e.cat == lex::Pos::V && e.lex_rul.empty()) s.entries.push_back(e);
    if (s.entries.empty()) continue;

    std::vector<lr::Candidate> candidates = generate(s);
    std::vector<val::Verdict> verdicts;
    val::validate(candidates, *resources, &verdicts);
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (verdicts[i].status != val::Status::Accepted) continue;
      const auto& cand = candidates[i];
      // an underived homograph preempts auto-admission (the base verb
      // re-deriving itself); a same-chain entry makes the pass idempotent
      bool skip = false;
      for (const auto& existing : store->lookup_form(cand.surface)) {
        if (existing.cat != cand.entry.cat) continue;
        if (existing.lex_rul.empty() ||
            existing.lex_rul == cand.entry.lex_rul) {
          skip = true;
          break;
        }
      }
      if (skip) continue;
      lex::Entry admitted = cand.entry;
      // ids were reserved against the pre-admission store; re-check
      admitted.sense_id = store->next_sense_id(cand.surface, admitted.cat);
      admitted.admin.who = "loadtime:" + admitted.admin.who;
      store->admit_entry(admitted, cand.language);
      added++;
    }
  }
  return added;
}

}  // namespace lexforge::pipe
