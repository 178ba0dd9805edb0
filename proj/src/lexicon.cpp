// lexicon.cpp : superentry/entry model, JSONL persistence, indexes
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

#include "lexforge/lexicon.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "lexforge/unicode.hpp"

namespace lexforge::lex {

using nlohmann::json;

std::string pos_upper(Pos p) {
  switch (p) {
    case Pos::V: return "V";
    case Pos::N: return "N";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
  }
  return "V";
}

std::string pos_lower(Pos p) {
  std::string s = pos_upper(p);
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  return s;
}

Pos pos_from(const std::string& s) {
  std::string up;
  for (char c : s) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "V") return Pos::V;
  if (up == "N") return Pos::N;
  if (up == "ADJ") return Pos::Adj;
  if (up == "ADV") return Pos::Adv;
  throw error("unknown POS: " + s);
}

std::string now_stamp() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  localtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d/%d %02d:%02d:%02d", tm.tm_mday,
                tm.tm_mon + 1, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

std::string Entry::sem_head() const { return graph.at(sem_root).type; }

void split_sense_id(const std::string& id, std::string& citation, Pos& cat,
                    int& ordinal) {
  auto dash = id.rfind('-');
  if (dash == std::string::npos || dash == 0 || dash + 2 > id.size())
    throw error("malformed sense id: " + id);
  citation = id.substr(0, dash);
  size_t p = dash + 1;
  size_t letters = p;
  while (letters < id.size() &&
         std::isalpha(static_cast<unsigned char>(id[letters])))
    letters++;
  if (letters == p || letters == id.size())
    throw error("malformed sense id: " + id);
  cat = pos_from(id.substr(p, letters - p));
  ordinal = std::stoi(id.substr(letters));
  if (ordinal < 1) throw error("malformed sense id: " + id);
}

std::string Entry::citation() const {
  std::string c;
  Pos p;
  int o;
  split_sense_id(sense_id, c, p, o);
  return c;
}

int Entry::ordinal() const {
  std::string c;
  Pos p;
  int o;
  split_sense_id(sense_id, c, p, o);
  return o;
}

// ---- JSON round-trip -------------------------------------------------------

static json entry_json(const Entry& e) {
  json j;
  j["admin"] = {{"when", e.admin.when}, {"who", e.admin.who}};
  j["cat"] = pos_upper(e.cat);
  j["dfn"] = e.dfn;
  j["ex"] = e.ex;
  json lr = json::array();
  for (const auto& [src, rule] : e.lex_rul) lr.push_back({src, rule});
  j["lex_rul"] = lr;
  json items = json::array();
  for (const auto& it : e.lr_item)
    items.push_back({{"rule", it.rule_id}, {"surface", it.surface}});
  j["lr_item"] = items;
  // sem first so coindexed role nodes carry their content in the sem zone
  tfs::EmitScope scope;
  j["sem"] = tfs::serialize(e.sem(), scope);
  j["syn"] = tfs::serialize(e.syn(), scope);
  j["sense_id"] = e.sense_id;
  return j;
}

static Entry entry_from(const json& j) {
  Entry e;
  e.sense_id = j.at("sense_id").get<std::string>();
  e.cat = pos_from(j.at("cat").get<std::string>());
  e.dfn = j.at("dfn").get<std::string>();
  e.ex = j.at("ex").get<std::string>();
  e.admin.who = j.at("admin").at("who").get<std::string>();
  e.admin.when = j.at("admin").at("when").get<std::string>();
  for (const auto& pair : j.at("lex_rul"))
    e.lex_rul.emplace_back(pair.at(0).get<std::string>(),
                           pair.at(1).get<std::string>());
  if (j.contains("lr_item"))
    for (const auto& it : j.at("lr_item"))
      e.lr_item.push_back({it.at("rule").get<std::string>(),
                           it.value("surface", std::string())});
  tfs::TagScope scope;
  e.syn_root = tfs::parse_into(e.graph, j.at("syn").get<std::string>(), scope);
  e.sem_root = tfs::parse_into(e.graph, j.at("sem").get<std::string>(), scope);
  return e;
}

std::string entry_to_json(const Entry& e) { return entry_json(e).dump(); }

Entry entry_from_json(const std::string& text) {
  return entry_from(json::parse(text));
}

std::string superentry_to_json(const Superentry& s) {
  json j;
  j["citation"] = s.citation;
  j["language"] = s.language;
  json entries = json::array();
  for (const auto& e : s.entries) entries.push_back(entry_json(e));
  j["entries"] = entries;
  return j.dump();
}

Superentry superentry_from_json(const std::string& line) {
  json j = json::parse(line);
  Superentry s;
  s.citation = uni::nfc(j.at("citation").get<std::string>());
  s.language = j.at("language").get<std::string>();
  for (const auto& ej : j.at("entries")) s.entries.push_back(entry_from(ej));
  return s;
}

bool entry_equal(const Entry& a, const Entry& b, bool ignore_admin) {
  if (a.sense_id != b.sense_id || a.cat != b.cat || a.dfn != b.dfn ||
      a.ex != b.ex || a.lex_rul != b.lex_rul)
    return false;
  if (!ignore_admin &&
      (a.admin.who != b.admin.who || a.admin.when != b.admin.when))
    return false;
  return tfs::iso_equal(a.syn(), b.syn()) && tfs::iso_equal(a.sem(), b.sem());
}

// ---- Store -----------------------------------------------------------------

void Store::validate_superentry(const Superentry& s) const {
  if (s.citation.empty()) throw error("superentry with empty citation");
  for (const auto& e : s.entries) {
    std::string cit;
    Pos cat;
    int ord;
    split_sense_id(e.sense_id, cit, cat, ord);
    if (cit != s.citation)
      throw error(e.sense_id + ": sense id does not match citation '" +
                  s.citation + "'");
    if (cat != e.cat)
      throw error(e.sense_id + ": cat segment disagrees with cat field " +
                  pos_upper(e.cat));
    if (e.syn_root < 0 || e.sem_root < 0)
      throw error(e.sense_id + ": missing syn or sem zone");
    tfs::check_types(e.syn(), *hier_);
    tfs::check_types(e.sem(), *hier_);
    if (!onto_->has(e.sem_head()))
      throw error(e.sense_id + ": sem head '" + e.sem_head() +
                  "' is not a registered concept");
    // bare coindex references in syn must resolve to sem content
    std::set<int> sem_nodes;
    std::function<void(tfs::View, std::set<int>&)> collect =
        [&](tfs::View v, std::set<int>& out) {
          std::vector<int> stack{v.root};
          while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            if (!out.insert(i).second) continue;
            for (const auto& [_, c] : v.graph->at(i).attrs)
              stack.push_back(c);
          }
        };
    collect(e.sem(), sem_nodes);
    std::set<int> syn_nodes;
    collect(e.syn(), syn_nodes);
    for (int i : syn_nodes) {
      const auto& n = e.graph.at(i);
      if (n.tag >= 0 && n.type == "top" && n.attrs.empty() &&
          !sem_nodes.count(i))
        throw error(e.sense_id + ": syn coindex [" + std::to_string(n.tag) +
                    "] does not resolve inside sem");
    }
  }
}

void Store::check_provenance_acyclic(const Superentry& incoming) const {
  // callers hold the write lock; walk lex_rul sources over store + incoming
  std::map<std::string, const Entry*> ids;
  for (const auto& [_, s] : by_key_)
    for (const auto& e : s.entries) ids[e.sense_id] = &e;
  for (const auto& e : incoming.entries) ids[e.sense_id] = &e;
  for (const auto& e : incoming.entries) {
    std::set<std::string> seen;
    std::vector<std::string> stack{e.sense_id};
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      auto it = ids.find(cur);
      if (it == ids.end()) continue;
      for (const auto& [src, _] : it->second->lex_rul) {
        if (src == e.sense_id)
          throw error(e.sense_id + ": derivational provenance cycle");
        if (seen.insert(src).second) stack.push_back(src);
      }
    }
  }
}

void Store::put_superentry(Superentry s) {
  s.citation = uni::nfc(s.citation);
  validate_superentry(s);
  std::unique_lock lock(mu_);
  check_provenance_acyclic(s);
  by_key_[{s.citation, s.language}] = std::move(s);
}

std::optional<Superentry> Store::get_superentry(
    const std::string& citation, const std::string& language) const {
  std::shared_lock lock(mu_);
  auto it = by_key_.find({uni::nfc(citation), language});
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::optional<Superentry> Store::get_superentry(
    const std::string& citation) const {
  std::shared_lock lock(mu_);
  std::string key = uni::nfc(citation);
  for (const auto& [k, s] : by_key_)
    if (k.first == key) return s;
  return std::nullopt;
}

std::string Store::next_sense_id(const std::string& citation, Pos cat) {
  std::unique_lock lock(mu_);
  std::string key = uni::nfc(citation);
  std::set<int> used;
  for (const auto& [k, s] : by_key_) {
    if (k.first != key) continue;
    for (const auto& e : s.entries)
      if (e.cat == cat) used.insert(e.ordinal());
  }
  int ord = 1;
  auto make = [&] { return key + "-" + pos_upper(cat) + std::to_string(ord); };
  while (used.count(ord) || reserved_ids_.count(make())) ord++;
  std::string id = make();
  reserved_ids_.insert(id);
  return id;
}

std::vector<Entry> Store::lookup_form(const std::string& surface) const {
  std::shared_lock lock(mu_);
  std::string key = uni::nfc(surface);
  std::vector<Entry> out;
  for (const auto& [k, s] : by_key_)
    if (k.first == key)
      for (const auto& e : s.entries) out.push_back(e);
  return out;
}

void Store::admit_entry(const Entry& e, const std::string& language) {
  Superentry next;
  {
    std::shared_lock lock(mu_);
    std::string cit = e.citation();
    auto it = by_key_.find({cit, language});
    if (it != by_key_.end()) next = it->second;
    else {
      next.citation = cit;
      next.language = language;
    }
  }
  for (const auto& existing : next.entries)
    if (existing.sense_id == e.sense_id)
      throw error("sense id already admitted: " + e.sense_id);
  next.entries.push_back(e);
  put_superentry(std::move(next));
}

void Store::add_block(const std::string& sense_id, const std::string& rule_id) {
  std::unique_lock lock(mu_);
  blocklist_.insert({sense_id, rule_id});
}

bool Store::blocked(const std::string& sense_id,
                    const std::string& rule_id) const {
  std::shared_lock lock(mu_);
  return blocklist_.count({sense_id, rule_id}) != 0;
}

std::set<std::pair<std::string, std::string>> Store::blocklist() const {
  std::shared_lock lock(mu_);
  return blocklist_;
}

size_t Store::superentry_count() const {
  std::shared_lock lock(mu_);
  return by_key_.size();
}

size_t Store::entry_count() const {
  std::shared_lock lock(mu_);
  size_t n = 0;
  for (const auto& [_, s] : by_key_) n += s.entries.size();
  return n;
}

std::vector<Superentry> Store::all() const {
  std::shared_lock lock(mu_);
  std::vector<Superentry> out;
  out.reserve(by_key_.size());
  for (const auto& [_, s] : by_key_) out.push_back(s);
  return out;
}

std::string Store::to_text() const {
  std::shared_lock lock(mu_);
  std::ostringstream out;
  for (const auto& [_, s] : by_key_) out << superentry_to_json(s) << "\n";
  json bl = json::array();
  for (const auto& [sense, rule] : blocklist_) bl.push_back({sense, rule});
  out << json{{"blocklist", bl}}.dump() << "\n";
  return out.str();
}

void Store::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("io error: cannot write " + path);
  out << to_text();
  if (!out.good()) throw error("io error while writing " + path);
}

Store Store::load(const std::string& path, const onto::Ontology* ontology,
                  const tfs::TypeHierarchy* hierarchy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("io error: cannot read " + path);
  Store store(ontology, hierarchy);
  std::string line;
  int lineno = 0;
  bool trailer = false;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    if (trailer)
      throw error(path + ":" + std::to_string(lineno) +
                  ": record after blocklist trailer");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw error(path + ":" + std::to_string(lineno) + ": parse error: " +
                  ex.what());
    }
    try {
      if (j.contains("blocklist")) {
        for (const auto& pair : j.at("blocklist"))
          store.blocklist_.insert({pair.at(0).get<std::string>(),
                                   pair.at(1).get<std::string>()});
        trailer = true;
      } else {
        store.put_superentry(superentry_from_json(line));
      }
    } catch (const std::exception& ex) {
      throw error(path + ":" + std::to_string(lineno) + ": parse error: " +
                  ex.what());
    }
  }
  if (!trailer)
    throw error(path + ": parse error: truncated file (missing blocklist "
                "trailer record)");
  return store;
}

}  // namespace lexforge::lex
