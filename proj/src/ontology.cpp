// ontology.cpp : mini world model load/save and queries
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

#include "lexforge/ontology.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lexforge::onto {

using nlohmann::json;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Event: return "EVENT";
    case Kind::Object: return "OBJECT";
    case Kind::Property: return "PROPERTY";
  }
  return "OBJECT";
}

Kind kind_from(const std::string& s) {
  if (s == "EVENT") return Kind::Event;
  if (s == "OBJECT") return Kind::Object;
  if (s == "PROPERTY") return Kind::Property;
  throw error("unknown concept kind: " + s);
}

void Ontology::add(Concept c) {
  if (concepts_.count(c.name)) throw error("duplicate concept: " + c.name);
  concepts_[c.name] = std::move(c);
}

bool Ontology::has(const std::string& name) const {
  return concepts_.count(name) != 0;
}

const Concept& Ontology::get(const std::string& name) const {
  auto it = concepts_.find(name);
  if (it == concepts_.end()) throw error("unknown concept: " + name);
  return it->second;
}

bool Ontology::is_a(const std::string& concept_name,
                    const std::string& ancestor) const {
  get(ancestor);
  std::vector<std::string> stack{concept_name};
  std::set<std::string> seen;
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    if (cur == ancestor) return true;
    if (!seen.insert(cur).second) continue;
    for (const auto& p : get(cur).parents) stack.push_back(p);
  }
  return false;
}

std::optional<std::string> Ontology::role_constraint(
    const std::string& concept_name, const std::string& role) const {
  // breadth-first up the parent chain: nearest definition wins
  std::vector<std::string> frontier{concept_name};
  std::set<std::string> seen;
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& name : frontier) {
      if (!seen.insert(name).second) continue;
      const Concept& c = get(name);
      auto it = c.roles.find(role);
      if (it != c.roles.end()) return it->second;
      for (const auto& p : c.parents) next.push_back(p);
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

Kind Ontology::kind_of(const std::string& concept_name) const {
  return get(concept_name).kind;
}

void Ontology::validate() const {
  for (const auto& [name, c] : concepts_) {
    for (const auto& p : c.parents) {
      if (!has(p)) throw error("concept '" + name + "' has unknown parent '" +
                               p + "'");
      if (get(p).kind != c.kind)
        throw error("concept '" + name + "' crosses kind boundary to '" + p +
                    "'");
    }
    for (const auto& [role, filler] : c.roles)
      if (!has(filler))
        throw error("role '" + role + "' of '" + name +
                    "' names unknown concept '" + filler + "'");
  }
  // acyclicity via is_a on a self loop would recurse forever; walk instead
  for (const auto& [name, _] : concepts_) {
    std::set<std::string> seen;
    std::function<void(const std::string&, std::set<std::string>&)> walk =
        [&](const std::string& cur, std::set<std::string>& path) {
          if (path.count(cur)) throw error("cycle through concept " + cur);
          path.insert(cur);
          for (const auto& p : get(cur).parents) walk(p, path);
          path.erase(cur);
        };
    std::set<std::string> path;
    walk(name, path);
  }
  // one root per kind
  std::map<Kind, int> roots;
  for (const auto& [name, c] : concepts_)
    if (c.parents.empty()) roots[c.kind]++;
  for (auto [kind, count] : roots)
    if (count != 1)
      throw error("kind " + kind_name(kind) + " has " +
                  std::to_string(count) + " roots");
}

void Ontology::extend_hierarchy(tfs::TypeHierarchy& h) const {
  // roots hang off "top"; everything else off its concept parents
  std::function<void(const std::string&)> ensure = [&](const std::string& n) {
    if (h.defined(n)) return;
    const Concept& c = get(n);
    for (const auto& p : c.parents) ensure(p);
    h.add(n, c.parents);
  };
  for (const auto& [name, _] : concepts_) ensure(name);
}

static json concept_to_json(const Concept& c) {
  json j;
  j["kind"] = kind_name(c.kind);
  j["name"] = c.name;
  j["parents"] = c.parents;
  json roles = json::object();
  for (const auto& [r, f] : c.roles) roles[r] = f;
  j["roles"] = roles;
  return j;
}

std::string Ontology::to_text() const {
  std::ostringstream out;
  for (const auto& [_, c] : concepts_) out << concept_to_json(c).dump() << "\n";
  return out.str();
}

void Ontology::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write " + path);
  out << to_text();
}

Ontology Ontology::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read " + path);
  Ontology o;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Concept c;
    c.name = j.at("name").get<std::string>();
    c.kind = kind_from(j.at("kind").get<std::string>());
    c.parents = j.at("parents").get<std::vector<std::string>>();
    for (auto it = j.at("roles").begin(); it != j.at("roles").end(); ++it)
      c.roles[it.key()] = it.value().get<std::string>();
    o.add(std::move(c));
  }
  o.validate();
  return o;
}

}  // namespace lexforge::onto
