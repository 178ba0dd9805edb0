// tfs.cpp : typed feature structure unification, subsumption, text syntax
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

#include "lexforge/tfs.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace lexforge::tfs {

// ---- TypeHierarchy -------------------------------------------------------

TypeHierarchy::TypeHierarchy() { parents_["top"] = {}; }

void TypeHierarchy::add(const std::string& name,
                        const std::vector<std::string>& parents) {
  for (const auto& p : parents) {
    if (!defined(p)) throw error("unknown parent type: " + p);
  }
  auto [it, fresh] = parents_.emplace(name, parents);
  if (!fresh) {
    // merging repeated registrations keeps loaders simple
    for (const auto& p : parents)
      if (std::find(it->second.begin(), it->second.end(), p) ==
          it->second.end())
        it->second.push_back(p);
  }
  if (name != "top" && it->second.empty()) it->second.push_back("top");
}

bool TypeHierarchy::defined(const std::string& name) const {
  return parents_.count(name) != 0;
}

bool TypeHierarchy::is_a(const std::string& name,
                         const std::string& ancestor) const {
  if (!defined(name) || !defined(ancestor))
    throw error("unknown type: " + (defined(name) ? ancestor : name));
  if (name == ancestor || ancestor == "top") return true;
  std::vector<const std::string*> stack{&name};
  std::set<std::string> seen;
  while (!stack.empty()) {
    const std::string& cur = *stack.back();
    stack.pop_back();
    if (cur == ancestor) return true;
    if (!seen.insert(cur).second) continue;
    for (const auto& p : parents_.at(cur)) stack.push_back(&p);
  }
  return false;
}

std::optional<std::string> TypeHierarchy::meet(const std::string& a,
                                               const std::string& b) const {
  if (is_a(a, b)) return a;
  if (is_a(b, a)) return b;
  // common subtypes of both; succeed only when one of them tops the set
  std::vector<std::string> common;
  for (const auto& [t, _] : parents_)
    if (is_a(t, a) && is_a(t, b)) common.push_back(t);
  if (common.empty()) return std::nullopt;
  for (const auto& c : common) {
    bool tops = true;
    for (const auto& other : common)
      if (!is_a(other, c)) {
        tops = false;
        break;
      }
    if (tops) return c;
  }
  return std::nullopt;
}

// ---- Graph ---------------------------------------------------------------

int Graph::Node::find_attr(std::string_view name) const {
  for (size_t i = 0; i < attrs.size(); ++i)
    if (attrs[i].first == name) return static_cast<int>(i);
  return -1;
}

int Graph::add_node(std::string type, int tag) {
  nodes.push_back(Node{std::move(type), tag, {}});
  return static_cast<int>(nodes.size()) - 1;
}

void Graph::set_attr(int node, const std::string& name, int value) {
  Node& n = at(node);
  if (n.find_attr(name) >= 0)
    throw error("duplicate attribute '" + name + "'");
  n.attrs.emplace_back(name, value);
}

int Graph::import(const Graph& src, int root, std::map<int, int>& moved) {
  std::function<int(int)> copy = [&](int i) -> int {
    auto it = moved.find(i);
    if (it != moved.end()) return it->second;
    int ni = add_node(src.at(i).type, src.at(i).tag);
    moved[i] = ni;
    for (const auto& [name, child] : src.at(i).attrs) {
      int nc = copy(child);
      at(ni).attrs.emplace_back(name, nc);
    }
    return ni;
  };
  return copy(root);
}

int Graph::import(const Graph& src, int root) {
  std::map<int, int> moved;
  return import(src, root, moved);
}

// ---- unification ---------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

std::optional<Fs> unify(View a, View b, const TypeHierarchy& h) {
  check_types(a, h);
  check_types(b, h);

  // workspace: both graphs side by side
  Graph work;
  int ra = work.import(*a.graph, a.root);
  int rb = work.import(*b.graph, b.root);

  UnionFind uf(work.nodes.size());
  std::vector<std::pair<int, int>> todo{{ra, rb}};
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    x = uf.find(x);
    y = uf.find(y);
    if (x == y) continue;
    auto met = h.meet(work.at(x).type, work.at(y).type);
    if (!met) return std::nullopt;
    uf.merge(y, x);
    work.at(x).type = *met;
    // fold y's attributes into x, queueing recursive merges
    for (const auto& [name, child] : work.at(y).attrs) {
      int slot = work.at(x).find_attr(name);
      if (slot < 0) {
        work.at(x).attrs.emplace_back(name, child);
      } else {
        todo.emplace_back(work.at(x).attrs[static_cast<size_t>(slot)].second,
                          child);
      }
    }
    work.at(y).attrs.clear();
  }

  // extract representative graph; reject cycles introduced by coindexation
  Fs out;
  std::map<int, int> built;
  std::set<int> in_progress;
  std::function<int(int)> build = [&](int i) -> int {
    i = uf.find(i);
    auto it = built.find(i);
    if (it != built.end()) return it->second;
    if (!in_progress.insert(i).second) return -1;  // cycle
    int ni = out.graph.add_node(work.at(i).type);
    built[i] = ni;
    for (const auto& [name, child] : work.at(i).attrs) {
      int nc = build(child);
      if (nc < 0) return -1;
      out.graph.at(ni).attrs.emplace_back(name, nc);
    }
    in_progress.erase(i);
    return ni;
  };
  out.root = build(ra);
  if (out.root < 0) return std::nullopt;

  // fresh tags for nodes that ended up shared
  std::vector<int> indegree(out.graph.nodes.size(), 0);
  for (const auto& n : out.graph.nodes)
    for (const auto& [_, c] : n.attrs) indegree[static_cast<size_t>(c)]++;
  int next = 0;
  for (size_t i = 0; i < out.graph.nodes.size(); ++i)
    if (indegree[i] > 1) out.graph.nodes[i].tag = next++;
  return out;
}

bool subsumes(View general, View specific, const TypeHierarchy& h) {
  check_types(general, h);
  check_types(specific, h);
  std::map<int, int> mapped;  // general node -> specific node
  std::function<bool(int, int)> walk = [&](int g, int s) -> bool {
    auto it = mapped.find(g);
    if (it != mapped.end()) return it->second == s;  // reentrancy must hold
    mapped[g] = s;
    const auto& gn = general.graph->at(g);
    const auto& sn = specific.graph->at(s);
    if (!h.is_a(sn.type, gn.type)) return false;
    for (const auto& [name, gc] : gn.attrs) {
      int slot = sn.find_attr(name);
      if (slot < 0) return false;
      if (!walk(gc, sn.attrs[static_cast<size_t>(slot)].second)) return false;
    }
    return true;
  };
  return walk(general.root, specific.root);
}

bool iso_equal(View a, View b) {
  std::map<int, int> fwd, bwd;
  std::function<bool(int, int)> walk = [&](int x, int y) -> bool {
    auto fx = fwd.find(x);
    auto fy = bwd.find(y);
    if (fx != fwd.end() || fy != bwd.end())
      return fx != fwd.end() && fy != bwd.end() && fx->second == y &&
             fy->second == x;
    fwd[x] = y;
    bwd[y] = x;
    const auto& xn = a.graph->at(x);
    const auto& yn = b.graph->at(y);
    if (xn.type != yn.type || xn.attrs.size() != yn.attrs.size()) return false;
    for (const auto& [name, xc] : xn.attrs) {
      int slot = yn.find_attr(name);
      if (slot < 0) return false;
      if (!walk(xc, yn.attrs[static_cast<size_t>(slot)].second)) return false;
    }
    return true;
  };
  return walk(a.root, b.root);
}

void check_types(View v, const TypeHierarchy& h) {
  std::set<int> seen;
  std::function<void(int)> walk = [&](int i) {
    if (!seen.insert(i).second) return;
    const auto& n = v.graph->at(i);
    if (!h.defined(n.type)) throw error("ill-typed input: unknown type '" +
                                        n.type + "'");
    for (const auto& [_, c] : n.attrs) walk(c);
  };
  walk(v.root);
}

// ---- parser ---------------------------------------------------------------

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;
  Graph* g;
  TagScope* scope;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                    text[pos])))
      pos++;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw error("fs parse error at offset " + std::to_string(pos) + ": " +
                msg);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    pos++;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || static_cast<unsigned char>(c) >= 0x80;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) pos++;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  // '[' already seen to be next; distinguishes "[12]" tags from blocks
  bool next_is_tag() {
    skip_ws();
    size_t p = pos;
    if (p >= text.size() || text[p] != '[') return false;
    p++;
    size_t digits = 0;
    while (p < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[p]))) {
      p++;
      digits++;
    }
    return digits > 0 && p < text.size() && text[p] == ']';
  }

  int node_for_tag(int tag) {
    auto it = scope->tag_to_node.find(tag);
    if (it != scope->tag_to_node.end()) return it->second;
    int n = g->add_node("top", tag);
    scope->tag_to_node[tag] = n;
    return n;
  }

  int parse_fs() {
    int node = -1;
    int tag = -1;
    if (next_is_tag()) {
      expect('[');
      std::string digits = ident();
      expect(']');
      tag = std::stoi(digits);
      node = node_for_tag(tag);
    }

    bool has_type = false;
    std::string type;
    if (!eof() && peek() != '[' && peek() != ',' && peek() != ']') {
      type = ident();
      has_type = true;
    }

    bool has_block = peek() == '[' && !next_is_tag();
    if (node < 0) node = g->add_node();
    if (has_type || has_block) {
      if (tag >= 0 && !scope->content_seen.insert(node).second)
        fail("tag [" + std::to_string(tag) + "] carries content twice");
    }
    if (has_type) {
      if (g->at(node).type != "top" && g->at(node).type != type)
        fail("conflicting types for tag [" + std::to_string(tag) + "]");
      g->at(node).type = type;
    }
    if (has_block) {
      expect('[');
      if (peek() != ']') {
        while (true) {
          std::string attr = ident();
          expect(':');
          int child = parse_fs();
          g->set_attr(node, attr, child);
          if (peek() != ',') break;
          pos++;
        }
      }
      expect(']');
    }
    if (!has_type && !has_block && tag < 0) fail("empty structure");
    return node;
  }
};

}  // namespace

int parse_into(Graph& g, std::string_view text, TagScope& scope) {
  Parser p{text, 0, &g, &scope};
  int root = p.parse_fs();
  if (!p.eof()) p.fail("trailing input");
  return root;
}

Fs parse(std::string_view text) {
  Fs fs;
  TagScope scope;
  fs.root = parse_into(fs.graph, text, scope);
  return fs;
}

// ---- serializer ------------------------------------------------------------

namespace {

void emit(const Graph& g, int i, EmitScope& scope, std::string& out) {
  const Graph::Node& n = g.at(i);
  const void* id = &n;
  bool already = scope.emitted.count(id) != 0;
  if (n.tag >= 0) {
    out += "[" + std::to_string(n.tag) + "]";
    if (already) return;  // bare back-reference
    if (n.type != "top" || !n.attrs.empty()) out += " ";
  } else if (already) {
    // untagged shared node: should not happen for well-formed entries,
    // serialize content again (tree view)
  }
  scope.emitted.insert(id);
  if (n.type != "top") out += n.type;
  if (!n.attrs.empty()) {
    if (n.type != "top") out += " ";
    out += "[";
    bool first = true;
    for (const auto& [name, child] : n.attrs) {
      if (!first) out += ", ";
      first = false;
      out += name + ": ";
      emit(g, child, scope, out);
    }
    out += "]";
  }
  if (n.tag < 0 && n.type == "top" && n.attrs.empty()) out += "top";
}

}  // namespace

std::string serialize(View v, EmitScope& scope) {
  std::string out;
  emit(*v.graph, v.root, scope, out);
  return out;
}

std::string serialize(View v) {
  EmitScope scope;
  return serialize(v, scope);
}

int max_tag(View v) {
  int best = -1;
  std::set<int> seen;
  std::function<void(int)> walk = [&](int i) {
    if (!seen.insert(i).second) return;
    best = std::max(best, v.graph->at(i).tag);
    for (const auto& [_, c] : v.graph->at(i).attrs) walk(c);
  };
  walk(v.root);
  return best;
}

}  // namespace lexforge::tfs
