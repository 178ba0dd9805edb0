// tfs.hpp : typed feature structures with coindexation, unification,
//           subsumption and a bracketed textual syntax
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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexforge::tfs {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subtype DAG with a single top type "top". Type names are interned
// strings; the meet of two types with several incomparable common
// subtypes counts as failure (no disjunction).
class TypeHierarchy {
 public:
  TypeHierarchy();

  void add(const std::string& name, const std::vector<std::string>& parents);
  bool defined(const std::string& name) const;

  // reflexive-transitive reachability along parent links
  bool is_a(const std::string& name, const std::string& ancestor) const;

  // greatest lower bound; nullopt when none or ambiguous
  std::optional<std::string> meet(const std::string& a,
                                  const std::string& b) const;

  const std::map<std::string, std::vector<std::string>>& types() const {
    return parents_;
  }

 private:
  std::map<std::string, std::vector<std::string>> parents_;
};

// A rooted attribute-value DAG. Nodes live in an arena; edges are indices.
// Two attributes referencing the same index are one node (reentrancy).
// Tags are the external coindex labels; -1 means untagged.
struct Graph {
  struct Node {
    std::string type = "top";
    int tag = -1;
    std::vector<std::pair<std::string, int>> attrs;  // insertion order kept

    int find_attr(std::string_view name) const;
  };

  std::vector<Node> nodes;

  int add_node(std::string type = "top", int tag = -1);
  Node& at(int i) { return nodes.at(static_cast<size_t>(i)); }
  const Node& at(int i) const { return nodes.at(static_cast<size_t>(i)); }

  // appends an attribute; throws on duplicate name
  void set_attr(int node, const std::string& name, int value);

  // deep-copies the subgraph under root of `src` into this graph,
  // preserving sharing; returns the new root index. The map variant lets
  // several roots (an entry's syn and sem zones) keep their shared nodes.
  int import(const Graph& src, int root);
  int import(const Graph& src, int root, std::map<int, int>& moved);
};

// Borrowed view of one rooted structure inside a Graph.
struct View {
  const Graph* graph = nullptr;
  int root = -1;
};

// Owning rooted structure.
struct Fs {
  Graph graph;
  int root = -1;

  View view() const { return {&graph, root}; }
};

// ---- operations ---------------------------------------------------------

// Least structure subsumed by both, or nullopt when types fail to meet,
// values clash, or merging would create a cycle. Inputs are not modified.
std::optional<Fs> unify(View a, View b, const TypeHierarchy& h);

// true iff every path/type/reentrancy constraint of `general` holds in
// `specific`
bool subsumes(View general, View specific, const TypeHierarchy& h);

// structural equality up to tag renaming
bool iso_equal(View a, View b);

// throws tfs::error naming the first type not present in the hierarchy
void check_types(View v, const TypeHierarchy& h);

// ---- textual syntax ------------------------------------------------------
//
//   fs    := tag? type? block? | tag
//   tag   := '[' digits ']'
//   type  := identifier
//   block := '[' attr (',' attr)* ']'
//   attr  := identifier ':' fs
//
// Occurrences of one tag denote one node; at most one occurrence carries
// content per attribute. Grammar reference: docs/formats.md.

// Tag scope shared across several zones of one entry.
struct TagScope {
  std::map<int, int> tag_to_node;
  std::set<int> content_seen;
};

int parse_into(Graph& g, std::string_view text, TagScope& scope);
Fs parse(std::string_view text);

// Serializer scope: nodes already emitted in an earlier zone serialize as
// bare tag references in later zones.
struct EmitScope {
  std::set<const void*> emitted;  // node identity = &graph.nodes[i]

  // next fresh tag when an untagged shared node must be labeled
  int next_tag = 0;
};

std::string serialize(View v);
std::string serialize(View v, EmitScope& scope);

// highest tag in use under root (-1 when none); feeds fresh-tag counters
int max_tag(View v);

}  // namespace lexforge::tfs
