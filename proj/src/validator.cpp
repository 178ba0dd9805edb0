// validator.cpp : MRD / corpus checking
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

#include "lexforge/validator.hpp"

#include <fstream>
#include <sstream>

#include "lexforge/unicode.hpp"

namespace lexforge::val {

namespace {

std::string norm(const std::string& s) { return uni::fold_case(s); }

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Accepted: return "accepted";
    case Status::Deferred: return "deferred";
    case Status::Rejected: return "rejected";
  }
  return "rejected";
}

void Resources::add_dictionary(const std::string& name,
                               const std::vector<std::string>& forms) {
  for (const auto& [n, _] : dictionaries)
    if (n == name) throw error("duplicate dictionary name: " + name);
  std::set<std::string> folded;
  for (const auto& f : forms) folded.insert(norm(f));
  dictionaries.emplace_back(name, std::move(folded));
}

void Resources::load_dictionary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("resource-load-failure: cannot read " + path);
  std::vector<std::string> forms;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r'))
      line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    forms.push_back(line.substr(start));
  }
  add_dictionary(file_stem(path), forms);
}

void Resources::add_corpus_text(const std::string& text) {
  for (const auto& tok : tokenize(text)) corpus[tok]++;
}

void Resources::load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("resource-load-failure: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  add_corpus_text(buf.str());
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  auto cps = uni::decode(text);
  auto is_space = [](char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
           c == U'\v';
  };
  auto is_word = [](char32_t c) {
    return (c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') ||
           (c >= U'A' && c <= U'Z') || c >= 0x80;
  };
  size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) i++;
    size_t start = i;
    while (i < cps.size() && !is_space(cps[i])) i++;
    if (i == start) break;
    std::vector<char32_t> tok(cps.begin() + static_cast<long>(start),
                              cps.begin() + static_cast<long>(i));
    // strip edge punctuation; hyphens survive only word-internally
    size_t a = 0, b = tok.size();
    while (a < b && !is_word(tok[a])) a++;
    while (b > a && !is_word(tok[b - 1])) b--;
    if (a >= b) continue;
    out.push_back(norm(uni::encode(
        std::vector<char32_t>(tok.begin() + static_cast<long>(a),
                              tok.begin() + static_cast<long>(b)))));
  }
  return out;
}

Verdict judge(const std::string& surface, const Resources& res) {
  std::string key = norm(surface);
  Verdict v;
  bool hit = false;
  for (const auto& [name, forms] : res.dictionaries) {
    bool found = forms.count(key) != 0;
    v.evidence.emplace_back(name, found);
    hit = hit || found;
  }
  auto it = res.corpus.find(key);
  v.corpus_count = it == res.corpus.end() ? 0 : it->second;
  v.status = hit ? Status::Accepted
                 : (v.corpus_count > 0 ? Status::Deferred : Status::Rejected);
  return v;
}

Partition validate(const std::vector<lr::Candidate>& candidates,
                   const Resources& res, std::vector<Verdict>* verdicts) {
  Partition p;
  if (verdicts) verdicts->clear();
  for (size_t i = 0; i < candidates.size(); ++i) {
    Verdict v = judge(candidates[i].surface, res);
    switch (v.status) {
      case Status::Accepted: p.accepted.push_back(i); break;
      case Status::Deferred: p.deferred.push_back(i); break;
      case Status::Rejected: p.rejected.push_back(i); break;
    }
    if (verdicts) verdicts->push_back(std::move(v));
  }
  return p;
}

long corpus_attestation(const std::string& surface, const Resources& res) {
  auto it = res.corpus.find(norm(surface));
  return it == res.corpus.end() ? 0 : it->second;
}

}  // namespace lexforge::val
