// validator.hpp : dictionary and corpus checking of generated forms
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
#include <set>
#include <string>
#include <vector>

#include "lexforge/lr_engine.hpp"

namespace lexforge::val {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word-form sets standing in for the MRDs, plus corpus token frequencies.
// Forms are case-folded and NFC-normalized on load.
struct Resources {
  std::vector<std::pair<std::string, std::set<std::string>>> dictionaries;
  std::map<std::string, long> corpus;

  void add_dictionary(const std::string& name,
                      const std::vector<std::string>& forms);
  void load_dictionary_file(const std::string& path);  // name = file stem
  void add_corpus_text(const std::string& text);
  void load_corpus_file(const std::string& path);
};

enum class Status { Accepted, Deferred, Rejected };

std::string status_name(Status s);

struct Verdict {
  Status status = Status::Rejected;
  std::vector<std::pair<std::string, bool>> evidence;  // (dictionary, hit)
  long corpus_count = 0;
};

// accepted <=> some dictionary hit; deferred <=> no hit but attested in
// the corpus; rejected otherwise. Depends on the surface form only.
Verdict judge(const std::string& surface, const Resources& res);

struct Partition {
  std::vector<size_t> accepted, deferred, rejected;  // input order kept
};

Partition validate(const std::vector<lr::Candidate>& candidates,
                   const Resources& res,
                   std::vector<Verdict>* verdicts = nullptr);

// token frequency after normalization; 0 on absence
long corpus_attestation(const std::string& surface, const Resources& res);

// whitespace split, edge punctuation stripped, internal hyphens kept,
// case-folded, NFC
std::vector<std::string> tokenize(const std::string& text);

}  // namespace lexforge::val
