// pipeline.hpp : acquisition orchestration, review queue, run-time fallback
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
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lexforge/bank.hpp"
#include "lexforge/lexicon.hpp"
#include "lexforge/lr_engine.hpp"
#include "lexforge/validator.hpp"

namespace lexforge::pipe {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  long verbs_processed = 0;
  long senses_processed = 0;
  long candidates_generated = 0;
  double per_sense_mean = 0.0;
  long accepted = 0;
  long deferred = 0;
  long rejected = 0;
  long pending_review = 0;
  std::vector<std::string> unresolved;  // citations that failed to resolve

  std::string to_json() const;
  std::string to_text() const;
};

// Review-queue item; versioned for optimistic concurrency. Validation-
// rejected candidates are archived here for audit and never reach pending.
struct QueueItem {
  std::string candidate_id;
  lr::Candidate candidate;
  val::Verdict verdict;
  std::string review_status = "pending";  // pending|approved|rejected|
                                          // modified|archived
  int version = 1;
  bool fast_track = false;  // dictionary-accepted

  std::string to_json() const;
  static QueueItem from_json(const std::string& line);
};

class Queue {
 public:
  std::string append(lr::Candidate c, val::Verdict v, bool pending);
  QueueItem* find(const std::string& candidate_id);
  const std::vector<QueueItem>& items() const { return items_; }
  long pending_count() const;

  void save(const std::string& path) const;
  static Queue load(const std::string& path);

 private:
  std::vector<QueueItem> items_;
  long next_id_ = 1;
};

struct LookupResult {
  std::vector<lex::Entry> entries;
  std::vector<bool> generated;   // parallel to entries
  int derivations_attempted = 0; // 0 on a direct lexicon hit
};

// Binds one lexicon + one bank + validation resources + the review queue.
class Pipeline {
 public:
  lex::Store* store = nullptr;
  const bank::Bank* bank = nullptr;
  const onto::Ontology* ontology = nullptr;
  const tfs::TypeHierarchy* hierarchy = nullptr;
  const val::Resources* resources = nullptr;
  Queue* queue = nullptr;
  lr::TriggerMode mode = lr::TriggerMode::Hybrid;
  int depth_limit = 2;
  bool persist_runtime_entries = false;

  lr::Context context() const;

  // derive -> expand -> validate -> enqueue; never mutates seed entries
  Report acquire(const std::vector<std::string>& verb_citations,
                 bool auto_admit_accepted = false,
                 std::vector<std::pair<lr::Candidate, val::Verdict>>* audit =
                     nullptr);

  // direct lookup, else reverse morphology + re-derivation; generated
  // entries are ephemeral unless persist_runtime_entries is set
  LookupResult runtime_lookup(const std::string& surface);

  // auto-admits every non-blocked dictionary-accepted candidate that does
  // not collide with an underived homograph; idempotent; returns the
  // number of entries added
  long load_time_expand();

 private:
  std::vector<lr::Candidate> generate(const lex::Superentry& s);
  std::vector<std::string> reverse_citations(const std::string& surface) const;

  std::map<std::string, LookupResult> runtime_cache_;
  std::mutex cache_mu_;
};

}  // namespace lexforge::pipe
