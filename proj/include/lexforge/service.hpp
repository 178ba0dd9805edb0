// service.hpp : HTTP facade over lexicon, pipeline and review queue
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

#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "lexforge/pipeline.hpp"

namespace lexforge::svc {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Decision {
  std::string action;  // approve | reject | modify
  int expected_version = 0;
  std::string dfn, ex, sem;  // modify edits; empty = keep
};

// Endpoints:
//   GET  /queue?status=&review=&pos=&rule=&cursor=&limit=
//   POST /candidates/{id}/decision
//   GET  /entries/{sense_id}
//   POST /preview            {"sense_id","rule_id"}
//   POST /acquire            {"verbs":[...],"auto_admit_accepted":bool}
class Service {
 public:
  explicit Service(pipe::Pipeline* pipeline);
  ~Service();

  // empty paths disable persistence (in-memory service)
  std::string lexicon_path;
  std::string queue_path;

  // binds and serves on a background thread; port 0 picks a free port;
  // returns the bound port
  int start(const std::string& host, int port);
  void wait();  // blocks until the server stops
  void stop();

  // decision core, also used directly by tests; throws on conflicts
  pipe::QueueItem decide(const std::string& candidate_id, const Decision& d);

  // what-if application; never persists
  lr::Candidate preview(const std::string& sense_id,
                        const std::string& rule_id);

 private:
  void routes();
  void persist();

  pipe::Pipeline* pipe_;
  std::mutex mu_;  // serializes queue/lexicon mutations
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace lexforge::svc
