// service.cpp : HTTP endpoints for the review workbench
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

#include "lexforge/service.hpp"

#include <algorithm>

#include "httplib.h"
#include "json.hpp"
#include "lexforge/morphgen.hpp"
#include "lexforge/unicode.hpp"

namespace lexforge::svc {

using nlohmann::json;

struct Service::Impl {
  httplib::Server server;
};

Service::Service(pipe::Pipeline* pipeline)
    : pipe_(pipeline), impl_(std::make_unique<Impl>()) {
  routes();
}

Service::~Service() { stop(); }

int Service::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw error("cannot bind " + host);
    thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  } else {
    if (!impl_->server.bind_to_port(host, port))
      throw error("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  }
  impl_->server.wait_until_ready();
  return bound;
}

void Service::wait() {
  if (thread_.joinable()) thread_.join();
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

void Service::persist() {
  if (!lexicon_path.empty()) pipe_->store->save(lexicon_path);
  if (!queue_path.empty() && pipe_->queue) pipe_->queue->save(queue_path);
}

// ---- decision core -----------------------------------------------------------

namespace {

json item_json(const pipe::QueueItem& item) {
  return json::parse(item.to_json());
}

const lex::Entry* find_entry(const lex::Store& store,
                             const std::string& sense_id,
                             std::string* language = nullptr) {
  std::string citation;
  lex::Pos cat;
  int ord;
  lex::split_sense_id(sense_id, citation, cat, ord);
  static thread_local lex::Entry held;  // stable storage for the result
  for (const auto& s : store.all()) {
    if (s.citation != citation) continue;
    for (const auto& e : s.entries)
      if (e.sense_id == sense_id) {
        held = e;
        if (language) *language = s.language;
        return &held;
      }
  }
  return nullptr;
}

}  // namespace

pipe::QueueItem Service::decide(const std::string& candidate_id,
                                const Decision& d) {
  std::lock_guard lock(mu_);
  pipe::QueueItem* item = pipe_->queue->find(candidate_id);
  if (!item) throw error("unknown-candidate");
  if (item->review_status != "pending") throw error("not-pending");
  if (item->version != d.expected_version) throw error("version-conflict");

  if (d.action == "approve" || d.action == "modify") {
    lex::Entry entry = item->candidate.entry;
    if (d.action == "modify") {
      if (!d.dfn.empty()) entry.dfn = d.dfn;
      if (!d.ex.empty()) entry.ex = d.ex;
      if (!d.sem.empty()) {
        // replace the sem zone and rebuild the minimal syn frame around it
        lex::Entry edited;
        edited.sense_id = entry.sense_id;
        edited.cat = entry.cat;
        edited.dfn = entry.dfn;
        edited.ex = entry.ex;
        edited.admin = entry.admin;
        edited.lex_rul = entry.lex_rul;
        edited.lr_item = entry.lr_item;
        tfs::TagScope scope;
        try {
          edited.sem_root = tfs::parse_into(edited.graph, d.sem, scope);
        } catch (const tfs::error& e) {
          throw error(std::string("invalid-edit: ") + e.what());
        }
        edited.syn_root = edited.graph.add_node();
        int root_node = edited.graph.add_node("top", 0);
        int cat_node = edited.graph.add_node(lex::pos_lower(edited.cat));
        edited.graph.set_attr(root_node, "cat", cat_node);
        edited.graph.set_attr(edited.syn_root, "root", root_node);
        edited.graph.set_attr(edited.syn_root, "sem", edited.sem_root);
        entry = std::move(edited);
      }
    }
    // the reserved id may have been taken by an earlier admission
    bool taken = false;
    for (const auto& e : pipe_->store->lookup_form(item->candidate.surface))
      taken = taken || e.sense_id == entry.sense_id;
    if (taken)
      entry.sense_id =
          pipe_->store->next_sense_id(item->candidate.surface, entry.cat);
    try {
      pipe_->store->admit_entry(entry, item->candidate.language);
    } catch (const lex::error& e) {
      throw error(std::string("invalid-edit: ") + e.what());
    }
    item->candidate.entry = entry;
    item->review_status = d.action == "approve" ? "approved" : "modified";
  } else if (d.action == "reject") {
    pipe_->store->add_block(item->candidate.source_sense,
                            lr::chain_key(item->candidate.rule_chain));
    item->review_status = "rejected";
  } else {
    throw error("unknown-decision");
  }
  item->version++;
  persist();
  return *item;
}

lr::Candidate Service::preview(const std::string& sense_id,
                               const std::string& rule_id) {
  const bank::LexicalRule* rule = pipe_->bank->rule_for_label(rule_id);
  if (!rule) throw error("unknown-rule");
  std::string language;
  const lex::Entry* source = find_entry(*pipe_->store, sense_id, &language);
  if (!source) throw error("unknown-sense");

  // surface: itemized override first, else the derived row for this rule
  std::string surface;
  for (const auto& item : source->lr_item)
    if (!item.surface.empty() &&
        pipe_->bank->rule_for_label(item.rule_id) == rule)
      surface = item.surface;
  if (surface.empty()) {
    auto s = pipe_->store->get_superentry(source->citation(), language);
    if (s) {
      for (const auto& df :
           morph::derive_forms(*s, *pipe_->bank, pipe_->depth_limit)) {
        if (df.source_sense != sense_id || df.labels.size() != 1) continue;
        if (pipe_->bank->rule_for_label(df.labels[0]) == rule) {
          surface = df.surface;
          break;
        }
      }
    }
  }
  if (surface.empty())
    throw error("no-surface: rule " + rule_id + " derives no form of " +
                sense_id);

  lr::Context ctx = pipe_->context();
  ctx.reserve_ids = false;  // previews must not consume ordinals
  lr::Candidate c;
  c.entry = lr::apply_rule(*rule, *source, surface, ctx);
  c.surface = surface;
  c.source_sense = sense_id;
  c.rule_chain = {rule->rule_id};
  c.language = language;
  return c;
}

// ---- HTTP routes ---------------------------------------------------------------

void Service::routes() {
  auto& srv = impl_->server;

  srv.Get("/queue", [this](const httplib::Request& req,
                           httplib::Response& res) {
    std::lock_guard lock(mu_);
    std::string status = req.get_param_value("status");
    std::string review = req.get_param_value("review");
    std::string pos = req.get_param_value("pos");
    std::string rule = req.get_param_value("rule");
    std::string cursor = req.get_param_value("cursor");
    size_t limit = 50;
    if (req.has_param("limit"))
      limit = static_cast<size_t>(std::stoul(req.get_param_value("limit")));

    const auto& items = pipe_->queue->items();
    size_t begin = 0;
    if (!cursor.empty()) {
      bool found = false;
      for (size_t i = 0; i < items.size(); ++i)
        if (items[i].candidate_id == cursor) {
          begin = i + 1;
          found = true;
          break;
        }
      if (!found) {
        res.status = 400;
        res.set_content(json{{"error", "bad-cursor"}}.dump(),
                        "application/json");
        return;
      }
    }

    auto matches = [&](const pipe::QueueItem& item) {
      if (!status.empty() && val::status_name(item.verdict.status) != status)
        return false;
      if (!review.empty() && item.review_status != review) return false;
      if (!pos.empty() &&
          lex::pos_lower(item.candidate.entry.cat) != uni::fold_case(pos))
        return false;
      if (!rule.empty()) {
        bool in_chain = false;
        for (const auto& r : item.candidate.rule_chain)
          in_chain = in_chain || r == rule;
        if (!in_chain) return false;
      }
      return true;
    };

    long total = 0;
    for (const auto& item : items)
      if (matches(item)) total++;
    json items_out = json::array();
    std::string last_delivered;
    bool more = false;
    for (size_t i = begin; i < items.size(); ++i) {
      if (!matches(items[i])) continue;
      if (items_out.size() == limit) {
        more = true;
        break;
      }
      items_out.push_back(item_json(items[i]));
      last_delivered = items[i].candidate_id;
    }
    json out;
    out["items"] = std::move(items_out);
    out["total_matching"] = total;
    out["next_cursor"] = more ? json(last_delivered) : json(nullptr);
    res.set_content(out.dump(), "application/json");
  });

  srv.Post(R"(/candidates/([^/]+)/decision)",
           [this](const httplib::Request& req, httplib::Response& res) {
             json body;
             try {
               body = json::parse(req.body);
             } catch (const json::exception&) {
               res.status = 400;
               res.set_content(json{{"error", "bad-json"}}.dump(),
                               "application/json");
               return;
             }
             Decision d;
             d.action = body.value("decision", std::string());
             d.expected_version = body.value("expected_version", 0);
             if (body.contains("edits")) {
               d.dfn = body["edits"].value("dfn", std::string());
               d.ex = body["edits"].value("ex", std::string());
               d.sem = body["edits"].value("sem", std::string());
             }
             try {
               pipe::QueueItem item = decide(req.matches[1], d);
               res.set_content(item_json(item).dump(), "application/json");
             } catch (const error& e) {
               std::string what = e.what();
               res.status = what == "unknown-candidate" ? 404
                            : what.rfind("invalid-edit", 0) == 0 ? 422
                                                                 : 409;
               res.set_content(json{{"error", what}}.dump(),
                               "application/json");
             }
           });

  srv.Get(R"(/entries/([^/]+))", [this](const httplib::Request& req,
                                        httplib::Response& res) {
    const lex::Entry* e = find_entry(*pipe_->store, req.matches[1]);
    if (!e) {
      res.status = 404;
      res.set_content(json{{"error", "unknown-sense"}}.dump(),
                      "application/json");
      return;
    }
    res.set_content(lex::entry_to_json(*e), "application/json");
  });

  srv.Post("/preview", [this](const httplib::Request& req,
                              httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      res.set_content(json{{"error", "bad-json"}}.dump(), "application/json");
      return;
    }
    try {
      lr::Candidate c = preview(body.at("sense_id").get<std::string>(),
                                body.at("rule_id").get<std::string>());
      json out;
      out["entry"] = json::parse(lex::entry_to_json(c.entry));
      out["surface"] = c.surface;
      out["source_sense"] = c.source_sense;
      out["rule_chain"] = c.rule_chain;
      res.set_content(out.dump(), "application/json");
    } catch (const lr::blocked_error& e) {
      res.status = 409;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    } catch (const std::exception& e) {
      std::string what = e.what();
      res.status = what.rfind("unknown", 0) == 0 ? 404 : 422;
      res.set_content(json{{"error", what}}.dump(), "application/json");
    }
  });

  srv.Post("/acquire", [this](const httplib::Request& req,
                              httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      res.set_content(json{{"error", "bad-json"}}.dump(), "application/json");
      return;
    }
    std::lock_guard lock(mu_);
    auto verbs = body.value("verbs", std::vector<std::string>{});
    bool auto_admit = body.value("auto_admit_accepted", false);
    pipe::Report report = pipe_->acquire(verbs, auto_admit);
    persist();
    res.set_content(report.to_json(), "application/json");
  });
}

}  // namespace lexforge::svc
