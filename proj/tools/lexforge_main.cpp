// lexforge_main.cpp : command-line front end
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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lexforge/morphgen.hpp"
#include "lexforge/pipeline.hpp"
#include "lexforge/service.hpp"
#include "lexforge/setup.hpp"

namespace {

using namespace lexforge;

struct Config {
  std::string lexicon = "data/seed.lexicon.jsonl";
  std::string ontology = "data/ontology.jsonl";
  std::string bank = "data/banks/spanish.bank.json";
  std::vector<std::string> dicts;
  std::vector<std::string> corpora;
  std::string mode = "hybrid";
  int depth = 2;
  std::string queue;  // default: <lexicon>.queue.jsonl
  std::string log;    // default: <lexicon>.run.log
  std::string format = "tsv";

  std::string queue_path() const {
    return queue.empty() ? lexicon + ".queue.jsonl" : queue;
  }
  std::string log_path() const {
    return log.empty() ? lexicon + ".run.log" : log;
  }
};

struct App {
  onto::Ontology ontology;
  bank::Bank bank;
  tfs::TypeHierarchy hierarchy;
  std::unique_ptr<lex::Store> store;
  val::Resources resources;
  pipe::Queue queue;
  pipe::Pipeline pipeline;

  explicit App(const Config& cfg) {
    ontology = onto::Ontology::load(cfg.ontology);
    bank = bank::Bank::load(cfg.bank);
    hierarchy = make_hierarchy(ontology, {&bank});
    store = std::make_unique<lex::Store>(
        lex::Store::load(cfg.lexicon, &ontology, &hierarchy));
    for (const auto& d : cfg.dicts) resources.load_dictionary_file(d);
    for (const auto& c : cfg.corpora) resources.load_corpus_file(c);
    if (std::filesystem::exists(cfg.queue_path()))
      queue = pipe::Queue::load(cfg.queue_path());
    pipeline.store = store.get();
    pipeline.bank = &bank;
    pipeline.ontology = &ontology;
    pipeline.hierarchy = &hierarchy;
    pipeline.resources = &resources;
    pipeline.queue = &queue;
    pipeline.mode = lr::mode_from(cfg.mode);
    pipeline.depth_limit = cfg.depth;
  }
};

std::vector<std::string> read_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(
                                line.back())))
      line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    out.push_back(line.substr(start));
  }
  return out;
}

void print_entry(const lex::Entry& e) {
  std::cout << e.sense_id << "\n"
            << "  cat:     " << lex::pos_upper(e.cat) << "\n"
            << "  dfn:     " << e.dfn << "\n"
            << "  ex:      " << e.ex << "\n"
            << "  admin:   " << e.admin.who << " \"" << e.admin.when << "\"\n";
  tfs::EmitScope scope;
  std::string sem = tfs::serialize(e.sem(), scope);
  std::string syn = tfs::serialize(e.syn(), scope);
  std::cout << "  syn:     " << syn << "\n"
            << "  sem:     " << sem << "\n";
  if (!e.lex_rul.empty()) {
    std::cout << "  lex-rul:";
    for (const auto& [src, rule] : e.lex_rul)
      std::cout << " " << src << " \"" << rule << "\"";
    std::cout << "\n";
  }
}

std::string preview_surface(App& app, const lex::Entry& source,
                            const bank::LexicalRule* rule) {
  for (const auto& item : source.lr_item)
    if (!item.surface.empty() &&
        app.bank.rule_for_label(item.rule_id) == rule)
      return item.surface;
  auto s = app.store->get_superentry(source.citation());
  if (s) {
    for (const auto& df :
         morph::derive_forms(*s, app.bank, app.pipeline.depth_limit))
      if (df.source_sense == source.sense_id && df.labels.size() == 1 &&
          app.bank.rule_for_label(df.labels[0]) == rule)
        return df.surface;
  }
  throw std::runtime_error("rule " + rule->rule_id +
                           " derives no surface for " + source.sense_id);
}

int run(int argc, char** argv) {
  CLI::App cli{"lexforge — lexical-rule lexicon acquisition toolkit"};
  cli.require_subcommand(1);
  Config cfg;
  cli.add_option("--lexicon", cfg.lexicon, "lexicon file (JSONL)");
  cli.add_option("--ontology", cfg.ontology, "ontology file (JSONL)");
  cli.add_option("--bank", cfg.bank, "rule bank file (JSON)");
  cli.add_option("--dict", cfg.dicts, "dictionary word list (repeatable)");
  cli.add_option("--corpus", cfg.corpora, "corpus text file (repeatable)");
  cli.add_option("--mode", cfg.mode, "trigger mode: itemized|lhs|hybrid");
  cli.add_option("--depth", cfg.depth, "affix chain depth limit");
  cli.add_option("--queue", cfg.queue, "review queue file");
  cli.add_option("--log", cfg.log, "run log file");
  cli.add_option("--format", cfg.format, "output format: tsv|structured");

  // derive
  std::string citation;
  auto* cmd_derive =
      cli.add_subcommand("derive", "morpho-semantic derivations of a verb");
  cmd_derive->add_option("citation", citation)->required();

  // apply
  std::string sense_id, rule_id;
  auto* cmd_apply =
      cli.add_subcommand("apply", "apply one lexical rule to one sense");
  cmd_apply->add_option("sense_id", sense_id)->required();
  cmd_apply->add_option("rule_id", rule_id)->required();

  // acquire / validate / stats
  std::string verbs_file;
  bool auto_admit = false;
  auto* cmd_acquire =
      cli.add_subcommand("acquire", "run the acquisition pipeline");
  cmd_acquire->add_option("--verbs", verbs_file, "verb list file")->required();
  cmd_acquire->add_flag("--auto-admit-accepted", auto_admit,
                        "admit dictionary-accepted candidates without review");

  auto* cmd_validate = cli.add_subcommand(
      "validate", "generate candidates and print validation verdicts");
  cmd_validate->add_option("--verbs", verbs_file, "verb list file")
      ->required();

  auto* cmd_stats =
      cli.add_subcommand("stats", "dry-run acquisition statistics");
  cmd_stats->add_option("--verbs", verbs_file, "verb list file")->required();

  // lookup
  std::string surface;
  auto* cmd_lookup =
      cli.add_subcommand("lookup", "direct lookup with run-time fallback");
  cmd_lookup->add_option("surface", surface)->required();

  // serve
  std::string addr = "127.0.0.1:8787";
  auto* cmd_serve = cli.add_subcommand("serve", "start the review service");
  cmd_serve->add_option("--addr", addr, "host:port");

  // export
  auto* cmd_export =
      cli.add_subcommand("export", "canonical lexicon dump to stdout");

  for (CLI::App* sub : cli.get_subcommands([](const CLI::App*) {
         return true;
       }))
    sub->fallthrough();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << cli.help();
      return 0;
    }
    std::cerr << e.what() << "\n" << cli.help();
    return 2;
  }

  App app(cfg);

  if (*cmd_derive) {
    auto s = app.store->get_superentry(citation);
    if (!s) throw std::runtime_error("unknown citation form: " + citation);
    for (const auto& df : morph::derive_forms(*s, app.bank, cfg.depth))
      std::cout << morph::tsv_row(df) << "\n";
    return 0;
  }

  if (*cmd_apply) {
    const bank::LexicalRule* rule = app.bank.rule_for_label(rule_id);
    if (!rule) throw std::runtime_error("unknown rule id: " + rule_id);
    auto entries = app.store->lookup_form(sense_id.substr(
        0, sense_id.rfind('-')));
    const lex::Entry* source = nullptr;
    for (const auto& e : entries)
      if (e.sense_id == sense_id) source = &e;
    if (!source) throw std::runtime_error("unknown sense id: " + sense_id);
    std::string out_surface = preview_surface(app, *source, rule);
    lr::Context ctx = app.pipeline.context();
    lex::Entry result = lr::apply_rule(*rule, *source, out_surface, ctx);
    std::cout << "== source\n";
    print_entry(*source);
    std::cout << "== result (" << out_surface << ")\n";
    print_entry(result);
    return 0;
  }

  if (*cmd_acquire || *cmd_validate || *cmd_stats) {
    auto verbs = read_list_file(verbs_file);
    std::vector<std::pair<lr::Candidate, val::Verdict>> audit;
    bool dry = !*cmd_acquire;
    if (dry) app.pipeline.queue = nullptr;  // stats/validate leave no trace
    pipe::Report report = app.pipeline.acquire(verbs, auto_admit, &audit);

    if (*cmd_validate) {
      for (const auto& [cand, verdict] : audit) {
        std::string ev;
        for (const auto& [name, hit] : verdict.evidence) {
          if (!ev.empty()) ev += ",";
          ev += name + (hit ? ":hit" : ":miss");
        }
        if (verdict.corpus_count > 0) {
          if (!ev.empty()) ev += ",";
          ev += "corpus:" + std::to_string(verdict.corpus_count);
        }
        std::cout << cand.surface << "\t" << lex::pos_lower(cand.entry.cat)
                  << "\t" << val::status_name(verdict.status) << "\t" << ev
                  << "\n";
      }
      return 0;
    }
    if (*cmd_stats) {
      std::cout << report.to_text();
      std::cout << "comparison: observed per-sense mean "
                << report.per_sense_mean
                << " vs 25/sense from the original large-scale Spanish run "
                   "(full bank; comparison only, not a check)\n";
      return 0;
    }
    // acquire: persist queue + store, write run log, report to stdout
    app.queue.save(cfg.queue_path());
    app.store->save(cfg.lexicon);
    std::ofstream log(cfg.log_path(), std::ios::app);
    for (const auto& [cand, verdict] : audit)
      log << cand.surface << "\t" << lex::pos_lower(cand.entry.cat) << "\t"
          << val::status_name(verdict.status) << "\t"
          << lr::chain_key(cand.rule_chain) << "\t" << cand.source_sense
          << "\n";
    log << "# " << report.to_json() << "\n";
    std::cout << report.to_json() << "\n";
    return 0;
  }

  if (*cmd_lookup) {
    pipe::LookupResult r = app.pipeline.runtime_lookup(surface);
    for (size_t i = 0; i < r.entries.size(); ++i) {
      std::vector<std::string> ids;
      for (const auto& [_, rid] : r.entries[i].lex_rul) ids.push_back(rid);
      std::cout << r.entries[i].sense_id << "\t"
                << (r.generated[i] ? "generated" : "stored") << "\t"
                << lr::chain_key(ids) << "\n";
    }
    std::cerr << "derivations attempted: " << r.derivations_attempted << "\n";
    return 0;
  }

  if (*cmd_serve) {
    auto colon = addr.rfind(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--addr must be host:port");
    std::string host = addr.substr(0, colon);
    int port = std::stoi(addr.substr(colon + 1));
    svc::Service service(&app.pipeline);
    service.lexicon_path = cfg.lexicon;
    service.queue_path = cfg.queue_path();
    int bound = service.start(host, port);
    std::cerr << "serving on " << host << ":" << bound << "\n";
    service.wait();
    return 0;
  }

  if (*cmd_export) {
    if (cfg.format == "tsv") {
      for (const auto& s : app.store->all())
        for (const auto& e : s.entries)
          std::cout << e.sense_id << "\t" << lex::pos_lower(e.cat) << "\t"
                    << s.citation << "\t" << s.language << "\t"
                    << e.sem_head() << "\t" << e.dfn << "\n";
    } else {
      std::cout << app.store->to_text();
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "lexforge: " << e.what() << "\n";
    return 1;
  }
}
