// Copyright 2026 The pricetree Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the C API: generate, verify, render, eval,
// report. Every command exits nonzero on any failure.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pricetree/pricetree.h"

namespace {

struct DatasetDeleter {
  void operator()(pt_dataset* d) const { pt_dataset_free(d); }
};
struct RecordsDeleter {
  void operator()(pt_records* r) const { pt_records_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { pt_string_free(s); }
};
using DatasetPtr = std::unique_ptr<pt_dataset, DatasetDeleter>;
using RecordsPtr = std::unique_ptr<pt_records, RecordsDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int Report(pt_status status, const char* what) {
  std::fprintf(stderr, "pricetree: %s failed [%s]: %s\n", what, pt_status_name(status),
               pt_last_error());
  return 1;
}

DatasetPtr LoadDataset(const std::string& path, int& rc) {
  pt_dataset* raw = nullptr;
  if (const pt_status s = pt_dataset_load(path.c_str(), &raw); s != PT_OK) {
    rc = Report(s, "loading dataset");
    return nullptr;
  }
  return DatasetPtr(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paired answerable/unanswerable math word problem generator and evaluator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pt_version());

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a certified corpus as JSONL");
  std::string config_path, preset, out_path;
  std::optional<uint64_t> seed;
  unsigned threads = 0;
  auto* config_opt = gen->add_option("--config", config_path, "key = value config file");
  auto* preset_opt = gen->add_option("--preset", preset, "table-main | fig-structure | fig-cutdepth");
  config_opt->excludes(preset_opt);
  gen->add_option("--out", out_path, "output JSONL path")->required();
  gen->add_option("--seed", seed, "corpus seed (overrides corpusSeed)");
  gen->add_option("--threads", threads, "generation workers (0 = all cores)");

  // verify
  auto* ver = app.add_subcommand("verify", "Re-certify every instance of a corpus");
  std::string verify_in;
  ver->add_option("--in", verify_in, "corpus JSONL")->required();

  // render
  auto* ren = app.add_subcommand("render", "Pretty-print one instance");
  std::string render_in, render_id;
  ren->add_option("--in", render_in, "corpus JSONL")->required();
  ren->add_option("--id", render_id, "instance id")->required();

  // eval
  auto* ev = app.add_subcommand("eval", "Query a model on a corpus and score the answers");
  std::string eval_in, profile_path, mode = "zero", pool_path, transport, eval_out, variant;
  uint64_t eval_seed = 0;
  int concurrency = 0;
  ev->add_option("--in", eval_in, "corpus JSONL")->required();
  ev->add_option("--profile", profile_path, "model profile JSON")->required();
  ev->add_option("--mode", mode, "zero | few")->check(CLI::IsMember({"zero", "few"}));
  ev->add_option("--pool", pool_path, "few-shot exemplar corpus");
  ev->add_option("--transport", transport, "live | replay:<file> | mock:<name>")->required();
  ev->add_option("--out", eval_out, "records JSONL")->required();
  ev->add_option("--variant", variant, "answerable | unanswerable (default: both)")
      ->check(CLI::IsMember({"answerable", "unanswerable"}));
  ev->add_option("--seed", eval_seed, "few-shot exemplar seed");
  ev->add_option("--concurrency", concurrency, "max in-flight requests (overrides profile)");

  // report
  auto* rep = app.add_subcommand("report", "Aggregate scored records into tables and CSV");
  std::string report_in, group = "ansDepth", report_out;
  rep->add_option("--in", report_in, "records JSONL")->required();
  rep->add_option("--group", group, "comma-separated keys, e.g. ansDepth,cutDepth");
  rep->add_option("--out", report_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  int rc = 0;
  if (gen->parsed()) {
    if (config_path.empty() == preset.empty()) {
      std::fprintf(stderr, "pricetree: generate needs exactly one of --config or --preset\n");
      return 1;
    }
    pt_dataset* raw = nullptr;
    const pt_status s =
        preset.empty()
            ? pt_generate_from_config_file(config_path.c_str(), seed ? &*seed : nullptr, threads,
                                           &raw)
            : pt_generate_preset(preset.c_str(), seed.value_or(0), threads, &raw);
    if (s != PT_OK) return Report(s, "generation");
    DatasetPtr data(raw);
    if (const pt_status w = pt_dataset_save(data.get(), out_path.c_str()); w != PT_OK) {
      return Report(w, "writing corpus");
    }
    std::printf("wrote %zu instances (%zu pairs, all certified) to %s\n",
                pt_dataset_size(data.get()), pt_dataset_size(data.get()) / 2, out_path.c_str());
    return 0;
  }

  if (ver->parsed()) {
    DatasetPtr data = LoadDataset(verify_in, rc);
    if (!data) return rc;
    pt_certification summary{};
    char* text = nullptr;
    const pt_status s = pt_dataset_certify(data.get(), &summary, &text);
    StringPtr owned(text);
    if (text) std::fputs(text, stdout);
    if (s != PT_OK) return Report(s, "verification");
    return 0;
  }

  if (ren->parsed()) {
    DatasetPtr data = LoadDataset(render_in, rc);
    if (!data) return rc;
    char* text = nullptr;
    if (const pt_status s = pt_dataset_render(data.get(), render_id.c_str(), &text); s != PT_OK) {
      return Report(s, "render");
    }
    StringPtr owned(text);
    std::fputs(text, stdout);
    return 0;
  }

  if (ev->parsed()) {
    DatasetPtr data = LoadDataset(eval_in, rc);
    if (!data) return rc;
    DatasetPtr pool;
    if (!pool_path.empty()) {
      pool = LoadDataset(pool_path, rc);
      if (!pool) return rc;
    }
    pt_eval_options options{};
    options.profile_path = profile_path.c_str();
    options.mode = mode.c_str();
    options.transport = transport.c_str();
    options.pool = pool.get();
    options.variant = variant.empty() ? nullptr : variant.c_str();
    options.seed = eval_seed;
    options.concurrency = concurrency;
    pt_records* raw = nullptr;
    if (const pt_status s = pt_evaluate(data.get(), &options, &raw); s != PT_OK) {
      return Report(s, "evaluation");
    }
    RecordsPtr records(raw);
    if (const pt_status s = pt_records_save(records.get(), eval_out.c_str()); s != PT_OK) {
      return Report(s, "writing records");
    }
    pt_eval_summary sum{};
    pt_records_summary(records.get(), &sum);
    std::printf("%zu records -> %s (unanswerable %zu, hallucinations %zu; answerable %zu, "
                "correct %zu, false-unanswerable %zu; excluded %zu)\n",
                sum.records, eval_out.c_str(), sum.unanswerable, sum.hallucinations,
                sum.answerable, sum.correct, sum.false_unanswerable, sum.excluded);
    return 0;
  }

  if (rep->parsed()) {
    pt_records* raw = nullptr;
    if (const pt_status s = pt_records_load(report_in.c_str(), &raw); s != PT_OK) {
      return Report(s, "loading records");
    }
    RecordsPtr records(raw);
    char* table = nullptr;
    if (const pt_status s = pt_report(records.get(), group.c_str(), report_out.c_str(), &table);
        s != PT_OK) {
      return Report(s, "report");
    }
    StringPtr owned(table);
    std::fputs(table, stdout);
    return 0;
  }
  return 1;
}
