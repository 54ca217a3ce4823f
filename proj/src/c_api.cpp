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

#include "pricetree/pricetree.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "pricetree/dataset.hpp"
#include "pricetree/error.hpp"
#include "pricetree/eval.hpp"

struct pt_dataset {
  pricetree::Dataset value;
};

struct pt_records {
  std::vector<pricetree::eval::EvalRecord> value;
};

namespace {

thread_local std::string g_last_error;

pt_status ToStatus(pricetree::ErrorCode code) {
  using pricetree::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidConfig: return PT_ERR_INVALID_CONFIG;
    case ErrorCode::kParse: return PT_ERR_PARSE;
    case ErrorCode::kCertification: return PT_ERR_CERTIFICATION;
    case ErrorCode::kNotForwardSolvable: return PT_ERR_NOT_FORWARD_SOLVABLE;
    case ErrorCode::kTransport: return PT_ERR_TRANSPORT;
    case ErrorCode::kIo: return PT_ERR_IO;
    case ErrorCode::kInternal: return PT_ERR_INTERNAL;
  }
  return PT_ERR_INTERNAL;
}

pt_status SetError(pt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename Fn>
pt_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const pricetree::Error& e) {
    return SetError(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(PT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(PT_ERR_INTERNAL, e.what());
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pt_status Missing(const char* what) {
  return SetError(PT_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* pt_version(void) { return "0.1.0"; }

const char* pt_status_name(pt_status status) {
  switch (status) {
    case PT_OK: return "ok";
    case PT_ERR_INVALID_CONFIG: return "invalid-config";
    case PT_ERR_PARSE: return "parse";
    case PT_ERR_CERTIFICATION: return "certification";
    case PT_ERR_NOT_FORWARD_SOLVABLE: return "not-forward-solvable";
    case PT_ERR_TRANSPORT: return "transport";
    case PT_ERR_IO: return "io";
    case PT_ERR_INTERNAL: return "internal";
    case PT_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PT_ERR_NOT_FOUND: return "not-found";
  }
  return "unknown";
}

const char* pt_last_error(void) { return g_last_error.c_str(); }

void pt_string_free(char* s) { std::free(s); }

pt_status pt_generate_from_config_text(const char* text, const uint64_t* seed_override,
                                       unsigned threads, pt_dataset** out) {
  if (!text) return Missing("text");
  if (!out) return Missing("out");
  return Guard([&] {
    pricetree::GenConfig config = pricetree::ParseGenConfig(text);
    if (seed_override) config.corpus_seed = *seed_override;
    *out = new pt_dataset{pricetree::GenerateCorpus(config, threads)};
    return PT_OK;
  });
}

pt_status pt_generate_from_config_file(const char* path, const uint64_t* seed_override,
                                       unsigned threads, pt_dataset** out) {
  if (!path) return Missing("path");
  if (!out) return Missing("out");
  return Guard([&] {
    pricetree::GenConfig config = pricetree::LoadGenConfig(path);
    if (seed_override) config.corpus_seed = *seed_override;
    *out = new pt_dataset{pricetree::GenerateCorpus(config, threads)};
    return PT_OK;
  });
}

pt_status pt_generate_preset(const char* name, uint64_t seed, unsigned threads, pt_dataset** out) {
  if (!name) return Missing("name");
  if (!out) return Missing("out");
  return Guard([&] {
    *out = new pt_dataset{pricetree::GenerateCorpora(pricetree::Preset(name, seed), threads)};
    return PT_OK;
  });
}

pt_status pt_dataset_load(const char* path, pt_dataset** out) {
  if (!path) return Missing("path");
  if (!out) return Missing("out");
  return Guard([&] {
    *out = new pt_dataset{pricetree::LoadDataset(path)};
    return PT_OK;
  });
}

pt_status pt_dataset_save(const pt_dataset* dataset, const char* path) {
  if (!dataset) return Missing("dataset");
  if (!path) return Missing("path");
  return Guard([&] {
    pricetree::SaveDataset(dataset->value, path);
    return PT_OK;
  });
}

size_t pt_dataset_size(const pt_dataset* dataset) {
  return dataset ? dataset->value.instances.size() : 0;
}

pt_status pt_dataset_instance_json(const pt_dataset* dataset, size_t index, char** out) {
  if (!dataset) return Missing("dataset");
  if (!out) return Missing("out");
  if (index >= dataset->value.instances.size()) {
    return SetError(PT_ERR_NOT_FOUND, "index " + std::to_string(index) + " out of range");
  }
  return Guard([&] {
    *out = Dup(pricetree::ToJsonLine(dataset->value.instances[index]));
    return PT_OK;
  });
}

void pt_dataset_free(pt_dataset* dataset) { delete dataset; }

pt_status pt_dataset_certify(const pt_dataset* dataset, pt_certification* summary, char** report) {
  if (!dataset) return Missing("dataset");
  return Guard([&] {
    const pricetree::CertificationSummary s = pricetree::Certify(dataset->value);
    if (summary) {
      *summary = {s.instances, s.certified,     s.answerable,
                  s.unanswerable, s.pairs_checked, s.failures.size()};
    }
    std::ostringstream text;
    text << "instances: " << s.instances << " (" << s.answerable << " answerable, "
         << s.unanswerable << " unanswerable)\n"
         << "certified: " << s.certified << "/" << s.instances << "\n"
         << "pairs checked: " << s.pairs_checked << "\n"
         << "failures: " << s.failures.size() << "\n";
    for (const auto& [id, why] : s.failures) text << "  " << id << ": " << why << "\n";
    if (report) *report = Dup(text.str());
    if (!s.ok()) {
      return SetError(PT_ERR_CERTIFICATION,
                      std::to_string(s.failures.size()) + " certification failure(s)");
    }
    return PT_OK;
  });
}

pt_status pt_dataset_render(const pt_dataset* dataset, const char* id, char** out) {
  if (!dataset) return Missing("dataset");
  if (!id) return Missing("id");
  if (!out) return Missing("out");
  return Guard([&] {
    for (const auto& inst : dataset->value.instances) {
      if (inst.id == id) {
        *out = Dup(pricetree::RenderInstance(inst));
        return PT_OK;
      }
    }
    return SetError(PT_ERR_NOT_FOUND, std::string("no instance with id ") + id);
  });
}

pt_status pt_evaluate(const pt_dataset* dataset, const pt_eval_options* options,
                      pt_records** out) {
  if (!dataset) return Missing("dataset");
  if (!options) return Missing("options");
  if (!options->profile_path) return Missing("options->profile_path");
  if (!options->transport) return Missing("options->transport");
  if (!out) return Missing("out");
  return Guard([&] {
    namespace ev = pricetree::eval;
    const ev::ModelProfile profile = ev::LoadProfile(options->profile_path);
    ev::EvalOptions opts;
    const auto mode = ev::ParsePromptMode(options->mode ? options->mode : "zero");
    if (!mode) return SetError(PT_ERR_INVALID_ARGUMENT, "mode must be zero or few");
    opts.mode = *mode;
    opts.seed = options->seed;
    opts.concurrency = options->concurrency;

    std::vector<pricetree::ProblemInstance> targets;
    for (const auto& inst : dataset->value.instances) {
      if (options->variant && ToString(inst.variant) != options->variant) continue;
      targets.push_back(inst);
    }
    if (options->variant && targets.empty()) {
      return SetError(PT_ERR_INVALID_ARGUMENT,
                      std::string("no instances with variant ") + options->variant);
    }
    if (opts.mode == ev::PromptMode::kFewShot) {
      opts.pool = options->pool ? options->pool->value.instances : ev::BuildDefaultPool(targets);
    }
    auto transport = ev::MakeTransport(options->transport);
    *out = new pt_records{ev::RunEval(targets, profile, *transport, opts)};
    return PT_OK;
  });
}

pt_status pt_records_load(const char* path, pt_records** out) {
  if (!path) return Missing("path");
  if (!out) return Missing("out");
  return Guard([&] {
    *out = new pt_records{pricetree::eval::LoadRecords(path)};
    return PT_OK;
  });
}

pt_status pt_records_save(const pt_records* records, const char* path) {
  if (!records) return Missing("records");
  if (!path) return Missing("path");
  return Guard([&] {
    pricetree::eval::SaveRecords(records->value, path);
    return PT_OK;
  });
}

size_t pt_records_size(const pt_records* records) { return records ? records->value.size() : 0; }

void pt_records_free(pt_records* records) { delete records; }

pt_status pt_records_summary(const pt_records* records, pt_eval_summary* out) {
  if (!records) return Missing("records");
  if (!out) return Missing("out");
  return Guard([&] {
    const auto table = pricetree::eval::Aggregate(records->value, {});
    *out = {};
    out->records = records->value.size();
    if (!table.cells.empty()) {
      const auto& c = table.cells.front();
      out->excluded = static_cast<size_t>(c.excluded);
      out->unanswerable = static_cast<size_t>(c.unanswerable);
      out->hallucinations = static_cast<size_t>(c.hallucinations);
      out->answerable = static_cast<size_t>(c.answerable);
      out->correct = static_cast<size_t>(c.correct);
      out->false_unanswerable = static_cast<size_t>(c.false_unanswerable);
    }
    return PT_OK;
  });
}

pt_status pt_report(const pt_records* records, const char* group_keys, const char* out_dir,
                    char** table) {
  if (!records) return Missing("records");
  if (!out_dir) return Missing("out_dir");
  return Guard([&] {
    const auto keys = pricetree::eval::ParseGroupKeys(group_keys ? group_keys : "ansDepth");
    const std::string text = pricetree::eval::WriteReport(records->value, keys, out_dir);
    if (table) *table = Dup(text);
    return PT_OK;
  });
}

}  // extern "C"
