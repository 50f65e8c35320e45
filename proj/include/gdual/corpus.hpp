#pragma once

// The example corpus: entry files, verification and reports.
//
// Entry format, one directive per line, paths relative to the corpus root:
//
//   name = thh-z
//   status = theorem | conjecture | variant
//   modeled = yes | no
//   provenance = <text>
//   alternatives = <name>, <name>
//   note = <text>
//   window = <hom_bound> <deg_bound>
//   ring <label> = rings/thh-z-p3.pres
//   schedule <label> = schedules/thh-z-p3.sched -> <ring label>
//   ledger = ledgers/z-p3.ledger
//   expect <check> <subject> = <value> "<citation>"
//   expect[variant] <check> <subject> = <value> "<citation>"
//
// Checks: certificate, structural, socle, converges (yes|no),
// ledger <node>, consistent ledger (yes), series (<num> / <denominator degrees>),
// functional_equation (<epsilon> <e>).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdual/cache.hpp"
#include "gdual/report.hpp"

namespace gdual {

enum class EntryStatus { theorem, conjecture, variant };
std::string to_string(EntryStatus s);

struct Expectation {
  std::string check;
  std::string subject;
  std::string value;
  std::string citation;
  bool variant = false;  // never gates, even in a theorem entry
};

struct CorpusEntry {
  std::string name;
  EntryStatus status = EntryStatus::theorem;
  bool modeled = true;
  std::string provenance;
  std::vector<std::string> alternatives;
  std::vector<std::string> notes;
  std::optional<int> hom_bound;
  std::optional<int> deg_bound;
  std::vector<std::pair<std::string, std::string>> rings;  // label, path
  struct ScheduleRef {
    std::string label;
    std::string path;
    std::string target;  // ring label
  };
  std::vector<ScheduleRef> schedules;
  std::vector<std::string> ledgers;
  std::vector<Expectation> expectations;
  std::filesystem::path file;
};

CorpusEntry parse_entry(std::string_view text, const std::filesystem::path& file = {});
CorpusEntry load_entry(const std::filesystem::path& path);

struct CheckResult {
  std::string check;
  std::string subject;
  std::string expected;
  std::string found;
  bool pass = false;
  bool gating = false;
  std::string citation;
  std::string detail;
};

struct EntryReport {
  std::string name;
  EntryStatus status = EntryStatus::theorem;
  bool modeled = true;
  std::string provenance;
  std::vector<std::string> alternatives;
  std::vector<std::string> notes;
  std::vector<CheckResult> checks;
  std::vector<std::string> errors;
  std::vector<Json> ledger_traces;
  std::vector<Json> functional_equations;
};

struct CorpusOptions {
  std::string filter = "*";
  std::optional<int> hom_bound;
  std::optional<int> deg_bound;
  const ResolutionCache* cache = nullptr;
  bool parallel = true;
};

struct CorpusReport {
  std::vector<EntryReport> entries;  // sorted by name

  bool theorems_pass() const;
  int exit_status() const { return theorems_pass() ? 0 : 1; }
  Json to_json() const;
  std::string to_markdown() const;
};

EntryReport verify_entry(const CorpusEntry& entry, const std::filesystem::path& root, const CorpusOptions& options);
CorpusReport corpus_verify(const std::filesystem::path& root, const CorpusOptions& options = {});

/// Compiled-in location of the shipped corpus.
std::filesystem::path default_corpus_dir();

}  // namespace gdual
