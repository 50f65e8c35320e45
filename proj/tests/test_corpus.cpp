#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gdual/corpus.hpp"
#include "support.hpp"

using namespace gdual;
namespace fs = std::filesystem;

namespace {

// A scratch corpus sharing the shipped rings.
struct ScratchCorpus {
  fs::path root;
  ScratchCorpus() {
    std::random_device rd;
    root = fs::temp_directory_path() / ("gdual-corpus-test-" + std::to_string(rd()));
    fs::create_directories(root / "entries");
    fs::copy(default_corpus_dir() / "rings", root / "rings", fs::copy_options::recursive);
  }
  ~ScratchCorpus() { fs::remove_all(root); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(root / "entries" / (name + ".entry")) << text;
  }
};

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("entry parsing") {
    const CorpusEntry e = parse_entry(R"(name = demo
status = variant
modeled = yes
provenance = somewhere
alternatives = a, b
note = first
note = second
window = 8 30
ring p3 = rings/thh-z-p3.pres
expect certificate p3 = -2 "quoted"
expect[variant] structural p3 = -2 "also quoted"
)");
    CHECK(e.name == "demo");
    CHECK(e.status == EntryStatus::variant);
    CHECK(e.alternatives == std::vector<std::string>{"a", "b"});
    CHECK(e.notes.size() == 2);
    CHECK(e.hom_bound == 8);
    CHECK(e.deg_bound == 30);
    REQUIRE(e.expectations.size() == 2);
    CHECK(e.expectations[0].citation == "quoted");
    CHECK(e.expectations[1].variant);
    CHECK(gdual::testing::error_kind([] { parse_entry("status = maybe\n"); }) == "ParseError");
  }

  TEST_CASE("shipped corpus verifies") {
    const CorpusReport rep = corpus_verify(default_corpus_dir());
    CHECK(rep.theorems_pass());
    CHECK(rep.exit_status() == 0);
    CHECK(rep.entries.size() >= 10);
    for (const auto& e : rep.entries) {
      CAPTURE(e.name);
      for (const auto& c : e.checks)
        if (c.gating) CHECK(c.pass);
    }
  }

  TEST_CASE("reports are deterministic") {
    CorpusOptions serial;
    serial.parallel = false;
    const auto a = corpus_verify(default_corpus_dir()).to_json().dump();
    const auto b = corpus_verify(default_corpus_dir(), serial).to_json().dump();
    CHECK(a == b);
    const Json j = Json::parse(a);
    CHECK(j["schema"] == kReportSchema);
  }

  TEST_CASE("a wrong theorem value gates, a wrong variant value does not") {
    ScratchCorpus c;
    c.write("bad-variant", "name = bad-variant\nstatus = variant\nprovenance = test\nalternatives = bad-variant, bad-theorem\nring r = rings/thh-z-p3.pres\n"
                           "expect certificate r = 5 \"wrong on purpose\"\n");
    CHECK(corpus_verify(c.root).theorems_pass());
    c.write("bad-theorem", "name = bad-theorem\nstatus = theorem\nprovenance = test\nring r = rings/thh-z-p3.pres\n"
                           "expect certificate r = 5 \"wrong on purpose\"\n");
    const CorpusReport rep = corpus_verify(c.root);
    CHECK_FALSE(rep.theorems_pass());
    CHECK(rep.exit_status() == 1);
  }

  TEST_CASE("malformed entries fail instead of being skipped") {
    ScratchCorpus c;
    c.write("broken", "name = broken\nprovenance = test\nring r = rings/missing.pres\nexpect certificate r = -2 \"x\"\n");
    CHECK_FALSE(corpus_verify(c.root).theorems_pass());
  }

  TEST_CASE("filter") {
    CorpusOptions opt;
    opt.filter = "thh-z*";
    const CorpusReport rep = corpus_verify(default_corpus_dir(), opt);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].name == "thh-z");
  }

  TEST_CASE("bigraded tables survive a JSON round trip") {
    BigradedDimensions d;
    d.add(0, 0, 1);
    d.add(1, 5, 2);
    d.add(3, 17, 1);
    const Json j = bigraded_json(d);
    CHECK(bigraded_from_json(j) == d);
    CHECK(bigraded_markdown(j).find("|") != std::string::npos);
    CHECK_FALSE(bigraded_chart(j).empty());
    Json report = report_header("demo");
    report["table"] = j;
    CHECK(render(report, Format::md).find("demo") != std::string::npos);
    CHECK(Json::parse(render(report, Format::json)) == report);
  }
}
