#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gdual/cache.hpp"
#include "gdual/corpus.hpp"
#include "gdual/duality.hpp"
#include "gdual/hochschild.hpp"
#include "gdual/koszul.hpp"
#include "gdual/presentation_io.hpp"
#include "gdual/report.hpp"
#include "gdual/shift_ledger.hpp"
#include "gdual/spectral.hpp"

using namespace gdual;

namespace {

struct Globals {
  int max_degree = 48;
  int hom_bound = 12;
  std::string format = "md";
  std::string cache_dir;
};

std::vector<Polynomial> parse_elements(const Presentation& pres, const std::string& list) {
  std::vector<Polynomial> out;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');)
    if (item.find_first_not_of(' ') != std::string::npos) out.push_back(parse_polynomial(pres, item));
  return out;
}

Json presentation_json(const Presentation& pres) { return print_presentation(pres); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gorenstein duality data for graded-commutative algebras over prime fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--max-degree", g.max_degree, "degree window")->capture_default_str();
  app.add_option("--hom-bound", g.hom_bound, "homological window")->capture_default_str();
  app.add_option("--format", g.format, "json, md or chart")->check(CLI::IsMember({"json", "md", "chart"}))->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "resolution cache (default $GDUAL_CACHE_DIR or ~/.cache/gdual)");
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "do not read or write the resolution cache");

  std::string file;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert series and functional equation");
  hilbert->add_option("presentation", file)->required()->check(CLI::ExistingFile);

  auto* gorenstein = app.add_subcommand("gorenstein", "Gorenstein certificate and structural shift");
  gorenstein->add_option("presentation", file)->required()->check(CLI::ExistingFile);

  auto* socle_cmd = app.add_subcommand("socle", "socle of an Artinian presentation");
  socle_cmd->add_option("presentation", file)->required()->check(CLI::ExistingFile);

  auto* ext = app.add_subcommand("ext", "Ext_R(k,R) and Tor^R(k,k) in the window");
  ext->add_option("presentation", file)->required()->check(CLI::ExistingFile);

  std::string elements;
  auto* koszul = app.add_subcommand("koszul", "Koszul homology and regularity");
  koszul->add_option("presentation", file)->required()->check(CLI::ExistingFile);
  koszul->add_option("--elements", elements, "comma separated homogeneous elements")->required();

  std::string target;
  auto* ss = app.add_subcommand("ss", "run a spectral sequence schedule");
  ss->add_option("schedule", file)->required()->check(CLI::ExistingFile);
  ss->add_option("--target", target, "presentation whose Hilbert series E-infinity should match")->check(CLI::ExistingFile);
  bool all_pages = false;
  ss->add_flag("--pages", all_pages, "show every page, not just E-infinity");

  std::vector<std::string> ledgers;
  auto* shift = app.add_subcommand("shift", "solve a shift ledger");
  shift->add_option("ledgers", ledgers)->required()->check(CLI::ExistingFile);

  std::string coeff = "self";
  bool cohomology = false;
  std::optional<int> dm_shift;
  auto* hh = app.add_subcommand("hh", "Hochschild homology or cohomology");
  hh->add_option("presentation", file)->required()->check(CLI::ExistingFile);
  hh->add_option("--coefficients", coeff, "self or k")->check(CLI::IsMember({"self", "k"}))->capture_default_str();
  hh->add_flag("--cohomology", cohomology, "HH^* instead of HH_*");
  hh->add_option("--dwyer-miller", dm_shift, "check dim HH^n = dim HH_{n-a} for Gorenstein shift a");

  auto* predict = app.add_subcommand("predict", "Tor-based Hilbert series prediction for THH");
  predict->add_option("presentation", file)->required()->check(CLI::ExistingFile);

  auto* corpus = app.add_subcommand("corpus", "the example corpus");
  corpus->require_subcommand(1);
  corpus->fallthrough();
  std::string filter = "*";
  std::string corpus_dir = default_corpus_dir().string();
  bool serial = false;
  auto* verify = corpus->add_subcommand("verify", "verify corpus entries; exit 0 iff every theorem check passes");
  verify->add_option("--filter", filter, "entry name pattern")->capture_default_str();
  verify->add_option("--corpus-dir", corpus_dir)->check(CLI::ExistingDirectory)->capture_default_str();
  verify->add_flag("--serial", serial, "verify entries one at a time");

  CLI11_PARSE(app, argc, argv);

  const Format format = parse_format(g.format);
  const bool window_given = app.count("--max-degree") > 0 || app.count("--hom-bound") > 0;
  std::optional<ResolutionCache> cache;
  if (!no_cache) cache.emplace(g.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g.cache_dir));
  auto resolve = [&](const Presentation& pres) {
    return cache ? cache->resolve(pres, g.hom_bound, g.max_degree) : minimal_resolution(pres, g.hom_bound, g.max_degree);
  };

  try {
    Json rep;
    if (*hilbert) {
      const auto pres = load_presentation(file);
      rep = report_header("hilbert");
      rep["presentation"] = presentation_json(pres);
      const auto series = hilbert_series(pres, g.max_degree);
      rep["series"] = series_json(series);
      const auto shape = tensor_shape(pres);
      const int r = shape ? static_cast<int>(shape->polynomial.size()) : series.krull_dimension();
      if (auto fe = functional_equation(series, r)) rep["functional_equation"] = functional_equation_json(*fe);
      else rep["functional_equation"] = "no solution";
      auto dims = Json::array();
      for (const auto& [d, n] : enumerate_basis(pres, g.max_degree).dims) dims.push_back({{"degree", d}, {"dim", n}});
      rep["dimensions"] = dims;
    } else if (*gorenstein) {
      const auto pres = load_presentation(file);
      rep = report_header("gorenstein");
      rep["presentation"] = presentation_json(pres);
      rep["certificate"] = certificate_json(gorenstein_certificate(resolve(pres)));
      try {
        rep["structural_shift"] = structural_shift(pres);
      } catch (const AlgebraError& e) {
        rep["structural_shift"] = e.what();
      }
    } else if (*socle_cmd) {
      const auto pres = load_presentation(file);
      rep = report_header("socle");
      rep["presentation"] = presentation_json(pres);
      auto elems = Json::array();
      for (const auto& s : socle(pres))
        elems.push_back({{"degree", s.degree}, {"element", print_polynomial(pres, Polynomial(s.terms.begin(), s.terms.end()))}});
      rep["socle"] = elems;
      rep["gorenstein"] = elems.size() == 1;
    } else if (*ext) {
      const auto pres = load_presentation(file);
      const auto res = resolve(pres);
      rep = report_header("ext");
      rep["presentation"] = presentation_json(pres);
      rep["window"] = {{"hom_bound", g.hom_bound}, {"deg_bound", g.max_degree}};
      const auto w = ext_dimensions(res);
      rep["reliable_through_s"] = w.max_s;
      rep["ext"] = bigraded_json(w.dims, "s", "u");
      rep["tor"] = bigraded_json(tor_dimensions(res), "s", "t");
    } else if (*koszul) {
      const auto pres = load_presentation(file);
      const auto elems = parse_elements(pres, elements);
      const auto cx = build_koszul(pres, elems);
      rep = report_header("koszul");
      rep["presentation"] = presentation_json(pres);
      auto names = Json::array();
      for (const auto& e : elems) names.push_back(print_polynomial(pres, e));
      rep["elements"] = names;
      rep["homology"] = bigraded_json(koszul_homology(cx, g.max_degree), "s", "t");
      const auto reg = is_regular_sequence(pres, elems, g.max_degree);
      rep["regular"] = reg.regular;
      if (reg.witness) rep["witness"] = {{"s", reg.witness->first}, {"t", reg.witness->second}, {"dim", reg.witness_dim}};
    } else if (*ss) {
      Schedule sched = load_schedule(file);
      if (app.count("--max-degree")) sched.window = g.max_degree;
      const auto result = run_schedule(sched.q, sched.s, sched.specs, sched.window);
      rep = report_header("ss");
      rep["schedule"] = sched.name;
      rep["window"] = sched.window;
      if (all_pages) {
        for (const auto& page : result.history)
          rep["E_" + std::to_string(page.r())] = bigraded_json(page.dimensions(), "s", "t");
      }
      const auto& fin = result.final_page();
      rep["E_infinity"] = bigraded_json(fin.dimensions(), "s", "t");
      auto totals = Json::array();
      for (const auto& [n, d] : fin.total_dimensions()) totals.push_back({{"total", n}, {"dim", d}});
      rep["total_dimensions"] = totals;
      try {
        auto fr = Json::array();
        for (const auto& f : frobenius_survival(fin.algebra())) fr.push_back(f.derivation);
        rep["frobenius"] = fr;
      } catch (const AlgebraError& e) {
        rep["frobenius"] = e.what();
      }
      if (!target.empty()) {
        const auto conv = convergence_check(fin, hilbert_series(load_presentation(target), sched.window));
        rep["converges"] = conv.matches;
        if (conv.first_mismatch)
          rep["first_mismatch"] = {{"degree", *conv.first_mismatch}, {"expected", conv.expected}, {"found", conv.found}};
      }
    } else if (*shift) {
      std::vector<ShiftLedger> parts;
      for (const auto& f : ledgers) parts.push_back(load_ledger(f));
      const auto sol = solve(merge_ledgers(parts));
      if (format == Format::json) {
        rep = report_header("shift");
        rep["solution"] = Json::parse(sol.to_json());
      } else {
        std::cout << "# shift\n\n" << sol.to_markdown();
        return sol.consistent() ? 0 : 1;
      }
    } else if (*hh) {
      const auto pres = load_presentation(file);
      const Coefficients c = coeff == "k" ? Coefficients::k : Coefficients::self;
      const int hb = app.count("--hom-bound") ? g.hom_bound : 4;
      const int db = app.count("--max-degree") ? g.max_degree : 24;
      rep = report_header(cohomology ? "hh cohomology" : "hh homology");
      rep["presentation"] = presentation_json(pres);
      rep["coefficients"] = coeff;
      if (dm_shift) {
        const auto dm = dwyer_miller_check(pres, *dm_shift, db, hb);
        rep["dwyer_miller"] = {{"applicable", dm.applicable}, {"reason", dm.reason}, {"holds", dm.holds},
                               {"first_mismatch", dm.first_mismatch ? Json(*dm.first_mismatch) : Json(nullptr)},
                               {"coefficients", dm.coefficients}};
      } else if (cohomology) {
        const auto w = hh_cohomology(pres, c, db, hb);
        rep["dimensions"] = bigraded_json(w.dims, "s", "u");
        auto uns = Json::array();
        for (const auto& [s, u] : w.unstable) uns.push_back({{"s", s}, {"u", u}});
        rep["unstable"] = uns;
        rep["truncation"] = w.truncation;
      } else {
        rep["dimensions"] = bigraded_json(hh_homology(pres, c, db, hb), "s", "t");
      }
    } else if (*predict) {
      const auto pres = load_presentation(file);
      rep = report_header("predict");
      rep["presentation"] = presentation_json(pres);
      rep["prediction"] = series_json(thh_prediction(pres, g.max_degree));
    } else if (*verify) {
      CorpusOptions opts;
      opts.filter = filter;
      if (window_given) {
        opts.hom_bound = g.hom_bound;
        opts.deg_bound = g.max_degree;
      }
      opts.cache = cache ? &*cache : nullptr;
      opts.parallel = !serial;
      const auto report = corpus_verify(corpus_dir, opts);
      if (format == Format::json) std::cout << report.to_json().dump(2) << "\n";
      else std::cout << report.to_markdown();
      return report.exit_status();
    }
    std::cout << render(rep, format);
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
