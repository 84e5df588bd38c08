#include "relset/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "relset/engine.hpp"
#include "relset/ingest.hpp"
#include "relset/kernels.hpp"

namespace relset {

namespace {

struct Options {
  std::string input, input2, ref_id, ref_file;
  std::string format = "lines";
  std::string delimiter = "tab";
  std::size_t min_distinct = 0;
  std::string metric = "similarity";
  std::string phi = "jac";
  double delta = 0.0;
  double alpha = 0.0;
  unsigned q = 0;
  std::string scheme;
  bool no_size = false, no_check = false, no_nn = false;
  bool reduction = false, no_reduction = false;
  unsigned workers = 1;
  std::string output, stats;
  std::string simd = "auto";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Collection file, '-' for stdin")->required();
  sub->add_option("--input2", o.input2, "Second collection; pairs run from --input to it");
  sub->add_option("--ref-id", o.ref_id, "Reference set taken from --input");
  sub->add_option("--ref-file", o.ref_file, "File with the reference set(s)");
  sub->add_option("--format", o.format, "lines | csv")->capture_default_str();
  sub->add_option("--delimiter", o.delimiter, "Element separator: tab, ws or a character")
      ->capture_default_str();
  sub->add_option("--min-distinct", o.min_distinct, "Drop sets with fewer distinct elements");
  sub->add_option("--metric", o.metric, "similarity | containment")->capture_default_str();
  sub->add_option("--phi", o.phi, "jac | eds | neds")->capture_default_str();
  sub->add_option("--delta", o.delta, "Relatedness threshold")->required();
  sub->add_option("--alpha", o.alpha, "Element similarity threshold")->capture_default_str();
  sub->add_option("--q", o.q, "q-gram length for eds/neds (default: largest valid)");
  sub->add_option("--scheme", o.scheme,
                  "weighted | unweighted | skyline | dichotomy | combined_unweighted");
  sub->add_flag("--no-size-filter", o.no_size);
  sub->add_flag("--no-check-filter", o.no_check);
  sub->add_flag("--no-nn-filter", o.no_nn);
  sub->add_flag("--reduction", o.reduction, "Require the identical element reduction");
  sub->add_flag("--no-reduction", o.no_reduction);
  sub->add_option("--workers", o.workers, "Worker threads, 0 for all cores")
      ->capture_default_str();
  sub->add_option("--output", o.output, "TSV output path (default stdout)");
  sub->add_option("--stats", o.stats, "JSON statistics output path");
  sub->add_option("--simd", o.simd, "auto | scalar | avx2")->capture_default_str();
}

RelatednessConfig make_config(const Options& o) {
  RelatednessConfig cfg;
  cfg.metric = parse_metric(o.metric);
  cfg.sim.kind = parse_sim_kind(o.phi);
  cfg.sim.alpha = o.alpha;
  cfg.delta = o.delta;
  cfg.q = o.q;
  cfg.scheme = o.scheme.empty() ? (o.alpha > 0.0 ? Scheme::Dichotomy : Scheme::Weighted)
                                : parse_scheme(o.scheme);
  cfg.filters = FilterFlags{!o.no_size, !o.no_check, !o.no_nn};
  if (o.reduction && o.no_reduction) throw ConfigError("--reduction and --no-reduction conflict");
  cfg.reduction = o.reduction || (!o.no_reduction && o.alpha == 0.0 &&
                                  cfg.sim.kind != SimKind::NEds);
  cfg.workers = o.workers;
  return cfg.normalized();
}

DatasetSpec dataset(const Options& o, const std::string& path) {
  DatasetSpec spec;
  spec.path = path;
  spec.format = parse_format(o.format);
  spec.delimiter = o.delimiter;
  spec.min_distinct_elements = o.min_distinct;
  return spec;
}

std::vector<SetRecord> load(const Options& o, const std::string& path, const Tokenizer& tok,
                            std::ostream& err) {
  const DatasetSpec spec = dataset(o, path);
  TokenizeReport report;
  auto sets = tokenize_sets(load_raw(spec), tok, spec.min_distinct_elements, &report);
  if (report.dropped_sets > 0) {
    err << "warning: " << path << ": dropped " << report.dropped_sets
        << " set(s) without usable elements\n";
  }
  return sets;
}

void write_tsv(std::ostream& os, const SearchResult& res, Metric metric) {
  char buf[64];
  for (const auto& p : res.pairs) {
    std::snprintf(buf, sizeof buf, "\t%.6f\t%.6f\t", p.score, p.relatedness);
    os << p.r_id << '\t' << p.s_id << buf << to_string(metric) << '\n';
  }
}

nlohmann::json stats_json(const SearchResult& res, const RelatednessConfig& cfg,
                          const std::string& command) {
  const PassStats& s = res.stats;
  nlohmann::json j;
  j["command"] = command;
  j["config"] = {{"metric", to_string(cfg.metric)},
                 {"phi", to_string(cfg.sim.kind)},
                 {"alpha", cfg.sim.alpha},
                 {"delta", cfg.delta},
                 {"q", cfg.q},
                 {"scheme", to_string(cfg.scheme)},
                 {"size_filter", cfg.filters.size},
                 {"check_filter", cfg.filters.check},
                 {"nn_filter", cfg.filters.nn},
                 {"reduction", cfg.reduction},
                 {"workers", cfg.workers}};
  j["simd"] = kernels::to_string(kernels::active_level());
  j["pairs"] = res.pairs.size();
  j["stats"] = {{"passes", s.passes},
                {"sets_scanned", s.sets_scanned},
                {"size_filtered", s.size_filtered},
                {"candidates_initial", s.candidates_initial},
                {"after_check", s.after_check},
                {"after_nn", s.after_nn},
                {"matchings_computed", s.matchings_computed},
                {"verified", s.verified},
                {"degenerate_signatures", s.degenerate_signatures}};
  j["timings_seconds"] = {{"signature", s.signature_seconds},
                          {"selection", s.selection_seconds},
                          {"nn_filter", s.nn_seconds},
                          {"verification", s.verify_seconds}};
  return j;
}

void set_simd(const std::string& name) {
  if (name == "auto") {
    kernels::set_active_level(kernels::detected_level());
  } else if (name == "scalar") {
    kernels::set_active_level(kernels::SimdLevel::Scalar);
  } else if (name == "avx2") {
    if (kernels::detected_level() != kernels::SimdLevel::Avx2) {
      throw ConfigError("AVX2 kernels are not available on this machine");
    }
    kernels::set_active_level(kernels::SimdLevel::Avx2);
  } else {
    throw ConfigError("unknown --simd value: " + name);
  }
}

int execute(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  const RelatednessConfig cfg = make_config(o);
  const bool has_ref = !o.ref_id.empty() || !o.ref_file.empty();
  if (!o.ref_id.empty() && !o.ref_file.empty()) {
    throw ConfigError("--ref-id and --ref-file are mutually exclusive");
  }
  if (command == "search" && !has_ref) throw ConfigError("search needs --ref-id or --ref-file");
  if (command == "discover" && has_ref) throw ConfigError("discover takes no reference set");
  if (has_ref && !o.input2.empty()) throw ConfigError("--input2 cannot be combined with a reference");
  set_simd(o.simd);

  TokenDictionary dict;
  Tokenizer tok(dict, cfg.mode(), cfg.q == 0 ? 1 : cfg.q);
  // The indexed collection is tokenized first so its tokens get the lowest ids.
  const bool pairwise = !o.input2.empty();
  std::vector<SetRecord> data = load(o, pairwise ? o.input2 : o.input, tok, err);
  std::vector<SetRecord> refs;
  std::optional<std::size_t> ref_index;
  if (pairwise) {
    refs = load(o, o.input, tok, err);
  } else if (!o.ref_file.empty()) {
    refs = load(o, o.ref_file, tok, err);
  } else if (!o.ref_id.empty()) {
    for (std::size_t k = 0; k < data.size(); ++k) {
      if (data[k].id == o.ref_id) ref_index = k;
    }
    if (!ref_index) throw ConfigError("reference set '" + o.ref_id + "' not found in --input");
  }

  SearchResult res;
  if (command == "oracle") {
    if (ref_index) {
      res = brute_force_search(data[*ref_index], data, cfg);
    } else if (has_ref || pairwise) {
      res = brute_force(refs, data, cfg);
    } else {
      res = brute_force_self(data, cfg);
    }
  } else {
    Engine engine(data, dict, cfg);
    if (ref_index) {
      res = engine.search(data[*ref_index]);
    } else if (has_ref || pairwise) {
      res = engine.discover(refs);
    } else {
      res = engine.discover_self();
    }
  }

  if (o.output.empty()) {
    write_tsv(out, res, cfg.metric);
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw IngestError("cannot write " + o.output);
    write_tsv(f, res, cfg.metric);
    if (!f) throw IngestError("write failed: " + o.output);
  }
  if (!o.stats.empty()) {
    std::ofstream f(o.stats);
    if (!f) throw IngestError("cannot write " + o.stats);
    f << stats_json(res, cfg, command).dump(2) << '\n';
    if (!f) throw IngestError("write failed: " + o.stats);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Related set discovery and search"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"discover", "search", "oracle"}) {
    const char* desc = std::string_view(name) == "discover"
                           ? "All related pairs of a collection (or of --input x --input2)"
                       : std::string_view(name) == "search"
                           ? "Sets related to one reference"
                           : "Exhaustive matching of every pair";
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, o);
    subs.emplace_back(name, sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  std::string command;
  for (auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }
  try {
    return execute(command, o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace relset
