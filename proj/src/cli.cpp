#include "posthist/cli.hpp"

#include <csignal>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "posthist/analyze.hpp"
#include "posthist/evaluate.hpp"
#include "posthist/ingest.hpp"
#include "posthist/links.hpp"
#include "posthist/log.hpp"
#include "posthist/matcher.hpp"
#include "posthist/metrics.hpp"
#include "posthist/parallel.hpp"
#include "posthist/pipeline.hpp"
#include "posthist/service.hpp"
#include "posthist/tables.hpp"

namespace posthist::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad flag values that CLI11 cannot check itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kPostVersionFile = "PostVersion.tsv";
constexpr const char* kBlockVersionFile = "PostBlockVersion.tsv";
constexpr const char* kBlockDiffFile = "PostBlockDiff.tsv";
constexpr const char* kUrlFile = "PostVersionUrl.tsv";
constexpr const char* kManifestFile = "manifest.json";

void prepare_out_dir(const std::string& dir, bool force) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw UsageError("--out " + dir + " is not a directory");
    if (!fs::is_empty(dir) && !force) throw UsageError("--out " + dir + " is not empty; pass --force to overwrite");
  } else {
    fs::create_directories(dir);
  }
}

void check_out_file(const std::string& path, bool force) {
  if (fs::exists(path) && !force) throw UsageError(path + " exists; pass --force to overwrite");
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

std::string join(const fs::path& dir, const char* name) { return (dir / name).string(); }

std::string manifest(const std::string& command, const std::vector<std::string>& inputs, const std::string& config,
                     const std::string& out, unsigned parallelism) {
  nlohmann::json j = {{"command", command},   {"inputs", inputs},           {"configuration", config},
                      {"output", out},        {"parallelism", parallelism}, {"deterministic", true}};
  return j.dump(2) + "\n";
}

MetricConfiguration parse_config_flag(const std::string& s) {
  try {
    return parse_configuration(s);
  } catch (const ConfigurationError& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
}

std::vector<std::string> read_selection_lines(const std::string& path) {
  std::vector<std::string> out;
  for (auto& line : split_lines(read_file(path))) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

// Stage 1/2: metric names; stage 3: role=metric@threshold lines.
SweepSelection read_selection(int stage, const std::string& path) {
  SweepSelection sel;
  if (path.empty()) {
    if (stage != 1) throw UsageError("stage " + std::to_string(stage) + " needs --selection");
    for (const auto& m : metrics::catalog()) sel.metrics.push_back(&m);
    return sel;
  }
  for (const auto& line : read_selection_lines(path)) {
    if (stage != 3) {
      try {
        sel.metrics.push_back(&metrics::resolve(line));
      } catch (const metrics::UnknownMetric& e) {
        throw UsageError(std::string("--selection: ") + e.what());
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("--selection: expected role=metric@threshold, got " + line);
    MetricConfiguration probe;
    try {
      probe = parse_configuration(line.substr(eq + 1));
    } catch (const ConfigurationError& e) {
      throw UsageError(std::string("--selection: ") + e.what());
    }
    const auto role = std::string(trim(std::string_view(line).substr(0, eq)));
    if (role == "text") {
      sel.text.push_back(probe.text);
    } else if (role == "textBackup") {
      sel.text_backup.push_back(probe.text);
    } else if (role == "code") {
      sel.code.push_back(probe.text);
    } else if (role == "codeBackup") {
      sel.code_backup.push_back(probe.text);
    } else {
      throw UsageError("--selection: unknown role " + role);
    }
  }
  return sel;
}

unsigned resolve_parallelism(int p) { return p <= 0 ? default_parallelism() : static_cast<unsigned>(p); }

}  // namespace

std::map<PostId, Post> load_corpus(const std::string& path, unsigned parallelism, bool* matched) {
  if (fs::is_directory(path)) {
    auto posts = read_post_version_table(read_file(join(path, kPostVersionFile)));
    attach_blocks(posts, read_block_version_table(read_file(join(path, kBlockVersionFile))));
    if (matched) *matched = true;
    return posts;
  }
  auto chains = build_version_chains(parse_post_history(read_file(path)));
  for (const auto& w : chains.warnings) log::warn(w);
  for (const auto& w : prepare_corpus(chains.posts, parallelism)) log::warn(w);
  if (matched) *matched = false;
  return std::move(chains.posts);
}

namespace {

int cmd_reconstruct(const std::string& input, const std::string& config_name, const std::string& out_dir,
                    unsigned parallelism, bool force, std::ostream& out) {
  const auto config = parse_config_flag(config_name);
  prepare_out_dir(out_dir, force);
  auto chains = build_version_chains(parse_post_history(read_file(input)));
  for (const auto& w : chains.warnings) log::warn(w);
  auto corpus = reconstruct(std::move(chains.posts), config, parallelism);
  for (const auto& w : corpus.warnings) log::warn(w);

  const fs::path dir(out_dir);
  write_file_atomic(join(dir, kPostVersionFile), write_post_version_table(corpus.posts));
  write_file_atomic(join(dir, kBlockVersionFile), write_block_version_table(corpus.posts));
  write_file_atomic(join(dir, kBlockDiffFile), write_block_diff_table(corpus.diffs));
  write_file_atomic(join(dir, kUrlFile), write_url_table(corpus.urls));
  write_file_atomic(join(dir, kManifestFile), manifest("reconstruct", {input}, config.name(), out_dir, parallelism));

  std::size_t versions = 0, blocks = 0;
  for (const auto& [id, post] : corpus.posts) {
    versions += post.versions.size();
    for (const auto& v : post.versions) blocks += v.blocks.size();
  }
  out << "reconstructed " << corpus.posts.size() << " posts, " << versions << " versions, " << blocks
      << " block versions\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& input, const std::vector<std::string>& gts, int stage,
                 const std::string& config_name, const std::string& selection_path, double quantile,
                 const std::string& out_path, unsigned parallelism, bool force, std::ostream& out) {
  if (input.empty()) throw UsageError("evaluate needs --input with the posts the ground truth refers to");
  if (stage == 0 && config_name.empty()) throw UsageError("evaluate needs --stage or --config");
  if (stage != 0 && !config_name.empty()) throw UsageError("--stage and --config are exclusive");

  std::vector<MetricConfiguration> configs;
  if (stage != 0) {
    try {
      configs = stage_configurations(stage, read_selection(stage, selection_path));
    } catch (const SweepError& e) {
      throw UsageError(e.what());
    }
  } else {
    configs.push_back(parse_config_flag(config_name));
  }
  check_out_file(out_path, force);

  const auto corpus = load_corpus(input, parallelism);
  std::vector<Sample> samples;
  for (const auto& path : gts) {
    const std::string name = fs::path(path).stem().string();
    auto truth = load_ground_truth(read_file(path), corpus, name);
    samples.push_back(make_sample(name, corpus, std::move(truth)));
  }
  SweepOptions options;
  options.parallelism = parallelism;
  const auto ranked = sweep(configs, samples, options);

  write_file_atomic(out_path, write_results(ranked));
  if (samples.size() > 1) {
    const fs::path base(out_path);
    for (std::size_t s = 0; s < samples.size(); ++s) {
      fs::path p = base;
      p.replace_filename(base.stem().string() + "." + samples[s].name + base.extension().string());
      write_file_atomic(p.string(), write_sample_results(ranked, s));
    }
  }
  if (quantile > 0) {
    std::string sel = "# metrics in the " + format_double(quantile, 2) + " quantile\n";
    for (const auto* m : quantile_filter(ranked, quantile, FilterScope::AllMetrics)) sel += m->name + "\n";
    sel += "# backup candidates\n";
    for (const auto* m : quantile_filter(ranked, quantile, FilterScope::BackupCandidates)) sel += m->name + "\n";
    write_file_atomic(out_path + ".selection.txt", sel);
  }
  out << "evaluated " << ranked.size() << " configurations on " << samples.size() << " sample(s); best: "
      << ranked.front().config.name() << " (mccText " << format_double(ranked.front().pooled.mcc_text, 4)
      << ", mccCode " << format_double(ranked.front().pooled.mcc_code, 4) << ")\n";
  return kExitOk;
}

int cmd_analyze(const std::string& input, const std::string& comments_path, const std::string& refs_path,
                const std::string& out_dir, unsigned parallelism, bool force, std::ostream& out) {
  prepare_out_dir(out_dir, force);
  bool matched = false;
  auto posts = load_corpus(input, parallelism, &matched);
  if (!matched) match_corpus(posts, preset("paper-final"), parallelism);

  std::vector<Comment> comments;
  std::vector<PostReferenceGH> refs;
  AnalysisInput in;
  in.posts = &posts;
  if (!comments_path.empty()) {
    comments = read_comment_table(read_file(comments_path));
    in.comments = &comments;
  }
  if (!refs_path.empty()) {
    refs = read_reference_table(read_file(refs_path));
    in.references = &refs;
  }
  const auto report = evolution_report(in);
  const fs::path dir(out_dir);
  write_file_atomic(join(dir, "report.txt"), format_report(report));
  for (const auto& [name, table] : report_tables(report)) write_file_atomic((dir / name).string(), table);
  out << "analyzed " << report.posts << " posts\n";
  return kExitOk;
}

int cmd_scan(const std::string& root, const std::string& out_path, unsigned parallelism, bool force,
             std::ostream& out) {
  if (!fs::is_directory(root)) throw UsageError("--root " + root + " is not a directory");
  if (!out_path.empty()) check_out_file(out_path, force);
  const auto result = scan_directory(root, parallelism);
  for (const auto& w : result.warnings) log::warn(w);
  const auto table = write_reference_table(result.references);
  if (out_path.empty()) {
    out << table;
  } else {
    write_file_atomic(out_path, table);
    out << "found " << result.references.size() << " references\n";
  }
  return kExitOk;
}

std::string metric_parameters(const metrics::MetricDescriptor& m) {
  using namespace metrics;
  std::vector<std::string> parts;
  if (m.edit_kind) {
    static const char* kinds[] = {"levenshtein", "damerauLevenshtein", "optimalAlignment", "longestCommonSubsequence"};
    parts.push_back(std::string("kind=") + kinds[static_cast<int>(*m.edit_kind)]);
  }
  if (m.coefficient) {
    static const char* names[] = {"jaccard", "dice", "overlap", "longestCommonSubsequence", "optimalAlignment"};
    parts.push_back(std::string("coefficient=") + names[static_cast<int>(*m.coefficient)]);
  }
  if (m.weighting) {
    static const char* names[] = {"bool", "termFrequency", "normalizedTermFrequency"};
    parts.push_back(std::string("weighting=") + names[static_cast<int>(*m.weighting)]);
  }
  if (m.distance) parts.push_back(*m.distance == Distance::Cosine ? "distance=cosine" : "distance=manhattan");
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

int cmd_metrics_list(std::ostream& out) {
  out << "name\tfamily\tunit\tn\tparameters\tnormalized\tpadded\tminInputLength\n";
  for (const auto& m : metrics::catalog()) {
    out << m.name << '\t' << metrics::to_string(m.family) << '\t' << metrics::to_string(m.unit) << '\t'
        << (m.n ? std::to_string(*m.n) : std::string()) << '\t' << metric_parameters(m) << '\t'
        << (m.normalized ? "yes" : "no") << '\t' << (m.padded ? "yes" : "no") << '\t' << m.min_input_length << '\n';
  }
  return kExitOk;
}

int cmd_metrics_score(const std::string& name, const std::string& a, const std::string& b, std::ostream& out) {
  const metrics::MetricDescriptor* d = nullptr;
  try {
    d = &metrics::resolve(name);
  } catch (const metrics::UnknownMetric& e) {
    throw UsageError(e.what());
  }
  const auto s = metrics::score(*d, read_file(a), read_file(b));
  if (!s) {
    out << "tooShort\n";
  } else {
    out << format_double(*s, 12) << '\n';
  }
  return kExitOk;
}

HttpServer* g_server = nullptr;

extern "C" void stop_server(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string& input, const std::string& gt, const std::string& host, int port,
              unsigned parallelism, std::ostream& out) {
  if (gt.empty()) throw UsageError("serve needs --gt for the annotation file");
  auto corpus = load_corpus(input, parallelism);
  AnnotationService service(std::move(corpus), gt, fs::path(gt).stem().string());
  HttpServer server(service);
  const int bound = server.bind(host, port);
  out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  server.run();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reconstructs, evaluates and analyzes the block-level edit history of Markdown posts.", "posthist"};
  app.require_subcommand(1);

  std::string input, gt_single, config = "paper-final", out_path, selection, root, comments, refs, metric, file_a,
                                file_b, host = "127.0.0.1";
  std::vector<std::string> gts;
  int stage = 0, port = 8080, parallelism = 0;
  double quantile = 0;
  bool force = false;

  auto* rec = app.add_subcommand("reconstruct", "Split posts into blocks, link block versions, write tables");
  rec->add_option("--input", input, "Post history TSV")->required();
  rec->add_option("--config", config, "Preset or metric configuration")->capture_default_str();
  rec->add_option("--out", out_path, "Output directory")->required();

  auto* eval = app.add_subcommand("evaluate", "Score configurations against ground truth");
  eval->add_option("--input", input, "Post history TSV or reconstruct output directory");
  eval->add_option("--gt", gts, "Ground-truth CSV (repeatable, one per sample)")->required();
  eval->add_option("--stage", stage, "Sweep stage")->check(CLI::IsMember({1, 2, 3}));
  eval->add_option("--config", config, "Evaluate a single configuration instead of a sweep");
  eval->add_option("--selection", selection, "Metric names (stages 1, 2) or role=metric@t lines (stage 3)");
  eval->add_option("--quantile", quantile, "Also write metrics reaching this MCC quantile")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--out", out_path, "Results TSV")->required();

  auto* ana = app.add_subcommand("analyze", "Evolution statistics over a reconstructed corpus");
  ana->add_option("--input", input, "Reconstruct output directory or post history TSV")->required();
  ana->add_option("--comments", comments, "Comment TSV: postId, creationDate, userId");
  ana->add_option("--references", refs, "Reference table written by scan");
  ana->add_option("--out", out_path, "Output directory")->required();

  auto* scan = app.add_subcommand("scan", "Find links to posts in a source tree");
  scan->add_option("--root", root, "Directory whose subdirectories are repositories")->required();
  scan->add_option("--out", out_path, "Reference TSV (stdout if omitted)");

  auto* met = app.add_subcommand("metrics", "Similarity metric catalog");
  met->require_subcommand(1);
  auto* met_list = met->add_subcommand("list", "Print the catalog");
  auto* met_score = met->add_subcommand("score", "Score two files");
  met_score->add_option("--metric", metric)->required();
  met_score->add_option("--a", file_a)->required()->check(CLI::ExistingFile);
  met_score->add_option("--b", file_b)->required()->check(CLI::ExistingFile);

  auto* srv = app.add_subcommand("serve", "HTTP annotation API");
  srv->add_option("--input", input, "Post history TSV or reconstruct output directory")->required();
  srv->add_option("--gt", gt_single, "Annotation CSV (created on first save)");
  srv->add_option("--host", host)->capture_default_str();
  srv->add_option("--port", port)->capture_default_str()->check(CLI::Range(0, 65535));

  for (auto* sub : {rec, eval, ana, scan, srv}) {
    sub->add_option("--parallelism", parallelism, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--force", force, "Overwrite existing output");
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << "\n" << app.help();
    return kExitUsage;
  }

  const unsigned threads = resolve_parallelism(parallelism);
  try {
    if (rec->parsed()) return cmd_reconstruct(input, config, out_path, threads, force, out);
    if (eval->parsed()) {
      const bool config_given = eval->count("--config") > 0;
      return cmd_evaluate(input, gts, stage, config_given ? config : std::string(), selection, quantile, out_path,
                          threads, force, out);
    }
    if (ana->parsed()) return cmd_analyze(input, comments, refs, out_path, threads, force, out);
    if (scan->parsed()) return cmd_scan(root, out_path, threads, force, out);
    if (met_list->parsed()) return cmd_metrics_list(out);
    if (met_score->parsed()) return cmd_metrics_score(metric, file_a, file_b, out);
    if (srv->parsed()) return cmd_serve(input, gt_single, host, port, threads, out);
  } catch (const UsageError& e) {
    err << "posthist: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "posthist: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace posthist::cli
