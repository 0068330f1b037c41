#include "pennant/cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "pennant/corpus.hpp"
#include "pennant/error.hpp"
#include "pennant/index.hpp"
#include "pennant/pennant.hpp"
#include "pennant/render.hpp"
#include "pennant/service.hpp"

namespace pennant {
namespace {

struct UsageError : Error {
  using Error::Error;
};

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("failed to write " + path);
}

int run_index(const std::string& corpus_path, const std::string& out_path,
              const std::string& format, bool fold_case, bool no_trim, std::ostream& err) {
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw Error("cannot open corpus " + corpus_path);
  CorpusFormat fmt = guess_corpus_format(corpus_path);
  if (format == "tsv") fmt = CorpusFormat::kTsv;
  if (format == "jsonl") fmt = CorpusFormat::kJsonLines;

  NormalizationPolicy norm;
  norm.trim = !no_trim;
  norm.fold_case = fold_case;
  const Corpus corpus = read_corpus(in, fmt, norm);
  const TermIndex index = TermIndex::build(corpus);
  index.save_file(out_path);
  err << "indexed " << index.n_docs() << " documents, " << index.vocab_size() << " terms";
  if (corpus.dropped_empty > 0) err << " (" << corpus.dropped_empty << " empty documents dropped)";
  err << '\n';
  return kExitOk;
}

// Blocks SIGINT/SIGTERM for the whole process and stops `server` once one
// arrives. The watcher exits when `done` is set.
void watch_signals(HttpServer& server, const std::atomic<bool>& done) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  const timespec tick{0, 200'000'000};
  while (!done) {
    if (sigtimedwait(&set, nullptr, &tick) > 0) {
      server.stop();
      return;
    }
  }
}

int run_serve(ServiceConfig config, std::ostream& err) {
  auto index = std::make_shared<const TermIndex>(TermIndex::load_file(config.index_path));
  const PennantService service(index, config);
  HttpServer server(service);

  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  const int port = server.bind(config.host, config.port);
  err << "serving " << config.index_path << " (" << index->n_docs() << " documents) on http://"
      << config.host << ':' << port << '\n';
  err.flush();

  std::atomic<bool> done{false};
  std::thread watcher([&] { watch_signals(server, done); });
  server.listen();
  done = true;
  watcher.join();
  pthread_sigmask(SIG_UNBLOCK, &set, nullptr);
  err << "stopped\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pennant diagrams for descriptor co-occurrence", "pennant"};
  app.require_subcommand(1);

  std::string corpus_path, index_out, corpus_format = "auto";
  bool fold_case = false, no_trim = false;
  auto* index_cmd = app.add_subcommand("index", "Build an index file from a corpus");
  index_cmd->add_option("corpus", corpus_path, "Corpus file (id<TAB>term|term|... or JSON lines)")->required();
  index_cmd->add_option("-o,--output", index_out, "Index file to write")->required();
  index_cmd->add_option("--format", corpus_format, "Corpus format")
      ->check(CLI::IsMember({"auto", "tsv", "jsonl"}));
  index_cmd->add_flag("--fold-case", fold_case, "Lower-case terms and ids (ASCII)");
  index_cmd->add_flag("--no-trim", no_trim, "Keep surrounding whitespace");

  std::string index_path, seed;
  Count min_co = kDefaultMinCo;
  Count rank_min_co = 1;
  std::size_t top_k = 0;

  auto* rank_cmd = app.add_subcommand("rank", "List terms co-occurring with a seed");
  rank_cmd->add_option("index", index_path, "Index file")->required();
  rank_cmd->add_option("--seed", seed, "Seed term")->required();
  rank_cmd->add_option("--min-co", rank_min_co, "Minimum co-occurrence count")
      ->check(CLI::PositiveNumber);
  auto* rank_top = rank_cmd->add_option("--top", top_k, "Keep only the first K terms")
                       ->check(CLI::PositiveNumber);

  std::string base_text = "10", format = "json", output;
  SectorParams sectors;
  Count n_override = 0;
  auto* pennant_cmd = app.add_subcommand("pennant", "Compute a pennant diagram");
  pennant_cmd->add_option("index", index_path, "Index file")->required();
  pennant_cmd->add_option("--seed", seed, "Seed term")->required();
  pennant_cmd->add_option("--min-co", min_co, "Minimum co-occurrence count")->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* pennant_top = pennant_cmd->add_option("--top", top_k, "Keep only the K strongest co-occurring terms")
                          ->check(CLI::PositiveNumber);
  pennant_cmd->add_option("--base", base_text, "Logarithm base (> 1, or e)")->capture_default_str();
  pennant_cmd->add_option("--alpha", sectors.alpha, "Sector A bound on df ratio")->capture_default_str();
  pennant_cmd->add_option("--gamma", sectors.gamma, "Sector C bound on df ratio")->capture_default_str();
  pennant_cmd->add_option("--tau", sectors.tau, "Dominance threshold on co/df(seed)")->capture_default_str();
  auto* n_opt = pennant_cmd->add_option("--n-docs", n_override,
                                        "Database size N to use for idf instead of the index size")
                    ->check(CLI::PositiveNumber);
  pennant_cmd->add_option("--format", format, "Output format")->capture_default_str()
      ->check(CLI::IsMember({"json", "tsv", "svg"}));
  pennant_cmd->add_option("-o,--output", output, "Write to file instead of stdout");

  ServiceConfig config;
  std::string listen;
  std::string serve_base = "10";
  Count serve_min_co = kDefaultMinCo;
  auto* serve_cmd = app.add_subcommand("serve", "Serve pennants over HTTP");
  auto* serve_index = serve_cmd->add_option("index", config.index_path, "Index file (or PENNANT_INDEX)");
  auto* listen_opt = serve_cmd->add_option("--listen", listen, "Address to listen on, host:port (or PENNANT_LISTEN)");
  serve_cmd->add_option("--min-co", serve_min_co, "Default minimum co-occurrence count")->capture_default_str()
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--base", serve_base, "Default logarithm base")->capture_default_str();
  serve_cmd->add_flag("--cors", config.cors, "Allow cross-origin requests from a browser UI");
  serve_cmd->add_option("--cors-origin", config.cors_origin, "Value for Access-Control-Allow-Origin")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pennant: " << e.what() << '\n';
    return kExitUsage;
  }

  auto load = [&] { return TermIndex::load_file(index_path); };

  try {
    if (index_cmd->parsed()) {
      return run_index(corpus_path, index_out, corpus_format, fold_case, no_trim, err);
    }

    if (rank_cmd->parsed()) {
      const TermIndex index = load();
      const std::string s = normalize_term(seed, index.build_meta().norm);
      std::optional<std::size_t> k;
      if (rank_top->count() > 0) k = top_k;
      out << to_rank_table(index, index.rank_cooccurring(s, rank_min_co, k));
      return kExitOk;
    }

    if (pennant_cmd->parsed()) {
      PennantParams params;
      params.min_co = min_co;
      if (pennant_top->count() > 0) params.top_k = top_k;
      const auto base = parse_log_base(base_text);
      if (!base) throw UsageError("--base must be a number greater than 1 or \"e\"");
      params.log_base = *base;
      params.sectors = sectors;
      validate(params.sectors);
      if (n_opt->count() > 0) params.n_override = n_override;

      const TermIndex index = load();
      const std::string s = normalize_term(seed, index.build_meta().norm);
      const PennantDiagram d = compute_pennant(index, s, params);
      std::string text;
      if (format == "tsv") {
        text = to_table(d);
      } else if (format == "svg") {
        text = to_svg(d);
      } else {
        text = to_json(d);
      }
      write_output(text, output, out);
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      const std::string flag_index = config.index_path;
      apply_env_overrides(config);
      // Explicit flags win over the environment.
      if (serve_index->count() > 0) config.index_path = flag_index;
      if (listen_opt->count() > 0) parse_listen(listen, config);
      if (config.index_path.empty()) throw UsageError("serve needs an index file (argument or PENNANT_INDEX)");
      const auto base = parse_log_base(serve_base);
      if (!base) throw UsageError("--base must be a number greater than 1 or \"e\"");
      config.default_log_base = *base;
      config.default_min_co = serve_min_co;
      return run_serve(config, err);
    }
  } catch (const UsageError& e) {
    err << "pennant: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameterError& e) {
    err << "pennant: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "pennant: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace pennant
