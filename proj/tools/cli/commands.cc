#include "cli/commands.h"

#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "trollrole/csv.h"
#include "trollrole/errors.h"
#include "trollrole/experiments.h"
#include "trollrole/features.h"

namespace trollrole::cli {
namespace fs = std::filesystem;
namespace {

std::ifstream open_input(const fs::path& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " path is not set");
  if (!fs::is_regular_file(path)) {
    throw ConfigError("missing " + what + " file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + what + " file: " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void write_provenance(std::ostream& out, const RunConfig& cfg) {
  for (const auto& line : cfg.provenance()) out << line << '\n';
}

std::vector<TweetRecord> load_corpus(const RunConfig& cfg) {
  auto in = open_input(cfg.out_path() / "corpus.jsonl", "corpus (run ingest first)");
  return read_corpus(in);
}

std::vector<std::string> load_targets(const RunConfig& cfg) {
  auto in = open_input(cfg.out_path() / "targets.txt", "target list (run ingest first)");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

MediaList load_media(const RunConfig& cfg) {
  auto in = open_input(cfg.out_path() / "media.csv", "media list (run ingest first)");
  return parse_media_list(in);
}

EmbeddingTable load_table(const fs::path& path, const std::string& name) {
  auto in = open_input(path, name + " embeddings");
  try {
    return read_embedding_text(in, name);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string slug(const std::string& method) {
  std::string s = method;
  auto replace = [&](std::string_view from, std::string_view to) {
    for (std::size_t pos; (pos = s.find(from)) != std::string::npos;) {
      s.replace(pos, from.size(), to);
    }
  };
  replace(" || ", "-");
  replace(" (+) ", "_x_");
  replace(" + ", "_");
  for (char& c : s) {
    c = std::isalnum(static_cast<unsigned char>(c))
            ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
            : (c == '-' ? '-' : '_');
  }
  return s;
}

std::vector<FeatureCombination> combinations(const RunConfig& cfg, bool have_text,
                                             bool allow_lp) {
  std::vector<std::string> specs = cfg.features;
  if (specs.empty()) {
    specs = {"u2h", "u2m", "u2h||u2m", "u2h(+)u2m"};
    if (have_text) {
      specs.insert(specs.end(), {"text", "u2h||u2m||text", "u2h(+)u2m(+)text"});
    }
    if (allow_lp) {
      const std::string best = have_text ? "u2h||u2m||text" : "u2h||u2m";
      specs.push_back(best + "+lp1");
      specs.push_back(best + "+lp2");
    }
  }
  std::vector<FeatureCombination> out;
  for (const auto& s : specs) out.push_back(FeatureCombination::parse(s));
  return out;
}

// Inputs shared by the three runners.
struct Workspace {
  std::vector<TweetRecord> tweets;
  MediaList media;
  MediaCitationIndex index;
  NodeGraph u2h;
  NodeGraph u2m;
  EmbeddingTable u2h_vectors;
  EmbeddingTable u2m_vectors;
  std::optional<EmbeddingTable> text;
  std::map<std::string, Role> labels;
  bool have_labels = false;
  ExperimentInputs inputs;
};

void load_workspace(const RunConfig& cfg, bool labels_required, Workspace& ws) {
  ws.tweets = load_corpus(cfg);
  ws.media = load_media(cfg);
  ws.index = build_citation_index(ws.tweets, ws.media);
  ws.u2h_vectors = load_table(cfg.out_path() / "u2h.vec", "u2h");
  ws.u2m_vectors = load_table(cfg.out_path() / "u2m.vec", "u2m");
  if (!cfg.text_embeddings.empty()) {
    ws.text = load_table(cfg.text_embeddings, "text");
  }
  if (cfg.no_labels) {
    if (labels_required) throw ConfigError("this task needs user labels");
  } else {
    auto in = open_input(cfg.labels_path(), "labels");
    ws.labels = read_user_labels(in);
    ws.have_labels = true;
  }

  ws.inputs.tables["u2h"] = &ws.u2h_vectors;
  ws.inputs.tables["u2m"] = &ws.u2m_vectors;
  if (ws.text) ws.inputs.tables["text"] = &*ws.text;
  ws.inputs.users = load_targets(cfg);
  ws.inputs.labels = ws.have_labels ? &ws.labels : nullptr;
  ws.inputs.index = &ws.index;
  ws.inputs.media = &ws.media;
}

void ensure_graphs(const std::vector<FeatureCombination>& combos, Workspace& ws) {
  for (const auto& c : combos) {
    if (c.lp == LpMode::kLp1) {
      ws.u2h = build_u2h(ws.tweets);
      ws.u2m = build_u2m(ws.tweets);
      ws.inputs.u2h = &ws.u2h;
      ws.inputs.u2m = &ws.u2m;
      return;
    }
  }
}

void emit_result(const RunConfig& cfg, const std::string& task,
                 const ExperimentResult& result, std::ostream& out,
                 std::ostream& err) {
  for (const auto& note : result.notes) err << "note: " << note << '\n';
  print_reports(out, result.reports);

  auto txt = open_output(cfg.out_path() / ("report_" + task + ".txt"));
  write_provenance(txt, cfg);
  print_reports(txt, result.reports);
  auto csv = open_output(cfg.out_path() / ("report_" + task + ".csv"));
  write_provenance(csv, cfg);
  write_reports_csv(csv, result.reports);

  for (const auto& p : result.predictions) {
    const fs::path path =
        cfg.out_path() / ("predictions_" + task + "_" + slug(p.method) + ".csv");
    auto f = open_output(path);
    write_provenance(f, cfg);
    if (task == "reverse") {
      std::vector<MediaPrediction> media;
      for (std::size_t i = 0; i < p.ids.size(); ++i) {
        media.push_back({p.ids[i].name, map_role_to_bias(decide(p.posteriors[i])),
                         p.posteriors[i]});
      }
      write_media_predictions_csv(f, media);
    } else {
      write_predictions_csv(f, p.ids, p.posteriors);
    }
  }
}

void run_task(const RunConfig& cfg, const std::string& task, std::ostream& out,
              std::ostream& err) {
  cfg.validate();
  Workspace ws;
  load_workspace(cfg, task != "t2", ws);
  const auto combos = combinations(cfg, ws.text.has_value(), task != "reverse");
  ensure_graphs(combos, ws);
  const ExperimentOptions options = cfg.experiment_options();
  ExperimentResult result;
  if (task == "t1") {
    result = run_t1(ws.inputs, combos, options);
  } else if (task == "t2") {
    result = run_t2(ws.inputs, combos, options);
  } else {
    result = run_reverse(ws.inputs, combos, options);
  }
  emit_result(cfg, task, result, out, err);
}

}  // namespace

void cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  Diagnostics diag;
  auto media_in = open_input(cfg.media, "media");
  const MediaList media = parse_media_list(media_in, &diag);
  ExpansionMap expansion;
  if (!cfg.expansion.empty()) {
    auto in = open_input(cfg.expansion, "expansion map");
    expansion = parse_expansion_map(in);
  }
  auto tweets_in = open_input(cfg.tweets, "tweets");
  ParseOptions options;
  options.expansion = &expansion;
  options.media = &media;
  const auto tweets = parse_tweets(tweets_in, options, &diag);
  const auto index = build_citation_index(tweets, media);
  const fs::path dir = cfg.out_path();

  {
    auto f = open_output(dir / "corpus.jsonl");
    write_provenance(f, cfg);
    write_corpus(f, tweets);
  }
  {
    auto f = open_output(dir / "labels.csv");
    write_provenance(f, cfg);
    write_user_labels(f, tweets);
  }
  const auto targets = labelled_authors(tweets);
  {
    auto f = open_output(dir / "targets.txt");
    write_provenance(f, cfg);
    for (const auto& t : targets) f << t << '\n';
  }
  {
    auto f = open_output(dir / "media.csv");
    write_provenance(f, cfg);
    write_csv_row(f, {"domain", "bias"});
    for (const auto& r : media.records()) {
      write_csv_row(f, {r.domain, std::string(bias_name(r.bias))});
    }
  }
  std::size_t citations = 0;
  std::size_t cited_media = 0;
  {
    auto f = open_output(dir / "citations.csv");
    write_provenance(f, cfg);
    write_csv_row(f, {"domain", "user"});
    for (const auto& [domain, users] : index.by_media()) {
      if (!users.empty()) ++cited_media;
      for (const auto& u : users) {
        write_csv_row(f, {domain, u});
        ++citations;
      }
    }
  }

  std::set<std::string> authors;
  std::array<std::size_t, kNumRoles> role_counts{};
  std::map<std::string, Role> roles;
  for (const auto& t : tweets) {
    authors.insert(t.author);
    if (t.role) roles.emplace(t.author, *t.role);
  }
  for (const auto& [u, r] : roles) ++role_counts[role_index(r)];
  out << "tweets: " << tweets.size() << '\n'
      << "authors: " << authors.size() << '\n'
      << "target users: " << targets.size() << " (left " << role_counts[0]
      << ", news_feed " << role_counts[1] << ", right " << role_counts[2] << ")\n"
      << "media: " << media.size() << " (" << cited_media << " cited)\n"
      << "citations: " << citations << '\n';
  diag.print(err);
}

void cmd_embed(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  cfg.validate();
  const auto tweets = load_corpus(cfg);
  const CorpusEmbeddings e = embed_corpus(tweets, cfg.embed_settings());
  auto save = [&](const char* name, const NodeGraph& g, const EmbeddingTable& t) {
    const fs::path path = cfg.out_path() / (std::string(name) + ".vec");
    {
      auto f = open_output(path);
      write_embedding_text(f, t);
    }
    auto meta = open_output(path.string() + ".meta");
    write_provenance(meta, cfg);
    meta << "# graph_nodes=" << g.num_nodes() << '\n'
         << "# graph_edges=" << g.num_edges() << '\n'
         << "# vectors=" << t.size() << '\n';
    out << name << ": " << g.num_nodes() << " nodes, " << g.num_edges() << " edges, "
        << t.size() << " vectors of dim " << t.dim() << '\n';
  };
  save("u2h", e.u2h, e.u2h_vectors);
  save("u2m", e.u2m, e.u2m_vectors);
}

void cmd_run_t1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  run_task(cfg, "t1", out, err);
}

void cmd_run_t2(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  run_task(cfg, "t2", out, err);
}

void cmd_run_reverse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  run_task(cfg, "reverse", out, err);
}

void cmd_dump_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const auto tweets = load_corpus(cfg);
  NodeGraph graph;
  if (cfg.graph == "u2h") {
    graph = build_u2h(tweets);
  } else if (cfg.graph == "u2m") {
    graph = build_u2m(tweets);
  } else if (cfg.graph == "lp1" || cfg.graph == "lp2") {
    const MediaList media = load_media(cfg);
    const auto index = build_citation_index(tweets, media);
    const auto users = load_targets(cfg);
    if (cfg.graph == "lp1") {
      graph = build_lp1_graph(build_u2h(tweets), build_u2m(tweets), index, users).graph;
    } else {
      std::vector<std::string> names = {"u2h", "u2m"};
      if (!cfg.features.empty()) {
        names = FeatureCombination::parse(cfg.features.front()).table_names();
      }
      std::vector<EmbeddingTable> tables;
      for (const auto& n : names) {
        tables.push_back(n == "text" ? load_table(cfg.text_embeddings, "text")
                                     : load_table(cfg.out_path() / (n + ".vec"), n));
      }
      std::vector<const EmbeddingTable*> ptrs;
      for (const auto& t : tables) ptrs.push_back(&t);
      std::vector<NodeId> ids;
      for (const auto& u : users) ids.push_back(NodeId::user(u));
      const FeatureMatrix u = concat_features(ptrs, ids, MissingRows::kZeroFill);
      const FeatureMatrix m = media_features(index, ptrs);
      graph = build_lp2_graph(u, m, cfg.tau).graph;
    }
  } else {
    throw ConfigError("unknown graph '" + cfg.graph + "' (expected u2h, u2m, lp1 or lp2)");
  }
  if (cfg.output.empty()) {
    graph.write_edge_list(out);
  } else {
    auto f = open_output(cfg.output);
    write_provenance(f, cfg);
    graph.write_edge_list(f);
  }
  err << cfg.graph << ": " << graph.num_nodes() << " nodes, " << graph.num_edges()
      << " edges\n";
}

void cmd_synth(const RunConfig& cfg, const SyntheticConfig& synth, std::ostream& out) {
  const SyntheticCorpus corpus = generate_synthetic(synth);
  const fs::path dir = cfg.out_path();
  auto write = [&](const char* name, const std::string& body) {
    auto f = open_output(dir / name);
    write_provenance(f, cfg);
    f << body;
  };
  write("tweets.csv", corpus.tweets_csv());
  write("media.csv", corpus.media_csv());
  write("expansion.csv", corpus.expansion_csv());
  save_embedding_file(dir / "text.vec", corpus.text);
  out << "tweets: " << corpus.tweets.size() << '\n'
      << "users: " << corpus.user_roles.size() << '\n'
      << "media: " << corpus.media.size() << '\n';
}

}  // namespace trollrole::cli
