#include "cli/app.h"

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <new>

#include "cli/commands.h"
#include "trollrole/errors.h"

namespace trollrole::cli {
namespace {

// "--walk-length" also answers to "--walk_length", which is the spelling
// config-file keys use.
std::string names(const std::string& dashed) {
  std::string under = dashed;
  std::replace(under.begin(), under.end(), '-', '_');
  return under == dashed ? "--" + dashed : "--" + dashed + ",--" + under;
}

void define_options(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "flat key=value file; flags win over its values");
  app.add_option(names("out-dir"), c.out_dir, "artifact directory")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--workers", c.workers, "worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", c.deterministic, "single worker, reproducible output");

  app.add_option("--tweets", c.tweets, "tweet CSV (author,content,account_category)");
  app.add_option("--media", c.media, "media CSV (domain,bias)");
  app.add_option("--expansion", c.expansion, "short-URL map CSV (short_url,resolved_url)");
  app.add_option(names("text-embeddings"), c.text_embeddings, "per-user text vectors");
  app.add_option("--labels", c.labels, "handle,role CSV (default <out-dir>/labels.csv)");
  app.add_flag(names("no-labels"), c.no_labels, "withhold user labels (run-t2)");

  app.add_option("--dims", c.dims, "embedding dimension")->capture_default_str();
  app.add_option(names("walk-length"), c.walk_length)->capture_default_str();
  app.add_option(names("walks-per-node"), c.walks_per_node)->capture_default_str();
  app.add_option("--p", c.p, "return parameter")->capture_default_str();
  app.add_option("--q", c.q, "in-out parameter")->capture_default_str();
  app.add_option("--window", c.window)->capture_default_str();
  app.add_option("--negatives", c.negatives)->capture_default_str();
  app.add_option("--epochs", c.epochs)->capture_default_str();
  app.add_option(names("learning-rate"), c.learning_rate)->capture_default_str();
  app.add_flag(names("keep-tokens"), c.keep_tokens, "also export hashtag and mention vectors");
  app.add_flag(names("target-only"), c.target_only, "build graphs from target roles only");

  app.add_option("--features", c.features,
                 "feature combinations, e.g. u2h,u2h||u2m,u2h(+)u2m,u2h||u2m+lp2")
      ->delimiter(',');
  app.add_option("--lambda", c.lambda, "L2 strength")->capture_default_str();
  app.add_option(names("max-iterations"), c.max_iterations)->capture_default_str();
  app.add_option("--tau", c.tau, "LP2 cosine threshold")->capture_default_str();
  app.add_option("--folds", c.folds)->capture_default_str();
  app.add_option(names("max-rounds"), c.max_rounds)->capture_default_str();
  app.add_option("--graph", c.graph, "u2h, u2m, lp1 or lp2 (dump-graph)")
      ->capture_default_str();
  app.add_option("--output", c.output, "dump-graph destination (default stdout)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Troll role classification from graph and text embeddings", "trollrole"};
  app.require_subcommand(1);
  RunConfig cfg;
  define_options(app, cfg);

  SyntheticConfig synth;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"ingest", "parse tweets and media, build the citation index"},
      {"embed", "train node2vec embeddings on the U2H and U2M graphs"},
      {"run-t1", "fully supervised cross-validation"},
      {"run-t2", "distant supervision from media bias"},
      {"run-reverse", "predict media bias from user-trained models"},
      {"dump-graph", "write a graph as an edge list"},
      {"synth", "generate a synthetic planted-community corpus"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    if (std::string_view(s.name) == "synth") {
      sub->add_option("--users", synth.users)->capture_default_str();
      sub->add_option("--hashtags", synth.hashtags)->capture_default_str();
      sub->add_option("--media-count", synth.media)->capture_default_str();
      sub->add_option("--tweets-per-user", synth.tweets_per_user)->capture_default_str();
      sub->add_option("--noise", synth.noise)->capture_default_str();
      sub->add_option("--subcommunities", synth.subcommunities)->capture_default_str();
      sub->add_option("--extra-users", synth.extra_users)->capture_default_str();
      sub->add_option("--text-dim", synth.text_dim)->capture_default_str();
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  synth.seed = cfg.seed;

  try {
    if (cfg.command == "ingest") {
      cmd_ingest(cfg, out, err);
    } else if (cfg.command == "embed") {
      cmd_embed(cfg, out, err);
    } else if (cfg.command == "run-t1") {
      cmd_run_t1(cfg, out, err);
    } else if (cfg.command == "run-t2") {
      cmd_run_t2(cfg, out, err);
    } else if (cfg.command == "run-reverse") {
      cmd_run_reverse(cfg, out, err);
    } else if (cfg.command == "dump-graph") {
      cmd_dump_graph(cfg, out, err);
    } else {
      cmd_synth(cfg, synth, out);
    }
  } catch (const TrainingError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace trollrole::cli
