// box2el: train, evaluate, verify, and plot box embeddings of EL ontologies.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "box2el/checkpoint.hpp"
#include "box2el/errors.hpp"
#include "box2el/normalize.hpp"
#include "box2el/parser.hpp"
#include "box2el/ranking.hpp"
#include "box2el/saturation.hpp"
#include "box2el/splits.hpp"
#include "box2el/svg_plot.hpp"
#include "box2el/trainer.hpp"
#include "box2el/verifier.hpp"

namespace fs = std::filesystem;
using namespace box2el;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw DataError("failed to write '" + path + "'");
}

NormalizedOntology load_and_normalize(const std::string& path, bool strict) {
  ParseOptions options;
  options.strict = strict;
  ParsedOntology parsed = parse_ontology(read_file(path), options);
  return normalize_ontology(parsed.signature, parsed.axioms);
}

// Rebuild a NormalizedOntology around pre-normalized TSV axioms.
NormalizedOntology ontology_from_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  NormalizedOntology onto;
  onto.axioms = read_axioms_tsv(in);
  for (const auto& [tag, list] : onto.axioms) {
    for (const auto& ax : list) {
      for (const Atom* a : {&ax.c, &ax.d, &ax.e}) {
        if (a->kind == Atom::Kind::Concept && !a->name.empty()) {
          if (!onto.signature.has_concept(a->name)) onto.signature.add_concept(a->name);
        } else if (a->kind == Atom::Kind::Nominal) {
          if (!onto.signature.has_individual(a->name)) onto.signature.add_individual(a->name);
        }
      }
      for (const std::string* r : {&ax.r1, &ax.r2, &ax.rsup}) {
        if (!r->empty() && !onto.signature.has_role(*r)) onto.signature.add_role(*r);
      }
    }
  }
  return onto;
}

struct HyperOpts {
  int dim = 50;
  double margin = 0.0;
  double lr = 0.01;
  double delta = 2.0;
  int neg_samples = 1;
  double reg_lambda = 0.0;
  int epochs = 10000;
  int batch_size = 512;
  int val_every = 100;
  std::uint64_t seed = 0;
  std::string role_mode = "box";
  std::string lr_decay;  // "factor:epoch"
  bool viz_loss = false;
  std::string split = "1,0,0";
};

void add_hyper_flags(CLI::App* cmd, HyperOpts& h) {
  cmd->add_option("--dim", h.dim, "embedding dimensionality n")->check(CLI::PositiveNumber);
  cmd->add_option("--margin", h.margin, "margin gamma");
  cmd->add_option("--lr", h.lr, "learning rate")->check(CLI::PositiveNumber);
  cmd->add_option("--delta", h.delta, "negative-sample target distance")->check(CLI::PositiveNumber);
  cmd->add_option("--neg-samples", h.neg_samples, "negative samples per NF3 axiom per epoch")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--reg-lambda", h.reg_lambda, "bump regularization strength")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--epochs", h.epochs, "maximum training epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--batch-size", h.batch_size, "mini-batch size")->check(CLI::PositiveNumber);
  cmd->add_option("--val-every", h.val_every, "validation interval in epochs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", h.seed, "random seed");
  cmd->add_option("--role-mode", h.role_mode, "role representation: box or translation")
      ->check(CLI::IsMember({"box", "translation"}));
  cmd->add_option("--lr-decay", h.lr_decay, "decay as factor:epoch, e.g. 0.1:2000");
  cmd->add_flag("--viz-loss", h.viz_loss, "add the minimum-offset term for plottable boxes");
  cmd->add_option("--split", h.split, "train,valid,test ratios (default 1,0,0)");
}

TrainConfig to_train_config(const HyperOpts& h) {
  TrainConfig cfg;
  cfg.dim = h.dim;
  cfg.margin = h.margin;
  cfg.learning_rate = h.lr;
  cfg.neg_distance = h.delta;
  cfg.neg_samples = h.neg_samples;
  cfg.reg_lambda = h.reg_lambda;
  cfg.max_epochs = h.epochs;
  cfg.batch_size = h.batch_size;
  cfg.val_every = h.val_every;
  cfg.seed = h.seed;
  cfg.viz_loss = h.viz_loss;
  cfg.role_mode = role_mode_from_name(h.role_mode);
  if (!h.lr_decay.empty()) {
    auto colon = h.lr_decay.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--lr-decay", "expected factor:epoch");
    }
    LrDecay decay;
    try {
      decay.factor = std::stod(h.lr_decay.substr(0, colon));
      decay.after_epoch = std::stoi(h.lr_decay.substr(colon + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--lr-decay", "expected factor:epoch");
    }
    cfg.lr_decay = decay;
  }
  return cfg;
}

SplitRatios parse_split(const std::string& text) {
  SplitRatios r;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &r.train, &r.valid, &r.test) != 3) {
    throw CLI::ValidationError("--split", "expected three comma-separated ratios");
  }
  return r;
}

LossConfig eval_loss_config(const EmbeddingStore& store, const std::string& mode_override) {
  LossConfig cfg;
  cfg.role_mode = store.role_mode;
  if (!mode_override.empty()) cfg.role_mode = role_mode_from_name(mode_override);
  return cfg;
}

int cmd_normalize(const std::string& input, const std::string& output, bool strict) {
  NormalizedOntology onto = load_and_normalize(input, strict);
  std::ostringstream os;
  write_axioms_tsv(os, onto.axioms);
  if (output.empty() || output == "-") {
    std::cout << os.str();
  } else {
    write_file(output, os.str());
  }
  std::cerr << "normalized " << onto.size() << " axioms ("
            << onto.stats.tautologies_dropped << " tautologies dropped, "
            << onto.stats.duplicates_dropped << " duplicates, "
            << onto.stats.fresh_concepts << " fresh concepts, "
            << onto.stats.fresh_roles << " fresh roles)\n";
  return 0;
}

int cmd_saturate(const std::string& input, const std::string& output, bool strict) {
  NormalizedOntology onto = load_and_normalize(input, strict);
  auto pairs = saturate_nf1(onto);
  std::ostringstream os;
  for (const auto& [a, b] : pairs) os << a.to_string() << '\t' << b.to_string() << '\n';
  if (output.empty() || output == "-") {
    std::cout << os.str();
  } else {
    write_file(output, os.str());
  }
  std::cerr << "derived " << pairs.size() << " atomic subsumptions\n";
  return 0;
}

int cmd_train(const std::string& input, const std::string& out_dir, const HyperOpts& hyper,
              bool strict) {
  NormalizedOntology onto = load_and_normalize(input, strict);
  TrainConfig cfg = to_train_config(hyper);
  DatasetSplit split = make_splits(onto, parse_split(hyper.split), cfg.seed);

  fs::create_directories(out_dir);
  save_axioms_tsv(out_dir + "/train.tsv", split.train);
  save_axioms_tsv(out_dir + "/valid.tsv", split.valid);
  save_axioms_tsv(out_dir + "/test.tsv", split.test);

  TrainResult result = train(onto, split, cfg);
  save_checkpoint(result.store, out_dir + "/checkpoint.json");
  std::ofstream hist(out_dir + "/history.tsv", std::ios::binary);
  write_history_tsv(hist, result.history, cfg);

  const LossReport& last = result.history.epochs.back();
  std::cerr << "trained " << axiom_count(split.train) << " axioms for "
            << result.history.epochs.size() << " epochs; final loss " << last.total()
            << "; selected epoch " << result.history.selected_epoch << "\n";
  if (result.history.skipped_untrainable > 0) {
    std::cerr << "note: " << result.history.skipped_untrainable
              << " axioms have no loss under this role mode and were not trained\n";
  }
  std::cerr << "wrote " << out_dir << "/checkpoint.json\n";
  return 0;
}

int cmd_evaluate(const std::string& checkpoint, const std::string& splits_dir,
                 const std::string& mode, const std::string& output,
                 const std::string& role_mode_override) {
  EmbeddingStore store = load_checkpoint(checkpoint);
  LossConfig cfg = eval_loss_config(store, role_mode_override);

  TaggedAxioms train = load_axioms_tsv(splits_dir + "/train.tsv");
  TaggedAxioms valid = load_axioms_tsv(splits_dir + "/valid.tsv");
  TaggedAxioms test = load_axioms_tsv(splits_dir + "/test.tsv");
  if (axiom_count(test) == 0) throw DataError("test split is empty");

  FilterIndex filters;
  filters.add(train);
  filters.add(valid);
  filters.add(test);

  EvalMode eval_mode = EvalMode::Both;
  if (mode == "raw") eval_mode = EvalMode::Raw;
  if (mode == "filtered") eval_mode = EvalMode::Filtered;

  EvalResult result = evaluate_split(store, test, filters, cfg, eval_mode);
  std::string tsv = metrics_tsv(result);
  if (output.empty() || output == "-") {
    std::cout << tsv;
  } else {
    write_file(output, tsv);
  }
  std::cerr << "evaluated " << result.queries.size() << " queries over " << result.n_candidates
            << " candidates";
  if (result.skipped_queries > 0) std::cerr << " (" << result.skipped_queries << " skipped)";
  std::cerr << "\n";
  return 0;
}

int cmd_verify(const std::string& checkpoint, const std::string& ontology_path, bool normalized,
               bool strict, double epsilon, const std::string& output,
               const std::string& role_mode_override) {
  EmbeddingStore store = load_checkpoint(checkpoint);
  LossConfig cfg = eval_loss_config(store, role_mode_override);
  NormalizedOntology onto =
      normalized ? ontology_from_tsv(ontology_path) : load_and_normalize(ontology_path, strict);

  VerificationReport report = is_model(store, onto.axioms, epsilon, cfg);
  std::string tsv = report_tsv(report);
  if (output.empty() || output == "-") {
    std::cout << tsv;
  } else {
    write_file(output, tsv);
  }
  int satisfied = 0, violated = 0;
  for (const auto& [tag, sv] : report.counts) {
    satisfied += sv.first;
    violated += sv.second;
  }
  std::cerr << (report.is_model ? "model: every axiom satisfied" : "not a model") << " ("
            << satisfied << " satisfied, " << violated << " violated, eps " << epsilon << ")\n";
  return 0;
}

int cmd_viz(const std::string& checkpoint, const std::string& output) {
  EmbeddingStore store = load_checkpoint(checkpoint);
  std::string svg = render_svg(store);
  write_file(output, svg);
  std::cerr << "wrote " << output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box embeddings of EL ontologies: concepts as boxes, roles as head/tail box pairs"};
  app.require_subcommand(1);

  std::string input, output, out_dir = "run";
  std::string checkpoint, splits_dir, mode = "both", role_mode_override;
  bool strict = false, normalized = false;
  double epsilon = 1e-3;
  HyperOpts hyper;

  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "Parse an ontology and write its normal forms as TSV");
  normalize_cmd->add_option("ontology", input, "ontology file")->required();
  normalize_cmd->add_option("-o,--output", output, "output TSV (default stdout)");
  normalize_cmd->add_flag("--strict", strict, "require declarations for all names");

  CLI::App* saturate_cmd =
      app.add_subcommand("saturate", "Derive all entailed atomic subsumptions");
  saturate_cmd->add_option("ontology", input, "ontology file")->required();
  saturate_cmd->add_option("-o,--output", output, "output TSV (default stdout)");
  saturate_cmd->add_flag("--strict", strict, "require declarations for all names");

  CLI::App* train_cmd = app.add_subcommand("train", "Learn embeddings for an ontology");
  train_cmd->add_option("ontology", input, "ontology file")->required();
  train_cmd->add_option("-o,--out-dir", out_dir, "output directory (default ./run)");
  train_cmd->add_flag("--strict", strict, "require declarations for all names");
  add_hyper_flags(train_cmd, hyper);

  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Ranking metrics on a test split");
  eval_cmd->add_option("-c,--checkpoint", checkpoint, "checkpoint file")->required();
  eval_cmd->add_option("-s,--splits", splits_dir, "directory with train/valid/test.tsv")->required();
  eval_cmd->add_option("-m,--mode", mode, "raw, filtered, or both")
      ->check(CLI::IsMember({"raw", "filtered", "both"}));
  eval_cmd->add_option("-o,--output", output, "metrics TSV (default stdout)");
  eval_cmd->add_option("--role-mode", role_mode_override, "override the checkpoint role mode")
      ->check(CLI::IsMember({"box", "translation"}));

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check which axioms the embeddings satisfy geometrically");
  verify_cmd->add_option("ontology", input, "ontology file (or normalized TSV with --normalized)")
      ->required();
  verify_cmd->add_option("-c,--checkpoint", checkpoint, "checkpoint file")->required();
  verify_cmd->add_flag("--normalized", normalized, "input is a normalized-axiom TSV");
  verify_cmd->add_flag("--strict", strict, "require declarations for all names");
  verify_cmd->add_option("-e,--epsilon", epsilon, "per-coordinate slack")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("-o,--output", output, "report TSV (default stdout)");
  verify_cmd->add_option("--role-mode", role_mode_override, "override the checkpoint role mode")
      ->check(CLI::IsMember({"box", "translation"}));

  CLI::App* viz_cmd = app.add_subcommand("viz", "Render a 2-d checkpoint as SVG");
  viz_cmd->add_option("-c,--checkpoint", checkpoint, "checkpoint file")->required();
  viz_cmd->add_option("-o,--output", output, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (normalize_cmd->parsed()) return cmd_normalize(input, output, strict);
    if (saturate_cmd->parsed()) return cmd_saturate(input, output, strict);
    if (train_cmd->parsed()) return cmd_train(input, out_dir, hyper, strict);
    if (eval_cmd->parsed()) return cmd_evaluate(checkpoint, splits_dir, mode, output, role_mode_override);
    if (verify_cmd->parsed())
      return cmd_verify(checkpoint, input, normalized, strict, epsilon, output, role_mode_override);
    if (viz_cmd->parsed()) return cmd_viz(checkpoint, output);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " at line " << e.line << ", column " << e.column << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
