#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "box2el/embedding.hpp"
#include "box2el/loss.hpp"
#include "box2el/normal_form.hpp"
#include "box2el/rng.hpp"
#include "box2el/splits.hpp"

namespace box2el {

struct LrDecay {
  double factor = 0.1;
  int after_epoch = 2000;  // epochs beyond this index use lr * factor
};

struct TrainConfig {
  int dim = 50;
  double margin = 0.0;          // gamma
  double learning_rate = 0.01;
  double neg_distance = 2.0;    // delta
  int neg_samples = 1;          // omega, per NF3 axiom per epoch
  double reg_lambda = 0.0;      // lambda
  int max_epochs = 10000;
  int batch_size = 512;
  int val_every = 100;
  int val_cap = 1000;           // validation axioms used per evaluation
  std::uint64_t seed = 0;
  std::optional<LrDecay> lr_decay;
  bool viz_loss = false;
  double viz_min_offset = 0.2;
  RoleMode role_mode = RoleMode::Boxes;

  LossConfig loss_config() const;
};

struct ValidationPoint {
  int epoch = 0;
  double mrr = 0;
};

struct TrainHistory {
  std::vector<LossReport> epochs;  // index 0 = epoch 1
  std::vector<ValidationPoint> validation;
  int selected_epoch = 0;
  int skipped_untrainable = 0;  // axioms whose loss is undefined (e.g. Top-left)
};

struct TrainResult {
  EmbeddingStore store;  // snapshot at selected_epoch
  TrainHistory history;
};

// One corruption of each NF3 axiom, omega times: either side is replaced by
// a uniformly drawn different concept. Regenerated fresh every epoch.
std::vector<NormalizedAxiom> sample_negatives(const std::vector<NormalizedAxiom>& nf3_axioms,
                                              int omega, const Signature& signature, Rng& rng);

// Mini-batch Adam over the training split. Every epoch draws new negatives
// and reshuffles; every val_every epochs the validation MRR is measured and
// the best snapshot kept. Without validation axioms the snapshot with the
// lowest epoch-total loss is returned. Deterministic for a fixed config.
TrainResult train(const NormalizedOntology& ontology, const DatasetSplit& split,
                  const TrainConfig& config);

// One line per epoch: epoch, per-tag losses, total, lr.
void write_history_tsv(std::ostream& out, const TrainHistory& history, const TrainConfig& config);

}  // namespace box2el
