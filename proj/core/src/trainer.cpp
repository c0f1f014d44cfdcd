#include "box2el/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "box2el/adam.hpp"
#include "box2el/errors.hpp"
#include "box2el/ranking.hpp"

namespace box2el {

LossConfig TrainConfig::loss_config() const {
  LossConfig cfg;
  cfg.margin = margin;
  cfg.neg_distance = neg_distance;
  cfg.reg_lambda = reg_lambda;
  cfg.viz_loss = viz_loss;
  cfg.viz_min_offset = viz_min_offset;
  cfg.role_mode = role_mode;
  return cfg;
}

std::vector<NormalizedAxiom> sample_negatives(const std::vector<NormalizedAxiom>& nf3_axioms,
                                              int omega, const Signature& signature, Rng& rng) {
  std::vector<NormalizedAxiom> out;
  if (omega <= 0 || nf3_axioms.empty()) return out;
  const std::vector<std::string> pool = signature.embedded_concepts();
  if (pool.size() < 2) {
    throw DataError("negative sampling needs at least 2 embedded concepts");
  }
  out.reserve(nf3_axioms.size() * static_cast<size_t>(omega));
  for (const auto& ax : nf3_axioms) {
    for (int k = 0; k < omega; ++k) {
      const bool corrupt_left = rng.coin();
      const Atom& original = corrupt_left ? ax.c : ax.d;
      // Uniform over the pool minus the original concept (when it is one).
      int skip = -1;
      if (original.kind == Atom::Kind::Concept) {
        auto it = std::lower_bound(pool.begin(), pool.end(), original.name);
        if (it != pool.end() && *it == original.name) skip = static_cast<int>(it - pool.begin());
      }
      std::uint64_t range = pool.size() - (skip >= 0 ? 1 : 0);
      int j = static_cast<int>(rng.below(range));
      if (skip >= 0 && j >= skip) ++j;
      Atom replacement = Atom::named(pool[j]);
      out.push_back(corrupt_left ? NormalizedAxiom::nf3(replacement, ax.r1, ax.d)
                                 : NormalizedAxiom::nf3(ax.c, ax.r1, replacement));
    }
  }
  return out;
}

namespace {

constexpr double kClipNorm = 10.0;

struct TagList {
  LossTag tag;
  std::vector<NormalizedAxiom> axioms;
};

}  // namespace

TrainResult train(const NormalizedOntology& ontology, const DatasetSplit& split,
                  const TrainConfig& config) {
  if (config.max_epochs < 1) throw DataError("max_epochs must be >= 1");
  if (config.batch_size < 1) throw DataError("batch_size must be >= 1");
  if (config.neg_samples < 0) throw DataError("neg_samples must be >= 0");

  const LossConfig loss_cfg = config.loss_config();
  TrainHistory history;

  // Axioms whose loss is undefined under this role mode never enter a batch.
  std::vector<TagList> tags;
  size_t n_train = 0;
  for (NfTag t : kAllTags) {
    auto it = split.train.find(t);
    if (it == split.train.end() || it->second.empty()) continue;
    TagList list;
    list.tag = loss_tag_for(t);
    for (const auto& ax : it->second) {
      if (loss_defined(ax, config.role_mode)) {
        list.axioms.push_back(ax);
      } else {
        ++history.skipped_untrainable;
      }
    }
    n_train += list.axioms.size();
    if (!list.axioms.empty()) tags.push_back(std::move(list));
  }
  if (n_train == 0) throw DataError("training split is empty");

  std::vector<NormalizedAxiom> nf3_train;
  for (const auto& list : tags) {
    if (list.tag == LossTag::NF3) nf3_train = list.axioms;
  }

  // Validation queries: capped subset of the validation axioms, drawn once.
  TaggedAxioms val_axioms;
  {
    std::vector<NormalizedAxiom> flat;
    for (NfTag t : {NfTag::NF1, NfTag::NF2, NfTag::NF3, NfTag::NF4}) {
      auto it = split.valid.find(t);
      if (it == split.valid.end()) continue;
      flat.insert(flat.end(), it->second.begin(), it->second.end());
    }
    if (static_cast<int>(flat.size()) > config.val_cap) {
      Rng vr(Rng::mix(config.seed, 0xa11d));
      vr.shuffle(flat);
      flat.resize(config.val_cap);
    }
    for (auto& ax : flat) val_axioms[ax.tag].push_back(std::move(ax));
  }
  const bool has_validation = axiom_count(val_axioms) > 0;

  EmbeddingStore store = EmbeddingStore::init(ontology.signature, config.dim, config.seed);
  store.role_mode = config.role_mode;

  AdamState adam;
  std::vector<double> grad;

  std::vector<double> best_params = store.params();
  int best_epoch = 1;
  double best_mrr = -1.0;
  double best_loss = std::numeric_limits<double>::infinity();

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Rng rng(Rng::mix(config.seed, static_cast<std::uint64_t>(epoch)));

    std::vector<NormalizedAxiom> negatives =
        sample_negatives(nf3_train, config.neg_samples, ontology.signature, rng);

    for (auto& list : tags) rng.shuffle(list.axioms);
    rng.shuffle(negatives);

    // Each step takes a proportional slice of every tag list, so all loss
    // kinds contribute to every update.
    size_t total = n_train + negatives.size();
    size_t steps = (total + config.batch_size - 1) / config.batch_size;
    if (steps == 0) steps = 1;
    auto slice_size = [steps](size_t len) { return (len + steps - 1) / steps; };

    LossReport epoch_report;
    for (size_t step = 0; step < steps; ++step) {
      std::vector<BatchItem> batch;
      for (const auto& list : tags) {
        size_t s = slice_size(list.axioms.size());
        size_t begin = std::min(step * s, list.axioms.size());
        size_t end = std::min(begin + s, list.axioms.size());
        for (size_t i = begin; i < end; ++i) batch.push_back(BatchItem::positive(list.axioms[i]));
      }
      {
        size_t s = slice_size(negatives.size());
        size_t begin = std::min(step * s, negatives.size());
        size_t end = std::min(begin + s, negatives.size());
        for (size_t i = begin; i < end; ++i) {
          batch.push_back(BatchItem::negative_sample(negatives[i]));
        }
      }
      if (batch.empty()) continue;

      LossReport report = total_loss_grad(store, batch, loss_cfg, grad);
      epoch_report += report;
      if (!std::isfinite(report.total())) {
        throw NumericalError("training diverged: non-finite loss at epoch " +
                             std::to_string(epoch));
      }
      clip_global_norm(grad, kClipNorm);
      double lr = config.learning_rate;
      if (config.lr_decay && epoch > config.lr_decay->after_epoch) {
        lr *= config.lr_decay->factor;
      }
      adam_step(store.params(), grad, adam, lr);
    }
    history.epochs.push_back(epoch_report);

    if (has_validation) {
      if (epoch % config.val_every == 0 || epoch == config.max_epochs) {
        double mrr = validation_mrr(store, val_axioms, loss_cfg);
        history.validation.push_back({epoch, mrr});
        if (mrr > best_mrr) {
          best_mrr = mrr;
          best_epoch = epoch;
          best_params = store.params();
        }
      }
    } else if (epoch_report.total() < best_loss) {
      best_loss = epoch_report.total();
      best_epoch = epoch;
      best_params = store.params();
    }
  }

  history.selected_epoch = best_epoch;
  EmbeddingStore best = EmbeddingStore::from_parts(ontology.signature, config.dim, config.seed,
                                                   config.role_mode, std::move(best_params));
  return {std::move(best), std::move(history)};
}

void write_history_tsv(std::ostream& out, const TrainHistory& history,
                       const TrainConfig& config) {
  out << "epoch\tnf1\tnf2\tnf3\tnf4\tnf5\tri1\tri2\tnegative\tregularization\tviz\ttotal\tlr\n";
  char buf[512];
  for (size_t i = 0; i < history.epochs.size(); ++i) {
    const LossReport& r = history.epochs[i];
    int epoch = static_cast<int>(i) + 1;
    double lr = config.learning_rate;
    if (config.lr_decay && epoch > config.lr_decay->after_epoch) lr *= config.lr_decay->factor;
    std::snprintf(buf, sizeof buf,
                  "%d\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\n",
                  epoch, r.nf1, r.nf2, r.nf3, r.nf4, r.nf5, r.ri1, r.ri2, r.negative,
                  r.regularization, r.viz, r.total(), lr);
    out << buf;
  }
  out << "# selected_epoch\t" << history.selected_epoch << "\n";
  for (const auto& vp : history.validation) {
    std::snprintf(buf, sizeof buf, "# validation\t%d\t%.6f\n", vp.epoch, vp.mrr);
    out << buf;
  }
}

}  // namespace box2el
