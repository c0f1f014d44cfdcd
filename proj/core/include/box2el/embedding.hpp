#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "box2el/box.hpp"
#include "box2el/normal_form.hpp"
#include "box2el/signature.hpp"

namespace box2el {

enum class RoleMode { Boxes, Translations };

const char* role_mode_name(RoleMode mode);
RoleMode role_mode_from_name(const std::string& name);

// Flat parameter layout. Concept boxes are realized as
// [lower, lower + |delta|], so lower <= upper holds for any parameter
// values; the same reparameterization is used for role head/tail boxes.
// Bump vectors exist for every embedded concept and every individual.
struct StoreLayout {
  int dim = 0;
  int n_concepts = 0;     // embedded concepts (Top/Bottom excluded)
  int n_individuals = 0;
  int n_roles = 0;

  size_t concept_lower(int i) const { return static_cast<size_t>(i) * dim; }
  size_t concept_delta(int i) const { return (static_cast<size_t>(n_concepts) + i) * dim; }
  size_t individual_point(int i) const { return (2ul * n_concepts + i) * dim; }
  size_t bump(int slot) const { return (2ul * n_concepts + n_individuals + slot) * dim; }
  size_t role_head_lower(int i) const { return base_roles() + static_cast<size_t>(i) * dim; }
  size_t role_head_delta(int i) const { return base_roles() + (static_cast<size_t>(n_roles) + i) * dim; }
  size_t role_tail_lower(int i) const { return base_roles() + (2ul * n_roles + i) * dim; }
  size_t role_tail_delta(int i) const { return base_roles() + (3ul * n_roles + i) * dim; }

  size_t base_roles() const {
    return (3ul * n_concepts + 2ul * n_individuals) * dim;
  }
  // n * (3 |N_C'| + 2 |N_I| + 4 |N_R|)
  size_t total() const {
    return static_cast<size_t>(dim) * (3ul * n_concepts + 2ul * n_individuals + 4ul * n_roles);
  }
};

// All trainable parameters plus the name tables that index them.
class EmbeddingStore {
 public:
  // Lower corners and individual points are drawn uniformly from
  // [-0.5, 0.5], deltas from [0.1, 0.6]; bumps start at zero.
  static EmbeddingStore init(const Signature& signature, int dim, std::uint64_t seed);

  const Signature& signature() const { return signature_; }
  const StoreLayout& layout() const { return layout_; }
  int dim() const { return layout_.dim; }
  std::uint64_t seed() const { return seed_; }

  RoleMode role_mode = RoleMode::Boxes;

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  size_t param_count() const { return params_.size(); }

  // Slot lookups; throw DataError for unknown names.
  int concept_slot(const std::string& name) const;
  int individual_slot(const std::string& name) const;
  int role_slot(const std::string& name) const;
  // Bump slots cover embedded concepts first, then individuals.
  int bump_slot(const Atom& atom) const;

  const std::vector<std::string>& embedded_concepts() const { return concept_names_; }

  // Realized geometry.
  Box concept_box(const Atom& atom) const;
  Box concept_box_by_slot(int slot) const;
  Box role_head(const std::string& role) const;
  Box role_tail(const std::string& role) const;
  Vec bump_of(const Atom& atom) const;
  // Translation-mode role vector; aliased to the head lower-corner block.
  Vec role_vector(const std::string& role) const;

  std::span<const double> block(size_t offset) const {
    return {params_.data() + offset, static_cast<size_t>(layout_.dim)};
  }
  std::span<double> block(size_t offset) {
    return {params_.data() + offset, static_cast<size_t>(layout_.dim)};
  }

  // Rebuild index tables after deserialization.
  static EmbeddingStore from_parts(Signature signature, int dim, std::uint64_t seed,
                                   RoleMode mode, std::vector<double> params);

 private:
  EmbeddingStore() = default;
  void build_index();
  Box realize(size_t lower_off, size_t delta_off) const;

  Signature signature_;
  StoreLayout layout_;
  std::uint64_t seed_ = 0;
  std::vector<double> params_;

  std::vector<std::string> concept_names_;  // embedded concepts, signature order
  std::map<std::string, int> concept_ix_, individual_ix_, role_ix_;
};

}  // namespace box2el
