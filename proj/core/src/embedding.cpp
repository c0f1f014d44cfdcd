#include "box2el/embedding.hpp"

#include <cmath>

#include "box2el/errors.hpp"
#include "box2el/rng.hpp"

namespace box2el {

const char* role_mode_name(RoleMode mode) {
  return mode == RoleMode::Boxes ? "box" : "translation";
}

RoleMode role_mode_from_name(const std::string& name) {
  if (name == "box") return RoleMode::Boxes;
  if (name == "translation") return RoleMode::Translations;
  throw DataError("unknown role mode '" + name + "' (expected 'box' or 'translation')");
}

EmbeddingStore EmbeddingStore::init(const Signature& signature, int dim, std::uint64_t seed) {
  if (dim < 1) throw DataError("embedding dimension must be >= 1");
  EmbeddingStore store;
  store.signature_ = signature;
  store.seed_ = seed;
  store.layout_.dim = dim;
  store.concept_names_ = signature.embedded_concepts();
  store.layout_.n_concepts = static_cast<int>(store.concept_names_.size());
  store.layout_.n_individuals = static_cast<int>(signature.individuals().size());
  store.layout_.n_roles = static_cast<int>(signature.roles().size());
  if (store.layout_.n_concepts == 0 && store.layout_.n_individuals == 0 &&
      store.layout_.n_roles == 0) {
    throw DataError("empty signature: nothing to embed");
  }
  store.build_index();
  store.params_.assign(store.layout_.total(), 0.0);

  Rng rng(seed);
  const StoreLayout& L = store.layout_;
  auto fill = [&](size_t off, int count, double lo, double hi) {
    for (int i = 0; i < count * dim; ++i) {
      store.params_[off + i] = rng.uniform(lo, hi);
    }
  };
  fill(L.concept_lower(0), L.n_concepts, -0.5, 0.5);
  fill(L.concept_delta(0), L.n_concepts, 0.1, 0.6);
  if (L.n_individuals > 0) fill(L.individual_point(0), L.n_individuals, -0.5, 0.5);
  // bumps stay zero
  if (L.n_roles > 0) {
    fill(L.role_head_lower(0), L.n_roles, -0.5, 0.5);
    fill(L.role_head_delta(0), L.n_roles, 0.1, 0.6);
    fill(L.role_tail_lower(0), L.n_roles, -0.5, 0.5);
    fill(L.role_tail_delta(0), L.n_roles, 0.1, 0.6);
  }
  return store;
}

EmbeddingStore EmbeddingStore::from_parts(Signature signature, int dim, std::uint64_t seed,
                                          RoleMode mode, std::vector<double> params) {
  EmbeddingStore store;
  store.signature_ = std::move(signature);
  store.seed_ = seed;
  store.role_mode = mode;
  store.layout_.dim = dim;
  store.concept_names_ = store.signature_.embedded_concepts();
  store.layout_.n_concepts = static_cast<int>(store.concept_names_.size());
  store.layout_.n_individuals = static_cast<int>(store.signature_.individuals().size());
  store.layout_.n_roles = static_cast<int>(store.signature_.roles().size());
  store.build_index();
  if (params.size() != store.layout_.total()) {
    throw DataError("parameter block size mismatch: got " + std::to_string(params.size()) +
                    ", expected " + std::to_string(store.layout_.total()));
  }
  store.params_ = std::move(params);
  return store;
}

void EmbeddingStore::build_index() {
  concept_ix_.clear();
  individual_ix_.clear();
  role_ix_.clear();
  for (int i = 0; i < static_cast<int>(concept_names_.size()); ++i) {
    concept_ix_[concept_names_[i]] = i;
  }
  const auto& inds = signature_.individuals();
  for (int i = 0; i < static_cast<int>(inds.size()); ++i) individual_ix_[inds[i]] = i;
  const auto& roles = signature_.roles();
  for (int i = 0; i < static_cast<int>(roles.size()); ++i) role_ix_[roles[i]] = i;
}

int EmbeddingStore::concept_slot(const std::string& name) const {
  auto it = concept_ix_.find(name);
  if (it == concept_ix_.end()) throw DataError("unknown concept '" + name + "'");
  return it->second;
}

int EmbeddingStore::individual_slot(const std::string& name) const {
  auto it = individual_ix_.find(name);
  if (it == individual_ix_.end()) throw DataError("unknown individual '" + name + "'");
  return it->second;
}

int EmbeddingStore::role_slot(const std::string& name) const {
  auto it = role_ix_.find(name);
  if (it == role_ix_.end()) throw DataError("unknown role '" + name + "'");
  return it->second;
}

int EmbeddingStore::bump_slot(const Atom& atom) const {
  switch (atom.kind) {
    case Atom::Kind::Concept: return concept_slot(atom.name);
    case Atom::Kind::Nominal: return layout_.n_concepts + individual_slot(atom.name);
    default:
      throw DataError("sentinel concepts carry no bump vector");
  }
}

Box EmbeddingStore::realize(size_t lower_off, size_t delta_off) const {
  const int n = layout_.dim;
  Vec lo(n), up(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = params_[lower_off + i];
    up[i] = lo[i] + std::abs(params_[delta_off + i]);
  }
  return Box::from_corners(std::move(lo), std::move(up));
}

Box EmbeddingStore::concept_box(const Atom& atom) const {
  switch (atom.kind) {
    case Atom::Kind::Top: return Box::universal();
    case Atom::Kind::Bottom: return Box::empty();
    case Atom::Kind::Concept:
      return concept_box_by_slot(concept_slot(atom.name));
    case Atom::Kind::Nominal: {
      int s = individual_slot(atom.name);
      size_t off = layout_.individual_point(s);
      return Box::point(Vec(params_.begin() + off, params_.begin() + off + layout_.dim));
    }
  }
  throw DataError("bad atom");
}

Box EmbeddingStore::concept_box_by_slot(int slot) const {
  return realize(layout_.concept_lower(slot), layout_.concept_delta(slot));
}

Box EmbeddingStore::role_head(const std::string& role) const {
  int s = role_slot(role);
  return realize(layout_.role_head_lower(s), layout_.role_head_delta(s));
}

Box EmbeddingStore::role_tail(const std::string& role) const {
  int s = role_slot(role);
  return realize(layout_.role_tail_lower(s), layout_.role_tail_delta(s));
}

Vec EmbeddingStore::bump_of(const Atom& atom) const {
  size_t off = layout_.bump(bump_slot(atom));
  return Vec(params_.begin() + off, params_.begin() + off + layout_.dim);
}

Vec EmbeddingStore::role_vector(const std::string& role) const {
  size_t off = layout_.role_head_lower(role_slot(role));
  return Vec(params_.begin() + off, params_.begin() + off + layout_.dim);
}

}  // namespace box2el
