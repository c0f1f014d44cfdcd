#include "box2el/splits.hpp"

#include <cmath>
#include <fstream>

#include "box2el/errors.hpp"
#include "box2el/rng.hpp"

namespace box2el {

DatasetSplit make_splits(const NormalizedOntology& ontology, const SplitRatios& ratios,
                         std::uint64_t seed) {
  const double sum = ratios.train + ratios.valid + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DataError("split ratios must sum to 1 (got " + std::to_string(sum) + ")");
  }
  if (ratios.train < 0 || ratios.valid < 0 || ratios.test < 0) {
    throw DataError("split ratios must be non-negative");
  }

  DatasetSplit split;
  split.ratios = ratios;
  split.seed = seed;

  Rng rng(Rng::mix(seed, 0x5117));

  if (ratios.test > 0) {
    size_t splittable = 0;
    for (NfTag tag : {NfTag::NF1, NfTag::NF2, NfTag::NF3, NfTag::NF4, NfTag::NF5}) {
      splittable += ontology.list(tag).size();
    }
    if (splittable == 0) {
      throw DataError("no splittable axioms but the test ratio is nonzero");
    }
  }

  for (NfTag tag : {NfTag::NF1, NfTag::NF2, NfTag::NF3, NfTag::NF4, NfTag::NF5}) {
    std::vector<NormalizedAxiom> axioms = ontology.list(tag);
    if (axioms.empty()) continue;
    rng.shuffle(axioms);
    const size_t n = axioms.size();
    const size_t n_train = static_cast<size_t>(std::floor(ratios.train * n));
    const size_t n_valid = static_cast<size_t>(std::floor(ratios.valid * n));
    for (size_t i = 0; i < n; ++i) {
      if (i < n_train) {
        split.train[tag].push_back(axioms[i]);
      } else if (i < n_train + n_valid) {
        split.valid[tag].push_back(axioms[i]);
      } else {
        split.test[tag].push_back(axioms[i]);
      }
    }
  }

  for (NfTag tag : {NfTag::RI1, NfTag::RI2}) {
    const auto& list = ontology.list(tag);
    if (!list.empty()) split.train[tag] = list;
  }
  return split;
}

void save_axioms_tsv(const std::string& path, const TaggedAxioms& axioms) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_axioms_tsv(out, axioms);
  if (!out) throw DataError("failed to write '" + path + "'");
}

TaggedAxioms load_axioms_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_axioms_tsv(in);
}

}  // namespace box2el
