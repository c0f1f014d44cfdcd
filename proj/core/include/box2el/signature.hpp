#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace box2el {

inline constexpr const char* kTopName = "Top";
inline constexpr const char* kBottomName = "Bottom";

enum class NameKind { Concept, Role, Individual };

// The vocabulary of an ontology: concept, role, and individual names.
// The three sets are pairwise disjoint, Top and Bottom are always concepts,
// and every set is kept lexicographically sorted so that indices are
// reproducible for a given input.
class Signature {
 public:
  Signature();

  // Return false if the name was already present in that set; throw
  // DataError if it is present under a different kind.
  bool add_concept(const std::string& name);
  bool add_role(const std::string& name);
  bool add_individual(const std::string& name);

  bool has_concept(const std::string& name) const;
  bool has_role(const std::string& name) const;
  bool has_individual(const std::string& name) const;
  std::optional<NameKind> kind_of(const std::string& name) const;

  const std::vector<std::string>& concepts() const { return concepts_; }
  const std::vector<std::string>& roles() const { return roles_; }
  const std::vector<std::string>& individuals() const { return individuals_; }

  // Concepts minus the Top/Bottom sentinels, in signature order. These are
  // the concepts that carry trainable geometry.
  std::vector<std::string> embedded_concepts() const;

  // -1 when absent.
  int concept_index(const std::string& name) const;
  int role_index(const std::string& name) const;
  int individual_index(const std::string& name) const;

  // FNV-1a over the sorted name tables, as a fixed-width hex string.
  // Used to pair checkpoints with the signature they were trained on.
  std::string content_hash() const;

  bool operator==(const Signature& other) const = default;

 private:
  static bool sorted_insert(std::vector<std::string>& v, const std::string& name);
  static int sorted_index(const std::vector<std::string>& v, const std::string& name);

  std::vector<std::string> concepts_;
  std::vector<std::string> roles_;
  std::vector<std::string> individuals_;
};

}  // namespace box2el
