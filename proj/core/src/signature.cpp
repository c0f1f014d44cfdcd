#include "box2el/signature.hpp"

#include <algorithm>

#include "box2el/errors.hpp"

namespace box2el {

Signature::Signature() {
  concepts_.push_back(kBottomName);
  concepts_.push_back(kTopName);
}

bool Signature::sorted_insert(std::vector<std::string>& v, const std::string& name) {
  auto it = std::lower_bound(v.begin(), v.end(), name);
  if (it != v.end() && *it == name) return false;
  v.insert(it, name);
  return true;
}

int Signature::sorted_index(const std::vector<std::string>& v, const std::string& name) {
  auto it = std::lower_bound(v.begin(), v.end(), name);
  if (it == v.end() || *it != name) return -1;
  return static_cast<int>(it - v.begin());
}

bool Signature::add_concept(const std::string& name) {
  if (name.empty()) throw DataError("empty concept name");
  if (has_role(name)) throw DataError("'" + name + "' is already a role name");
  if (has_individual(name)) throw DataError("'" + name + "' is already an individual name");
  return sorted_insert(concepts_, name);
}

bool Signature::add_role(const std::string& name) {
  if (name.empty()) throw DataError("empty role name");
  if (has_concept(name)) throw DataError("'" + name + "' is already a concept name");
  if (has_individual(name)) throw DataError("'" + name + "' is already an individual name");
  return sorted_insert(roles_, name);
}

bool Signature::add_individual(const std::string& name) {
  if (name.empty()) throw DataError("empty individual name");
  if (has_concept(name)) throw DataError("'" + name + "' is already a concept name");
  if (has_role(name)) throw DataError("'" + name + "' is already a role name");
  return sorted_insert(individuals_, name);
}

bool Signature::has_concept(const std::string& name) const {
  return sorted_index(concepts_, name) >= 0;
}
bool Signature::has_role(const std::string& name) const {
  return sorted_index(roles_, name) >= 0;
}
bool Signature::has_individual(const std::string& name) const {
  return sorted_index(individuals_, name) >= 0;
}

std::optional<NameKind> Signature::kind_of(const std::string& name) const {
  if (has_concept(name)) return NameKind::Concept;
  if (has_role(name)) return NameKind::Role;
  if (has_individual(name)) return NameKind::Individual;
  return std::nullopt;
}

std::vector<std::string> Signature::embedded_concepts() const {
  std::vector<std::string> out;
  out.reserve(concepts_.size());
  for (const auto& c : concepts_) {
    if (c != kTopName && c != kBottomName) out.push_back(c);
  }
  return out;
}

int Signature::concept_index(const std::string& name) const {
  return sorted_index(concepts_, name);
}
int Signature::role_index(const std::string& name) const {
  return sorted_index(roles_, name);
}
int Signature::individual_index(const std::string& name) const {
  return sorted_index(individuals_, name);
}

std::string Signature::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  mix("C");
  for (const auto& s : concepts_) mix(s);
  mix("R");
  for (const auto& s : roles_) mix(s);
  mix("I");
  for (const auto& s : individuals_) mix(s);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace box2el
