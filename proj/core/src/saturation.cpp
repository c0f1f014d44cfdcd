#include "box2el/saturation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "box2el/errors.hpp"

namespace box2el {

namespace {

constexpr int kTopId = 0;
constexpr int kBottomId = 1;

struct Universe {
  std::vector<Atom> atoms;       // id -> atom; 0 = Top, 1 = Bottom
  std::map<Atom, int> ids;

  int id(const Atom& a) {
    auto it = ids.find(a);
    if (it != ids.end()) return it->second;
    int nid = static_cast<int>(atoms.size());
    atoms.push_back(a);
    ids.emplace(a, nid);
    return nid;
  }
};

struct Nf2Entry {
  int other;  // the second conjunct that must also be present
  int target;
};

struct Nf3Entry {
  int role;
  int filler;
};

struct Nf4Entry {
  int filler;
  int target;
};

}  // namespace

std::vector<std::pair<Atom, Atom>> saturate_nf1(const NormalizedOntology& ontology,
                                                const SaturationLimits& limits) {
  Universe u;
  u.id(Atom::top());
  u.id(Atom::bottom());

  // Every signature concept participates, plus every atom mentioned in an
  // axiom (nominals in particular).
  for (const auto& name : ontology.signature.embedded_concepts()) u.id(Atom::named(name));
  for (const auto& ax : ontology.all()) {
    for (const Atom* a : {&ax.c, &ax.d, &ax.e}) {
      // Unused atom slots of an axiom are default-constructed with an
      // empty name; skip them.
      if ((a->kind == Atom::Kind::Concept || a->kind == Atom::Kind::Nominal) && !a->name.empty()) {
        u.id(*a);
      }
    }
  }

  std::map<std::string, int> role_ids;
  auto role_id = [&role_ids](const std::string& r) {
    auto [it, inserted] = role_ids.emplace(r, static_cast<int>(role_ids.size()));
    return it->second;
  };

  const int n = static_cast<int>(u.atoms.size());

  // Axiom indexes keyed by the atom/link that triggers them.
  std::vector<std::vector<int>> nf1_by_sub(n);              // Y -> targets Z
  std::vector<std::vector<Nf2Entry>> nf2_by_conjunct(n);    // Y -> (other, Z)
  std::vector<std::vector<Nf3Entry>> nf3_by_sub(n);         // Y -> (r, filler)
  std::map<std::pair<int, int>, std::vector<int>> nf4_by_role_filler;  // (r, filler) -> targets
  std::vector<std::vector<int>> nf4_fillers_by_role;        // r -> fillers with an NF4 axiom
  std::vector<std::vector<int>> super_roles;                // r -> s with r <= s
  std::vector<std::vector<std::pair<int, int>>> chains_by_first, chains_by_second;  // r -> (other, s)

  auto ensure_role_tables = [&](int r) {
    size_t need = static_cast<size_t>(r) + 1;
    if (nf4_fillers_by_role.size() < need) {
      nf4_fillers_by_role.resize(need);
      super_roles.resize(need);
      chains_by_first.resize(need);
      chains_by_second.resize(need);
    }
  };

  auto atom_id = [&u](const Atom& a) { return u.id(a); };

  for (const auto& ax : ontology.list(NfTag::NF1)) {
    nf1_by_sub[atom_id(ax.c)].push_back(atom_id(ax.d));
  }
  for (const auto& ax : ontology.list(NfTag::NF2)) {
    int ci = atom_id(ax.c), di = atom_id(ax.d), ei = atom_id(ax.e);
    nf2_by_conjunct[ci].push_back({di, ei});
    nf2_by_conjunct[di].push_back({ci, ei});
  }
  for (const auto& ax : ontology.list(NfTag::NF5)) {
    int ci = atom_id(ax.c), di = atom_id(ax.d);
    nf2_by_conjunct[ci].push_back({di, kBottomId});
    nf2_by_conjunct[di].push_back({ci, kBottomId});
  }
  for (const auto& ax : ontology.list(NfTag::NF3)) {
    int r = role_id(ax.r1);
    ensure_role_tables(r);
    nf3_by_sub[atom_id(ax.c)].push_back({r, atom_id(ax.d)});
  }
  for (const auto& ax : ontology.list(NfTag::NF4)) {
    int r = role_id(ax.r1);
    ensure_role_tables(r);
    int f = atom_id(ax.c);
    nf4_by_role_filler[{r, f}].push_back(atom_id(ax.d));
    auto& fl = nf4_fillers_by_role[r];
    if (std::find(fl.begin(), fl.end(), f) == fl.end()) fl.push_back(f);
  }
  for (const auto& ax : ontology.list(NfTag::RI1)) {
    int r = role_id(ax.r1), s = role_id(ax.rsup);
    ensure_role_tables(std::max(r, s));
    super_roles[r].push_back(s);
  }
  for (const auto& ax : ontology.list(NfTag::RI2)) {
    int r1 = role_id(ax.r1), r2 = role_id(ax.r2), s = role_id(ax.rsup);
    ensure_role_tables(std::max({r1, r2, s}));
    chains_by_first[r1].push_back({r2, s});
    chains_by_second[r2].push_back({r1, s});
  }
  const int nr = static_cast<int>(role_ids.size());

  // Derived state: subsumer sets and role links, with both link directions
  // indexed for the chain rules.
  std::vector<std::set<int>> subs(n);
  std::vector<std::vector<std::set<int>>> link_out(nr, std::vector<std::set<int>>(n));
  std::vector<std::vector<std::set<int>>> link_in(nr, std::vector<std::set<int>>(n));

  struct SubItem { int x, y; };
  struct LinkItem { int x, r, y; };
  std::deque<SubItem> sub_queue;
  std::deque<LinkItem> link_queue;

  std::uint64_t derivations = 0;
  auto charge = [&derivations, &limits]() {
    if (++derivations > limits.max_derivations) {
      throw ResourceLimitError("saturation exceeded " +
                               std::to_string(limits.max_derivations) + " derivations");
    }
  };

  auto add_sub = [&](int x, int y) {
    if (subs[x].insert(y).second) {
      charge();
      sub_queue.push_back({x, y});
    }
  };
  auto add_link = [&](int x, int r, int y) {
    if (link_out[r][x].insert(y).second) {
      link_in[r][y].insert(x);
      charge();
      link_queue.push_back({x, r, y});
    }
  };

  // Sentinels keep their reflexive entries so that links whose target is
  // unsatisfiable (e.g. a Bottom filler) propagate correctly; they are
  // excluded from the reported pairs below.
  add_sub(kTopId, kTopId);
  add_sub(kBottomId, kBottomId);
  for (int x = 2; x < n; ++x) {
    add_sub(x, x);
    add_sub(x, kTopId);
  }

  while (!sub_queue.empty() || !link_queue.empty()) {
    if (!sub_queue.empty()) {
      auto [x, y] = sub_queue.front();
      sub_queue.pop_front();

      for (int z : nf1_by_sub[y]) add_sub(x, z);
      for (const auto& e : nf2_by_conjunct[y]) {
        if (subs[x].count(e.other)) add_sub(x, e.target);
      }
      for (const auto& e : nf3_by_sub[y]) add_link(x, e.role, e.filler);
      // y became a subsumer of x: existing incoming links to x now match
      // NF4 axioms with filler y.
      for (int r = 0; r < nr; ++r) {
        auto it = nf4_by_role_filler.find({r, y});
        if (it == nf4_by_role_filler.end()) continue;
        for (int w : link_in[r][x]) {
          for (int t : it->second) add_sub(w, t);
        }
      }
      if (y == kBottomId) {
        for (int r = 0; r < nr; ++r) {
          for (int w : link_in[r][x]) add_sub(w, kBottomId);
        }
      }
      continue;
    }

    auto [x, r, y] = link_queue.front();
    link_queue.pop_front();

    for (int f : nf4_fillers_by_role[r]) {
      if (subs[y].count(f)) {
        for (int t : nf4_by_role_filler[{r, f}]) add_sub(x, t);
      }
    }
    if (subs[y].count(kBottomId)) add_sub(x, kBottomId);
    for (int s : super_roles[r]) add_link(x, s, y);
    for (const auto& [r2, s] : chains_by_first[r]) {
      for (int z : link_out[r2][y]) add_link(x, s, z);
    }
    for (const auto& [r1, s] : chains_by_second[r]) {
      for (int w : link_in[r1][x]) add_link(w, s, y);
    }
  }

  std::vector<std::pair<Atom, Atom>> result;
  for (int x = 2; x < n; ++x) {
    if (subs[x].count(kBottomId)) {
      // An unsatisfiable atom is below everything.
      for (int y = 0; y < n; ++y) result.emplace_back(u.atoms[x], u.atoms[y]);
    } else {
      for (int y : subs[x]) result.emplace_back(u.atoms[x], u.atoms[y]);
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

}  // namespace box2el
