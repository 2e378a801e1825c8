#include "eqcut/eqrel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace eqcut {

namespace {

void check_arity(int r) {
  if (r < 1 || r > kArityCap) {
    throw Error("arity " + std::to_string(r) + " outside [1, " + std::to_string(kArityCap) + "]");
  }
}

// Pair (i, j), i < j, numbered row by row.
int pair_index(int i, int j, int r) {
  if (i > j) std::swap(i, j);
  return i * r - i * (i + 1) / 2 + (j - i - 1);
}

int num_pairs(int r) { return r * (r - 1) / 2; }

using Mask = std::uint64_t;

// Bit q set iff pair q is equal in t.
Mask equal_pairs(const EqTuple& t) {
  const int r = t.size();
  Mask m = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      if (t[i] == t[j]) m |= Mask{1} << pair_index(i, j, r);
    }
  }
  return m;
}

Mask all_pairs_mask(int r) {
  const int p = num_pairs(r);
  return p == 64 ? ~Mask{0} : ((Mask{1} << p) - 1);
}

std::vector<std::pair<int, int>> pair_list(int r) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

// A clause as two pair masks.
struct MaskClause {
  Mask pos = 0;
  Mask neg = 0;
};

bool clause_holds(const MaskClause& c, Mask eq) { return (c.pos & eq) != 0 || (c.neg & ~eq) != 0; }

bool clause_entailed(const MaskClause& c, std::span<const Mask> models) {
  return std::all_of(models.begin(), models.end(), [&](Mask eq) { return clause_holds(c, eq); });
}

Clause to_clause(const MaskClause& c, int r) {
  const auto pairs = pair_list(r);
  std::vector<Literal> lits;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    if (c.pos >> q & 1) lits.push_back({pairs[q].first, pairs[q].second, true});
    if (c.neg >> q & 1) lits.push_back({pairs[q].first, pairs[q].second, false});
  }
  return make_clause(std::move(lits));
}

struct RelationMasks {
  int r;
  std::vector<Mask> models;    // equal_pairs of tuples in R
  std::vector<Mask> excluded;  // equal_pairs of patterns outside R
  Mask entailed_eq;
  Mask entailed_neq;
};

RelationMasks masks_of(const EqRelation& rel) {
  RelationMasks m{rel.arity(), {}, {}, all_pairs_mask(rel.arity()), all_pairs_mask(rel.arity())};
  for (const auto& p : all_patterns(rel.arity())) {
    const Mask eq = equal_pairs(p);
    if (rel.contains(p)) {
      m.models.push_back(eq);
      m.entailed_eq &= eq;
      m.entailed_neq &= ~eq;
    } else {
      m.excluded.push_back(eq);
    }
  }
  m.entailed_neq &= all_pairs_mask(rel.arity());
  return m;
}

// Intersection of the equal-pair masks of models coarser than p, or nullopt
// when no model is coarser than p.
std::optional<Mask> up_meet(const RelationMasks& m, Mask p) {
  std::optional<Mask> meet;
  for (Mask t : m.models) {
    if ((p & ~t) == 0) meet = meet ? (*meet & t) : t;
  }
  return meet;
}

Mask lowest_bit(Mask m) { return m & (~m + 1); }

// Greedily drops literals while the clause stays entailed; literals in keep_pos stay.
MaskClause minimize(MaskClause c, const RelationMasks& m, Mask keep_pos = 0) {
  for (int q = 0; q < 64; ++q) {
    const Mask bit = Mask{1} << q;
    if ((c.pos & bit) && !(keep_pos & bit)) {
      MaskClause trial{c.pos & ~bit, c.neg};
      if ((trial.pos | trial.neg) != 0 && clause_entailed(trial, m.models)) c = trial;
    }
    if (c.neg & bit) {
      MaskClause trial{c.pos, c.neg & ~bit};
      if ((trial.pos | trial.neg) != 0 && clause_entailed(trial, m.models)) c = trial;
    }
  }
  return c;
}

// A fragment clause entailed by R and violated by the excluded pattern p.
std::optional<MaskClause> excluding_clause(const RelationMasks& m, Mask p, Fragment f) {
  const Mask full = all_pairs_mask(m.r);
  switch (f) {
    case Fragment::Unrestricted:
      return minimize({full & ~p, p}, m);
    case Fragment::StrictlyNegative: {
      if (up_meet(m, p)) return std::nullopt;
      return minimize({0, p}, m);
    }
    case Fragment::Negative: {
      if (Mask e = m.entailed_eq & ~p) return MaskClause{lowest_bit(e), 0};
      if (up_meet(m, p)) return std::nullopt;
      return minimize({0, p}, m);
    }
    case Fragment::Conjunctive: {
      if (Mask e = m.entailed_eq & ~p) return MaskClause{lowest_bit(e), 0};
      if (Mask d = m.entailed_neq & p) return MaskClause{0, lowest_bit(d)};
      return std::nullopt;
    }
    case Fragment::Horn: {
      auto meet = up_meet(m, p);
      if (!meet) return minimize({0, p}, m);
      const Mask choices = *meet & ~p;
      if (!choices) return std::nullopt;
      const Mask pos = lowest_bit(choices);
      return minimize({pos, p}, m, pos);
    }
  }
  return std::nullopt;
}

bool fragment_allows(const MaskClause& c, Fragment f, int width) {
  const int pos = std::popcount(c.pos);
  switch (f) {
    case Fragment::Unrestricted: return true;
    case Fragment::Horn: return pos <= 1;
    case Fragment::StrictlyNegative: return pos == 0;
    case Fragment::Negative: return pos == 0 || width == 1;
    case Fragment::Conjunctive: return width == 1;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------- EqTuple

EqTuple EqTuple::from_canonical(std::vector<int> entries) {
  int max_seen = 0;
  for (int e : entries) {
    if (e < 1 || e > max_seen + 1) throw Error("tuple is not in restricted-growth form");
    max_seen = std::max(max_seen, e);
  }
  if (entries.empty()) throw Error("empty tuple");
  return EqTuple(std::move(entries));
}

int EqTuple::num_blocks() const {
  return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

std::uint64_t EqTuple::key() const {
  std::uint64_t k = static_cast<std::uint64_t>(entries_.size());
  for (int e : entries_) k = (k << 4) | static_cast<std::uint64_t>(e);
  return k;
}

EqTuple canonicalize(std::span<const long long> raw) {
  if (raw.empty()) throw Error("cannot canonicalize an empty tuple");
  std::vector<int> out(raw.size());
  std::vector<long long> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), raw[i]);
    if (it == seen.end()) {
      seen.push_back(raw[i]);
      out[i] = static_cast<int>(seen.size());
    } else {
      out[i] = static_cast<int>(it - seen.begin()) + 1;
    }
  }
  return EqTuple(std::move(out));
}

EqTuple canonicalize(std::initializer_list<long long> raw) {
  return canonicalize(std::span<const long long>(raw.begin(), raw.size()));
}

std::uint64_t pattern_key(std::span<const long long> raw) {
  std::array<long long, 16> seen{};
  int blocks = 0;
  std::uint64_t k = static_cast<std::uint64_t>(raw.size());
  for (long long v : raw) {
    int label = 0;
    for (int b = 0; b < blocks; ++b) {
      if (seen[static_cast<std::size_t>(b)] == v) {
        label = b + 1;
        break;
      }
    }
    if (label == 0) {
      seen[static_cast<std::size_t>(blocks++)] = v;
      label = blocks;
    }
    k = (k << 4) | static_cast<std::uint64_t>(label);
  }
  return k;
}

Refinement refines(const EqTuple& a, const EqTuple& b) {
  if (a.size() != b.size()) throw Error("refines: length mismatch");
  bool strict = false;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = i + 1; j < a.size(); ++j) {
      if (a[i] == a[j] && b[i] != b[j]) return Refinement::None;
      if (a[i] != a[j] && b[i] == b[j]) strict = true;
    }
  }
  return strict ? Refinement::StrictlyRefines : Refinement::Refines;
}

const std::vector<EqTuple>& all_patterns(int r) {
  static const std::array<std::vector<EqTuple>, kArityCap + 1> table = [] {
    std::array<std::vector<EqTuple>, kArityCap + 1> t;
    for (int n = 1; n <= kArityCap; ++n) {
      std::vector<int> cur(static_cast<std::size_t>(n), 1);
      // Iterate restricted-growth strings in lexicographic order.
      while (true) {
        t[static_cast<std::size_t>(n)].push_back(EqTuple::from_canonical(cur));
        int i = n - 1;
        for (; i > 0; --i) {
          const int prefix_max =
              *std::max_element(cur.begin(), cur.begin() + i);
          if (cur[static_cast<std::size_t>(i)] <= prefix_max) break;
        }
        if (i == 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) cur[static_cast<std::size_t>(j)] = 1;
      }
    }
    return t;
  }();
  check_arity(r);
  return table[static_cast<std::size_t>(r)];
}

long long bell_number(int r) {
  std::vector<std::vector<long long>> tri{{1}};
  for (int i = 1; i <= r; ++i) {
    std::vector<long long> row{tri.back().back()};
    for (long long v : tri.back()) row.push_back(row.back() + v);
    tri.push_back(row);
  }
  return tri[static_cast<std::size_t>(r)][0];
}

// ---------------------------------------------------------------- EqRelation

EqRelation::EqRelation(int arity, std::vector<EqTuple> tuples, std::string name)
    : arity_(arity), tuples_(std::move(tuples)), name_(std::move(name)) {
  check_arity(arity);
  for (const auto& t : tuples_) {
    if (t.size() != arity) {
      throw Error("tuple length " + std::to_string(t.size()) + " does not match arity " +
                  std::to_string(arity));
    }
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  keys_.reserve(tuples_.size());
  for (const auto& t : tuples_) keys_.push_back(t.key());
  std::sort(keys_.begin(), keys_.end());
}

bool EqRelation::is_complete() const {
  return static_cast<long long>(tuples_.size()) == bell_number(arity_);
}

bool EqRelation::contains(const EqTuple& t) const { return contains_key(t.key()); }

bool EqRelation::contains_key(std::uint64_t key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

EqRelation EqRelation::renamed(std::string name) const {
  EqRelation copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------- CNF

Literal make_literal(int i, int j, bool equal) {
  if (i == j) throw Error("literal relates an index to itself");
  if (i > j) std::swap(i, j);
  return {i, j, equal};
}

int Clause::positive_count() const {
  return static_cast<int>(std::count_if(literals.begin(), literals.end(),
                                        [](const Literal& l) { return l.equal; }));
}

Clause make_clause(std::vector<Literal> literals) {
  for (auto& l : literals) l = make_literal(l.i, l.j, l.equal);
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t a = 0; a + 1 < literals.size(); ++a) {
    if (literals[a].i == literals[a + 1].i && literals[a].j == literals[a + 1].j) {
      throw Error("clause contains both polarities of x" + std::to_string(literals[a].i + 1) +
                  ",x" + std::to_string(literals[a].j + 1));
    }
  }
  return Clause{std::move(literals)};
}

std::string to_string(const Literal& lit) {
  return "x" + std::to_string(lit.i + 1) + (lit.equal ? "=" : "!=") + "x" + std::to_string(lit.j + 1);
}

std::string to_string(const Clause& clause) {
  std::string s;
  for (const auto& l : clause.literals) {
    if (!s.empty()) s += " | ";
    s += to_string(l);
  }
  return s.empty() ? "false" : s;
}

std::string to_string(const CnfFormula& phi) {
  std::string s;
  for (const auto& c : phi) {
    if (!s.empty()) s += " & ";
    s += "(" + to_string(c) + ")";
  }
  return s.empty() ? "true" : s;
}

bool satisfies(const EqTuple& t, const Literal& lit) {
  return (t[lit.i] == t[lit.j]) == lit.equal;
}

bool satisfies(const EqTuple& t, const Clause& clause) {
  return std::any_of(clause.literals.begin(), clause.literals.end(),
                     [&](const Literal& l) { return satisfies(t, l); });
}

bool satisfies(const EqTuple& t, const CnfFormula& phi) {
  return std::all_of(phi.begin(), phi.end(), [&](const Clause& c) { return satisfies(t, c); });
}

EqRelation relation_from_cnf(const CnfFormula& phi, int arity, std::string name) {
  check_arity(arity);
  for (const auto& c : phi) {
    for (const auto& l : c.literals) {
      if (l.i < 0 || l.j >= arity) throw Error("literal " + to_string(l) + " exceeds arity");
    }
  }
  std::vector<EqTuple> tuples;
  for (const auto& p : all_patterns(arity)) {
    if (satisfies(p, phi)) tuples.push_back(p);
  }
  return EqRelation(arity, std::move(tuples), std::move(name));
}

EqRelation project(const EqRelation& r, std::span<const int> indices) {
  std::vector<EqTuple> out;
  std::vector<long long> buf(indices.size());
  for (const auto& t : r.tuples()) {
    for (std::size_t a = 0; a < indices.size(); ++a) {
      if (indices[a] < 0 || indices[a] >= r.arity()) throw Error("projection index out of range");
      buf[a] = t[indices[a]];
    }
    out.push_back(canonicalize(buf));
  }
  return EqRelation(static_cast<int>(indices.size()), std::move(out));
}

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::Horn: return "horn";
    case Fragment::Negative: return "negative";
    case Fragment::StrictlyNegative: return "strictly_negative";
    case Fragment::Conjunctive: return "conjunctive";
    case Fragment::Unrestricted: return "unrestricted";
  }
  return "?";
}

std::vector<Clause> entailed_clauses(const EqRelation& r, Fragment fragment, int max_width) {
  if (max_width < 1) throw Error("max_width must be at least 1");
  const RelationMasks m = masks_of(r);
  const int np = num_pairs(r.arity());
  const int nlits = 2 * np;  // literal 2q: pair q equal, 2q+1: pair q different
  std::vector<Mask> found;   // literal masks of entailed clauses
  std::vector<Clause> out;
  std::vector<int> combo;

  auto as_clause = [](Mask lits) {
    MaskClause c;
    for (int l = 0; l < 64; ++l) {
      if (!(lits >> l & 1)) continue;
      if (l % 2 == 0) c.pos |= Mask{1} << (l / 2);
      else c.neg |= Mask{1} << (l / 2);
    }
    return c;
  };

  for (int w = 1; w <= std::min(max_width, np); ++w) {
    std::vector<Mask> found_this_width;
    // Enumerate w-subsets in lexicographic order, one literal per pair.
    auto rec = [&](auto&& self, int start, int depth, Mask lits) -> void {
      if (depth == w) {
        for (Mask f : found) {
          if ((f & ~lits) == 0) return;
        }
        const MaskClause c = as_clause(lits);
        if (!fragment_allows(c, fragment, w)) return;
        if (clause_entailed(c, m.models)) {
          found_this_width.push_back(lits);
          out.push_back(to_clause(c, r.arity()));
        }
        return;
      }
      for (int l = start; l < nlits; ++l) {
        if (l % 2 == 1 && (lits >> (l - 1) & 1)) continue;
        self(self, l + 1, depth + 1, lits | (Mask{1} << l));
      }
    };
    rec(rec, 0, 0, 0);
    found.insert(found.end(), found_this_width.begin(), found_this_width.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool definable(const EqRelation& r, Fragment fragment) {
  const RelationMasks m = masks_of(r);
  const Mask full = all_pairs_mask(r.arity());
  for (Mask p : m.excluded) {
    switch (fragment) {
      case Fragment::Unrestricted: break;
      case Fragment::StrictlyNegative:
        if (up_meet(m, p)) return false;
        break;
      case Fragment::Negative:
        if (!(m.entailed_eq & ~p) && up_meet(m, p)) return false;
        break;
      case Fragment::Conjunctive:
        if (!(m.entailed_eq & ~p) && !(m.entailed_neq & p)) return false;
        break;
      case Fragment::Horn: {
        auto meet = up_meet(m, p);
        if (meet && !(*meet & ~p & full)) return false;
        break;
      }
    }
  }
  return true;
}

std::optional<CnfFormula> definable_in_fragment(const EqRelation& r, Fragment fragment) {
  const RelationMasks m = masks_of(r);
  std::vector<MaskClause> clauses;
  for (Mask p : m.excluded) {
    auto c = excluding_clause(m, p, fragment);
    if (!c) return std::nullopt;
    clauses.push_back(*c);
  }
  // Drop duplicates and clauses subsumed by a smaller one.
  std::vector<MaskClause> kept;
  for (const auto& c : clauses) {
    bool subsumed = false;
    for (const auto& d : clauses) {
      const bool d_sub_c = (d.pos & ~c.pos) == 0 && (d.neg & ~c.neg) == 0;
      const bool equal = d.pos == c.pos && d.neg == c.neg;
      if (d_sub_c && !equal) {
        subsumed = true;
        break;
      }
    }
    if (subsumed) continue;
    if (std::none_of(kept.begin(), kept.end(),
                     [&](const MaskClause& k) { return k.pos == c.pos && k.neg == c.neg; })) {
      kept.push_back(c);
    }
  }
  CnfFormula phi;
  for (const auto& c : kept) phi.push_back(to_clause(c, r.arity()));
  std::sort(phi.begin(), phi.end());
  if (!(relation_from_cnf(phi, r.arity()) == r)) {
    throw Error("internal: fragment formula does not define the relation");
  }
  return phi;
}

bool is_constant(const EqRelation& r) {
  std::vector<int> ones(static_cast<std::size_t>(r.arity()), 1);
  return r.contains(EqTuple::from_canonical(ones));
}
bool is_horn(const EqRelation& r) { return definable(r, Fragment::Horn); }
bool is_negative(const EqRelation& r) { return definable(r, Fragment::Negative); }
bool is_strictly_negative(const EqRelation& r) { return definable(r, Fragment::StrictlyNegative); }
bool is_conjunctive(const EqRelation& r) { return definable(r, Fragment::Conjunctive); }

bool is_neq3(const EqRelation& r) {
  return r.arity() == 3 && r.size() == 1 && r.tuples()[0] == canonicalize({1, 2, 3});
}

std::optional<SplitPartition> is_split(const EqRelation& r) {
  const int n = r.arity();
  const auto& pats = all_patterns(n);
  for (unsigned mask = (1u << n) - 1;; --mask) {
    // mask = positions in the equal block; iterate from the full set downwards.
    std::size_t count = 0;
    bool ok = true;
    for (const auto& p : pats) {
      int block_value = 0;
      bool member = true;
      for (int i = 0; i < n && member; ++i) {
        if (!(mask >> i & 1)) continue;
        if (block_value == 0) block_value = p[i];
        else if (p[i] != block_value) member = false;
      }
      for (int i = 0; i < n && member; ++i) {
        if (!(mask >> i & 1) && block_value != 0 && p[i] == block_value) member = false;
      }
      if (member != r.contains(p)) {
        ok = false;
        break;
      }
      count += member ? 1 : 0;
    }
    if (ok && count == r.size()) {
      SplitPartition s;
      for (int i = 0; i < n; ++i) (mask >> i & 1 ? s.equal_block : s.others).push_back(i);
      return s;
    }
    if (mask == 0) break;
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> entailed_equalities(const EqRelation& r) {
  const RelationMasks m = masks_of(r);
  std::vector<std::pair<int, int>> out;
  const auto pairs = pair_list(r.arity());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    if (m.entailed_eq >> q & 1) out.push_back(pairs[q]);
  }
  return out;
}

std::vector<std::pair<int, int>> entailed_disequalities(const EqRelation& r) {
  const RelationMasks m = masks_of(r);
  std::vector<std::pair<int, int>> out;
  const auto pairs = pair_list(r.arity());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    if (m.entailed_neq >> q & 1) out.push_back(pairs[q]);
  }
  return out;
}

std::vector<int> redundant_arguments(const EqRelation& r) {
  std::vector<int> out;
  const int n = r.arity();
  if (n == 1) return out;
  for (int i = 0; i < n; ++i) {
    std::vector<int> others;
    for (int j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    const EqRelation shadow = project(r, others);
    bool redundant = true;
    std::vector<long long> buf(others.size());
    for (const auto& p : all_patterns(n)) {
      for (std::size_t a = 0; a < others.size(); ++a) buf[a] = p[others[a]];
      if (r.contains(p) != shadow.contains_values(buf)) {
        redundant = false;
        break;
      }
    }
    if (redundant) out.push_back(i);
  }
  return out;
}

EssentialCore essential_core(const EqRelation& r) {
  auto redundant = redundant_arguments(r);
  std::vector<int> kept;
  for (int i = 0; i < r.arity(); ++i) {
    if (!std::binary_search(redundant.begin(), redundant.end(), i)) kept.push_back(i);
  }
  if (kept.empty()) {
    kept.push_back(0);
    redundant.erase(redundant.begin());
  }
  return {project(r, kept).renamed(r.name()), kept, redundant};
}

// ---------------------------------------------------------------- EqLanguage

void EqLanguage::add(RelationPtr relation) {
  if (!relation || relation->name().empty()) throw Error("language relations must be named");
  if (find(relation->name())) throw Error("duplicate relation name '" + relation->name() + "'");
  relations_.push_back(std::move(relation));
}

RelationPtr EqLanguage::find(const std::string& name) const {
  for (const auto& r : relations_) {
    if (r->name() == name) return r;
  }
  return nullptr;
}

}  // namespace eqcut
