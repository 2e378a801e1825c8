#include "eqcut/singleton.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace eqcut {

namespace {

constexpr int kUnbounded = -1;

// All tuples in [c]^r, as value vectors, in lexicographic order.
template <class F>
void for_each_word(int r, int c, F&& f) {
  std::vector<int> w(static_cast<std::size_t>(r), 1);
  while (true) {
    f(w);
    int i = r - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == c) {
      w[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

EqTuple pattern_of(const std::vector<int>& values) {
  std::vector<long long> raw(values.begin(), values.end());
  return canonicalize(raw);
}

// Pairs equal in every tuple.
std::vector<std::pair<int, int>> slice_equalities(const SliceRelation& r) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < r.arity; ++i) {
    for (int j = i + 1; j < r.arity; ++j) {
      const bool all = std::all_of(r.tuples.begin(), r.tuples.end(), [&](const std::vector<int>& t) {
        return t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)];
      });
      if (all) out.push_back({i, j});
    }
  }
  return out;
}

bool slice_positive_conjunctive(const SliceRelation& r, int c) {
  if (r.tuples.empty()) return false;
  const auto eqs = slice_equalities(r);
  std::size_t models = 0;
  bool ok = true;
  for_each_word(r.arity, c, [&](const std::vector<int>& w) {
    for (const auto& [i, j] : eqs) {
      if (w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(j)]) return;
    }
    ++models;
    if (!std::binary_search(r.tuples.begin(), r.tuples.end(), w)) ok = false;
  });
  return ok && models == r.tuples.size();
}

// The equality graph on indices that occur in some equality is connected.
bool equality_graph_connected(int arity, const std::vector<std::pair<int, int>>& eqs) {
  std::vector<int> root(static_cast<std::size_t>(arity));
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return root[static_cast<std::size_t>(v)] == v ? v : root[static_cast<std::size_t>(v)] = find(root[static_cast<std::size_t>(v)]);
  };
  std::set<int> used;
  for (const auto& [i, j] : eqs) {
    used.insert(i);
    used.insert(j);
    root[static_cast<std::size_t>(find(i))] = find(j);
  }
  std::set<int> roots;
  for (int v : used) roots.insert(find(v));
  return roots.size() <= 1;
}

bool language_all(const EqLanguage& l, bool (*pred)(const EqRelation&)) {
  return std::all_of(l.relations().begin(), l.relations().end(), [&](const RelationPtr& r) { return pred(*r); });
}

bool positive_conjunctive(const EqRelation& r) { return is_constant(r) && is_conjunctive(r); }

bool positive_conjunctive_connected(const EqRelation& r) {
  return positive_conjunctive(r) && equality_graph_connected(r.arity(), entailed_equalities(r));
}

// Image patterns per source pattern under one retraction profile.
using ImageMap = std::vector<std::vector<std::size_t>>;

std::size_t pattern_index(int r, const EqTuple& t) {
  const auto& all = all_patterns(r);
  return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), t) - all.begin());
}

// capacity[j]: how many values outside [c] map to j (kUnbounded for infinitely many).
ImageMap image_map(int r, int c, const std::vector<int>& capacity) {
  const auto& all = all_patterns(r);
  ImageMap out(all.size());
  for (std::size_t p = 0; p < all.size(); ++p) {
    const int m = all[p].num_blocks();
    std::set<std::size_t> images;
    // option per block: 0..c-1 placed at that value of [c]; c..2c-1 outside, mapped to option-c.
    std::vector<int> opt(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<int> used_inside(static_cast<std::size_t>(c), 0), used_outside(static_cast<std::size_t>(c), 0);
      bool ok = true;
      for (int o : opt) {
        if (o < c) {
          if (used_inside[static_cast<std::size_t>(o)]++ > 0) ok = false;
        } else {
          ++used_outside[static_cast<std::size_t>(o - c)];
        }
      }
      for (int j = 0; j < c && ok; ++j) {
        const int cap = capacity[static_cast<std::size_t>(j)];
        if (cap != kUnbounded && used_outside[static_cast<std::size_t>(j)] > cap) ok = false;
      }
      if (ok) {
        std::vector<int> values;
        for (int e : all[p]) {
          const int o = opt[static_cast<std::size_t>(e - 1)];
          values.push_back(o < c ? o : o - c);
        }
        images.insert(pattern_index(r, pattern_of(values)));
      }
      int i = m - 1;
      while (i >= 0 && opt[static_cast<std::size_t>(i)] == 2 * c - 1) {
        opt[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++opt[static_cast<std::size_t>(i)];
    }
    out[p].assign(images.begin(), images.end());
  }
  return out;
}

// Image maps of arity-r patterns for every capacity vector over
// {0..span-1, unbounded}^c with at least one unbounded entry, in a fixed
// order shared by all r <= span.
const std::vector<ImageMap>& retraction_profiles(int r, int c, int span) {
  static std::map<std::tuple<int, int, int>, std::vector<ImageMap>> cache;
  const auto key = std::make_tuple(r, c, span);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<ImageMap> maps;
  std::vector<int> cap(static_cast<std::size_t>(c), 0);
  while (true) {
    if (std::find(cap.begin(), cap.end(), span) != cap.end()) {
      std::vector<int> real = cap;
      for (auto& x : real) {
        if (x == span) x = kUnbounded;
      }
      maps.push_back(image_map(r, c, real));
    }
    int i = c - 1;
    while (i >= 0 && cap[static_cast<std::size_t>(i)] == span) {
      cap[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++cap[static_cast<std::size_t>(i)];
  }
  return cache.emplace(key, std::move(maps)).first->second;
}

bool preserves(const ImageMap& m, const EqRelation& r) {
  for (const auto& t : r.tuples()) {
    for (auto img : m[pattern_index(r.arity(), t)]) {
      if (!r.contains(all_patterns(r.arity())[img])) return false;
    }
  }
  return true;
}

}  // namespace

SliceRelation slice_relation(const EqRelation& r, int c) {
  if (c < 1) throw Error("slice needs c >= 1");
  SliceRelation s;
  s.name = r.name();
  s.arity = r.arity();
  if (r.arity() == 0) return s;
  for_each_word(r.arity(), c, [&](const std::vector<int>& w) {
    if (r.contains(pattern_of(w))) s.tuples.push_back(w);
  });
  return s;
}

SliceLanguage c_slice(const EqLanguage& language, int c) {
  SliceLanguage d;
  d.c = c;
  for (const auto& r : language.relations()) d.relations.push_back(slice_relation(*r, c));
  return d;
}

bool preserved_by_collapse(const EqRelation& r, int c) {
  if (c < 1) throw Error("collapse needs c >= 1");
  for (const auto& t : r.tuples()) {
    const int m = t.num_blocks();
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) > c - 1) continue;
      std::vector<long long> merged;
      for (int e : t) merged.push_back((mask >> (e - 1)) & 1u ? e : 0);
      if (!r.contains_values(merged)) return false;
    }
  }
  return true;
}

bool retraction_exists_bruteforce(const EqRelation& r, int c) {
  return retraction_exists_bruteforce(std::vector<RelationPtr>{std::make_shared<EqRelation>(r)}, c);
}

bool retraction_exists_bruteforce(const std::vector<RelationPtr>& relations, int c) {
  if (c < 1) throw Error("retraction needs c >= 1");
  int span = 1;
  for (const auto& r : relations) span = std::max(span, r->arity());
  // A capacity of at least the arity acts as unbounded, so one enumeration
  // over the largest arity serves every relation.
  const std::size_t profiles = retraction_profiles(span, c, span).size();
  for (std::size_t p = 0; p < profiles; ++p) {
    bool all = true;
    for (const auto& r : relations) {
      if (r->arity() == 0) continue;
      if (!preserves(retraction_profiles(r->arity(), c, span)[p], *r)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool slice_affine(const SliceLanguage& d) {
  if (d.c != 2) throw Error("affinity is only defined for the Boolean slice");
  for (const auto& r : d.relations) {
    for (const auto& a : r.tuples) {
      for (const auto& b : r.tuples) {
        for (const auto& c : r.tuples) {
          std::vector<int> x(a.size());
          for (std::size_t i = 0; i < a.size(); ++i) x[i] = ((a[i] - 1) ^ (b[i] - 1) ^ (c[i] - 1)) + 1;
          if (!std::binary_search(r.tuples.begin(), r.tuples.end(), x)) return false;
        }
      }
    }
  }
  return true;
}

SliceFlags slice_properties(const SliceLanguage& d) {
  SliceFlags f;
  f.trivial = std::all_of(d.relations.begin(), d.relations.end(), [&](const SliceRelation& r) {
    double full = 1;
    for (int i = 0; i < r.arity; ++i) full *= d.c;
    return r.tuples.empty() || static_cast<double>(r.tuples.size()) == full;
  });
  f.positive_conjunctive = std::all_of(d.relations.begin(), d.relations.end(),
                                       [&](const SliceRelation& r) { return slice_positive_conjunctive(r, d.c); });
  f.connected = std::all_of(d.relations.begin(), d.relations.end(), [&](const SliceRelation& r) {
    return equality_graph_connected(r.arity, slice_equalities(r));
  });
  if (d.c == 2) {
    f.affine = slice_affine(d);
    f.zero_one_valid = std::all_of(d.relations.begin(), d.relations.end(), [&](const SliceRelation& r) {
      const std::vector<int> ones(static_cast<std::size_t>(r.arity), 1), twos(static_cast<std::size_t>(r.arity), 2);
      return std::binary_search(r.tuples.begin(), r.tuples.end(), ones) &&
             std::binary_search(r.tuples.begin(), r.tuples.end(), twos);
    });
  }
  return f;
}

const char* to_string(ExpansionCase c) {
  switch (c) {
    case ExpansionCase::EquivalentToBase: return "equivalent-to-base";
    case ExpansionCase::Trivial: return "trivial";
    case ExpansionCase::Polynomial: return "P";
    case ExpansionCase::BooleanEquivalent: return "boolean-equivalent";
    case ExpansionCase::StrictlyNegativeFpt: return "strictly-negative-fpt";
    case ExpansionCase::PositiveConjunctive: return "positive-conjunctive";
    case ExpansionCase::HittingSetHardHorn: return "hs-hard-horn";
    case ExpansionCase::CspNpHard: return "csp-np-hard";
  }
  return "?";
}

const char* to_string(PositiveConjunctiveVerdict v) {
  switch (v) {
    case PositiveConjunctiveVerdict::P: return "P";
    case PositiveConjunctiveVerdict::Fpt: return "FPT";
    case PositiveConjunctiveVerdict::W1Hard: return "W1hard";
  }
  return "?";
}

ExpansionVerdict classify_expansion(const SingletonExpansion& e) {
  const auto& lang = e.base;
  if (lang.empty()) throw Error("empty language");
  for (const auto& r : lang.relations()) {
    if (!r->is_proper()) throw Error("relation '" + r->name() + "' is empty or complete");
  }
  if (e.constants && *e.constants < 1) throw Error("number of constants must be at least 1");

  ExpansionVerdict v;
  const bool horn = language_all(lang, is_horn);
  const bool constant = language_all(lang, is_constant);
  const bool strictly_negative = language_all(lang, is_strictly_negative);

  auto csp_hard = [&] {
    v.kind = ExpansionCase::CspNpHard;
    v.csp_np_hard = v.mincsp_np_hard = true;
    return v;
  };
  auto hs_hard = [&] {
    v.kind = ExpansionCase::HittingSetHardHorn;
    v.mincsp_np_hard = true;
    return v;
  };
  auto pos_conj = [&](PositiveConjunctiveVerdict sub) {
    v.kind = ExpansionCase::PositiveConjunctive;
    v.sub = sub;
    v.const_approx = true;
    v.fpt = sub != PositiveConjunctiveVerdict::W1Hard;
    v.mincsp_np_hard = sub != PositiveConjunctiveVerdict::P;
    return v;
  };

  if (!horn && !constant) return csp_hard();
  if (!constant && !strictly_negative) {
    v.kind = ExpansionCase::EquivalentToBase;
    v.base = classify_language(lang);
    v.csp_np_hard = v.base->csp == ClassicalClass::NPHard;
    v.mincsp_np_hard = v.base->mincsp_classical == ClassicalClass::NPHard;
    v.fpt = v.base->parameterized == ParameterizedClass::Fpt;
    v.const_approx = v.base->approx == ApproxClass::PolyConst || v.base->approx == ApproxClass::FptConst ||
                     v.base->approx == ApproxClass::Trivial;
    return v;
  }
  if (strictly_negative) {
    v.kind = ExpansionCase::StrictlyNegativeFpt;
    v.mincsp_np_hard = v.fpt = v.const_approx = true;
    return v;
  }

  // Constant languages from here on.
  if (!e.constants) {
    if (!horn) return csp_hard();
    const bool pc = language_all(lang, positive_conjunctive);
    if (pc) {
      return pos_conj(language_all(lang, positive_conjunctive_connected) ? PositiveConjunctiveVerdict::Fpt
                                                                           : PositiveConjunctiveVerdict::W1Hard);
    }
    return hs_hard();
  }

  const int c = *e.constants;
  if (c == 1) {
    v.kind = ExpansionCase::Polynomial;
    v.fpt = v.const_approx = true;
    return v;
  }
  const bool retraction = language_all(lang, [](const EqRelation&) { return true; }) &&
                          std::all_of(lang.relations().begin(), lang.relations().end(),
                                      [&](const RelationPtr& r) { return preserved_by_collapse(*r, c); });
  if (!retraction) return horn ? hs_hard() : csp_hard();

  const auto flags = slice_properties(c_slice(lang, c));
  if (c >= 3 && !flags.positive_conjunctive && !flags.trivial) {
    v.note = "retraction exists but the slice is not positive conjunctive";
  }
  if (flags.trivial) {
    v.kind = ExpansionCase::Trivial;
    v.fpt = v.const_approx = true;
    return v;
  }
  if (flags.positive_conjunctive) {
    if (!flags.connected) return pos_conj(PositiveConjunctiveVerdict::W1Hard);
    return pos_conj(c == 2 ? PositiveConjunctiveVerdict::P : PositiveConjunctiveVerdict::Fpt);
  }
  if (c == 2 && flags.affine.value_or(false)) {
    v.kind = ExpansionCase::BooleanEquivalent;
    v.nearest_codeword_hard = true;
    v.mincsp_np_hard = true;
    return v;
  }
  return csp_hard();
}

}  // namespace eqcut
