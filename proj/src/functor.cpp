#include "tambara/functor.hpp"

#include <algorithm>
#include <map>

#include "tambara/error.hpp"

namespace tambara {

namespace {

std::vector<int> identity_table(int n) {
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  return t;
}

std::vector<int> compose_tables(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> t(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) t[i] = outer[inner[i]];
  return t;
}

}  // namespace

GRing TambaraData::bottom() const {
  const int n = levels[0]->size();
  std::vector<int> action(group->order() * n);
  for (int g = 0; g < group->order(); ++g)
    for (int x = 0; x < n; ++x) action[g * n + x] = conj(g, 0, x);
  return GRing{group, levels[0], std::move(action)};
}

bool TambaraData::is_zero() const {
  return std::all_of(levels.begin(), levels.end(), [](const RingPtr& r) { return r->is_zero_ring(); });
}

void TambaraData::check_shape() const {
  const int m = subgroup_count();
  require(static_cast<int>(levels.size()) == m, ErrorCode::InvalidInput, "functor needs one level per subgroup");
  require(static_cast<int>(res_tables.size()) == m * m && static_cast<int>(tr_tables.size()) == m * m &&
              static_cast<int>(nm_tables.size()) == m * m,
          ErrorCode::InvalidInput, "functor edge tables have the wrong shape");
  require(static_cast<int>(conj_tables.size()) == group->order() * m, ErrorCode::InvalidInput,
          "functor conjugation tables have the wrong shape");
  auto check = [&](const std::vector<int>& t, int from, int to, const std::string& what) {
    require(static_cast<int>(t.size()) == levels[from]->size(), ErrorCode::InvalidInput,
            what + " table has the wrong length");
    for (int v : t)
      require(v >= 0 && v < levels[to]->size(), ErrorCode::InvalidInput, what + " table entry out of range");
  };
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (!group->contains(k, h)) continue;
      std::string edge = group->subgroup_label(k) + "->" + group->subgroup_label(h);
      check(res_table(k, h), h, k, "res " + edge);
      check(tr_table(k, h), k, h, "tr " + edge);
      if (has_norms) check(nm_table(k, h), k, h, "nm " + edge);
    }
  for (int g = 0; g < group->order(); ++g)
    for (int h = 0; h < m; ++h)
      check(conj_table(g, h), h, group->conjugate(h, g), "conj " + std::to_string(g) + "," + group->subgroup_label(h));
}

TambaraData blank_functor(GroupPtr group, std::vector<RingPtr> levels, bool has_norms) {
  TambaraData t;
  t.group = std::move(group);
  t.levels = std::move(levels);
  t.has_norms = has_norms;
  const int m = t.group->subgroup_count();
  t.res_tables.assign(m * m, {});
  t.tr_tables.assign(m * m, {});
  t.nm_tables.assign(m * m, {});
  t.conj_tables.assign(t.group->order() * m, {});
  for (int h = 0; h < m; ++h) {
    auto id = identity_table(t.levels[h]->size());
    t.res_tables[h * m + h] = id;
    t.tr_tables[h * m + h] = id;
    if (has_norms) t.nm_tables[h * m + h] = id;
    for (GroupElement x : t.group->subgroup(h).elements) t.conj_tables[x * m + h] = id;
  }
  return t;
}

void complete_functor(TambaraData& t) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < m; ++k)
      for (int h = 0; h < m; ++h) {
        if (k == h || !g.contains(k, h)) continue;
        for (int l = 0; l < m; ++l) {
          if (l == k || l == h || !g.contains(k, l) || !g.contains(l, h)) continue;
          auto& res = t.res_tables[k * m + h];
          if (res.empty() && !t.res_tables[k * m + l].empty() && !t.res_tables[l * m + h].empty()) {
            res = compose_tables(t.res_tables[k * m + l], t.res_tables[l * m + h]);
            changed = true;
          }
          auto& tr = t.tr_tables[k * m + h];
          if (tr.empty() && !t.tr_tables[k * m + l].empty() && !t.tr_tables[l * m + h].empty()) {
            tr = compose_tables(t.tr_tables[l * m + h], t.tr_tables[k * m + l]);
            changed = true;
          }
          auto& nm = t.nm_tables[k * m + h];
          if (t.has_norms && nm.empty() && !t.nm_tables[k * m + l].empty() && !t.nm_tables[l * m + h].empty()) {
            nm = compose_tables(t.nm_tables[l * m + h], t.nm_tables[k * m + l]);
            changed = true;
          }
        }
      }
    for (int x = 0; x < g.order(); ++x)
      for (int h = 0; h < m; ++h) {
        if (!t.conj_tables[x * m + h].empty()) continue;
        for (int y = 0; y < g.order(); ++y) {
          // c_x = c_{x y^-1} after c_y
          GroupElement z = g.mul(x, g.inv(y));
          const auto& first = t.conj_tables[y * m + h];
          const auto& second = t.conj_tables[z * m + g.conjugate(h, y)];
          if (!first.empty() && !second.empty()) {
            t.conj_tables[x * m + h] = compose_tables(second, first);
            changed = true;
            break;
          }
        }
      }
  }
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (!g.contains(k, h)) continue;
      std::string edge = g.subgroup_label(k) + "->" + g.subgroup_label(h);
      require(!t.res_tables[k * m + h].empty(), ErrorCode::InvalidInput, "missing restriction " + edge);
      require(!t.tr_tables[k * m + h].empty(), ErrorCode::InvalidInput, "missing transfer " + edge);
      require(!t.has_norms || !t.nm_tables[k * m + h].empty(), ErrorCode::InvalidInput, "missing norm " + edge);
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h)
      require(!t.conj_tables[x * m + h].empty(), ErrorCode::InvalidInput,
              "missing conjugation " + std::to_string(x) + "," + g.subgroup_label(h));
  t.check_shape();
}

std::string TambaraMorphism::verify() const {
  const auto& s = *source;
  const auto& t = *target;
  if (!s.group->same_table(*t.group)) return "source and target groups differ";
  const auto& g = *s.group;
  const int m = g.subgroup_count();
  if (static_cast<int>(maps.size()) != m) return "wrong number of level maps";
  for (int h = 0; h < m; ++h) {
    RingHom hom{s.levels[h], t.levels[h], maps[h]};
    if (static_cast<int>(maps[h].size()) != s.levels[h]->size()) return "level map has the wrong length";
    for (int v : maps[h])
      if (v < 0 || v >= t.levels[h]->size()) return "level map entry out of range";
    if (!hom.is_homomorphism()) return "level " + g.subgroup_label(h) + " map is not a ring homomorphism";
  }
  const bool norms = s.has_norms && t.has_norms;
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      std::string edge = g.subgroup_label(k) + "->" + g.subgroup_label(h);
      for (int a = 0; a < s.levels[h]->size(); ++a)
        if (maps[k][s.res(k, h, a)] != t.res(k, h, maps[h][a])) return "does not commute with res " + edge;
      for (int a = 0; a < s.levels[k]->size(); ++a) {
        if (maps[h][s.tr(k, h, a)] != t.tr(k, h, maps[k][a])) return "does not commute with tr " + edge;
        if (norms && maps[h][s.nm(k, h, a)] != t.nm(k, h, maps[k][a])) return "does not commute with nm " + edge;
      }
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h) {
      SubgroupId xh = g.conjugate(h, x);
      for (int a = 0; a < s.levels[h]->size(); ++a)
        if (maps[xh][s.conj(x, h, a)] != t.conj(x, h, maps[h][a]))
          return "does not commute with conj " + std::to_string(x) + "," + g.subgroup_label(h);
    }
  return "";
}

bool TambaraMorphism::is_bijective() const {
  for (std::size_t h = 0; h < maps.size(); ++h) {
    RingHom hom{source->levels[h], target->levels[h], maps[h]};
    if (!hom.is_bijective()) return false;
  }
  return true;
}

TambaraMorphism identity_morphism(const FunctorPtr& t) {
  TambaraMorphism f{t, t, {}};
  for (const auto& l : t->levels) f.maps.push_back(identity_table(l->size()));
  return f;
}

TambaraMorphism compose(const TambaraMorphism& g, const TambaraMorphism& f) {
  TambaraMorphism out{f.source, g.target, {}};
  for (std::size_t h = 0; h < f.maps.size(); ++h) out.maps.push_back(compose_tables(g.maps[h], f.maps[h]));
  return out;
}

TambaraMorphism inverse(const TambaraMorphism& f) {
  require(f.is_bijective(), ErrorCode::InvalidInput, "only bijective morphisms can be inverted");
  TambaraMorphism out{f.target, f.source, {}};
  for (const auto& m : f.maps) {
    std::vector<int> inv(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) inv[m[a]] = static_cast<int>(a);
    out.maps.push_back(std::move(inv));
  }
  return out;
}

FunctorPtr fixed_point_functor(const GRing& r) {
  const auto& g = *r.group;
  const int m = g.subgroup_count();
  std::vector<Subring> subs;
  std::vector<RingPtr> levels;
  for (int h = 0; h < m; ++h) {
    subs.push_back(make_subring(*r.ring, r.fixed_elements(h), r.ring->one()));
    levels.push_back(subs.back().ring);
  }
  TambaraData t = blank_functor(r.group, levels, true);
  t.label = "FP(" + r.ring->label() + ")";
  const auto& ring = *r.ring;
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      // coset representatives of H/K
      std::vector<GroupElement> reps;
      std::vector<bool> seen(g.coset_count(k), false);
      for (GroupElement x : g.subgroup(h).elements) {
        int c = g.coset_of(k, x);
        if (!seen[c]) {
          seen[c] = true;
          reps.push_back(x);
        }
      }
      std::vector<int> res(levels[h]->size()), tr(levels[k]->size()), nm(levels[k]->size());
      for (int a = 0; a < levels[h]->size(); ++a) res[a] = subs[k].index_of[subs[h].embedding[a]];
      for (int a = 0; a < levels[k]->size(); ++a) {
        int x = subs[k].embedding[a];
        int sum = ring.zero(), prod = ring.one();
        for (GroupElement y : reps) {
          sum = ring.add(sum, r.act(y, x));
          prod = ring.mul(prod, r.act(y, x));
        }
        tr[a] = subs[h].index_of[sum];
        nm[a] = subs[h].index_of[prod];
      }
      t.res_tables[k * m + h] = std::move(res);
      t.tr_tables[k * m + h] = std::move(tr);
      t.nm_tables[k * m + h] = std::move(nm);
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h) {
      SubgroupId xh = g.conjugate(h, x);
      std::vector<int> c(levels[h]->size());
      for (int a = 0; a < levels[h]->size(); ++a) c[a] = subs[xh].index_of[r.act(x, subs[h].embedding[a])];
      t.conj_tables[x * m + h] = std::move(c);
    }
  return std::make_shared<const TambaraData>(std::move(t));
}

FunctorPtr zero_functor(GroupPtr group, bool has_norms) {
  const int m = group->subgroup_count();
  auto zero = FiniteRing::zero_ring();
  TambaraData t = blank_functor(group, std::vector<RingPtr>(m, zero), has_norms);
  t.label = "0";
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h)
      if (group->contains(k, h)) {
        t.res_tables[k * m + h] = {0};
        t.tr_tables[k * m + h] = {0};
        if (has_norms) t.nm_tables[k * m + h] = {0};
      }
  for (auto& c : t.conj_tables) c = {0};
  return std::make_shared<const TambaraData>(std::move(t));
}

FunctorPtr product(const std::vector<FunctorPtr>& factors) {
  require(!factors.empty(), ErrorCode::InvalidInput, "product of no functors");
  if (factors.size() == 1) return factors.front();
  const auto& first = *factors.front();
  GroupPtr group = first.group;
  for (const auto& f : factors) {
    require(f->group->same_table(*group), ErrorCode::GroupMismatch, "product of functors over different groups");
    require(f->has_norms == first.has_norms, ErrorCode::NormFlagMismatch,
            "product of a Green functor with a Tambara functor");
  }
  const auto& g = *group;
  const int m = g.subgroup_count();
  std::vector<RingPtr> levels;
  std::vector<ProductIndex> idx;
  for (int h = 0; h < m; ++h) {
    std::vector<RingPtr> parts;
    std::vector<int> radix;
    for (const auto& f : factors) {
      parts.push_back(f->levels[h]);
      radix.push_back(f->levels[h]->size());
    }
    levels.push_back(FiniteRing::product(parts));
    idx.emplace_back(radix);
  }
  TambaraData t = blank_functor(group, levels, first.has_norms);
  for (std::size_t i = 0; i < factors.size(); ++i) t.label += (i ? " x " : "") + factors[i]->label;
  auto lift = [&](int from, int to, auto&& map_of) {
    std::vector<int> table(levels[from]->size());
    for (int a = 0; a < levels[from]->size(); ++a) {
      auto parts = idx[from].decode(a);
      for (std::size_t i = 0; i < factors.size(); ++i) parts[i] = map_of(*factors[i], parts[i]);
      table[a] = idx[to].encode(parts);
    }
    return table;
  };
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      t.res_tables[k * m + h] = lift(h, k, [&](const TambaraData& f, int a) { return f.res(k, h, a); });
      t.tr_tables[k * m + h] = lift(k, h, [&](const TambaraData& f, int a) { return f.tr(k, h, a); });
      if (t.has_norms)
        t.nm_tables[k * m + h] = lift(k, h, [&](const TambaraData& f, int a) { return f.nm(k, h, a); });
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h)
      t.conj_tables[x * m + h] =
          lift(h, g.conjugate(h, x), [&](const TambaraData& f, int a) { return f.conj(x, h, a); });
  return std::make_shared<const TambaraData>(std::move(t));
}

std::vector<SubgroupId> orbit_levels(const GSet& x) {
  std::vector<SubgroupId> out;
  for (const auto& o : x.orbits()) out.push_back(o.stabilizer);
  return out;
}

AlongMap::AlongMap(const TambaraData& t, const GSetMap& f, MapKind kind) : t_(&t), kind_(kind) {
  const auto& g = *t.group;
  const auto& X = f.source;
  const auto& Y = f.target;
  require(X.group()->same_table(g) && Y.group()->same_table(g), ErrorCode::GroupMismatch,
          "G-set map and functor are over different groups");
  require(kind != MapKind::Nm || t.has_norms, ErrorCode::NoNorms, "norms along a map need a Tambara functor");
  out_size_ = kind == MapKind::Res ? static_cast<int>(X.orbits().size()) : static_cast<int>(Y.orbits().size());
  for (const auto& o : X.orbits()) {
    int fx = f(o.base);
    int j = Y.orbit_of(fx);
    const auto& target = Y.orbits()[j];
    auto pos = std::lower_bound(target.points.begin(), target.points.end(), fx) - target.points.begin();
    GroupElement a = target.carrier[pos];  // f(base) = a . target base
    SubgroupId s = o.stabilizer;
    SubgroupId s_prime = g.conjugate(s, g.inv(a));
    SubgroupId tj = target.stabilizer;
    require(g.contains(s_prime, tj), ErrorCode::VerificationFailed, "orbit map does not respect stabilizers");
    target_orbit_.push_back(j);
    std::vector<int> table;
    if (kind == MapKind::Res) {
      // c_a after res_{S'}^{T_j}
      table.resize(t.levels[tj]->size());
      for (int y = 0; y < t.levels[tj]->size(); ++y) table[y] = t.conj(a, s_prime, t.res(s_prime, tj, y));
    } else {
      table.resize(t.levels[s]->size());
      for (int x = 0; x < t.levels[s]->size(); ++x) {
        int moved = t.conj(g.inv(a), s, x);
        table[x] = kind == MapKind::Tr ? t.tr(s_prime, tj, moved) : t.nm(s_prime, tj, moved);
      }
    }
    composite_.push_back(std::move(table));
  }
  if (kind != MapKind::Res) {
    for (const auto& o : Y.orbits()) target_levels_.push_back(o.stabilizer);
  }
}

std::vector<int> AlongMap::operator()(std::span<const int> x) const {
  std::vector<int> out(out_size_);
  if (kind_ == MapKind::Res) {
    for (std::size_t i = 0; i < composite_.size(); ++i) out[i] = composite_[i][x[target_orbit_[i]]];
    return out;
  }
  for (int j = 0; j < out_size_; ++j) {
    const auto& lvl = *t_->levels[target_levels_[j]];
    out[j] = kind_ == MapKind::Tr ? lvl.zero() : lvl.one();
  }
  for (std::size_t i = 0; i < composite_.size(); ++i) {
    int j = target_orbit_[i];
    const auto& lvl = *t_->levels[target_levels_[j]];
    int v = composite_[i][x[i]];
    out[j] = kind_ == MapKind::Tr ? lvl.add(out[j], v) : lvl.mul(out[j], v);
  }
  return out;
}

int value_at(const TambaraData& t, const GSet& x, std::span<const int> element, int point) {
  int o = x.orbit_of(point);
  const auto& orbit = x.orbits()[o];
  auto pos = std::lower_bound(orbit.points.begin(), orbit.points.end(), point) - orbit.points.begin();
  return t.conj(orbit.carrier[pos], orbit.stabilizer, element[o]);
}

namespace {

// Builds a level table by decoding, mapping and re-encoding product elements.
std::vector<int> along_table(const TambaraData& t, const GSetMap& f, MapKind kind, const ProductIndex& from,
                             int from_size, const ProductIndex& to) {
  AlongMap along(t, f, kind);
  std::vector<int> table(from_size);
  for (int a = 0; a < from_size; ++a) {
    auto parts = from.decode(a);
    table[a] = to.encode(along(parts));
  }
  return table;
}

}  // namespace

FunctorPtr coinduce(const GroupPtr& group, SubgroupId h, const FunctorPtr& tp) {
  const auto& g = *group;
  const auto& t = *tp;
  const auto& view = g.view(h);
  require(t.group->same_table(*view.group), ErrorCode::GroupMismatch,
          "coinduction needs a functor for the subgroup");
  const int m = g.subgroup_count();
  std::vector<GSet> sets;
  std::vector<RingPtr> levels;
  std::vector<ProductIndex> idx;
  for (int k = 0; k < m; ++k) {
    sets.push_back(GSet::cosets(group, k).restrict_to(h));
    // the restricted set must use the same group object as t
    sets.back() = GSet(t.group, sets.back().size(), sets.back().action());
    std::vector<RingPtr> parts;
    std::vector<int> radix;
    for (SubgroupId l : orbit_levels(sets.back())) {
      parts.push_back(t.levels[l]);
      radix.push_back(t.levels[l]->size());
    }
    levels.push_back(FiniteRing::product(parts));
    idx.emplace_back(radix);
  }
  TambaraData out = blank_functor(group, levels, t.has_norms);
  out.label = h == g.whole() ? t.label : "Coind_" + g.subgroup_label(h) + "(" + t.label + ")";
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      if (k == l || !g.contains(k, l)) continue;
      GSetMap p = projection_map(group, k, l);
      GSetMap f{sets[k], sets[l], p.images};
      out.res_tables[k * m + l] = along_table(t, f, MapKind::Res, idx[l], levels[l]->size(), idx[k]);
      out.tr_tables[k * m + l] = along_table(t, f, MapKind::Tr, idx[k], levels[k]->size(), idx[l]);
      if (t.has_norms)
        out.nm_tables[k * m + l] = along_table(t, f, MapKind::Nm, idx[k], levels[k]->size(), idx[l]);
    }
  for (int x = 0; x < g.order(); ++x)
    for (int k = 0; k < m; ++k) {
      if (g.subgroup(k).contains(x)) continue;
      SubgroupId xk = g.conjugate(k, x);
      GSetMap c = conjugation_map(group, k, x);
      GSetMap f{sets[xk], sets[k], c.images};
      out.conj_tables[x * m + k] = along_table(t, f, MapKind::Res, idx[k], levels[k]->size(), idx[xk]);
    }
  return std::make_shared<const TambaraData>(std::move(out));
}

FunctorPtr restrict_functor(SubgroupId k, const FunctorPtr& tp) {
  const auto& t = *tp;
  const auto& g = *t.group;
  const auto& view = g.view(k);
  const auto& sub = *view.group;
  const int m = sub.subgroup_count();
  const int big = g.subgroup_count();
  std::vector<RingPtr> levels;
  for (int j = 0; j < m; ++j) levels.push_back(t.levels[view.lift[j]]);
  TambaraData out = blank_functor(view.group, levels, t.has_norms);
  out.label = k == g.whole() ? t.label : "Res_" + g.subgroup_label(k) + "(" + t.label + ")";
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!sub.contains(a, b)) continue;
      int e = view.lift[a] * big + view.lift[b];
      out.res_tables[a * m + b] = t.res_tables[e];
      out.tr_tables[a * m + b] = t.tr_tables[e];
      if (t.has_norms) out.nm_tables[a * m + b] = t.nm_tables[e];
    }
  for (int x = 0; x < sub.order(); ++x)
    for (int j = 0; j < m; ++j) out.conj_tables[x * m + j] = t.conj_tables[view.to_parent[x] * big + view.lift[j]];
  return std::make_shared<const TambaraData>(std::move(out));
}

FunctorPtr conjugate_functor(const GroupPtr& group, SubgroupId h, GroupElement g, const FunctorPtr& tp) {
  const auto& G = *group;
  const auto& t = *tp;
  const auto& src = G.view(h);
  require(t.group->same_table(*src.group), ErrorCode::GroupMismatch, "functor is not over the subgroup");
  SubgroupId gh = G.conjugate(h, g);
  const auto& dst = G.view(gh);
  const auto& sub = *dst.group;
  const int m = sub.subgroup_count();
  GroupElement gi = G.inv(g);
  // local subgroup of gHg^-1 -> local subgroup of H
  std::map<SubgroupId, int> local_of;
  for (std::size_t j = 0; j < src.lift.size(); ++j) local_of[src.lift[j]] = static_cast<int>(j);
  std::vector<int> back(m);
  for (int j = 0; j < m; ++j) back[j] = local_of.at(G.conjugate(dst.lift[j], gi));
  std::vector<RingPtr> levels;
  for (int j = 0; j < m; ++j) levels.push_back(t.levels[back[j]]);
  TambaraData out = blank_functor(dst.group, levels, t.has_norms);
  out.label = t.label;
  const int small = t.subgroup_count();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!sub.contains(a, b)) continue;
      int e = back[a] * small + back[b];
      out.res_tables[a * m + b] = t.res_tables[e];
      out.tr_tables[a * m + b] = t.tr_tables[e];
      if (t.has_norms) out.nm_tables[a * m + b] = t.nm_tables[e];
    }
  for (int x = 0; x < sub.order(); ++x) {
    GroupElement y = src.from_parent[G.mul(G.mul(gi, dst.to_parent[x]), g)];
    for (int j = 0; j < m; ++j) out.conj_tables[x * m + j] = t.conj_tables[y * small + back[j]];
  }
  return std::make_shared<const TambaraData>(std::move(out));
}

FunctorPtr green_counterexample(int p, const RingPtr& s) {
  auto group = cyclic_group(p);
  const auto& g = *group;
  require(g.subgroup_count() == 2, ErrorCode::InvalidInput, "green counterexample needs p prime");
  GRing bottom = coinduce_gring(group, g.trivial(), GRing::trivial(g.view(g.trivial()).group, s));
  auto top = FiniteRing::product({s, s});
  TambaraData t = blank_functor(group, {bottom.ring, top}, false);
  t.label = "green_counterexample";
  ProductIndex funs(std::vector<int>(p, s->size()));
  ProductIndex pair({s->size(), s->size()});
  std::vector<int> res(top->size()), tr(bottom.ring->size());
  for (int a = 0; a < top->size(); ++a) {
    auto st = pair.decode(a);
    res[a] = funs.encode(std::vector<int>(p, st[0]));
  }
  for (int a = 0; a < bottom.ring->size(); ++a) {
    auto f = funs.decode(a);
    int sum = s->zero();
    for (int v : f) sum = s->add(sum, v);
    std::vector<int> st{sum, s->zero()};
    tr[a] = pair.encode(st);
  }
  t.res_tables[0 * 2 + 1] = res;
  t.tr_tables[0 * 2 + 1] = tr;
  for (int x = 0; x < p; ++x) {
    std::vector<int> c(bottom.ring->size());
    for (int a = 0; a < bottom.ring->size(); ++a) c[a] = bottom.act(x, a);
    t.conj_tables[x * 2 + 0] = c;
  }
  t.check_shape();
  return std::make_shared<const TambaraData>(std::move(t));
}

Piece idempotent_piece(const FunctorPtr& tp, const std::vector<int>& units) {
  const auto& t = *tp;
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  std::vector<Subring> subs;
  std::vector<RingPtr> levels;
  for (int h = 0; h < m; ++h) {
    subs.push_back(principal_subring(*t.levels[h], units[h]));
    levels.push_back(subs.back().ring);
  }
  TambaraData out = blank_functor(t.group, levels, t.has_norms);
  out.label = t.label;
  auto restrict_table = [&](const std::vector<int>& table, int from, int to) {
    std::vector<int> r(levels[from]->size());
    for (int a = 0; a < levels[from]->size(); ++a) {
      int v = subs[to].index_of[table[subs[from].embedding[a]]];
      require(v >= 0, ErrorCode::VerificationFailed, "structure map leaves the idempotent piece");
      r[a] = v;
    }
    return r;
  };
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      out.res_tables[k * m + h] = restrict_table(t.res_table(k, h), h, k);
      out.tr_tables[k * m + h] = restrict_table(t.tr_table(k, h), k, h);
      if (t.has_norms) out.nm_tables[k * m + h] = restrict_table(t.nm_table(k, h), k, h);
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h)
      out.conj_tables[x * m + h] = restrict_table(t.conj_table(x, h), h, g.conjugate(h, x));
  Piece piece;
  piece.functor = std::make_shared<const TambaraData>(std::move(out));
  for (const auto& s : subs) piece.embedding.push_back(s.embedding);
  return piece;
}

MackeyDecomposition mackey_decomposition_iso(const GroupPtr& group, SubgroupId k, SubgroupId h,
                                             const FunctorPtr& t) {
  const auto& g = *group;
  MackeyDecomposition out;
  out.lhs = restrict_functor(k, coinduce(group, h, t));
  const auto& kview = g.view(k);
  const auto& kgroup = *kview.group;
  std::map<SubgroupId, int> local_in_k;
  for (std::size_t j = 0; j < kview.lift.size(); ++j) local_in_k[kview.lift[j]] = static_cast<int>(j);

  std::vector<FunctorPtr> parts;
  std::vector<FunctorPtr> inner_parts;
  std::vector<SubgroupId> kg_global;
  for (const auto& dc : double_cosets(g, k, h)) {
    GroupElement x = dc.representative;
    out.representatives.push_back(x);
    SubgroupId ghg = g.conjugate(h, x);
    SubgroupId kg = g.intersection(k, ghg);
    kg_global.push_back(kg);
    auto conj = conjugate_functor(group, h, x, t);
    const auto& cview = g.view(ghg);
    int local = static_cast<int>(std::find(cview.lift.begin(), cview.lift.end(), kg) - cview.lift.begin());
    auto restricted = restrict_functor(local, conj);
    // re-home onto view(K).view(K_g) so coinduce sees the right group object
    const auto& inner = kgroup.view(local_in_k.at(kg));
    auto rehomed = std::make_shared<TambaraData>(*restricted);
    require(rehomed->group->same_table(*inner.group), ErrorCode::VerificationFailed,
            "subgroup views disagree in the Mackey decomposition");
    rehomed->group = inner.group;
    inner_parts.push_back(rehomed);
    parts.push_back(coinduce(kview.group, local_in_k.at(kg), rehomed));
  }
  out.rhs = product(parts);

  const auto& T = *t;
  const auto& hview = g.view(h);
  const int m = kgroup.subgroup_count();
  TambaraMorphism iso{out.rhs, out.lhs, std::vector<std::vector<int>>(m)};
  for (int l = 0; l < m; ++l) {
    SubgroupId lg = kview.lift[l];
    // LHS: H-orbits of G/L
    GSet lhs_set = GSet::cosets(group, lg).restrict_to(h);
    std::vector<int> lhs_radix;
    for (SubgroupId s : orbit_levels(lhs_set)) lhs_radix.push_back(T.levels[s]->size());
    ProductIndex lhs_idx(lhs_radix);
    // RHS: per double coset, K_g-orbits of K/L
    GSet kl = GSet::cosets(kview.group, l);
    std::vector<int> outer_radix;
    std::vector<GSet> inner_sets;
    std::vector<ProductIndex> inner_idx;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      int local = local_in_k.at(kg_global[i]);
      inner_sets.push_back(kl.restrict_to(local));
      outer_radix.push_back(parts[i]->levels[l]->size());
      // one factor per K_g-orbit of K/L
      std::vector<int> radix;
      for (SubgroupId s : orbit_levels(inner_sets.back())) radix.push_back(inner_parts[i]->levels[s]->size());
      inner_idx.emplace_back(radix);
    }
    ProductIndex outer(outer_radix);
    const int n = out.rhs->levels[l]->size();
    std::vector<int> table(n);
    for (int a = 0; a < n; ++a) {
      auto per_g = outer.decode(a);
      std::vector<int> lhs_parts(lhs_set.orbits().size(), -1);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        auto comps = inner_idx[i].decode(per_g[i]);
        GroupElement x = out.representatives[i];
        const auto& orbits = inner_sets[i].orbits();
        for (std::size_t o = 0; o < orbits.size(); ++o) {
          GroupElement kk = kview.to_parent[kgroup.coset_representative(l, orbits[o].base)];
          int point = g.coset_of(lg, g.mul(g.inv(x), kk));
          int lo = lhs_set.orbit_of(point);
          const auto& orbit = lhs_set.orbits()[lo];
          auto pos = std::lower_bound(orbit.points.begin(), orbit.points.end(), point) - orbit.points.begin();
          GroupElement carrier = orbit.carrier[pos];  // local to H
          SubgroupId stab_x = hview.group->conjugate(orbit.stabilizer, carrier);
          lhs_parts[lo] = T.conj(hview.group->inv(carrier), stab_x, comps[o]);
        }
      }
      table[a] = lhs_idx.encode(lhs_parts);
    }
    iso.maps[l] = std::move(table);
  }
  std::string why = iso.verify();
  require(why.empty() && iso.is_bijective(), ErrorCode::VerificationFailed,
          "Mackey decomposition map is not an isomorphism: " + why);
  out.iso = std::move(iso);
  return out;
}

Algebra functor_algebra(const TambaraData& t, bool with_norms) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  Algebra a;
  for (int h = 0; h < m; ++h) {
    const auto& r = *t.levels[h];
    a.sort_sizes.push_back(r.size());
    std::vector<int> add(r.size() * r.size()), mul(r.size() * r.size());
    for (int x = 0; x < r.size(); ++x)
      for (int y = 0; y < r.size(); ++y) {
        add[x * r.size() + y] = r.add(x, y);
        mul[x * r.size() + y] = r.mul(x, y);
      }
    a.add_op.push_back(static_cast<int>(a.binary.size()));
    a.binary.push_back({h, std::move(add)});
    a.mul_op.push_back(static_cast<int>(a.binary.size()));
    a.binary.push_back({h, std::move(mul)});
    a.constants.push_back({h, r.zero()});
    a.constants.push_back({h, r.one()});
  }
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      a.unary.push_back({h, k, t.res_table(k, h)});
      a.unary.push_back({k, h, t.tr_table(k, h)});
      if (with_norms) a.unary.push_back({k, h, t.nm_table(k, h)});
    }
  for (GroupElement x : generators(g))
    for (int h = 0; h < m; ++h) a.unary.push_back({h, g.conjugate(h, x), t.conj_table(x, h)});
  return a;
}

namespace {

MorphismSearch run_functor_search(const FunctorPtr& a, const FunctorPtr& b, const SearchOptions& opt) {
  require(a->group->same_table(*b->group), ErrorCode::GroupMismatch, "functors over different groups");
  const bool norms = a->has_norms && b->has_norms;
  auto sa = functor_algebra(*a, norms);
  auto sb = functor_algebra(*b, norms);
  auto r = search_morphisms(sa, sb, opt);
  MorphismSearch out;
  out.status = r.status;
  for (auto& sol : r.solutions) out.morphisms.push_back(TambaraMorphism{a, b, std::move(sol)});
  return out;
}

}  // namespace

MorphismSearch functor_isomorphism(const FunctorPtr& a, const FunctorPtr& b, std::int64_t budget) {
  require(a->has_norms == b->has_norms, ErrorCode::NormFlagMismatch, "isomorphism search needs matching norm flags");
  SearchOptions opt;
  opt.injective = true;
  opt.budget = budget;
  opt.limit = 1;
  return run_functor_search(a, b, opt);
}

MorphismSearch functor_morphisms(const FunctorPtr& a, const FunctorPtr& b, std::size_t limit, std::int64_t budget) {
  SearchOptions opt;
  opt.budget = budget;
  opt.limit = limit;
  return run_functor_search(a, b, opt);
}

SearchResult gring_morphisms(const GRing& a, const GRing& b, const SearchOptions& options) {
  require(a.group->same_table(*b.group), ErrorCode::GroupMismatch, "G-rings over different groups");
  auto algebra = [](const GRing& r) {
    Algebra alg;
    const auto& ring = *r.ring;
    const int n = ring.size();
    alg.sort_sizes = {n};
    std::vector<int> add(n * n), mul(n * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        add[x * n + y] = ring.add(x, y);
        mul[x * n + y] = ring.mul(x, y);
      }
    alg.binary = {{0, std::move(add)}, {0, std::move(mul)}};
    alg.add_op = {0};
    alg.mul_op = {1};
    alg.constants = {{0, ring.zero()}, {0, ring.one()}};
    for (GroupElement x : generators(*r.group))
      alg.unary.push_back({0, 0, std::vector<int>(r.action.begin() + x * n, r.action.begin() + (x + 1) * n)});
    return alg;
  };
  return search_morphisms(algebra(a), algebra(b), options);
}

}  // namespace tambara
