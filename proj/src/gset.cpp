#include "tambara/gset.hpp"

#include <algorithm>
#include <map>

#include "tambara/error.hpp"

namespace tambara {

GSet::GSet(GroupPtr group, int size, std::vector<int> action)
    : group_(std::move(group)), size_(size), action_(std::move(action)) {
  const int n = group_->order();
  require(static_cast<int>(action_.size()) == n * size_, ErrorCode::InvalidInput,
          "G-set action table has the wrong shape");
  for (int g = 0; g < n; ++g) {
    std::vector<bool> hit(size_, false);
    for (int x = 0; x < size_; ++x) {
      int y = action_[g * size_ + x];
      require(y >= 0 && y < size_ && !hit[y], ErrorCode::InvalidInput,
              "G-set action is not a permutation");
      hit[y] = true;
    }
  }
  for (int x = 0; x < size_; ++x)
    require(action_[x] == x, ErrorCode::InvalidInput, "identity must act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < size_; ++x)
        require(act(group_->mul(g, h), x) == act(g, act(h, x)), ErrorCode::InvalidInput,
                "G-set action is not a homomorphism");
  compute_orbits();
}

void GSet::compute_orbits() {
  const auto& g = *group_;
  orbit_index_.assign(size_, -1);
  orbits_.clear();
  for (int x = 0; x < size_; ++x) {
    if (orbit_index_[x] >= 0) continue;
    Orbit o;
    o.base = x;
    std::vector<GroupElement> stab;
    std::map<int, GroupElement> carrier;
    for (int e = 0; e < g.order(); ++e) {
      int y = act(e, x);
      if (y == x) stab.push_back(e);
      carrier.emplace(y, e);  // first hit is the minimal element
    }
    o.stabilizer = g.find_subgroup(stab);
    for (auto [y, e] : carrier) {
      o.points.push_back(y);
      o.carrier.push_back(e);
      orbit_index_[y] = static_cast<int>(orbits_.size());
    }
    o.coset_of.resize(o.points.size());
    o.point_of_coset.assign(g.coset_count(o.stabilizer), -1);
    for (std::size_t i = 0; i < o.points.size(); ++i) {
      int c = g.coset_of(o.stabilizer, o.carrier[i]);
      o.coset_of[i] = c;
      o.point_of_coset[c] = o.points[i];
    }
    orbits_.push_back(std::move(o));
  }
}

SubgroupId GSet::stabilizer(int x) const {
  std::vector<GroupElement> stab;
  for (int e = 0; e < group_->order(); ++e)
    if (act(e, x) == x) stab.push_back(e);
  return group_->find_subgroup(stab);
}

GSet GSet::cosets(GroupPtr group, SubgroupId h) {
  const auto& g = *group;
  const int m = g.coset_count(h);
  std::vector<int> action(g.order() * m);
  for (int e = 0; e < g.order(); ++e)
    for (int c = 0; c < m; ++c)
      action[e * m + c] = g.coset_of(h, g.mul(e, g.coset_representative(h, c)));
  return GSet(std::move(group), m, std::move(action));
}

GSet GSet::disjoint_union(const std::vector<GSet>& parts) {
  require(!parts.empty(), ErrorCode::InvalidInput, "disjoint union of no G-sets");
  GroupPtr group = parts.front().group();
  int total = 0;
  for (const auto& p : parts) {
    require(p.group()->same_table(*group), ErrorCode::GroupMismatch, "disjoint union over different groups");
    total += p.size();
  }
  std::vector<int> action(group->order() * total);
  int offset = 0;
  for (const auto& p : parts) {
    for (int e = 0; e < group->order(); ++e)
      for (int x = 0; x < p.size(); ++x) action[e * total + offset + x] = offset + p.act(e, x);
    offset += p.size();
  }
  return GSet(group, total, std::move(action));
}

GSet GSet::restrict_to(SubgroupId k) const {
  const auto& v = group_->view(k);
  const int n = v.group->order();
  std::vector<int> action(n * size_);
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < size_; ++x) action[i * size_ + x] = act(v.to_parent[i], x);
  return GSet(v.group, size_, std::move(action));
}

bool GSetMap::is_equivariant() const {
  if (static_cast<int>(images.size()) != source.size()) return false;
  for (int e = 0; e < source.group()->order(); ++e)
    for (int x = 0; x < source.size(); ++x)
      if (images[source.act(e, x)] != target.act(e, images[x])) return false;
  return true;
}

GSetMap identity_map(const GSet& x) {
  std::vector<int> images(x.size());
  for (int i = 0; i < x.size(); ++i) images[i] = i;
  return GSetMap{x, x, std::move(images)};
}

GSetMap compose(const GSetMap& g, const GSetMap& f) {
  std::vector<int> images(f.source.size());
  for (int i = 0; i < f.source.size(); ++i) images[i] = g(f(i));
  return GSetMap{f.source, g.target, std::move(images)};
}

GSetMap projection_map(GroupPtr group, SubgroupId k, SubgroupId h) {
  require(group->contains(k, h), ErrorCode::InvalidInput, "projection G/K -> G/H needs K inside H");
  GSet src = GSet::cosets(group, k);
  GSet tgt = GSet::cosets(group, h);
  std::vector<int> images(src.size());
  for (int c = 0; c < src.size(); ++c) images[c] = group->coset_of(h, group->coset_representative(k, c));
  return GSetMap{std::move(src), std::move(tgt), std::move(images)};
}

GSetMap conjugation_map(GroupPtr group, SubgroupId h, GroupElement g) {
  SubgroupId gh = group->conjugate(h, g);
  GSet src = GSet::cosets(group, gh);
  GSet tgt = GSet::cosets(group, h);
  std::vector<int> images(src.size());
  for (int c = 0; c < src.size(); ++c)
    images[c] = group->coset_of(h, group->mul(group->coset_representative(gh, c), g));
  return GSetMap{std::move(src), std::move(tgt), std::move(images)};
}

Pullback pullback(const GSetMap& f, const GSetMap& g) {
  require(f.target.size() == g.target.size(), ErrorCode::InvalidInput, "pullback needs a common target");
  GroupPtr group = f.source.group();
  Pullback out;
  std::map<std::pair<int, int>, int> index;
  for (int x = 0; x < f.source.size(); ++x)
    for (int z = 0; z < g.source.size(); ++z)
      if (f(x) == g(z)) {
        index[{x, z}] = static_cast<int>(out.pairs.size());
        out.pairs.emplace_back(x, z);
      }
  const int n = static_cast<int>(out.pairs.size());
  std::vector<int> action(group->order() * n);
  for (int e = 0; e < group->order(); ++e)
    for (int i = 0; i < n; ++i) {
      auto [x, z] = out.pairs[i];
      action[e * n + i] = index.at({f.source.act(e, x), g.source.act(e, z)});
    }
  out.set = GSet(group, n, std::move(action));
  std::vector<int> first(n), second(n);
  for (int i = 0; i < n; ++i) {
    first[i] = out.pairs[i].first;
    second[i] = out.pairs[i].second;
  }
  out.first = GSetMap{out.set, f.source, std::move(first)};
  out.second = GSetMap{out.set, g.source, std::move(second)};
  return out;
}

ExponentialDiagram dependent_product(const GSetMap& f, const GSetMap& p, int cap) {
  require(p.target.size() == f.source.size(), ErrorCode::InvalidInput,
          "dependent product needs p to land in the source of f");
  GroupPtr group = f.source.group();
  const auto& X = f.source;
  const auto& Y = f.target;
  const auto& A = p.source;

  std::vector<std::vector<int>> fiber(Y.size());
  for (int x = 0; x < X.size(); ++x) fiber[f(x)].push_back(x);
  std::vector<std::vector<int>> over(X.size());
  for (int a = 0; a < A.size(); ++a) over[p(a)].push_back(a);

  ExponentialDiagram d{f, p, {}, {}, {}, {}, {}, {}, {}};
  long long total = 0;
  for (int y = 0; y < Y.size(); ++y) {
    long long count = 1;
    for (int x : fiber[y]) {
      count *= static_cast<long long>(over[x].size());
      if (count > cap) break;
    }
    total += count;
    require(total <= cap, ErrorCode::SectionCapExceeded,
            "dependent product has more than " + std::to_string(cap) + " points");
  }
  for (int y = 0; y < Y.size(); ++y) {
    const auto& fib = fiber[y];
    std::vector<int> choice(fib.size(), 0);
    bool empty = std::any_of(fib.begin(), fib.end(), [&](int x) { return over[x].empty(); });
    if (empty) continue;
    while (true) {
      std::vector<int> sigma(fib.size());
      for (std::size_t i = 0; i < fib.size(); ++i) sigma[i] = over[fib[i]][choice[i]];
      d.sections.emplace_back(y, std::move(sigma));
      int i = static_cast<int>(fib.size()) - 1;
      while (i >= 0 && ++choice[i] == static_cast<int>(over[fib[i]].size())) {
        choice[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (std::size_t i = 0; i < d.sections.size(); ++i) index[d.sections[i]] = static_cast<int>(i);
  const int n = static_cast<int>(d.sections.size());

  // position of x within its fibre
  std::vector<int> slot(X.size());
  for (int y = 0; y < Y.size(); ++y)
    for (std::size_t i = 0; i < fiber[y].size(); ++i) slot[fiber[y][i]] = static_cast<int>(i);

  std::vector<int> action(group->order() * n);
  for (int g = 0; g < group->order(); ++g) {
    GroupElement gi = group->inv(g);
    for (int i = 0; i < n; ++i) {
      const auto& [y, sigma] = d.sections[i];
      int gy = Y.act(g, y);
      std::vector<int> moved(fiber[gy].size());
      for (std::size_t j = 0; j < fiber[gy].size(); ++j) {
        int x = X.act(gi, fiber[gy][j]);
        moved[j] = A.act(g, sigma[slot[x]]);
      }
      action[g * n + i] = index.at({gy, moved});
    }
  }
  d.pi = GSet(group, n, std::move(action));
  std::vector<int> proj(n);
  for (int i = 0; i < n; ++i) proj[i] = d.sections[i].first;
  d.projection = GSetMap{d.pi, Y, std::move(proj)};

  Pullback corner = pullback(f, d.projection);
  d.pullback_corner = corner.set;
  std::vector<int> eval(corner.pairs.size());
  for (std::size_t i = 0; i < corner.pairs.size(); ++i) {
    auto [x, s] = corner.pairs[i];
    eval[i] = d.sections[s].second[slot[x]];
  }
  d.evaluation = GSetMap{d.pullback_corner, A, std::move(eval)};
  d.corner_projection = corner.second;
  d.corner_to_source = corner.first;

  require(d.evaluation.is_equivariant() && d.projection.is_equivariant(), ErrorCode::VerificationFailed,
          "dependent product maps are not equivariant");
  for (int i = 0; i < d.pullback_corner.size(); ++i)
    require(p(d.evaluation(i)) == d.corner_to_source(i), ErrorCode::VerificationFailed,
            "exponential diagram does not commute");
  return d;
}

std::optional<GSetMap> gset_isomorphism(const GSet& x, const GSet& y) {
  if (x.size() != y.size()) return std::nullopt;
  const auto& g = *x.group();
  std::vector<bool> used(y.orbits().size(), false);
  std::vector<int> images(x.size(), -1);
  for (const auto& ox : x.orbits()) {
    bool matched = false;
    for (std::size_t j = 0; j < y.orbits().size() && !matched; ++j) {
      const auto& oy = y.orbits()[j];
      if (used[j] || !g.are_conjugate(ox.stabilizer, oy.stabilizer)) continue;
      // need c with stab(c.base_y) = c Sy c^-1 = Sx
      GroupElement c = g.conjugator(oy.stabilizer, ox.stabilizer);
      int target_base = y.act(c, oy.base);
      for (std::size_t i = 0; i < ox.points.size(); ++i)
        images[ox.points[i]] = y.act(ox.carrier[i], target_base);
      used[j] = true;
      matched = true;
    }
    if (!matched) return std::nullopt;
  }
  GSetMap m{x, y, std::move(images)};
  if (!m.is_equivariant()) return std::nullopt;
  return m;
}

}  // namespace tambara
