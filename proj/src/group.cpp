#include "tambara/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "tambara/error.hpp"

namespace tambara {

namespace {

std::vector<GroupElement> close_under_mul(const std::vector<int>& table, int n,
                                          std::span<const GroupElement> generators) {
  std::vector<bool> in(n, false);
  std::vector<GroupElement> elems{0};
  in[0] = true;
  for (GroupElement g : generators) {
    if (!in[g]) {
      in[g] = true;
      elems.push_back(g);
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (int c : {table[elems[i] * n + elems[j]], table[elems[j] * n + elems[i]]}) {
        if (!in[c]) {
          in[c] = true;
          elems.push_back(c);
        }
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  require(n > 0, ErrorCode::InvalidInput, "group table is empty");
  std::vector<int> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    require(static_cast<int>(row.size()) == n, ErrorCode::InvalidInput, "group table is not square");
    for (int v : row) {
      require(v >= 0 && v < n, ErrorCode::InvalidInput, "group table entry out of range");
      flat.push_back(v);
    }
  }
  for (int a = 0; a < n; ++a) {
    require(flat[a] == a && flat[a * n] == a, ErrorCode::InvalidInput,
            "element 0 must be the identity of the group table");
  }
  for (int a = 0; a < n; ++a) {
    std::vector<bool> seen(n, false);
    for (int b = 0; b < n; ++b) {
      require(!seen[flat[a * n + b]], ErrorCode::InvalidInput, "group table row is not a permutation");
      seen[flat[a * n + b]] = true;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(flat[flat[a * n + b] * n + c] == flat[a * n + flat[b * n + c]],
                ErrorCode::InvalidInput, "group table is not associative");
  auto group = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  group->build(std::move(flat), std::move(name));
  return group;
}

GroupPtr FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators,
                                        std::string name) {
  require(!generators.empty(), ErrorCode::InvalidInput, "no permutation generators given");
  const std::size_t degree = generators.front().size();
  for (const auto& p : generators) {
    require(p.size() == degree, ErrorCode::InvalidInput, "permutation generators differ in degree");
    std::vector<bool> seen(degree, false);
    for (int v : p) {
      require(v >= 0 && static_cast<std::size_t>(v) < degree && !seen[v], ErrorCode::InvalidInput,
              "generator is not a permutation of {0..n-1}");
      seen[v] = true;
    }
  }
  std::vector<int> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
  };
  std::set<std::vector<int>> elems{identity};
  std::vector<std::vector<int>> frontier{identity};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& e : frontier) {
      for (const auto& g : generators) {
        auto c = compose(g, e);
        if (elems.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
    require(elems.size() <= 5000, ErrorCode::UnsupportedGroup, "permutation group is too large");
  }
  std::vector<std::vector<int>> sorted(elems.begin(), elems.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);
  const std::size_t n = sorted.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(sorted[a], sorted[b]));
  return from_table(table, std::move(name));
}

void FiniteGroup::build(std::vector<int> table, std::string name) {
  table_ = std::move(table);
  order_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(table_.size()))));
  name_ = name.empty() ? "G" + std::to_string(order_) : std::move(name);
  const int n = order_;
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a * n + b] == 0) inverse_[a] = b;

  // Subgroups: every subgroup is a join of cyclic subgroups, so close the
  // set of cyclic subgroups under pairwise joins.
  std::set<std::vector<GroupElement>> found;
  std::vector<std::vector<GroupElement>> work;
  for (int g = 0; g < n; ++g) {
    GroupElement gens[1] = {g};
    auto c = close_under_mul(table_, n, gens);
    if (found.insert(c).second) work.push_back(c);
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<GroupElement> gens = work[i];
      gens.insert(gens.end(), work[j].begin(), work[j].end());
      auto c = close_under_mul(table_, n, gens);
      if (found.insert(c).second) work.push_back(c);
    }
  }
  std::vector<std::vector<GroupElement>> subs(found.begin(), found.end());
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  subgroups_.clear();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Subgroup s;
    s.id = static_cast<SubgroupId>(i);
    s.elements = subs[i];
    s.member.assign(n, false);
    for (GroupElement g : s.elements) s.member[g] = true;
    subgroups_.push_back(std::move(s));
  }
  const int m = subgroup_count();

  std::map<std::vector<GroupElement>, SubgroupId> lookup;
  for (const auto& s : subgroups_) lookup[s.elements] = s.id;

  conjugates_.assign(n * m, 0);
  for (int g = 0; g < n; ++g) {
    for (const auto& s : subgroups_) {
      std::vector<GroupElement> c;
      c.reserve(s.elements.size());
      for (GroupElement x : s.elements) c.push_back(conjugate_element(g, x));
      std::sort(c.begin(), c.end());
      conjugates_[g * m + s.id] = lookup.at(c);
    }
  }
  containment_.assign(m * m, false);
  for (const auto& k : subgroups_)
    for (const auto& h : subgroups_)
      containment_[k.id * m + h.id] =
          std::all_of(k.elements.begin(), k.elements.end(), [&](GroupElement x) { return h.member[x]; });
  subconjugacy_.assign(m * m, false);
  for (int k = 0; k < m; ++k)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < m; ++h)
        if (containment_[conjugates_[g * m + k] * m + h]) subconjugacy_[k * m + h] = true;
  class_rep_.assign(m, 0);
  for (int h = 0; h < m; ++h) {
    SubgroupId best = h;
    for (int g = 0; g < n; ++g) best = std::min(best, conjugates_[g * m + h]);
    class_rep_[h] = best;
  }

  coset_index_.assign(m * n, -1);
  coset_reps_.assign(m, {});
  for (const auto& s : subgroups_) {
    int next = 0;
    for (int g = 0; g < n; ++g) {
      if (coset_index_[s.id * n + g] >= 0) continue;
      for (GroupElement h : s.elements) coset_index_[s.id * n + mul(g, h)] = next;
      coset_reps_[s.id].push_back(g);
      ++next;
    }
  }
  views_.resize(m);
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

int FiniteGroup::element_order(GroupElement g) const {
  int k = 1;
  for (GroupElement x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

SubgroupId FiniteGroup::find_subgroup(std::span<const GroupElement> elements) const {
  std::vector<GroupElement> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), sorted,
                             [](const Subgroup& s, const std::vector<GroupElement>& key) {
                               if (s.elements.size() != key.size()) return s.elements.size() < key.size();
                               return s.elements < key;
                             });
  if (it != subgroups_.end() && it->elements == sorted) return it->id;
  return -1;
}

SubgroupId FiniteGroup::generated_subgroup(std::span<const GroupElement> generators) const {
  auto elems = close_under_mul(table_, order_, generators);
  return find_subgroup(elems);
}

SubgroupId FiniteGroup::intersection(SubgroupId a, SubgroupId b) const {
  std::vector<GroupElement> both;
  for (GroupElement x : subgroups_[a].elements)
    if (subgroups_[b].member[x]) both.push_back(x);
  return find_subgroup(both);
}

std::vector<SubgroupId> FiniteGroup::class_representatives() const {
  std::vector<SubgroupId> reps;
  for (int h = 0; h < subgroup_count(); ++h)
    if (class_rep_[h] == h) reps.push_back(h);
  return reps;
}

GroupElement FiniteGroup::conjugator(SubgroupId from, SubgroupId to) const {
  for (int g = 0; g < order_; ++g)
    if (conjugate(from, g) == to) return g;
  return -1;
}

bool FiniteGroup::is_normal(SubgroupId h) const {
  for (int g = 0; g < order_; ++g)
    if (conjugate(h, g) != h) return false;
  return true;
}

bool FiniteGroup::lattice_is_chain() const {
  for (int a = 0; a < subgroup_count(); ++a)
    for (int b = 0; b < subgroup_count(); ++b)
      if (!contains(a, b) && !contains(b, a)) return false;
  return true;
}

const SubgroupView& FiniteGroup::view(SubgroupId h) const {
  std::lock_guard<std::mutex> lock(view_mutex_);
  auto& slot = views_[h];
  if (!slot) {
    const auto& sub = subgroups_[h];
    const int k = sub.order();
    auto v = std::make_unique<SubgroupView>();
    v->to_parent = sub.elements;
    v->from_parent.assign(order_, -1);
    for (int i = 0; i < k; ++i) v->from_parent[sub.elements[i]] = i;
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) table[i][j] = v->from_parent[mul(sub.elements[i], sub.elements[j])];
    std::string sub_name = h == whole() ? name_ : name_ + "[" + std::to_string(h) + "]";
    v->group = from_table(table, sub_name);
    for (const auto& local : v->group->subgroups()) {
      std::vector<GroupElement> up;
      for (GroupElement x : local.elements) up.push_back(sub.elements[x]);
      v->lift.push_back(find_subgroup(up));
    }
    slot = std::move(v);
  }
  return *slot;
}

std::string FiniteGroup::subgroup_label(SubgroupId h) const {
  if (h == trivial()) return "e";
  if (h == whole()) return "G";
  return std::to_string(h);
}

std::vector<SubgroupId> UpwardClosedSet::list() const {
  std::vector<SubgroupId> out;
  for (std::size_t h = 0; h < members.size(); ++h)
    if (members[h]) out.push_back(static_cast<SubgroupId>(h));
  return out;
}

bool UpwardClosedSet::is_valid() const {
  const int m = group->subgroup_count();
  for (int h = 0; h < m; ++h) {
    if (!members[h]) continue;
    for (int k = 0; k < m; ++k)
      if (group->is_subconjugate(h, k) && !members[k]) return false;
  }
  return true;
}

std::vector<Subgroup> subgroups(const FiniteGroup& g) { return g.subgroups(); }

std::vector<DoubleCoset> double_cosets(const FiniteGroup& g, SubgroupId k, SubgroupId h,
                                       SubgroupId ambient) {
  if (ambient < 0) ambient = g.whole();
  const auto& amb = g.subgroup(ambient);
  const auto& ks = g.subgroup(k);
  const auto& hs = g.subgroup(h);
  std::vector<bool> covered(g.order(), false);
  std::vector<DoubleCoset> out;
  for (GroupElement x : amb.elements) {
    if (covered[x]) continue;
    DoubleCoset dc;
    dc.representative = x;
    for (GroupElement a : ks.elements)
      for (GroupElement b : hs.elements) {
        GroupElement y = g.mul(g.mul(a, x), b);
        if (!covered[y]) {
          covered[y] = true;
          dc.elements.push_back(y);
        }
      }
    std::sort(dc.elements.begin(), dc.elements.end());
    out.push_back(std::move(dc));
  }
  return out;
}

bool is_subconjugate(const FiniteGroup& g, SubgroupId k, SubgroupId h) {
  return g.is_subconjugate(k, h);
}

UpwardClosedSet upward_closure(const GroupPtr& g, SubgroupId h) {
  UpwardClosedSet u{g, std::vector<bool>(g->subgroup_count(), false)};
  for (int k = 0; k < g->subgroup_count(); ++k) u.members[k] = g->is_subconjugate(h, k);
  return u;
}

UpwardClosedSet all_subgroups(const GroupPtr& g) { return upward_closure(g, g->trivial()); }

WeylGroup weyl_group(const FiniteGroup& g, SubgroupId h) {
  std::vector<GroupElement> normalizer;
  for (int x = 0; x < g.order(); ++x)
    if (g.conjugate(h, x) == h) normalizer.push_back(x);
  // cosets xH inside N_G(H), represented by their minimal element
  std::vector<GroupElement> section;
  std::vector<int> coset_id(g.order(), -1);
  for (GroupElement x : normalizer) {
    int c = g.coset_of(h, x);
    if (std::find_if(section.begin(), section.end(),
                     [&](GroupElement s) { return g.coset_of(h, s) == c; }) == section.end())
      section.push_back(x);
  }
  std::sort(section.begin(), section.end());
  for (std::size_t i = 0; i < section.size(); ++i) coset_id[g.coset_of(h, section[i])] = static_cast<int>(i);
  const std::size_t w = section.size();
  std::vector<std::vector<int>> table(w, std::vector<int>(w));
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b)
      table[a][b] = coset_id[g.coset_of(h, g.mul(section[a], section[b]))];
  return WeylGroup{FiniteGroup::from_table(table, "W(" + g.subgroup_label(h) + ")"), section};
}

std::vector<GroupElement> generators(const FiniteGroup& g) {
  std::vector<GroupElement> gens;
  SubgroupId current = g.trivial();
  for (GroupElement x = 1; x < g.order() && current != g.whole(); ++x) {
    if (g.subgroup(current).contains(x)) continue;
    gens.push_back(x);
    current = g.generated_subgroup(gens);
  }
  return gens;
}

GroupPtr cyclic_group(int n) {
  require(n >= 1, ErrorCode::InvalidInput, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table(t, "C" + std::to_string(n));
}

GroupPtr dihedral_group(int n) {
  require(n >= 2, ErrorCode::InvalidInput, "dihedral group needs n >= 2");
  // element (r^i s^j) encoded as i + n*j
  const int order = 2 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      int i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
      int i = j1 == 0 ? (i1 + i2) % n : ((i1 - i2) % n + n) % n;
      t[a][b] = i + n * ((j1 + j2) % 2);
    }
  return FiniteGroup::from_table(t, "D" + std::to_string(order));
}

GroupPtr symmetric_group(int n) {
  require(n >= 1 && n <= 5, ErrorCode::UnsupportedGroup, "symmetric groups up to S5 only");
  if (n == 1) return cyclic_group(1);
  std::vector<int> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return FiniteGroup::from_permutations({swap, cycle}, "S" + std::to_string(n));
}

GroupPtr klein_four_group() {
  auto g = direct_product(*cyclic_group(2), *cyclic_group(2));
  return FiniteGroup::from_table(g->table(), "C2xC2");
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order(), m = b.order();
  std::vector<std::vector<int>> t(n * m, std::vector<int>(n * m));
  for (int x = 0; x < n * m; ++x)
    for (int y = 0; y < n * m; ++y)
      t[x][y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
  return FiniteGroup::from_table(t, a.name() + "x" + b.name());
}

}  // namespace tambara
