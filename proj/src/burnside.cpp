#include "tambara/burnside.hpp"

#include <algorithm>
#include <string>

#include "tambara/error.hpp"

namespace tambara {

namespace {

using Int = __int128;

Int checked_mul(Int a, Int b) {
  Int r;
  require(!__builtin_mul_overflow(a, b, &r), ErrorCode::UnsupportedGroup, "mark arithmetic overflows 128 bits");
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  require(!__builtin_add_overflow(a, b, &r), ErrorCode::UnsupportedGroup, "mark arithmetic overflows 128 bits");
  return r;
}

int reduce(Int v, int n) {
  Int r = v % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

// Table of marks and basis bookkeeping for the integral Burnside ring of one
// subgroup H.
struct MarkTable {
  SubgroupId h = 0;
  std::vector<SubgroupId> basis;
  std::vector<int> class_of;             // global subgroup -> basis index, -1 outside H
  std::vector<std::vector<Int>> marks;   // marks[i][j] = phi_{basis j}(H/basis i)

  MarkTable(const FiniteGroup& g, SubgroupId hh) : h(hh) {
    const auto& elems = g.subgroup(h).elements;
    const int m = g.subgroup_count();
    std::vector<SubgroupId> rep(m, -1);
    for (int l = 0; l < m; ++l) {
      if (!g.contains(l, h)) continue;
      SubgroupId best = l;
      for (GroupElement x : elems) best = std::min(best, g.conjugate(l, x));
      rep[l] = best;
      if (best == l) basis.push_back(l);
    }
    class_of.assign(m, -1);
    for (int l = 0; l < m; ++l)
      if (rep[l] >= 0)
        class_of[l] = static_cast<int>(std::lower_bound(basis.begin(), basis.end(), rep[l]) - basis.begin());
    const int r = static_cast<int>(basis.size());
    marks.assign(r, std::vector<Int>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        int count = 0;
        for (GroupElement x : elems)
          if (g.contains(g.conjugate(basis[j], g.inv(x)), basis[i])) ++count;
        marks[i][j] = count / g.subgroup(basis[i]).order();
      }
  }

  int rank() const { return static_cast<int>(basis.size()); }

  std::vector<Int> to_marks(const std::vector<Int>& c) const {
    std::vector<Int> v(rank(), 0);
    for (int i = 0; i < rank(); ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < rank(); ++j)
        if (marks[i][j] != 0) v[j] = checked_add(v[j], checked_mul(c[i], marks[i][j]));
    }
    return v;
  }

  std::vector<Int> from_marks(const std::vector<Int>& v) const {
    std::vector<Int> c(rank(), 0);
    for (int j = rank() - 1; j >= 0; --j) {
      Int rest = v[j];
      for (int i = j + 1; i < rank(); ++i)
        if (marks[i][j] != 0 && c[i] != 0) rest = checked_add(rest, -checked_mul(c[i], marks[i][j]));
      require(rest % marks[j][j] == 0, ErrorCode::VerificationFailed, "marks are not those of a virtual H-set");
      c[j] = rest / marks[j][j];
    }
    return c;
  }
};

}  // namespace

std::vector<int> BurnsideLevel::coordinates(int index) const {
  std::vector<int> c(basis.size());
  for (int i = static_cast<int>(basis.size()) - 1; i >= 0; --i) {
    c[i] = index % modulus;
    index /= modulus;
  }
  return c;
}

int BurnsideLevel::encode(const std::vector<int>& c) const {
  int index = 0;
  for (int v : c) index = index * modulus + ((v % modulus) + modulus) % modulus;
  return index;
}

int BurnsideFunctor::element(SubgroupId h, const std::vector<int>& coefficients) const {
  const auto& lvl = levels[h];
  return lvl.projection[lvl.encode(coefficients)];
}

int BurnsideFunctor::orbit(SubgroupId h, SubgroupId l) const {
  const auto& lvl = levels[h];
  const auto& g = *functor->group;
  std::vector<int> c(lvl.basis.size(), 0);
  for (std::size_t i = 0; i < lvl.basis.size(); ++i) {
    const auto& elems = g.subgroup(h).elements;
    if (std::any_of(elems.begin(), elems.end(), [&](GroupElement x) { return g.conjugate(l, x) == lvl.basis[i]; }))
      c[i] = 1;
  }
  return element(h, c);
}

BurnsideFunctor burnside_detail(const GroupPtr& group, int n) {
  const auto& g = *group;
  require(g.order() <= kMaxBurnsideOrder, ErrorCode::UnsupportedGroup,
          "Burnside functors are supported for groups of order at most 12");
  require(n >= 2, ErrorCode::InvalidInput, "Burnside modulus must be at least 2");
  const int m = g.subgroup_count();
  std::vector<MarkTable> tables;
  for (int h = 0; h < m; ++h) tables.emplace_back(g, h);

  std::vector<BurnsideLevel> lv(m);
  std::vector<RingPtr> full;
  for (int h = 0; h < m; ++h) {
    lv[h].basis = tables[h].basis;
    lv[h].modulus = n;
    long long size = 1;
    for (int i = 0; i < tables[h].rank(); ++i) {
      size *= n;
      require(size <= 4096, ErrorCode::UnsupportedGroup, "Burnside level would exceed 4096 elements");
    }
  }

  auto lift = [&](SubgroupId h, int index) {
    auto c = lv[h].coordinates(index);
    std::vector<Int> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] > n / 2 ? c[i] - n : c[i];
    return out;
  };
  auto lower = [&](SubgroupId h, const std::vector<Int>& c) {
    std::vector<int> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = reduce(c[i], n);
    return lv[h].encode(r);
  };
  // integral structure maps on coordinate vectors
  auto res_int = [&](SubgroupId k, SubgroupId h, const std::vector<Int>& c) {
    auto v = tables[h].to_marks(c);
    std::vector<Int> w(tables[k].rank());
    for (int j = 0; j < tables[k].rank(); ++j) w[j] = v[tables[h].class_of[tables[k].basis[j]]];
    return tables[k].from_marks(w);
  };
  auto tr_int = [&](SubgroupId /*k*/, SubgroupId h, const std::vector<Int>& c, const MarkTable& from) {
    std::vector<Int> out(tables[h].rank(), 0);
    for (int i = 0; i < from.rank(); ++i) {
      int j = tables[h].class_of[from.basis[i]];
      out[j] = checked_add(out[j], c[i]);
    }
    return out;
  };
  auto nm_int = [&](SubgroupId k, SubgroupId h, const std::vector<Int>& c) {
    auto v = tables[k].to_marks(c);
    std::vector<Int> w(tables[h].rank(), 1);
    for (int j = 0; j < tables[h].rank(); ++j) {
      SubgroupId mm = tables[h].basis[j];
      for (const auto& dc : double_cosets(g, mm, k, h)) {
        SubgroupId s = g.intersection(k, g.conjugate(mm, g.inv(dc.representative)));
        w[j] = checked_mul(w[j], v[tables[k].class_of[s]]);
      }
    }
    return tables[h].from_marks(w);
  };
  auto conj_int = [&](GroupElement x, SubgroupId h, const std::vector<Int>& c) {
    SubgroupId xh = g.conjugate(h, x);
    std::vector<Int> out(tables[xh].rank(), 0);
    for (int i = 0; i < tables[h].rank(); ++i) {
      int j = tables[xh].class_of[g.conjugate(tables[h].basis[i], x)];
      out[j] = checked_add(out[j], c[i]);
    }
    return out;
  };

  // (Z/N)^r with the Burnside multiplication
  for (int h = 0; h < m; ++h) {
    const auto& t = tables[h];
    const int r = t.rank();
    std::vector<std::vector<std::vector<int>>> st(r, std::vector<std::vector<int>>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        std::vector<Int> v(r);
        for (int k = 0; k < r; ++k) v[k] = checked_mul(t.marks[i][k], t.marks[j][k]);
        auto c = t.from_marks(v);
        for (auto x : c) st[i][j].push_back(reduce(x, n));
      }
    int size = 1;
    for (int i = 0; i < r; ++i) size *= n;
    std::vector<std::vector<int>> coords(size);
    for (int a = 0; a < size; ++a) coords[a] = lv[h].coordinates(a);
    std::vector<int> add(size * size), mul(size * size);
    std::vector<int> tmp(r);
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b) {
        for (int k = 0; k < r; ++k) tmp[k] = (coords[a][k] + coords[b][k]) % n;
        add[a * size + b] = lv[h].encode(tmp);
        std::fill(tmp.begin(), tmp.end(), 0);
        for (int i = 0; i < r; ++i) {
          if (!coords[a][i]) continue;
          for (int j = 0; j < r; ++j) {
            if (!coords[b][j]) continue;
            int f = coords[a][i] * coords[b][j] % n;
            for (int k = 0; k < r; ++k) tmp[k] = (tmp[k] + f * st[i][j][k]) % n;
          }
        }
        mul[a * size + b] = lv[h].encode(tmp);
      }
    full.push_back(FiniteRing::from_flat(size, std::move(add), std::move(mul), "A(" + g.subgroup_label(h) + ")"));
  }

  // smallest Tambara ideal containing N
  std::vector<std::vector<int>> gens(m), ideal(m);
  std::vector<std::vector<char>> member(m);
  for (int h = 0; h < m; ++h)
    for (int k = 0; k < m; ++k) {
      if (k == h || !g.contains(k, h)) continue;
      std::vector<Int> nk(tables[k].rank(), 0);
      nk[tables[k].class_of[k]] = n;
      gens[h].push_back(lower(h, nm_int(k, h, nk)));
    }
  auto gen_elements = generators(g);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int h = 0; h < m; ++h) {
      ideal[h] = ideal_generated(*full[h], gens[h]);
      member[h].assign(full[h]->size(), 0);
      for (int x : ideal[h]) member[h][x] = 1;
    }
    auto offer = [&](SubgroupId h, int x) {
      if (!member[h][x]) {
        member[h][x] = 1;
        gens[h].push_back(x);
        changed = true;
      }
    };
    for (int k = 0; k < m; ++k)
      for (int h = 0; h < m; ++h) {
        if (k == h || !g.contains(k, h)) continue;
        for (int x : ideal[h]) offer(k, lower(k, res_int(k, h, lift(h, x))));
        for (int x : ideal[k]) {
          offer(h, lower(h, tr_int(k, h, lift(k, x), tables[k])));
          offer(h, lower(h, nm_int(k, h, lift(k, x))));
        }
      }
    for (GroupElement x : gen_elements)
      for (int h = 0; h < m; ++h) {
        SubgroupId xh = g.conjugate(h, x);
        for (int e : ideal[h]) offer(xh, lower(xh, conj_int(x, h, lift(h, e))));
      }
  }

  std::vector<RingPtr> levels;
  for (int h = 0; h < m; ++h) {
    auto q = quotient(*full[h], ideal[h]);
    const int k = q.ring->size();
    std::vector<int> add(k * k), mul(k * k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        add[a * k + b] = q.ring->add(a, b);
        mul[a * k + b] = q.ring->mul(a, b);
      }
    std::vector<std::string> labels;
    for (int rep : q.representatives) {
      auto c = lv[h].coordinates(rep);
      std::string text;
      // constant term last, larger orbits first
      for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        std::string term = lv[h].basis[i] == h ? std::to_string(c[i])
                                               : (c[i] == 1 ? "" : std::to_string(c[i])) + "[" +
                                                     g.subgroup_label(h) + "/" + g.subgroup_label(lv[h].basis[i]) + "]";
        text = text.empty() ? term : term + "+" + text;
      }
      labels.push_back(text.empty() ? "0" : text);
    }
    levels.push_back(FiniteRing::from_flat(k, std::move(add), std::move(mul),
                                           "A(" + g.subgroup_label(h) + ")/" + std::to_string(n), std::move(labels)));
    lv[h].projection = std::move(q.projection);
    lv[h].representatives = std::move(q.representatives);
  }
  TambaraData t = blank_functor(group, levels, true);
  t.label = "Burnside/" + std::to_string(n);
  auto project = [&](SubgroupId h, const std::vector<Int>& c) { return lv[h].projection[lower(h, c)]; };
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      std::vector<int> res(levels[h]->size()), tr(levels[k]->size()), nm(levels[k]->size());
      for (int a = 0; a < levels[h]->size(); ++a)
        res[a] = project(k, res_int(k, h, lift(h, lv[h].representatives[a])));
      for (int a = 0; a < levels[k]->size(); ++a) {
        auto c = lift(k, lv[k].representatives[a]);
        tr[a] = project(h, tr_int(k, h, c, tables[k]));
        nm[a] = project(h, nm_int(k, h, c));
      }
      // the norm must not depend on the chosen lift
      for (int x = 0; x < full[k]->size(); ++x)
        require(project(h, nm_int(k, h, lift(k, x))) == nm[lv[k].projection[x]], ErrorCode::VerificationFailed,
                "Burnside norm does not descend to the quotient");
      t.res_tables[k * m + h] = std::move(res);
      t.tr_tables[k * m + h] = std::move(tr);
      t.nm_tables[k * m + h] = std::move(nm);
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h) {
      SubgroupId xh = g.conjugate(h, x);
      std::vector<int> c(levels[h]->size());
      for (int a = 0; a < levels[h]->size(); ++a) c[a] = project(xh, conj_int(x, h, lift(h, lv[h].representatives[a])));
      t.conj_tables[x * m + h] = std::move(c);
    }
  t.check_shape();
  return BurnsideFunctor{std::make_shared<const TambaraData>(std::move(t)), std::move(lv)};
}

FunctorPtr burnside_mod(const GroupPtr& group, int n) { return burnside_detail(group, n).functor; }

}  // namespace tambara
