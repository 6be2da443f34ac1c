#include "tambara/ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tambara/error.hpp"

namespace tambara {

RingPtr FiniteRing::from_flat(int size, std::vector<int> add, std::vector<int> mul, std::string label,
                              std::vector<std::string> element_labels) {
  require(size >= 1 && size <= kMaxSize, ErrorCode::InvalidInput, "ring size out of range");
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->size_ = size;
  r->add_.assign(add.begin(), add.end());
  r->mul_.assign(mul.begin(), mul.end());
  r->label_ = std::move(label);
  r->element_labels_ = std::move(element_labels);
  r->finish();
  return r;
}

void FiniteRing::finish() {
  const int n = size_;
  zero_ = -1;
  one_ = -1;
  for (int a = 0; a < n && zero_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = add(a, b) == b;
    if (ok) zero_ = a;
  }
  for (int a = 0; a < n && one_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = mul(a, b) == b;
    if (ok) one_ = a;
  }
  require(zero_ >= 0, ErrorCode::InvalidInput, "ring has no additive identity");
  require(one_ >= 0, ErrorCode::InvalidInput, "ring has no multiplicative identity");
  neg_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
  for (int a = 0; a < n; ++a) require(neg_[a] >= 0, ErrorCode::InvalidInput, "ring element has no negative");
}

RingPtr FiniteRing::from_tables(const std::vector<std::vector<int>>& add,
                                const std::vector<std::vector<int>>& mul, std::string label,
                                std::vector<std::string> element_labels) {
  const int n = static_cast<int>(add.size());
  require(n >= 1 && n <= kMaxSize, ErrorCode::InvalidInput, "ring size out of range");
  require(static_cast<int>(mul.size()) == n, ErrorCode::InvalidInput, "ring tables differ in size");
  require(element_labels.empty() || static_cast<int>(element_labels.size()) == n, ErrorCode::InvalidInput,
          "wrong number of element labels");
  std::vector<int> fa, fm;
  fa.reserve(n * n);
  fm.reserve(n * n);
  for (int a = 0; a < n; ++a) {
    require(static_cast<int>(add[a].size()) == n && static_cast<int>(mul[a].size()) == n,
            ErrorCode::InvalidInput, "ring table is not square");
    for (int b = 0; b < n; ++b) {
      require(add[a][b] >= 0 && add[a][b] < n && mul[a][b] >= 0 && mul[a][b] < n, ErrorCode::InvalidInput,
              "ring table entry out of range");
      fa.push_back(add[a][b]);
      fm.push_back(mul[a][b]);
    }
  }
  auto r = from_flat(n, std::move(fa), std::move(fm), std::move(label), std::move(element_labels));
  // Light's test: associativity only needs checking against generators.
  // The same generators then reduce distributivity, and with it
  // multiplicative associativity, to generator checks.
  std::vector<int> gens;
  std::vector<char> reached(n, 0);
  std::vector<int> members;
  auto absorb = [&](int x) {
    if (reached[x]) return;
    reached[x] = 1;
    members.push_back(x);
  };
  for (int g = 0; g < n; ++g) {
    if (reached[g]) continue;
    gens.push_back(g);
    absorb(g);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        absorb(r->add(members[i], members[j]));
        absorb(r->add(members[j], members[i]));
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      require(r->add(a, b) == r->add(b, a), ErrorCode::InvalidInput, "addition is not commutative");
      for (int g : gens)
        require(r->add(r->add(a, g), b) == r->add(a, r->add(g, b)), ErrorCode::InvalidInput,
                "addition is not associative");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      require(r->mul(a, b) == r->mul(b, a), ErrorCode::InvalidInput, "multiplication is not commutative");
      for (int g : gens)
        require(r->mul(a, r->add(b, g)) == r->add(r->mul(a, b), r->mul(a, g)), ErrorCode::InvalidInput,
                "multiplication does not distribute over addition");
    }
  for (int a : gens)
    for (int b : gens)
      for (int c : gens)
        require(r->mul(r->mul(a, b), c) == r->mul(a, r->mul(b, c)), ErrorCode::InvalidInput,
                "multiplication is not associative");
  return r;
}

RingPtr FiniteRing::zn(int n) {
  require(n >= 1 && n <= 4096, ErrorCode::InvalidInput, "Z/n needs 1 <= n <= 4096");
  std::vector<int> add(n * n), mul(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[a * n + b] = (a + b) % n;
      mul[a * n + b] = (a * b) % n;
    }
  return from_flat(n, std::move(add), std::move(mul), "Z/" + std::to_string(n));
}

namespace {

// Conway polynomials, low degree coefficient first, monic.
std::vector<int> conway_polynomial(int p, int k) {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 2}, {3, 6, 1}},       {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
  };
  auto it = table.find({p, k});
  require(it != table.end(), ErrorCode::InvalidInput,
          "F_q is supported for q = p^k with p in {2,3,5,7} and k <= 4");
  return it->second;
}

}  // namespace

RingPtr FiniteRing::fq(int q) {
  int p = 0;
  for (int c : {2, 3, 5, 7})
    if (q % c == 0) p = c;
  require(p != 0 && q >= 2, ErrorCode::InvalidInput, "F_q needs q a power of 2, 3, 5 or 7");
  int k = 0;
  for (int t = q; t > 1; t /= p) {
    require(t % p == 0, ErrorCode::InvalidInput, "F_q needs q a prime power");
    ++k;
  }
  if (k == 1) {
    auto z = zn(p);
    return from_flat(p, {z->add_.begin(), z->add_.end()}, {z->mul_.begin(), z->mul_.end()},
                     "F" + std::to_string(q));
  }
  const auto poly = conway_polynomial(p, k);
  auto digits = [&](int a) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
  };
  auto number = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = k - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };
  std::vector<int> add(q * q), mul(q * q);
  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      add[a * q + b] = number(s);
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int deg = 2 * k - 2; deg >= k; --deg) {
        int c = prod[deg];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) prod[deg - k + i] = ((prod[deg - k + i] - c * poly[i]) % p + p) % p;
      }
      prod.resize(k);
      mul[a * q + b] = number(prod);
    }
  }
  auto r = from_flat(q, std::move(add), std::move(mul), "F" + std::to_string(q));
  require(r->is_field(), ErrorCode::VerificationFailed, "Conway polynomial table is not a field");
  return r;
}

RingPtr FiniteRing::product(const std::vector<RingPtr>& factors, std::string label) {
  if (factors.empty()) return zero_ring();
  if (factors.size() == 1 && label.empty()) return factors.front();
  std::vector<int> radix;
  long long total = 1;
  for (const auto& f : factors) {
    radix.push_back(f->size());
    total *= f->size();
    require(total <= 4096, ErrorCode::UnsupportedGroup, "product ring is too large (over 4096 elements)");
  }
  ProductIndex idx(radix);
  const int n = static_cast<int>(total);
  std::vector<std::vector<int>> parts(n);
  for (int a = 0; a < n; ++a) parts[a] = idx.decode(a);
  std::vector<int> add(static_cast<std::size_t>(n) * n), mul(static_cast<std::size_t>(n) * n);
  std::vector<int> tmp(factors.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < factors.size(); ++i) tmp[i] = factors[i]->add(parts[a][i], parts[b][i]);
      add[static_cast<std::size_t>(a) * n + b] = idx.encode(tmp);
      for (std::size_t i = 0; i < factors.size(); ++i) tmp[i] = factors[i]->mul(parts[a][i], parts[b][i]);
      mul[static_cast<std::size_t>(a) * n + b] = idx.encode(tmp);
    }
  if (label.empty()) {
    for (std::size_t i = 0; i < factors.size(); ++i) label += (i ? "x" : "") + factors[i]->label();
  }
  auto r = from_flat(n, std::move(add), std::move(mul), std::move(label));
  const_cast<FiniteRing&>(*r).factors_ = factors;
  return r;
}

RingPtr FiniteRing::zero_ring() { return from_flat(1, {0}, {0}, "0"); }

int FiniteRing::times(int a, long long k) const {
  int acc = zero_;
  int base = a;
  if (k < 0) {
    base = neg(a);
    k = -k;
  }
  while (k > 0) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

int FiniteRing::pow(int a, long long k) const {
  int acc = one_;
  int base = a;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

int FiniteRing::additive_order(int a) const {
  int k = 1;
  for (int x = a; x != zero_; x = add(x, a)) ++k;
  return k;
}

bool FiniteRing::is_unit(int a) const {
  for (int b = 0; b < size_; ++b)
    if (mul(a, b) == one_) return true;
  return false;
}

bool FiniteRing::is_field() const {
  if (size_ < 2) return false;
  for (int a = 0; a < size_; ++a)
    if (a != zero_ && !is_unit(a)) return false;
  return true;
}

std::vector<std::vector<int>> FiniteRing::add_table() const {
  std::vector<std::vector<int>> t(size_, std::vector<int>(size_));
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) t[a][b] = add(a, b);
  return t;
}

std::vector<std::vector<int>> FiniteRing::mul_table() const {
  std::vector<std::vector<int>> t(size_, std::vector<int>(size_));
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) t[a][b] = mul(a, b);
  return t;
}

long long ProductIndex::total() const {
  long long t = 1;
  for (int r : radix) t *= r;
  return t;
}

int ProductIndex::encode(std::span<const int> parts) const {
  int idx = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) idx = idx * radix[i] + parts[i];
  return idx;
}

std::vector<int> ProductIndex::decode(int index) const {
  std::vector<int> parts(radix.size());
  for (std::size_t i = radix.size(); i > 0; --i) {
    parts[i - 1] = index % radix[i - 1];
    index /= radix[i - 1];
  }
  return parts;
}

bool RingHom::is_homomorphism() const {
  const int n = source->size();
  if (static_cast<int>(images.size()) != n) return false;
  if (images[source->one()] != target->one() || images[source->zero()] != target->zero()) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (images[source->add(a, b)] != target->add(images[a], images[b])) return false;
      if (images[source->mul(a, b)] != target->mul(images[a], images[b])) return false;
    }
  return true;
}

bool RingHom::is_bijective() const {
  if (source->size() != target->size()) return false;
  std::vector<bool> hit(target->size(), false);
  for (int v : images) {
    if (v < 0 || v >= target->size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

Subring make_subring(const FiniteRing& r, std::vector<int> elements, int unit) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subring s;
  s.index_of.assign(r.size(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) s.index_of[elements[i]] = static_cast<int>(i);
  require(s.index_of[r.zero()] >= 0 && s.index_of[unit] >= 0, ErrorCode::InvalidInput,
          "subring must contain zero and its unit");
  const int k = static_cast<int>(elements.size());
  std::vector<int> add(k * k), mul(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      int sa = s.index_of[r.add(elements[a], elements[b])];
      int sm = s.index_of[r.mul(elements[a], elements[b])];
      require(sa >= 0 && sm >= 0, ErrorCode::InvalidInput, "element set is not closed under the ring operations");
      add[a * k + b] = sa;
      mul[a * k + b] = sm;
    }
  std::vector<std::string> labels;
  if (!r.element_labels().empty())
    for (int e : elements) labels.push_back(r.element_labels()[e]);
  s.ring = FiniteRing::from_flat(k, std::move(add), std::move(mul), r.label(), std::move(labels));
  require(s.ring->one() == s.index_of[unit], ErrorCode::InvalidInput, "subring unit is not a unit");
  s.embedding = std::move(elements);
  return s;
}

Subring principal_subring(const FiniteRing& r, int e) {
  require(r.mul(e, e) == e, ErrorCode::NotIdempotent, "principal subring needs an idempotent");
  std::vector<int> elems;
  std::vector<bool> seen(r.size(), false);
  for (int a = 0; a < r.size(); ++a) {
    int x = r.mul(e, a);
    if (!seen[x]) {
      seen[x] = true;
      elems.push_back(x);
    }
  }
  return make_subring(r, std::move(elems), e);
}

std::vector<int> ideal_generated(const FiniteRing& r, std::span<const int> generators) {
  std::vector<bool> prod(r.size(), false);
  for (int g : generators)
    for (int a = 0; a < r.size(); ++a) prod[r.mul(g, a)] = true;
  std::vector<int> products;
  for (int x = 0; x < r.size(); ++x)
    if (prod[x] && x != r.zero()) products.push_back(x);
  std::vector<bool> in(r.size(), false);
  std::vector<int> members{r.zero()};
  in[r.zero()] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int p : products) {
      int s = r.add(members[i], p);
      if (!in[s]) {
        in[s] = true;
        members.push_back(s);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

Quotient quotient(const FiniteRing& r, const std::vector<int>& ideal) {
  Quotient q;
  q.projection.assign(r.size(), -1);
  for (int x = 0; x < r.size(); ++x) {
    if (q.projection[x] >= 0) continue;
    int cls = static_cast<int>(q.representatives.size());
    q.representatives.push_back(x);
    for (int i : ideal) q.projection[r.add(x, i)] = cls;
  }
  const int k = static_cast<int>(q.representatives.size());
  std::vector<int> add(k * k), mul(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      add[a * k + b] = q.projection[r.add(q.representatives[a], q.representatives[b])];
      mul[a * k + b] = q.projection[r.mul(q.representatives[a], q.representatives[b])];
    }
  q.ring = FiniteRing::from_flat(k, std::move(add), std::move(mul), r.label() + "/I");
  return q;
}

void GRing::validate() const {
  const int n = ring->size();
  const int order = group->order();
  require(static_cast<int>(action.size()) == order * n, ErrorCode::InvalidInput,
          "G-ring action table has the wrong shape");
  for (int x = 0; x < n; ++x) require(act(0, x) == x, ErrorCode::InvalidInput, "identity must act trivially");
  for (int g = 0; g < order; ++g) {
    RingHom h{ring, ring, std::vector<int>(action.begin() + g * n, action.begin() + (g + 1) * n)};
    require(h.is_bijective() && h.is_homomorphism(), ErrorCode::InvalidInput,
            "group element does not act by a ring automorphism");
    for (int k = 0; k < order; ++k)
      for (int x = 0; x < n; ++x)
        require(act(group->mul(g, k), x) == act(g, act(k, x)), ErrorCode::InvalidInput,
                "ring action is not a group action");
  }
}

GRing GRing::trivial(GroupPtr group, RingPtr ring) {
  const int n = ring->size();
  std::vector<int> action(group->order() * n);
  for (int g = 0; g < group->order(); ++g)
    for (int x = 0; x < n; ++x) action[g * n + x] = x;
  return GRing{std::move(group), std::move(ring), std::move(action)};
}

GRing GRing::galois(int q, GroupPtr cyclic) {
  auto field = FiniteRing::fq(q);
  int p = 0;
  for (int c : {2, 3, 5, 7})
    if (q % c == 0) p = c;
  int k = 0;
  for (int t = q; t > 1; t /= p) ++k;
  const auto& g = *cyclic;
  require(g.order() == k, ErrorCode::InvalidInput, "Galois action needs a cyclic group of order log_p q");
  GroupElement gen = -1;
  for (int x = 0; x < g.order() && gen < 0; ++x)
    if (g.element_order(x) == k) gen = x;
  require(gen >= 0, ErrorCode::InvalidInput, "Galois action needs a cyclic group");
  std::vector<int> exponent(k, -1);
  GroupElement x = 0;
  for (int i = 0; i < k; ++i, x = g.mul(x, gen)) exponent[x] = i;
  std::vector<int> action(k * q);
  for (int e = 0; e < k; ++e) {
    long long power = 1;
    for (int i = 0; i < exponent[e]; ++i) power *= p;
    for (int a = 0; a < q; ++a) action[e * q + a] = field->pow(a, power);
  }
  GRing r{cyclic, field, std::move(action)};
  r.validate();
  return r;
}

std::vector<int> GRing::fixed_elements(SubgroupId h) const {
  std::vector<int> out;
  const auto& sub = group->subgroup(h);
  for (int x = 0; x < ring->size(); ++x) {
    bool fixed = std::all_of(sub.elements.begin(), sub.elements.end(),
                             [&](GroupElement g) { return act(g, x) == x; });
    if (fixed) out.push_back(x);
  }
  return out;
}

std::vector<int> idempotents(const FiniteRing& r) {
  std::vector<int> out;
  for (int x = 0; x < r.size(); ++x)
    if (r.mul(x, x) == x) out.push_back(x);
  return out;
}

std::vector<int> primitive_idempotents(const FiniteRing& r) {
  require(!r.is_zero_ring(), ErrorCode::ZeroRing, "the zero ring has no primitive idempotents");
  const auto all = idempotents(r);
  std::vector<int> out;
  for (int e : all) {
    if (e == r.zero()) continue;
    bool minimal = std::none_of(all.begin(), all.end(), [&](int f) {
      return f != r.zero() && f != e && r.mul(e, f) == f;
    });
    if (minimal) out.push_back(e);
  }
  return out;
}

IdempotentReport classify_idempotent(const GRing& r, int d) {
  const auto& ring = *r.ring;
  require(ring.mul(d, d) == d, ErrorCode::NotIdempotent, "element is not idempotent");
  IdempotentReport rep;
  rep.element = d;
  std::vector<GroupElement> iso;
  for (int g = 0; g < r.group->order(); ++g)
    if (r.act(g, d) == d) iso.push_back(g);
  rep.isotropy = r.group->find_subgroup(iso);
  rep.orthogonal_orbit = true;
  for (int g = 0; g < r.group->order(); ++g)
    if (r.act(g, d) != d && ring.mul(d, r.act(g, d)) != ring.zero()) rep.orthogonal_orbit = false;
  if (rep.orthogonal_orbit) rep.type = rep.isotropy;
  return rep;
}

bool is_lambda_clarified(const GRing& r, const UpwardClosedSet& lambda) {
  for (int d : idempotents(*r.ring)) {
    if (d == r.ring->zero()) continue;
    auto rep = classify_idempotent(r, d);
    if (rep.type && !lambda.contains(*rep.type)) return false;
  }
  return true;
}

bool is_clarified(const GRing& r) {
  UpwardClosedSet top{r.group, std::vector<bool>(r.group->subgroup_count(), false)};
  top.members[r.group->whole()] = true;
  return is_lambda_clarified(r, top);
}

GRing coinduce_gring(const GroupPtr& group, SubgroupId h, const GRing& s) {
  const auto& g = *group;
  const auto& view = g.view(h);
  require(s.group->same_table(*view.group), ErrorCode::GroupMismatch,
          "coinduction needs a ring with an action of the subgroup");
  const int m = g.coset_count(h);
  auto ring = FiniteRing::product(std::vector<RingPtr>(m, s.ring),
                                  m == 1 ? s.ring->label() : "Coind(" + s.ring->label() + ")");
  ProductIndex idx(std::vector<int>(m, s.ring->size()));
  const int n = ring->size();
  std::vector<int> action(g.order() * n);
  for (int gamma = 0; gamma < g.order(); ++gamma) {
    GroupElement gi = g.inv(gamma);
    std::vector<int> source(m), twist(m);
    for (int c = 0; c < m; ++c) {
      GroupElement rc = g.coset_representative(h, c);
      int cp = g.coset_of(h, g.mul(gi, rc));
      source[c] = cp;
      GroupElement tw = g.mul(g.mul(g.inv(rc), gamma), g.coset_representative(h, cp));
      twist[c] = view.from_parent[tw];
    }
    for (int x = 0; x < n; ++x) {
      auto f = idx.decode(x);
      std::vector<int> out(m);
      for (int c = 0; c < m; ++c) out[c] = s.act(twist[c], f[source[c]]);
      action[gamma * n + x] = idx.encode(out);
    }
  }
  return GRing{group, ring, std::move(action)};
}

GRing gring_restrict(SubgroupId k, const GRing& r) {
  const auto& view = r.group->view(k);
  const int n = r.ring->size();
  std::vector<int> action(view.group->order() * n);
  for (int i = 0; i < view.group->order(); ++i)
    for (int x = 0; x < n; ++x) action[i * n + x] = r.act(view.to_parent[i], x);
  return GRing{view.group, r.ring, std::move(action)};
}

GRing gring_product(const std::vector<GRing>& parts) {
  require(!parts.empty(), ErrorCode::InvalidInput, "product of no G-rings");
  GroupPtr group = parts.front().group;
  std::vector<RingPtr> rings;
  std::vector<int> radix;
  for (const auto& p : parts) {
    require(p.group->same_table(*group), ErrorCode::GroupMismatch, "G-ring product over different groups");
    rings.push_back(p.ring);
    radix.push_back(p.ring->size());
  }
  auto ring = FiniteRing::product(rings);
  ProductIndex idx(radix);
  const int n = ring->size();
  std::vector<int> action(group->order() * n);
  for (int g = 0; g < group->order(); ++g)
    for (int x = 0; x < n; ++x) {
      auto f = idx.decode(x);
      for (std::size_t i = 0; i < parts.size(); ++i) f[i] = parts[i].act(g, f[i]);
      action[g * n + x] = idx.encode(f);
    }
  return GRing{group, ring, std::move(action)};
}

GRing gring_product(const GRing& a, const GRing& b) { return gring_product(std::vector<GRing>{a, b}); }

bool is_gring_homomorphism(const GRing& a, const GRing& b, const std::vector<int>& map) {
  RingHom h{a.ring, b.ring, map};
  if (!h.is_homomorphism()) return false;
  if (!a.group->same_table(*b.group)) return false;
  for (int g = 0; g < a.group->order(); ++g)
    for (int x = 0; x < a.ring->size(); ++x)
      if (map[a.act(g, x)] != b.act(g, map[x])) return false;
  return true;
}

bool is_gring_isomorphism(const GRing& a, const GRing& b, const std::vector<int>& map) {
  RingHom h{a.ring, b.ring, map};
  return h.is_bijective() && is_gring_homomorphism(a, b, map);
}

GRingDecomposition decompose_gring(const GRing& r) {
  const auto& ring = *r.ring;
  const auto& g = *r.group;
  require(!ring.is_zero_ring(), ErrorCode::ZeroRing, "cannot decompose the zero ring");
  const auto prims = primitive_idempotents(ring);
  std::vector<bool> done(ring.size(), false);
  std::vector<std::vector<int>> orbits;
  for (int e : prims) {
    if (done[e]) continue;
    std::vector<int> orbit;
    for (int x = 0; x < g.order(); ++x) {
      int y = r.act(x, e);
      if (!done[y]) {
        done[y] = true;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  auto stabilizer = [&](int e) {
    std::vector<GroupElement> st;
    for (int x = 0; x < g.order(); ++x)
      if (r.act(x, e) == e) st.push_back(x);
    return g.find_subgroup(st);
  };
  // class representative -> orbits, in canonical orbit order
  std::map<SubgroupId, std::vector<int>> by_class;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    by_class[g.class_representative(stabilizer(orbits[i].front()))].push_back(static_cast<int>(i));

  GRingDecomposition out;
  std::vector<GRing> coinduced;
  for (const auto& [h, members] : by_class) {
    GRingFactor f;
    f.subgroup = h;
    int d = ring.zero();
    int total = ring.zero();
    for (int oi : members) {
      const auto& orbit = orbits[oi];
      // the largest member: coinduce_gring puts the identity coset first
      auto chosen = std::find_if(orbit.rbegin(), orbit.rend(), [&](int e) { return stabilizer(e) == h; });
      d = ring.add(d, *chosen);
      for (int e : orbit) total = ring.add(total, e);
    }
    f.idempotent = d;
    f.class_idempotent = total;
    auto sub = principal_subring(ring, d);
    const auto& view = g.view(h);
    const int k = sub.ring->size();
    std::vector<int> action(view.group->order() * k);
    for (int i = 0; i < view.group->order(); ++i)
      for (int x = 0; x < k; ++x) action[i * k + x] = sub.index_of[r.act(view.to_parent[i], sub.embedding[x])];
    f.ring = GRing{view.group, sub.ring, std::move(action)};
    f.embedding = sub.embedding;
    coinduced.push_back(coinduce_gring(r.group, h, f.ring));
    out.factors.push_back(std::move(f));
  }
  out.reassembled = gring_product(coinduced);
  std::vector<int> radix;
  for (const auto& c : coinduced) radix.push_back(c.ring->size());
  ProductIndex outer(radix);
  out.witness.assign(out.reassembled.ring->size(), 0);
  for (int x = 0; x < out.reassembled.ring->size(); ++x) {
    auto parts = outer.decode(x);
    int acc = ring.zero();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& f = out.factors[i];
      const int m = g.coset_count(f.subgroup);
      ProductIndex inner(std::vector<int>(m, f.ring.ring->size()));
      auto fun = inner.decode(parts[i]);
      for (int c = 0; c < m; ++c)
        acc = ring.add(acc, r.act(g.coset_representative(f.subgroup, c), f.embedding[fun[c]]));
    }
    out.witness[x] = acc;
  }
  require(is_gring_isomorphism(out.reassembled, r, out.witness), ErrorCode::VerificationFailed,
          "reassembled G-ring does not map isomorphically onto the input");
  return out;
}

}  // namespace tambara
