#include "tambara/search.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace tambara {

namespace {

struct Signature {
  int add_order = 1;
  int pre_period = 0;
  int period = 1;
};

std::vector<Signature> signatures(const Algebra& a, int sort) {
  const int n = a.sort_sizes[sort];
  std::vector<Signature> sig(n);
  if (a.add_op[sort] >= 0) {
    const auto& t = a.binary[a.add_op[sort]].table;
    int zero = -1;
    for (int x = 0; x < n && zero < 0; ++x)
      if (t[x * n + x] == x) zero = x;
    for (int x = 0; x < n; ++x) {
      int k = 1;
      for (int y = x; y != zero && k <= n; y = t[y * n + x]) ++k;
      sig[x].add_order = k;
    }
  }
  if (a.mul_op[sort] >= 0) {
    const auto& t = a.binary[a.mul_op[sort]].table;
    std::vector<int> pos(n, 0);
    for (int x = 0; x < n; ++x) {
      std::vector<int> seen;
      int y = x;
      int k = 1;
      while (pos[y] == 0) {
        pos[y] = k++;
        seen.push_back(y);
        y = t[y * n + x];
      }
      sig[x].pre_period = pos[y] - 1;
      sig[x].period = k - pos[y];
      for (int v : seen) pos[v] = 0;
    }
  }
  return sig;
}

class Searcher {
 public:
  Searcher(const Algebra& s, const Algebra& t, const SearchOptions& o) : src_(s), tgt_(t), opt_(o) {}

  SearchResult run() {
    const int sorts = static_cast<int>(src_.sort_sizes.size());
    if (tgt_.sort_sizes.size() != src_.sort_sizes.size()) return result_;
    if (opt_.injective && tgt_.sort_sizes != src_.sort_sizes) return result_;
    img_.resize(sorts);
    pre_.resize(sorts);
    assigned_.resize(sorts);
    unary_from_.resize(sorts);
    binary_of_.resize(sorts);
    for (int s = 0; s < sorts; ++s) {
      img_[s].assign(src_.sort_sizes[s], -1);
      pre_[s].assign(tgt_.sort_sizes[s], -1);
    }
    for (std::size_t u = 0; u < src_.unary.size(); ++u) unary_from_[src_.unary[u].from].push_back(static_cast<int>(u));
    for (std::size_t b = 0; b < src_.binary.size(); ++b) binary_of_[src_.binary[b].sort].push_back(static_cast<int>(b));
    build_candidates();
    choose_generators();
    for (std::size_t c = 0; c < src_.constants.size(); ++c) {
      if (!assign(src_.constants[c].sort, src_.constants[c].value, tgt_.constants[c].value) || !propagate()) {
        result_.status = SearchStatus::None;
        return result_;
      }
    }
    try {
      recurse(0);
    } catch (const Stop&) {
    }
    result_.nodes = nodes_;
    if (timed_out_) {
      result_.status = SearchStatus::Timeout;
    } else {
      result_.status = result_.solutions.empty() ? SearchStatus::None : SearchStatus::Found;
    }
    return result_;
  }

 private:
  struct Stop {};

  void build_candidates() {
    const int sorts = static_cast<int>(src_.sort_sizes.size());
    candidates_.resize(sorts);
    for (int s = 0; s < sorts; ++s) {
      auto ss = signatures(src_, s);
      auto ts = signatures(tgt_, s);
      candidates_[s].resize(src_.sort_sizes[s]);
      for (int x = 0; x < src_.sort_sizes[s]; ++x) {
        auto& out = candidates_[s][x];
        if (x < tgt_.sort_sizes[s] && compatible(ss[x], ts[x])) out.push_back(x);
        for (int y = 0; y < tgt_.sort_sizes[s]; ++y)
          if (y != x && compatible(ss[x], ts[y])) out.push_back(y);
      }
    }
  }

  bool compatible(const Signature& a, const Signature& b) const {
    if (opt_.injective)
      return a.add_order == b.add_order && a.pre_period == b.pre_period && a.period == b.period;
    return a.add_order % b.add_order == 0 && b.pre_period <= a.pre_period && a.period % b.period == 0;
  }

  // Greedy generating set of the source: smallest candidate list first,
  // lower sorts first.
  void choose_generators() {
    const int sorts = static_cast<int>(src_.sort_sizes.size());
    std::vector<std::vector<char>> gen(sorts);
    std::vector<std::vector<int>> members(sorts);
    for (int s = 0; s < sorts; ++s) gen[s].assign(src_.sort_sizes[s], 0);
    std::vector<std::pair<int, int>> queue;
    auto add = [&](int s, int x) {
      if (gen[s][x]) return;
      gen[s][x] = 1;
      members[s].push_back(x);
      queue.emplace_back(s, x);
    };
    auto close = [&] {
      while (!queue.empty()) {
        auto [s, x] = queue.back();
        queue.pop_back();
        const int n = src_.sort_sizes[s];
        for (int b : binary_of_[s]) {
          const auto& t = src_.binary[b].table;
          for (std::size_t i = 0; i < members[s].size(); ++i) add(s, t[x * n + members[s][i]]);
        }
        for (int u : unary_from_[s]) add(src_.unary[u].to, src_.unary[u].table[x]);
      }
    };
    for (const auto& c : src_.constants) add(c.sort, c.value);
    close();
    for (int s = 0; s < sorts; ++s) {
      std::vector<int> order(src_.sort_sizes[s]);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return candidates_[s][a].size() < candidates_[s][b].size();
      });
      for (int x : order) {
        if (gen[s][x]) continue;
        generators_.emplace_back(s, x);
        add(s, x);
        close();
      }
    }
  }

  bool assign(int s, int x, int y) {
    if (img_[s][x] >= 0) return img_[s][x] == y;
    if (opt_.injective && pre_[s][y] >= 0) return false;
    img_[s][x] = y;
    if (opt_.injective) pre_[s][y] = x;
    assigned_[s].push_back(x);
    trail_.emplace_back(s, x);
    pending_.emplace_back(s, x);
    return true;
  }

  bool propagate() {
    while (!pending_.empty()) {
      auto [s, x] = pending_.back();
      pending_.pop_back();
      const int n = src_.sort_sizes[s];
      const int m = tgt_.sort_sizes[s];
      const int y = img_[s][x];
      for (int b : binary_of_[s]) {
        const auto& ts = src_.binary[b].table;
        const auto& tt = tgt_.binary[b].table;
        for (std::size_t i = 0; i < assigned_[s].size(); ++i) {
          int z = assigned_[s][i];
          if (!assign(s, ts[x * n + z], tt[y * m + img_[s][z]])) {
            pending_.clear();
            return false;
          }
        }
      }
      for (int u : unary_from_[s]) {
        const auto& us = src_.unary[u];
        if (!assign(us.to, us.table[x], tgt_.unary[u].table[y])) {
          pending_.clear();
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [s, x] = trail_.back();
      trail_.pop_back();
      if (opt_.injective) pre_[s][img_[s][x]] = -1;
      img_[s][x] = -1;
      assigned_[s].pop_back();
    }
  }

  void recurse(std::size_t i) {
    while (i < generators_.size() && img_[generators_[i].first][generators_[i].second] >= 0) ++i;
    if (i == generators_.size()) {
      result_.solutions.push_back(img_);
      if (opt_.limit != 0 && result_.solutions.size() >= opt_.limit) throw Stop{};
      return;
    }
    auto [s, x] = generators_[i];
    for (int y : candidates_[s][x]) {
      if (opt_.injective && pre_[s][y] >= 0) continue;
      if (++nodes_ > opt_.budget) {
        timed_out_ = true;
        throw Stop{};
      }
      std::size_t mark = trail_.size();
      if (assign(s, x, y) && propagate()) recurse(i + 1);
      pending_.clear();
      undo(mark);
    }
  }

  const Algebra& src_;
  const Algebra& tgt_;
  const SearchOptions& opt_;
  SearchResult result_;
  std::vector<std::vector<int>> img_;
  std::vector<std::vector<int>> pre_;
  std::vector<std::vector<int>> assigned_;
  std::vector<std::vector<int>> unary_from_;
  std::vector<std::vector<int>> binary_of_;
  std::vector<std::vector<std::vector<int>>> candidates_;
  std::vector<std::pair<int, int>> generators_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<std::pair<int, int>> pending_;
  std::int64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

SearchResult search_morphisms(const Algebra& source, const Algebra& target, const SearchOptions& options) {
  Searcher s(source, target, options);
  return s.run();
}

}  // namespace tambara
