#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace tambara {

/// A finite multi-sorted algebra: a carrier per sort plus operation tables.
/// Source and target of a morphism search must list the same operations in
/// the same order.
struct Algebra {
  struct Binary {
    int sort;
    std::vector<int> table;  // size n*n, values in the same sort
  };
  struct Unary {
    int from;
    int to;
    std::vector<int> table;
  };
  struct Constant {
    int sort;
    int value;
  };

  std::vector<int> sort_sizes;
  std::vector<Binary> binary;
  std::vector<Unary> unary;
  std::vector<Constant> constants;
  /// Index into `binary` of the additive and multiplicative operation of
  /// each sort, or -1.  Used only to prune candidates.
  std::vector<int> add_op;
  std::vector<int> mul_op;
};

enum class SearchStatus { Found, None, Timeout };

struct SearchOptions {
  bool injective = false;          // isomorphism search
  std::int64_t budget = 1000000;   // search nodes
  std::size_t limit = 1;           // solutions to collect; 0 = all
};

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::vector<std::vector<std::vector<int>>> solutions;  // per solution, per sort
  std::int64_t nodes = 0;
};

/// Backtracking search for structure-preserving maps source -> target.
/// Generators of the source are chosen greedily (rarest candidate count
/// first, lower sorts first); each choice is propagated through all
/// operations, with an undo trail on conflict.  The identity candidate is
/// tried first.  Exhausting the budget gives Timeout, never None.
SearchResult search_morphisms(const Algebra& source, const Algebra& target, const SearchOptions& options);

}  // namespace tambara
