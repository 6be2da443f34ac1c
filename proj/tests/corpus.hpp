#pragma once

#include <string>
#include <vector>

#include "tambara/axioms.hpp"
#include "tambara/burnside.hpp"
#include "tambara/functor.hpp"

namespace corpus {

using namespace tambara;

struct NamedGRing {
  std::string name;
  GRing ring;
};

struct NamedFunctor {
  std::string name;
  FunctorPtr functor;
};

/// Coind_H(ell) with ell clarified, over `group`.
struct Coinduced {
  std::string name;
  GroupPtr group;
  SubgroupId h;
  FunctorPtr ell;
  FunctorPtr functor;
};

GroupPtr c2();
GroupPtr c3();
GroupPtr c4();
GroupPtr v4();
GroupPtr s3();

std::vector<NamedGRing> grings();
std::vector<NamedFunctor> fixed_point_functors();
/// burnside_mod for C2, C3, C4 and N in {2, 3, 4, 9}
std::vector<NamedFunctor> burnside_functors();
std::vector<NamedFunctor> coinduced_functors();
std::vector<NamedFunctor> products();
std::vector<NamedFunctor> restrictions();
/// Every Tambara functor above.
std::vector<NamedFunctor> tambara_functors();

/// A few clarified Tambara functors over view(h).group.
std::vector<NamedFunctor> clarified_functors(const GroupPtr& group, SubgroupId h);
/// Tambara functors over view(h).group used for the Mackey decomposition.
std::vector<NamedFunctor> h_functors(const GroupPtr& group, SubgroupId h);
std::vector<Coinduced> coinductions();

/// Green functors Coind_e(FP(S)) with norms dropped.
std::vector<NamedFunctor> green_coinduced();

/// A functor with one table altered so that `family` fails.
struct Mutation {
  std::string name;
  AxiomFamily family;
  FunctorPtr functor;
};
std::vector<Mutation> mutations();

/// Same data with has_norms cleared.
FunctorPtr forget_norms(const FunctorPtr& t);

}  // namespace corpus
