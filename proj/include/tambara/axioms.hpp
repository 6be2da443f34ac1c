#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tambara/functor.hpp"

namespace tambara {

enum class AxiomFamily {
  Structure,        // ring maps, additivity, multiplicativity, functoriality
  Conjugation,      // c_h = id on level(H), composition, intertwining
  Mackey,           // res after tr double coset formula
  NormDoubleCoset,  // res after nm double coset formula
  Frobenius,        // tr(res(y) x) = y tr(x)
  Exponential,      // N_f T_p = T_q N_f' R_e on exponential diagrams
};

constexpr int kAxiomFamilies = 6;
const char* to_string(AxiomFamily f);

struct AxiomConfig {
  int fiber_bound = 2;
  int section_cap = kDefaultSectionCap;
  /// Elements of R(A) are enumerated exhaustively up to this many, and
  /// sampled with a fixed seed beyond it.
  std::int64_t exhaustive_cap = 1 << 18;
  int samples = 4096;
  int threads = 1;
};

struct AxiomFailure {
  AxiomFamily family;
  std::string message;  // names the subgroups or diagram and the element
};

struct AxiomReport {
  std::vector<AxiomFailure> failures;  // first failure of each family
  std::vector<bool> checked;           // per family; norm families are skipped without norms
  std::int64_t diagrams = 0;           // exponential diagrams examined

  bool ok() const { return failures.empty(); }
  bool failed(AxiomFamily f) const;
  std::string summary() const;
};

AxiomReport check_axioms(const TambaraData& t, const AxiomConfig& config = {});

/// TAMBARA_THREADS, clamped to at least 1.
int default_threads();

}  // namespace tambara
