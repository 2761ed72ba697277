#pragma once

#include <cstdint>
#include <vector>

#include "locc/prob_vector.hpp"

namespace locc {

// Spectrum of an n-copy state, compressed to distinct values with
// multiplicities, both held as log2 so that desk-scale n stays in range.
struct ProductSpectrum {
  struct Atom {
    double log2_value = 0.0;
    double log2_multiplicity = 0.0;
  };
  std::vector<Atom> atoms;
  int n_copies = 1;

  // sum over atoms of multiplicity * value (should be 1).
  double total_mass() const;
};

// Atoms surviving a typical-set window, renormalized by 1/(1 - epsilon).
struct TypicalTruncation {
  ProductSpectrum kept;
  double epsilon = 0.0;
  double delta = 0.0;
};

struct EprCount {
  std::int64_t m = 0;
  double epsilon = 0.0;
};

// Enumerates the spectrum of p^(x)n over exponent multisets; the number of
// distinct atoms is C(n+r-1, r-1) and must stay below atom_cap.
ProductSpectrum n_copy_spectrum(const ProbVector& p, int n,
                                std::size_t atom_cap = 1000000);

// Keeps atoms with |(-log2 value)/n - entropy| <= delta.
TypicalTruncation truncate_typical(const ProductSpectrum& s, double entropy,
                                   double delta);

// EPR pairs sufficient to form the truncated n-copy state: m rounds the
// typical-set size up, so the uniform 2^-m spectrum is majorized by the kept
// spectrum.
EprCount formation_epr_count(const ProbVector& phi_spectrum, int n,
                             double delta, std::size_t atom_cap = 1000000);

// EPR pairs distillable from the truncated n-copy state: m rounds down from
// the largest kept value, so the kept spectrum is majorized by the uniform
// 2^-m spectrum.
EprCount distillation_epr_count(const ProbVector& phi_spectrum, int n,
                                double delta, std::size_t atom_cap = 1000000);

// Expands a compressed spectrum into an explicit ProbVector (testing aid;
// total multiplicity must be small).
ProbVector expand_spectrum(const ProductSpectrum& s,
                           std::size_t max_terms = 100000);

}  // namespace locc
