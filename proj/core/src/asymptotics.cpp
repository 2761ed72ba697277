#include "locc/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "locc/errors.hpp"

namespace locc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// log2 of a sum given log2 of the summands.
double log2_sum(const std::vector<double>& log2_terms) {
  if (log2_terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(log2_terms.begin(), log2_terms.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double t : log2_terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

double log2_binomial(double n, double k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
          std::lgamma(n - k + 1.0)) /
         kLn2;
}

}  // namespace

double ProductSpectrum::total_mass() const {
  std::vector<double> terms;
  terms.reserve(atoms.size());
  for (const Atom& a : atoms) terms.push_back(a.log2_value + a.log2_multiplicity);
  return std::exp2(log2_sum(terms));
}

ProductSpectrum n_copy_spectrum(const ProbVector& p, int n,
                                std::size_t atom_cap) {
  if (n < 1) throw InvalidParameter("n_copy_spectrum requires n >= 1");
  std::vector<double> support;
  for (double v : p.entries()) {
    if (v > 0.0) support.push_back(v);
  }
  const std::size_t r = support.size();
  if (r == 0) throw InvalidVector("spectrum has empty support");

  // Distinct atoms: compositions of n into r parts, C(n+r-1, r-1).
  const double log2_atoms =
      log2_binomial(static_cast<double>(n) + r - 1.0, r - 1.0);
  if (log2_atoms > std::log2(static_cast<double>(atom_cap)) + 1e-9) {
    throw TooLarge("n-copy spectrum exceeds the atom cap");
  }

  std::vector<double> log2_p(r);
  for (std::size_t i = 0; i < r; ++i) log2_p[i] = std::log2(support[i]);
  const double lgamma_n1 = std::lgamma(static_cast<double>(n) + 1.0);

  ProductSpectrum spec;
  spec.n_copies = n;
  std::vector<int> exponents(r, 0);
  std::function<void(std::size_t, int)> fill = [&](std::size_t idx,
                                                   int remaining) {
    if (idx + 1 == r) {
      exponents[idx] = remaining;
      double lv = 0.0;
      double lgamma_ks = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        lv += exponents[i] * log2_p[i];
        lgamma_ks += std::lgamma(exponents[i] + 1.0);
      }
      spec.atoms.push_back({lv, (lgamma_n1 - lgamma_ks) / kLn2});
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      exponents[idx] = k;
      fill(idx + 1, remaining - k);
    }
  };
  fill(0, n);
  return spec;
}

TypicalTruncation truncate_typical(const ProductSpectrum& s, double entropy,
                                   double delta) {
  if (delta < 0.0) throw InvalidParameter("delta must be > 0");
  TypicalTruncation trunc;
  trunc.delta = delta;
  trunc.kept.n_copies = s.n_copies;

  std::vector<double> dropped_mass;
  for (const ProductSpectrum::Atom& a : s.atoms) {
    const double rate = -a.log2_value / s.n_copies;
    if (std::abs(rate - entropy) <= delta + 1e-12) {
      trunc.kept.atoms.push_back(a);
    } else {
      dropped_mass.push_back(a.log2_value + a.log2_multiplicity);
    }
  }
  if (trunc.kept.atoms.empty()) {
    throw EmptyTypicalSet("no atoms fall inside the typical window");
  }
  trunc.epsilon =
      dropped_mass.empty() ? 0.0 : std::exp2(log2_sum(dropped_mass));
  const double log2_renorm = std::log2(1.0 - trunc.epsilon);
  for (auto& a : trunc.kept.atoms) a.log2_value -= log2_renorm;
  return trunc;
}

EprCount formation_epr_count(const ProbVector& phi_spectrum, int n,
                             double delta, std::size_t atom_cap) {
  const ProductSpectrum spec = n_copy_spectrum(phi_spectrum, n, atom_cap);
  double entropy = 0.0;
  for (double v : phi_spectrum.entries()) {
    if (v > 0.0) entropy -= v * std::log2(v);
  }
  const TypicalTruncation trunc = truncate_typical(spec, entropy, delta);

  std::vector<double> counts;
  for (const auto& a : trunc.kept.atoms) counts.push_back(a.log2_multiplicity);
  const double log2_count = log2_sum(counts);
  // Round up: 2^m basis states must cover the typical set, which makes the
  // uniform 2^-m vector majorized by the kept spectrum.
  const auto m =
      static_cast<std::int64_t>(std::ceil(log2_count - 1e-9));
  return {std::max<std::int64_t>(m, 0), trunc.epsilon};
}

EprCount distillation_epr_count(const ProbVector& phi_spectrum, int n,
                                double delta, std::size_t atom_cap) {
  const ProductSpectrum spec = n_copy_spectrum(phi_spectrum, n, atom_cap);
  double entropy = 0.0;
  for (double v : phi_spectrum.entries()) {
    if (v > 0.0) entropy -= v * std::log2(v);
  }
  const TypicalTruncation trunc = truncate_typical(spec, entropy, delta);

  double max_log2_value = -std::numeric_limits<double>::infinity();
  for (const auto& a : trunc.kept.atoms) {
    max_log2_value = std::max(max_log2_value, a.log2_value);
  }
  // Round down: every kept value must stay below 2^-m, which makes the kept
  // spectrum majorized by the uniform 2^-m vector.
  const auto m =
      static_cast<std::int64_t>(std::floor(-max_log2_value + 1e-9));
  return {std::max<std::int64_t>(m, 0), trunc.epsilon};
}

ProbVector expand_spectrum(const ProductSpectrum& s, std::size_t max_terms) {
  std::vector<double> values;
  for (const auto& a : s.atoms) {
    const double mult = std::exp2(a.log2_multiplicity);
    const auto count = static_cast<std::size_t>(std::llround(mult));
    if (count == 0 || values.size() + count > max_terms) {
      throw TooLarge("expanded spectrum exceeds the term limit");
    }
    values.insert(values.end(), count, std::exp2(a.log2_value));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  for (double& v : values) v /= sum;
  return ProbVector(std::move(values));
}

}  // namespace locc
