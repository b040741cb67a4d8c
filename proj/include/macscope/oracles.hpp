#ifndef MACSCOPE_ORACLES_HPP
#define MACSCOPE_ORACLES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "macscope/census.hpp"
#include "macscope/structure.hpp"

namespace macscope {

/// |{x in V : beta(x, v_i) = a_i, i <= m}| = q^(dimV - m) for linearly
/// independent v_1..v_m.
Int bilinear_fiber_count(std::uint32_t q, std::uint32_t dim_v, std::uint32_t m);

struct FiberInstance {
  bool independent = false;
  std::uint64_t brute = 0;
  Int formula;  // meaningful iff independent
};

/// Brute-force fiber count for one parameter tuple on a symplectic
/// structure; reports actual counts whether or not the vectors are
/// independent.
FiberInstance bilinear_fiber_instance(const FiniteStructure& vs,
                                      const std::vector<Elem>& vectors,
                                      const std::vector<Elem>& rhs);

struct FiberCheckReport {
  std::uint32_t q = 0;
  std::uint32_t dim_v = 0;
  std::uint32_t m = 0;
  bool exhaustive = true;
  std::uint64_t tuples_checked = 0;
  std::uint64_t dependent_skipped = 0;
  std::uint64_t mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

/// Cross-checks the fiber formula against brute force over every linearly
/// independent tuple and right-hand side; seeded sampling above the budget.
FiberCheckReport bilinear_fiber_check(const FiniteStructure& vs,
                                      std::uint32_t m,
                                      std::uint64_t tuple_budget = 1000000,
                                      std::uint64_t samples = 20000);

/// Homocyclic count template: sum of c_ij * p^(m*(i*n+j)); rejects any
/// c_ij != 0 with i*n + j < 0.
Int sdk_eval(const std::map<std::pair<int, int>, Int>& c, const Int& p,
             std::uint32_t m, std::uint32_t n);

/// Right side of the Paley inequality, for reporting only (the check itself
/// compares exactly).
double paley_bound(std::uint32_t q, std::uint32_t m);

/// Exact test of |v - q/2^m| <= (m-2+2^(1-m))/2 * sqrt(q) + m/2, radical
/// eliminated by squaring.
bool paley_inequality_holds(std::uint64_t v, std::uint32_t q, std::uint32_t m);

struct PaleyCheckReport {
  std::uint32_t q = 0;
  std::uint32_t m_max = 0;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double min_slack = 0.0;  // tightest margin seen
  double max_slack = 0.0;
  bool ok() const { return violations == 0; }
};

/// Iterates every disjoint (U, W) with 1 <= |U u W| <= m_max over the Paley
/// graph, brute-counts v(U, W) and verifies the inequality.
PaleyCheckReport paley_check(std::uint32_t q, std::uint32_t m_max);

/// |C(A_r)| = q^(r^2 + (n-r)^2).
Int gl_centralizer_size(std::uint32_t n, std::uint32_t q, std::uint32_t r);

/// Brute-force |{X : [A_r, X] = 0}| over a make_gl structure.
std::uint64_t gl_centralizer_bruteforce(const FiniteStructure& gl,
                                        std::uint32_t r);

struct DlogOrderReport {
  std::uint32_t q = 0;
  std::uint32_t base = 0;
  std::vector<std::vector<bool>> less;  // q x q, the induced relation
  bool verified = false;                // equals numeric order on residues
};

/// Builds the discrete-log definable order: oplus via log_a, Delta, and the
/// formula "exists c (Delta(a,c) & !Delta(b,c))", with 0 prepended.
DlogOrderReport dlog_order(std::uint32_t q, std::uint32_t a);

std::vector<std::uint32_t> primitive_roots(std::uint32_t q);

struct VsDemoEntry {
  std::string formula;
  std::string object_vars;
  std::string fitted;   // per class: "h1=..., h2=..."
  bool exact = false;
};

struct VsDemoReport {
  std::vector<std::string> structures;
  std::vector<VsDemoEntry> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (!e.exact) return false;
    return true;
  }
};

/// Censuses a small curated formula set over (F, V1, V2) families and fits
/// exact polynomials in (q, |V1|, |V2|).
VsDemoReport vs_product_count_demo(const std::vector<std::uint32_t>& qs,
                                   const std::vector<std::uint32_t>& dims);

}  // namespace macscope

#endif
