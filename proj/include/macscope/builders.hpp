#ifndef MACSCOPE_BUILDERS_HPP
#define MACSCOPE_BUILDERS_HPP

#include <cstdint>
#include <vector>

#include "macscope/structure.hpp"

namespace macscope {

/// Arithmetic of GF(p^e) on elements encoded as base-p digit strings of the
/// residue polynomial. The modulus is the least monic irreducible of degree e
/// (coefficient tuples ordered as base-p numbers), so identical q always
/// yields the identical field.
class GaloisField {
 public:
  explicit GaloisField(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return e_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  static bool is_prime_power(std::uint32_t q, std::uint32_t* p_out = nullptr,
                             std::uint32_t* e_out = nullptr);

 private:
  std::uint32_t q_, p_, e_;
  std::vector<std::uint32_t> modulus_;  // monic, degree e, little-endian
};

FiniteStructure make_field(std::uint32_t q);
FiniteStructure make_paley(std::uint32_t q);
FiniteStructure make_vs(std::uint32_t q, std::uint32_t n, bool with_symplectic);
/// (F, V1, ..., Vd) with per-space group structure and scalar maps; function
/// and constant names carry the 1-based space index (vadd1, smul1, zerov1).
FiniteStructure make_vs_family(std::uint32_t q,
                               const std::vector<std::uint32_t>& dims);

struct HomocyclicFactor {
  std::uint64_t p;
  std::uint32_t n;
  std::uint32_t m;
};
FiniteStructure make_abelian(const std::vector<HomocyclicFactor>& factors);

FiniteStructure make_gl(std::uint32_t n, std::uint32_t q);
FiniteStructure make_linear_order(std::uint64_t n);
FiniteStructure make_equiv(const std::vector<std::uint64_t>& class_sizes);
FiniteStructure make_graph(std::uint64_t n,
                           const std::vector<std::pair<Elem, Elem>>& edges);

/// Tournament on n vertices from the C(n,2) orientation bits in pair order
/// (0,1),(0,2),...,(0,n-1),(1,2),...; bit set means low -> high.
FiniteStructure make_tournament(std::uint32_t n, std::uint64_t bits);

/// One representative per isomorphism class (canonical-form filtering),
/// n <= 6; or every labeled tournament, n <= 5.
std::vector<FiniteStructure> enumerate_tournaments(std::uint32_t n,
                                                   bool up_to_iso = true);

}  // namespace macscope

#endif
