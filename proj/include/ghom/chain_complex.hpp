#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ghom/int_matrix.hpp"

namespace ghom {

// Named basis of one degree. Names are produced on demand so large levels do
// not have to materialize strings.
class BasisNames {
 public:
  BasisNames() = default;
  explicit BasisNames(std::vector<std::string> names);
  BasisNames(std::size_t size, std::function<std::string(std::size_t)> namer);

  std::size_t size() const { return size_; }
  std::string operator[](std::size_t i) const;

 private:
  std::size_t size_ = 0;
  std::shared_ptr<const std::vector<std::string>> names_;
  std::function<std::string(std::size_t)> namer_;
};

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each >= 2, each dividing the next

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  // "0", "Z", "Z^3", "Z + Z/2", "Z/2 + Z/4", ...
  std::string str() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// Free chain complex C_lo, ..., C_hi with boundary(n): C_n -> C_{n-1}.
// Construction verifies that consecutive boundaries compose to zero.
class IntegerChainComplex {
 public:
  // boundaries[k] is the map out of degree lowest+k+1, so there is one fewer
  // boundary than bases.
  IntegerChainComplex(int lowest_degree, std::vector<BasisNames> bases,
                      std::vector<IntMatrix> boundaries);

  int lowest_degree() const { return lowest_; }
  int top_degree() const { return lowest_ + static_cast<int>(bases_.size()) - 1; }
  bool has_degree(int n) const { return n >= lowest_ && n <= top_degree(); }
  std::size_t dim(int n) const { return has_degree(n) ? bases_[n - lowest_].size() : 0; }
  const BasisNames& basis(int n) const;

  // Zero matrices at both ends, so boundary(n) exists for lowest <= n <= top+1.
  const IntMatrix& boundary(int n) const;

  // Nonzero invariant factors of boundary(n), cached.
  const std::vector<Integer>& boundary_factors(int n) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, std::vector<Integer>> factors;
  };
  int lowest_;
  std::vector<BasisNames> bases_;
  std::vector<IntMatrix> boundaries_;  // index n - lowest covers n = lowest..top+1
  std::shared_ptr<Cache> cache_;
};

using ComplexPtr = std::shared_ptr<const IntegerChainComplex>;

// H_n = ker boundary(n) / im boundary(n+1). Degrees outside the complex are 0.
HomologyGroup homology(const IntegerChainComplex& C, int n);

struct Discrepancy {
  int degree;
  std::size_t row, col;
  Integer lhs, rhs;
  std::string str() const;
};

struct CertificateResult {
  bool ok = true;
  std::optional<Discrepancy> discrepancy;
  explicit operator bool() const { return ok; }
  std::string str() const;
};

// Checks, for first_degree <= n <= last_degree,
//   with homotopy:    d_{n+1} H_n + H_{n-1} d_n = F_n
//   without homotopy: d_n F_n = F_{n-1} d_n   (F is a chain map)
// where d is the target (resp. source) boundary. Missing H_{n-1} below the
// source's lowest degree is zero.
struct ChainMapCertificate {
  ComplexPtr source, target;
  std::map<int, IntMatrix> map_matrices;
  std::map<int, IntMatrix> homotopy_matrices;
  std::string claimed_identity;
  int first_degree = 0;
  int last_degree = 0;
};

CertificateResult certify_homotopy(const ChainMapCertificate& cert);

}  // namespace ghom
