#include "ghom/chain_complex.hpp"

#include <sstream>

#include "ghom/errors.hpp"
#include "ghom/smith.hpp"

namespace ghom {

BasisNames::BasisNames(std::vector<std::string> names)
    : size_(names.size()), names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

BasisNames::BasisNames(std::size_t size, std::function<std::string(std::size_t)> namer)
    : size_(size), namer_(std::move(namer)) {}

std::string BasisNames::operator[](std::size_t i) const {
  if (i >= size_) throw IndexOutOfRange("basis index out of range");
  if (names_) return (*names_)[i];
  if (namer_) return namer_(i);
  return "e" + std::to_string(i);
}

std::string HomologyGroup::str() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out += " + " + parts[k];
  return out;
}

IntegerChainComplex::IntegerChainComplex(int lowest_degree, std::vector<BasisNames> bases,
                                         std::vector<IntMatrix> boundaries)
    : lowest_(lowest_degree), bases_(std::move(bases)), cache_(std::make_shared<Cache>()) {
  if (bases_.empty()) throw DimensionMismatch("chain complex needs at least one degree");
  if (boundaries.size() + 1 != bases_.size())
    throw DimensionMismatch("chain complex needs exactly one boundary between consecutive degrees");
  boundaries_.reserve(bases_.size() + 1);
  boundaries_.emplace_back(0, bases_[0].size());
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    const IntMatrix& d = boundaries[k];
    if (d.rows() != bases_[k].size() || d.cols() != bases_[k + 1].size())
      throw DimensionMismatch("boundary out of degree " + std::to_string(lowest_ + k + 1) +
                              " has shape " + std::to_string(d.rows()) + "x" +
                              std::to_string(d.cols()) + ", expected " +
                              std::to_string(bases_[k].size()) + "x" +
                              std::to_string(bases_[k + 1].size()));
    boundaries_.push_back(std::move(boundaries[k]));
  }
  boundaries_.emplace_back(bases_.back().size(), 0);
  for (int n = lowest_ + 1; n < top_degree(); ++n) {
    IntMatrix dd = boundary(n) * boundary(n + 1);
    if (!dd.is_zero()) {
      IntMatrix zero(dd.rows(), dd.cols());
      auto diff = dd.first_difference(zero);
      throw NotAComplex("boundary(" + std::to_string(n) + ") * boundary(" +
                        std::to_string(n + 1) + ") != 0 at entry (" + std::to_string(diff->row) +
                        ", " + std::to_string(diff->col) + ") = " + diff->lhs.str());
    }
  }
}

const BasisNames& IntegerChainComplex::basis(int n) const {
  if (!has_degree(n)) throw IndexOutOfRange("degree " + std::to_string(n) + " not represented");
  return bases_[n - lowest_];
}

const IntMatrix& IntegerChainComplex::boundary(int n) const {
  if (n < lowest_ || n > top_degree() + 1)
    throw IndexOutOfRange("boundary " + std::to_string(n) + " not represented");
  return boundaries_[n - lowest_];
}

const std::vector<Integer>& IntegerChainComplex::boundary_factors(int n) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->factors.find(n);
    if (it != cache_->factors.end()) return it->second;
  }
  std::vector<Integer> f = invariant_factors(boundary(n));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->factors.emplace(n, std::move(f)).first->second;
}

HomologyGroup homology(const IntegerChainComplex& C, int n) {
  HomologyGroup h;
  if (!C.has_degree(n)) return h;
  const auto& in = C.boundary_factors(n);
  const auto& out = C.boundary_factors(n + 1);
  h.free_rank = C.dim(n) - in.size() - out.size();
  for (const auto& d : out)
    if (d > Integer(1)) h.torsion.push_back(d);
  return h;
}

std::string Discrepancy::str() const {
  std::ostringstream os;
  os << "degree=" << degree << " row=" << row << " col=" << col << " lhs=" << lhs
     << " rhs=" << rhs;
  return os.str();
}

std::string CertificateResult::str() const {
  if (ok) return "PASS";
  return "FAIL(" + (discrepancy ? discrepancy->str() : std::string("unknown")) + ")";
}

namespace {

const IntMatrix* lookup(const std::map<int, IntMatrix>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? nullptr : &it->second;
}

void expect_shape(const IntMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw DimensionMismatch(what + " has shape " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                            std::to_string(cols));
}

CertificateResult compare(int n, const IntMatrix& lhs, const IntMatrix& rhs) {
  CertificateResult r;
  if (auto d = lhs.first_difference(rhs)) {
    r.ok = false;
    r.discrepancy = Discrepancy{n, d->row, d->col, d->lhs, d->rhs};
  }
  return r;
}

}  // namespace

CertificateResult certify_homotopy(const ChainMapCertificate& cert) {
  if (!cert.source || !cert.target) throw DimensionMismatch("certificate without complexes");
  const auto& S = *cert.source;
  const auto& T = *cert.target;
  const bool with_h = !cert.homotopy_matrices.empty();
  for (int n = cert.first_degree; n <= cert.last_degree; ++n) {
    const IntMatrix* F = lookup(cert.map_matrices, n);
    if (!F) throw DimensionMismatch("missing map matrix in degree " + std::to_string(n));
    expect_shape(*F, T.dim(n), S.dim(n), "map matrix in degree " + std::to_string(n));
    if (with_h) {
      const IntMatrix* H = lookup(cert.homotopy_matrices, n);
      if (!H) throw DimensionMismatch("missing homotopy matrix in degree " + std::to_string(n));
      expect_shape(*H, T.dim(n + 1), S.dim(n), "homotopy in degree " + std::to_string(n));
      IntMatrix lhs = T.boundary(n + 1) * *H;
      if (n > S.lowest_degree()) {
        const IntMatrix* Hm = lookup(cert.homotopy_matrices, n - 1);
        if (!Hm)
          throw DimensionMismatch("missing homotopy matrix in degree " + std::to_string(n - 1));
        expect_shape(*Hm, T.dim(n), S.dim(n - 1), "homotopy in degree " + std::to_string(n - 1));
        lhs = lhs + *Hm * S.boundary(n);
      }
      if (auto r = compare(n, lhs, *F); !r) return r;
    } else if (n > S.lowest_degree()) {
      const IntMatrix* Fm = lookup(cert.map_matrices, n - 1);
      if (!Fm) continue;
      if (auto r = compare(n, T.boundary(n) * *F, *Fm * S.boundary(n)); !r) return r;
    }
  }
  return {};
}

}  // namespace ghom
