#include "carlab/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace carlab {
namespace {

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

int ordering_sign(BasisIndex mask, int k) {
  const BasisIndex below = mask & ((BasisIndex{1} << k) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

BasisIndex occupation_mask(std::span<const int> modes) {
  BasisIndex mask = 0;
  for (int k : modes) {
    if (k < 0 || k >= 32) throw std::out_of_range("occupation_mask: mode out of range");
    mask |= BasisIndex{1} << k;
  }
  return mask;
}

FockSpace::FockSpace(int modes) : modes_(modes) {
  if (modes < 1 || modes > max_modes)
    throw std::invalid_argument("FockSpace: mode count must lie in [1, 12]");
}

void FockSpace::require_mode(int k) const {
  if (k < 0 || k >= modes_) throw std::out_of_range("FockSpace: mode index out of range");
}

void FockSpace::require_vector(const FockVector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("FockSpace: vector dimension mismatch");
}

void FockSpace::require_grid(const GridFunction& f) const {
  if (f.size() != modes_) throw std::invalid_argument("FockSpace: grid size differs from mode count");
}

FockVector FockSpace::vacuum() const { return basis_vector(0); }

FockVector FockSpace::basis_vector(BasisIndex mask) const {
  if (mask >= static_cast<BasisIndex>(dim())) throw std::out_of_range("FockSpace: basis index out of range");
  FockVector v = FockVector::Zero(dim());
  v[mask] = 1.0;
  return v;
}

FockVector FockSpace::annihilate_mode(int k, const FockVector& v) const {
  require_mode(k);
  require_vector(v);
  FockVector out = FockVector::Zero(dim());
  const BasisIndex bit = BasisIndex{1} << k;
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j)
    if (j & bit) out[j ^ bit] = static_cast<double>(ordering_sign(j, k)) * v[j];
  return out;
}

FockVector FockSpace::create_mode(int k, const FockVector& v) const {
  require_mode(k);
  require_vector(v);
  FockVector out = FockVector::Zero(dim());
  const BasisIndex bit = BasisIndex{1} << k;
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j)
    if (!(j & bit)) out[j | bit] = static_cast<double>(ordering_sign(j, k)) * v[j];
  return out;
}

FockOperator FockSpace::annihilator(int k) const {
  require_mode(k);
  FockOperator a = FockOperator::Zero(dim(), dim());
  const BasisIndex bit = BasisIndex{1} << k;
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j)
    if (j & bit) a(j ^ bit, j) = ordering_sign(j, k);
  return a;
}

FockOperator FockSpace::creator(int k) const {
  require_mode(k);
  FockOperator c = FockOperator::Zero(dim(), dim());
  const BasisIndex bit = BasisIndex{1} << k;
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j)
    if (!(j & bit)) c(j | bit, j) = ordering_sign(j, k);
  return c;
}

FockVector FockSpace::annihilate(const CVector& c, const FockVector& v) const {
  require_vector(v);
  if (c.size() != modes_) throw std::invalid_argument("FockSpace: mode vector length mismatch");
  FockVector out = FockVector::Zero(dim());
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j) {
    if (v[j] == cplx{}) continue;
    for (int k = 0; k < modes_; ++k) {
      const BasisIndex bit = BasisIndex{1} << k;
      if ((j & bit) && c[k] != cplx{})
        out[j ^ bit] += static_cast<double>(ordering_sign(j, k)) * std::conj(c[k]) * v[j];
    }
  }
  return out;
}

FockVector FockSpace::create(const CVector& c, const FockVector& v) const {
  require_vector(v);
  if (c.size() != modes_) throw std::invalid_argument("FockSpace: mode vector length mismatch");
  FockVector out = FockVector::Zero(dim());
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j) {
    if (v[j] == cplx{}) continue;
    for (int k = 0; k < modes_; ++k) {
      const BasisIndex bit = BasisIndex{1} << k;
      if (!(j & bit) && c[k] != cplx{})
        out[j | bit] += static_cast<double>(ordering_sign(j, k)) * c[k] * v[j];
    }
  }
  return out;
}

FockOperator FockSpace::ladder(const GridFunction& f, LadderKind kind) const {
  require_grid(f);
  const CVector c = f.modes();
  FockOperator op = FockOperator::Zero(dim(), dim());
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j) {
    for (int k = 0; k < modes_; ++k) {
      const BasisIndex bit = BasisIndex{1} << k;
      const double s = ordering_sign(j, k);
      if (kind == LadderKind::annihilate && (j & bit)) op(j ^ bit, j) = s * std::conj(c[k]);
      if (kind == LadderKind::create && !(j & bit)) op(j | bit, j) = s * c[k];
    }
  }
  return op;
}

FockVector FockSpace::apply_ladder(const GridFunction& f, LadderKind kind,
                                   const FockVector& v) const {
  require_grid(f);
  return kind == LadderKind::annihilate ? annihilate(f.modes(), v) : create(f.modes(), v);
}

FockVector FockSpace::wedge(std::span<const GridFunction> fs) const {
  if (static_cast<int>(fs.size()) > modes_) return FockVector::Zero(dim());
  FockVector v = vacuum();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) v = apply_ladder(*it, LadderKind::create, v);
  return v;
}

FockVector FockSpace::antisymmetrize_oracle(std::span<const GridFunction> fs) const {
  const int n = static_cast<int>(fs.size());
  if (n > 5) throw std::invalid_argument("antisymmetrize_oracle: at most 5 factors");
  for (const auto& f : fs) require_grid(f);
  if (n == 0) return vacuum();

  std::vector<CVector> coeffs;
  for (const auto& f : fs) coeffs.push_back(f.modes());

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do perms.emplace_back(perm, permutation_sign(perm));
  while (std::next_permutation(perm.begin(), perm.end()));

  // Tensor T = P_a(f_1 x ... x f_n) stored with multi-index (i_1, ..., i_n),
  // i_1 most significant.
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(modes_);
  std::vector<cplx> tensor(total, cplx{});
  const double inv_fact = 1.0 / factorial(n);
  std::vector<int> idx(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int a = n - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % modes_);
      rem /= modes_;
    }
    cplx acc{};
    for (const auto& [p, sgn] : perms) {
      cplx term = static_cast<double>(sgn);
      for (int a = 0; a < n; ++a) term *= coeffs[p[a]][idx[a]];
      acc += term;
    }
    tensor[flat] = inv_fact * acc;
  }

  auto flat_index = [&](const std::vector<int>& ix) {
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) flat = flat * modes_ + ix[a];
    return flat;
  };

  FockVector out = FockVector::Zero(dim());
  const double embed = 1.0 / std::sqrt(factorial(n));
  std::vector<int> occupied;
  std::vector<int> ix(n);
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j) {
    if (std::popcount(j) != n) continue;
    occupied.clear();
    for (int k = 0; k < modes_; ++k)
      if (j & (BasisIndex{1} << k)) occupied.push_back(k);
    cplx acc{};
    for (const auto& [p, sgn] : perms) {
      for (int a = 0; a < n; ++a) ix[a] = occupied[p[a]];
      acc += static_cast<double>(sgn) * tensor[flat_index(ix)];
    }
    out[j] = embed * acc;
  }
  return out;
}

FockOperator FockSpace::gamma_lift(const CMatrix& v) const {
  if (v.rows() != modes_ || v.cols() != modes_)
    throw std::invalid_argument("gamma_lift: one-particle matrix has wrong size");
  FockOperator g = FockOperator::Zero(dim(), dim());
  g(0, 0) = 1.0;
  for (BasisIndex j = 1; j < static_cast<BasisIndex>(dim()); ++j) {
    const int lowest = std::countr_zero(j);
    const BasisIndex rest = j & (j - 1);
    g.col(j) = create(v.col(lowest), g.col(rest));
  }
  return g;
}

FockOperator FockSpace::derivation_lift(const CMatrix& a) const {
  if (a.rows() != modes_ || a.cols() != modes_)
    throw std::invalid_argument("derivation_lift: one-particle matrix has wrong size");
  FockOperator out = FockOperator::Zero(dim(), dim());
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j) {
    for (int k = 0; k < modes_; ++k) {
      const BasisIndex kbit = BasisIndex{1} << k;
      if (!(j & kbit)) continue;
      const BasisIndex removed = j ^ kbit;
      const double sk = ordering_sign(j, k);
      for (int l = 0; l < modes_; ++l) {
        const BasisIndex lbit = BasisIndex{1} << l;
        if ((removed & lbit) || a(l, k) == cplx{}) continue;
        out(removed | lbit, j) += sk * ordering_sign(removed, l) * a(l, k);
      }
    }
  }
  return out;
}

FockOperator FockSpace::number_operator() const {
  FockOperator q = FockOperator::Zero(dim(), dim());
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(dim()); ++j) q(j, j) = std::popcount(j);
  return q;
}

FockOperator FockSpace::xi_star(const FockOperator& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim())
    throw std::invalid_argument("xi_star: operator dimension mismatch");
  FockOperator out = FockOperator::Zero(dim(), dim());
  const auto d = static_cast<BasisIndex>(dim());
  for (int k = 0; k < modes_; ++k) {
    const BasisIndex bit = BasisIndex{1} << k;
    // (a_k rho a_k^+)_{IJ} = s(I|k) s(J|k) rho_{I|k, J|k} for I, J without k
    for (BasisIndex col = 0; col < d; ++col) {
      if (col & bit) continue;
      const double sc = ordering_sign(col | bit, k);
      for (BasisIndex row = 0; row < d; ++row) {
        if (row & bit) continue;
        out(row, col) += sc * ordering_sign(row | bit, k) * rho(row | bit, col | bit);
      }
    }
  }
  return out;
}

cplx gram_determinant(std::span<const GridFunction> fs, std::span<const GridFunction> gs) {
  if (fs.size() != gs.size()) throw std::invalid_argument("gram_determinant: length mismatch");
  const auto n = static_cast<Eigen::Index>(fs.size());
  CMatrix gram(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) gram(j, k) = inner_product(fs[j], gs[k]);
  return linalg::determinant(gram);
}

}  // namespace carlab
