#include "carlab/wedge.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace carlab {
namespace {

bool same_functions(const FunctionList& a, const FunctionList& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].spec() == b[i].spec())) return false;
    if (a[i].values() != b[i].values()) return false;
  }
  return true;
}

CMatrix psd_sqrt(const CMatrix& g) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

WedgeOperator::WedgeOperator(const RankOneState& state) { add(1.0, state.fs, state.gs); }

void WedgeOperator::add(cplx coeff, FunctionList kets, FunctionList bras) {
  if (coeff == cplx{}) return;
  terms_.push_back({coeff, std::move(kets), std::move(bras)});
}

void WedgeOperator::append(const WedgeOperator& other, cplx scale) {
  for (const auto& t : other.terms_) add(scale * t.coeff, t.kets, t.bras);
}

WedgeOperator WedgeOperator::adjoint() const {
  WedgeOperator out;
  for (const auto& t : terms_) out.add(std::conj(t.coeff), t.bras, t.kets);
  return out;
}

WedgeOperator WedgeOperator::simplified() const {
  std::vector<WedgeTerm> merged;
  for (const auto& t : terms_) {
    bool found = false;
    for (auto& m : merged) {
      if (same_functions(m.kets, t.kets) && same_functions(m.bras, t.bras)) {
        m.coeff += t.coeff;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(t);
  }
  WedgeOperator out;
  for (auto& m : merged) out.add(m.coeff, std::move(m.kets), std::move(m.bras));
  return out;
}

WedgeOperator operator+(const WedgeOperator& a, const WedgeOperator& b) {
  WedgeOperator out = a;
  out.append(b);
  return out;
}

WedgeOperator operator-(const WedgeOperator& a, const WedgeOperator& b) {
  WedgeOperator out = a;
  out.append(b, -1.0);
  return out;
}

WedgeOperator operator*(cplx s, const WedgeOperator& op) {
  WedgeOperator out;
  out.append(op, s);
  return out;
}

cplx wedge_overlap(const FunctionList& bras, const FunctionList& kets) {
  if (bras.size() != kets.size()) return 0.0;
  return gram_determinant(bras, kets);
}

std::vector<Contraction> contract(const GridFunction& u, const FunctionList& fs) {
  std::vector<Contraction> out;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const cplx c = inner_product(u, fs[j]);
    if (c == cplx{}) continue;
    out.push_back({j % 2 == 0 ? c : -c, without(fs, j)});
  }
  return out;
}

FunctionList without(const FunctionList& fs, std::size_t j) {
  FunctionList out;
  out.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (i != j) out.push_back(fs[i]);
  return out;
}

FunctionList replaced(const FunctionList& fs, std::size_t j, GridFunction f) {
  FunctionList out = fs;
  out.at(j) = std::move(f);
  return out;
}

FunctionList mapped(const FunctionList& fs, const CMatrix& op) {
  FunctionList out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(apply(op, f));
  return out;
}

cplx pairing(const WedgeOperator& op, const MonomialObservable& x) {
  cplx acc{};
  for (const auto& t : op.terms()) {
    // Tr(|k><b| x) = <b| x |k>
    FunctionList left(x.hs.rbegin(), x.hs.rend());
    left.insert(left.end(), t.bras.begin(), t.bras.end());
    FunctionList right = x.es;
    right.insert(right.end(), t.kets.begin(), t.kets.end());
    acc += t.coeff * wedge_overlap(left, right);
  }
  return acc;
}

cplx trace(const WedgeOperator& op) { return pairing(op, MonomialObservable{}); }

double trace_norm(const WedgeOperator& op) {
  const WedgeOperator s = op.simplified();
  const auto n = static_cast<Eigen::Index>(s.size());
  if (n == 0) return 0.0;
  CMatrix gu(n, n), gv(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      gu(i, j) = wedge_overlap(s.terms()[i].kets, s.terms()[j].kets);
      gv(i, j) = wedge_overlap(s.terms()[i].bras, s.terms()[j].bras);
      gu(j, i) = std::conj(gu(i, j));
      gv(j, i) = std::conj(gv(i, j));
    }
  }
  CVector c(n);
  for (Eigen::Index i = 0; i < n; ++i) c[i] = s.terms()[i].coeff;
  // op = U diag(c) V^+, U^+U = gu, V^+V = gv
  const CMatrix core = psd_sqrt(gu) * c.asDiagonal() * psd_sqrt(gv);
  return linalg::trace_norm(core);
}

FockVector apply_monomial(const FockSpace& space, const MonomialObservable& x, const FockVector& v) {
  FockVector out = v;
  for (auto it = x.es.rbegin(); it != x.es.rend(); ++it)
    out = space.apply_ladder(*it, LadderKind::create, out);
  for (auto it = x.hs.rbegin(); it != x.hs.rend(); ++it)
    out = space.apply_ladder(*it, LadderKind::annihilate, out);
  return out;
}

FockOperator monomial_operator(const FockSpace& space, const MonomialObservable& x) {
  FockOperator out = FockOperator::Identity(space.dim(), space.dim());
  for (const auto& h : x.hs) out = linalg::matmul(out, space.ladder(h, LadderKind::annihilate));
  for (const auto& e : x.es) out = linalg::matmul(out, space.ladder(e, LadderKind::create));
  return out;
}

FockOperator to_dense(const FockSpace& space, const WedgeOperator& op) {
  FockOperator out = FockOperator::Zero(space.dim(), space.dim());
  for (const auto& t : op.terms())
    out.noalias() += t.coeff * space.wedge(t.kets) * space.wedge(t.bras).adjoint();
  return out;
}

cplx pairing_dense(const FockSpace& space, const WedgeOperator& op, const MonomialObservable& x) {
  cplx acc{};
  for (const auto& t : op.terms())
    acc += t.coeff * linalg::inner(space.wedge(t.bras), apply_monomial(space, x, space.wedge(t.kets)));
  return acc;
}

}  // namespace carlab
