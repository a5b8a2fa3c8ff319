#include "carlab/no_event.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace carlab {
namespace {

constexpr double kAdmissibleSlack = 1e-12;
constexpr double kDecay = 1e-14;

void require_square(const CMatrix& a, Eigen::Index d, const char* what) {
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument(what);
}

void require_couplings(const CMatrix& k, const CouplingFamily& ls) {
  for (const auto& l : ls) require_square(l, k.rows(), "coupling operator has wrong size");
}

// vec(K^+ Y + Y K) = A vec(Y)
CMatrix sylvester_operator(const CMatrix& k) {
  const Eigen::Index d = k.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  return Eigen::kroneckerProduct(id, k.adjoint()).eval() + Eigen::kroneckerProduct(k.transpose(), id).eval();
}

// x -> sum L^+ x L
SuperoperatorMatrix delta_heisenberg_superop(const CMatrix& k, const CouplingFamily& ls) {
  const Eigen::Index d = k.rows();
  SuperoperatorMatrix s = SuperoperatorMatrix::Zero(d * d, d * d);
  for (const auto& l : ls) s += Eigen::kroneckerProduct(l.transpose(), l.adjoint()).eval();
  return s;
}

void require_sylvester_invertible(const CMatrix& k) {
  const Eigen::ComplexEigenSolver<CMatrix> es(k);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, linalg::operator_norm(k));
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = 0; j < ev.size(); ++j)
      if (std::abs(std::conj(ev[i]) + ev[j]) < 1e-10 * scale)
        throw std::domain_error(
            "theta_excessive: Sylvester operator K^+ Y + Y K is singular; use the quadrature method");
}

double panel_width_for(const CMatrix& k) {
  const double n = linalg::operator_norm(k);
  return n > 1.0 ? 1.0 / n : 1.0;
}

}  // namespace

double dissipativity_margin(const CMatrix& k) { return linalg::max_eigenvalue_hermitian(k + k.adjoint()); }

double admissibility_margin(const CMatrix& k, const CouplingFamily& ls) {
  require_couplings(k, ls);
  CMatrix s = k + k.adjoint();
  for (const auto& l : ls) s += l.adjoint() * l;
  return linalg::max_eigenvalue_hermitian(s);
}

void require_dissipative(const CMatrix& k) {
  if (k.rows() != k.cols()) throw std::invalid_argument("generator must be square");
  if (dissipativity_margin(k) > kAdmissibleSlack) throw std::domain_error("generator K is not dissipative");
}

void require_admissible(const CMatrix& k, const CouplingFamily& ls) {
  require_dissipative(k);
  if (admissibility_margin(k, ls) > kAdmissibleSlack)
    throw std::domain_error("couplings violate sum L^+L + K + K^+ <= 0");
}

CMatrix contraction_semigroup(const CMatrix& k, double t) {
  if (t < 0.0) throw std::invalid_argument("negative time");
  return (t * k).exp();
}

CMatrix no_event_evolve(double t, const CMatrix& k, const CMatrix& rho) {
  require_dissipative(k);
  require_square(rho, k.rows(), "no_event_evolve: state has wrong size");
  const CMatrix tt = contraction_semigroup(k, t);
  return tt * rho * tt.adjoint();
}

CMatrix no_event_generator(const CMatrix& k, const CMatrix& rho) { return k * rho + rho * k.adjoint(); }

CMatrix delta_from_couplings(const CouplingFamily& ls, const CVector& psi, const CVector& xi) {
  if (psi.size() != xi.size()) throw std::invalid_argument("delta_from_couplings: vector sizes differ");
  CMatrix out = CMatrix::Zero(psi.size(), psi.size());
  for (const auto& l : ls) {
    require_square(l, psi.size(), "delta_from_couplings: coupling has wrong size");
    out += (l * psi) * (l * xi).adjoint();
  }
  return out;
}

CMatrix delta_star(const CouplingFamily& ls, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& l : ls) out += l * rho * l.adjoint();
  return out;
}

CMatrix delta_heisenberg(const CouplingFamily& ls, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const auto& l : ls) out += l.adjoint() * x * l;
  return out;
}

SuperoperatorMatrix no_event_phi(const CMatrix& k, double t) {
  const CMatrix tt = contraction_semigroup(k, t);
  return Eigen::kroneckerProduct(tt.transpose(), tt.adjoint()).eval();
}

CMatrix integrate_matrix(const std::function<CMatrix(double)>& f, double a, double b, double panel_width) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  if (!(panel_width > 0.0)) throw std::invalid_argument("integrate_matrix: panel width must be positive");
  if (b < a) throw std::invalid_argument("integrate_matrix: reversed interval");
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const bool infinite = std::isinf(b);
  constexpr int max_panels = 1 << 20;

  CMatrix total;
  double peak = 0.0;
  double lo = a;
  for (int p = 0; p < max_panels; ++p) {
    const double hi = infinite ? lo + panel_width : std::min(b, lo + panel_width);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const CMatrix v = f(mid + sgn * half * x[i]);
        peak = std::max(peak, v.cwiseAbs().maxCoeff());
        if (total.size() == 0) total = CMatrix::Zero(v.rows(), v.cols());
        total += (half * w[i]) * v;
      }
    }
    lo = hi;
    if (!infinite) {
      if (lo >= b) return total;
      continue;
    }
    const double tail = f(lo).cwiseAbs().maxCoeff();
    if (tail <= kDecay * peak || peak == 0.0) return total;
  }
  throw std::runtime_error("integrate_matrix: integrand does not decay within the truncation horizon");
}

CMatrix theta_excessive(const CMatrix& k, const CouplingFamily& ls, const CMatrix& x, ThetaMethod method) {
  require_admissible(k, ls);
  require_square(x, k.rows(), "theta_excessive: observable has wrong size");
  const Eigen::Index d = k.rows();
  const CMatrix y = delta_heisenberg(ls, x);
  if (method == ThetaMethod::lyapunov) {
    require_sylvester_invertible(k);
    const CVector v = sylvester_operator(k).partialPivLu().solve(CVector(-y.reshaped()));
    return v.reshaped(d, d);
  }
  return integrate_matrix(
      [&](double r) {
        const CMatrix tt = contraction_semigroup(k, r);
        return CMatrix(tt.adjoint() * y * tt);
      },
      0.0, std::numeric_limits<double>::infinity(), panel_width_for(k));
}

SuperoperatorMatrix theta_superop(const CMatrix& k, const CouplingFamily& ls, ThetaMethod method) {
  require_admissible(k, ls);
  const SuperoperatorMatrix dstar = delta_heisenberg_superop(k, ls);
  if (method == ThetaMethod::lyapunov) {
    require_sylvester_invertible(k);
    return -sylvester_operator(k).partialPivLu().solve(dstar);
  }
  return integrate_matrix([&](double r) { return CMatrix(no_event_phi(k, r) * dstar); }, 0.0,
                          std::numeric_limits<double>::infinity(), panel_width_for(k));
}

SuperoperatorMatrix measure_from_theta(const CMatrix& k, const CouplingFamily& ls, double t, double s,
                                       ThetaMethod method) {
  if (t < 0.0 || s < t) throw std::invalid_argument("measure_from_theta: need 0 <= t <= s");
  const SuperoperatorMatrix theta = theta_superop(k, ls, method);
  return (no_event_phi(k, t) - no_event_phi(k, s)) * theta;
}

SuperoperatorMatrix measure_eq1_quadrature(const CMatrix& k, const CouplingFamily& ls, double t, double s) {
  require_admissible(k, ls);
  if (t < 0.0 || s < t) throw std::invalid_argument("measure_eq1_quadrature: need 0 <= t <= s");
  const Eigen::Index d = k.rows();
  if (s == t) return SuperoperatorMatrix::Zero(d * d, d * d);
  const SuperoperatorMatrix dstar = delta_heisenberg_superop(k, ls);
  return integrate_matrix([&](double r) { return CMatrix(no_event_phi(k, r) * dstar); }, t, s,
                          std::min(panel_width_for(k), 0.25));
}

OpenSystem random_open_system(int dim, int couplings, double damping, std::uint64_t seed) {
  if (dim < 1 || couplings < 0 || damping < 0.0) throw std::invalid_argument("random_open_system: bad parameters");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_matrix = [&](double scale) {
    CMatrix a(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a(i, j) = scale * cplx(re, im);
      }
    return a;
  };
  OpenSystem sys;
  const CMatrix g = random_matrix(0.5);
  const CMatrix h = 0.5 * (g + g.adjoint());
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (int j = 0; j < couplings; ++j) {
    sys.ls.push_back(random_matrix(0.5 / std::sqrt(static_cast<double>(dim))));
    sum += sys.ls.back().adjoint() * sys.ls.back();
  }
  sys.k = -0.5 * sum - cplx(0.0, 1.0) * h - damping * CMatrix::Identity(dim, dim);
  return sys;
}

OpenSystem qubit_decay(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("qubit_decay: gamma must be positive");
  OpenSystem sys;
  sys.k = CMatrix::Zero(2, 2);
  sys.k(1, 1) = -0.5 * gamma;
  CMatrix l = CMatrix::Zero(2, 2);
  l(0, 1) = std::sqrt(gamma);
  sys.ls.push_back(l);
  return sys;
}

}  // namespace carlab
