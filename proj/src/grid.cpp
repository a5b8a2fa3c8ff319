#include "carlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "carlab/kernels.hpp"

namespace carlab {
namespace {

void require_same_spec(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("grid functions on different grids");
}

// C^infinity bump, equal to 1 at u = 0 and supported on |u| < 1.
double bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

}  // namespace

GridSpec::GridSpec(int points_, double spacing_) : points(points_), spacing(spacing_) {
  if (points < 2) throw std::invalid_argument("GridSpec: need at least 2 points");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("GridSpec: spacing must be positive");
}

GridFunction::GridFunction(const GridSpec& spec)
    : spec_(spec), values_(CVector::Zero(spec.points)) {}

GridFunction::GridFunction(const GridSpec& spec, CVector values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.points)
    throw std::invalid_argument("GridFunction: value count does not match grid");
  if (!values_.allFinite()) throw std::invalid_argument("GridFunction: non-finite values");
}

GridFunction GridFunction::from_modes(const GridSpec& spec, const CVector& modes) {
  return GridFunction(spec, modes / std::sqrt(spec.spacing));
}

CVector GridFunction::modes() const { return values_ * std::sqrt(spec_.spacing); }

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_spec(a, b);
  return GridFunction(a.spec(), a.values() + b.values());
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_spec(a, b);
  return GridFunction(a.spec(), a.values() - b.values());
}

GridFunction operator*(cplx s, const GridFunction& f) {
  return GridFunction(f.spec(), s * f.values());
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_spec(f, g);
  const auto n = static_cast<std::size_t>(f.size());
  return f.spec().spacing * kernels::dotc({f.values().data(), n}, {g.values().data(), n});
}

double norm(const GridFunction& f) { return std::sqrt(inner_product(f, f).real()); }

GridFunction shift_forward(const GridFunction& f, int m) {
  if (m < 0) throw std::invalid_argument("shift_forward: negative shift");
  GridFunction out(f.spec());
  for (int i = m; i < f.size(); ++i) out.values()[i] = f[i - m];
  return out;
}

GridFunction shift_adjoint(const GridFunction& f, int m) {
  if (m < 0) throw std::invalid_argument("shift_adjoint: negative shift");
  GridFunction out(f.spec());
  for (int i = 0; i + m < f.size(); ++i) out.values()[i] = f[i + m];
  return out;
}

GridFunction diff_forward(const GridFunction& f) {
  GridFunction out(f.spec());
  const double h = f.spec().spacing;
  for (int i = 0; i + 1 < f.size(); ++i) out.values()[i] = (f[i + 1] - f[i]) / h;
  return out;
}

GridFunction diff_backward_interior(const GridFunction& g) {
  GridFunction out(g.spec());
  const double h = g.spec().spacing;
  for (int i = 1; i < g.size(); ++i) out.values()[i] = (g[i] - g[i - 1]) / h;
  return out;
}

cplx ibp_residual(const GridFunction& f, const GridFunction& g) {
  require_same_spec(f, g);
  const int last = f.size() - 1;
  return inner_product(diff_forward(f), g) + inner_product(f, diff_backward_interior(g)) +
         std::conj(f[0]) * g[0] - std::conj(f[last]) * g[last];
}

CMatrix shift_matrix(int points, int m) {
  CMatrix s = CMatrix::Zero(points, points);
  for (int i = m; i < points; ++i) s(i, i - m) = 1.0;
  return s;
}

CMatrix shift_adjoint_matrix(int points, int m) { return shift_matrix(points, m).adjoint(); }

CMatrix diff_forward_matrix(const GridSpec& spec) {
  CMatrix d = CMatrix::Zero(spec.points, spec.points);
  for (int i = 0; i + 1 < spec.points; ++i) {
    d(i, i) = -1.0 / spec.spacing;
    d(i, i + 1) = 1.0 / spec.spacing;
  }
  return d;
}

CMatrix diff_backward_matrix(const GridSpec& spec) {
  CMatrix b = CMatrix::Zero(spec.points, spec.points);
  for (int i = 1; i < spec.points; ++i) {
    b(i, i) = 1.0 / spec.spacing;
    b(i, i - 1) = -1.0 / spec.spacing;
  }
  return b;
}

GridFunction apply(const CMatrix& op, const GridFunction& f) {
  if (op.rows() != f.size() || op.cols() != f.size())
    throw std::invalid_argument("apply: operator does not match grid");
  return GridFunction(f.spec(), op * f.values());
}

bool vanishes_on_trailing(const GridFunction& f, int cells) {
  for (int i = std::max(0, f.size() - cells); i < f.size(); ++i)
    if (f[i] != cplx{}) return false;
  return true;
}

bool satisfies(const GridFunction& f, Domain domain) {
  if (!vanishes_on_trailing(f, f.spec().trailing_cells())) return false;
  return domain == Domain::d || f.at_origin() == cplx{};
}

GridFunction make_test_function(const GridSpec& spec, TestFunctionKind kind,
                                const TestFunctionParams& p) {
  const double h = spec.spacing;
  const int support_end = spec.points - spec.trailing_cells();  // first cell forced to zero
  const double x_end = support_end * h;
  GridFunction f(spec);
  switch (kind) {
    case TestFunctionKind::bump_D_d:
    case TestFunctionKind::bump_D_dstar: {
      if (!(p.width > 0.0)) throw std::invalid_argument("make_test_function: width must be positive");
      if (p.center < 0.0) throw std::invalid_argument("make_test_function: negative centre");
      if (p.center + p.width > x_end)
        throw std::invalid_argument("make_test_function: bump reaches the trailing cells");
      if (kind == TestFunctionKind::bump_D_dstar && p.center - p.width < 0.0)
        throw std::invalid_argument("make_test_function: D(d_*) bump must vanish at 0");
      for (int i = 0; i < support_end; ++i) {
        const double x = i * h;
        f.values()[i] = p.amplitude * bump((x - p.center) / p.width) *
                        std::polar(1.0, p.wavenumber * x);
      }
      if (kind == TestFunctionKind::bump_D_dstar) f.values()[0] = 0.0;
      break;
    }
    case TestFunctionKind::ramp:
      for (int i = 0; i < support_end; ++i) f.values()[i] = p.amplitude * (i * h);
      break;
    case TestFunctionKind::indicator: {
      if (!(p.delta > 0.0)) throw std::invalid_argument("make_test_function: delta must be positive");
      const auto cells = static_cast<int>(std::floor(p.delta / h + 1e-9));
      if (cells > support_end)
        throw std::invalid_argument("make_test_function: indicator reaches the trailing cells");
      for (int i = 0; i < cells; ++i) f.values()[i] = p.amplitude;
      break;
    }
  }
  return f;
}

GridFunction random_function(const GridSpec& spec, std::mt19937_64& rng, Domain domain) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GridFunction f(spec);
  const int support_end = spec.points - spec.trailing_cells();
  for (int i = 0; i < support_end; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    f.values()[i] = {re, im};
  }
  if (domain == Domain::d_star) f.values()[0] = 0.0;
  const double n = norm(f);
  if (n > 0.0) f.values() /= n;
  return f;
}

}  // namespace carlab
