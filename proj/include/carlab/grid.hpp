#pragma once

// Discretized one-particle space L^2(R_+): uniform grid x_i = i*h, i < M.
//
// Grid functions double as mode vectors of the Fock engine: mode j carries the
// coefficient sqrt(h) * f_j, so the grid inner product and the mode inner
// product coincide. Linear one-particle maps have the same matrix in both
// coordinates.

#include <random>
#include <vector>

#include "carlab/linalg.hpp"

namespace carlab {

struct GridSpec {
  int points = 0;       // M
  double spacing = 0.;  // h

  GridSpec() = default;
  GridSpec(int points, double spacing);

  double extent() const { return points * spacing; }
  // Cells at the right end on which every test function vanishes.
  int trailing_cells() const { return (points + 7) / 8; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class GridFunction {
 public:
  explicit GridFunction(const GridSpec& spec);
  GridFunction(const GridSpec& spec, CVector values);

  static GridFunction from_modes(const GridSpec& spec, const CVector& modes);

  const GridSpec& spec() const { return spec_; }
  const CVector& values() const { return values_; }
  CVector& values() { return values_; }
  int size() const { return spec_.points; }
  cplx operator[](int i) const { return values_[i]; }
  cplx at_origin() const { return values_[0]; }

  // sqrt(h) * values
  CVector modes() const;

 private:
  GridSpec spec_;
  CVector values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& f);

// h * sum conj(f_i) g_i; antilinear in the first argument.
cplx inner_product(const GridFunction& f, const GridFunction& g);
double norm(const GridFunction& f);

// (S_t f)_i = f_{i-m}, zero below m; t = m*h.
GridFunction shift_forward(const GridFunction& f, int m);
// (S_t^* f)_i = f_{i+m}, zero past the right edge.
GridFunction shift_adjoint(const GridFunction& f, int m);

// (f_{i+1} - f_i)/h for i <= M-2, zero at M-1.
GridFunction diff_forward(const GridFunction& f);
// (g_i - g_{i-1})/h for i >= 1, zero at 0.
GridFunction diff_backward_interior(const GridFunction& g);

// <Df, g> + <f, Bg> + conj(f_0) g_0 - conj(f_{M-1}) g_{M-1}; zero in exact arithmetic.
cplx ibp_residual(const GridFunction& f, const GridFunction& g);

// One-particle matrices acting on value (or mode) vectors.
CMatrix shift_matrix(int points, int m);
CMatrix shift_adjoint_matrix(int points, int m);
CMatrix diff_forward_matrix(const GridSpec& spec);
CMatrix diff_backward_matrix(const GridSpec& spec);
GridFunction apply(const CMatrix& op, const GridFunction& f);

// D(d): trailing cells vanish. D(d_*): additionally f(0) = 0.
enum class Domain { d, d_star };

bool vanishes_on_trailing(const GridFunction& f, int cells);
bool satisfies(const GridFunction& f, Domain domain);

enum class TestFunctionKind { bump_D_d, bump_D_dstar, ramp, indicator };

struct TestFunctionParams {
  double center = 0.;     // bump centre
  double width = 1.;      // bump half-width
  double wavenumber = 0.; // phase e^{ikx} on bumps
  cplx amplitude = 1.;
  double delta = 0.;      // indicator of [0, delta]
};

GridFunction make_test_function(const GridSpec& spec, TestFunctionKind kind,
                                const TestFunctionParams& params);

// Random complex values, normalised to unit grid norm, compliant with `domain`.
GridFunction random_function(const GridSpec& spec, std::mt19937_64& rng, Domain domain);

}  // namespace carlab
