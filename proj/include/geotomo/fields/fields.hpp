#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "geotomo/fields/polar_grid.hpp"

namespace geotomo {

// Nodal fields on a shared polar grid. Values are complex throughout; when
// a quantity is mathematically real the tests assert it, the type does not.
// Vector and covector components are stored in the Cartesian chart basis.
struct ScalarField {
  std::shared_ptr<const PolarGrid> grid;
  std::vector<cd> v;

  ScalarField() = default;
  explicit ScalarField(std::shared_ptr<const PolarGrid> g)
      : grid(std::move(g)), v(static_cast<std::size_t>(grid->size()), cd{}) {}
};

struct VectorField {
  std::shared_ptr<const PolarGrid> grid;
  std::vector<cd> c1, c2;  // X^1, X^2

  VectorField() = default;
  explicit VectorField(std::shared_ptr<const PolarGrid> g)
      : grid(std::move(g)),
        c1(static_cast<std::size_t>(grid->size()), cd{}),
        c2(static_cast<std::size_t>(grid->size()), cd{}) {}
};

struct CovectorField {
  std::shared_ptr<const PolarGrid> grid;
  std::vector<cd> c1, c2;  // a_1, a_2

  CovectorField() = default;
  explicit CovectorField(std::shared_ptr<const PolarGrid> g)
      : grid(std::move(g)),
        c1(static_cast<std::size_t>(grid->size()), cd{}),
        c2(static_cast<std::size_t>(grid->size()), cd{}) {}
};

ScalarField sample_scalar(std::shared_ptr<const PolarGrid> g, const std::function<cd(Vec2)>& f);
VectorField sample_vector(std::shared_ptr<const PolarGrid> g, const std::function<CVec2(Vec2)>& f);
CovectorField sample_covector(std::shared_ptr<const PolarGrid> g, const std::function<CVec2(Vec2)>& f);

// In-place linear updates (shared by the CG loops and field algebra).
void axpy(cd a, const ScalarField& x, ScalarField* y);
void axpy(cd a, const CovectorField& x, CovectorField* y);
void scale(cd a, ScalarField* x);
void scale(cd a, CovectorField* x);

cd interpolate(const ScalarField& f, Vec2 x);
CVec2 interpolate(const CovectorField& f, Vec2 x);

// Closed-form test fields carrying their own derivatives, used by oracles,
// probes and the Carleman quadrature (which needs exact Hessians).
struct AnalyticScalar {
  std::function<cd(Vec2)> f;
  std::function<CVec2(Vec2)> grad;                // (d1 f, d2 f)
  std::function<std::array<cd, 3>(Vec2)> hess;    // (d11, d12, d22)
};

struct AnalyticCovector {
  std::function<CVec2(Vec2)> a;                       // (a_1, a_2)
  std::function<std::array<cd, 4>(Vec2)> da;          // (d1 a1, d2 a1, d1 a2, d2 a2)
};

// factor * exp(-|x-c|^2 / w^2), compactly-supported-in-practice profile
AnalyticScalar analytic_gaussian(cd factor, double width, Vec2 center);
// u = 0 on the unit circle: (1 - |x|^2) * gaussian
AnalyticScalar analytic_dirichlet_bump(cd factor, double width, Vec2 center);
// smooth covector with a windowed rotation profile (divergence-free in the
// Euclidean sense): a = factor * e^{-|x-c|^2/w^2} (-(x2-c2), x1-c1)
AnalyticCovector analytic_curl_bump(cd factor, double width, Vec2 center);
// gradient covector d(phi) of the dirichlet bump (pure potential field)
AnalyticCovector analytic_gradient_bump(cd factor, double width, Vec2 center);

// Parse field presets from config strings (see docs in the config module):
//   scalar: "zero" | "gauss:a,w,cx,cy" | "dirichlet-gauss:a,w,cx,cy"
//   vector: "zero" | "constant:cx,cy" | "rotation" |
//           "curl-gauss:a,w,cx,cy" | "grad-gauss:a,w,cx,cy"
AnalyticScalar make_scalar_preset(const std::string& preset);
std::function<CVec2(Vec2)> make_vector_preset(const std::string& preset);

}  // namespace geotomo
