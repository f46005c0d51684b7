#include "geotomo/xray/invert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "geotomo/simd/kernels.hpp"

namespace geotomo {

namespace {

// Flat complex vector of one or two grid components with the L2(M) metric.
struct Dof {
  std::vector<cd> v;
  const std::vector<double>* vol;  // repeated per component

  double norm() const {
    double s = 0.0;
    const std::size_t n = vol->size();
    for (std::size_t i = 0; i < v.size(); ++i) s += (*vol)[i % n] * std::norm(v[i]);
    return std::sqrt(s);
  }
  cd dot(const Dof& o) const {
    cd acc{};
    const std::size_t n = vol->size();
    for (std::size_t i = 0; i < v.size(); ++i) acc += (*vol)[i % n] * std::conj(v[i]) * o.v[i];
    return acc;
  }
};

struct NormalSystem {
  const RayTransform* rt;
  const Operators* ops;
  bool oneform;
  double tau;
  std::vector<double> data_w;  // mu * quadrature weight per ray
  std::vector<double> inv_diag;  // Jacobi preconditioner of the normal operator

  void build_preconditioner() {
    const std::size_t n = static_cast<std::size_t>(ops->size());
    const std::vector<double>& vol = ops->volume_weights();
    std::vector<double> diag(dof_size(), 0.0);
    rt->accumulate_normal_diagonal(data_w, oneform, &diag);
    inv_diag.resize(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
      inv_diag[i] = 1.0 / (diag[i] / vol[i % n] + tau);
  }

  std::size_t dof_size() const {
    return static_cast<std::size_t>(ops->size()) * (oneform ? 2 : 1);
  }

  // y = (Vol^-1 J^T W J + tau) x
  void apply(const std::vector<cd>& x, std::vector<cd>* y) const {
    const std::size_t n = static_cast<std::size_t>(ops->size());
    const std::vector<double>& vol = ops->volume_weights();
    if (!oneform) {
      ScalarField f(rt->grid());
      f.v.assign(x.begin(), x.end());
      RayData jd = rt->forward(f);
      for (std::size_t i = 0; i < jd.values.size(); ++i) jd.values[i] *= data_w[i];
      ScalarField bp(rt->grid());
      rt->adjoint(jd.values, &bp);
      y->resize(n);
      for (std::size_t i = 0; i < n; ++i) (*y)[i] = bp.v[i] / vol[i] + tau * x[i];
    } else {
      CovectorField f(rt->grid());
      f.c1.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
      f.c2.assign(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
      RayData jd = rt->forward(f);
      for (std::size_t i = 0; i < jd.values.size(); ++i) jd.values[i] *= data_w[i];
      CovectorField bp(rt->grid());
      rt->adjoint(jd.values, &bp);
      y->resize(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        (*y)[i] = bp.c1[i] / vol[i] + tau * x[i];
        (*y)[i + n] = bp.c2[i] / vol[i] + tau * x[i + n];
      }
    }
  }

  // rhs = Vol^-1 J^T W d
  std::vector<cd> rhs(const RayData& d) const {
    const std::size_t n = static_cast<std::size_t>(ops->size());
    const std::vector<double>& vol = ops->volume_weights();
    std::vector<cd> wd(d.values.size());
    for (std::size_t i = 0; i < wd.size(); ++i) wd[i] = d.values[i] * data_w[i];
    std::vector<cd> out;
    if (!oneform) {
      ScalarField bp(rt->grid());
      rt->adjoint(wd, &bp);
      out.resize(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = bp.v[i] / vol[i];
    } else {
      CovectorField bp(rt->grid());
      rt->adjoint(wd, &bp);
      out.resize(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = bp.c1[i] / vol[i];
        out[i + n] = bp.c2[i] / vol[i];
      }
    }
    return out;
  }

  double data_residual(const std::vector<cd>& x, const RayData& d) const {
    const std::size_t n = static_cast<std::size_t>(ops->size());
    RayData jd;
    if (!oneform) {
      ScalarField f(rt->grid());
      f.v.assign(x.begin(), x.end());
      jd = rt->forward(f);
    } else {
      CovectorField f(rt->grid());
      f.c1.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
      f.c2.assign(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
      jd = rt->forward(f);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < jd.values.size(); ++i)
      s += data_w[i] * std::norm(jd.values[i] - d.values[i]);
    return std::sqrt(s);
  }
};

// Returns iterations taken; sets *converged. Sweep members may legitimately
// stall at the iteration cap; only the selected solution must converge.
int cg_solve(const NormalSystem& sys, const std::vector<cd>& rhs, double tol, int max_iter,
             const std::vector<double>& vol, std::vector<cd>* x, bool* converged) {
  const std::size_t n = rhs.size();
  const std::size_t nv = vol.size();
  // warm start from the caller-provided iterate (continuation over tau)
  if (x->size() != n) x->assign(n, cd{});
  std::vector<cd> r(n), ap(n), z(n);
  sys.apply(*x, &ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
  auto wdot = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
    cd acc{};
    for (std::size_t i = 0; i < n; ++i) acc += vol[i % nv] * std::conj(a[i]) * b[i];
    return acc;
  };
  auto precond = [&](const std::vector<cd>& a, std::vector<cd>* out) {
    out->resize(n);
    for (std::size_t i = 0; i < n; ++i) (*out)[i] = sys.inv_diag[i] * a[i];
  };
  precond(r, &z);
  std::vector<cd> p = z;
  cd rz = wdot(r, z);
  double rhs_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) rhs_norm += vol[i % nv] * std::norm(rhs[i]);
  const double target = tol * std::sqrt(rhs_norm);
  int it = 0;
  *converged = false;
  for (; it < max_iter; ++it) {
    if (std::sqrt(std::abs(wdot(r, r))) <= target) {
      *converged = true;
      break;
    }
    sys.apply(p, &ap);
    const cd alpha = rz / wdot(p, ap);
    simd::kernels().zaxpy(n, alpha, p.data(), x->data());
    simd::kernels().zaxpy(n, -alpha, ap.data(), r.data());
    precond(r, &z);
    const cd rz_new = wdot(r, z);
    simd::kernels().zxpay(n, rz_new / rz, z.data(), p.data());
    rz = rz_new;
  }
  return it;
}

// Corner of the L-curve (log residual, log norm) by discrete curvature.
std::size_t lcurve_corner(const std::vector<double>& res, const std::vector<double>& nrm) {
  const std::size_t n = res.size();
  if (n < 3) return n - 1;
  std::size_t best = n - 1;
  double best_k = -1e300;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x0 = std::log(std::max(res[i - 1], 1e-300)), y0 = std::log(std::max(nrm[i - 1], 1e-300));
    const double x1 = std::log(std::max(res[i], 1e-300)), y1 = std::log(std::max(nrm[i], 1e-300));
    const double x2 = std::log(std::max(res[i + 1], 1e-300)), y2 = std::log(std::max(nrm[i + 1], 1e-300));
    const double dx1 = x1 - x0, dy1 = y1 - y0, dx2 = x2 - x1, dy2 = y2 - y1;
    const double cross = dx1 * dy2 - dy1 * dx2;
    const double l1 = std::hypot(dx1, dy1), l2 = std::hypot(dx2, dy2);
    if (l1 < 1e-14 || l2 < 1e-14) continue;
    // traversing tau from large to small runs left/up; the corner turns
    // clockwise, i.e. has negative cross product
    const double k = -2.0 * cross / (l1 * l2 * std::hypot(dx1 + dx2, dy1 + dy2));
    if (k > best_k) {
      best_k = k;
      best = i;
    }
  }
  // a flat curve (noiseless data) has no distinguished corner; prefer the
  // least-regularized solve
  if (best_k <= 0.5) return n - 1;
  return best;
}

std::vector<cd> run_sweep(const NormalSystem& base, const RayData& d, const InvertOptions& opt,
                          InvertReport* report, int* iterations) {
  std::vector<double> taus = opt.tau_grid;
  std::sort(taus.begin(), taus.end(), std::greater<double>());
  const std::vector<double>& vol = base.ops->volume_weights();
  std::vector<std::vector<cd>> sols(taus.size());
  std::vector<double> res(taus.size()), nrm(taus.size());
  std::vector<char> ok(taus.size(), 0);
  std::vector<cd> rhs = base.rhs(d);
  int its_total = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    NormalSystem sys = base;
    sys.tau = taus[i];
    sys.build_preconditioner();
    if (i > 0) sols[i] = sols[i - 1];
    bool conv = false;
    its_total += cg_solve(sys, rhs, opt.cg_tol, opt.max_iterations, vol, &sols[i], &conv);
    ok[i] = conv ? 1 : 0;
    res[i] = sys.data_residual(sols[i], d);
    Dof df{sols[i], &vol};
    nrm[i] = df.norm();
  }
  // the corner search runs over the converged sweep members only
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (ok[i]) cand.push_back(i);
  if (cand.empty())
    fail(ErrorKind::Conditioning,
         "no regularization level converged within " + std::to_string(opt.max_iterations) +
             " CG iterations (best data residual " + std::to_string(res.back()) + ")");
  std::vector<double> cres(cand.size()), cnrm(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    cres[i] = res[cand[i]];
    cnrm[i] = nrm[cand[i]];
  }
  const std::size_t pick = cand[lcurve_corner(cres, cnrm)];
  if (report) {
    report->tau = taus[pick];
    report->iterations = its_total;
    report->data_residual = res[pick];
    report->solution_norm = nrm[pick];
    report->sweep_residuals = res;
    report->sweep_norms = nrm;
  }
  if (iterations) *iterations = its_total;
  return sols[pick];
}

}  // namespace

ScalarField invert_xray_function(const RayTransform& rt, const Operators& ops, const RayData& d,
                                 const InvertOptions& opt, InvertReport* report) {
  NormalSystem sys{&rt, &ops, false, 0.0, {}};
  sys.data_w.resize(d.values.size());
  for (std::size_t i = 0; i < sys.data_w.size(); ++i)
    sys.data_w[i] = d.bundle.rays[i].weight * d.bundle.rays[i].mu;
  int its = 0;
  std::vector<cd> x = run_sweep(sys, d, opt, report, &its);
  ScalarField out(rt.grid());
  out.v.assign(x.begin(), x.end());
  return out;
}

CovectorField invert_xray_oneform(const RayTransform& rt, const PoissonSolver& poisson,
                                  const RayData& d, const InvertOptions& opt,
                                  InvertReport* report) {
  const Operators& ops = poisson.ops();
  NormalSystem sys{&rt, &ops, true, 0.0, {}};
  sys.data_w.resize(d.values.size());
  for (std::size_t i = 0; i < sys.data_w.size(); ++i)
    sys.data_w[i] = d.bundle.rays[i].weight * d.bundle.rays[i].mu;
  int its = 0;
  std::vector<cd> x = run_sweep(sys, d, opt, report, &its);
  const std::size_t n = static_cast<std::size_t>(ops.size());
  CovectorField raw(rt.grid());
  raw.c1.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  raw.c2.assign(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
  return solenoidal_decompose(poisson, raw).solenoidal;
}

}  // namespace geotomo
