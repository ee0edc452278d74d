#include "cdcurv/numeric_frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cdcurv/bundle.hpp"
#include "cdcurv/error.hpp"

namespace cdcurv {

namespace {

std::vector<double> sqrt_coeffs(const RadialSeries& a, int dim, const char* what) {
  if (a.order() < dim - 1)
    throw Error(ErrorCode::InsufficientOrder,
                std::string(what) + " needs " + std::to_string(dim) + " coefficients, has " +
                    std::to_string(a.order() + 1));
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (sgn(a[i]) < 0) throw Error(ErrorCode::NonpositiveCoefficient, std::string(what) + " has a negative coefficient");
    out[static_cast<std::size_t>(i)] = std::sqrt(a[i].get_d());
  }
  return out;
}

// sqrt(a_i) w^i for i < dim.
Eigen::VectorXcd kernel_column(const std::vector<double>& root, std::complex<double> w) {
  const auto dim = static_cast<Eigen::Index>(root.size());
  Eigen::VectorXcd col(dim);
  std::complex<double> p = 1;
  for (Eigen::Index i = 0; i < dim; ++i) {
    col(i) = root[static_cast<std::size_t>(i)] * p;
    p *= w;
  }
  return col;
}

// d/dw of kernel_column.
Eigen::VectorXcd kernel_column_derivative(const std::vector<double>& root, std::complex<double> w) {
  const auto dim = static_cast<Eigen::Index>(root.size());
  Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
  std::complex<double> p = 1;
  for (Eigen::Index i = 1; i < dim; ++i) {
    col(i) = root[static_cast<std::size_t>(i)] * static_cast<double>(i) * p;
    p *= w;
  }
  return col;
}

}  // namespace

NumericFrame numeric_frame_from_kernel(const DiagonalKernel& k, int dim, int curvature_order) {
  if (dim < 1) throw Error(ErrorCode::OutOfRange, "frame dimension must be positive");
  auto root = sqrt_coeffs(k.coeffs(), dim, "kernel");
  NumericFrame f;
  f.dim = dim;
  f.rank = 1;
  f.frame = [root = std::move(root)](std::complex<double> w) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(root.size()), 1);
    m.col(0) = kernel_column(root, w);
    return m;
  };
  f.trace_curvature = line_curvature(k.coeffs().truncated(std::min(k.order(), curvature_order + 1)));
  return f;
}

NumericFrame numeric_frame_fb2(const RadialSeries& h0, const RadialSeries& h1, int dim, int curvature_order) {
  if (dim < 1) throw Error(ErrorCode::OutOfRange, "frame dimension must be positive");
  auto r0 = sqrt_coeffs(h0, dim, "h0");
  auto r1 = sqrt_coeffs(h1, dim, "h1");
  NumericFrame f;
  f.dim = 2 * dim;
  f.rank = 2;
  f.frame = [r0 = std::move(r0), r1 = std::move(r1), dim](std::complex<double> w) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * dim, 2);
    m.col(0).head(dim) = kernel_column(r0, w);
    m.col(1).head(dim) = kernel_column_derivative(r0, w);
    m.col(1).tail(dim) = kernel_column(r1, w);
    return m;
  };
  const int n = std::min({h0.order(), h1.order(), curvature_order + 2});
  FrameSpecFB2 spec{h0.truncated(n), h1.truncated(n), std::nullopt, std::nullopt, std::nullopt};
  f.trace_curvature = det_trace_report(gram_fb2(spec)).trace_curv;
  return f;
}

Eigen::MatrixXcd frame_projection(const NumericFrame& f, std::complex<double> w) {
  const Eigen::MatrixXcd a = f.frame(w);
  const Eigen::MatrixXcd g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0) || lo < 1e-12 * hi) throw Error(ErrorCode::IllConditionedFrame, "frame Gram matrix is near singular");
  return a * g.ldlt().solve(a.adjoint());
}

HsCheck projection_hs_check(const NumericFrame& f, std::complex<double> w, double step) {
  if (std::abs(w) >= 1) throw Error(ErrorCode::OutOfRange, "w must lie in the open unit disk");
  if (!(step > 0)) throw Error(ErrorCode::OutOfRange, "step must be positive");
  const std::complex<double> i(0, 1);
  const Eigen::MatrixXcd dx = (frame_projection(f, w + step) - frame_projection(f, w - step)) / (2 * step);
  const Eigen::MatrixXcd dy = (frame_projection(f, w + i * step) - frame_projection(f, w - i * step)) / (2 * step);
  const Eigen::MatrixXcd dp = 0.5 * (dx - i * dy);
  HsCheck r;
  r.hs_sq = dp.squaredNorm();
  r.neg_trace_curv = -evaluate(f.trace_curvature, std::norm(w));
  r.gap = std::abs(r.hs_sq - r.neg_trace_curv);
  return r;
}

}  // namespace cdcurv
