// SPDX-License-Identifier: Apache-2.0
#include "krzyz/caratheodory.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <optional>

#include "krzyz/error.hpp"
#include "krzyz/polynomial.hpp"

namespace krzyz {

namespace {

using Index = Eigen::Index;

void check_h0(const CoeffVec& h, double tol) {
  if (h.order() < 1) throw Error(Errc::domain, "need order n >= 1");
  const cplx h0 = h[0];
  if (!(h0.real() > 0.0)) throw Error(Errc::domain, "h_0 must be positive");
  if (std::abs(h0.imag()) > tol * h0.real()) throw Error(Errc::domain, "h_0 must be real");
}

// Toeplitz matrix divided by 2 h_0, so the diagonal is exactly 1.
Eigen::MatrixXcd normalized_toeplitz(const CoeffVec& h, std::size_t k) {
  const double c0 = 2.0 * h[0].real();
  const Index n = static_cast<Index>(k + 1);
  Eigen::MatrixXcd a(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const Index d = c - r;
      if (d == 0) {
        a(r, c) = 1.0;
      } else if (d > 0) {
        a(r, c) = h[static_cast<std::size_t>(d)] / c0;
      } else {
        a(r, c) = std::conj(h[static_cast<std::size_t>(-d)]) / c0;
      }
    }
  }
  return a;
}

double checked_real_det(const cplx& det) {
  if (std::abs(det.imag()) > 1e-10 * std::abs(det) + 1e-12) {
    throw Error(Errc::numeric, "Toeplitz minor has a non-negligible imaginary part");
  }
  return det.real();
}

struct Ldl {
  std::vector<double> pivots;         // d_0..d_{j-1}, all > tol (d_0 = 1)
  std::optional<std::size_t> stall;   // first j >= 1 with d_j <= tol
  Eigen::MatrixXcd schur;             // complement at `stall`, empty otherwise
};

Ldl factor(const Eigen::MatrixXcd& a, double tol) {
  const Index n = a.rows();
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Identity(n, n);
  Ldl out;
  for (Index j = 0; j < n; ++j) {
    cplx dj = a(j, j);
    for (Index k = 0; k < j; ++k) dj -= std::norm(l(j, k)) * out.pivots[static_cast<std::size_t>(k)];
    if (j > 0 && !(dj.real() > tol)) {
      out.stall = static_cast<std::size_t>(j);
      const Index rest = n - j;
      out.schur = a.bottomRightCorner(rest, rest);
      for (Index k = 0; k < j; ++k) {
        const double dk = out.pivots[static_cast<std::size_t>(k)];
        out.schur -= dk * l.block(j, k, rest, 1) * l.block(j, k, rest, 1).adjoint();
      }
      return out;
    }
    out.pivots.push_back(dj.real());
    for (Index i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k)) * out.pivots[static_cast<std::size_t>(k)];
      l(i, j) = s / dj.real();
    }
  }
  return out;
}

}  // namespace

std::string Classification::to_string() const {
  switch (kind) {
    case Kind::interior: return "Interior";
    case Kind::boundary: return "Boundary(" + std::to_string(rank) + ")";
    case Kind::outside: return "Outside";
  }
  return "Outside";
}

std::vector<cplx> toeplitz_block(const CoeffVec& h, std::size_t k) {
  if (k > h.order()) throw Error(Errc::order_mismatch, "toeplitz_block: k exceeds order");
  const std::size_t n = k + 1;
  std::vector<cplx> out(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c == r) {
        out[r * n + c] = 2.0 * h[0];
      } else if (c > r) {
        out[r * n + c] = h[c - r];
      } else {
        out[r * n + c] = std::conj(h[r - c]);
      }
    }
  }
  return out;
}

MinorReport toeplitz_minors(const CoeffVec& h, double tol) {
  check_h0(h, tol);
  const std::size_t n = h.order();
  const double c0 = 2.0 * h[0].real();
  const Eigen::MatrixXcd a = normalized_toeplitz(h, n);
  const Ldl ldl = factor(a, tol);

  MinorReport report;
  report.tol = tol;
  report.minors.resize(n);
  double mu = 1.0;  // normalized M_0
  for (std::size_t k = 1; k <= n; ++k) {
    if (!ldl.stall || k < *ldl.stall) {
      mu *= ldl.pivots[k];
    } else {
      const Index sz = static_cast<Index>(k + 1);
      mu = checked_real_det(a.topLeftCorner(sz, sz).fullPivLu().determinant());
    }
    report.minors[k - 1] = mu * std::pow(c0, static_cast<double>(k + 1));
  }

  if (!ldl.stall) {
    report.classification = Classification::interior();
  } else {
    const double lead = ldl.schur(0, 0).real();
    const double worst = ldl.schur.cwiseAbs().maxCoeff();
    if (lead < -tol || worst > tol) {
      report.classification = Classification::outside();
    } else {
      report.classification = Classification::boundary(*ldl.stall);
    }
  }
  return report;
}

Classification membership(const CoeffVec& h, double tol) {
  return toeplitz_minors(h, tol).classification;
}

namespace {

// Real-stacked moments (h_0, Re h_1, Im h_1, ..., Re h_n, Im h_n).
Eigen::VectorXd stacked_moments(const CoeffVec& h) {
  const std::size_t n = h.order();
  Eigen::VectorXd b(static_cast<Index>(2 * n + 1));
  b(0) = h[0].real();
  for (std::size_t j = 1; j <= n; ++j) {
    b(static_cast<Index>(2 * j - 1)) = h[j].real();
    b(static_cast<Index>(2 * j)) = h[j].imag();
  }
  return b;
}

Eigen::VectorXd model_moments(const std::vector<double>& alpha, const std::vector<double>& phi,
                              std::size_t n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Index>(2 * n + 1));
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    out(0) += alpha[k];
    for (std::size_t j = 1; j <= n; ++j) {
      const double ang = static_cast<double>(j) * phi[k];
      out(static_cast<Index>(2 * j - 1)) += 2.0 * alpha[k] * std::cos(ang);
      out(static_cast<Index>(2 * j)) += 2.0 * alpha[k] * std::sin(ang);
    }
  }
  return out;
}

void gauss_newton(std::vector<double>& alpha, std::vector<double>& phi, const Eigen::VectorXd& b,
                  std::size_t n) {
  const std::size_t m = alpha.size();
  const Index rows = static_cast<Index>(2 * n + 1);
  double best = (model_moments(alpha, phi, n) - b).norm();
  for (int it = 0; it < 10 && best > 0.0; ++it) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, static_cast<Index>(2 * m));
    for (std::size_t k = 0; k < m; ++k) {
      const Index ca = static_cast<Index>(2 * k);
      jac(0, ca) = 1.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double c = std::cos(jd * phi[k]);
        const double s = std::sin(jd * phi[k]);
        jac(static_cast<Index>(2 * j - 1), ca) = 2.0 * c;
        jac(static_cast<Index>(2 * j), ca) = 2.0 * s;
        jac(static_cast<Index>(2 * j - 1), ca + 1) = -2.0 * alpha[k] * jd * s;
        jac(static_cast<Index>(2 * j), ca + 1) = 2.0 * alpha[k] * jd * c;
      }
    }
    const Eigen::VectorXd r = model_moments(alpha, phi, n) - b;
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
    std::vector<double> na(alpha), np(phi);
    for (std::size_t k = 0; k < m; ++k) {
      na[k] += step(static_cast<Index>(2 * k));
      np[k] += step(static_cast<Index>(2 * k + 1));
    }
    const double val = (model_moments(na, np, n) - b).norm();
    if (!(val < best)) break;
    alpha.swap(na);
    phi.swap(np);
    best = val;
  }
}

}  // namespace

AtomSet recover_atoms(const CoeffVec& h, const RecoverOptions& opts) {
  const MinorReport report = toeplitz_minors(h, opts.tol);
  if (report.classification.kind != Classification::Kind::boundary) {
    throw Error(Errc::not_on_boundary,
                "recover_atoms: classification is " + report.classification.to_string());
  }
  const std::size_t m = report.classification.rank;
  const std::size_t n = h.order();

  // Null vector of the singular (m+1)-block; its polynomial vanishes at e^{i phi_k}.
  const Eigen::MatrixXcd block = normalized_toeplitz(h, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block);
  if (eig.info() != Eigen::Success) throw Error(Errc::numeric, "recover_atoms: eigensolver failed");
  const Eigen::VectorXcd u = eig.eigenvectors().col(0);
  std::vector<cplx> poly(u.data(), u.data() + u.size());
  const std::vector<cplx> roots = poly_roots(poly);
  if (roots.size() != m) throw Error(Errc::numeric, "recover_atoms: null polynomial lost degree");

  std::vector<double> phi(m);
  for (std::size_t k = 0; k < m; ++k) phi[k] = wrap_angle(std::arg(roots[k]));

  // Weights from the real-stacked moment system.
  const Eigen::VectorXd b = stacked_moments(h);
  Eigen::MatrixXd v(static_cast<Index>(2 * n + 1), static_cast<Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const Index c = static_cast<Index>(k);
    v(0, c) = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double ang = static_cast<double>(j) * phi[k];
      v(static_cast<Index>(2 * j - 1), c) = 2.0 * std::cos(ang);
      v(static_cast<Index>(2 * j), c) = 2.0 * std::sin(ang);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond <= opts.max_condition)) {
    throw Error(Errc::conditioning, "recover_atoms: moment system condition " + std::to_string(cond));
  }
  const Eigen::VectorXd w = svd.solve(b);
  std::vector<double> alpha(w.data(), w.data() + w.size());

  gauss_newton(alpha, phi, b, n);

  std::vector<Atom> atoms(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!(alpha[k] > 0.0)) throw Error(Errc::numeric, "recover_atoms: non-positive weight");
    atoms[k] = {alpha[k], phi[k]};
  }
  AtomSet out(std::move(atoms));

  const CoeffVec back = herglotz_coeffs(out, n);
  for (std::size_t j = 0; j <= n; ++j) {
    if (std::abs(back[j] - h[j]) > opts.reproduce_tol * h[0].real()) {
      throw Error(Errc::numeric, "recover_atoms: recovered atoms do not reproduce h");
    }
  }
  return out;
}

}  // namespace krzyz
