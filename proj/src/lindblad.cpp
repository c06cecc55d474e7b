// Copyright 2026 The hmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hmaser/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hmaser {

void MasterEquation::validate() const {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "master equation dimension must be >= 1");
  if (gain_rate < 0.0) fail(ErrorCode::InvalidArgument, "gain rate must be >= 0");
  for (const Matrix& k : gain_kraus) {
    if (k.rows() != dim || k.cols() != dim) fail(ErrorCode::InvalidDimension, "Kraus operator size mismatch");
  }
  for (const DissipatorTerm& t : terms) {
    if (t.x.rows() != dim || t.y.rows() != dim) fail(ErrorCode::InvalidDimension, "dissipator size mismatch");
  }
}

SqueezedBath SqueezedBath::from_squeezing(double xi, double phi) {
  if (!(xi >= 0.0)) fail(ErrorCode::InvalidArgument, "squeezing amplitude must be >= 0");
  const double sh = std::sinh(xi);
  return {sh * sh, -std::exp(kI * phi) * sh * std::cosh(xi)};
}

const char* to_string(SteadyStateMethod m) {
  return m == SteadyStateMethod::DirectSolve ? "direct-solve" : "time-march";
}

double phonon_stationary_mean(const SystemParams& p, double tau) {
  if (!(p.kappa_b > 0.0)) fail(ErrorCode::InvalidArgument, "kappa_b must be positive for a phonon steady state");
  const GainCoefficients gc = gain_coefficients(p, tau);
  return 2.0 * p.lambda() * p.r * gc.b_coeff / p.kappa_b;
}

namespace {

Matrix shifted_destroy(int dim, Complex shift) {
  Matrix c = destroy(dim).matrix();
  c.diagonal().array() += shift;
  return c;
}

}  // namespace

MasterEquation phonon_thermal_me(const SystemParams& p, double tau, int mech_dim, Complex frame_shift) {
  p.validate();
  MasterEquation me;
  me.dim = mech_dim;
  me.gain_rate = p.r;
  me.gain_kraus = phonon_gain_kraus(p, tau, mech_dim);
  me.frame_shift = frame_shift;
  const Matrix c = shifted_destroy(mech_dim, frame_shift);
  const Matrix cd = c.adjoint();
  const double half_k = 0.5 * p.kappa_b;
  me.terms.push_back({c, cd, half_k * (1.0 + p.n_th)});
  me.terms.push_back({cd, c, half_k * p.n_th});
  me.validate();
  return me;
}

// Zero-temperature squeezed reservoir; p.n_th does not enter.
MasterEquation phonon_squeezed_me(const SystemParams& p, double tau, int mech_dim, Complex frame_shift) {
  p.validate();
  const SqueezedBath bath = SqueezedBath::from_squeezing(p.xi, p.phi);
  MasterEquation me;
  me.dim = mech_dim;
  me.gain_rate = p.r;
  me.gain_kraus = phonon_gain_kraus(p, tau, mech_dim);
  me.frame_shift = frame_shift;
  const Matrix c = shifted_destroy(mech_dim, frame_shift);
  const Matrix cd = c.adjoint();
  const double half_k = 0.5 * p.kappa_b;
  me.terms.push_back({c, cd, half_k * (bath.n_sq + 1.0)});
  me.terms.push_back({cd, c, half_k * bath.n_sq});
  me.terms.push_back({cd, cd, half_k * bath.m_sq});
  me.terms.push_back({c, c, half_k * std::conj(bath.m_sq)});
  me.validate();
  return me;
}

MasterEquation photon_thermal_me(const SystemParams& p, PumpParameter theta, int cavity_dim) {
  p.validate();
  MasterEquation me;
  me.dim = cavity_dim;
  me.gain_rate = p.r;
  me.gain_kraus = cavity_gain_kraus(p, theta.tau(p), cavity_dim);
  me.phase_covariant = true;
  const Matrix a = destroy(cavity_dim).matrix();
  const Matrix ad = a.adjoint();
  const double half_k = 0.5 * p.kappa_a;
  me.terms.push_back({a, ad, half_k * (1.0 + p.n_th)});
  me.terms.push_back({ad, a, half_k * p.n_th});
  me.validate();
  return me;
}

Matrix apply(const MasterEquation& me, const Matrix& rho) {
  if (rho.rows() != me.dim || rho.cols() != me.dim) fail(ErrorCode::InvalidDimension, "state size mismatch");
  Matrix out = -me.gain_rate * rho;
  for (const Matrix& k : me.gain_kraus) out.noalias() += me.gain_rate * (k * rho * k.adjoint());
  for (const DissipatorTerm& t : me.terms) {
    if (t.coef == 0.0) continue;
    const Matrix yx = t.y * t.x;
    out.noalias() += t.coef * (2.0 * (t.x * rho * t.y) - yx * rho - rho * yx);
  }
  return out;
}

namespace {

void check_single_mode(const DensityMatrix& rho, int dim) {
  if (rho.dims().size() != 1 || rho.dim() != dim) fail(ErrorCode::InvalidDimension, "expected a single-mode state");
}

}  // namespace

Matrix rhs_phonon_thermal(const DensityMatrix& rho, const SystemParams& p, double tau) {
  const int dim = static_cast<int>(rho.dim());
  check_single_mode(rho, dim);
  return hmaser::apply(phonon_thermal_me(p, tau, dim), rho.matrix());
}

Matrix rhs_photon_thermal(const DensityMatrix& rho, const SystemParams& p, PumpParameter theta) {
  const int dim = static_cast<int>(rho.dim());
  check_single_mode(rho, dim);
  return hmaser::apply(photon_thermal_me(p, theta, dim), rho.matrix());
}

Matrix rhs_phonon_squeezed(const DensityMatrix& rho, const SystemParams& p, double tau) {
  const int dim = static_cast<int>(rho.dim());
  check_single_mode(rho, dim);
  return hmaser::apply(phonon_squeezed_me(p, tau, dim), rho.matrix());
}

Matrix generator_matrix(const MasterEquation& me) {
  me.validate();
  const int n = me.dim;
  const Matrix id = Matrix::Identity(n, n);
  Matrix g = -me.gain_rate * Matrix::Identity(n * n, n * n);
  for (const Matrix& k : me.gain_kraus) g += me.gain_rate * kron(Matrix(k.conjugate()), k);
  for (const DissipatorTerm& t : me.terms) {
    if (t.coef == 0.0) continue;
    const Matrix yx = t.y * t.x;
    g += t.coef * (2.0 * kron(Matrix(t.y.transpose()), t.x) - kron(id, yx) - kron(Matrix(yx.transpose()), id));
  }
  return g;
}

namespace {

// Generator restricted to populations: g(i, j) = <i| L(|j><j|) |i>.
Eigen::MatrixXd population_generator(const MasterEquation& me) {
  const int n = me.dim;
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    Matrix e = Matrix::Zero(n, n);
    e(j, j) = 1.0;
    g.col(j) = hmaser::apply(me, e).diagonal().real();
  }
  return g;
}

struct NullSpace {
  Matrix rho;
  int null_dim = 0;
};

template <typename Mat>
NullSpace smallest_singular_vector(const Mat& g, int n, bool diagonal, double tol) {
  Eigen::BDCSVD<Mat> svd(g, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= tol * smax) ++null_dim;
  }
  const auto v = svd.matrixV().col(g.cols() - 1);
  Matrix rho;
  if (diagonal) {
    rho = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) rho(i, i) = v(i);
  } else {
    rho = Eigen::Map<const Matrix>(Vector(v).data(), n, n);
  }
  return {std::move(rho), null_dim};
}

double residual_of(const MasterEquation& me, const Matrix& rho) { return hmaser::apply(me, rho).norm(); }

Matrix normalize_state(Matrix rho) {
  const Complex tr = rho.trace();
  if (!(std::abs(tr) > 0.0)) fail(ErrorCode::Convergence, "steady-state vector has zero trace");
  rho /= tr;
  return 0.5 * (rho + rho.adjoint());
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Integrator {
 public:
  Integrator(const MasterEquation& me, const EvolveOptions& opts) : me_(me), opts_(opts), h_(opts.initial_step) {}

  // Advances y from t0 to t1 in place.
  void advance(Matrix& y, double t0, double t1) {
    if (t1 <= t0) return;
    double t = t0;
    if (!have_k1_) {
      k1_ = hmaser::apply(me_, y);
      have_k1_ = true;
    }
    const double span = t1 - t0;
    while (t < t1) {
      double h = std::min(h_, t1 - t);
      const bool last = (h >= t1 - t);
      if (h < opts_.min_step * std::max(1.0, span) && !last) {
        std::ostringstream os;
        os << "step size underflow at t = " << t << " (h = " << h << "); generator too stiff";
        fail(ErrorCode::Stiffness, os.str());
      }
      const Matrix& k1 = k1_;
      const Matrix k2 = hmaser::apply(me_, y + h * a21 * k1);
      const Matrix k3 = hmaser::apply(me_, y + h * (a31 * k1 + a32 * k2));
      const Matrix k4 = hmaser::apply(me_, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Matrix k5 = hmaser::apply(me_, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Matrix k6 = hmaser::apply(me_, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      Matrix y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      Matrix k7 = hmaser::apply(me_, y_new);
      const Matrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double scale = opts_.tolerance * (1.0 + std::max(max_abs(y), max_abs(y_new)));
      const double ratio = max_abs(err) / scale;
      if (!std::isfinite(ratio)) fail(ErrorCode::Stiffness, "integration produced non-finite values");
      const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      if (ratio <= 1.0) {
        t = last ? t1 : t + h;
        y = std::move(y_new);
        k1_ = std::move(k7);
        ++steps_;
        // A step clipped to hit t1 must not shrink the step carried forward.
        if (!last || factor < 1.0) h_ = h * factor;
      } else {
        h_ = h * factor;
        if (h_ < opts_.min_step * std::max(1.0, span)) {
          std::ostringstream os;
          os << "step size underflow at t = " << t << "; generator too stiff";
          fail(ErrorCode::Stiffness, os.str());
        }
      }
    }
  }

  long steps() const { return steps_; }

 private:
  const MasterEquation& me_;
  EvolveOptions opts_;
  double h_;
  Matrix k1_;
  bool have_k1_ = false;
  long steps_ = 0;
};

SteadyState time_march(const MasterEquation& me, Matrix y, const SteadyStateOptions& opts) {
  EvolveOptions eo;
  eo.tolerance = 1e-12;
  Integrator integ(me, eo);
  double t = 0.0;
  const double chunk = 50.0;
  // A march that stops improving (typically a truncation too small to hold
  // the state) is abandoned instead of running to the time limit.
  constexpr int kStallChunks = 8;
  double res = residual_of(me, y);
  double best = res;
  int stalled = 0;
  while (res >= opts.residual_tol) {
    if (t >= opts.march_time_limit || stalled >= kStallChunks) {
      std::ostringstream os;
      os << "time march did not reach residual " << opts.residual_tol << " (got " << res << " at t = " << t << ")";
      fail(ErrorCode::Convergence, os.str());
    }
    integ.advance(y, t, t + chunk);
    t += chunk;
    y = normalize_state(std::move(y));
    res = residual_of(me, y);
    if (res < 0.999 * best) {
      best = res;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  return {DensityMatrix(y), res, SteadyStateMethod::TimeMarch, me.frame_shift};
}

}  // namespace

SteadyState steady_state(const MasterEquation& me, const SteadyStateOptions& opts) {
  me.validate();
  const int n = me.dim;
  if (opts.method == SteadyStateMethod::TimeMarch) {
    Matrix vac = Matrix::Zero(n, n);
    vac(0, 0) = 1.0;
    return time_march(me, std::move(vac), opts);
  }

  NullSpace ns = me.phase_covariant
                     ? smallest_singular_vector(population_generator(me), n, true, opts.degeneracy_tol)
                     : smallest_singular_vector(generator_matrix(me), n, false, opts.degeneracy_tol);
  if (ns.null_dim > 1) {
    std::ostringstream os;
    os << "steady state is not unique: null space of the generator has dimension " << ns.null_dim;
    fail(ErrorCode::DegenerateSteadyState, os.str());
  }
  Matrix rho = normalize_state(std::move(ns.rho));
  const double res = residual_of(me, rho);
  if (res < opts.residual_tol) {
    try {
      return {DensityMatrix(rho), res, SteadyStateMethod::DirectSolve, me.frame_shift};
    } catch (const Error& e) {
      if (!opts.allow_fallback) throw;
    }
  } else if (!opts.allow_fallback) {
    std::ostringstream os;
    os << "direct steady-state solve left residual " << res;
    fail(ErrorCode::Convergence, os.str());
  }
  return time_march(me, std::move(rho), opts);
}

TimeSeries evolve_me(const MasterEquation& me, const DensityMatrix& rho0, std::vector<double> sample_times,
                     const std::vector<ObservableHook>& hooks, const EvolveOptions& opts) {
  me.validate();
  if (rho0.dim() != me.dim) fail(ErrorCode::InvalidDimension, "initial state size mismatch");
  std::sort(sample_times.begin(), sample_times.end());
  if (!sample_times.empty() && sample_times.front() < 0.0) {
    fail(ErrorCode::InvalidArgument, "sample times must be >= 0");
  }
  TimeSeries ts;
  Matrix y = rho0.matrix();
  Integrator integ(me, opts);
  double t = 0.0;
  for (double ts_k : sample_times) {
    integ.advance(y, t, ts_k);
    t = ts_k;
    std::vector<double> row;
    row.reserve(hooks.size());
    for (const ObservableHook& h : hooks) row.push_back(h(y));
    ts.times.push_back(t);
    ts.values.push_back(std::move(row));
  }
  ts.final_state = std::move(y);
  ts.steps = integ.steps();
  return ts;
}

SteadyState phonon_steady_state(const SystemParams& p, double tau, int mech_dim, PhononBath bath,
                                const SteadyStateOptions& opts) {
  const Complex shift = phonon_stationary_mean(p, tau);
  const MasterEquation me = bath == PhononBath::Thermal ? phonon_thermal_me(p, tau, mech_dim, shift)
                                                        : phonon_squeezed_me(p, tau, mech_dim, shift);
  return steady_state(me, opts);
}

DensityMatrix to_lab_frame(const DensityMatrix& rho, Complex shift, int lab_dim) {
  if (rho.dims().size() != 1) fail(ErrorCode::InvalidDimension, "frame change acts on a single mode");
  const int n = static_cast<int>(rho.dim());
  if (lab_dim <= 0) {
    const double reach = std::abs(shift) + std::sqrt(static_cast<double>(n)) + 6.0;
    lab_dim = std::max(n, static_cast<int>(std::ceil(reach * reach)));
  }
  if (shift == Complex{} && lab_dim == n) return rho;
  const Matrix d = displacement_elements(shift, lab_dim, n);
  return DensityMatrix::normalized(d * rho.matrix() * d.adjoint(), Dims{lab_dim});
}

}  // namespace hmaser
