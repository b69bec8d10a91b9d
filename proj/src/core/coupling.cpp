/*
 * Copyright 2026 The adaptnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "coupling.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "phase.hpp"

namespace adaptnet {

namespace {

[[noreturn]] void missing(const char* what) {
  throw CapabilityError(std::string("coupling does not provide ") + what);
}

constexpr double kFirstStep = 1e-5;
constexpr double kSecondStep = 1e-4;

}  // namespace

double Coupling::gamma_d1(double) const { missing("gamma_d1"); }
double Coupling::gamma_d2(double) const { missing("gamma_d2"); }
double Coupling::h_du(double, double) const { missing("h_du"); }
double Coupling::h_dv(double, double) const { missing("h_dv"); }
double Coupling::h_duu(double, double) const { missing("h_duu"); }
double Coupling::h_duv(double, double) const { missing("h_duv"); }
double Coupling::h_dvv(double, double) const { missing("h_dvv"); }

void Coupling::require_order(int order, const char* who) const {
  if (derivative_order() < order)
    throw CapabilityError(std::string(who) + ": coupling '" + kind() + "' provides derivatives up to order " +
                          std::to_string(derivative_order()) + ", needs " + std::to_string(order));
}

// --- Kuramoto ---------------------------------------------------------------

KuramotoCoupling::KuramotoCoupling(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha)) throw ContractError("make_kuramoto: alpha must be finite");
}

double KuramotoCoupling::gamma(double phi) const { return std::sin(phi); }
double KuramotoCoupling::gamma_d1(double phi) const { return std::cos(phi); }
double KuramotoCoupling::gamma_d2(double phi) const { return -std::sin(phi); }
double KuramotoCoupling::h(double u, double v) const { return alpha_ + std::cos(u - v); }
double KuramotoCoupling::h_du(double u, double v) const { return -std::sin(u - v); }
double KuramotoCoupling::h_dv(double u, double v) const { return std::sin(u - v); }
double KuramotoCoupling::h_duu(double u, double v) const { return -std::cos(u - v); }
double KuramotoCoupling::h_duv(double u, double v) const { return std::cos(u - v); }
double KuramotoCoupling::h_dvv(double u, double v) const { return -std::cos(u - v); }

CouplingPtr make_kuramoto(double alpha) { return std::make_shared<KuramotoCoupling>(alpha); }

// --- Function-backed ----------------------------------------------------------

FunctionCoupling::FunctionCoupling(CouplingFunctions fns, std::string kind)
    : fns_(std::move(fns)), kind_(std::move(kind)) {
  if (!fns_.gamma || !fns_.h) throw ContractError("FunctionCoupling: gamma and h are required");
  const bool first = fns_.gamma_d1 && fns_.h_du && fns_.h_dv;
  const bool second = fns_.gamma_d2 && fns_.h_duu && fns_.h_duv && fns_.h_dvv;
  order_ = first ? (second ? 2 : 1) : 0;
}

double FunctionCoupling::gamma_d1(double phi) const {
  if (!fns_.gamma_d1) missing("gamma_d1");
  return fns_.gamma_d1(phi);
}
double FunctionCoupling::gamma_d2(double phi) const {
  if (!fns_.gamma_d2) missing("gamma_d2");
  return fns_.gamma_d2(phi);
}
double FunctionCoupling::h_du(double u, double v) const {
  if (!fns_.h_du) missing("h_du");
  return fns_.h_du(u, v);
}
double FunctionCoupling::h_dv(double u, double v) const {
  if (!fns_.h_dv) missing("h_dv");
  return fns_.h_dv(u, v);
}
double FunctionCoupling::h_duu(double u, double v) const {
  if (!fns_.h_duu) missing("h_duu");
  return fns_.h_duu(u, v);
}
double FunctionCoupling::h_duv(double u, double v) const {
  if (!fns_.h_duv) missing("h_duv");
  return fns_.h_duv(u, v);
}
double FunctionCoupling::h_dvv(double u, double v) const {
  if (!fns_.h_dvv) missing("h_dvv");
  return fns_.h_dvv(u, v);
}

// --- FD completion ------------------------------------------------------------

namespace {

class FdCoupling final : public Coupling {
 public:
  explicit FdCoupling(CouplingPtr base) : base_(std::move(base)), base_order_(base_->derivative_order()) {}

  int derivative_order() const noexcept override { return 2; }
  std::string kind() const override { return base_->kind() + "+fd"; }

  double gamma(double phi) const override { return base_->gamma(phi); }
  double h(double u, double v) const override { return base_->h(u, v); }

  double gamma_d1(double x) const override {
    if (base_order_ >= 1) return base_->gamma_d1(x);
    const double s = kFirstStep;
    return (base_->gamma(x + s) - base_->gamma(x - s)) / (2 * s);
  }
  double h_du(double u, double v) const override {
    if (base_order_ >= 1) return base_->h_du(u, v);
    const double s = kFirstStep;
    return (base_->h(u + s, v) - base_->h(u - s, v)) / (2 * s);
  }
  double h_dv(double u, double v) const override {
    if (base_order_ >= 1) return base_->h_dv(u, v);
    const double s = kFirstStep;
    return (base_->h(u, v + s) - base_->h(u, v - s)) / (2 * s);
  }

  double gamma_d2(double x) const override {
    if (base_order_ >= 2) return base_->gamma_d2(x);
    if (base_order_ >= 1) {
      const double s = kFirstStep;
      return (base_->gamma_d1(x + s) - base_->gamma_d1(x - s)) / (2 * s);
    }
    const double s = kSecondStep;
    return (base_->gamma(x + s) - 2 * base_->gamma(x) + base_->gamma(x - s)) / (s * s);
  }
  double h_duu(double u, double v) const override {
    if (base_order_ >= 2) return base_->h_duu(u, v);
    if (base_order_ >= 1) {
      const double s = kFirstStep;
      return (base_->h_du(u + s, v) - base_->h_du(u - s, v)) / (2 * s);
    }
    const double s = kSecondStep;
    return (base_->h(u + s, v) - 2 * base_->h(u, v) + base_->h(u - s, v)) / (s * s);
  }
  double h_dvv(double u, double v) const override {
    if (base_order_ >= 2) return base_->h_dvv(u, v);
    if (base_order_ >= 1) {
      const double s = kFirstStep;
      return (base_->h_dv(u, v + s) - base_->h_dv(u, v - s)) / (2 * s);
    }
    const double s = kSecondStep;
    return (base_->h(u, v + s) - 2 * base_->h(u, v) + base_->h(u, v - s)) / (s * s);
  }
  double h_duv(double u, double v) const override {
    if (base_order_ >= 2) return base_->h_duv(u, v);
    if (base_order_ >= 1) {
      const double s = kFirstStep;
      return (base_->h_du(u, v + s) - base_->h_du(u, v - s)) / (2 * s);
    }
    const double s = kSecondStep;
    return (base_->h(u + s, v + s) - base_->h(u + s, v - s) - base_->h(u - s, v + s) + base_->h(u - s, v - s)) /
           (4 * s * s);
  }

 private:
  CouplingPtr base_;
  int base_order_;
};

}  // namespace

CouplingPtr with_fd_derivatives(CouplingPtr base) {
  if (!base) throw ContractError("with_fd_derivatives: null coupling");
  if (base->derivative_order() >= 2) return base;
  return std::make_shared<FdCoupling>(std::move(base));
}

CouplingPtr make_decoupled_kuramoto(double alpha) {
  if (!std::isfinite(alpha)) throw ContractError("make_decoupled_kuramoto: alpha must be finite");
  CouplingFunctions f;
  f.gamma = [](double) { return 0.0; };
  f.gamma_d1 = [](double) { return 0.0; };
  f.gamma_d2 = [](double) { return 0.0; };
  f.h = [alpha](double u, double v) { return alpha + std::cos(u - v); };
  f.h_du = [](double u, double v) { return -std::sin(u - v); };
  f.h_dv = [](double u, double v) { return std::sin(u - v); };
  f.h_duu = [](double u, double v) { return -std::cos(u - v); };
  f.h_duv = [](double u, double v) { return std::cos(u - v); };
  f.h_dvv = [](double u, double v) { return -std::cos(u - v); };
  return std::make_shared<FunctionCoupling>(std::move(f), "kuramoto-decoupled");
}

CouplingCheck verify_coupling(const Coupling& c, int grid, double fd_step) {
  if (grid < 1 || !(fd_step > 0.0)) throw ContractError("verify_coupling: bad grid or step");
  CouplingCheck out;
  const int order = c.derivative_order();
  const double s = fd_step;
  auto track = [](double& acc, double a, double b) { acc = std::max(acc, std::fabs(a - b)); };

  for (int p = 0; p < grid; ++p) {
    const double u = kTwoPi * p / grid;
    track(out.max_periodicity_error, c.gamma(u + kTwoPi), c.gamma(u));
    if (order >= 1) {
      track(out.max_derivative_error, c.gamma_d1(u), (c.gamma(u + s) - c.gamma(u - s)) / (2 * s));
    }
    if (order >= 2) {
      track(out.max_derivative_error, c.gamma_d2(u), (c.gamma_d1(u + s) - c.gamma_d1(u - s)) / (2 * s));
    }
    for (int q = 0; q < grid; ++q) {
      const double v = kTwoPi * q / grid;
      track(out.max_periodicity_error, c.h(u + kTwoPi, v), c.h(u, v));
      track(out.max_periodicity_error, c.h(u, v + kTwoPi), c.h(u, v));
      if (order >= 1) {
        track(out.max_derivative_error, c.h_du(u, v), (c.h(u + s, v) - c.h(u - s, v)) / (2 * s));
        track(out.max_derivative_error, c.h_dv(u, v), (c.h(u, v + s) - c.h(u, v - s)) / (2 * s));
      }
      if (order >= 2) {
        track(out.max_derivative_error, c.h_duu(u, v), (c.h_du(u + s, v) - c.h_du(u - s, v)) / (2 * s));
        track(out.max_derivative_error, c.h_duv(u, v), (c.h_du(u, v + s) - c.h_du(u, v - s)) / (2 * s));
        track(out.max_derivative_error, c.h_dvv(u, v), (c.h_dv(u, v + s) - c.h_dv(u, v - s)) / (2 * s));
      }
    }
  }
  return out;
}

}  // namespace adaptnet
