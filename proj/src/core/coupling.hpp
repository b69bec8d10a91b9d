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

#pragma once

#include <functional>
#include <memory>
#include <string>

namespace adaptnet {

// Coupling pair (Gamma, H) driving the adaptive network:
//   phase equation uses Gamma(theta_j - theta_i),
//   weight equation relaxes a_ij towards H(theta_i, theta_j).
// Both functions are 2pi-periodic in every argument. Derivatives are optional
// beyond what derivative_order() reports; asking for a missing one throws
// CapabilityError.
class Coupling {
 public:
  virtual ~Coupling() = default;

  // 0: values only; 1: adds Gamma', H_u, H_v; 2: adds Gamma'', H_uu, H_uv, H_vv.
  virtual int derivative_order() const noexcept = 0;
  virtual std::string kind() const = 0;

  virtual double gamma(double phi) const = 0;
  virtual double gamma_d1(double phi) const;
  virtual double gamma_d2(double phi) const;

  virtual double h(double u, double v) const = 0;
  virtual double h_du(double u, double v) const;
  virtual double h_dv(double u, double v) const;
  virtual double h_duu(double u, double v) const;
  virtual double h_duv(double u, double v) const;
  virtual double h_dvv(double u, double v) const;

  void require_order(int order, const char* who) const;
};

using CouplingPtr = std::shared_ptr<const Coupling>;

// Gamma(phi) = sin(phi), H(u, v) = alpha + cos(u - v), all derivatives in closed form.
class KuramotoCoupling final : public Coupling {
 public:
  explicit KuramotoCoupling(double alpha);

  double alpha() const noexcept { return alpha_; }

  int derivative_order() const noexcept override { return 2; }
  std::string kind() const override { return "kuramoto"; }

  double gamma(double phi) const override;
  double gamma_d1(double phi) const override;
  double gamma_d2(double phi) const override;
  double h(double u, double v) const override;
  double h_du(double u, double v) const override;
  double h_dv(double u, double v) const override;
  double h_duu(double u, double v) const override;
  double h_duv(double u, double v) const override;
  double h_dvv(double u, double v) const override;

 private:
  double alpha_;
};

CouplingPtr make_kuramoto(double alpha);

// Coupling assembled from callables. Leave a derivative empty when it is not
// available; derivative_order() is the highest order that is complete.
struct CouplingFunctions {
  std::function<double(double)> gamma;
  std::function<double(double)> gamma_d1;
  std::function<double(double)> gamma_d2;
  std::function<double(double, double)> h;
  std::function<double(double, double)> h_du;
  std::function<double(double, double)> h_dv;
  std::function<double(double, double)> h_duu;
  std::function<double(double, double)> h_duv;
  std::function<double(double, double)> h_dvv;
};

class FunctionCoupling final : public Coupling {
 public:
  FunctionCoupling(CouplingFunctions fns, std::string kind = "custom");

  int derivative_order() const noexcept override { return order_; }
  std::string kind() const override { return kind_; }

  double gamma(double phi) const override { return fns_.gamma(phi); }
  double gamma_d1(double phi) const override;
  double gamma_d2(double phi) const override;
  double h(double u, double v) const override { return fns_.h(u, v); }
  double h_du(double u, double v) const override;
  double h_dv(double u, double v) const override;
  double h_duu(double u, double v) const override;
  double h_duv(double u, double v) const override;
  double h_dvv(double u, double v) const override;

 private:
  CouplingFunctions fns_;
  std::string kind_;
  int order_;
};

// Wraps a coupling so every derivative up to order 2 is available. Missing
// derivatives are central finite differences of the next-lower-order function
// (first derivatives: step 1e-5; second derivatives from values only: step 1e-4).
CouplingPtr with_fd_derivatives(CouplingPtr base);

// Kuramoto H with Gamma == 0: phases evolve at their natural frequencies and
// weights relax independently towards H. Used for pure layer-problem studies.
CouplingPtr make_decoupled_kuramoto(double alpha);

struct CouplingCheck {
  double max_periodicity_error = 0.0;
  double max_derivative_error = 0.0;
};

// Samples periodicity and derivative consistency (central FD of the next-lower
// order, given step) on a grid x grid lattice over [0, 2pi)^2.
CouplingCheck verify_coupling(const Coupling& c, int grid = 16, double fd_step = 1e-5);

}  // namespace adaptnet
