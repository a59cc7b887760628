#include "heunqes/model.hpp"

#include <cmath>
#include <string>

#include "heunqes/error.hpp"

namespace heunqes {

double QuadrupoleTensor::trace() const noexcept {
  return entries[0][0] + entries[1][1] + entries[2][2];
}

double QuadrupoleTensor::asymmetry() const noexcept {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(entries[i][j] - entries[j][i]));
  return worst;
}

QuadrupoleTensor make_quadrupole_tensor(double magnitude) {
  QuadrupoleTensor t;
  const int r = static_cast<int>(Axis::rho);
  const int z = static_cast<int>(Axis::z);
  t.entries[r][z] = -magnitude;
  t.entries[z][r] = -magnitude;
  return t;
}

Matrix3 FieldConfig::electric_gradient() const noexcept {
  // E = (c x, c y, 0) in Cartesian form, so d_j E_k = c for j = k in the
  // transverse plane; the tensor is rotation invariant about z.
  Matrix3 g{};
  g[0][0] = electric_radial_coefficient;
  g[1][1] = electric_radial_coefficient;
  return g;
}

FieldConfig make_field_config(const PhysicalParams& params) {
  return FieldConfig{params.lambda / 2.0, {0.0, 0.0, 0.0}};
}

Vector3 effective_vector_potential_components(const PhysicalParams& params) {
  const QuadrupoleTensor t = make_quadrupole_tensor(params.quad);
  const Matrix3 grad = make_field_config(params).electric_gradient();

  // w_{kl} = sum_j M_kj d_j E_l : the "vector" M_k applied to E_l.
  Matrix3 w{};
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      for (int j = 0; j < 3; ++j) w[k][l] += t.entries[k][j] * grad[j][l];

  // (M x E)_i = eps_{ikl} w_{kl}, right-handed (rho, phi, z).
  return {w[1][2] - w[2][1], w[2][0] - w[0][2], w[0][1] - w[1][0]};
}

double effective_vector_potential(const PhysicalParams& params) {
  return effective_vector_potential_components(params)[static_cast<int>(Axis::phi)];
}

PhysicalParams validate(const PhysicalParams& params, bool require_coulomb) {
  if (!std::isfinite(params.mass) || !std::isfinite(params.quad) ||
      !std::isfinite(params.lambda) || !std::isfinite(params.eta) ||
      !std::isfinite(params.kz))
    throw Error(Errc::NonFiniteInput, "physical parameters must be finite");
  if (!(params.mass > 0.0))
    throw Error(Errc::NonPositiveMass,
                "mass must be positive, got " + std::to_string(params.mass));
  if (require_coulomb) {
    if (params.l == 0)
      throw Error(Errc::ZeroAngularMomentum,
                  "l = 0 removes the Coulomb-type term; quantization requires l != 0");
    if (params.coupling() == 0.0)
      throw Error(Errc::VanishingCoupling,
                  "M * lambda = 0 removes the Coulomb-type term");
  }
  return params;
}

}  // namespace heunqes
