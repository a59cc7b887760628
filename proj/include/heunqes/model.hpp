#pragma once

// Physical layer: a moving atom with a magnetic quadrupole moment in a
// radial electric field E = (lambda rho / 2) rho_hat, confined by
// V(rho) = m omega^2 rho^2 / 2 + eta rho.  Units hbar = c = 1.

#include <array>

namespace heunqes {

struct PhysicalParams {
  double mass = 1.0;    // m
  double quad = 1.0;    // quadrupole magnitude M
  double lambda = 1.0;  // charge-density parameter, any sign
  double eta = 1.0;     // linear confinement strength, any sign
  double kz = 0.0;      // axial wavenumber
  int l = 1;            // angular quantum number

  // M * lambda, the only combination of (M, lambda) entering the spectrum.
  double coupling() const noexcept { return quad * lambda; }

  bool operator==(const PhysicalParams&) const = default;
};

// Cylindrical axes in the local frame (rho_hat, phi_hat, z_hat).
enum class Axis { rho = 0, phi = 1, z = 2 };

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

struct QuadrupoleTensor {
  Matrix3 entries{};

  double operator()(Axis i, Axis j) const noexcept {
    return entries[static_cast<int>(i)][static_cast<int>(j)];
  }
  double trace() const noexcept;
  // max |T - T^T|
  double asymmetry() const noexcept;
};

// M_{rho z} = M_{z rho} = -M, every other entry zero.
QuadrupoleTensor make_quadrupole_tensor(double magnitude);

struct FieldConfig {
  // E = electric_radial_coefficient * rho * rho_hat
  double electric_radial_coefficient = 0.0;
  // B vanishes identically in this configuration, so -M.B drops out.
  Vector3 magnetic_field{0.0, 0.0, 0.0};

  // Constant gradient d_j E_k in the local cylindrical frame.
  Matrix3 electric_gradient() const noexcept;
};

FieldConfig make_field_config(const PhysicalParams& params);

// A_eff = M x E with M_i = sum_j M_ij d_j acting on the linear field.
// Components are ordered (rho, phi, z).
Vector3 effective_vector_potential_components(const PhysicalParams& params);

// Azimuthal component of A_eff, equal to -M lambda / 2.
double effective_vector_potential(const PhysicalParams& params);

// Throws Error unless m > 0 (and, with require_coulomb, l != 0 and
// M lambda != 0).  Returns the input unchanged on success.
PhysicalParams validate(const PhysicalParams& params, bool require_coulomb);

}  // namespace heunqes
