#pragma once

#include <string>

#include "rotorbox/fourier.hpp"
#include "rotorbox/types.hpp"

namespace rotorbox {

enum class PacketFamily { gaussian, raised_cosine };

std::string to_string(PacketFamily f);
PacketFamily packet_family_from_string(const std::string& s);

// Wall-angle wavefunction Phi(theta) on the full circle [-pi, pi), stored as a
// unit l2 vector of G samples. Samples are exactly zero outside
// [center - delta_theta, center + delta_theta].
struct RotorPacket {
  Index grid_size = 0;
  double delta_theta = 0.0;
  double center = 0.0;
  PacketFamily family = PacketFamily::gaussian;
  CVec theta_samples;

  CVec fourier_view() const { return grid_to_modes(theta_samples); }
  double theta(Index g) const { return theta_at(g, grid_size); }
};

// Wall-position wavefunction Psi(x_w) on [-extent, extent), unit l2 norm,
// exactly zero outside [-delta_xw, delta_xw]. box_momentum is the particle
// momentum p0 entering the reflection phase e^{-2 i p0 x_w}.
struct WallPacket {
  Index grid_size = 0;
  double extent = 0.0;
  double delta_xw = 0.0;
  double box_momentum = 0.0;
  PacketFamily family = PacketFamily::raised_cosine;
  CVec x_samples;

  double x(Index p) const { return wall_x_at(p, grid_size, extent); }
};

// The Gaussian rotor family uses sigma = delta_theta/3 and hard-zeros the
// tails; raised cosine is C^1 at the support edge and is the family of choice
// when mode-space tails must stay below the identity tolerances.
RotorPacket make_rotor_packet(Index grid_size, double delta_theta,
                              PacketFamily family = PacketFamily::gaussian,
                              double center = 0.0);
RotorPacket rotor_from_samples(Index grid_size, double delta_theta, const CVec& samples);

// Wall packets default to raised cosine; the Gaussian variant uses
// sigma = delta_xw/5 so the truncation step sits at e^{-12.5}.
WallPacket make_wall_packet(Index grid_size, double extent, double delta_xw, double box_momentum,
                            PacketFamily family = PacketFamily::raised_cosine);

// <L_x> in units of hbar: sum_m m |fourier_view[m]|^2. Throws if the packet
// is not normalized. The grid-route quadrature sum_g conj(Phi) (-i dPhi/dtheta)
// with a spectral derivative agrees with it to kQuadratureTol.
double expectation_lx(const RotorPacket& packet);
double expectation_lx_grid_route(const RotorPacket& packet);

// <p> of the wall packet (hbar = 1), standard wavenumber ordering.
double expectation_p(const WallPacket& packet);

// |<a|b>|^2 for unit vectors of equal length.
double fidelity(const CVec& a, const CVec& b);

}  // namespace rotorbox
