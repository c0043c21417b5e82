#include "rotorbox/packets.hpp"

#include <cmath>
#include <functional>

namespace rotorbox {

namespace {

void require_normalized(const CVec& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + ": packet is not normalized");
  }
}

CVec envelope_samples(Index n, double half_width, double center, PacketFamily family,
                      const std::function<double(Index)>& coord) {
  CVec v = CVec::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double u = coord(i) - center;
    if (std::abs(u) > half_width) continue;
    switch (family) {
      case PacketFamily::gaussian: {
        const double sigma = half_width / 3.0;
        v[i] = std::exp(-u * u / (2.0 * sigma * sigma));
        break;
      }
      case PacketFamily::raised_cosine:
        v[i] = 0.5 * (1.0 + std::cos(EIGEN_PI * u / half_width));
        break;
    }
  }
  const double nrm = v.norm();
  if (nrm == 0.0) throw std::invalid_argument("packet support contains no grid points");
  return v / nrm;
}

}  // namespace

std::string to_string(PacketFamily f) {
  return f == PacketFamily::gaussian ? "gaussian" : "raised-cosine";
}

PacketFamily packet_family_from_string(const std::string& s) {
  if (s == "gaussian") return PacketFamily::gaussian;
  if (s == "raised-cosine" || s == "raised_cosine") return PacketFamily::raised_cosine;
  throw std::invalid_argument("unknown packet family: " + s);
}

RotorPacket make_rotor_packet(Index grid_size, double delta_theta, PacketFamily family,
                              double center) {
  if (grid_size < 2 || (grid_size & (grid_size - 1)) != 0) {
    throw std::invalid_argument("rotor grid size must be a power of two");
  }
  if (delta_theta <= 0.0 || delta_theta > EIGEN_PI / 2) {
    throw std::invalid_argument("delta_theta out of range");
  }
  RotorPacket p;
  p.grid_size = grid_size;
  p.delta_theta = delta_theta;
  p.center = center;
  p.family = family;
  p.theta_samples = envelope_samples(grid_size, delta_theta, center, family,
                                     [&](Index g) { return theta_at(g, grid_size); });
  return p;
}

RotorPacket rotor_from_samples(Index grid_size, double delta_theta, const CVec& samples) {
  if (samples.size() != grid_size) throw std::invalid_argument("sample count != grid size");
  RotorPacket p;
  p.grid_size = grid_size;
  p.delta_theta = delta_theta;
  p.theta_samples = samples / samples.norm();
  return p;
}

WallPacket make_wall_packet(Index grid_size, double extent, double delta_xw, double box_momentum,
                            PacketFamily family) {
  if (grid_size < 2) throw std::invalid_argument("wall grid size must be >= 2");
  if (delta_xw <= 0.0 || delta_xw > extent) {
    throw std::invalid_argument("delta_xw must lie in (0, extent]");
  }
  WallPacket w;
  w.grid_size = grid_size;
  w.extent = extent;
  w.delta_xw = delta_xw;
  w.box_momentum = box_momentum;
  w.family = family;
  if (family == PacketFamily::gaussian) {
    // narrower sigma than the rotor family: keeps the truncation step small
    // enough that <p> quadratures are tail-clean
    CVec v = CVec::Zero(grid_size);
    const double sigma = delta_xw / 5.0;
    for (Index p = 0; p < grid_size; ++p) {
      const double x = wall_x_at(p, grid_size, extent);
      if (std::abs(x) <= delta_xw) v[p] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    w.x_samples = v / v.norm();
  } else {
    w.x_samples = envelope_samples(grid_size, delta_xw, 0.0, family,
                                   [&](Index p) { return wall_x_at(p, grid_size, extent); });
  }
  return w;
}

double expectation_lx(const RotorPacket& packet) {
  require_normalized(packet.theta_samples, "expectation_lx");
  const CVec modes = packet.fourier_view();
  double acc = 0.0;
  for (Index k = 0; k < modes.size(); ++k) {
    acc += derivative_mode_weight(k, modes.size()) * std::norm(modes[k]);
  }
  return acc;
}

double expectation_lx_grid_route(const RotorPacket& packet) {
  require_normalized(packet.theta_samples, "expectation_lx");
  CVec modes = packet.fourier_view();
  for (Index k = 0; k < modes.size(); ++k) {
    modes[k] *= kI * derivative_mode_weight(k, modes.size());
  }
  const CVec deriv = modes_to_grid(modes);
  Complex acc = 0.0;
  for (Index g = 0; g < deriv.size(); ++g) {
    acc += std::conj(packet.theta_samples[g]) * (-kI) * deriv[g];
  }
  return acc.real();
}

double expectation_p(const WallPacket& packet) {
  require_normalized(packet.x_samples, "expectation_p");
  return momentum_expectation(packet.x_samples, 2.0 * packet.extent);
}

double fidelity(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(a.dot(b));  // Eigen's dot conjugates the left argument
}

}  // namespace rotorbox
