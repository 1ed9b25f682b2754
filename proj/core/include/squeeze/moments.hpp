#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "squeeze/integrator.hpp"
#include "squeeze/linalg.hpp"
#include "squeeze/schedule.hpp"

namespace squeeze {

/// Symmetrized intracavity second moments <alpha^2> and <|alpha|^2> at time t.
/// <|alpha|^2> = Tr[a^dag a rho] + 1/2, so the vacuum floor is 1/2.
struct MomentState {
  Complex m_aa{};
  double m_abs = 0.5;
  double t = 0.0;

  /// Hermitian moment matrix [[m_abs, m_aa], [conj(m_aa), m_abs]].
  Mat2 matrix() const;
  static MomentState from_matrix(const Mat2& s, double t);
};

struct Vacuum {};
struct Thermal {
  double n = 0.0;
};
/// Squeeze operator S(r e^{i angle}) applied to vacuum.
struct SqueezedVacuum {
  double r = 0.0;
  double angle = 0.0;
};
struct CustomMoments {
  Complex m_aa{};
  double m_abs = 0.5;
};

using InitialStateSpec = std::variant<Vacuum, Thermal, SqueezedVacuum, CustomMoments>;

/// Where the moment evolution starts. Without t0 the state is prepared in the
/// distant past, and only the drive history matters.
struct InitialCondition {
  InitialStateSpec state = Vacuum{};
  std::optional<double> t0;
};

/// Throws ArgumentError if the moments break m_abs >= 1/2 or
/// m_abs^2 >= |m_aa|^2 + 1/4 (beyond a 1e-12 relative slack).
void validate_moments(Complex m_aa, double m_abs);

MomentState initial_moments(const InitialStateSpec& spec, double t0);

/// Integrates dS/dt = M S + S M^dag + (kappa/2) 1 from m0 to every grid point.
std::vector<MomentState> evolve_moments(const DriveSchedule& schedule, const MomentState& m0,
                                        std::span<const double> t_grid, const IntegratorConfig& cfg = {});

/// Lead time that stands in for t0 -> -inf before `t_ref`: max(20/kappa_-, 20/kappa)
/// with kappa_- = kappa - max|eps| over the history. Falls back to the detuned
/// decay rate kappa - Re sqrt(|eps|^2 - 4 Omega^2) when max|eps| >= kappa.
double relaxation_time(const DriveSchedule& schedule, double t_ref);

/// Moments on an ascending grid, starting from the given initial condition.
std::vector<MomentState> moments_on_grid(const DriveSchedule& schedule, const InitialCondition& init,
                                         std::span<const double> t_grid, const IntegratorConfig& cfg = {});

}  // namespace squeeze
