#pragma once

#include "cqed/dynamics.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

/// Joint readout probabilities for the two-detector collision experiment;
/// first index is the pulse-1 detector, second the pulse-2 detector.
struct CollisionProbabilities {
  double ee;
  double gg;
  double eg;
  double ge;

  double sum() const { return ee + gg + eg + ge; }
};

/// Weights of the collision channels: clean two-atom crossing, one extra
/// atom riding in pulse 1, one extra atom riding in pulse 2. Weights must be
/// nonnegative and sum to 1 within 1e-9.
struct CollisionMixture {
  double two_atom = 0.75;
  double extra_pulse1 = 0.125;
  double extra_pulse2 = 0.125;

  void validate() const;
};

/// Published closed-form readout curves:
///   P_ee = P_gg = 0.028 (1 - cos 3 lambda_t)
///   P_eg = 0.514 + 0.375 cos 2 lambda_t + 0.111 cos 3 lambda_t
///   P_ge = 0.430 - 0.375 cos 2 lambda_t - 0.055 cos 3 lambda_t
CollisionProbabilities collision_probabilities_closed_form(double lambda_t);

/// First-principles mixture: each channel is evolved under the vacuum-sector
/// generator from its initial configuration (|10>, |110>, |100>), undetected
/// extra atoms are traced out, and the channels are combined with the given
/// weights.
CollisionProbabilities collision_probabilities_mixture(const CollisionMixture& mixture,
                                                       double lambda_t);

/// Least-squares weight fit of the mixture channels against the closed-form
/// curves over a uniform lambda_t grid on [0, 2pi]. The fit is linear in the
/// weights; no constraint is imposed.
CollisionMixture fit_mixture_weights(int grid_points = 400);

/// Closed-form collision curves over a lambda_t grid; columns P_eg, P_ge,
/// P_ee, P_gg.
SweepSeries figure1_series(const std::vector<double>& lambda_t_grid);

/// Phase accrued by the still-coupled pair when one atom leaves early:
/// `paper` uses exp(-i f lambda_t0) on the transfer branches, `model` uses
/// exp(-i 2 f lambda_t0) (the symmetric two-atom eigenvalue).
enum class TimingPhaseMode { paper, model };

struct TimingErrorReport {
  double lambda_t0;
  double fraction_late;
  double fraction_early;
  TimingPhaseMode mode;
  double late_entry_fidelity;  // |<W3(t0(1-f_late)) | W3(t0)>|^2
  double early_exit_fidelity;  // |<W3(t0) | W3'>|^2 with the mode's phase
};

/// Sensitivity of the three-atom W-class state to interaction-window errors.
TimingErrorReport timing_error_study(double lambda_t0, double fraction_late,
                                     double fraction_early, TimingPhaseMode mode);

/// Compares full-model evolution (static-frame route, cavity starting in
/// vacuum, initial state |10...0>) against the vacuum-sector effective
/// evolution over the window [0, lambda_t], for each detuning ratio delta/g.
/// Columns: infidelity (worst-case 1 - F along the trajectory; the endpoint
/// value alone oscillates with the micromotion phase and does not expose the
/// (g/delta)^2 law), photon_leakage_max (peak <a^dag a> along the same
/// trajectory), and flagged (1 when ratio < 5, outside the dispersive regime).
SweepSeries dispersive_validation_sweep(const std::vector<double>& ratios, double lambda_t, int n);

/// Distillation figures over a lambda_t grid for n >= 3 atoms: columns
/// p_distill (success probability of the |0> projection on the last atom)
/// and amplitude_gap (| |survivor| - |transfer| |, zero exactly at a
/// maximal-W point).
SweepSeries distillation_scan(int n, const std::vector<double>& lambda_t_grid);

}  // namespace cqed
