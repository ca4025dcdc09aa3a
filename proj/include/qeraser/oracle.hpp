#pragma once

// Closed-form field and intensity laws for the PBS-locked eraser, evaluated
// with scalar trigonometry and a single complex phase. Deliberately shares
// no code with the dual-rail engine so the two can cross-check each other.
//
// The source amplitudes are unit (I_0 = 1, the HV cross factor = 1).
// zeta and eta are polarization rotations of the path-1 and path-2 plates;
// xi and theta are the port A and port B polarizer axes.

#include "qeraser/circuit.hpp"
#include "qeraser/jones.hpp"

namespace qeraser {

struct ScenarioParams {
  Angle zeta;   // path-1 HWP rotation (acts on the V arm)
  Angle eta;    // path-2 HWP rotation (acts on the H arm)
  Angle xi;     // port A polarizer
  Angle theta;  // port B polarizer
  Angle phi;    // interferometer phase
  bool hwp_path1 = true;
  bool hwp_path2 = true;
  bool pol_a = true;
  bool pol_b = true;
};

/// HWP-resolved amplitudes after the recombining PBS.
struct ClosedFormAmplitudes {
  double vx = 0.0;
  double vy = 1.0;
  double hx = 1.0;
  double hy = 0.0;
};

ClosedFormAmplitudes amplitudes(const ScenarioParams& p);

/// Pre-polarizer output fields (E_0 = 1). Components are (H, V).
JonesVector field_a(const ScenarioParams& p);
JonesVector field_b(const ScenarioParams& p);

/// DC and cos(phi)-carrying parts of a polarized-port intensity:
/// I = dc + cross.
struct FringeTerms {
  double dc = 0.0;
  double cross = 0.0;
  double total() const { return dc + cross; }
};

/// Throws std::invalid_argument if the port's polarizer is absent.
FringeTerms intensity_1_terms(const ScenarioParams& p);
FringeTerms intensity_2_terms(const ScenarioParams& p);
double intensity_1(const ScenarioParams& p);
double intensity_2(const ScenarioParams& p);

/// Equal 45 deg plates on both arms.
double intensity_1_special(Angle xi, Angle phi);
double intensity_2_special(Angle theta, Angle phi);

/// Both polarizers on the diagonal.
double intensity_1_diag(Angle eta, Angle zeta, Angle phi);
double intensity_2_diag(Angle eta, Angle zeta, Angle phi);

/// Polarized-port intensity when a polarizer is present, otherwise the
/// pre-polarizer intensity |E_A|^2 or |E_B|^2.
double port_intensity(const ScenarioParams& p, Port port);

/// Port intensity with the cross term scaled by a coherence factor.
double port_intensity(const ScenarioParams& p, Port port, double coherence_factor);

}  // namespace qeraser
