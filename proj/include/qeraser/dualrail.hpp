#pragma once

// Four-amplitude (path x polarization) propagation through a circuit.
//
// Amplitude order is (path 1 H, path 1 V, path 2 H, path 2 V). The source
// enters on path 2. Splitters transmit within a path and reflect across with
// a factor i; the PBS transmits H and reflects V. After the final merge,
// rail 1 is port A and rail 2 is port B.

#include <cstddef>

#include <Eigen/Dense>

#include "qeraser/circuit.hpp"
#include "qeraser/fringe.hpp"
#include "qeraser/jones.hpp"

namespace qeraser {

using TransferMatrix = Eigen::Matrix4cd;

struct EngineOptions {
  /// Fraction of each polarization a PBS sends to the wrong output. Only
  /// unitary with the default (symmetric) reflection phases.
  double pbs_leakage = 0.0;
  /// PBS reflection factor for light crossing path 1 -> path 2 and 2 -> 1.
  Complex pbs_reflect_12 = kI;
  Complex pbs_reflect_21 = kI;
};

struct DualRailState {
  Eigen::Vector4cd amp = Eigen::Vector4cd::Zero();
  /// Set once a merge element has been applied; ports are readable only then.
  bool merged = false;

  /// Empty path 1, `source` on path 2.
  static DualRailState from_source(const JonesVector& source);
  JonesVector path(Path p) const;
  double total_intensity() const;
};

struct DetectorReading {
  Port port = Port::A;
  double intensity = 0.0;
  JonesVector fields = JonesVector::Zero();
};

TransferMatrix pbs_element(const EngineOptions& options = {});
TransferMatrix bs_element();
/// Block-diagonal embedding of `m` on one path, identity on the other.
TransferMatrix lift_to_path(const JonesMatrix& m, Path path);
/// Exit-face relabelling applied by a merge (rail swap).
TransferMatrix exit_relabel();

/// Transfer matrix of one element; `sweep_phi` binds the PHI symbol.
TransferMatrix transfer_matrix(const Element& element, double sweep_phi,
                               const EngineOptions& options = {});

/// Applies the elements in declaration order.
DualRailState propagate(DualRailState state, const Circuit& circuit, double sweep_phi = 0.0,
                        const EngineOptions& options = {});

/// The circuit's input state: its source on path 2.
DualRailState input_state(const Circuit& circuit);

/// Throws std::logic_error if no merge element has been applied.
DetectorReading read_port(const DualRailState& state, Port port);

/// Port fields split by the internal path the light took. Paths are
/// separated right after the first split element.
struct PathResolvedPorts {
  JonesVector a_from_path1 = JonesVector::Zero();
  JonesVector a_from_path2 = JonesVector::Zero();
  JonesVector b_from_path1 = JonesVector::Zero();
  JonesVector b_from_path2 = JonesVector::Zero();
};

/// Throws std::logic_error if the circuit has no merge.
PathResolvedPorts resolve_ports(const Circuit& circuit, double sweep_phi,
                                const EngineOptions& options = {});

/// First-order coherence between the two paths for this circuit's source and
/// summed pathdiff statements; 1 when there is no path difference.
double circuit_coherence(const Circuit& circuit);

struct PortIntensities {
  double a = 0.0;
  double b = 0.0;
};

/// Detector intensities including partial coherence between the paths.
PortIntensities port_intensities(const Circuit& circuit, double sweep_phi,
                                 const EngineOptions& options = {});

FringeScan sweep(const Circuit& circuit, std::span<const double> phi,
                 const EngineOptions& options = {});

}  // namespace qeraser
