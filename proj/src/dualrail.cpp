#include "qeraser/dualrail.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace qeraser {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr Eigen::Index rail_offset(Path p) { return p == Path::One ? 0 : 2; }

Path port_rail(Port port) { return port == Port::A ? Path::One : Path::Two; }

TransferMatrix splitter(SplitterKind kind, const EngineOptions& options) {
  return kind == SplitterKind::Pbs ? pbs_element(options) : bs_element();
}

JonesVector port_field(const Eigen::Vector4cd& amp, Port port) {
  const Eigen::Index o = rail_offset(port_rail(port));
  return JonesVector{amp(o), amp(o + 1)};
}

double coherent_sum(const JonesVector& a, const JonesVector& b, double gamma) {
  return intensity(a) + intensity(b) + 2.0 * gamma * std::real(a.dot(b));
}

}  // namespace

DualRailState DualRailState::from_source(const JonesVector& source) {
  DualRailState s;
  s.amp(2) = source(0);
  s.amp(3) = source(1);
  return s;
}

JonesVector DualRailState::path(Path p) const {
  const Eigen::Index o = rail_offset(p);
  return JonesVector{amp(o), amp(o + 1)};
}

double DualRailState::total_intensity() const { return amp.squaredNorm(); }

TransferMatrix pbs_element(const EngineOptions& options) {
  const double leak = options.pbs_leakage;
  if (!(leak >= 0.0 && leak <= 1.0)) {
    throw std::invalid_argument("pbs_element: leakage must lie in [0, 1]");
  }
  const double strong = std::sqrt(1.0 - leak);
  const double weak = std::sqrt(leak);
  const Complex r12 = options.pbs_reflect_12;
  const Complex r21 = options.pbs_reflect_21;
  // Rows are outputs, columns inputs, order (1H, 1V, 2H, 2V).
  TransferMatrix m = TransferMatrix::Zero();
  m(0, 0) = strong;      // 1H -> 1H
  m(2, 0) = r12 * weak;  // 1H -> 2H (leak)
  m(2, 2) = strong;      // 2H -> 2H
  m(0, 2) = r21 * weak;  // 2H -> 1H (leak)
  m(3, 1) = r12 * strong;  // 1V -> 2V
  m(1, 1) = weak;          // 1V -> 1V (leak)
  m(1, 3) = r21 * strong;  // 2V -> 1V
  m(3, 3) = weak;          // 2V -> 2V (leak)
  return m;
}

TransferMatrix bs_element() {
  const double t = 1.0 / std::sqrt(2.0);
  const Complex r = kI * t;
  TransferMatrix m = TransferMatrix::Zero();
  for (Eigen::Index pol = 0; pol < 2; ++pol) {
    m(pol, pol) = t;
    m(pol + 2, pol + 2) = t;
    m(pol, pol + 2) = r;
    m(pol + 2, pol) = r;
  }
  return m;
}

TransferMatrix lift_to_path(const JonesMatrix& m, Path path) {
  TransferMatrix out = TransferMatrix::Identity();
  const Eigen::Index o = rail_offset(path);
  out.block<2, 2>(o, o) = m;
  return out;
}

TransferMatrix exit_relabel() {
  TransferMatrix m = TransferMatrix::Zero();
  m(0, 2) = 1.0;
  m(1, 3) = 1.0;
  m(2, 0) = 1.0;
  m(3, 1) = 1.0;
  return m;
}

TransferMatrix transfer_matrix(const Element& element, double sweep_phi,
                               const EngineOptions& options) {
  return std::visit(
      overloaded{
          [](const PrepDiag&) {
            return lift_to_path(rotation_matrix(Angle::from_degrees(45.0)), Path::Two);
          },
          [](const PrepQwp& q) { return lift_to_path(qwp_matrix(q.axis), Path::Two); },
          [&](const Split& s) { return splitter(s.kind, options); },
          [](const Hwp& h) { return lift_to_path(hwp_matrix(h.axis()), h.path); },
          [&](const Phase& p) {
            const Angle phi = p.phi ? *p.phi : Angle::from_radians(sweep_phi);
            return lift_to_path(phase_matrix(phi), p.path);
          },
          [](const PathDiff&) -> TransferMatrix { return TransferMatrix::Identity(); },
          [&](const Merge& m) -> TransferMatrix {
            return exit_relabel() * splitter(m.kind, options);
          },
          [](const Pol& p) { return lift_to_path(polarizer_matrix(p.angle), port_rail(p.port)); },
      },
      element.spec);
}

DualRailState propagate(DualRailState state, const Circuit& circuit, double sweep_phi,
                        const EngineOptions& options) {
  for (const auto& e : circuit.elements) {
    state.amp = transfer_matrix(e, sweep_phi, options) * state.amp;
    if (e.kind() == ElementKind::Merge) state.merged = true;
  }
  return state;
}

DualRailState input_state(const Circuit& circuit) {
  return DualRailState::from_source(circuit.source.jones());
}

DetectorReading read_port(const DualRailState& state, Port port) {
  if (!state.merged) {
    throw std::logic_error("read_port: no merge element has been applied");
  }
  DetectorReading r;
  r.port = port;
  r.fields = port_field(state.amp, port);
  r.intensity = intensity(r.fields);
  return r;
}

PathResolvedPorts resolve_ports(const Circuit& circuit, double sweep_phi,
                                const EngineOptions& options) {
  if (!circuit.has_merge()) {
    throw std::logic_error("resolve_ports: circuit has no merge element");
  }
  const auto& els = circuit.elements;
  const std::size_t cut = circuit.first_split().value_or(els.size());

  Eigen::Vector4cd at_cut = input_state(circuit).amp;
  std::size_t i = 0;
  for (; i < els.size() && i <= cut; ++i) {
    at_cut = transfer_matrix(els[i], sweep_phi, options) * at_cut;
  }

  Eigen::Vector4cd from1 = at_cut;
  Eigen::Vector4cd from2 = at_cut;
  from1.segment<2>(2).setZero();
  from2.segment<2>(0).setZero();
  for (; i < els.size(); ++i) {
    const TransferMatrix t = transfer_matrix(els[i], sweep_phi, options);
    from1 = t * from1;
    from2 = t * from2;
  }

  return PathResolvedPorts{port_field(from1, Port::A), port_field(from2, Port::A),
                           port_field(from1, Port::B), port_field(from2, Port::B)};
}

double circuit_coherence(const Circuit& circuit) {
  const double dl = circuit.path_difference();
  if (dl == 0.0) return 1.0;
  return visibility_factor(
      CoherenceModel{coherence_length(circuit.source), dl, circuit.source.lineshape});
}

PortIntensities port_intensities(const Circuit& circuit, double sweep_phi,
                                 const EngineOptions& options) {
  const double gamma = circuit_coherence(circuit);
  const auto f = resolve_ports(circuit, sweep_phi, options);
  return PortIntensities{coherent_sum(f.a_from_path1, f.a_from_path2, gamma),
                         coherent_sum(f.b_from_path1, f.b_from_path2, gamma)};
}

FringeScan sweep(const Circuit& circuit, std::span<const double> phi,
                 const EngineOptions& options) {
  FringeScan scan;
  scan.phi_values.assign(phi.begin(), phi.end());
  scan.polarized_1 = circuit.port_polarized(Port::A);
  scan.polarized_2 = circuit.port_polarized(Port::B);
  scan.i1.reserve(phi.size());
  scan.i2.reserve(phi.size());
  for (double ph : phi) {
    const auto p = port_intensities(circuit, ph, options);
    scan.i1.push_back(p.a);
    scan.i2.push_back(p.b);
  }
  scan.visibility_1 = scan_visibility(scan.phi_values, scan.i1);
  scan.visibility_2 = scan_visibility(scan.phi_values, scan.i2);
  return scan;
}

}  // namespace qeraser
