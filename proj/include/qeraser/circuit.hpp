#pragma once

// In-memory form of an optical netlist: one source plus an ordered list of
// elements on the fixed two-path interferometer topology.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qeraser/coherence.hpp"
#include "qeraser/jones.hpp"

namespace qeraser {

enum class Path { One = 1, Two = 2 };
enum class Port { A, B };
enum class SplitterKind { Pbs, Bs };

/// Ideal balanced preparation: 45 deg counterclockwise rotator on the source rail.
struct PrepDiag {
  bool operator==(const PrepDiag&) const = default;
};
/// Quarter-wave plate on the source rail.
struct PrepQwp {
  Angle axis;
  bool operator==(const PrepQwp&) const = default;
};
struct Split {
  SplitterKind kind = SplitterKind::Pbs;
  bool operator==(const Split&) const = default;
};
/// `angle` is the polarization rotation when `is_rotation` (netlist `rot=`),
/// otherwise the physical fast-axis angle (`axis=`).
struct Hwp {
  Path path = Path::One;
  Angle angle;
  bool is_rotation = true;

  Angle axis() const { return is_rotation ? angle * 0.5 : angle; }
  Angle rotation() const { return is_rotation ? angle : angle * 2.0; }
  bool operator==(const Hwp&) const = default;
};
/// An empty `phi` is the sweep symbol PHI.
struct Phase {
  Path path = Path::One;
  std::optional<Angle> phi;
  bool operator==(const Phase&) const = default;
};
struct PathDiff {
  double length = 0.0;  // m
  bool operator==(const PathDiff&) const = default;
};
/// Recombining splitter. Its exit faces are labelled so that rail 1 leaves
/// toward port A and rail 2 toward port B.
struct Merge {
  SplitterKind kind = SplitterKind::Pbs;
  bool operator==(const Merge&) const = default;
};
struct Pol {
  Port port = Port::A;
  Angle angle;
  bool operator==(const Pol&) const = default;
};

using ElementSpec = std::variant<PrepDiag, PrepQwp, Split, Hwp, Phase, PathDiff, Merge, Pol>;

enum class ElementKind { Prep, Split, Hwp, Phase, PathDiff, Merge, Pol };

struct Element {
  ElementSpec spec;
  int line = 0;  // 1-based source line, 0 when built in code

  ElementKind kind() const;
};

struct Circuit {
  SourceSpec source;
  int source_line = 0;
  std::vector<Element> elements;

  bool has_sweep() const;
  bool has_merge() const;
  /// Index of the final merge element, which fixes the port assignment.
  std::optional<std::size_t> final_merge() const;
  std::optional<std::size_t> first_split() const;
  bool port_polarized(Port port) const;
  /// Sum of all pathdiff statements.
  double path_difference() const;
  /// Source statement plus elements.
  std::size_t statement_count() const { return elements.size() + 1; }
};

/// Same source and element sequence; numeric values compared to `rel_tol`
/// relative (line numbers ignored).
bool structurally_equal(const Circuit& a, const Circuit& b, double rel_tol = 1e-5);

char port_letter(Port p);

}  // namespace qeraser
