#include "qeraser/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace qeraser {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool close(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool close(Angle a, Angle b, double rel_tol) { return close(a.radians, b.radians, rel_tol); }

bool same_element(const ElementSpec& a, const ElementSpec& b, double tol) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const PrepDiag&) { return true; },
          [&](const PrepQwp& x) { return close(x.axis, std::get<PrepQwp>(b).axis, tol); },
          [&](const Split& x) { return x == std::get<Split>(b); },
          [&](const Hwp& x) {
            const auto& y = std::get<Hwp>(b);
            return x.path == y.path && x.is_rotation == y.is_rotation && close(x.angle, y.angle, tol);
          },
          [&](const Phase& x) {
            const auto& y = std::get<Phase>(b);
            if (x.path != y.path || x.phi.has_value() != y.phi.has_value()) return false;
            return !x.phi || close(*x.phi, *y.phi, tol);
          },
          [&](const PathDiff& x) { return close(x.length, std::get<PathDiff>(b).length, tol); },
          [&](const Merge& x) { return x == std::get<Merge>(b); },
          [&](const Pol& x) {
            const auto& y = std::get<Pol>(b);
            return x.port == y.port && close(x.angle, y.angle, tol);
          },
      },
      a);
}

}  // namespace

ElementKind Element::kind() const {
  return std::visit(overloaded{
                        [](const PrepDiag&) { return ElementKind::Prep; },
                        [](const PrepQwp&) { return ElementKind::Prep; },
                        [](const Split&) { return ElementKind::Split; },
                        [](const Hwp&) { return ElementKind::Hwp; },
                        [](const Phase&) { return ElementKind::Phase; },
                        [](const PathDiff&) { return ElementKind::PathDiff; },
                        [](const Merge&) { return ElementKind::Merge; },
                        [](const Pol&) { return ElementKind::Pol; },
                    },
                    spec);
}

bool Circuit::has_sweep() const {
  return std::any_of(elements.begin(), elements.end(), [](const Element& e) {
    const auto* p = std::get_if<Phase>(&e.spec);
    return p != nullptr && !p->phi;
  });
}

bool Circuit::has_merge() const { return final_merge().has_value(); }

std::optional<std::size_t> Circuit::final_merge() const {
  for (std::size_t i = elements.size(); i-- > 0;) {
    if (elements[i].kind() == ElementKind::Merge) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Circuit::first_split() const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].kind() == ElementKind::Split) return i;
  }
  return std::nullopt;
}

bool Circuit::port_polarized(Port port) const {
  return std::any_of(elements.begin(), elements.end(), [port](const Element& e) {
    const auto* p = std::get_if<Pol>(&e.spec);
    return p != nullptr && p->port == port;
  });
}

double Circuit::path_difference() const {
  double total = 0.0;
  for (const auto& e : elements) {
    if (const auto* d = std::get_if<PathDiff>(&e.spec)) total += d->length;
  }
  return total;
}

bool structurally_equal(const Circuit& a, const Circuit& b, double rel_tol) {
  if (a.source.polarization != b.source.polarization ||
      a.source.lineshape != b.source.lineshape ||
      !close(a.source.wavelength, b.source.wavelength, rel_tol) ||
      !close(a.source.linewidth, b.source.linewidth, rel_tol) ||
      !close(a.source.intensity, b.source.intensity, rel_tol) ||
      a.elements.size() != b.elements.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    if (!same_element(a.elements[i].spec, b.elements[i].spec, rel_tol)) return false;
  }
  return true;
}

char port_letter(Port p) { return p == Port::A ? 'A' : 'B'; }

}  // namespace qeraser
