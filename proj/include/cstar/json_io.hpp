#pragma once

#include "cstar/connectivity.hpp"
#include "cstar/degeneration.hpp"
#include "cstar/multidivisor.hpp"
#include "cstar/picard.hpp"
#include "cstar/toric.hpp"
#include "cstar/toric_system.hpp"

#include <string>

namespace cstar {

// JSON codecs. Rationals travel as strings "p/q" (integers may drop the
// denominator); the point at infinity is spelled "inf"; markers are
// "circ"/"bullet". Malformed documents raise Errc::ParseError.

std::string surface_to_json(const ToricSurface& x);
ToricSurface surface_from_json(const std::string& text);

std::string divisor_to_json(const ToricDivisor& d);
ToricDivisor divisor_from_json(const std::string& text);

std::string mdiv_to_json(const Multidivisor& m);
Multidivisor mdiv_from_json(const std::string& text);

std::string diagram_to_json(const DegenerationDiagram& d);
DegenerationDiagram diagram_from_json(const std::string& text);

std::string weil_to_json(const WeilDiv& d);
WeilDiv weil_from_json(const std::string& text);

std::string path_to_json(const DeformationPath& p);
DeformationPath path_from_json(const std::string& text);

/// Toric systems serialize with a basis manifest of the carrying lattice.
std::string system_to_json(const PicLattice& lat, const ToricSystem& a);
ToricSystem system_from_json(const PicLattice& lat, const std::string& text);

std::string transport_to_json(const TransportMap& tm);
std::string certificate_to_json(const TameCertificate& cert);
std::string report_to_json(bool valid, const std::vector<std::string>& issues);

/// Generic "what is this file" sniffing for the CLI.
enum class JsonKind { Surface, Mdiv, Diagram, Path, Unknown };
JsonKind sniff_json(const std::string& text);

} // namespace cstar
