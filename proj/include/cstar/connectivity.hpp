#pragma once

#include "cstar/degeneration.hpp"
#include "cstar/picard.hpp"
#include "cstar/toric_system.hpp"

#include <vector>

namespace cstar {

enum class StepDirection {
	Degenerate, // walk from the general fiber to the special fiber
	Deform,     // walk from the special fiber to the general fiber
};

struct DeformationStep {
	DegenerationDiagram diagram;
	StepDirection direction;

	Multidivisor entry_fiber() const {
		return direction == StepDirection::Degenerate ? general_fiber(diagram) : special_fiber(diagram);
	}
	Multidivisor exit_fiber() const {
		return direction == StepDirection::Degenerate ? special_fiber(diagram) : general_fiber(diagram);
	}
};

struct DeformationPath {
	std::vector<DeformationStep> steps;
	Multidivisor start, end; // fiber models of the two endpoints

	Multidivisor fiber(int k) const; // model after k steps (0 = start)
};

/// Chain consistency: every diagram is valid and consecutive fibers agree
/// as surfaces (multidivisor isomorphism, via the fan when toric).
bool validate_path(const DeformationPath& path, std::vector<std::string>* issues = nullptr);

/// Explicit deformation path between two smooth complete toric surfaces of
/// equal Picard rank > 2.
DeformationPath connect_toric(const ToricSurface& x, const ToricSurface& y);

/// Same for arbitrary smooth multidivisors: degenerate both to toric
/// surfaces and connect those.
DeformationPath connect(const Multidivisor& a, const Multidivisor& b);

/// Greedy cancellation of adjacent inverse steps.
DeformationPath shorten(const DeformationPath& path);

/// Transport a toric system from the start fiber along the whole path;
/// every image is checked to be a toric system with the same tv.
std::vector<ToricSystem> transport_along_path(const DeformationPath& path, const ToricSystem& a);

/// Class-level isomorphism between two toric multidivisor models of one
/// surface, through their downgrade fans.
Mat fan_iso_class_matrix(const Multidivisor& ma, const PicLattice& la, const Multidivisor& mb,
                         const PicLattice& lb);

} // namespace cstar
