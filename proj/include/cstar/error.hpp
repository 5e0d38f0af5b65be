#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

enum class Errc {
	NotASurface,
	PreconditionViolated,
	NotContractible,
	NotToric,
	NotSmooth,
	InvalidDiagram,
	NotMinusOne,
	BothEndpointsHighDegree,
	AmbiguousEdge,
	NotSmoothAfterBlowup,
	IllegalBlowup,
	UnknownDivisor,
	RankMismatch,
	RankTooSmall,
	NotAToricSystem,
	NotCatalogForm,
	NotTame,
	InternalInconsistency,
	ParseError,
};

inline const char* errc_name(Errc c) {
	switch (c) {
		case Errc::NotASurface: return "NotASurface";
		case Errc::PreconditionViolated: return "PreconditionViolated";
		case Errc::NotContractible: return "NotContractible";
		case Errc::NotToric: return "NotToric";
		case Errc::NotSmooth: return "NotSmooth";
		case Errc::InvalidDiagram: return "InvalidDiagram";
		case Errc::NotMinusOne: return "NotMinusOne";
		case Errc::BothEndpointsHighDegree: return "BothEndpointsHighDegree";
		case Errc::AmbiguousEdge: return "AmbiguousEdge";
		case Errc::NotSmoothAfterBlowup: return "NotSmoothAfterBlowup";
		case Errc::IllegalBlowup: return "IllegalBlowup";
		case Errc::UnknownDivisor: return "UnknownDivisor";
		case Errc::RankMismatch: return "RankMismatch";
		case Errc::RankTooSmall: return "RankTooSmall";
		case Errc::NotAToricSystem: return "NotAToricSystem";
		case Errc::NotCatalogForm: return "NotCatalogForm";
		case Errc::NotTame: return "NotTame";
		case Errc::InternalInconsistency: return "InternalInconsistency";
		case Errc::ParseError: return "ParseError";
	}
	return "Unknown";
}

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
	Error(Errc code, const std::string& what)
		: std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
	Errc code() const { return code_; }

private:
	Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
	if (!cond) fail(code, what);
}

/// Assertion for facts the theory guarantees; failure means a bug, not bad input.
inline void internal_check(bool cond, const std::string& what) {
	if (!cond) fail(Errc::InternalInconsistency, what);
}

} // namespace cstar
