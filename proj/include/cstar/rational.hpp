#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cstar {

using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// Exact rational number, kept in lowest terms with positive denominator.
struct Rat {
	Int num;
	Int den; // > 0

	Rat() : num(0), den(1) {}
	Rat(Int n) : num(std::move(n)), den(1) {}
	Rat(int n) : num(n), den(1) {}
	Rat(Int n, Int d) : num(std::move(n)), den(std::move(d)) { normalize(); }

	void normalize() {
		if (den == 0) throw std::domain_error("Rat: zero denominator");
		if (den < 0) { num = -num; den = -den; }
		Int g = cstar::gcd(num < 0 ? Int(-num) : num, den);
		if (g > 1) { num /= g; den /= g; }
	}

	bool is_integer() const { return den == 1; }

	Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
	Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
	Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
	Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
	Rat operator/(const Rat& o) const {
		if (o.num == 0) throw std::domain_error("Rat: division by zero");
		return Rat(num * o.den, den * o.num);
	}

	bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
	bool operator!=(const Rat& o) const { return !(*this == o); }
	bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
	bool operator>(const Rat& o) const { return o < *this; }
	bool operator<=(const Rat& o) const { return !(o < *this); }
	bool operator>=(const Rat& o) const { return !(*this < o); }

	Int floor() const {
		Int q = num / den;
		if (num < 0 && q * den != num) --q;
		return q;
	}
	Int ceil() const { return -((-*this).floor()); }

	std::string str() const {
		std::string s = num.str();
		if (den != 1) s += "/" + den.str();
		return s;
	}

	static Rat parse(const std::string& s);
};

/// Height of a rational vertex: the denominator in lowest terms.
inline Int height(const Rat& v) { return v.den; }

inline Rat Rat::parse(const std::string& s) {
	auto slash = s.find('/');
	try {
		if (slash == std::string::npos) return Rat(Int(s));
		return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
	} catch (const std::exception&) {
		throw std::invalid_argument("Rat: cannot parse '" + s + "'");
	}
}

} // namespace cstar
