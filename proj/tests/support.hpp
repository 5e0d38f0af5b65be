#pragma once

#include "cstar/toric.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace cstar::testing {

/// splitmix64, deterministic across platforms
struct Rng {
	uint64_t state;
	explicit Rng(uint64_t seed) : state(seed) {}
	uint64_t next() {
		uint64_t z = (state += 0x9e3779b97f4a7c15ull);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
		return z ^ (z >> 31);
	}
	int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
	bool flip() { return next() & 1; }
};

/// All smooth complete toric surfaces with up to max_rays rays and every
/// |b_i| <= max_abs, as canonical cycles. Exhaustive: every such surface is
/// an iterated blowup of P^2 or some F_r, and entries never decrease along
/// a blowup chain.
inline std::vector<std::vector<Int>> enumerate_smooth_toric(int max_rays, int max_abs) {
	int slack = max_rays - 3;
	std::set<std::vector<Int>> layer, all;
	auto add = [&](const std::vector<Int>& b) {
		auto c = canonical_cycle(b);
		if (all.insert(c).second) layer.insert(c);
	};
	add({Int(-1), Int(-1), Int(-1)});
	for (int r = 0; r <= max_abs + slack; ++r) add({Int(0), Int(r), Int(0), Int(-r)});
	while (!layer.empty()) {
		std::set<std::vector<Int>> next;
		for (const auto& b : layer) {
			if (static_cast<int>(b.size()) >= max_rays) continue;
			ToricSurface x{b, std::nullopt};
			for (int i = 0; i < static_cast<int>(b.size()); ++i) {
				ToricSurface y = toric_blowup(x, i);
				bool ok = true;
				for (const auto& v : y.b)
					if (v > max_abs || v < -(max_abs + slack)) ok = false;
				if (!ok) continue;
				auto c = canonical_cycle(y.b);
				if (all.insert(c).second) next.insert(c);
			}
		}
		layer = std::move(next);
	}
	std::vector<std::vector<Int>> out;
	for (const auto& b : all) {
		bool ok = true;
		for (const auto& v : b)
			if (v > max_abs || v < -max_abs) ok = false;
		if (ok) out.push_back(b);
	}
	return out;
}

/// Random smooth complete toric surface built by random blowups.
inline ToricSurface random_toric(Rng& rng, int blowups) {
	ToricSurface x;
	if (rng.flip())
		x = rays_from_b({Int(-1), Int(-1), Int(-1)});
	else {
		int r = rng.below(4);
		x = rays_from_b({Int(0), Int(r), Int(0), Int(-r)});
	}
	for (int k = 0; k < blowups; ++k) x = toric_blowup(x, rng.below(x.nrays()));
	return x;
}

} // namespace cstar::testing
