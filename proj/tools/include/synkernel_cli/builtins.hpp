#pragma once

#include "synkernel/random.hpp"
#include "synkernel/syntomic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace synkernel::cli {

/// Towers used by the randomized suites.
TowerPtr rational_tower(long p = 5);
TowerPtr quadratic_tower();  ///< K0 = Q(sqrt 2) over p = 5, sigma = conjugation
TowerPtr ramified_tower();   ///< K = Q(sqrt 5), e = 2

/// unit, unit(n), tate-curve, elliptic, random. nullopt for other names.
std::optional<FilteredPhiNModule> builtin_module(const std::string& name, const TowerPtr& t, std::uint64_t seed);
/// random-complex: a seeded two-term complex. Falls back to single(builtin_module).
std::optional<MFComplex> builtin_complex(const std::string& name, const TowerPtr& t, std::uint64_t seed);
/// acyclic, unit-no-beta, non-strict. nullopt for other names.
std::optional<PadicHodgeComplex> builtin_phc(const std::string& name, const TowerPtr& t);
std::vector<std::string> builtin_names();

/// 0 -> K0 -id-> K0 -> 0 in degrees 0, 1 with alpha = id, beta = 0; F jumps at j0 and j1.
PadicHodgeComplex acyclic_phc(const TowerPtr& t, int j0 = 0, int j1 = 1);
/// The unit with beta = 0: valid, but the comparison maps are not quasi-isomorphisms.
PadicHodgeComplex unit_no_beta(const TowerPtr& t);
/// Valid complexes outside the image of Theta, cycling through three shapes with k.
PadicHodgeComplex hand_built_phc(Generator& gen, const TowerPtr& t, int k);

}  // namespace synkernel::cli
