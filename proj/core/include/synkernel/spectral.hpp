#pragma once

#include "synkernel/complex.hpp"

#include <map>
#include <utility>
#include <vector>

namespace synkernel {

/// A complex with a finite decreasing filtration F^s, s in [s_lo, s_hi].
/// F^s is everything for s < s_lo and zero for s > s_hi.
class FilteredVectorComplex {
public:
    FilteredVectorComplex() = default;
    /// steps[n - c.lo()][s - s_lo] is F^s in degree n.
    FilteredVectorComplex(VectorComplex c, int s_lo, std::vector<std::vector<Subspace>> steps);

    const VectorComplex& complex() const { return c_; }
    int s_lo() const { return s_lo_; }
    int s_hi() const { return s_lo_ + static_cast<int>(width_) - 1; }
    Subspace step(int n, int s) const;

    /// Throws std::invalid_argument unless nested and preserved by d.
    void check() const;

private:
    VectorComplex c_;
    int s_lo_ = 0;
    std::size_t width_ = 0;
    std::vector<std::vector<Subspace>> steps_;
};

/// E_r page in (p, q) coordinates: p is the filtration index, p + q the total degree.
struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, std::size_t> dims;
    /// Rank of d_r leaving (p, q), landing in (p + r, q - r + 1).
    std::map<std::pair<int, int>, std::size_t> d_ranks;

    std::size_t dim(int p, int q) const;
    std::size_t rank_from(int p, int q) const;
};

/// Pages E_0 .. E_{r_max} via Z_r^p = F^p n d^{-1} F^{p+r} and
/// E_r^p = Z_r^p / (Z_{r-1}^{p+1} + F^p n d F^{p-r+1}).
std::vector<SpectralPage> spectral_sequence(const FilteredVectorComplex& fc, int r_max);

/// Page index after which every differential vanishes for this filtration length.
int stable_page(const FilteredVectorComplex& fc);

}  // namespace synkernel
