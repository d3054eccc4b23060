#include "synkernel/spectral.hpp"

#include <stdexcept>
#include <string>

namespace synkernel {

FilteredVectorComplex::FilteredVectorComplex(VectorComplex c, int s_lo, std::vector<std::vector<Subspace>> steps)
    : c_(std::move(c)), s_lo_(s_lo), steps_(std::move(steps)) {
    std::size_t degrees = c_.empty() ? 0 : static_cast<std::size_t>(c_.hi() - c_.lo() + 1);
    if (steps_.size() != degrees) throw std::invalid_argument("filtered complex: one step list per degree expected");
    width_ = steps_.empty() ? 0 : steps_.front().size();
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        if (steps_[k].size() != width_) throw std::invalid_argument("filtered complex: ragged step lists");
        for (const auto& s : steps_[k])
            if (s.ambient() != c_.dim(c_.lo() + static_cast<int>(k)))
                throw std::invalid_argument("filtered complex: step ambient mismatch");
    }
}

Subspace FilteredVectorComplex::step(int n, int s) const {
    std::size_t dn = c_.dim(n);
    if (dn == 0 || s > s_hi()) return Subspace::zero(dn);
    if (s < s_lo_) return Subspace::full(dn);
    return steps_[static_cast<std::size_t>(n - c_.lo())][static_cast<std::size_t>(s - s_lo_)];
}

void FilteredVectorComplex::check() const {
    if (c_.empty()) return;
    for (int n = c_.lo(); n <= c_.hi(); ++n)
        for (int s = s_lo_; s <= s_hi() + 1; ++s) {
            if (!step(n, s - 1).contains(step(n, s)))
                throw std::invalid_argument("filtered complex: F^" + std::to_string(s) + " not nested in degree " +
                                            std::to_string(n));
            if (!step(n + 1, s).contains(c_.d(n) * step(n, s).basis()))
                throw std::invalid_argument("filtered complex: d does not preserve F^" + std::to_string(s) +
                                            " in degree " + std::to_string(n));
        }
}

std::size_t SpectralPage::dim(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
}

std::size_t SpectralPage::rank_from(int p, int q) const {
    auto it = d_ranks.find({p, q});
    return it == d_ranks.end() ? 0 : it->second;
}

namespace {

struct Engine {
    const FilteredVectorComplex& fc;
    const VectorComplex& c;

    // F^p C^n n d^{-1}(F^{p+r} C^{n+1})
    Subspace z(int p, int n, int r) const {
        Subspace fp = fc.step(n, p);
        return fp.intersect(Subspace::preimage(c.d(n), fc.step(n + 1, p + r)));
    }

    // Z_{r-1}^{p+1} + F^p n d(F^{p-r+1} C^{n-1})
    Subspace denominator(int p, int n, int r) const {
        Subspace b = fc.step(n - 1, p - r + 1).image_under(c.d(n - 1)).intersect(fc.step(n, p));
        return z(p + 1, n, r - 1) + b;
    }
};

}  // namespace

std::vector<SpectralPage> spectral_sequence(const FilteredVectorComplex& fc, int r_max) {
    const VectorComplex& c = fc.complex();
    std::vector<SpectralPage> pages;
    if (c.empty()) {
        for (int r = 0; r <= r_max; ++r) pages.push_back(SpectralPage{r, {}, {}});
        return pages;
    }
    Engine eng{fc, c};
    const int p_lo = fc.s_lo() - 1, p_hi = fc.s_hi();
    for (int r = 0; r <= r_max; ++r) {
        SpectralPage page;
        page.r = r;
        for (int n = c.lo(); n <= c.hi(); ++n)
            for (int p = p_lo; p <= p_hi; ++p) {
                Subspace zr = eng.z(p, n, r);
                Subspace den = eng.denominator(p, n, r);
                std::size_t e = zr.dim() - den.dim();
                if (e != 0) page.dims[{p, n - p}] = e;
            }
        for (int n = c.lo(); n < c.hi(); ++n)
            for (int p = p_lo; p <= p_hi; ++p) {
                if (page.dim(p, n - p) == 0) continue;
                int tp = p + r;
                Subspace den = eng.denominator(tp, n + 1, r);
                Subspace img = eng.z(p, n, r).image_under(c.d(n)) + den;
                std::size_t rk = img.dim() - den.dim();
                if (rk != 0) page.d_ranks[{p, n - p}] = rk;
            }
        pages.push_back(std::move(page));
    }
    return pages;
}

int stable_page(const FilteredVectorComplex& fc) { return fc.s_hi() - fc.s_lo() + 3; }

}  // namespace synkernel
