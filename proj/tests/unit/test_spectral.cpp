#include "synkernel/spectral.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace synkernel;

namespace {

std::vector<std::vector<Subspace>> one_step(const VectorComplex& c) {
    std::vector<std::vector<Subspace>> steps;
    for (int n = c.lo(); n <= c.hi(); ++n) steps.push_back({Subspace::full(c.dim(n))});
    return steps;
}

}  // namespace

TEST(Spectral, TrivialFiltrationGivesCohomologyOnPageOne) {
    Matrix d0{{0, 0}, {0, 0}, {-1, 1}};
    Matrix d1{{-4, 0, 0}};
    VectorComplex c(0, {2, 3, 1}, {d0, d1});
    FilteredVectorComplex fc(c, 0, one_step(c));
    fc.check();
    auto pages = spectral_sequence(fc, 4);
    for (int r = 1; r <= 4; ++r) {
        EXPECT_EQ(pages[r].dim(0, 0), 1u);
        EXPECT_EQ(pages[r].dim(0, 1), 1u);
        EXPECT_EQ(pages[r].dim(0, 2), 0u);
        EXPECT_TRUE(pages[r].d_ranks.empty());
    }
    EXPECT_EQ(pages[0].dim(0, 1), 3u);
}

TEST(Spectral, TwoStepAcyclicConvergesToZero) {
    VectorComplex c(0, {1, 1}, {Matrix::identity(1)});
    // F^1 = degree 1 only: the differential crosses filtration levels.
    std::vector<std::vector<Subspace>> steps{{Subspace::full(1), Subspace::zero(1)},
                                             {Subspace::full(1), Subspace::full(1)}};
    FilteredVectorComplex fc(c, 0, steps);
    fc.check();
    auto pages = spectral_sequence(fc, 4);
    EXPECT_EQ(pages[1].dim(0, 0), 1u);
    EXPECT_EQ(pages[1].dim(1, 0), 1u);
    EXPECT_EQ(pages[1].rank_from(0, 0), 1u);
    for (int r = 2; r <= 4; ++r) EXPECT_TRUE(pages[r].dims.empty());
}

TEST(Spectral, PageRecursionAndConvergenceOnRandomFiltrations) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 15; ++t) {
        // Random complex with a random d-stable three-step filtration: F^s spanned
        // by the images of coordinate flags, closed under d.
        std::vector<std::size_t> dims{1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3};
        VectorComplex c(0, dims, {});
        Matrix d1(dims[2], dims[1]);
        for (std::size_t i = 0; i < d1.rows(); ++i)
            for (std::size_t j = 0; j < d1.cols(); ++j) d1(i, j) = static_cast<long>(rng() % 3) - 1;
        Matrix k = kernel(d1);
        Matrix coeff(k.cols(), dims[0]);
        for (std::size_t i = 0; i < coeff.rows(); ++i)
            for (std::size_t j = 0; j < coeff.cols(); ++j) coeff(i, j) = static_cast<long>(rng() % 3) - 1;
        c.set_d(0, k * coeff);
        c.set_d(1, d1);
        c.check();
        std::vector<std::vector<Subspace>> steps(3);
        for (int s = 0; s < 3; ++s) {
            // generate then close under d, degree by degree
            std::vector<Subspace> f(3);
            for (int n = 0; n < 3; ++n) {
                std::size_t take = dims[n] > static_cast<std::size_t>(s) ? dims[n] - s : 0;
                f[n] = Subspace::span(Matrix::identity(dims[n]).block(0, 0, dims[n], take), dims[n]);
            }
            for (int n = 0; n < 2; ++n) f[n + 1] = f[n + 1] + f[n].image_under(c.d(n));
            for (int n = 0; n < 3; ++n) steps[n].push_back(f[n]);
        }
        // enforce nesting by intersecting downward
        for (int n = 0; n < 3; ++n)
            for (int s = 1; s < 3; ++s) steps[n][s] = steps[n][s].intersect(steps[n][s - 1]);
        FilteredVectorComplex fc(c, 0, steps);
        try {
            fc.check();
        } catch (const std::invalid_argument&) {
            continue;
        }
        auto pages = spectral_sequence(fc, 6);
        for (int r = 0; r < 6; ++r)
            for (int n = 0; n < 3; ++n)
                for (int p = -1; p <= 3; ++p) {
                    int q = n - p;
                    std::size_t in = 0;
                    // d_r lands in (p, q) from (p - r, q + r - 1)
                    in = pages[r].rank_from(p - r, q + r - 1);
                    EXPECT_EQ(pages[r + 1].dim(p, q), pages[r].dim(p, q) - pages[r].rank_from(p, q) - in);
                }
        auto h = cohomology_dims(c, 0, 2);
        for (int n = 0; n < 3; ++n) {
            std::size_t total = 0;
            for (int p = -1; p <= 3; ++p) total += pages[6].dim(p, n - p);
            EXPECT_EQ(total, h[n]);
        }
    }
}
