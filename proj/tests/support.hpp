#ifndef BALLGROW_TESTS_SUPPORT_HPP
#define BALLGROW_TESTS_SUPPORT_HPP

// Random instance generators shared by the unit and acceptance suites.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <ballgrow/dataset.hpp>
#include <ballgrow/random.hpp>

namespace ballgrow::testkit {

struct Instance {
    Dataset data;
    std::size_t k = 1;
    std::size_t t = 0;
    std::uint64_t seed = 0;
};

/// Mixture of blobs, a uniform background and exact duplicates, so ties and
/// zero radii show up regularly.
inline Dataset random_points(Rng& rng, std::size_t n, std::size_t dim) {
    Dataset out;
    out.dim = dim;
    const std::size_t blobs = 1 + static_cast<std::size_t>(rng.uniform_index(5));
    std::vector<double> centers(blobs * dim);
    for (auto& c : centers) {
        c = rng.uniform(-10, 10);
    }
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto kind = rng.uniform_index(10);
        if (kind == 0 && i > 0) {
            const auto j = static_cast<std::size_t>(rng.uniform_index(i));
            const auto q = out.point(j);
            p.assign(q.begin(), q.end());
        } else if (kind == 1) {
            for (auto& v : p) {
                v = rng.uniform(-30, 30);
            }
        } else {
            const auto b = static_cast<std::size_t>(rng.uniform_index(blobs));
            for (std::size_t j = 0; j < dim; ++j) {
                p[j] = centers[b * dim + j] + rng.normal(0, 0.5);
            }
        }
        out.push_back(p, i);
    }
    return out;
}

/// Instance `index` of a reproducible family: n in [1, max_n], small k and t.
inline Instance random_instance(std::uint64_t family_seed, std::size_t index, std::size_t max_n = 500) {
    Rng rng(family_seed * 1000003 + index, Stream::generate);
    Instance inst;
    const auto n = 1 + static_cast<std::size_t>(rng.uniform_index(max_n));
    const auto dim = 1 + static_cast<std::size_t>(rng.uniform_index(4));
    inst.data = random_points(rng, n, dim);
    inst.k = 1 + static_cast<std::size_t>(rng.uniform_index(8));
    inst.t = static_cast<std::size_t>(rng.uniform_index(12));
    inst.seed = rng.next();
    return inst;
}

}  // namespace ballgrow::testkit

#endif  // BALLGROW_TESTS_SUPPORT_HPP
