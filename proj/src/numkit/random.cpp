#include "qfront/random.hpp"

#include <cmath>
#include <vector>

namespace qfront::random {

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::vector<std::uint32_t> words;
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (const auto k : keys) {
        push(k);
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

namespace {

Complex gaussian(Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

}  // namespace

Ket random_state(std::size_t dim, Rng& rng) {
    Ket v(dim);
    for (auto& z : v) {
        z = gaussian(rng);
    }
    return normalized(v);
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng, double scale) {
    ComplexMatrix a(dim, dim);
    std::normal_distribution<double> nd(0.0, scale);
    for (std::size_t i = 0; i < dim; ++i) {
        a(i, i) = nd(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double re = nd(rng);
            const double im = nd(rng);
            a(i, j) = Complex(re, im) / std::sqrt(2.0);
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

ComplexMatrix haar_unitary(std::size_t dim, Rng& rng) {
    std::vector<ComplexVector> cols;
    while (true) {
        cols.clear();
        for (std::size_t c = 0; c < dim; ++c) {
            Ket v(dim);
            for (auto& z : v) {
                z = gaussian(rng);
            }
            cols.push_back(std::move(v));
        }
        const auto q = gram_schmidt_extend(cols, 1e-8);
        if (q.size() == dim) {
            ComplexMatrix u(dim, dim);
            for (std::size_t c = 0; c < dim; ++c) {
                u.set_column(c, q[c]);
            }
            return u;
        }
    }
}

}  // namespace qfront::random
