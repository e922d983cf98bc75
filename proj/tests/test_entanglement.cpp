#include "doctest.h"

#include "oracles.hpp"
#include "qdiscord/entanglement.hpp"
#include "qdiscord/families.hpp"
#include "qdiscord/random.hpp"

using namespace qdiscord;
using doctest::Approx;

TEST_CASE("spin_flip_spectrum examples") {
    const auto bell = spin_flip_spectrum(projector(bell_phi_plus()));
    CHECK(bell.lambdas(0) == Approx(1.0).epsilon(1e-14));
    for (int i = 1; i < 4; ++i) CHECK(bell.lambdas(i) <= 1e-15);

    Vector4c<double> product = Vector4c<double>::Zero();
    product(1) = 1.0;
    CHECK(concurrence(spin_flip_spectrum(projector(product))) == 0.0);

    CHECK(concurrence(spin_flip_spectrum(make_family(Werner{1.0}))) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spin_flip_spectrum is descending and non-negative") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto spec = spin_flip_spectrum(random_state(s));
        for (int i = 0; i < 3; ++i) CHECK(spec.lambdas(i) >= spec.lambdas(i + 1));
        CHECK(spec.lambdas(3) >= 0.0);
    }
}

TEST_CASE("pure states have exactly one nonzero spin-flip eigenvalue") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto spec = spin_flip_spectrum(projector(random_pure_state(s)));
        for (int i = 1; i < 4; ++i) CHECK(spec.lambdas(i) <= 1e-14);
    }
}

TEST_CASE("concurrence examples") {
    CHECK(concurrence(projector(bell_phi_plus())) == Approx(1.0).epsilon(1e-14));
    CHECK(concurrence(Density::maximally_mixed()) == 0.0);
    CHECK(concurrence(make_family(Alpha{0.75})) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("eof examples") {
    CHECK(eof_from_concurrence(1.0) == 1.0);
    CHECK(eof_from_concurrence(0.0) == 0.0);
    const double ref = static_cast<double>(oracle::eof_of_concurrence(0.5L));
    // 30-digit evaluation of h((1 + sqrt(3/4)) / 2).
    CHECK(ref == Approx(0.354578902665269884).epsilon(1e-15));
    CHECK(eof_from_concurrence(0.5) == Approx(ref).epsilon(1e-14));
    CHECK(eof(projector(bell_phi_plus())) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("SVD route matches the product-eigenvalue route") {
    for (std::uint64_t s = 0; s < 500; ++s) {
        const auto rho = random_state(derive_seed(8, s));
        const Eigen::Vector4d ref = oracle::spin_flip_roots_product(rho.matrix());
        const auto spec = spin_flip_spectrum(rho);
        for (int i = 0; i < 4; ++i) CHECK(spec.roots(i) == Approx(ref(i)).epsilon(1e-8));
        CHECK(std::abs(concurrence(rho) - oracle::concurrence_product(rho.matrix())) <= 1e-8);
    }
}

TEST_CASE("pure-state concurrence equals 2|ad - bc|") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Vector4c<double> psi = random_pure_state(s);
        const double ref = 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
        CHECK(concurrence(projector(psi)) == Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("eof is monotone in concurrence and bounded") {
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double e = eof_from_concurrence(i / 1000.0);
        CHECK(e >= prev);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        prev = e;
    }
}

TEST_CASE("long double concurrence matches double") {
    const auto rho = make_family<long double>(Alpha{0.8});
    CHECK(static_cast<double>(concurrence(rho)) == Approx(0.6).epsilon(1e-15));
    CHECK(static_cast<double>(eof(rho)) == Approx(static_cast<double>(oracle::eof_of_concurrence(0.6L))).epsilon(1e-15));
}
