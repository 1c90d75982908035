#include <doctest.h>

#include <random>

#include "diractk/mat2.hpp"

using namespace dtk;

namespace {
Mat2 random_mat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto c = [&] { return cplx(u(rng), u(rng)); };
    return Mat2{c(), c(), c(), c()};
}
} // namespace

TEST_CASE("frobenius norm basics") {
    CHECK(frob_norm(matB()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(frob_norm(Mat2{}) == 0.0);
    CHECK(frob_norm(Mat2{3.0, 0.0, 0.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("frobenius norm is submultiplicative") {
    std::mt19937 rng(7);
    for (int k = 0; k < 100; ++k) {
        const Mat2 a = random_mat(rng), b = random_mat(rng);
        CHECK(frob_norm(a * b) <= frob_norm(a) * frob_norm(b) * (1.0 + 1e-14));
    }
}

TEST_CASE("B squared is minus identity") {
    const Mat2 b2 = matB() * matB();
    CHECK(frob_norm(b2 + Mat2::identity()) == 0.0);
}

TEST_CASE("projector values on the identity") {
    CHECK(frob_norm(proj(Mat2::identity(), ProjSign::Plus)) == 0.0);
    CHECK(frob_norm(proj(Mat2::identity(), ProjSign::Minus) - Mat2::identity()) == 0.0);
}

TEST_CASE("potential-shaped matrices are annihilated by proj minus") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        const cplx p(u(rng), u(rng)), q(u(rng), u(rng));
        const Mat2 Q{p, q, q, -p};
        CHECK(frob_norm(proj(Q, ProjSign::Minus)) < 1e-14 * (1.0 + frob_norm(Q)));
        CHECK(frob_norm(proj(Q, ProjSign::Plus) - Q) < 1e-14 * (1.0 + frob_norm(Q)));
    }
}

TEST_CASE("projectors sum to the identity map and are idempotent") {
    std::mt19937 rng(23);
    for (int k = 0; k < 50; ++k) {
        const Mat2 a = random_mat(rng);
        const Mat2 plus = proj(a, ProjSign::Plus), minus = proj(a, ProjSign::Minus);
        CHECK(frob_norm(plus + minus - a) <= 1e-15 * (1.0 + frob_norm(a)));
        CHECK(frob_norm(proj(plus, ProjSign::Plus) - plus) <= 1e-14 * frob_norm(a));
        CHECK(frob_norm(proj(minus, ProjSign::Minus) - minus) <= 1e-14 * frob_norm(a));
    }
}

TEST_CASE("projection images anticommute / commute with B") {
    // image of proj(.,+) anticommutes with B, image of proj(.,-) commutes
    std::mt19937 rng(31);
    const Mat2 B = matB();
    for (int k = 0; k < 50; ++k) {
        const Mat2 a = random_mat(rng);
        const Mat2 plus = proj(a, ProjSign::Plus), minus = proj(a, ProjSign::Minus);
        CHECK(frob_norm(B * plus + plus * B) <= 1e-14 * frob_norm(a));
        CHECK(frob_norm(B * minus - minus * B) <= 1e-14 * frob_norm(a));
    }
}
