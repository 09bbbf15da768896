#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "parskew/linalg.hpp"

using namespace parskew;
using testutil::q;
using testutil::qv;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows.begin()->size());
    Matrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long long v : row) m.at(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

Vec apply_rows(const Matrix& m, const Vec& x) { return m.apply(x); }

}  // namespace

TEST_CASE("solve_linear on the identity") {
    Matrix id = Matrix::identity(2);
    Vec v{Rational(3), q(-1, 2)};
    auto sol = solve_linear(id, v);
    REQUIRE(sol.solution);
    CHECK(*sol.solution == v);
    CHECK(sol.kernel.empty());
}

TEST_CASE("solve_linear with a one-dimensional kernel") {
    Matrix m = from_rows({{1, 1}});
    auto sol = solve_linear(m, Vec{Rational(1)});
    REQUIRE(sol.solution);
    CHECK(apply_rows(m, *sol.solution) == Vec{Rational(1)});
    REQUIRE(sol.kernel.size() == 1);
    CHECK(apply_rows(m, sol.kernel[0]) == Vec{Rational(0)});
}

TEST_CASE("solve_linear detects inconsistency") {
    Matrix m = from_rows({{1, 0}, {1, 0}});
    auto sol = solve_linear(m, qv({1, 2}));
    CHECK_FALSE(sol.solution);
    REQUIRE(sol.kernel.size() == 1);
}

TEST_CASE("solutions and kernels re-substitute exactly on random systems") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
        Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                m.at(r, c) = rat(static_cast<long long>(rng() % 7) - 3, 1 + static_cast<long long>(rng() % 3));
        // rhs in the image, so the system is consistent by construction
        Vec x0(static_cast<size_t>(cols));
        for (auto& e : x0) e = rat(static_cast<long long>(rng() % 9) - 4, 1 + static_cast<long long>(rng() % 4));
        Vec rhs = m.apply(x0);
        auto sol = solve_linear(m, rhs);
        REQUIRE(sol.solution);
        CHECK(m.apply(*sol.solution) == rhs);
        for (const Vec& k : sol.kernel) CHECK(is_zero(m.apply(k)));
        // rank-nullity
        CHECK(rank(m) + static_cast<int>(sol.kernel.size()) == cols);
    }
}

TEST_CASE("inverse round-trips") {
    Matrix m = from_rows({{2, 1, 0}, {0, 1, -1}, {1, 0, 3}});
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK((*inv * m) == Matrix::identity(3));
    CHECK((m * *inv) == Matrix::identity(3));
    CHECK_FALSE(inverse(from_rows({{1, 1}, {2, 2}})));
}

TEST_CASE("row reducer computes ranks, membership and canonical residuals") {
    RowReducer red(4);
    CHECK(red.insert({{0, Rational(1)}, {2, Rational(2)}}));
    CHECK(red.insert({{1, Rational(1)}}));
    CHECK_FALSE(red.insert({{0, Rational(2)}, {1, Rational(3)}, {2, Rational(4)}}));
    CHECK(red.rank() == 2);
    CHECK(red.contains({{0, Rational(-1)}, {2, Rational(-2)}}));
    CHECK_FALSE(red.contains({{3, Rational(1)}}));
    // residuals vanish at pivot columns
    SparseVec r = red.reduce({{0, Rational(1)}, {3, Rational(5)}});
    for (const auto& [c, v] : r) CHECK((c == 2 || c == 3));
    CHECK(red.free_cols() == std::vector<int>{2, 3});
}

TEST_CASE("row reducer rank agrees with fraction-free rank on random sparse spans") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const int cols = 8;
        const int nrows = 1 + static_cast<int>(rng() % 10);
        RowReducer red(cols);
        Matrix m(nrows, cols);
        for (int r = 0; r < nrows; ++r) {
            SparseVec row;
            for (int c = 0; c < cols; ++c) {
                if (rng() % 3 == 0) {
                    Rational v = rat(static_cast<long long>(rng() % 5) - 2, 1);
                    if (!v.is_zero()) {
                        row.emplace_back(c, v);
                        m.at(r, c) = v;
                    }
                }
            }
            red.insert(row);
        }
        CHECK(red.rank() == rank(m));
    }
}
