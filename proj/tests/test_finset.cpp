#include <doctest.h>

#include "sheafdp/finset.hpp"
#include "test_util.hpp"

using namespace sheafdp;
using testutil::all_fns;
using testutil::random_fn;

TEST_CASE("compose substitutes tables") {
    FinFn id3 = identity_fn(3);
    CHECK(compose(id3, id3) == id3);

    FinFn f{{0, 0}, 1};
    FinFn g{{1}, 2};
    FinFn fg = compose(f, g);
    CHECK(fg.table == std::vector<int>{1, 1});
    CHECK(fg.cod == 2);
}

TEST_CASE("compose rejects mismatched boundaries") {
    CHECK_THROWS_AS(compose(FinFn{{0}, 2}, FinFn{{0}, 1}), std::invalid_argument);
}

TEST_CASE("compose is associative") {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int a = 1 + static_cast<int>(rng() % 5);
        int b = 1 + static_cast<int>(rng() % 5);
        int c = 1 + static_cast<int>(rng() % 5);
        int d = 1 + static_cast<int>(rng() % 5);
        FinFn f = random_fn(rng, a, b);
        FinFn g = random_fn(rng, b, c);
        FinFn h = random_fn(rng, c, d);
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    }
}

TEST_CASE("pullback of identities is the diagonal") {
    PullbackResult p = pullback(identity_fn(2), identity_fn(2));
    CHECK(p.apex.size == 2);
    CHECK(p.to_a.table == std::vector<int>{0, 1});
    CHECK(p.to_b.table == std::vector<int>{0, 1});
}

TEST_CASE("pullback over a point is the product") {
    FinFn f{{0, 0}, 1};
    FinFn g{{0, 0, 0}, 1};
    CHECK(pullback(f, g).apex.size == 6);
}

TEST_CASE("pullback keeps exactly the agreeing pairs") {
    FinFn f{{0, 1}, 2};
    FinFn g{{1, 0}, 2};
    PullbackResult p = pullback(f, g);
    // Expected pairs computed by direct enumeration of the 2x2 candidates.
    std::vector<std::pair<int, int>> expected;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (f.table[a] == g.table[b]) expected.emplace_back(a, b);
        }
    }
    REQUIRE(p.apex.size == static_cast<int>(expected.size()));
    CHECK(p.apex.size == 2);
    for (int i = 0; i < p.apex.size; ++i) {
        CHECK(expected[i] == std::make_pair(p.to_a.table[i], p.to_b.table[i]));
    }
}

TEST_CASE("pullback rejects different codomains") {
    CHECK_THROWS_AS(pullback(FinFn{{0}, 1}, FinFn{{0}, 2}), std::invalid_argument);
}

TEST_CASE("pullback satisfies the universal property") {
    testutil::Rng rng(23);
    int factored = 0;
    while (factored < 50) {
        int a = 1 + static_cast<int>(rng() % 4);
        int b = 1 + static_cast<int>(rng() % 4);
        int c = 1 + static_cast<int>(rng() % 3);
        int z = 1 + static_cast<int>(rng() % 4);
        FinFn f = random_fn(rng, a, c);
        FinFn g = random_fn(rng, b, c);
        FinFn p = random_fn(rng, z, a);
        FinFn q = random_fn(rng, z, b);
        if (compose(p, f) != compose(q, g)) continue;
        ++factored;

        PullbackResult pb = pullback(f, g);
        // The pairing map is the unique factorization; uniqueness holds
        // because distinct apex elements are distinct pairs.
        FinFn u;
        u.cod = pb.apex.size;
        for (int i = 0; i < z; ++i) {
            int found = -1;
            for (int j = 0; j < pb.apex.size; ++j) {
                if (pb.to_a.table[j] == p.table[i] && pb.to_b.table[j] == q.table[i]) {
                    CHECK(found == -1);
                    found = j;
                }
            }
            REQUIRE(found >= 0);
            u.table.push_back(found);
        }
        CHECK(compose(u, pb.to_a) == p);
        CHECK(compose(u, pb.to_b) == q);
    }
}

TEST_CASE("image scans first occurrences") {
    ImageFactorization constant = image(FinFn{{0, 0, 0}, 2});
    CHECK(constant.image.size == 1);

    ImageFactorization perm = image(FinFn{{1, 2, 0}, 3});
    CHECK(perm.image.size == 3);
    CHECK(is_injective(perm.inclusion));

    ImageFactorization two = image(FinFn{{2, 0, 2}, 3});
    CHECK(two.image.size == 2);
    CHECK(two.inclusion.table == std::vector<int>{2, 0});
}

TEST_CASE("image factorization is exact on all small functions") {
    for (int dom = 0; dom <= 4; ++dom) {
        for (int cod = 0; cod <= 4; ++cod) {
            for (const FinFn& f : all_fns(dom, cod)) {
                ImageFactorization fac = image(f);
                CHECK(compose(fac.corestriction, fac.inclusion) == f);
                CHECK(is_injective(fac.inclusion));
                CHECK(is_surjective(fac.corestriction));
            }
        }
    }
}

TEST_CASE("pullback apex size is symmetric") {
    for (int cod = 1; cod <= 3; ++cod) {
        for (int a = 0; a <= 3; ++a) {
            for (int b = 0; b <= 3; ++b) {
                for (const FinFn& f : all_fns(a, cod)) {
                    for (const FinFn& g : all_fns(b, cod)) {
                        CHECK(pullback(f, g).apex.size == pullback(g, f).apex.size);
                    }
                }
            }
        }
    }
}

TEST_CASE("pulling back along an injection gives an injection") {
    for (int cod = 1; cod <= 3; ++cod) {
        for (int a = 0; a <= 3; ++a) {
            for (int b = 0; b <= 3; ++b) {
                for (const FinFn& f : all_fns(a, cod)) {
                    if (!is_injective(f)) continue;
                    for (const FinFn& g : all_fns(b, cod)) {
                        CHECK(is_injective(pullback(f, g).to_b));
                    }
                }
            }
        }
    }
}
