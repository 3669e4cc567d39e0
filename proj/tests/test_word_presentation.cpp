#include <doctest.h>

#include "kap/error.hpp"
#include "kap/presentation.hpp"
#include "kap/word.hpp"

using namespace kap;

TEST_CASE("free reduction and word ops") {
    CHECK(free_reduce({1, -1}) == Word{});
    CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
    CHECK(word_inverse({1, -2, 3}) == Word{-3, 2, -1});
    CHECK(word_concat({1, 2}, {-2, 3}) == Word{1, 3});
    CHECK(word_pow({1}, -3) == Word{-1, -1, -1});
    CHECK(exponent_sum({1, 1, -2, 3}) == 2);
    CHECK(exponent_sum({1, 1, -2, 3}, 1) == 2);
    CHECK(exponent_sum({1, 1, -2, 3}, 2) == -1);
}

TEST_CASE("substitute and renumber") {
    // replace g2 by g1 g3 g1^-1 inside g2 g2^-1 g2
    Word w = substitute({2, 1, -2}, 2, {1, 3, -1});
    CHECK(w == free_reduce(Word{1, 3, -1, 1, 1, -3, -1}));
    CHECK(renumber_after_removal({1, -3, 3}, 2) == Word{1, -2, 2});
}

TEST_CASE("conjugated letter recognition") {
    Word conj;
    int letter;
    CHECK(as_conjugated_letter({1, 2, -1}, conj, letter));
    CHECK(conj == Word{1});
    CHECK(letter == 2);
    CHECK(as_conjugated_letter({-3}, conj, letter));
    CHECK(conj.empty());
    CHECK(letter == -3);
    CHECK_FALSE(as_conjugated_letter({1, 2}, conj, letter));
    CHECK_FALSE(as_conjugated_letter({1, 2, -1, -2}, conj, letter));
}

TEST_CASE("parse_two_bridge") {
    auto k = parse_two_bridge("1/1");
    CHECK(k.p == 1);
    CHECK(k.q == 1);
    k = parse_two_bridge("3/1");
    CHECK(k.p == 3);
    CHECK(k.q == 1);
    k = parse_two_bridge("5/3");
    CHECK(k.p == 5);
    CHECK(k.q == 3);
    // normalization q mod p
    k = parse_two_bridge("5/8");
    CHECK(k.q == 3);

    CHECK_THROWS_WITH_AS(parse_two_bridge("4/1"), doctest::Contains("EvenP"), Error);
    CHECK_THROWS_WITH_AS(parse_two_bridge("9/3"), doctest::Contains("NotCoprime"), Error);
    CHECK_THROWS_WITH_AS(parse_two_bridge("abc"), doctest::Contains("MalformedFraction"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_two_bridge("3/x"), doctest::Contains("MalformedFraction"),
                         Error);
}

TEST_CASE("schubert words") {
    CHECK(schubert_word(3, 1) == Word{1, 2});
    CHECK(schubert_word(5, 3) == Word{1, -2, -1, 2});
    // even q uses the odd representative q - p of the same knot
    CHECK(schubert_word(5, 2) == Word{-1, 2, 1, -2});
}

TEST_CASE("two-bridge presentations") {
    auto unknot = presentation_two_bridge(TwoBridgeKnot::make(1, 1));
    CHECK(unknot.generator_count == 1);
    CHECK(unknot.relators.empty());
    CHECK(unknot.longitude.empty());
    CHECK(unknot.h1_image(unknot.meridian) == 1);

    auto tref = presentation_two_bridge(TwoBridgeKnot::make(3, 1));
    CHECK(tref.generator_count == 2);
    REQUIRE(tref.relators.size() == 1);
    // w a w^-1 b^-1 with w = ab is the braid relation aba = bab
    CHECK(tref.relators[0] == Word{1, 2, 1, -2, -1, -2});
    CHECK(tref.h1_image(tref.meridian) == 1);
    CHECK(tref.h1_image(tref.longitude) == 0);
    CHECK(tref.h1_image(tref.relators[0]) == 0);
    // longitude framing: exponent sum zero with generators identified
    CHECK(exponent_sum(tref.longitude) == 0);

    auto fig8 = presentation_two_bridge(TwoBridgeKnot::make(5, 3));
    CHECK(exponent_sum(fig8.longitude) == 0);
    CHECK(exponent_sum(fig8.relators[0]) == 0);
    CHECK(exponent_sum(fig8.meridian) == 1);
}

TEST_CASE("torus presentation") {
    auto t23 = presentation_torus(TorusKnotParams::make(2, 3));
    REQUIRE(t23.relators.size() == 1);
    CHECK(t23.relators[0] == Word{1, 1, -2, -2, -2});
    // H1: x -> q = 3, y -> p = 2; meridian x^-r y^s with ps - qr = 1
    CHECK(t23.h1_image(t23.meridian) == 1);
    CHECK(t23.h1_image(t23.longitude) == 0);

    auto t25 = presentation_torus(TorusKnotParams::make(2, 5));
    CHECK(t25.h1_image(t25.meridian) == 1);
    CHECK(t25.h1_image(t25.longitude) == 0);

    CHECK_THROWS_AS(TorusKnotParams::make(1, 5), Error);
    CHECK_THROWS_AS(TorusKnotParams::make(4, 6), Error);
}

TEST_CASE("braid parsing") {
    CHECK_THROWS_WITH_AS(parse_braid(""), doctest::Contains("EmptyWord"), Error);
    CHECK_THROWS_WITH_AS(parse_braid("aa"), doctest::Contains("MultiComponentLink"), Error);

    auto unknot = parse_braid("a");
    CHECK(unknot.generator_count == 1);
    CHECK(unknot.relators.empty());
    CHECK(unknot.longitude.empty());

    auto tref = parse_braid("aaa");
    CHECK(tref.h1_image(tref.meridian) == 1);
    CHECK(tref.h1_image(tref.longitude) == 0);
    for (const auto& r : tref.relators) CHECK(tref.h1_image(r) == 0);

    auto fig8 = parse_braid("aBaB");
    CHECK(fig8.h1_image(fig8.meridian) == 1);
    CHECK(fig8.h1_image(fig8.longitude) == 0);
}

TEST_CASE("knot spec dispatch") {
    CHECK(parse_knot_spec("3/1").label == "two-bridge 3/1");
    CHECK(parse_knot_spec("torus:2,3").label == "torus 2,3");
    CHECK(parse_knot_spec("braid:aaa").label == "braid aaa");
    CHECK_THROWS_AS(parse_knot_spec("torus:abc"), Error);
}

TEST_CASE("presentation JSON round trip") {
    auto p = presentation_two_bridge(TwoBridgeKnot::make(5, 3));
    auto q = presentation_from_json(presentation_to_json(p));
    CHECK(q.generator_count == p.generator_count);
    CHECK(q.relators == p.relators);
    CHECK(q.meridian == p.meridian);
    CHECK(q.longitude == p.longitude);
    CHECK(q.label == p.label);
}
