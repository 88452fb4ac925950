#include <gtest/gtest.h>

#include <random>

#include "kneading/report_io.hpp"
#include "random_systems.hpp"

using namespace kneading;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

std::string letters(const Itinerary& it, int modality = 1) {
    std::string s;
    for (const auto& l : it.letters) s += l.str(modality);
    return s;
}

std::string crl(int depth) { return "CR" + std::string(static_cast<std::size_t>(depth - 2), 'L'); }

}  // namespace

TEST(Symbolic, AddressExamples) {
    auto f = MapSequence::builtin("paper-f");
    EXPECT_EQ(address(f, 1, R(0)).str(1), "L");
    EXPECT_EQ(address(f, 1, R(5, 6)).str(1), "C");
    EXPECT_EQ(address(f, 2, R(1)).str(1), "R");
    EXPECT_EQ(address(f, 2, R(3, 4)), Letter::turning(1));
    EXPECT_THROW(address(f, 1, R(2)), DomainError);
}

TEST(Symbolic, ItineraryExamples) {
    auto f = MapSequence::builtin("paper-f");
    auto q = MapSequence::builtin("paper-q");
    EXPECT_EQ(letters(itinerary(f, 1, R(5, 6), 4)), "CRLL");
    EXPECT_EQ(letters(itinerary(q, 1, R(1, 2), 4)), "CRLC");
    EXPECT_EQ(q.iterate(1, 2, R(1, 2)), R(2, 7));
    EXPECT_EQ(q.iterate(1, 3, R(1, 2)), R(1, 2));
    for (const char* name : {"paper-f", "paper-g", "paper-q", "tent"})
        for (long n = 1; n <= 5; ++n) EXPECT_EQ(letters(itinerary(MapSequence::builtin(name), n, R(0), 7)), "LLLLLLL");
}

TEST(Symbolic, LetterRoundTrip) {
    for (int ell = 1; ell <= 4; ++ell) {
        for (int j = 1; j <= ell + 1; ++j) EXPECT_EQ(Letter::parse(Letter::interval(j).str(ell), ell), Letter::interval(j));
        for (int j = 1; j <= ell; ++j) EXPECT_EQ(Letter::parse(Letter::turning(j).str(ell), ell), Letter::turning(j));
    }
    EXPECT_EQ(Letter::turning(2).str(3), "C2");
    EXPECT_EQ(Letter::interval(4).str(3), "I4");
    EXPECT_THROW(Letter::parse("I4", 2), ParseError);
    EXPECT_THROW(Letter::parse("X", 1), ParseError);
}

TEST(Symbolic, KneadingTableExamples) {
    auto f = MapSequence::builtin("paper-f");
    auto t = kneading_table(f, 1, 50, 30);
    ASSERT_EQ(t.rows.size(), 50u);
    for (const auto& row : t.rows) EXPECT_EQ(letters(row.itinerary), crl(30)) << row.n;

    auto tent = MapSequence::constant(tent_map());
    for (const auto& row : kneading_table(tent, 1, 5, 10).rows) EXPECT_EQ(letters(row.itinerary), crl(10));

    auto depth1 = kneading_table(gen::bimodal_sample(1), 3, 3, 1);
    ASSERT_EQ(depth1.rows.size(), 2u);
    EXPECT_EQ(depth1.row(3, 1).itinerary.letters, std::vector<Letter>{Letter::turning(1)});
    EXPECT_EQ(depth1.row(3, 2).itinerary.letters, std::vector<Letter>{Letter::turning(2)});
}

TEST(Symbolic, CompareExamples) {
    auto f = MapSequence::builtin("paper-f"), g = MapSequence::builtin("paper-g"), q = MapSequence::builtin("paper-q");
    EXPECT_TRUE(is_equal(compare_kneading(kneading_table(f, 1, 50, 30), kneading_table(g, 1, 50, 30))));
    auto tent = kneading_table(MapSequence::builtin("tent"), 1, 4, 9);
    EXPECT_TRUE(is_equal(compare_kneading(tent, tent)));

    auto c = compare_kneading(kneading_table(f, 1, 5, 6), kneading_table(q, 1, 5, 6));
    ASSERT_FALSE(is_equal(c));
    const auto& m = std::get<KneadingMismatch>(c);
    EXPECT_EQ(m.n, 1);
    EXPECT_EQ(m.j, 1);
    EXPECT_EQ(m.position, 3);
    EXPECT_EQ(m.a.str(1), "L");
    EXPECT_EQ(m.b.str(1), "C");

    EXPECT_THROW(compare_kneading(kneading_table(f, 1, 5, 6), kneading_table(g, 1, 5, 7)), ShapeMismatch);
    EXPECT_THROW(compare_kneading(kneading_table(f, 1, 5, 6), kneading_table(g, 2, 6, 6)), ShapeMismatch);
}

TEST(Symbolic, TurningLetterExactlyAtTurningPoints) {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = MapSequence::builtin("full-family-M-sample", {{"seed", std::to_string(seed)}});
        for (long n = 1; n <= 5; ++n) {
            const Rational c = s.level_map(n).turning_points()[0];
            EXPECT_TRUE(address(s, n, c).is_turning());
            for (long den : {1000L, 1000000L, 1000000000L}) {
                EXPECT_FALSE(address(s, n, c + R(1, den)).is_turning());
                EXPECT_FALSE(address(s, n, c - R(1, den)).is_turning());
            }
            Rational x(static_cast<long>(rng() % 1001), 1000);
            EXPECT_EQ(address(s, n, x).is_turning(), x == c);
        }
    }
}

TEST(Symbolic, ShiftProperty) {
    std::mt19937_64 rng(23);
    std::vector<MapSequence> seqs{MapSequence::builtin("paper-f"), MapSequence::builtin("paper-g"),
                                  MapSequence::builtin("paper-q"), MapSequence::builtin("tent"), gen::bimodal_sample(3)};
    for (std::uint64_t s = 0; s < 5; ++s) seqs.push_back(MapSequence::builtin("full-family-M-sample", {{"seed", std::to_string(s)}}));
    for (const auto& seq : seqs)
        for (int i = 0; i < 30; ++i) {
            long n = 1 + static_cast<long>(rng() % 10);
            int k = 2 + static_cast<int>(rng() % 11);
            Rational x(static_cast<long>(rng() % 10001), 10000);
            Itinerary it = itinerary(seq, n, x, k);
            Itinerary shifted = itinerary(seq, n + 1, seq.level_map(n)(x), k - 1);
            EXPECT_EQ(std::vector<Letter>(it.letters.begin() + 1, it.letters.end()), shifted.letters);
        }
}

TEST(Symbolic, CompareIsAnEquivalence) {
    std::mt19937_64 rng(29);
    auto base = MapSequence::builtin("full-family-M-sample", {{"seed", "3"}});
    auto p1 = gen::random_conjugate_pair(base, rng);
    auto p2 = gen::random_conjugate_pair(base, rng);
    std::vector<KneadingTable> tables;
    for (const auto* s : {&base, &p1.G, &p2.G, &p1.F}) tables.push_back(kneading_table(*s, 1, 6, 10));
    tables.push_back(kneading_table(MapSequence::builtin("paper-q"), 1, 6, 10));
    tables.push_back(kneading_table(MapSequence::builtin("paper-f"), 1, 6, 10));
    for (const auto& a : tables) {
        EXPECT_TRUE(is_equal(compare_kneading(a, a)));
        for (const auto& b : tables) {
            bool ab = is_equal(compare_kneading(a, b));
            EXPECT_EQ(ab, is_equal(compare_kneading(b, a)));
            for (const auto& c : tables)
                if (ab && is_equal(compare_kneading(b, c))) {
                    EXPECT_TRUE(is_equal(compare_kneading(a, c)));
                }
        }
    }
    EXPECT_TRUE(is_equal(compare_kneading(tables[0], tables[1])));
    EXPECT_TRUE(is_equal(compare_kneading(tables[1], tables[2])));
}

TEST(Symbolic, ConjugacyInvariance) {
    std::mt19937_64 rng(31);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto base = MapSequence::builtin("full-family-M-sample", {{"seed", std::to_string(seed)}});
        auto pair = gen::random_conjugate_pair(base, rng);
        for (int k : {1, 4, 9, 14})
            EXPECT_TRUE(is_equal(compare_kneading(kneading_table(pair.F, 1, 8, k), kneading_table(pair.G, 1, 8, k))))
                << "seed " << seed << " depth " << k;
    }
}

TEST(Symbolic, ParallelTableIsDeterministic) {
    auto s = MapSequence::builtin("full-family-M-sample", {{"seed", "12"}});
    auto one = kneading_table(s, 1, 40, 20, 1);
    auto four = kneading_table(s, 1, 40, 20, 4);
    EXPECT_EQ(kneading_csv(one), kneading_csv(four));
    EXPECT_EQ(kneading_json(one).dump(), kneading_json(four).dump());
}

TEST(Symbolic, TableSerializationRoundTrip) {
    auto t = kneading_table(gen::bimodal_sample(4), 2, 6, 8);
    auto back = kneading_from_json(kneading_json(t));
    EXPECT_EQ(kneading_csv(back), kneading_csv(t));
    EXPECT_TRUE(is_equal(compare_kneading(back, t)));
    EXPECT_EQ(kneading_csv(kneading_table(MapSequence::builtin("paper-f"), 1, 1, 5)), "n,j,p0,p1,p2,p3,p4\n1,1,C,R,L,L,L\n");
}
