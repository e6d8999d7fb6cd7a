#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "oracle.hpp"
#include "relex/core/rng.hpp"
#include "relex/core/state.hpp"
#include "relex/core/vocabulary.hpp"

using namespace relex;

namespace {

const std::vector<std::string> kBlocks{"red", "green", "blue", "yellow"};

}  // namespace

TEST_CASE("rng streams are deterministic and well-ranged") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        all_equal = all_equal && x == b.uniform();
        any_diff = any_diff || x != c.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);

    Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        const uint64_t v = r.uniform_int(10);
        CHECK(v < 10);
    }
}

TEST_CASE("derived seeds differ across indices and streams") {
    std::set<uint64_t> seen;
    for (uint64_t idx = 0; idx < 100; ++idx)
        for (uint64_t stream = 0; stream < 4; ++stream)
            seen.insert(derive_seed(99, idx, stream));
    CHECK(seen.size() == 400);
    CHECK(derive_seed(99, 0, 0) != derive_seed(98, 0, 0));
}

TEST_CASE("bitset matches a set-of-ints model under random operations") {
    constexpr size_t kBits = 130;  // spans three words
    Rng rng(1);
    Bitset bs(kBits);
    std::set<size_t> model;

    auto check_equal = [&]() {
        REQUIRE(bs.count() == model.size());
        for (size_t i = 0; i < kBits; ++i) CHECK(bs.test(i) == (model.count(i) > 0));
        // find_next walks exactly the model's members in order
        std::vector<size_t> walked;
        for (size_t i = bs.find_next(0); i < kBits; i = bs.find_next(i + 1)) walked.push_back(i);
        CHECK(walked == std::vector<size_t>(model.begin(), model.end()));
    };

    for (int step = 0; step < 2000; ++step) {
        const size_t i = rng.uniform_int(kBits);
        switch (rng.uniform_int(3)) {
            case 0:
                bs.set(i);
                model.insert(i);
                break;
            case 1:
                bs.reset(i);
                model.erase(i);
                break;
            case 2:
                bs.assign(i, rng.bernoulli(0.5));
                if (bs.test(i))
                    model.insert(i);
                else
                    model.erase(i);
                break;
        }
        if (step % 200 == 0) check_equal();
    }
    check_equal();

    // binary ops against a second random set
    Bitset other(kBits);
    std::set<size_t> other_model;
    for (int k = 0; k < 60; ++k) {
        const size_t i = rng.uniform_int(kBits);
        other.set(i);
        other_model.insert(i);
    }

    const bool subset = std::includes(model.begin(), model.end(), other_model.begin(),
                                      other_model.end());
    CHECK(bs.contains_all(other) == subset);

    bool any_common = false;
    for (size_t i : other_model) any_common = any_common || model.count(i);
    CHECK(bs.intersects(other) == any_common);

    Bitset u = bs;
    u |= other;
    Bitset n = bs;
    n &= other;
    Bitset d = bs;
    d.subtract(other);
    for (size_t i = 0; i < kBits; ++i) {
        CHECK(u.test(i) == (model.count(i) || other_model.count(i)));
        CHECK(n.test(i) == (model.count(i) && other_model.count(i)));
        CHECK(d.test(i) == (model.count(i) && !other_model.count(i)));
    }

    CHECK(Bitset(kBits).none());
    CHECK_FALSE(bs == other);
    CHECK(bs == bs);
}

TEST_CASE("vocabulary enumerates every atom exactly once") {
    auto vocab = make_vocabulary(kBlocks);
    const size_t n = kBlocks.size();

    // independent count from the schema list: arity-1 => n, arity-2 =>
    // n(n-1) ordered or n(n-1)/2 symmetric
    size_t expected = 0;
    for (const auto& p : standard_predicates()) {
        if (p.arity == 1)
            expected += n;
        else
            expected += p.symmetric ? n * (n - 1) / 2 : n * (n - 1);
    }
    CHECK(expected == 30);
    CHECK(vocab->num_atoms() == expected);

    std::set<std::string> texts;
    for (size_t i = 0; i < vocab->num_atoms(); ++i) {
        const std::string t = vocab->atom_text(i);
        CHECK(texts.insert(t).second);
        const Atom parsed = vocab->parse_atom(t).value();
        CHECK(vocab->index_of(parsed) == i);
    }
}

TEST_CASE("symmetric atoms canonicalize to one index") {
    auto vocab = make_vocabulary(kBlocks);
    const Atom a = vocab->parse_atom("Close(red,green)").value();
    const Atom b = vocab->parse_atom("Close(green,red)").value();
    CHECK(vocab->index_of(a) == vocab->index_of(b));

    const auto close = vocab->find_schema("Close");
    REQUIRE(close.has_value());
    const Atom c = vocab->make_atom(*close, ObjectId{3}, ObjectId{0});
    CHECK(vocab->atom_text(vocab->index_of(c)) == "Close(red,yellow)");

    CHECK_FALSE(vocab->find_schema("Held").has_value());
    CHECK_FALSE(vocab->parse_atom("On(red)").has_value());
    CHECK_FALSE(vocab->parse_atom("Mystery(red,green)").has_value());
}

TEST_CASE("goal satisfaction is atom subset") {
    auto vocab = make_vocabulary(kBlocks);
    LogicalState s(vocab);
    s.insert(*vocab->parse_atom("OnTop(red)"));
    s.insert(*vocab->parse_atom("On(red,green)"));

    GoalConditions g1(vocab);
    g1.insert(*vocab->parse_atom("On(red,green)"));
    CHECK(satisfies(s, g1));

    g1.insert(*vocab->parse_atom("On(green,blue)"));
    CHECK_FALSE(satisfies(s, g1));

    CHECK(satisfies(LogicalState(vocab), GoalConditions(vocab)));  // empty goal

    s.erase(*vocab->parse_atom("On(red,green)"));
    CHECK_FALSE(s.contains(*vocab->parse_atom("On(red,green)")));
    CHECK(s.count() == 1);
}

TEST_CASE("consistency filter agrees with first-principles enumeration") {
    const std::vector<std::string> blocks{"red", "green", "blue"};
    auto vocab = make_vocabulary(blocks);
    REQUIRE(vocab->num_atoms() == 18);

    oracle::Model m{standard_domain(), blocks};
    const auto states = oracle::enumerate_consistent(m);

    // 22 support/held structures (13 chain partitions + 9 with a held
    // singleton) x 8 workspace x 8 closeness subsets
    CHECK(states.size() == 22u * 8u * 8u);

    std::set<oracle::AtomSet> enumerated(states.begin(), states.end());
    CHECK(enumerated.size() == states.size());
    for (const auto& s : states) CHECK(is_consistent(oracle::to_state(s, vocab)));

    // exhaustive sweep: the filter accepts exactly the enumerated states
    size_t accepted = 0;
    for (uint32_t mask = 0; mask < (1u << 18); ++mask) {
        Bitset bits(18);
        for (size_t i = 0; i < 18; ++i)
            if (mask & (1u << i)) bits.set(i);
        if (is_consistent(LogicalState(vocab, std::move(bits)))) ++accepted;
    }
    CHECK(accepted == states.size());
}

TEST_CASE("consistency rejects physically impossible states") {
    auto vocab = make_vocabulary(kBlocks);
    auto with = [&](const std::vector<std::string>& atoms) {
        LogicalState s(vocab);
        for (const auto& a : atoms) s.insert(*vocab->parse_atom(a));
        return s;
    };

    // all four on the table, all clear
    CHECK(is_consistent(
        with({"OnTop(red)", "OnTop(green)", "OnTop(blue)", "OnTop(yellow)"})));
    // block with two supports
    CHECK_FALSE(is_consistent(with({"On(red,green)", "On(red,blue)", "OnTop(red)",
                                    "OnTop(yellow)"})));
    // support cycle
    CHECK_FALSE(is_consistent(with({"On(red,green)", "On(green,red)", "OnTop(blue)",
                                    "OnTop(yellow)"})));
    // held block still stacked
    CHECK_FALSE(is_consistent(with({"InHand(red)", "On(red,green)", "OnTop(green)",
                                    "OnTop(blue)", "OnTop(yellow)"})));
    // held block marked clear
    CHECK_FALSE(is_consistent(with({"InHand(red)", "OnTop(red)", "OnTop(green)",
                                    "OnTop(blue)", "OnTop(yellow)"})));
    // covered block marked clear
    CHECK_FALSE(is_consistent(with({"On(red,green)", "OnTop(red)", "OnTop(green)",
                                    "OnTop(blue)", "OnTop(yellow)"})));
}
