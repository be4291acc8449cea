#include <doctest.h>

#include <cmath>
#include <string>

#include "latticeweak/compiler.hpp"
#include "latticeweak/simulator.hpp"

using namespace latticeweak;

TEST_CASE("sampling is deterministic and counts sum to shots") {
    Circuit c(2);
    c.add(Gate::h(0));
    c.add(Gate::cnot(0, 1));
    const ShotResult a = run(c, 500, 42), b = run(c, 500, 42);
    CHECK(a.counts == b.counts);
    int total = 0;
    for (const auto& [bits, n] : a.counts) {
        total += n;
        // Bell state: only "00" and "11" occur.
        CHECK((bits == "00" || bits == "11"));
    }
    CHECK(total == 500);
    CHECK(a.kept == 500);
}

TEST_CASE("sampled estimates converge like 1/sqrt(shots)") {
    Circuit c(1);
    c.add(Gate::ry(0, 2.0 * std::asin(std::sqrt(0.3))));  // P(1) = 0.3
    auto estimate = [&](int shots, std::uint64_t seed) {
        const ShotResult r = run(c, shots, seed);
        const auto it = r.counts.find("1");
        return (it == r.counts.end() ? 0.0 : it->second) / static_cast<double>(shots);
    };
    double err_small = 0.0, err_large = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        err_small += std::pow(estimate(100, s) - 0.3, 2);
        err_large += std::pow(estimate(6400, 100 + s) - 0.3, 2);
    }
    // Variance should shrink roughly by the shot ratio (allow slack x4).
    CHECK(err_large < err_small / 16.0);
}

TEST_CASE("noiseless preparation passes post-selection completely") {
    const LatticeParams p = paper_l1_preset();
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    const ShotResult raw = run(state_prep_circuit(p), 200, 7);
    const ShotResult kept = post_select(raw, lay, {});
    CHECK(kept.kept == 200);
    // Idempotent.
    const ShotResult again = post_select(kept, lay, {});
    CHECK(again.counts == kept.counts);
}

TEST_CASE("post-selection rejects charge-violating bitstrings") {
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    ShotResult r;
    r.shots = 2;
    r.kept = 2;
    // A valid Delta- string (u + nu + e bits set -> reading q15..q0).
    std::string good(16, '0');
    for (int q : {0, 1, 2, 12, 13}) good[15 - q] = '1';
    std::string flipped = good;
    flipped[15 - 3] = '1';  // single bit flip on a d-quark qubit breaks B
    r.counts[good] = 1;
    r.counts[flipped] = 1;
    const ShotResult kept = post_select(r, lay, {});
    CHECK(kept.kept == 1);
    CHECK(kept.counts.count(good) == 1);
    CHECK(kept.counts.count(flipped) == 0);
}

TEST_CASE("ancilla filter removes strings with the ancilla set") {
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    ShotResult r;
    r.shots = 2;
    r.kept = 2;
    std::string good(17, '0');
    for (int q : {0, 1, 2, 12, 13}) good[16 - q] = '1';
    std::string anc = good;
    anc[16 - 16] = '1';
    r.counts[good] = 1;
    r.counts[anc] = 1;
    PostSelectFilters f;
    f.ancilla = 16;
    const ShotResult kept = post_select(r, lay, f);
    CHECK(kept.kept == 1);
    CHECK(kept.counts.count(anc) == 0);
}

TEST_CASE("empty post-selected sample is flagged") {
    const QubitLayout lay(LayoutScheme::Interleaved, 1);
    ShotResult r;
    r.shots = 1;
    r.kept = 1;
    r.counts[std::string(16, '1')] = 1;  // all antiparticles occupied: B = -1
    CHECK_THROWS(post_select(r, lay, {}));
}

TEST_CASE("circuit-level decay table matches Table II theory (1 step)") {
    const LatticeParams p = paper_l1_preset();
    const DecayCurve c = trotter_decay_table(p, 1, {0.0, 0.5, 1.0, 1.5, 2.0, 2.5});
    const double expect[6] = {0.0, 0.089, 0.315, 0.582, 0.801, 0.931};
    REQUIRE(c.probability.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(c.probability[i] - expect[i]) < 1e-3);
}

TEST_CASE("shot result JSON has the documented schema") {
    Circuit c(1);
    c.add(Gate::x(0));
    const ShotResult r = run(c, 10, 3);
    const std::string j = r.to_json_string();
    CHECK(j.find("\"shots\": 10") != std::string::npos);
    CHECK(j.find("\"seed\": 3") != std::string::npos);
    CHECK(j.find("\"kept\": 10") != std::string::npos);
    CHECK(j.find("\"1\": 10") != std::string::npos);
}
