// Acceptance suite: one test case per criterion, each at its pinned
// tolerance.  The full run prints one PASS/FAIL line per criterion and takes
// a few minutes (the oracle comparisons dominate).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "verify.hpp"

using namespace wqed;

namespace {

const std::vector<CriterionResult>& suite() {
    static const std::vector<CriterionResult> results = run_acceptance_suite(std::cout);
    return results;
}

const CriterionResult& criterion(const std::string& id) {
    for (const auto& c : suite())
        if (c.id == id) return c;
    static CriterionResult missing;
    return missing;
}

void check_criterion(const std::string& id) {
    const CriterionResult& c = criterion(id);
    REQUIRE(c.id == id);
    INFO(c.summary);
    for (const auto& row : c.rows) {
        INFO(row.quantity << ": value " << row.oracle << " vs " << row.closed_form
                          << " (rel_err " << row.rel_err << ", tol " << row.tol << ")");
        CHECK(row.pass);
    }
    CHECK(c.pass);
}

}  // namespace

TEST_CASE("criterion 01: unitarity of t_k") { check_criterion("01_unitarity"); }
TEST_CASE("criterion 02: transmission zeros at the bare frequencies") {
    check_criterion("02_transmission_zeros");
}
TEST_CASE("criterion 03: pole algebra") { check_criterion("03_pole_algebra"); }
TEST_CASE("criterion 04: fluorescence quench") { check_criterion("04_quench"); }
TEST_CASE("criterion 05: excitation amplitudes match the closed form") {
    check_criterion("05_excitation_closed_form");
}
TEST_CASE("criterion 06: branch invariance of F_pair") {
    check_criterion("06_branch_invariance");
}
TEST_CASE("criterion 07: quantum beat period") { check_criterion("07_beats"); }
TEST_CASE("criterion 08: bunching statistics") { check_criterion("08_statistics"); }
TEST_CASE("criterion 09: fluorescence linewidths") { check_criterion("09_linewidths"); }
TEST_CASE("criterion 10: oracle agreement, single photon") {
    check_criterion("10_oracle_single_photon");
}
TEST_CASE("criterion 11: oracle agreement, two photon") {
    check_criterion("11_oracle_two_photon");
}
TEST_CASE("criterion 12: deterministic outputs") { check_criterion("12_determinism"); }
