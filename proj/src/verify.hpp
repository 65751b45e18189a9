// The acceptance suite: every criterion pinned with its tolerance, shared by
// the `verify` CLI command and the acceptance test binary.

#pragma once

#include <iosfwd>
#include <vector>

#include "oracle.hpp"

namespace wqed {

struct CriterionResult {
    std::string id;
    std::string summary;
    bool pass = false;
    std::vector<ReportRow> rows;
};

// Individual criteria (numbered as in the verification report).
CriterionResult check_unitarity();                // 01
CriterionResult check_transmission_zeros();       // 02
CriterionResult check_pole_algebra();             // 03
CriterionResult check_quench();                   // 04
CriterionResult check_excitation_closed_form();   // 05
CriterionResult check_branch_invariance();        // 06
CriterionResult check_beats();                    // 07
CriterionResult check_statistics();               // 08
CriterionResult check_linewidths();               // 09
CriterionResult check_oracle_single_photon();     // 10
CriterionResult check_oracle_two_photon();        // 11
CriterionResult check_determinism();              // 12

// Runs all criteria in order, printing one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& log);

}  // namespace wqed
