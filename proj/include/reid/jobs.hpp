#pragma once

// Declarative job runner behind the command-line tool. A job is a JSON
// object {"command": ..., <fields>}; field names equal the long flag names.

#include <cstdint>
#include <string>
#include <vector>

#include "reid/freenilp.hpp"
#include "reid/json_io.hpp"

namespace reid {

struct JobResult {
    int exit_code = 0;  // 0 ok, 1 counterexample or failed check, 2 input error
    Json report;
};

const std::vector<std::string>& job_commands();
const std::vector<std::string>& repro_targets();

/// Throws std::invalid_argument subclasses on schema errors.
JobResult run_job(const Json& spec);
/// Catches input errors and reports them with exit code 2.
JobResult run_job_checked(const Json& spec);

std::string render_human(const Json& report);

// Named elements and seeded experiments shared with the test suites.

/// B = [x,y], w = [[B,x],[B,y]] (in Gamma_6), w1 = [B,w] (in Gamma_8).
FreeWord commutator_B();
FreeWord commutator_w();
FreeWord commutator_w1();

/// Block sum of x -> x^2 y, y -> x^5 y^2, with y -> y^-1 on a leftover
/// generator when r is odd.
EndoSpec block_sum_automorphism(unsigned r);

/// Layer-2 map equals [det of the abelianization] for `count` random
/// rank-2 endomorphisms with images of length <= 6.
Json det_law_report(std::uint64_t seed, unsigned count);
/// Layer-8 map fixes the coordinates of w1 for `count` automorphisms with
/// abelianization determinant -1.
Json fixed_element_report(std::uint64_t seed, unsigned count);

}  // namespace reid
