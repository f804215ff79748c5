#pragma once

#include <string>
#include <vector>

namespace qmet {

// One two-level probe component of an iterative scheme: the integer gap
// between its pair of generator eigenvalues, the qubits it consumes, and the
// passes of the shift it applies.
struct ComponentSchedule {
    long gap = 1;
    int qubits = 1;
    long passes = 1;
};

// Gap schedules for the iterative presets.  The k=1 component of the
// quadratic/even-power/roy families has a degenerate nonlinear spectrum on a
// single qubit; it is substituted by a plain gap-1 qubit (flagged in `note`).
struct Schedule {
    std::vector<ComponentSchedule> components; // k = 1..K, ascending gap order
    std::string note;
};

Schedule schedule_linear_multipass(int K);
Schedule schedule_quadratic(int K);
Schedule schedule_power_q(int K, int q);
Schedule schedule_roy(int K);

} // namespace qmet
