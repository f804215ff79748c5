#include "qmet/schedule.hpp"

#include "qmet/errors.hpp"

#include <cmath>

namespace qmet {

namespace {

void check_k(int K) {
    if (K < 1) throw BadParameters("scheme: K must be >= 1");
    if (K > 24) throw SizeExceeded("scheme: K exceeds 24");
}

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

Schedule schedule_linear_multipass(int K) {
    check_k(K);
    Schedule s;
    for (int k = 1; k <= K; ++k) s.components.push_back({long{1} << (k - 1), 1, long{1} << (k - 1)});
    return s;
}

Schedule schedule_quadratic(int K) { return schedule_power_q(K, 2); }

Schedule schedule_power_q(int K, int q) {
    check_k(K);
    if (q < 1) throw BadParameters("scheme: q must be >= 1");
    Schedule s;
    for (int k = 1; k <= K; ++k) {
        const int nk = int(std::ceil(std::exp2(double(k - 1) / double(q))));
        // spectrum of (J_z)^q on nk qubits: odd q spans [-nk^q, nk^q]; even q
        // spans [0 or 1, nk^q] depending on parity of nk
        long gap = (q % 2 == 1) ? 2 * ipow(nk, q) : ipow(nk, q) - (nk % 2);
        int qubits = nk;
        if (gap == 0) {
            if (k != 1) throw DegenerateComponent("scheme: degenerate component at k=" + std::to_string(k));
            gap = 1;
            qubits = 1;
            s.note = "k=1 component degenerate for this nonlinearity; substituted a single gap-1 qubit";
        }
        s.components.push_back({gap, qubits, 1});
    }
    return s;
}

Schedule schedule_roy(int K) {
    check_k(K);
    Schedule s;
    // k=1 would need a 0-qubit component; a plain gap-1 qubit stands in.
    s.components.push_back({1, 1, 1});
    s.note = "k=1 component substituted by a single gap-1 qubit; alternative qubit accounting n = M K(K-1)/2";
    for (int k = 2; k <= K; ++k) s.components.push_back({long{1} << (k - 1), k - 1, 1});
    return s;
}

} // namespace qmet
