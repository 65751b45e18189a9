// Chebyshev expansion of exp(-i H t) for a Hermitian operator given as a
// matvec callback with rigorous spectral bounds.  Truncation is taken to
// coefficient level ~1e-18, so norm drift stays far below the 1e-8 budget.
// An optional diagonal decay vector (non-guided loss) is applied by Strang
// splitting around each Chebyshev chunk.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace wqed {

struct SpectralBounds {
    double lo = -1.0;
    double hi = 1.0;
};

using ApplyFn = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

// J_0(theta) .. J_n_max(theta) by Miller's downward recurrence.
std::vector<double> bessel_j_sequence(double theta, int n_max);

struct Propagator {
    ApplyFn apply;
    SpectralBounds bounds;
    Eigen::VectorXd loss;  // decay rates per component; empty = closed system

    // Evolves psi in place over total time t using ceil(t/chunk_time) chunks.
    void evolve(Eigen::VectorXcd& psi, double t, double chunk_time) const;

private:
    void chebyshev_chunk(Eigen::VectorXcd& psi, double dt) const;
};

}  // namespace wqed
