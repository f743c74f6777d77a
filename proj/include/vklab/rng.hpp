#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace vklab {

// Deterministic uniform/gaussian layer on top of mt19937_64, independent of
// the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        // 53 random mantissa bits in [0,1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gaussian();

    // Split off an independent stream; used so parallel consumers stay
    // reproducible regardless of evaluation order.
    Rng split(std::uint64_t salt) {
        return Rng(gen_() ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
// diagonal phases folded into Q.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

// Haar-distributed orthogonal, same construction over the reals.
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng);

}  // namespace vklab
