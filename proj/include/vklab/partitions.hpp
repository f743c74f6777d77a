#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace vklab {

using BigInt = boost::multiprecision::cpp_int;

// Weakly decreasing tuple of nonnegative integers labeling an irreducible
// representation of U(n).  Only the holomorphic (nonnegative) case is
// admitted; signed signatures are rejected at construction.
class Signature {
  public:
    Signature() = default;

    // Validates and normalizes: trailing zeros are trimmed, the ambient rank
    // (number of matrix variables the label refers to) is retained.
    static Signature make(std::vector<long> parts, long ambient_rank);

    const std::vector<long>& parts() const { return parts_; }
    long ambient_rank() const { return ambient_rank_; }
    std::size_t length() const { return parts_.size(); }
    long part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    long weight() const;
    bool empty() const { return parts_.empty(); }

    // Conjugate (transposed diagram) part list.
    std::vector<long> conjugate_parts() const;

    // Containment of Young diagrams: this_i <= other_i for all i.
    bool contained_in(const Signature& outer) const;

    std::string to_string() const;

    bool operator==(const Signature& o) const {
        return parts_ == o.parts_ && ambient_rank_ == o.ambient_rank_;
    }

  private:
    std::vector<long> parts_;
    long ambient_rank_ = 0;
};

// Row/column/weight statistics of a signature relative to a volume parameter.
struct SignatureStats {
    std::vector<double> row_ratios;  // r_j / V
    std::vector<double> col_ratios;  // c_j / V
    double weight_ratio = 0.0;       // |lambda| / V
    long V = 0;
};

// Asymptotic character parameters: the alpha (row) rates, beta (column)
// rates, and the exponential rate gamma.  Lists are weakly decreasing.
struct VKParams {
    std::vector<double> alphas;
    std::vector<double> betas;
    double gamma_rate = 0.0;

    // Validates ranges and monotonicity; throws std::invalid_argument.
    static VKParams make(std::vector<double> alphas, std::vector<double> betas,
                         double gamma_rate);
    bool trivial() const { return alphas.empty() && betas.empty() && gamma_rate == 0.0; }
};

Signature make_signature(std::vector<long> parts, long ambient_rank);

// Dimension of the irreducible U(n) representation with highest weight `sig`
// (n = ambient rank), by the product formula over index pairs.  Exact.
BigInt weyl_dimension(const Signature& sig);
BigInt weyl_dimension(const Signature& sig, long rank);

// log2 of the same dimension, as a double; usable far beyond the range where
// the exact integer is convertible.
double weyl_log2_dimension(const Signature& sig, long rank);

BigInt binomial(long n, long k);
double log2_binomial(long n, long k);

SignatureStats stats_of(const Signature& sig, long V);

// Signature whose row/column/weight statistics at volume V approach the given
// parameters: rows floor(alpha_j*V), columns floor(beta_j*V), and the gamma
// weight floor(gamma*V) packed as a near-square block so that it perturbs no
// row or column ratio in the limit.  Deterministic.
Signature signature_sequence(const VKParams& params, long V);

}  // namespace vklab
