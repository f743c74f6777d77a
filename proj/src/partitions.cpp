#include "vklab/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vklab {

Signature Signature::make(std::vector<long> parts, long ambient_rank) {
    if (ambient_rank <= 0) throw std::invalid_argument("signature: ambient rank must be positive");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0)
            throw std::invalid_argument("signature: negative part (only holomorphic signatures are supported)");
        if (i + 1 < parts.size() && parts[i] < parts[i + 1])
            throw std::invalid_argument("signature: not weakly decreasing");
    }
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    if (static_cast<long>(parts.size()) > ambient_rank)
        throw std::invalid_argument("signature: more nonzero parts than the ambient rank");
    Signature s;
    s.parts_ = std::move(parts);
    s.ambient_rank_ = ambient_rank;
    return s;
}

Signature make_signature(std::vector<long> parts, long ambient_rank) {
    return Signature::make(std::move(parts), ambient_rank);
}

long Signature::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0L);
}

std::vector<long> Signature::conjugate_parts() const {
    if (parts_.empty()) return {};
    std::vector<long> conj(static_cast<std::size_t>(parts_[0]), 0);
    for (long p : parts_)
        for (long j = 0; j < p; ++j) conj[static_cast<std::size_t>(j)]++;
    return conj;
}

bool Signature::contained_in(const Signature& outer) const {
    if (parts_.size() > outer.parts_.size()) return false;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i] > outer.parts_[i]) return false;
    return true;
}

std::string Signature::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ")@" << ambient_rank_;
    return os.str();
}

VKParams VKParams::make(std::vector<double> alphas, std::vector<double> betas, double gamma_rate) {
    const auto check_list = [](const std::vector<double>& v, bool unit_bound, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] >= 0.0)) throw std::invalid_argument(std::string(name) + ": entries must be >= 0");
            if (unit_bound && v[i] > 1.0) throw std::invalid_argument(std::string(name) + ": entries must be <= 1");
            if (i + 1 < v.size() && v[i] < v[i + 1])
                throw std::invalid_argument(std::string(name) + ": must be weakly decreasing");
        }
    };
    check_list(alphas, false, "alphas");
    check_list(betas, true, "betas");
    if (!(gamma_rate >= 0.0)) throw std::invalid_argument("gamma: must be >= 0");
    VKParams p;
    p.alphas = std::move(alphas);
    p.betas = std::move(betas);
    p.gamma_rate = gamma_rate;
    return p;
}

BigInt weyl_dimension(const Signature& sig) { return weyl_dimension(sig, sig.ambient_rank()); }

BigInt weyl_dimension(const Signature& sig, long rank) {
    if (static_cast<long>(sig.length()) > rank)
        throw std::invalid_argument("weyl_dimension: rank smaller than the number of parts");
    // prod_{i<j} (l_i - l_j + j - i)/(j - i); pairs with l_i == l_j contribute 1
    // and are skipped, so only O(length * rank) factors remain.
    const long ell = static_cast<long>(sig.length());
    BigInt num = 1, den = 1;
    for (long i = 0; i < ell; ++i) {
        const long li = sig.part(static_cast<std::size_t>(i));
        for (long j = i + 1; j < rank; ++j) {
            const long lj = sig.part(static_cast<std::size_t>(j));
            if (li == lj) continue;
            num *= li - lj + j - i;
            den *= j - i;
        }
    }
    return num / den;
}

double weyl_log2_dimension(const Signature& sig, long rank) {
    if (static_cast<long>(sig.length()) > rank)
        throw std::invalid_argument("weyl_log2_dimension: rank smaller than the number of parts");
    const long ell = static_cast<long>(sig.length());
    double acc = 0.0;
    for (long i = 0; i < ell; ++i) {
        const long li = sig.part(static_cast<std::size_t>(i));
        for (long j = i + 1; j < rank; ++j) {
            const long lj = sig.part(static_cast<std::size_t>(j));
            if (li == lj) continue;
            acc += std::log2(static_cast<double>(li - lj + j - i)) -
                   std::log2(static_cast<double>(j - i));
        }
    }
    return acc;
}

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

double log2_binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
    k = std::min(k, n - k);
    double acc = 0.0;
    for (long i = 1; i <= k; ++i)
        acc += std::log2(static_cast<double>(n - k + i)) - std::log2(static_cast<double>(i));
    return acc;
}

SignatureStats stats_of(const Signature& sig, long V) {
    if (V <= 0) throw std::invalid_argument("stats_of: V must be positive");
    if (V < sig.ambient_rank())
        throw std::invalid_argument("stats_of: V smaller than the ambient rank");
    SignatureStats st;
    st.V = V;
    st.row_ratios.reserve(sig.length());
    for (long p : sig.parts()) st.row_ratios.push_back(static_cast<double>(p) / static_cast<double>(V));
    for (long c : sig.conjugate_parts()) st.col_ratios.push_back(static_cast<double>(c) / static_cast<double>(V));
    st.weight_ratio = static_cast<double>(sig.weight()) / static_cast<double>(V);
    return st;
}

Signature signature_sequence(const VKParams& params, long V) {
    if (V <= 0) throw std::invalid_argument("signature_sequence: V must be positive");

    std::vector<long> rows;
    for (double a : params.alphas) {
        const long r = static_cast<long>(std::floor(a * static_cast<double>(V)));
        if (r > 0) rows.push_back(r);
    }

    std::vector<long> cols;
    for (double b : params.betas) {
        const long c = static_cast<long>(std::floor(b * static_cast<double>(V)));
        if (c > 0) cols.push_back(c);
    }
    // conjugate of the column-height list
    std::vector<long> colpart;
    if (!cols.empty()) {
        colpart.resize(static_cast<std::size_t>(cols[0]), 0);
        for (long c : cols)
            for (long i = 0; i < c; ++i) colpart[static_cast<std::size_t>(i)]++;
    }

    // gamma weight floor(gamma*V) as a near-square block: rows and columns of
    // the block are O(sqrt(V)), so neither ratio survives the V -> infinity
    // limit, while the packed weight is exact.
    std::vector<long> block;
    const long g = static_cast<long>(std::floor(params.gamma_rate * static_cast<double>(V)));
    if (g > 0) {
        long w = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(g))));
        const long q = g / w, rem = g % w;
        block.assign(static_cast<std::size_t>(q), w);
        if (rem > 0) block.push_back(rem);
    }

    const std::size_t len = std::max({rows.size(), colpart.size(), block.size()});
    std::vector<long> parts(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        if (i < rows.size()) parts[i] += rows[i];
        if (i < colpart.size()) parts[i] += colpart[i];
        if (i < block.size()) parts[i] += block[i];
    }
    if (static_cast<long>(len) > V)
        throw std::invalid_argument("signature_sequence: statistics need more than V rows at this volume");
    return Signature::make(std::move(parts), V);
}

}  // namespace vklab
