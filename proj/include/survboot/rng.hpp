#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace survboot {

/// SplitMix64, used to expand seeds into full generator state and to
/// derive child stream indices.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// Deterministic random stream keyed by (master_seed, stream_index).
///
/// Splitting scheme: the xoshiro256** state is expanded with SplitMix64
/// from master_seed after mixing in stream_index, so any two streams with
/// the same key replay the same sequence and streams with distinct
/// indices are independent for practical purposes. Child streams are
/// derived by hashing (stream_index, tag), which makes parallel
/// replicates reproducible regardless of scheduling.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index) {
        SplitMix64 sm(master_seed ^ SplitMix64(stream_index).next());
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    /// Independent stream for a sub-task; does not advance this stream.
    RngStream child(std::uint64_t tag) const {
        SplitMix64 sm(stream_index_ * 0x9E3779B97F4A7C15ULL + tag + 1);
        return RngStream(master_seed_, sm.next());
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5ULL, 7) * 9ULL;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1); never returns 0.
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return std::uint64_t(uniform() * double(n)) % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (one spare cached per pair).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Weibull(shape k, scale lambda) with S(t) = exp(-(t/lambda)^k).
    double weibull(double shape, double scale) {
        return scale * std::pow(-std::log(1.0 - uniform()), 1.0 / shape);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace survboot
