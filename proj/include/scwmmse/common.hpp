// scwmmse-sim: power allocation in interference networks with latent interferers
// Copyright (C) 2026 the scwmmse-sim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>

namespace scwmmse {

/// Whether a data-parallel kernel runs its serial reference loop or the
/// OpenMP lane. Both lanes are bitwise identical by construction (every
/// work item derives its own RNG stream), which the test suite verifies.
enum class ExecPolicy { serial, parallel };

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, tag). Used to split one
/// run seed into per-purpose and per-work-item streams so that results do
/// not depend on thread count or evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (tag * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

/// Seeded random stream. All conversions from engine output to doubles are
/// hand-rolled so sequences are identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (cosine branch; two draws per call).
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::uint64_t next_u64() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Fixed-width float formatting used by every CSV writer; 17 significant
/// digits round-trip doubles exactly, which the byte-identical-output
/// determinism contract relies on.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// FNV-1a 64-bit, used for config/manifest hashing (std::hash is not
/// stable across processes).
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stream tags for derive_seed. One tag per independently consumed stream of
// a simulation run.
namespace stream_tag {
inline constexpr std::uint64_t topology = 0x01;
inline constexpr std::uint64_t gains = 0x02;
inline constexpr std::uint64_t latent_mixing = 0x03;
inline constexpr std::uint64_t panel = 0x04;
inline constexpr std::uint64_t init = 0x05;
inline constexpr std::uint64_t branch = 0x06;
inline constexpr std::uint64_t dirichlet = 0x07;
inline constexpr std::uint64_t jitter = 0x08;
}  // namespace stream_tag

}  // namespace scwmmse
