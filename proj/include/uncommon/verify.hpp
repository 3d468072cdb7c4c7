#pragma once

#include <cstdint>
#include <iosfwd>

namespace uncommon {

struct VerifyOptions {
    int samples = 100;          // two-qubit sample count; other pools scale from it
    std::uint64_t seed = 1;
    bool inject_broken = false; // adds a known-bad matrix to the psd pool
};

/// Runs the invariant suite (state invariants, entropy inequalities,
/// purification duality, Wootters agreement, bound ordering, local-unitary
/// invariance) and prints one line per check with pass/fail counts and the
/// worst margin. Returns 0 iff everything passed.
int run_verify(const VerifyOptions& opts, std::ostream& out);

} // namespace uncommon
