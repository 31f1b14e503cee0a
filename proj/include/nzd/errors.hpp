#pragma once

#include <stdexcept>
#include <string>

namespace nzd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// tau - r <= 0: every signal-conditioned quantity divides by tau - r.
struct SingularNoiseError : Error {
  using Error::Error;
};

// rank(M - I) < 3, the chain has more than one stationary distribution.
struct NonUniqueStationaryError : Error {
  using Error::Error;
};

// |D(p, q, 1)| below the singularity threshold; payoff ratios undefined.
struct DegenerateChainError : Error {
  using Error::Error;
};

// pinning target (p1, p4) = (1, 0): the pinned value is 0/0.
struct DegeneratePinError : Error {
  using Error::Error;
};

// a cross-check between two independent computation routes failed.
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace nzd
