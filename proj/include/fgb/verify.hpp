#pragma once

#include <cstdint>
#include <iosfwd>

namespace fgb {

// Knobs for the verification suite. Byte-identical output for identical
// options is part of the contract; every randomized check derives its stream
// from `seed` deterministically.
struct VerifyOptions {
  int rank_n = 2;
  std::uint64_t seed = 1;
  bool perturb = false;  // inject one deliberate fault; the run must then FAIL

  int identity_checks = 200;   // instances per pointwise-identity check
  int kernel_checks = 50;      // nu-invariance instances
  long norm_length_cap = 250;  // norm bracket / S_N recurrence sweep depth
  int sample_elements = 8;     // group elements acting on each boundary sample
};

// Runs every suite, streaming one "ok/FAIL <name> <detail>" line per check
// and a final summary line. Returns true when all checks pass.
bool run_verify(const VerifyOptions& opt, std::ostream& os);

}  // namespace fgb
