#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace siclab {

struct SelftestResult {
    int checks = 0;
    int failures = 0;
    std::vector<std::string> failed;
};

/// Invariant suite for every d in [dmin, dmax]: displacement relations and
/// periodicity, unitary basis, overlap roundtrip and symmetry, DFT relation,
/// subgroup counts, quadric identities, exact fiducials, and (d >= 4) the
/// number-theoretic checks. Progress lines go to log when non-null.
SelftestResult run_selftest(int dmin, int dmax, std::ostream* log = nullptr);

}  // namespace siclab
