#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <set>

#include "normic/io.hpp"
#include "normic/obstruct.hpp"

namespace normic::selftest {

using DR = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Every ordered (d_i, r_i) list with m entries, r_i | n, n | d_i r_i, d_i >= 1,
/// sum d_i = 0 mod n and prod r_i <= max_product; d_i <= d_max (default n, enough since d only
/// matters mod n).
std::vector<DR> admissible_descs(std::int64_t n, std::size_t m, std::int64_t max_product = 4096, std::int64_t d_max = 0);

/// Non-decreasing order tuples, entries >= 2, with product <= bound (the empty tuple included).
std::vector<std::vector<std::int64_t>> groups_up_to(std::int64_t bound);

/// B' obstructs iff no character of S vanishes on B', decided by direct pairing.
bool obstructs_by_pairing(const DualGroup& dual, const Subgroup& H, const std::set<Character>& S);

struct SuiteResult {
    std::string name;
    std::int64_t checks = 0;
    std::int64_t mismatches = 0;
    std::vector<std::string> failures;  // first few, for the report

    void check(bool ok, const std::string& what);
};

struct Report {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool passed() const;
};

Report run(std::uint64_t seed);

std::string render_text(const Report& r);
io::Json to_json(const Report& r);

}  // namespace normic::selftest
