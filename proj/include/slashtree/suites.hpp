#pragma once

#include "slashtree/constructions.hpp"
#include "slashtree/limits.hpp"
#include "slashtree/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace slashtree {

struct ReportRow {
    std::string experiment;
    std::string graph;
    unsigned n = 0;
    std::vector<std::pair<std::string, Rational>> values;
    bool passed = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<ReportRow> rows;

    bool passed() const;
};

/// Rows carry exact "num/den" strings next to decimal renderings.
std::string report_json(const SuiteReport& r);
std::string report_text(const SuiteReport& r);

/// Cycle x0 .. x_{n-1} with unit edges, s = x0 and t = x_{n/2}, both arcs
/// oriented towards t and the uniform measure. Odd n gives arcs of different
/// lengths, so the result is an s-t graph but not a geodesic one.
MeasuredGraph unit_cycle_graph(std::size_t n);

struct SuiteOptions {
    std::vector<LaaksoParams> bases;  // empty: the suite's default bases
    std::vector<unsigned> levels;     // empty: the suite's default levels
    std::size_t seeds = 0;            // 0: the suite's default seed count
    Limits limits;
};

/// Selector identity sum over maximal cycles, expected exactly 1/2.
/// Defaults: bases (0,2,2,0), (1,2,2,1); n in {1,2}; 50 random selectors
/// plus the first-edge and smallest-edge selectors.
SuiteReport run_cor42_suite(const SuiteOptions& opt = {});

/// Closed-form cycle counts, cycle edge counts and per-edge counts against
/// enumeration. Defaults: bases (0,2,2,0), (1,2,2,1); n in {1,2}.
SuiteReport run_prop41_suite(const SuiteOptions& opt = {});

/// Every labelled tree on a unit n-cycle with LP-optimal weights has a cycle
/// edge with d_T >= (c0 - d_C)/8. Default sizes (levels) {4,5,6}.
SuiteReport run_lemma31_suite(const SuiteOptions& opt = {});

/// Truncated functional against (3/128) c0 n plus cycle witnesses. Defaults:
/// bases (0,2,2,0), (1,2,2,1); n in {1,2}; oracle tree at n = 1 and one
/// single-sample FRT tree per seed 0..99.
SuiteReport run_thm41_suite(const SuiteOptions& opt = {});

}  // namespace slashtree
