#pragma once

#include <cstdint>

#include "ntlab/arith.hpp"

namespace ntlab::config {

/// Every default bound used by the CLI and the acceptance suite. The full
/// column is the acceptance scale; quick trims the slow sweeps.
///
///   setting                       full        quick
///   repunit T1 q_max              31          31
///   repunit T2 bound              31          19
///   repunit T3 q_max              11          7
///   repunit T4 q_max              13          7
///   power-eq x_max                15          15
///   power-eq y_max                100000      10000
///   power-eq z_max                16          16
///   dioph box x, y                300         60
///   dioph box z                   8           6
///   dioph bit budget              1000000     1000000
///   lemma 1 a, b bound            200         60
///   lemma 1 n_max                 6           6
///   loeschian grid                30          12
///   loeschian sweeps n_max        100000      10000
///   pseudofib k_max               8           8
///   pseudofib n_max               60          60
///   pseudofib sum depth           3           3
///   pseudofib closed form k, n    5, 40       5, 40
///   pseudofib solution trials     100         20
///   seed                          42          42
///   jobs                          1           1
struct Bounds {
    unsigned long repunit_t1_q_max;
    unsigned long repunit_t2_bound;
    unsigned long repunit_t3_q_max;
    unsigned long repunit_t4_q_max;
    unsigned long power_x_max;
    std::uint32_t power_y_max;
    unsigned long power_z_max;
    unsigned long dioph_xy_max;
    unsigned long dioph_z_max;
    std::uint64_t dioph_bit_budget;
    unsigned long lemma1_ab_max;
    unsigned long lemma1_n_max;
    unsigned long loeschian_grid;
    std::uint32_t loeschian_n_max;
    unsigned pseudofib_k_max;
    unsigned pseudofib_n_max;
    unsigned pseudofib_depth;
    unsigned closed_form_k_max;
    unsigned closed_form_n_max;
    unsigned solution_trials;
};

inline constexpr Bounds full{31, 31, 11, 13, 15, 100'000, 16, 300, 8, 1'000'000, 200, 6,
                             30, 100'000, 8, 60, 3, 5, 40, 100};
inline constexpr Bounds quick{31, 19, 7, 7, 15, 10'000, 16, 60, 6, 1'000'000, 60, 6,
                              12, 10'000, 8, 60, 3, 5, 40, 20};

inline constexpr std::uint64_t default_seed = 42;
inline constexpr unsigned default_jobs = 1;

inline constexpr const char* budget_env = "NTLAB_EFFORT_BUDGET";

/// The effort budget from NTLAB_EFFORT_BUDGET, else the factoring default.
/// Unparsable or zero values fall back to the default.
std::uint64_t default_budget();

}  // namespace ntlab::config
