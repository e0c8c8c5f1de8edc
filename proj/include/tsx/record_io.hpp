#pragma once

#include <string>
#include <vector>

#include "tsx/sweep.hpp"

// CSV / JSON serialization of sweep records.
//
// CSV: header
//   p,q,z,solvable,kappa,n_roots,concurrence,mutual_cl,mutual_qu,deficit,sq_joint,sq_marginal
// UTF-8, LF line endings, absent optionals as empty fields, reals printed
// with 12 significant digits (wide enough to expose the solver tolerance,
// narrow enough to hide last-bit noise). parse_csv(to_csv(r)) re-emits
// byte-identically.
//
// JSON: array of objects mirroring the SweepRecord field names, absent
// optionals as null.

namespace tsx {

inline constexpr const char* kCsvHeader =
    "p,q,z,solvable,kappa,n_roots,concurrence,mutual_cl,mutual_qu,deficit,sq_joint,sq_marginal";

// 12 significant digits, trailing zeros kept.
std::string format_number(double v);

std::string to_csv(const std::vector<SweepRecord>& records);

// Inverse of to_csv. Throws std::invalid_argument on malformed input.
std::vector<SweepRecord> parse_csv(const std::string& text);

std::string to_json(const std::vector<SweepRecord>& records);

} // namespace tsx
