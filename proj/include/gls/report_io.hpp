// SPDX-License-Identifier: MIT
//
// CSV / JSON emitters and CSV readers for tabulated psi and tails.
#pragma once

#include "gls/fenchel.hpp"
#include "gls/grand_lebesgue.hpp"
#include "gls/riesz_operator.hpp"
#include "gls/tail_curve.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gls {

/// Shortest decimal string that parses back to the same double.
/// Throws RangeError on NaN or infinity.
std::string format_double(double x);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t h);

/// "# gls-tailbound <version> config=<hash>"
std::string header_comment(std::string_view config_hash);

/// A table whose cells are already formatted.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& table, std::string_view header);
/// {"v":1, "columns":[...], "rows":[{...}, ...]} with numeric cells emitted as numbers.
void write_json(std::ostream& os, const Table& table, std::string_view config_hash);

/// t,lnR,R,argmax_p,boundary,flag[,T_ref,dominance]
Table bound_table(const BoundReport& report);
void write_bound_json(std::ostream& os, const BoundReport& report, std::string_view config_hash);

std::string transfer_json(const TransferResult& tr, const OperatorProfile& op);

/// Reads a two-column CSV with the given header; '#' lines are skipped.
/// The first column must be strictly increasing.
std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(
    const std::string& path, std::string_view col0, std::string_view col1);

GeneratingFunction read_psi_csv(const std::string& path);
TailCurve read_tail_csv(const std::string& path);

}  // namespace gls
