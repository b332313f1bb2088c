// SPDX-License-Identifier: MIT
#include "gls/report_io.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#ifndef GLS_VERSION
#define GLS_VERSION "0.0.0"
#endif

namespace gls {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& cell, const std::string& where) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) throw DomainError(where + ": cannot parse '" + cell + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) throw RangeError("format_double: non-finite value in output");
    if (x == 0.0) return "0";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw RangeError("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string header_comment(std::string_view config_hash) {
    return std::string("# gls-tailbound ") + GLS_VERSION + " config=" + std::string(config_hash);
}

void write_csv(std::ostream& os, const Table& table, std::string_view header) {
    if (!header.empty()) os << header << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& table, std::string_view config_hash) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const std::string& cell = row[i];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (!cell.empty() && ec == std::errc() && ptr == cell.data() + cell.size())
                obj[table.columns[i]] = v;
            else
                obj[table.columns[i]] = cell;
        }
        rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json doc = {{"v", 1},
                                  {"tool", std::string("gls-tailbound ") + GLS_VERSION},
                                  {"config", std::string(config_hash)},
                                  {"columns", table.columns},
                                  {"rows", std::move(rows)}};
    os << doc.dump(1) << '\n';
}

Table bound_table(const BoundReport& report) {
    Table t;
    t.columns = {"t", "lnR", "R", "argmax_p", "boundary", "flag"};
    if (report.has_reference) {
        t.columns.emplace_back("T_ref");
        t.columns.emplace_back("dominance");
    }
    for (const EnvelopePoint& pt : report.points) {
        std::vector<std::string> row = {format_double(pt.t), format_double(pt.log_R),
                                        format_double(pt.R), format_double(pt.argmax_p),
                                        std::string(to_string(pt.boundary_hit)),
                                        pt.underflow ? "underflow" : pt.exceeds_one ? "vacuous" : ""};
        if (report.has_reference) {
            const double log_T = pt.log_reference.value_or(-kInf);
            row.push_back(format_double(log_T == -kInf ? 0.0 : std::exp(log_T)));
            row.emplace_back(pt.dominated.value_or(false) ? "ok" : "violated");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_bound_json(std::ostream& os, const BoundReport& report, std::string_view config_hash) {
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const EnvelopePoint& pt : report.points) {
        nlohmann::ordered_json p = {{"t", pt.t},
                                    {"lnR", pt.log_R},
                                    {"R", pt.R},
                                    {"argmax_p", pt.argmax_p},
                                    {"boundary", std::string(to_string(pt.boundary_hit))},
                                    {"underflow", pt.underflow},
                                    {"vacuous", pt.exceeds_one}};
        if (report.has_reference) {
            const double log_T = pt.log_reference.value_or(-kInf);
            p["T_ref"] = log_T == -kInf ? 0.0 : std::exp(log_T);
            p["dominance"] = pt.dominated.value_or(false) ? "ok" : "violated";
        }
        points.push_back(std::move(p));
    }
    nlohmann::ordered_json doc = {{"v", 1},
                                  {"tool", std::string("gls-tailbound ") + GLS_VERSION},
                                  {"config", std::string(config_hash)},
                                  {"u", report.u},
                                  {"psi", report.psi},
                                  {"points", std::move(points)}};
    os << doc.dump(1) << '\n';
}

std::string transfer_json(const TransferResult& tr, const OperatorProfile& op) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    if (op.kind() == OperatorProfile::Kind::classical_riesz) {
        params["Cd"] = op.C();
    } else {
        params = {{"C", op.C()}, {"alpha", op.alpha()}, {"beta", op.beta()}, {"a1", op.a1()}};
        params["b1"] = std::isfinite(op.b1()) ? nlohmann::ordered_json(op.b1())
                                              : nlohmann::ordered_json("inf");
    }
    nlohmann::ordered_json I = {{"lo", tr.I.lo}, {"lo_closed", tr.I.lo_closed}};
    I["hi"] = tr.I.bounded() ? nlohmann::ordered_json(tr.I.hi) : nlohmann::ordered_json("inf");
    nlohmann::ordered_json doc = {
        {"v", 1},
        {"kind", op.kind() == OperatorProfile::Kind::classical_riesz ? "classical" : "riesz-type"},
        {"parameters", std::move(params)},
        {"I", std::move(I)},
        {"certificate", tr.certificate}};
    return doc.dump();
}

std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(
    const std::string& path, std::string_view col0, std::string_view col1) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::vector<double> x;
    std::vector<double> y;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw DomainError(path + ":" + std::to_string(line_no) + ": expected two columns");
        const std::string a = trim(line.substr(0, comma));
        const std::string b = trim(line.substr(comma + 1));
        if (!header_seen) {
            if (a != col0 || b != col1)
                throw DomainError(path + ": header must be '" + std::string(col0) + "," +
                                  std::string(col1) + "'");
            header_seen = true;
            continue;
        }
        const std::string where = path + ":" + std::to_string(line_no);
        const double va = parse_double(a, where);
        if (!x.empty() && !(va > x.back()))
            throw DomainError(where + ": first column must be strictly increasing");
        x.push_back(va);
        y.push_back(parse_double(b, where));
    }
    if (!header_seen) throw DomainError(path + ": missing header");
    return {std::move(x), std::move(y)};
}

GeneratingFunction read_psi_csv(const std::string& path) {
    auto [p, psi] = read_two_column_csv(path, "p", "psi");
    return GeneratingFunction::tabulated(std::move(p), std::move(psi));
}

TailCurve read_tail_csv(const std::string& path) {
    auto [t, tail] = read_two_column_csv(path, "t", "T");
    return TailCurve::tabulated(std::move(t), std::move(tail));
}

}  // namespace gls
