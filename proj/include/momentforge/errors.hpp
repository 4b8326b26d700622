#pragma once

#include <stdexcept>
#include <string>

namespace momentforge {

// Machine-readable failure codes. The CLI maps parse_error to exit code 2
// and everything else to exit code 1, so the split matters more than the
// exact taxonomy.
enum class errc {
    equal_points,
    degenerate_basis,
    non_primitive,
    extremal_level,
    case_mismatch,
    inadmissible_move,
    invalid_graph,
    catalog_mismatch,
    chop_too_large,
    not_delzant,
    cut_collision,
    mark_collision,
    size_out_of_range,
    non_vertical_edge,
    mark_not_interior,
    ineffective_action,
    length_mismatch,
    index_out_of_range,
    bad_document,
};

const char* to_string(errc code);

class domain_error : public std::runtime_error {
public:
    domain_error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

class parse_error : public std::runtime_error {
public:
    parse_error(int line, int column, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace momentforge
