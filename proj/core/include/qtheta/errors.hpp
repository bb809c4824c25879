#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtheta {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Series arithmetic.
class zero_series_error : public error {
public:
    using error::error;
};
class odd_valuation_error : public error {
public:
    using error::error;
};
class non_square_leading_error : public error {
public:
    using error::error;
};
class fractional_grid_error : public error {
public:
    using error::error;
};
class beyond_validity_error : public error {
public:
    using error::error;
};
/// The requested operation would produce an infinite exact series.
class unbounded_result_error : public error {
public:
    using error::error;
};

// Theta generators.
class divergent_pair_error : public error {
public:
    using error::error;
};

// Identity language.
class syntax_error : public error {
public:
    syntax_error(const std::string &what, std::size_t line, std::size_t column)
        : error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line),
          column_(column)
    {
    }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};
class unknown_name_error : public error {
public:
    using error::error;
};
class duplicate_binding_error : public error {
public:
    using error::error;
};

// Registry.
class not_found_error : public error {
public:
    using error::error;
};

// Numeric engine.
class domain_error : public error {
public:
    using error::error;
};
class negative_radicand_error : public error {
public:
    using error::error;
};

} // namespace qtheta
