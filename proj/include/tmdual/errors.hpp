#pragma once

#include <stdexcept>
#include <string>

namespace tmdual {

/// Arithmetic misuse (division by zero, mixed moduli, non-prime modulus).
struct arithmetic_error : std::runtime_error {
    explicit arithmetic_error(const std::string& m) : std::runtime_error(m) {}
};

struct dimension_error : std::runtime_error {
    explicit dimension_error(const std::string& m) : std::runtime_error(m) {}
};

struct singular_matrix_error : std::runtime_error {
    explicit singular_matrix_error(const std::string& m) : std::runtime_error(m) {}
};

/// A named precondition of an operation does not hold.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& m) : std::runtime_error(m) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

/// Reduction cannot proceed: the only elimination route for an offending
/// term needs an inverse Frobenius that does not exist in F_q(T).
struct no_forward_pivot_error : std::runtime_error {
    int column;
    int degree;
    no_forward_pivot_error(int col, int deg, const std::string& m)
        : std::runtime_error(m), column(col), degree(deg) {}
};

/// Engine invariant violated (termination guard, shape violation). A bug,
/// not a mathematical failure.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

}  // namespace tmdual
