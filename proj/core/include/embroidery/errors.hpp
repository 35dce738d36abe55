#pragma once

#include <stdexcept>
#include <string>

namespace embroidery {

/// A formula was evaluated outside the region where it is defined
/// (negative radicand, arcsin argument beyond [-1, 1], wall thicker than tube).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The equilibrium scan reached the edge of the valid domain without the
/// residual changing sign.
class NoEquilibriumError : public std::runtime_error {
  public:
    NoEquilibriumError(const std::string& what, double edge_length_m, int residual_sign)
        : std::runtime_error(what), edge_length_m_{edge_length_m}, residual_sign_{residual_sign} {}

    [[nodiscard]] double edge_length_m() const noexcept { return edge_length_m_; }
    [[nodiscard]] int residual_sign() const noexcept { return residual_sign_; }

  private:
    double edge_length_m_;
    int residual_sign_;
};

/// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : std::runtime_error(what), row_{row}, column_{column} {}

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t row_;
    std::size_t column_;
};

} // namespace embroidery
