#pragma once

// CoefficientVector on disk. CSV rows are `k,l,i,value` after a header line;
// the binary form is a 24-byte header ("RNCV", u32 version, u32 max degree,
// u64 count, u32 reserved) followed by little-endian doubles in rank order.

#include "radneedlet/svd_basis.hpp"

#include <iosfwd>
#include <string>

namespace radneedlet {

void write_coefficients_csv(const CoefficientVector& c, std::ostream& out);
void write_coefficients_csv(const CoefficientVector& c, const std::string& path);

/// Rows may appear in any order; missing indices are zero. The degree bound is
/// the largest k present. Throws std::runtime_error on malformed input.
CoefficientVector read_coefficients_csv(std::istream& in);
CoefficientVector read_coefficients_csv(const std::string& path);

void write_coefficients_binary(const CoefficientVector& c, const std::string& path);
CoefficientVector read_coefficients_binary(const std::string& path);

/// Dispatches on the extension: ".csv" or anything else (binary).
CoefficientVector read_coefficients(const std::string& path);
void write_coefficients(const CoefficientVector& c, const std::string& path);

}  // namespace radneedlet
