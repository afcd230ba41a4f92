#pragma once

#include <iosfwd>
#include <string>

#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::numkit {

// "DTN1" tensor file: magic bytes DTN1, u32 rank, u64 extents, then the
// row-major little-endian f64 payload.

void write_dtn1(std::ostream& out, const Tensor& t);
void write_dtn1_file(const std::string& path, const Tensor& t);

Tensor read_dtn1(std::istream& in);
Tensor read_dtn1_file(const std::string& path);

}  // namespace mvgcn::numkit
