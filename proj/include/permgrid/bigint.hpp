#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

namespace permgrid {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::size_t n, std::size_t k);

}  // namespace permgrid
