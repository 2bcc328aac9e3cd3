#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortex {

// Lattice data (facet normals, divisor degrees, torus weight matrices) is
// small integers; exact predicates run on GMP rationals.
using Int = long long;
using Rat = boost::multiprecision::mpq_rational;

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;  // row-major
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

inline constexpr double kPi = std::numbers::pi;

struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};
struct UnboundedRegion : std::runtime_error {
    explicit UnboundedRegion(const std::string& what) : std::runtime_error(what) {}
};
struct DegenerateRegion : std::runtime_error {
    explicit DegenerateRegion(const std::string& what) : std::runtime_error(what) {}
};
struct NoLift : std::runtime_error {
    explicit NoLift(const std::string& what) : std::runtime_error(what) {}
};
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" or "p" (q = 1). Throws InvalidInput on garbage or q = 0.
Rat parse_rational(const std::string& text);

/// Formats as "p/q" with q > 0, or "p" when the denominator is 1.
std::string format_rational(const Rat& value);

inline double to_double(const Rat& value) { return value.convert_to<double>(); }

inline std::vector<double> to_doubles(const RVec& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

}  // namespace vortex
