#pragma once

// Text specs for N-functions, functions, weights, kernels and gauges, plus
// the plain-text function file format.
//
//   N-function  power:p=2[,c=1] | sampled:density=expm1 | sampled:path=FILE
//   function    indicator:a=0,b=1 | power:a=0.5 | exp:c=1 | one | const:c=2
//               | power_weight:alpha=1 | randomstep:seed=3,cells=16 | file:path=FILE
//   kernel      hardy-averaging | hardy-indicator | hilbert | box | zero
//               | power-radial:lambda=0.75 | sum:k=<function> | radial:k=<function>
//               | homogeneous:profile=<function>
//   gauge       gauge(phi=<N-function>,u=<function>)
//
// Function files hold one cell per line: "lo hi value".

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "orlicz/gauge.hpp"
#include "orlicz/kernel.hpp"

namespace orlicz {

struct SpecContext {
  Window window;
  std::size_t cells = kDefaultCells;
};

/// "name:k=v,k=v" split into the name and its parameters.  A parameter whose
/// key is listed in `nested` swallows the rest of the string.
struct SpecParts {
  std::string name;
  std::map<std::string, std::string> params;
};
SpecParts split_spec(const std::string& spec, const std::string& field,
                     const std::vector<std::string>& nested = {});

double parse_number(const std::string& text, const std::string& field);

NFunction parse_nfunction(const std::string& spec, const std::string& field = "phi");

/// Closed-form profile on (0, inf); power:a is y^-a without truncation.
Profile parse_profile(const std::string& spec, const std::string& field);

Weight parse_weight(const std::string& spec, const std::string& field,
                    const SpecContext& ctx = {});

/// Function sampled on the context grid; power:a is truncated to the window.
GridFunction parse_function(const std::string& spec, const std::string& field,
                            const SpecContext& ctx = {});

KernelFamily parse_kernel(const std::string& spec, const std::string& field = "kernel");

GaugeSpec parse_gauge(const std::string& spec, const std::string& field = "gauge",
                      const SpecContext& ctx = {});

/// Step function with `pieces` random levels in [0, 1) on random log-uniform
/// breakpoints inside [1e-3, 1e3] and the window, averaged onto `edges`.
GridFunction random_step(std::uint64_t seed, std::size_t pieces, const Window& w,
                         const std::vector<double>& edges, bool nonincreasing = false);

GridFunction read_function_file(const std::string& path);
void write_function(std::ostream& os, const GridFunction& f);
std::string function_text(const GridFunction& f);

/// Two columns "t phi" per line.
NFunction read_density_file(const std::string& path);

}  // namespace orlicz
