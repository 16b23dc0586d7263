#pragma once

#include <stdexcept>
#include <string>

namespace vcl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// biot_savart_2d on data with nonzero torus mean
struct NonZeroMean : Error { using Error::Error; };
// single_bubble support does not fit the fundamental domain
struct ScaleTooLarge : Error { using Error::Error; };
// constructor feature not resolved by the grid
struct UnderResolved : Error { using Error::Error; };
// time step exceeds the advective CFL limit
struct CflViolation : Error { using Error::Error; };
struct ZeroSmallScale : Error { using Error::Error; };
// |det D - 1| drifted past tolerance, marker under-resolved
struct DeterminantDrift : Error { using Error::Error; };
struct TooCloseToOrigin : Error { using Error::Error; };
// synthesize called with a shell inconsistent with the sample depth
struct ShellMismatch : Error { using Error::Error; };
// snapshot carries no energy on its shells
struct DegenerateSnapshot : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace vcl
