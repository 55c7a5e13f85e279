#pragma once

#include <stdexcept>

namespace ellpoisson
{

// A construction's built-in consistency assertion failed.
class integrity_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// An evaluation point is too close to a pole.
class pole_proximity_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// x - y is near a lattice point with x != y in the two-point bracket.
class near_singular_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

} // namespace ellpoisson
