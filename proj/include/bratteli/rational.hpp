#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "bratteli/error.hpp"

namespace bratteli {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Digit cap for unbounded integers, from BRATTELI_MAX_DIGITS (decimal digits).
std::size_t max_digits();

// Throws Error(resource) once a value outgrows the digit cap.
void guard_size(const Int& z);
void guard_size(const Rat& q);

std::string int_string(const Int& z);

// Canonical "num/den" form, den >= 1, e.g. "0/1", "-3/7".
std::string rat_string(const Rat& q);

// Accepts "num/den" or a bare integer.
Rat parse_rat(const std::string& s);

Rat dstar(const RatVec& x, const RatVec& y);

double to_double(const Rat& q);

}  // namespace bratteli
