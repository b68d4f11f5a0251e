#pragma once

#include <cyclolog/adele.hpp>
#include <cyclolog/congruence.hpp>
#include <cyclolog/cyclotomic.hpp>
#include <cyclolog/dilcher.hpp>
#include <cyclolog/finite_polylog.hpp>
#include <cyclolog/fp_poly.hpp>
#include <cyclolog/index.hpp>
#include <cyclolog/modmath.hpp>
#include <cyclolog/primes.hpp>
#include <cyclolog/rat_poly.hpp>
#include <cyclolog/zp.hpp>
