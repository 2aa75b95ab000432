/*!
  \file rational.hpp
  \brief Exact rational scalar type and root extraction helpers.

  All measure values in this library are exact rationals; floating point
  appears only in the final k-th-root reports, with an explicit 1e-9 bound
  coming from integer bracketing.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace qlimit
{

using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline big_int numerator( rational const& r )
{
  return boost::multiprecision::numerator( r );
}

inline big_int denominator( rational const& r )
{
  return boost::multiprecision::denominator( r );
}

/*! \brief Formats a rational as "p" or "p/q". */
inline std::string to_string( rational const& r )
{
  std::string p = numerator( r ).str();
  big_int q = denominator( r );
  if ( q == 1 )
  {
    return p;
  }
  return p + "/" + q.str();
}

/*! \brief Parses "p", "p/q" or a plain integer string. */
inline rational parse_rational( std::string const& s )
{
  auto pos = s.find( '/' );
  try
  {
    if ( pos == std::string::npos )
    {
      return rational( big_int( s ) );
    }
    big_int p( s.substr( 0, pos ) );
    big_int q( s.substr( pos + 1 ) );
    if ( q == 0 )
    {
      throw parse_error( "zero denominator in rational '" + s + "'", 1, int( pos + 2 ) );
    }
    return rational( p, q );
  }
  catch ( parse_error const& )
  {
    throw;
  }
  catch ( std::exception const& )
  {
    throw parse_error( "malformed rational '" + s + "'", 1, 1 );
  }
}

inline big_int pow_int( big_int base, std::uint64_t e )
{
  big_int acc = 1;
  while ( e )
  {
    if ( e & 1 )
    {
      acc *= base;
    }
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline rational pow_rat( rational const& base, std::uint64_t e )
{
  return rational( pow_int( numerator( base ), e ), pow_int( denominator( base ), e ) );
}

/*! \brief Largest integer m with m^k <= v (v >= 0, k >= 1). */
inline big_int kth_root_floor( big_int const& v, unsigned k )
{
  if ( v <= 0 )
  {
    return 0;
  }
  if ( k == 1 )
  {
    return v;
  }
  big_int lo = 0;
  big_int hi = 1;
  while ( pow_int( hi, k ) <= v )
  {
    hi <<= 1;
  }
  while ( lo < hi - 1 )
  {
    big_int mid = ( lo + hi ) >> 1;
    if ( pow_int( mid, k ) <= v )
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return lo;
}

/*! \brief A bracketed real root value: value/10^scale_digits with error < 1 ulp. */
struct scaled_root
{
  big_int scaled;     /* floor( r^(1/k) * 10^digits ) */
  unsigned digits;

  double to_double() const
  {
    return scaled.convert_to<double>() / pow_int( 10, digits ).convert_to<double>();
  }

  /*! \brief Decimal rendering with the precision made explicit. */
  std::string decimal() const
  {
    std::string s = scaled.str();
    if ( s.size() <= digits )
    {
      s.insert( 0, digits + 1 - s.size(), '0' );
    }
    s.insert( s.size() - digits, "." );
    return s;
  }
};

/*! \brief Computes (p/q)^(1/k) to `digits` decimal digits by integer bracketing.

  The returned value R satisfies R <= (p/q)^(1/k) < R + 10^-digits; the only
  inexactness is this final extraction step.
*/
inline scaled_root kth_root( rational const& r, unsigned k, unsigned digits = 9 )
{
  if ( r < 0 )
  {
    throw error( "kth_root of a negative rational" );
  }
  if ( k == 0 )
  {
    throw error( "kth_root with k = 0" );
  }
  /* floor( (p/q)^{1/k} * 10^d ) = floor( (p * 10^{dk} / q)^{1/k} ) */
  big_int scale = pow_int( 10, std::uint64_t( digits ) * k );
  big_int t = numerator( r ) * scale / denominator( r );
  return scaled_root{ kth_root_floor( t, k ), digits };
}

/*! \brief sqrt helper used when comparing against irrational anchors. */
inline scaled_root sqrt_scaled( big_int const& v, unsigned digits = 12 )
{
  big_int scale = pow_int( 10, std::uint64_t( digits ) * 2 );
  return scaled_root{ kth_root_floor( v * scale, 2 ), digits };
}

} // namespace qlimit
