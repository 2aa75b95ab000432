/*!
  \file measure_registry.hpp
  \brief Named measures with their composition-law configuration.

  The limit machinery only derives bounds from laws that hold exactly;
  measures whose composition bounds carry logarithmic overhead are marked
  nearly-linear and produce heuristic (non-asserted) brackets.  Block
  sensitivity deliberately has no configured law.
*/

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "measures.hpp"

namespace qlimit
{

enum class composition_law
{
  exact_submultiplicative, /* M(f∘g) <= M(f)M(g) with no slack */
  nearly_linear,           /* submultiplicative only up to log factors */
  none
};

struct measure_info
{
  std::string name;
  std::function<rational( partial_function const&, rational const& )> eval; /* (f, eps) */
  composition_law law = composition_law::none;
  bool floor_when_nonconstant = false; /* M(f∘g) >= M(f) for non-constant g */
  bool exact_multiplicative_on_total = false;
  bool uses_eps = false;
};

inline std::vector<measure_info> const& measure_registry()
{
  static std::vector<measure_info> const reg = [] {
    std::vector<measure_info> r;
    auto add = [&]( measure_info m ) { r.push_back( std::move( m ) ); };
    add( { "D",
           []( partial_function const& f, rational const& ) { return rational( deterministic_complexity( f ) ); },
           composition_law::exact_submultiplicative, true, true, false } );
    add( { "C",
           []( partial_function const& f, rational const& ) { return rational( certificate_complexity( f ).c ); },
           composition_law::exact_submultiplicative, true, false, false } );
    add( { "C0",
           []( partial_function const& f, rational const& ) { return rational( certificate_complexity( f ).c0 ); },
           composition_law::none, false, false, false } );
    add( { "C1",
           []( partial_function const& f, rational const& ) { return rational( certificate_complexity( f ).c1 ); },
           composition_law::none, false, false, false } );
    add( { "s",
           []( partial_function const& f, rational const& ) { return rational( sensitivity( f ) ); },
           composition_law::exact_submultiplicative, false, false, false } );
    add( { "bs",
           []( partial_function const& f, rational const& ) { return rational( block_sensitivity( f ) ); },
           composition_law::none, false, false, false } );
    add( { "fbs",
           []( partial_function const& f, rational const& ) { return fractional_block_sensitivity( f ); },
           composition_law::exact_submultiplicative, true, false, false } );
    add( { "deg",
           []( partial_function const& f, rational const& ) { return rational( degree( f ) ); },
           composition_law::exact_submultiplicative, true, false, false } );
    add( { "adeg",
           []( partial_function const& f, rational const& eps ) { return rational( approx_degree( f, eps ) ); },
           composition_law::nearly_linear, true, false, true } );
    add( { "R0",
           []( partial_function const& f, rational const& ) {
             return randomized_complexity( f, 0, r_flavor::zero_error ).value;
           },
           composition_law::exact_submultiplicative, true, false, false } );
    add( { "Rbar",
           []( partial_function const& f, rational const& eps ) {
             return randomized_complexity( f, eps, r_flavor::expected ).value;
           },
           composition_law::nearly_linear, true, false, true } );
    add( { "Rh",
           []( partial_function const& f, rational const& eps ) {
             return randomized_complexity( f, eps, r_flavor::height ).value;
           },
           composition_law::nearly_linear, true, false, true } );
    return r;
  }();
  return reg;
}

inline measure_info const& measure_by_name( std::string const& name )
{
  for ( auto const& m : measure_registry() )
  {
    if ( m.name == name )
    {
      return m;
    }
  }
  throw unknown_name_error( "unknown measure '" + name + "'" );
}

inline rational measure_value( std::string const& name, partial_function const& f,
                               rational const& eps = rational( 1, 3 ) )
{
  return measure_by_name( name ).eval( f, eps );
}

} // namespace qlimit
