/*!
  \file limits.hpp
  \brief Composition-limit estimation: exact per-level values M(f^k), their
         k-th roots, and rigorous finite-k sandwich bounds.

  Every M(f^k) is an exact rational; the only approximation anywhere is the
  final k-th root, extracted by integer bracketing to 1e-9.  Upper bounds on
  the limit come from exact submultiplicativity (the subadditivity of
  log M(f^k) makes every computed root an upper bound, so the minimum over
  computed k is one).  Lower bounds come from the non-constant floor, and
  from exact multiplicativity where it holds.
*/

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolfn.hpp"
#include "io.hpp"
#include "measure_registry.hpp"
#include "rational.hpp"

namespace qlimit
{

struct limit_entry
{
  std::uint32_t k = 0;
  rational value;    /* M(f^k), exact */
  scaled_root root;  /* M(f^k)^(1/k), 1e-9 bracket */
};

struct limit_sequence
{
  std::string measure;
  std::string function_id;
  std::vector<limit_entry> entries; /* strictly increasing k */
  std::uint32_t requested_k = 0;
  bool capped = false; /* true when materialization stopped the sequence early */
};

struct limit_bounds
{
  scaled_root lower;
  scaled_root upper;
  bool heuristic = false; /* nearly-linear law: bracket is logged, not asserted */
  std::vector<std::string> justification;
};

/*! \brief Exact values M(f^k) for k = 1..k_max, stopping at the size cap. */
inline limit_sequence sequence( std::string const& measure, partial_function const& f,
                                std::uint32_t k_max, rational const& eps = rational( 1, 3 ),
                                std::uint64_t cap = materialization_cap() )
{
  auto const& m = measure_by_name( measure );
  limit_sequence seq;
  seq.measure = measure;
  seq.function_id = mask_to_string( 0, 0 );
  {
    std::ostringstream os;
    os << "n" << f.num_bits() << ":" << f.domain_size();
    seq.function_id = os.str();
  }
  seq.requested_k = k_max;
  partial_function cur = f;
  for ( std::uint32_t k = 1; k <= k_max; ++k )
  {
    if ( k > 1 )
    {
      try
      {
        cur = compose( f, cur, cap );
      }
      catch ( size_cap_error const& )
      {
        seq.capped = true;
        break;
      }
    }
    rational v;
    try
    {
      v = m.eval( cur, eps );
    }
    catch ( arity_too_large_error const& )
    {
      seq.capped = true;
      break;
    }
    catch ( too_many_blocks_error const& )
    {
      seq.capped = true;
      break;
    }
    seq.entries.push_back( { k, v, kth_root( v, k ) } );
  }
  return seq;
}

/*! \brief Finite-k sandwich bounds on the composition limit. */
inline limit_bounds sandwich( std::string const& measure, partial_function const& f,
                              std::uint32_t k_max, rational const& eps = rational( 1, 3 ),
                              std::uint64_t cap = materialization_cap() )
{
  auto const& m = measure_by_name( measure );
  if ( m.law == composition_law::none )
  {
    throw unsupported_measure_error( "no composition law configured for '" + measure + "'" );
  }
  limit_bounds out;
  if ( f.is_constant() )
  {
    out.lower = scaled_root{ 0, 9 };
    out.upper = scaled_root{ 0, 9 };
    out.justification.push_back( "constant function: every level is constant, the measure is 0" );
    return out;
  }
  auto seq = sequence( measure, f, k_max, eps, cap );
  if ( seq.entries.empty() )
  {
    throw size_cap_error( "no level of " + measure + " was computable under the cap" );
  }

  /* upper: minimum computed root, by subadditivity of log M(f^k) */
  std::size_t arg = 0;
  for ( std::size_t i = 1; i < seq.entries.size(); ++i )
  {
    if ( seq.entries[i].root.scaled < seq.entries[arg].root.scaled )
    {
      arg = i;
    }
  }
  out.upper = seq.entries[arg].root;
  {
    std::ostringstream os;
    os << "upper: submultiplicative minimum root at k=" << seq.entries[arg].k;
    out.justification.push_back( os.str() );
  }
  out.heuristic = ( m.law == composition_law::nearly_linear );
  if ( out.heuristic )
  {
    out.justification.push_back( "upper holds only up to logarithmic slack; bracket is heuristic" );
  }

  if ( m.exact_multiplicative_on_total && f.is_total() )
  {
    out.lower = seq.entries[0].root; /* k = 1: the measure itself */
    out.justification.push_back( "lower: exact multiplicativity on total functions (limit equals level 1)" );
  }
  else if ( m.floor_when_nonconstant )
  {
    out.lower = scaled_root{ pow_int( 10, 9 ), 9 }; /* 1.0 */
    out.justification.push_back( "lower: non-constant floor (levels are nondecreasing, so the limit is at least 1)" );
  }
  else
  {
    out.lower = scaled_root{ 0, 9 };
    out.justification.push_back( "lower: trivial" );
  }
  if ( out.lower.scaled > out.upper.scaled )
  {
    throw error( "internal: sandwich bounds crossed" );
  }
  return out;
}

struct star_check_report
{
  bool power_table_consistent = true;  /* M((f^j)^m) = M(f^(j m)) */
  bool sum_within_factor_two = true;   /* (M+N)(f^k) <= 2 max(M,N)(f^k) */
  bool scaling_identity = true;        /* (c M)(f^k) roots scale by c^(1/k) */
  std::vector<std::string> details;
};

/*! \brief Finite-k instantiations of the star-calculus identities. */
inline star_check_report star_calculus_check( partial_function const& f, std::uint32_t k_max,
                                              std::string const& measure_m = "C",
                                              std::string const& measure_n = "D",
                                              rational const& c = rational( 3, 2 ),
                                              std::uint64_t cap = materialization_cap() )
{
  auto const& m = measure_by_name( measure_m );
  auto const& n = measure_by_name( measure_n );
  star_check_report rep;

  std::vector<partial_function> powers; /* powers[k-1] = f^k */
  std::vector<rational> mv, nv;
  partial_function cur = f;
  for ( std::uint32_t k = 1; k <= k_max; ++k )
  {
    if ( k > 1 )
    {
      try
      {
        cur = compose( f, cur, cap );
      }
      catch ( size_cap_error const& )
      {
        break;
      }
    }
    powers.push_back( cur );
    mv.push_back( m.eval( cur, rational( 1, 3 ) ) );
    nv.push_back( n.eval( cur, rational( 1, 3 ) ) );
  }

  /* M((f^j)^m) must equal M(f^(j m)) whenever both sides materialize */
  for ( std::uint32_t j = 1; j <= powers.size(); ++j )
  {
    for ( std::uint32_t mm = 1; j * mm <= powers.size(); ++mm )
    {
      try
      {
        auto lhs_fn = power( powers[j - 1], mm, cap );
        rational lhs = m.eval( lhs_fn, rational( 1, 3 ) );
        if ( lhs != mv[j * mm - 1] )
        {
          rep.power_table_consistent = false;
          std::ostringstream os;
          os << "power table mismatch at (j=" << j << ", m=" << mm << ")";
          rep.details.push_back( os.str() );
        }
      }
      catch ( size_cap_error const& )
      {
      }
    }
  }

  for ( std::size_t i = 0; i < powers.size(); ++i )
  {
    rational sum = mv[i] + nv[i];
    rational mx = std::max( mv[i], nv[i] );
    if ( sum > 2 * mx )
    {
      rep.sum_within_factor_two = false;
      rep.details.push_back( "sum bound failed at k=" + std::to_string( i + 1 ) );
    }
  }

  /* scaling: exact on the rational side, bracketed on the root side */
  for ( std::size_t i = 0; i < powers.size(); ++i )
  {
    std::uint32_t k = std::uint32_t( i + 1 );
    if ( mv[i] == 0 )
    {
      continue;
    }
    auto lhs = kth_root( c * mv[i], k );
    auto rhs_c = kth_root( c, k, 12 );
    auto rhs_m = kth_root( mv[i], k, 12 );
    /* compare at 9 digits: |(c v)^(1/k) - c^(1/k) v^(1/k)| must vanish */
    big_int prod = rhs_c.scaled * rhs_m.scaled / pow_int( 10, 15 ); /* back to 9 digits */
    big_int diff = lhs.scaled > prod ? lhs.scaled - prod : prod - lhs.scaled;
    if ( diff > 10 ) /* 10 units at 1e-9 absorbs both bracket errors */
    {
      rep.scaling_identity = false;
      rep.details.push_back( "scaling identity failed at k=" + std::to_string( k ) );
    }
  }
  return rep;
}

/*! \brief Finite-k commutation: the sandwich intervals of f∘g and g∘f overlap. */
inline bool commutation_check( std::string const& measure, partial_function const& f,
                               partial_function const& g, std::uint32_t k_max,
                               std::uint64_t cap = materialization_cap() )
{
  auto fg = compose( f, g, cap );
  auto gf = compose( g, f, cap );
  auto a = sandwich( measure, fg, k_max, rational( 1, 3 ), cap );
  auto b = sandwich( measure, gf, k_max, rational( 1, 3 ), cap );
  return a.lower.scaled <= b.upper.scaled && b.lower.scaled <= a.upper.scaled;
}

/* ----- emission -------------------------------------------------------- */

inline nlohmann::json sequence_to_json( limit_sequence const& seq )
{
  nlohmann::json entries = nlohmann::json::array();
  for ( auto const& e : seq.entries )
  {
    entries.push_back( { { "k", e.k },
                         { "value", to_string( e.value ) },
                         { "root", e.root.decimal() },
                         { "root_precision", "±1e-9" } } );
  }
  return { { "measure", seq.measure },
           { "function", seq.function_id },
           { "requested_k", seq.requested_k },
           { "capped", seq.capped },
           { "entries", entries } };
}

inline nlohmann::json bounds_to_json( limit_bounds const& b )
{
  return { { "lower", b.lower.decimal() },
           { "upper", b.upper.decimal() },
           { "precision", "±1e-9" },
           { "heuristic", b.heuristic },
           { "justification", b.justification } };
}

inline std::string sequence_to_csv( limit_sequence const& seq, limit_bounds const* bounds = nullptr )
{
  std::ostringstream os;
  os << "k,value,root,lower,upper\n";
  for ( auto const& e : seq.entries )
  {
    os << e.k << "," << to_string( e.value ) << "," << e.root.decimal() << ",";
    if ( bounds )
    {
      os << bounds->lower.decimal() << "," << bounds->upper.decimal();
    }
    else
    {
      os << ",";
    }
    os << "\n";
  }
  return os.str();
}

} // namespace qlimit
