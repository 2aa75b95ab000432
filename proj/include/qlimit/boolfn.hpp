/*!
  \file boolfn.hpp
  \brief Possibly partial Boolean functions, block composition, and the
         structural transformations (renaming, superfluous bits, duplication,
         bit negation, promise restriction).

  A function on n bits is stored as its explicit domain table: a sorted list
  of (input mask, value) pairs.  Bit indices are 1-based and index 1 is the
  leftmost character of the string form; internally character i maps to mask
  bit i-1.  Domains can be exponentially sparse (promise functions), so no
  dense truth table is assumed anywhere in this header.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qlimit
{

inline constexpr std::uint32_t max_arity = 62;

/*! \brief Converts an n-bit mask to its string form (index 1 = leftmost). */
inline std::string mask_to_string( std::uint64_t x, std::uint32_t n )
{
  std::string s( n, '0' );
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    if ( ( x >> i ) & 1 )
    {
      s[i] = '1';
    }
  }
  return s;
}

inline std::uint64_t string_to_mask( std::string const& s )
{
  if ( s.empty() || s.size() > max_arity )
  {
    throw error( "bit string length out of range: '" + s + "'" );
  }
  std::uint64_t x = 0;
  for ( std::size_t i = 0; i < s.size(); ++i )
  {
    if ( s[i] == '1' )
    {
      x |= std::uint64_t( 1 ) << i;
    }
    else if ( s[i] != '0' )
    {
      throw error( "invalid character in bit string: '" + s + "'" );
    }
  }
  return x;
}

/*! \brief A string over {0,1,*}: the `fixed` mask marks non-* positions. */
struct partial_assignment
{
  std::uint32_t n = 0;
  std::uint64_t fixed = 0;
  std::uint64_t values = 0; /* meaningful only on fixed positions */

  static partial_assignment from_string( std::string const& s )
  {
    partial_assignment p;
    p.n = static_cast<std::uint32_t>( s.size() );
    if ( p.n == 0 || p.n > max_arity )
    {
      throw error( "assignment length out of range" );
    }
    for ( std::uint32_t i = 0; i < p.n; ++i )
    {
      if ( s[i] == '*' )
      {
        continue;
      }
      if ( s[i] != '0' && s[i] != '1' )
      {
        throw error( "invalid character in assignment: '" + s + "'" );
      }
      p.fixed |= std::uint64_t( 1 ) << i;
      if ( s[i] == '1' )
      {
        p.values |= std::uint64_t( 1 ) << i;
      }
    }
    return p;
  }

  std::string str() const
  {
    std::string s( n, '*' );
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      if ( ( fixed >> i ) & 1 )
      {
        s[i] = ( ( values >> i ) & 1 ) ? '1' : '0';
      }
    }
    return s;
  }

  /* |p| = number of fixed positions */
  std::uint32_t size() const
  {
    return static_cast<std::uint32_t>( __builtin_popcountll( fixed ) );
  }

  /* p ⊆ x for a full assignment x */
  bool contained_in( std::uint64_t x ) const
  {
    return ( x & fixed ) == ( values & fixed );
  }

  bool consistent_with( partial_assignment const& q ) const
  {
    std::uint64_t both = fixed & q.fixed;
    return n == q.n && ( ( values ^ q.values ) & both ) == 0;
  }

  bool operator==( partial_assignment const& o ) const
  {
    return n == o.n && fixed == o.fixed && ( values & fixed ) == ( o.values & o.fixed );
  }
};

/*! \brief A possibly partial Boolean function given by its explicit domain table. */
class partial_function
{
public:
  using entry = std::pair<std::uint64_t, std::uint8_t>;

  partial_function() = default;

  partial_function( std::uint32_t n, std::vector<entry> entries )
      : n_( n ), table_( std::move( entries ) )
  {
    if ( n_ == 0 || n_ > max_arity )
    {
      throw error( "arity must be between 1 and " + std::to_string( max_arity ) );
    }
    if ( table_.empty() )
    {
      throw empty_promise_error( "the empty function is rejected" );
    }
    std::sort( table_.begin(), table_.end() );
    std::uint64_t limit = ( n_ >= 64 ) ? ~std::uint64_t( 0 ) : ( std::uint64_t( 1 ) << n_ );
    for ( std::size_t i = 0; i < table_.size(); ++i )
    {
      if ( table_[i].first >= limit )
      {
        throw error( "domain string wider than declared arity" );
      }
      if ( table_[i].second > 1 )
      {
        throw error( "function values must be 0 or 1" );
      }
      if ( i > 0 && table_[i].first == table_[i - 1].first )
      {
        if ( table_[i].second != table_[i - 1].second )
        {
          throw error( "conflicting values for one domain string" );
        }
        throw error( "duplicate domain string" );
      }
    }
  }

  std::uint32_t num_bits() const { return n_; }
  std::size_t domain_size() const { return table_.size(); }
  std::vector<entry> const& table() const { return table_; }

  bool contains( std::uint64_t x ) const
  {
    auto it = std::lower_bound( table_.begin(), table_.end(), entry{ x, 0 },
                                []( entry const& a, entry const& b ) { return a.first < b.first; } );
    return it != table_.end() && it->first == x;
  }

  /*! \brief f(x); requires x in the domain. */
  bool value( std::uint64_t x ) const
  {
    auto it = std::lower_bound( table_.begin(), table_.end(), entry{ x, 0 },
                                []( entry const& a, entry const& b ) { return a.first < b.first; } );
    if ( it == table_.end() || it->first != x )
    {
      throw error( "input outside the domain" );
    }
    return it->second != 0;
  }

  bool is_total() const
  {
    return n_ < 63 && table_.size() == ( std::uint64_t( 1 ) << n_ );
  }

  bool is_constant() const
  {
    for ( auto const& e : table_ )
    {
      if ( e.second != table_.front().second )
      {
        return false;
      }
    }
    return true;
  }

  /*! \brief Domain strings carrying the given value. */
  std::vector<std::uint64_t> preimage( bool v ) const
  {
    std::vector<std::uint64_t> out;
    for ( auto const& e : table_ )
    {
      if ( ( e.second != 0 ) == v )
      {
        out.push_back( e.first );
      }
    }
    return out;
  }

  bool operator==( partial_function const& o ) const
  {
    return n_ == o.n_ && table_ == o.table_;
  }

  /*! \brief Packed byte encoding, usable as a deterministic memo key. */
  std::string encoding() const
  {
    std::string s;
    s.reserve( 4 + table_.size() * 9 );
    for ( int b = 0; b < 4; ++b )
    {
      s.push_back( char( ( n_ >> ( 8 * b ) ) & 0xff ) );
    }
    for ( auto const& e : table_ )
    {
      for ( int b = 0; b < 8; ++b )
      {
        s.push_back( char( ( e.first >> ( 8 * b ) ) & 0xff ) );
      }
      s.push_back( char( e.second ) );
    }
    return s;
  }

private:
  std::uint32_t n_ = 0;
  std::vector<entry> table_;
};

/*! \brief Builds a function from (bit string, value) pairs. */
inline partial_function make_function( std::uint32_t n, std::vector<std::pair<std::string, int>> const& entries )
{
  std::vector<partial_function::entry> tab;
  tab.reserve( entries.size() );
  for ( auto const& [s, v] : entries )
  {
    if ( s.size() != n )
    {
      throw error( "entry '" + s + "' does not match arity " + std::to_string( n ) );
    }
    tab.push_back( { string_to_mask( s ), std::uint8_t( v ) } );
  }
  return partial_function( n, std::move( tab ) );
}

/*! \brief Block composition f ∘ g on n(f)·n(g) bits.

  A string y^1 y^2 ... y^{n(f)} (block 1 leftmost) is in the domain iff every
  block lies in Dom(g) and the value string g(y^1)...g(y^{n(f)}) lies in
  Dom(f).  Enumeration of |Dom(g)|^{n(f)} candidates is guarded by the
  materialization cap.
*/
inline partial_function compose( partial_function const& f, partial_function const& g,
                                 std::uint64_t cap = materialization_cap() )
{
  std::uint32_t const nf = f.num_bits();
  std::uint32_t const m = g.num_bits();
  if ( std::uint64_t( nf ) * m > max_arity )
  {
    throw size_cap_error( "composed arity " + std::to_string( std::uint64_t( nf ) * m ) +
                          " exceeds the representable limit" );
  }
  big_int candidates = pow_int( big_int( g.domain_size() ), nf );
  if ( candidates > cap )
  {
    throw size_cap_error( "composition would enumerate " + candidates.str() +
                          " candidate strings (cap " + std::to_string( cap ) + ")" );
  }

  std::vector<partial_function::entry> tab;
  std::vector<std::size_t> odom( nf, 0 );
  auto const& gt = g.table();
  while ( true )
  {
    std::uint64_t x = 0;
    std::uint64_t vals = 0;
    for ( std::uint32_t i = 0; i < nf; ++i )
    {
      auto const& e = gt[odom[i]];
      x |= e.first << ( i * m );
      if ( e.second )
      {
        vals |= std::uint64_t( 1 ) << i;
      }
    }
    if ( f.contains( vals ) )
    {
      tab.push_back( { x, std::uint8_t( f.value( vals ) ? 1 : 0 ) } );
    }
    std::uint32_t pos = 0;
    while ( pos < nf && ++odom[pos] == gt.size() )
    {
      odom[pos++] = 0;
    }
    if ( pos == nf )
    {
      break;
    }
  }
  if ( tab.empty() )
  {
    throw empty_promise_error( "composition has empty domain" );
  }
  return partial_function( std::uint32_t( nf * m ), std::move( tab ) );
}

inline partial_function identity_function()
{
  return partial_function( 1, { { 0, 0 }, { 1, 1 } } );
}

/*! \brief f^k under the same cap; f^0 is the 1-bit identity. */
inline partial_function power( partial_function const& f, std::uint32_t k,
                               std::uint64_t cap = materialization_cap() )
{
  if ( k == 0 )
  {
    return identity_function();
  }
  partial_function acc = f;
  for ( std::uint32_t i = 1; i < k; ++i )
  {
    acc = compose( f, acc, cap );
  }
  return acc;
}

/*! \brief Named function catalog.

  Known names: I, S, NAND2, MAJ3, PrOR, AND, OR, PARITY, CONST0, CONST1.
  The last six take the arity as `size`; the first four ignore it.
*/
inline partial_function catalog( std::string const& name, std::uint32_t size = 0 )
{
  if ( name == "I" )
  {
    return identity_function();
  }
  if ( name == "S" )
  {
    /* S(01) = 0 and S(10) = 1 */
    return make_function( 2, { { "01", 0 }, { "10", 1 } } );
  }
  if ( name == "NAND2" )
  {
    return make_function( 2, { { "00", 1 }, { "01", 1 }, { "10", 1 }, { "11", 0 } } );
  }
  if ( name == "MAJ3" )
  {
    std::vector<partial_function::entry> tab;
    for ( std::uint64_t x = 0; x < 8; ++x )
    {
      tab.push_back( { x, std::uint8_t( __builtin_popcountll( x ) >= 2 ? 1 : 0 ) } );
    }
    return partial_function( 3, std::move( tab ) );
  }
  if ( size == 0 || size > max_arity )
  {
    throw unknown_name_error( "catalog '" + name + "' needs a size between 1 and " +
                              std::to_string( max_arity ) );
  }
  if ( name == "PrOR" )
  {
    /* domain = strings of Hamming weight at most 1 */
    std::vector<partial_function::entry> tab;
    tab.push_back( { 0, 0 } );
    for ( std::uint32_t i = 0; i < size; ++i )
    {
      tab.push_back( { std::uint64_t( 1 ) << i, 1 } );
    }
    return partial_function( size, std::move( tab ) );
  }
  if ( name == "AND" || name == "OR" || name == "PARITY" || name == "CONST0" || name == "CONST1" )
  {
    if ( size > 20 )
    {
      throw size_cap_error( "total catalog function too large" );
    }
    std::vector<partial_function::entry> tab;
    for ( std::uint64_t x = 0; x < ( std::uint64_t( 1 ) << size ); ++x )
    {
      int pc = __builtin_popcountll( x );
      std::uint8_t v = 0;
      if ( name == "AND" )
      {
        v = ( pc == int( size ) );
      }
      else if ( name == "OR" )
      {
        v = ( pc > 0 );
      }
      else if ( name == "PARITY" )
      {
        v = ( pc & 1 );
      }
      else if ( name == "CONST1" )
      {
        v = 1;
      }
      tab.push_back( { x, v } );
    }
    return partial_function( size, std::move( tab ) );
  }
  throw unknown_name_error( "unknown catalog name '" + name + "'" );
}

inline partial_function negate_output( partial_function const& f )
{
  std::vector<partial_function::entry> tab = f.table();
  for ( auto& e : tab )
  {
    e.second = !e.second;
  }
  return partial_function( f.num_bits(), std::move( tab ) );
}

/*! \brief Alphabet renaming: h(x) = f(x XOR z) with the shifted domain. */
inline partial_function negate_bits( partial_function const& f, std::uint64_t z )
{
  std::vector<partial_function::entry> tab;
  tab.reserve( f.domain_size() );
  for ( auto const& e : f.table() )
  {
    tab.push_back( { e.first ^ z, e.second } );
  }
  return partial_function( f.num_bits(), std::move( tab ) );
}

/*! \brief Index renaming: h(x) = f(x_pi) where (x_pi)_i = x_{pi(i)}.

  `perm` is 1-based: perm[i-1] = pi(i).
*/
inline partial_function rename_indices( partial_function const& f, std::vector<std::uint32_t> const& perm )
{
  std::uint32_t const n = f.num_bits();
  if ( perm.size() != n )
  {
    throw error( "permutation size does not match arity" );
  }
  std::vector<bool> seen( n + 1, false );
  for ( auto p : perm )
  {
    if ( p < 1 || p > n || seen[p] )
    {
      throw error( "not a permutation of 1..n" );
    }
    seen[p] = true;
  }
  std::vector<partial_function::entry> tab;
  tab.reserve( f.domain_size() );
  for ( auto const& e : f.table() )
  {
    /* x with x_{pi(i)} = y_i for the domain string y of f */
    std::uint64_t x = 0;
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      if ( ( e.first >> i ) & 1 )
      {
        x |= std::uint64_t( 1 ) << ( perm[i] - 1 );
      }
    }
    tab.push_back( { x, e.second } );
  }
  return partial_function( n, std::move( tab ) );
}

/*! \brief Restriction to a non-empty promise P ⊆ Dom(f). */
inline partial_function restrict_promise( partial_function const& f, std::vector<std::uint64_t> const& promise )
{
  if ( promise.empty() )
  {
    throw empty_promise_error( "restriction to an empty promise" );
  }
  std::vector<partial_function::entry> tab;
  tab.reserve( promise.size() );
  for ( auto x : promise )
  {
    if ( !f.contains( x ) )
    {
      throw error( "promise string " + mask_to_string( x, f.num_bits() ) + " outside the domain" );
    }
    tab.push_back( { x, std::uint8_t( f.value( x ) ? 1 : 0 ) } );
  }
  std::sort( tab.begin(), tab.end() );
  tab.erase( std::unique( tab.begin(), tab.end() ), tab.end() );
  return partial_function( f.num_bits(), std::move( tab ) );
}

/*! \brief Appends m fresh bits ranging over the non-empty set S ⊆ {0,1}^m. */
inline partial_function add_superfluous( partial_function const& f, std::uint32_t m,
                                         std::vector<std::uint64_t> const& strings )
{
  if ( m == 0 || strings.empty() )
  {
    throw error( "superfluous block must be non-empty" );
  }
  if ( f.num_bits() + m > max_arity )
  {
    throw size_cap_error( "arity limit exceeded by superfluous bits" );
  }
  std::set<std::uint64_t> uniq( strings.begin(), strings.end() );
  std::vector<partial_function::entry> tab;
  tab.reserve( f.domain_size() * uniq.size() );
  for ( auto const& e : f.table() )
  {
    for ( auto y : uniq )
    {
      if ( y >> m )
      {
        throw error( "superfluous string wider than declared width" );
      }
      tab.push_back( { e.first | ( y << f.num_bits() ), e.second } );
    }
  }
  return partial_function( f.num_bits() + m, std::move( tab ) );
}

/*! \brief Appends a copy of bit i (1-based) at position n+1. */
inline partial_function duplicate_bit( partial_function const& f, std::uint32_t i )
{
  std::uint32_t const n = f.num_bits();
  if ( i < 1 || i > n )
  {
    throw error( "bit index out of range" );
  }
  if ( n + 1 > max_arity )
  {
    throw size_cap_error( "arity limit exceeded by bit duplication" );
  }
  std::vector<partial_function::entry> tab;
  tab.reserve( f.domain_size() );
  for ( auto const& e : f.table() )
  {
    std::uint64_t dup = ( e.first >> ( i - 1 ) ) & 1;
    tab.push_back( { e.first | ( dup << n ), e.second } );
  }
  return partial_function( n + 1, std::move( tab ) );
}

namespace detail
{

/* removes the bits in `positions` (1-based) from a mask */
inline std::uint64_t squeeze_mask( std::uint64_t x, std::uint32_t n, std::uint64_t drop )
{
  std::uint64_t out = 0;
  std::uint32_t o = 0;
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    if ( ( drop >> i ) & 1 )
    {
      continue;
    }
    out |= ( ( x >> i ) & 1 ) << o;
    ++o;
  }
  return out;
}

} // namespace detail

/*! \brief Checks the removal precondition for a set of bits.

  A set T is removable as superfluous when the value depends only on the
  other bits and, for every assignment of the other bits occurring in the
  domain, the T-assignments occurring alongside it are the same set.
*/
inline bool removable_superfluous( partial_function const& f, std::uint64_t positions_mask )
{
  std::uint32_t const n = f.num_bits();
  if ( positions_mask == 0 || ( positions_mask >> n ) )
  {
    return false;
  }
  if ( std::uint64_t( __builtin_popcountll( positions_mask ) ) >= n )
  {
    return false; /* at least one bit must remain */
  }
  std::map<std::uint64_t, std::pair<std::set<std::uint64_t>, int>> groups;
  for ( auto const& e : f.table() )
  {
    std::uint64_t rest = detail::squeeze_mask( e.first, n, positions_mask );
    std::uint64_t part = e.first & positions_mask;
    auto& g = groups[rest];
    if ( g.first.empty() )
    {
      g.second = e.second;
    }
    else if ( g.second != e.second )
    {
      return false; /* value depends on the removed bits */
    }
    g.first.insert( part );
  }
  std::set<std::uint64_t> const* common = nullptr;
  for ( auto const& [rest, g] : groups )
  {
    if ( !common )
    {
      common = &g.first;
    }
    else if ( g.first != *common )
    {
      return false; /* no product structure */
    }
  }
  return true;
}

/*! \brief Removes a checked superfluous set of bits (1-based positions). */
inline partial_function remove_superfluous( partial_function const& f, std::vector<std::uint32_t> const& positions )
{
  std::uint64_t drop = 0;
  for ( auto p : positions )
  {
    if ( p < 1 || p > f.num_bits() )
    {
      throw error( "bit index out of range" );
    }
    drop |= std::uint64_t( 1 ) << ( p - 1 );
  }
  if ( !removable_superfluous( f, drop ) )
  {
    throw not_droppable_error( "bits are not jointly superfluous" );
  }
  std::uint32_t const n = f.num_bits();
  std::uint32_t const k = std::uint32_t( __builtin_popcountll( drop ) );
  std::vector<partial_function::entry> tab;
  for ( auto const& e : f.table() )
  {
    tab.push_back( { detail::squeeze_mask( e.first, n, drop ), e.second } );
  }
  std::sort( tab.begin(), tab.end() );
  tab.erase( std::unique( tab.begin(), tab.end() ), tab.end() );
  return partial_function( n - k, std::move( tab ) );
}

/*! \brief True when bits i and j take identical values across the domain. */
inline bool bits_duplicate( partial_function const& f, std::uint32_t i, std::uint32_t j )
{
  if ( i == j || i < 1 || j < 1 || i > f.num_bits() || j > f.num_bits() )
  {
    return false;
  }
  for ( auto const& e : f.table() )
  {
    if ( ( ( e.first >> ( i - 1 ) ) & 1 ) != ( ( e.first >> ( j - 1 ) ) & 1 ) )
    {
      return false;
    }
  }
  return true;
}

/*! \brief Removes bit j, which must duplicate bit i across the domain. */
inline partial_function remove_duplicate( partial_function const& f, std::uint32_t i, std::uint32_t j )
{
  if ( !bits_duplicate( f, i, j ) )
  {
    throw not_droppable_error( "bits " + std::to_string( i ) + " and " + std::to_string( j ) +
                               " are not duplicates" );
  }
  if ( f.num_bits() == 1 )
  {
    throw not_droppable_error( "cannot drop below one bit" );
  }
  std::uint32_t const n = f.num_bits();
  std::vector<partial_function::entry> tab;
  for ( auto const& e : f.table() )
  {
    tab.push_back( { detail::squeeze_mask( e.first, n, std::uint64_t( 1 ) << ( j - 1 ) ), e.second } );
  }
  std::sort( tab.begin(), tab.end() );
  tab.erase( std::unique( tab.begin(), tab.end() ), tab.end() );
  return partial_function( n - 1, std::move( tab ) );
}

/*! \brief Drops bit i if it is superfluous or a duplicate of another bit. */
inline partial_function drop_bit( partial_function const& f, std::uint32_t i )
{
  if ( i < 1 || i > f.num_bits() )
  {
    throw error( "bit index out of range" );
  }
  if ( f.num_bits() > 1 && removable_superfluous( f, std::uint64_t( 1 ) << ( i - 1 ) ) )
  {
    return remove_superfluous( f, { i } );
  }
  for ( std::uint32_t j = 1; j <= f.num_bits(); ++j )
  {
    if ( j != i && bits_duplicate( f, j, i ) )
    {
      return remove_duplicate( f, j, i );
    }
  }
  throw not_droppable_error( "bit " + std::to_string( i ) + " is neither superfluous nor a duplicate" );
}

} // namespace qlimit
