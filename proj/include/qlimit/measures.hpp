/*!
  \file measures.hpp
  \brief Exact computation of the classical query measures on explicit
         partial functions: D, C (with witnesses), s, bs, fbs, deg, adeg,
         and the randomized flavors via exact LPs.

  Two evaluation paths exist for D and C.  Dense functions on at most 16
  bits go through a base-3 subcube table (one byte per subcube holding the
  constancy state and the restricted decision-tree depth).  Sparse promise
  functions go through domain scans and a memoized restriction recursion.
  Results are identical; the dense path only exists because materialized
  powers like NAND2^4 are total on 16 bits.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "boolfn.hpp"
#include "decision_tree.hpp"
#include "errors.hpp"
#include "ratlp.hpp"
#include "rational.hpp"

namespace qlimit
{

/*! \brief Direct re-check of the certificate definition. */
inline bool verify_certificate( partial_function const& f, std::uint64_t x, partial_assignment const& p )
{
  if ( p.n != f.num_bits() || !f.contains( x ) || !p.contained_in( x ) )
  {
    return false;
  }
  bool const fx = f.value( x );
  for ( auto const& e : f.table() )
  {
    if ( p.contained_in( e.first ) && ( e.second != 0 ) != fx )
    {
      return false;
    }
  }
  return true;
}

namespace detail
{

inline constexpr std::uint32_t cube_max_bits = 16;

/* base-3 subcube table: digit i of the index is 0/1 (fixed) or 2 (free) */
class cube_table
{
public:
  enum : std::uint8_t
  {
    empty = 0,
    const0 = 1,
    const1 = 2,
    mixed = 3
  };

  explicit cube_table( partial_function const& f ) : n_( f.num_bits() )
  {
    pow3_.resize( n_ + 1 );
    pow3_[0] = 1;
    for ( std::uint32_t i = 1; i <= n_; ++i )
    {
      pow3_[i] = pow3_[i - 1] * 3;
    }
    std::vector<std::uint8_t> val( std::size_t( 1 ) << n_, 2 );
    for ( auto const& e : f.table() )
    {
      val[e.first] = e.second;
    }
    st_.resize( pow3_[n_] );
    for ( std::size_t idx = 0; idx < st_.size(); ++idx )
    {
      /* locate the lowest free digit while decoding the fixed prefix */
      std::size_t tmp = idx;
      std::uint64_t mask = 0;
      std::uint32_t star = n_;
      for ( std::uint32_t i = 0; i < n_; ++i )
      {
        std::size_t d = tmp % 3;
        tmp /= 3;
        if ( d == 2 )
        {
          star = i;
          break;
        }
        mask |= std::uint64_t( d ) << i;
      }
      if ( star == n_ )
      {
        std::uint8_t v = val[mask];
        st_[idx] = ( v == 2 ) ? empty : ( v ? const1 : const0 );
      }
      else
      {
        std::uint8_t a = st_[idx - 2 * pow3_[star]];
        std::uint8_t b = st_[idx - pow3_[star]];
        st_[idx] = ( a == empty ) ? b : ( b == empty ) ? a : ( a == b ) ? a : mixed;
      }
    }
  }

  std::uint32_t num_bits() const { return n_; }

  std::size_t all_free_index() const
  {
    return ( pow3_[n_] - 1 ); /* every digit = 2 */
  }

  /* index of the subcube fixing `fixed` to the bits of x */
  std::size_t index_of( std::uint64_t fixed, std::uint64_t x ) const
  {
    std::size_t idx = all_free_index();
    for ( std::uint32_t i = 0; i < n_; ++i )
    {
      if ( ( fixed >> i ) & 1 )
      {
        idx -= ( 2 - ( ( x >> i ) & 1 ) ) * pow3_[i];
      }
    }
    return idx;
  }

  std::uint8_t state_at( std::size_t idx ) const { return st_[idx]; }
  std::size_t delta( std::uint32_t position, std::uint64_t x ) const
  {
    return ( 2 - ( ( x >> position ) & 1 ) ) * pow3_[position];
  }

  /* restricted decision-tree depth per subcube, built on first use */
  std::vector<std::uint16_t> const& depth()
  {
    if ( !depth_.empty() )
    {
      return depth_;
    }
    depth_.assign( st_.size(), 0 );
    for ( std::size_t idx = 0; idx < st_.size(); ++idx )
    {
      if ( st_[idx] != mixed )
      {
        continue; /* constant or empty: depth 0 */
      }
      std::size_t tmp = idx;
      std::uint16_t best = std::uint16_t( n_ + 1 );
      for ( std::uint32_t i = 0; i < n_ && tmp; ++i )
      {
        std::size_t d = tmp % 3;
        tmp /= 3;
        if ( d != 2 )
        {
          continue;
        }
        std::size_t c0 = idx - 2 * pow3_[i];
        std::size_t c1 = idx - pow3_[i];
        /* skip branches whose sub-promise is empty; a useful query splits */
        if ( st_[c0] == empty || st_[c1] == empty )
        {
          continue;
        }
        std::uint16_t cand = std::uint16_t( 1 + std::max( depth_[c0], depth_[c1] ) );
        best = std::min( best, cand );
      }
      depth_[idx] = best;
    }
    return depth_;
  }

  std::vector<std::size_t> const& pow3() const { return pow3_; }

private:
  std::uint32_t n_;
  std::vector<std::size_t> pow3_;
  std::vector<std::uint8_t> st_;
  std::vector<std::uint16_t> depth_;
};

inline bool use_cube_path( partial_function const& f )
{
  return f.num_bits() <= cube_max_bits &&
         f.domain_size() >= ( std::size_t( 1 ) << f.num_bits() ) / 2;
}

/* positions that can appear in a minimal certificate of x */
inline std::vector<std::uint32_t> certificate_candidates( partial_function const& f, std::uint64_t x )
{
  bool const fx = f.value( x );
  std::uint64_t uni = 0;
  for ( auto const& e : f.table() )
  {
    if ( ( e.second != 0 ) != fx )
    {
      uni |= e.first ^ x;
    }
  }
  std::vector<std::uint32_t> out;
  for ( std::uint32_t i = 0; i < f.num_bits(); ++i )
  {
    if ( ( uni >> i ) & 1 )
    {
      out.push_back( i );
    }
  }
  return out;
}

/* lexicographically ordered size-k subsets of 0..m-1, as index vectors */
template<typename Fn>
inline bool for_each_combination( std::uint32_t m, std::uint32_t k, Fn&& fn )
{
  std::vector<std::uint32_t> idx( k );
  for ( std::uint32_t i = 0; i < k; ++i )
  {
    idx[i] = i;
  }
  if ( k > m )
  {
    return false;
  }
  while ( true )
  {
    if ( fn( idx ) )
    {
      return true;
    }
    std::int32_t pos = std::int32_t( k ) - 1;
    while ( pos >= 0 && idx[pos] == m - k + pos )
    {
      --pos;
    }
    if ( pos < 0 )
    {
      return false;
    }
    ++idx[pos];
    for ( std::uint32_t j = pos + 1; j < k; ++j )
    {
      idx[j] = idx[j - 1] + 1;
    }
  }
}

/* per-input certificate search against an explicit violating list */
inline std::optional<partial_assignment> sparse_certificate_of_size(
    partial_function const& f, std::uint64_t x, std::vector<std::uint64_t> const& violating,
    std::vector<std::uint32_t> const& cand, std::uint32_t k )
{
  partial_assignment found;
  bool ok = for_each_combination( std::uint32_t( cand.size() ), k, [&]( std::vector<std::uint32_t> const& pick ) {
    std::uint64_t fixed = 0;
    for ( auto ci : pick )
    {
      fixed |= std::uint64_t( 1 ) << cand[ci];
    }
    for ( auto y : violating )
    {
      if ( ( ( x ^ y ) & fixed ) == 0 )
      {
        return false; /* y still consistent */
      }
    }
    found.n = f.num_bits();
    found.fixed = fixed;
    found.values = x & fixed;
    return true;
  } );
  return ok ? std::optional<partial_assignment>( found ) : std::nullopt;
}

inline std::optional<partial_assignment> cube_certificate_of_size(
    cube_table const& ct, std::uint64_t x, std::uint8_t want_state,
    std::vector<std::uint32_t> const& cand, std::uint32_t k )
{
  std::size_t const base = ct.all_free_index();
  std::vector<std::size_t> deltas( cand.size() );
  for ( std::size_t i = 0; i < cand.size(); ++i )
  {
    deltas[i] = ct.delta( cand[i], x );
  }
  partial_assignment found;
  bool ok = for_each_combination( std::uint32_t( cand.size() ), k, [&]( std::vector<std::uint32_t> const& pick ) {
    std::size_t idx = base;
    for ( auto ci : pick )
    {
      idx -= deltas[ci];
    }
    if ( ct.state_at( idx ) != want_state )
    {
      return false;
    }
    found.n = ct.num_bits();
    found.fixed = 0;
    for ( auto ci : pick )
    {
      found.fixed |= std::uint64_t( 1 ) << cand[ci];
    }
    found.values = x & found.fixed;
    return true;
  } );
  return ok ? std::optional<partial_assignment>( found ) : std::nullopt;
}

} // namespace detail

/*! \brief Lexicographically smallest minimum-size certificate for x. */
inline partial_assignment minimal_certificate( partial_function const& f, std::uint64_t x )
{
  bool const fx = f.value( x );
  std::vector<std::uint64_t> violating;
  for ( auto const& e : f.table() )
  {
    if ( ( e.second != 0 ) != fx )
    {
      violating.push_back( e.first );
    }
  }
  auto cand = detail::certificate_candidates( f, x );
  for ( std::uint32_t k = 0; k <= cand.size(); ++k )
  {
    if ( auto p = detail::sparse_certificate_of_size( f, x, violating, cand, k ) )
    {
      return *p;
    }
  }
  throw error( "internal: certificate search fell through" );
}

struct certificate_report
{
  std::uint32_t c = 0;
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> per_input; /* table order */
  std::uint64_t witness_input = 0;                                /* achieves c */
};

/*! \brief C, C0, C1 and all per-input certificate sizes.

  Ties for the witness input break toward the smallest input mask.
*/
inline certificate_report certificate_complexity( partial_function const& f )
{
  certificate_report rep;
  bool first = true;

  if ( detail::use_cube_path( f ) )
  {
    detail::cube_table ct( f );
    for ( auto const& e : f.table() )
    {
      auto cand = detail::certificate_candidates( f, e.first );
      std::uint8_t want = e.second ? detail::cube_table::const1 : detail::cube_table::const0;
      std::uint32_t cx = 0;
      for ( std::uint32_t k = 0;; ++k )
      {
        if ( detail::cube_certificate_of_size( ct, e.first, want, cand, k ) )
        {
          cx = k;
          break;
        }
      }
      rep.per_input.push_back( { e.first, cx } );
      if ( e.second )
      {
        rep.c1 = std::max( rep.c1, cx );
      }
      else
      {
        rep.c0 = std::max( rep.c0, cx );
      }
      if ( first || cx > rep.c )
      {
        rep.c = cx;
        rep.witness_input = e.first;
        first = false;
      }
    }
    return rep;
  }

  for ( auto const& e : f.table() )
  {
    bool const fx = e.second != 0;
    std::vector<std::uint64_t> violating;
    for ( auto const& o : f.table() )
    {
      if ( ( o.second != 0 ) != fx )
      {
        violating.push_back( o.first );
      }
    }
    auto cand = detail::certificate_candidates( f, e.first );
    std::uint32_t cx = 0;
    for ( std::uint32_t k = 0;; ++k )
    {
      if ( detail::sparse_certificate_of_size( f, e.first, violating, cand, k ) )
      {
        cx = k;
        break;
      }
    }
    rep.per_input.push_back( { e.first, cx } );
    if ( fx )
    {
      rep.c1 = std::max( rep.c1, cx );
    }
    else
    {
      rep.c0 = std::max( rep.c0, cx );
    }
    if ( first || cx > rep.c )
    {
      rep.c = cx;
      rep.witness_input = e.first;
      first = false;
    }
  }
  return rep;
}

namespace detail
{

/* memoized restriction recursion for sparse functions */
inline std::uint32_t sparse_depth( std::vector<partial_function::entry> const& dom, std::uint32_t n,
                                   std::unordered_map<std::string, std::uint32_t>& memo )
{
  bool constant = true;
  for ( auto const& e : dom )
  {
    if ( e.second != dom.front().second )
    {
      constant = false;
      break;
    }
  }
  if ( constant )
  {
    return 0;
  }
  std::string key;
  key.reserve( dom.size() * 9 );
  for ( auto const& e : dom )
  {
    for ( int b = 0; b < 8; ++b )
    {
      key.push_back( char( ( e.first >> ( 8 * b ) ) & 0xff ) );
    }
    key.push_back( char( e.second ) );
  }
  if ( auto it = memo.find( key ); it != memo.end() )
  {
    return it->second;
  }
  std::uint32_t best = n + 1;
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    std::uint64_t bit = std::uint64_t( 1 ) << i;
    std::vector<partial_function::entry> d0, d1;
    for ( auto const& e : dom )
    {
      ( ( e.first & bit ) ? d1 : d0 ).push_back( e );
    }
    if ( d0.empty() || d1.empty() )
    {
      continue; /* constant position: querying it cannot split the promise */
    }
    std::uint32_t cand = 1 + std::max( sparse_depth( d0, n, memo ), sparse_depth( d1, n, memo ) );
    best = std::min( best, cand );
  }
  memo.emplace( std::move( key ), best );
  return best;
}

inline decision_tree sparse_optimal_tree( std::vector<partial_function::entry> const& dom, std::uint32_t n,
                                          std::unordered_map<std::string, std::uint32_t>& memo,
                                          decision_tree& t )
{
  /* rebuilds the argmin choices of sparse_depth into an explicit tree */
  struct builder
  {
    std::uint32_t n;
    std::unordered_map<std::string, std::uint32_t>& memo;
    decision_tree& t;

    std::uint32_t run( std::vector<partial_function::entry> const& dom )
    {
      bool constant = true;
      for ( auto const& e : dom )
      {
        if ( e.second != dom.front().second )
        {
          constant = false;
        }
      }
      std::uint32_t idx = std::uint32_t( t.nodes.size() );
      t.nodes.push_back( {} );
      if ( constant )
      {
        t.nodes[idx] = { 0, 0, 0, dom.front().second };
        return idx;
      }
      std::uint32_t target = sparse_depth( dom, n, memo );
      for ( std::uint32_t i = 0; i < n; ++i )
      {
        std::uint64_t bit = std::uint64_t( 1 ) << i;
        std::vector<partial_function::entry> d0, d1;
        for ( auto const& e : dom )
        {
          ( ( e.first & bit ) ? d1 : d0 ).push_back( e );
        }
        if ( d0.empty() || d1.empty() )
        {
          continue;
        }
        if ( 1 + std::max( sparse_depth( d0, n, memo ), sparse_depth( d1, n, memo ) ) == target )
        {
          t.nodes[idx].query = i + 1;
          std::uint32_t c0 = run( d0 );
          std::uint32_t c1 = run( d1 );
          t.nodes[idx].child0 = c0;
          t.nodes[idx].child1 = c1;
          return idx;
        }
      }
      throw error( "internal: no branch matches the memoized depth" );
    }
  } b{ n, memo, t };
  b.run( dom );
  return t;
}

} // namespace detail

/*! \brief D(f): minimum height of a decision tree computing f. */
inline std::uint32_t deterministic_complexity( partial_function const& f )
{
  if ( detail::use_cube_path( f ) )
  {
    detail::cube_table ct( f );
    return ct.depth()[ct.all_free_index()];
  }
  std::unordered_map<std::string, std::uint32_t> memo;
  return detail::sparse_depth( f.table(), f.num_bits(), memo );
}

/*! \brief An optimal decision tree witnessing D(f); smallest query index wins ties. */
inline decision_tree optimal_tree( partial_function const& f )
{
  std::unordered_map<std::string, std::uint32_t> memo;
  decision_tree t;
  detail::sparse_optimal_tree( f.table(), f.num_bits(), memo, t );
  return t;
}

/*! \brief s(f) = max over inputs of the number of sensitive bits. */
inline std::uint32_t sensitivity( partial_function const& f )
{
  std::uint32_t best = 0;
  for ( auto const& e : f.table() )
  {
    std::uint32_t sx = 0;
    for ( std::uint32_t i = 0; i < f.num_bits(); ++i )
    {
      std::uint64_t y = e.first ^ ( std::uint64_t( 1 ) << i );
      if ( f.contains( y ) && f.value( y ) != ( e.second != 0 ) )
      {
        ++sx;
      }
    }
    best = std::max( best, sx );
  }
  return best;
}

namespace detail
{

/* sensitive blocks of x are exactly the difference sets with violating
   domain points; only inclusion-minimal ones matter for bs and fbs */
inline std::vector<std::uint64_t> minimal_sensitive_blocks( partial_function const& f, std::uint64_t x,
                                                            std::size_t cap )
{
  bool const fx = f.value( x );
  std::vector<std::uint64_t> blocks;
  for ( auto const& e : f.table() )
  {
    if ( ( e.second != 0 ) != fx )
    {
      blocks.push_back( e.first ^ x );
    }
  }
  if ( blocks.size() > cap )
  {
    throw too_many_blocks_error( "candidate sensitive blocks exceed the cap (" +
                                 std::to_string( blocks.size() ) + " > " + std::to_string( cap ) + ")" );
  }
  std::sort( blocks.begin(), blocks.end(), []( std::uint64_t a, std::uint64_t b ) {
    int pa = __builtin_popcountll( a ), pb = __builtin_popcountll( b );
    return pa != pb ? pa < pb : a < b;
  } );
  std::vector<std::uint64_t> minimal;
  for ( auto b : blocks )
  {
    bool dominated = false;
    for ( auto m : minimal )
    {
      if ( ( m & ~b ) == 0 )
      {
        dominated = true;
        break;
      }
    }
    if ( !dominated )
    {
      minimal.push_back( b );
    }
  }
  return minimal;
}

/* exact maximum disjoint packing by depth-first search */
inline std::uint32_t max_disjoint_packing( std::vector<std::uint64_t> const& blocks,
                                           std::vector<std::uint64_t>* witness = nullptr )
{
  std::uint32_t best = 0;
  std::vector<std::uint64_t> chosen, best_set;
  auto rec = [&]( auto&& self, std::size_t from, std::uint64_t used, std::uint32_t count ) -> void {
    if ( count + ( blocks.size() - from ) <= best )
    {
      return;
    }
    if ( count > best )
    {
      best = count;
      best_set = chosen;
    }
    for ( std::size_t i = from; i < blocks.size(); ++i )
    {
      if ( blocks[i] & used )
      {
        continue;
      }
      chosen.push_back( blocks[i] );
      self( self, i + 1, used | blocks[i], count + 1 );
      chosen.pop_back();
    }
  };
  rec( rec, 0, 0, 0 );
  if ( witness )
  {
    *witness = best_set;
  }
  return best;
}

} // namespace detail

inline constexpr std::size_t default_block_cap = 4096;

/*! \brief bs(f) by exact disjoint set packing over minimal sensitive blocks. */
inline std::uint32_t block_sensitivity( partial_function const& f, std::size_t block_cap = default_block_cap )
{
  if ( f.num_bits() > 20 )
  {
    throw arity_too_large_error( "block sensitivity capped at 20 bits" );
  }
  std::uint32_t best = 0;
  for ( auto const& e : f.table() )
  {
    auto blocks = detail::minimal_sensitive_blocks( f, e.first, block_cap );
    best = std::max( best, detail::max_disjoint_packing( blocks ) );
  }
  return best;
}

struct bs_witness
{
  std::uint64_t input = 0;
  std::uint32_t value = 0;
  std::vector<std::uint64_t> blocks; /* pairwise disjoint sensitive block masks */
};

/*! \brief A maximizing input with its disjoint sensitive blocks.

  Among maximizing inputs, those with f(x) = prefer (when given) win, then
  smaller input masks.  The preference exists because reduction witnesses
  built from a 0-valued maximizer land on PrOR ∘ S with the right output
  orientation.
*/
inline bs_witness block_sensitivity_witness( partial_function const& f,
                                             std::optional<bool> prefer = std::nullopt,
                                             std::size_t block_cap = default_block_cap )
{
  if ( f.num_bits() > 20 )
  {
    throw arity_too_large_error( "block sensitivity capped at 20 bits" );
  }
  bs_witness best;
  bool have = false;
  for ( auto const& e : f.table() )
  {
    auto blocks = detail::minimal_sensitive_blocks( f, e.first, block_cap );
    std::vector<std::uint64_t> set;
    std::uint32_t k = detail::max_disjoint_packing( blocks, &set );
    bool better = !have || k > best.value;
    if ( have && k == best.value && prefer )
    {
      bool cur_pref = ( f.value( best.input ) == *prefer );
      bool new_pref = ( ( e.second != 0 ) == *prefer );
      better = !cur_pref && new_pref;
    }
    if ( better )
    {
      best = { e.first, k, std::move( set ) };
      have = true;
    }
  }
  return best;
}

/*! \brief fbs(f): the optimal block-weight LP value, exact. */
inline rational fractional_block_sensitivity( partial_function const& f,
                                              std::size_t block_cap = default_block_cap )
{
  if ( f.num_bits() > 20 )
  {
    throw arity_too_large_error( "fractional block sensitivity capped at 20 bits" );
  }
  rational best = 0;
  for ( auto const& e : f.table() )
  {
    auto blocks = detail::minimal_sensitive_blocks( f, e.first, block_cap );
    if ( blocks.empty() )
    {
      continue;
    }
    linear_program lp( blocks.size(), true );
    for ( auto& c : lp.objective )
    {
      c = 1;
    }
    for ( std::uint32_t i = 0; i < f.num_bits(); ++i )
    {
      std::vector<rational> row( blocks.size(), 0 );
      bool any = false;
      for ( std::size_t b = 0; b < blocks.size(); ++b )
      {
        if ( ( blocks[b] >> i ) & 1 )
        {
          row[b] = 1;
          any = true;
        }
      }
      if ( any )
      {
        lp.add_constraint( std::move( row ), relation::le, 1 );
      }
    }
    auto sol = solve( lp );
    if ( sol.status != lp_status::optimal )
    {
      throw error( "internal: fbs program must be bounded-feasible" );
    }
    best = std::max( best, sol.value );
  }
  return best;
}

/*! \brief deg(f): least degree of a multilinear polynomial agreeing with f on Dom(f). */
inline std::uint32_t degree( partial_function const& f )
{
  std::uint32_t const n = f.num_bits();
  if ( f.is_total() )
  {
    if ( n > detail::cube_max_bits )
    {
      throw arity_too_large_error( "degree capped at 16 bits for total functions" );
    }
    /* unique multilinear representation via the Moebius transform */
    std::vector<long long> c( std::size_t( 1 ) << n );
    for ( auto const& e : f.table() )
    {
      c[e.first] = e.second;
    }
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      for ( std::size_t s = 0; s < c.size(); ++s )
      {
        if ( s & ( std::size_t( 1 ) << i ) )
        {
          c[s] -= c[s ^ ( std::size_t( 1 ) << i )];
        }
      }
    }
    std::uint32_t deg = 0;
    for ( std::size_t s = 0; s < c.size(); ++s )
    {
      if ( c[s] != 0 )
      {
        deg = std::max( deg, std::uint32_t( __builtin_popcountll( s ) ) );
      }
    }
    return deg;
  }
  if ( n > 10 )
  {
    throw arity_too_large_error( "degree for partial functions capped at 10 bits" );
  }
  for ( std::uint32_t d = 0; d <= n; ++d )
  {
    std::vector<std::uint64_t> monomials;
    for ( std::uint64_t s = 0; s < ( std::uint64_t( 1 ) << n ); ++s )
    {
      if ( std::uint32_t( __builtin_popcountll( s ) ) <= d )
      {
        monomials.push_back( s );
      }
    }
    std::vector<std::vector<rational>> a;
    std::vector<rational> b;
    for ( auto const& e : f.table() )
    {
      std::vector<rational> row( monomials.size() );
      for ( std::size_t j = 0; j < monomials.size(); ++j )
      {
        row[j] = ( ( e.first & monomials[j] ) == monomials[j] ) ? 1 : 0;
      }
      a.push_back( std::move( row ) );
      b.push_back( e.second );
    }
    if ( feasible_equalities( a, b ).feasible )
    {
      return d;
    }
  }
  throw error( "internal: full-degree interpolation cannot fail" );
}

/*! \brief adeg_eps(f): approximation on Dom(f), range [0,1] on the whole cube. */
inline std::uint32_t approx_degree( partial_function const& f, rational const& eps = rational( 1, 3 ) )
{
  std::uint32_t const n = f.num_bits();
  if ( n > 10 )
  {
    throw arity_too_large_error( "approximate degree capped at 10 bits" );
  }
  auto feasible_at = [&]( std::uint32_t d ) {
    std::vector<std::uint64_t> monomials;
    for ( std::uint64_t s = 0; s < ( std::uint64_t( 1 ) << n ); ++s )
    {
      if ( std::uint32_t( __builtin_popcountll( s ) ) <= d )
      {
        monomials.push_back( s );
      }
    }
    linear_program lp( monomials.size() );
    for ( std::size_t j = 0; j < monomials.size(); ++j )
    {
      lp.set_free( j );
    }
    auto row_for = [&]( std::uint64_t x ) {
      std::vector<rational> row( monomials.size() );
      for ( std::size_t j = 0; j < monomials.size(); ++j )
      {
        row[j] = ( ( x & monomials[j] ) == monomials[j] ) ? 1 : 0;
      }
      return row;
    };
    for ( std::uint64_t x = 0; x < ( std::uint64_t( 1 ) << n ); ++x )
    {
      lp.add_constraint( row_for( x ), relation::ge, 0 );
      lp.add_constraint( row_for( x ), relation::le, 1 );
    }
    for ( auto const& e : f.table() )
    {
      if ( e.second )
      {
        lp.add_constraint( row_for( e.first ), relation::ge, rational( 1 ) - eps );
      }
      else
      {
        lp.add_constraint( row_for( e.first ), relation::le, eps );
      }
    }
    return feasible( lp ).feasible;
  };
  std::uint32_t lo = 0, hi = n;
  while ( lo < hi )
  {
    std::uint32_t mid = ( lo + hi ) / 2;
    if ( feasible_at( mid ) )
    {
      hi = mid;
    }
    else
    {
      lo = mid + 1;
    }
  }
  return lo;
}

} // namespace qlimit

#include "randomized.hpp"
