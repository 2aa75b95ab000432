/*!
  \file lift.hpp
  \brief Lifting reduction witnesses through block composition.

  An inner witness g' ≲ g lifts to f∘g' ≲ f∘g by applying each step to every
  block at once.  An outer witness f' ≲ f lifts to f'∘g ≲ f∘g; its bit
  negations translate into replaying a switchability witness of g on single
  blocks, which is why outer lifting of strong witnesses demands a
  switchable inner function.
*/

#pragma once

#include <numeric>

#include "reductions.hpp"

namespace qlimit
{

namespace detail
{

/* the composed function plus live block layout; steps accumulate as they
   are applied, so every precondition is checked on the spot */
struct lift_state
{
  partial_function cur;
  std::vector<std::uint32_t> widths; /* per block, in order */
  std::vector<reduction_step> steps;

  std::uint32_t block_start( std::size_t b ) const /* 1-based bit position */
  {
    std::uint32_t s = 1;
    for ( std::size_t i = 0; i < b; ++i )
    {
      s += widths[i];
    }
    return s;
  }

  std::uint32_t total_bits() const
  {
    return std::accumulate( widths.begin(), widths.end(), 0u );
  }

  void apply( reduction_step s )
  {
    cur = apply_step( cur, s );
    steps.push_back( std::move( s ) );
  }

  std::uint64_t block_substring( std::uint64_t x, std::size_t b ) const
  {
    std::uint32_t const start = block_start( b );
    return ( x >> ( start - 1 ) ) & ( ( std::uint64_t( 1 ) << widths[b] ) - 1 );
  }

  /* applies one inner-function step to every block in `targets` */
  void apply_inner( reduction_step const& s, std::vector<std::size_t> const& targets )
  {
    switch ( s.kind )
    {
    case step_kind::index_rename:
    {
      std::uint32_t const n = total_bits();
      std::vector<std::uint32_t> perm( n );
      std::iota( perm.begin(), perm.end(), 1 );
      for ( auto b : targets )
      {
        std::uint32_t const start = block_start( b );
        for ( std::uint32_t o = 0; o < widths[b]; ++o )
        {
          perm[start - 1 + o] = start + s.perm[o] - 1;
        }
      }
      apply( reduction_step::rename( perm ) );
      break;
    }
    case step_kind::restrict_promise:
    {
      std::set<std::uint64_t> allowed( s.strings.begin(), s.strings.end() );
      std::vector<std::uint64_t> promise;
      for ( auto const& e : cur.table() )
      {
        bool ok = true;
        for ( auto b : targets )
        {
          if ( !allowed.count( block_substring( e.first, b ) ) )
          {
            ok = false;
            break;
          }
        }
        if ( ok )
        {
          promise.push_back( e.first );
        }
      }
      apply( reduction_step::restrict_to( promise ) );
      break;
    }
    case step_kind::negate_bits:
    {
      std::uint64_t mask = 0;
      for ( auto b : targets )
      {
        mask |= s.mask << ( block_start( b ) - 1 );
      }
      apply( reduction_step::negate( mask ) );
      break;
    }
    case step_kind::duplicate_bit:
    {
      /* descending so earlier block positions stay put */
      for ( auto it = targets.rbegin(); it != targets.rend(); ++it )
      {
        std::size_t const b = *it;
        std::uint32_t const start = block_start( b );
        apply( reduction_step::duplicate( start + s.i - 1 ) );
        /* move the appended copy to the end of block b */
        std::uint32_t const n = total_bits() + 1;
        std::vector<std::uint32_t> perm( n );
        std::uint32_t const insert_at = start + widths[b];
        for ( std::uint32_t p = 1; p < n; ++p )
        {
          perm[p - 1] = p < insert_at ? p : p + 1;
        }
        perm[n - 1] = insert_at;
        apply( reduction_step::rename( perm ) );
        ++widths[b];
      }
      break;
    }
    case step_kind::remove_duplicate:
    {
      for ( auto it = targets.rbegin(); it != targets.rend(); ++it )
      {
        std::size_t const b = *it;
        std::uint32_t const start = block_start( b );
        apply( reduction_step::remove_dup( start + s.i - 1, start + s.j - 1 ) );
        --widths[b];
      }
      break;
    }
    case step_kind::add_superfluous:
    {
      for ( auto it = targets.rbegin(); it != targets.rend(); ++it )
      {
        std::size_t const b = *it;
        apply( reduction_step::add_sup( s.width, s.strings ) );
        /* interleave the fresh suffix to the end of block b */
        std::uint32_t const n = total_bits() + s.width;
        std::uint32_t const insert_at = block_start( b ) + widths[b];
        std::vector<std::uint32_t> perm( n );
        for ( std::uint32_t p = 1; p <= n - s.width; ++p )
        {
          perm[p - 1] = p < insert_at ? p : p + s.width;
        }
        for ( std::uint32_t t = 0; t < s.width; ++t )
        {
          perm[n - s.width + t] = insert_at + t;
        }
        apply( reduction_step::rename( perm ) );
        widths[b] += s.width;
      }
      break;
    }
    case step_kind::remove_superfluous:
    {
      for ( auto it = targets.rbegin(); it != targets.rend(); ++it )
      {
        std::size_t const b = *it;
        std::uint32_t const start = block_start( b );
        std::vector<std::uint32_t> positions;
        for ( auto p : s.positions )
        {
          positions.push_back( start + p - 1 );
        }
        apply( reduction_step::remove_sup( positions ) );
        widths[b] -= std::uint32_t( s.positions.size() );
      }
      break;
    }
    }
  }
};

} // namespace detail

/*! \brief Lifts a witness for the inner function: f ∘ source  →  f ∘ target. */
inline reduction_witness lift_inner( reduction_witness const& wg, partial_function const& f )
{
  detail::lift_state st;
  st.cur = compose( f, wg.source );
  st.widths.assign( f.num_bits(), wg.source.num_bits() );
  std::vector<std::size_t> all( f.num_bits() );
  std::iota( all.begin(), all.end(), 0 );
  for ( auto const& s : wg.steps )
  {
    st.apply_inner( s, all );
  }
  reduction_witness out;
  out.source = compose( f, wg.source );
  out.target = compose( f, wg.target );
  out.steps = std::move( st.steps );
  out.mode = wg.mode;
  if ( !( st.cur == out.target ) || !verify_witness( out ) )
  {
    throw error( "internal: lifted inner witness failed replay" );
  }
  return out;
}

/*! \brief Lifts a witness for the outer function: source ∘ g  →  target ∘ g.

  Weak outer witnesses lift unconditionally.  A strong outer witness negates
  bits of the outer function, which corresponds to switching single blocks;
  that requires a switchability witness for g (¬g back to g).  When that
  witness is itself weak (g strongly switchable) the lifted witness is weak.
*/
inline reduction_witness lift_outer( reduction_witness const& wf, partial_function const& g,
                                     std::optional<reduction_witness> g_switch = std::nullopt )
{
  bool needs_switch = false;
  for ( auto const& s : wf.steps )
  {
    if ( s.kind == step_kind::negate_bits )
    {
      needs_switch = true;
    }
  }
  if ( needs_switch )
  {
    if ( !g_switch )
    {
      throw switchability_required_error(
          "outer bit negations need a switchability witness for the inner function" );
    }
    if ( !( g_switch->source == g ) || !( g_switch->target == negate_output( g ) ) ||
         !verify_witness( *g_switch ) )
    {
      throw switchability_required_error( "the provided switch witness does not map g to its negation" );
    }
  }

  detail::lift_state st;
  st.cur = compose( wf.source, g );
  st.widths.assign( wf.source.num_bits(), g.num_bits() );
  std::uint32_t const w = g.num_bits();

  for ( auto const& s : wf.steps )
  {
    switch ( s.kind )
    {
    case step_kind::index_rename:
    {
      std::uint32_t const n = st.total_bits();
      std::vector<std::uint32_t> perm( n );
      for ( std::uint32_t b = 0; b < st.widths.size(); ++b )
      {
        for ( std::uint32_t o = 0; o < w; ++o )
        {
          perm[b * w + o] = ( s.perm[b] - 1 ) * w + o + 1;
        }
      }
      st.apply( reduction_step::rename( perm ) );
      break;
    }
    case step_kind::restrict_promise:
    {
      std::set<std::uint64_t> allowed( s.strings.begin(), s.strings.end() );
      std::vector<std::uint64_t> promise;
      for ( auto const& e : st.cur.table() )
      {
        std::uint64_t vals = 0;
        for ( std::size_t b = 0; b < st.widths.size(); ++b )
        {
          if ( g.value( st.block_substring( e.first, b ) ) )
          {
            vals |= std::uint64_t( 1 ) << b;
          }
        }
        if ( allowed.count( vals ) )
        {
          promise.push_back( e.first );
        }
      }
      st.apply( reduction_step::restrict_to( promise ) );
      break;
    }
    case step_kind::add_superfluous:
    {
      /* fresh blocks whose value strings range over the added set */
      std::set<std::uint64_t> allowed( s.strings.begin(), s.strings.end() );
      std::vector<std::uint64_t> strings;
      std::vector<std::size_t> odom( s.width, 0 );
      auto const& gt = g.table();
      while ( true )
      {
        std::uint64_t pack = 0, vals = 0;
        for ( std::uint32_t b = 0; b < s.width; ++b )
        {
          pack |= gt[odom[b]].first << ( b * w );
          if ( gt[odom[b]].second )
          {
            vals |= std::uint64_t( 1 ) << b;
          }
        }
        if ( allowed.count( vals ) )
        {
          strings.push_back( pack );
        }
        std::uint32_t p = 0;
        while ( p < s.width && ++odom[p] == gt.size() )
        {
          odom[p++] = 0;
        }
        if ( p == s.width )
        {
          break;
        }
      }
      st.apply( reduction_step::add_sup( s.width * w, strings ) );
      for ( std::uint32_t b = 0; b < s.width; ++b )
      {
        st.widths.push_back( w );
      }
      break;
    }
    case step_kind::remove_superfluous:
    {
      std::vector<std::uint32_t> positions;
      std::vector<std::size_t> blocks( s.positions.begin(), s.positions.end() );
      for ( auto bp : s.positions )
      {
        std::uint32_t const start = st.block_start( bp - 1 );
        for ( std::uint32_t o = 0; o < w; ++o )
        {
          positions.push_back( start + o );
        }
      }
      st.apply( reduction_step::remove_sup( positions ) );
      std::sort( blocks.rbegin(), blocks.rend() );
      for ( auto bp : blocks )
      {
        st.widths.erase( st.widths.begin() + ( bp - 1 ) );
      }
      break;
    }
    case step_kind::duplicate_bit:
    {
      /* append a fresh block, then promise it to share the g-value of block i */
      std::vector<std::uint64_t> dom;
      for ( auto const& e : g.table() )
      {
        dom.push_back( e.first );
      }
      st.apply( reduction_step::add_sup( w, dom ) );
      st.widths.push_back( w );
      std::vector<std::uint64_t> promise;
      std::size_t const fresh = st.widths.size() - 1;
      for ( auto const& e : st.cur.table() )
      {
        bool vi = g.value( st.block_substring( e.first, s.i - 1 ) );
        bool vf = g.value( st.block_substring( e.first, fresh ) );
        if ( vi == vf )
        {
          promise.push_back( e.first );
        }
      }
      st.apply( reduction_step::restrict_to( promise ) );
      break;
    }
    case step_kind::remove_duplicate:
    {
      /* align block j with block i stringwise, then delete its bits */
      std::vector<std::uint64_t> promise;
      for ( auto const& e : st.cur.table() )
      {
        if ( st.block_substring( e.first, s.i - 1 ) == st.block_substring( e.first, s.j - 1 ) )
        {
          promise.push_back( e.first );
        }
      }
      st.apply( reduction_step::restrict_to( promise ) );
      std::uint32_t const start_i = st.block_start( s.i - 1 );
      std::uint32_t const start_j = st.block_start( s.j - 1 );
      for ( std::uint32_t o = w; o-- > 0; )
      {
        /* removals below the kept block shift it down one bit each */
        std::uint32_t removed_below = ( start_i > start_j ) ? ( w - 1 - o ) : 0;
        st.apply( reduction_step::remove_dup( start_i + o - removed_below, start_j + o ) );
      }
      st.widths.erase( st.widths.begin() + ( s.j - 1 ) );
      break;
    }
    case step_kind::negate_bits:
    {
      for ( std::uint32_t b = 0; b < st.widths.size(); ++b )
      {
        if ( ( s.mask >> b ) & 1 )
        {
          for ( auto const& gs : g_switch->steps )
          {
            st.apply_inner( gs, { b } );
          }
        }
      }
      break;
    }
    }
  }

  reduction_witness out;
  out.source = compose( wf.source, g );
  out.target = compose( wf.target, g );
  out.steps = std::move( st.steps );
  out.mode = wf.mode;
  if ( needs_switch )
  {
    out.mode = g_switch->mode; /* weak switch witness keeps the lift weak */
  }
  if ( !( st.cur == out.target ) || !verify_witness( out ) )
  {
    throw error( "internal: lifted outer witness failed replay" );
  }
  return out;
}

} // namespace qlimit
