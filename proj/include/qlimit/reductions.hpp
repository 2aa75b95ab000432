/*!
  \file reductions.hpp
  \brief The reduction calculus between partial functions: replayable
         witnesses, bounded exhaustive decision, switchability, and the
         constructive switch/block-sensitivity reductions.

  A witness is an ordered list of elementary steps that transforms its
  source function into its target exactly.  Weak-mode witnesses may not
  negate bits.  Every positive claim made by this module carries a witness
  that re-verifies by replay; the decision procedure returns NotReducible
  only when its bounded search space provably covers all witnesses for the
  given sizes, and Inconclusive otherwise.
*/

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolfn.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "measures.hpp"

namespace qlimit
{

enum class step_kind
{
  index_rename,
  add_superfluous,
  remove_superfluous,
  duplicate_bit,
  remove_duplicate,
  restrict_promise,
  negate_bits
};

struct reduction_step
{
  step_kind kind{};
  std::vector<std::uint32_t> perm;      /* index_rename: perm[old-1] = new */
  std::uint32_t width = 0;              /* add_superfluous */
  std::vector<std::uint64_t> strings;   /* add_superfluous / restrict_promise */
  std::vector<std::uint32_t> positions; /* remove_superfluous */
  std::uint32_t i = 0;                  /* duplicate_bit / remove_duplicate */
  std::uint32_t j = 0;                  /* remove_duplicate */
  std::uint64_t mask = 0;               /* negate_bits */

  static reduction_step rename( std::vector<std::uint32_t> perm )
  {
    reduction_step s;
    s.kind = step_kind::index_rename;
    s.perm = std::move( perm );
    return s;
  }
  static reduction_step add_sup( std::uint32_t width, std::vector<std::uint64_t> strings )
  {
    reduction_step s;
    s.kind = step_kind::add_superfluous;
    s.width = width;
    s.strings = std::move( strings );
    return s;
  }
  static reduction_step remove_sup( std::vector<std::uint32_t> positions )
  {
    reduction_step s;
    s.kind = step_kind::remove_superfluous;
    s.positions = std::move( positions );
    return s;
  }
  static reduction_step duplicate( std::uint32_t i )
  {
    reduction_step s;
    s.kind = step_kind::duplicate_bit;
    s.i = i;
    return s;
  }
  static reduction_step remove_dup( std::uint32_t i, std::uint32_t j )
  {
    reduction_step s;
    s.kind = step_kind::remove_duplicate;
    s.i = i;
    s.j = j;
    return s;
  }
  static reduction_step restrict_to( std::vector<std::uint64_t> promise )
  {
    reduction_step s;
    s.kind = step_kind::restrict_promise;
    s.strings = std::move( promise );
    return s;
  }
  static reduction_step negate( std::uint64_t mask )
  {
    reduction_step s;
    s.kind = step_kind::negate_bits;
    s.mask = mask;
    return s;
  }
};

inline partial_function apply_step( partial_function const& f, reduction_step const& s )
{
  switch ( s.kind )
  {
  case step_kind::index_rename:
    return rename_indices( f, s.perm );
  case step_kind::add_superfluous:
    return add_superfluous( f, s.width, s.strings );
  case step_kind::remove_superfluous:
    return remove_superfluous( f, s.positions );
  case step_kind::duplicate_bit:
    return duplicate_bit( f, s.i );
  case step_kind::remove_duplicate:
    return remove_duplicate( f, s.i, s.j );
  case step_kind::restrict_promise:
    return restrict_promise( f, s.strings );
  case step_kind::negate_bits:
    return negate_bits( f, s.mask );
  }
  throw error( "internal: unknown step kind" );
}

enum class reduction_mode
{
  weak,  /* the plain relation; no bit negation */
  strong /* bit negation allowed */
};

struct reduction_witness
{
  partial_function source;
  partial_function target;
  std::vector<reduction_step> steps;
  reduction_mode mode = reduction_mode::weak;
};

/*! \brief Replays the steps from the source; throws step_inapplicable_error
    with the failing step index. */
inline partial_function replay_witness( reduction_witness const& w )
{
  partial_function cur = w.source;
  for ( std::size_t i = 0; i < w.steps.size(); ++i )
  {
    if ( w.mode == reduction_mode::weak && w.steps[i].kind == step_kind::negate_bits )
    {
      throw step_inapplicable_error( i, "bit negation is not allowed in weak mode" );
    }
    try
    {
      cur = apply_step( cur, w.steps[i] );
    }
    catch ( error const& e )
    {
      throw step_inapplicable_error( i, e.what() );
    }
  }
  return cur;
}

/*! \brief True iff replay reproduces the target exactly. */
inline bool verify_witness( reduction_witness const& w )
{
  try
  {
    return replay_witness( w ) == w.target;
  }
  catch ( step_inapplicable_error const& )
  {
    return false;
  }
}

/*! \brief Concatenation along a shared midpoint (transitivity). */
inline reduction_witness concat_witnesses( reduction_witness const& first, reduction_witness const& second )
{
  if ( !( first.target == second.source ) )
  {
    throw error( "witnesses do not share a midpoint" );
  }
  reduction_witness w;
  w.source = first.source;
  w.target = second.target;
  w.steps = first.steps;
  w.steps.insert( w.steps.end(), second.steps.begin(), second.steps.end() );
  w.mode = ( first.mode == reduction_mode::strong || second.mode == reduction_mode::strong )
               ? reduction_mode::strong
               : reduction_mode::weak;
  return w;
}

namespace detail
{

/* squeezed projection of the domain onto a position set, used to invert
   superfluous removals */
inline std::vector<std::uint64_t> superfluous_projection( partial_function const& f, std::uint64_t posmask )
{
  std::set<std::uint64_t> proj;
  std::uint32_t const n = f.num_bits();
  std::uint64_t const keep = ~posmask;
  for ( auto const& e : f.table() )
  {
    proj.insert( squeeze_mask( e.first & posmask, n, keep ) );
  }
  return { proj.begin(), proj.end() };
}

struct normal_form
{
  partial_function fn;
  std::vector<reduction_step> forward;  /* from the original */
  std::vector<reduction_step> backward; /* from fn back to the original */
};

/* all fully reduced forms reachable by removing duplicates and superfluous
   bit sets; the removal order matters (removal is not confluent), so every
   order is explored with memoization on the intermediate encodings */
inline void normal_forms_rec( partial_function const& f, std::vector<reduction_step>& fwd,
                              std::vector<reduction_step>& bwd, std::set<std::string>& seen_interm,
                              std::set<std::string>& seen_out, std::vector<normal_form>& out,
                              bool& exhaustive )
{
  if ( !seen_interm.insert( f.encoding() ).second )
  {
    return;
  }
  std::uint32_t const n = f.num_bits();
  if ( n > 12 )
  {
    exhaustive = false; /* superfluous subsets beyond 12 bits are not searched */
  }
  bool any = false;

  /* duplicate pairs */
  for ( std::uint32_t i = 1; i <= n && n > 1; ++i )
  {
    for ( std::uint32_t j = 1; j <= n; ++j )
    {
      if ( i == j || !bits_duplicate( f, i, j ) )
      {
        continue;
      }
      any = true;
      auto next = remove_duplicate( f, i, j );
      fwd.push_back( reduction_step::remove_dup( i, j ) );
      /* inverse: duplicate the kept bit and move the copy back to position j */
      std::uint32_t i_shift = i < j ? i : i - 1;
      std::vector<reduction_step> inv;
      inv.push_back( reduction_step::duplicate( i_shift ) );
      std::vector<std::uint32_t> perm( n );
      for ( std::uint32_t p = 1; p < n; ++p )
      {
        perm[p - 1] = p < j ? p : p + 1;
      }
      perm[n - 1] = j;
      inv.push_back( reduction_step::rename( perm ) );
      std::vector<reduction_step> bwd_next = inv;
      bwd_next.insert( bwd_next.end(), bwd.begin(), bwd.end() );
      std::swap( bwd, bwd_next );
      normal_forms_rec( next, fwd, bwd, seen_interm, seen_out, out, exhaustive );
      std::swap( bwd, bwd_next );
      fwd.pop_back();
    }
  }

  /* superfluous position sets (every non-empty proper subset) */
  if ( n > 1 && n <= 12 )
  {
    for ( std::uint64_t sub = 1; sub < ( std::uint64_t( 1 ) << n ) - 1; ++sub )
    {
      if ( !removable_superfluous( f, sub ) )
      {
        continue;
      }
      any = true;
      std::vector<std::uint32_t> positions;
      for ( std::uint32_t p = 0; p < n; ++p )
      {
        if ( ( sub >> p ) & 1 )
        {
          positions.push_back( p + 1 );
        }
      }
      auto proj = superfluous_projection( f, sub );
      auto next = remove_superfluous( f, positions );
      fwd.push_back( reduction_step::remove_sup( positions ) );
      /* inverse: append the projection strings, then interleave them back */
      std::uint32_t const w = std::uint32_t( positions.size() );
      std::vector<reduction_step> inv;
      inv.push_back( reduction_step::add_sup( w, proj ) );
      std::vector<std::uint32_t> perm( n );
      std::uint32_t at = 1;
      for ( std::uint32_t p = 1; p <= n - w; ++p )
      {
        while ( ( sub >> ( at - 1 ) ) & 1 )
        {
          ++at;
        }
        perm[p - 1] = at++;
      }
      for ( std::uint32_t t = 0; t < w; ++t )
      {
        perm[n - w + t] = positions[t];
      }
      inv.push_back( reduction_step::rename( perm ) );
      std::vector<reduction_step> bwd_next = inv;
      bwd_next.insert( bwd_next.end(), bwd.begin(), bwd.end() );
      std::swap( bwd, bwd_next );
      normal_forms_rec( next, fwd, bwd, seen_interm, seen_out, out, exhaustive );
      std::swap( bwd, bwd_next );
      fwd.pop_back();
    }
  }

  if ( !any )
  {
    if ( seen_out.insert( f.encoding() ).second )
    {
      out.push_back( { f, fwd, bwd } );
    }
  }
}

inline std::vector<normal_form> normal_forms( partial_function const& f, bool* exhaustive = nullptr )
{
  std::vector<normal_form> out;
  std::vector<reduction_step> fwd, bwd;
  std::set<std::string> seen_interm, seen_out;
  bool full = true;
  normal_forms_rec( f, fwd, bwd, seen_interm, seen_out, out, full );
  if ( exhaustive )
  {
    *exhaustive = full;
  }
  return out;
}

/* deterministic enumeration of all permutations matching h against target */
inline std::optional<std::vector<std::uint32_t>> matching_permutation( partial_function const& h,
                                                                       partial_function const& target )
{
  if ( h.num_bits() != target.num_bits() || h.domain_size() != target.domain_size() )
  {
    return std::nullopt;
  }
  std::uint32_t const n = h.num_bits();
  std::vector<std::uint32_t> perm( n );
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    perm[i] = i + 1;
  }
  do
  {
    if ( rename_indices( h, perm ) == target )
    {
      return perm;
    }
  } while ( std::next_permutation( perm.begin(), perm.end() ) );
  return std::nullopt;
}

} // namespace detail

struct decide_budget
{
  std::uint64_t max_domain = 64;       /* materialization guard for padded forms */
  std::uint32_t max_pad_width = 2;     /* widest superfluous padding tried */
  std::uint32_t subset_enum_limit = 16; /* promise subsets enumerated iff |Dom| fits */
  std::uint32_t max_perm_bits = 8;     /* permutation matching guard */
};

enum class decide_status
{
  reducible,
  not_reducible,
  inconclusive
};

struct decide_result
{
  decide_status status = decide_status::inconclusive;
  std::optional<reduction_witness> witness;
};

namespace detail
{

struct decide_search
{
  partial_function const& f;
  partial_function const& g;
  reduction_mode mode;
  decide_budget budget;
  std::vector<normal_form> nf_f;
  std::map<std::string, std::vector<normal_form>> nf_memo;
  bool complete = true;

  std::vector<normal_form> const& forms_of( partial_function const& h )
  {
    auto key = h.encoding();
    auto it = nf_memo.find( key );
    if ( it == nf_memo.end() )
    {
      bool exhaustive = true;
      it = nf_memo.emplace( key, normal_forms( h, &exhaustive ) ).first;
      complete = complete && exhaustive;
    }
    return it->second;
  }

  /* tries (restrict to P, negate z, normalize, permute) from base toward f;
     base_steps already map g to base */
  std::optional<reduction_witness> try_promise( partial_function const& base,
                                                std::vector<reduction_step> const& base_steps,
                                                std::vector<std::uint64_t> const& promise )
  {
    partial_function restricted = promise.size() == base.domain_size()
                                      ? base
                                      : restrict_promise( base, promise );
    std::uint64_t mask_limit =
        mode == reduction_mode::strong ? ( std::uint64_t( 1 ) << base.num_bits() ) : 1;
    if ( base.num_bits() > budget.max_perm_bits )
    {
      if ( mode == reduction_mode::strong )
      {
        mask_limit = 1; /* masks beyond the budget are not searched */
        complete = false;
      }
    }
    for ( std::uint64_t z = 0; z < mask_limit; ++z )
    {
      partial_function h0 = z ? negate_bits( restricted, z ) : restricted;
      for ( auto const& form : forms_of( h0 ) )
      {
        for ( auto const& nf : nf_f )
        {
          if ( form.fn.num_bits() != nf.fn.num_bits() )
          {
            continue;
          }
          if ( form.fn.num_bits() > budget.max_perm_bits )
          {
            complete = false;
            continue;
          }
          auto perm = matching_permutation( form.fn, nf.fn );
          if ( !perm )
          {
            continue;
          }
          reduction_witness w;
          w.source = g;
          w.target = f;
          w.mode = mode;
          w.steps = base_steps;
          if ( promise.size() != base.domain_size() )
          {
            w.steps.push_back( reduction_step::restrict_to( promise ) );
          }
          if ( z )
          {
            w.steps.push_back( reduction_step::negate( z ) );
          }
          w.steps.insert( w.steps.end(), form.forward.begin(), form.forward.end() );
          bool identity = true;
          for ( std::uint32_t p = 0; p < perm->size(); ++p )
          {
            identity = identity && ( *perm )[p] == p + 1;
          }
          if ( !identity )
          {
            w.steps.push_back( reduction_step::rename( *perm ) );
          }
          /* nf.backward maps nf.fn to f */
          w.steps.insert( w.steps.end(), nf.backward.begin(), nf.backward.end() );
          if ( !verify_witness( w ) )
          {
            throw error( "internal: assembled witness failed replay" );
          }
          return w;
        }
      }
    }
    return std::nullopt;
  }

  /* full search from base (g, possibly padded) */
  std::optional<reduction_witness> search_base( partial_function const& base,
                                                std::vector<reduction_step> const& base_steps )
  {
    auto const& tab = base.table();
    std::size_t const d = tab.size();

    /* profile filter: normalization divides both value counts evenly */
    std::vector<std::size_t> f_zero_one( 2, 0 );
    for ( auto const& e : f.table() )
    {
      ++f_zero_one[e.second];
    }

    /* the full domain first */
    {
      std::vector<std::uint64_t> all;
      for ( auto const& e : tab )
      {
        all.push_back( e.first );
      }
      if ( auto w = try_promise( base, base_steps, all ) )
      {
        return w;
      }
    }
    if ( d > budget.subset_enum_limit )
    {
      complete = false;
      return std::nullopt;
    }
    std::uint64_t zeros = 0, ones = 0;
    for ( std::size_t j = 0; j < d; ++j )
    {
      ( tab[j].second ? ones : zeros ) |= std::uint64_t( 1 ) << j;
    }
    for ( std::uint64_t sub = 1; sub + 1 < ( std::uint64_t( 1 ) << d ); ++sub )
    {
      std::size_t c0 = std::size_t( __builtin_popcountll( sub & zeros ) );
      std::size_t c1 = std::size_t( __builtin_popcountll( sub & ones ) );
      /* value counts must be a common multiple of the target's */
      if ( f_zero_one[0] * c1 != f_zero_one[1] * c0 )
      {
        continue;
      }
      if ( ( f_zero_one[0] && !c0 ) || ( f_zero_one[1] && !c1 ) )
      {
        continue;
      }
      std::vector<std::uint64_t> promise;
      for ( std::size_t j = 0; j < d; ++j )
      {
        if ( ( sub >> j ) & 1 )
        {
          promise.push_back( tab[j].first );
        }
      }
      if ( auto w = try_promise( base, base_steps, promise ) )
      {
        return w;
      }
    }
    return std::nullopt;
  }
};

} // namespace detail

/*! \brief Bounded search for a reduction witness from g to f.

  NotReducible is only returned when the bounded space provably covers all
  witnesses for the given sizes: superfluous padding is unnecessary when the
  normalized f fits inside the normalized g, and the promise subsets,
  negation masks and permutations were enumerated exhaustively.  Otherwise a
  failed search reports Inconclusive.
*/
inline decide_result decide( partial_function const& f, partial_function const& g, reduction_mode mode,
                             decide_budget budget = {} )
{
  if ( f == g )
  {
    decide_result r;
    r.status = decide_status::reducible;
    r.witness = reduction_witness{ f, f, {}, mode };
    return r;
  }
  /* every operation preserves constancy */
  if ( g.is_constant() && !f.is_constant() )
  {
    return { decide_status::not_reducible, std::nullopt };
  }

  bool nf_f_exhaustive = true;
  detail::decide_search search{ f, g, mode, budget, detail::normal_forms( f, &nf_f_exhaustive ), {}, true };
  search.complete = nf_f_exhaustive;

  if ( auto w = search.search_base( g, {} ) )
  {
    return { decide_status::reducible, std::move( w ) };
  }

  std::uint32_t min_nf_f = max_arity + 1, min_nf_g = max_arity + 1;
  for ( auto const& nf : search.nf_f )
  {
    min_nf_f = std::min( min_nf_f, nf.fn.num_bits() );
  }
  for ( auto const& nf : search.forms_of( g ) )
  {
    min_nf_g = std::min( min_nf_g, nf.fn.num_bits() );
  }

  bool pads_needed = min_nf_f > min_nf_g;
  if ( pads_needed )
  {
    for ( std::uint32_t m = 1; m <= budget.max_pad_width; ++m )
    {
      for ( std::uint64_t s = 1; s < ( std::uint64_t( 1 ) << ( std::uint64_t( 1 ) << m ) ); ++s )
      {
        std::vector<std::uint64_t> strings;
        for ( std::uint64_t v = 0; v < ( std::uint64_t( 1 ) << m ); ++v )
        {
          if ( ( s >> v ) & 1 )
          {
            strings.push_back( v );
          }
        }
        if ( g.domain_size() * strings.size() > budget.max_domain )
        {
          search.complete = false;
          continue;
        }
        auto padded = add_superfluous( g, m, strings );
        std::vector<reduction_step> base = { reduction_step::add_sup( m, strings ) };
        if ( auto w = search.search_base( padded, base ) )
        {
          return { decide_status::reducible, std::move( w ) };
        }
      }
    }
    /* padding was required, so the bounded space is not known to cover */
    return { decide_status::inconclusive, std::nullopt };
  }

  return { search.complete ? decide_status::not_reducible : decide_status::inconclusive, std::nullopt };
}

enum class switchable_status
{
  strongly_switchable, /* the negation reduces without bit negation */
  switchable,
  no,
  inconclusive
};

struct switchable_result
{
  switchable_status status = switchable_status::inconclusive;
  std::optional<reduction_witness> witness;
};

/*! \brief Tests whether the output-negation of f reduces back to f. */
inline switchable_result is_switchable( partial_function const& f, decide_budget budget = {} )
{
  auto neg = negate_output( f );
  auto strong_claim = decide( neg, f, reduction_mode::weak, budget );
  if ( strong_claim.status == decide_status::reducible )
  {
    return { switchable_status::strongly_switchable, std::move( strong_claim.witness ) };
  }
  auto weak_claim = decide( neg, f, reduction_mode::strong, budget );
  if ( weak_claim.status == decide_status::reducible )
  {
    return { switchable_status::switchable, std::move( weak_claim.witness ) };
  }
  if ( strong_claim.status == decide_status::not_reducible &&
       weak_claim.status == decide_status::not_reducible )
  {
    return { switchable_status::no, std::nullopt };
  }
  return { switchable_status::inconclusive, std::nullopt };
}

/*! \brief The explicit witness that S ∘ f reduces to f: pad with a full
    second block, then impose the promise that the two blocks disagree. */
inline reduction_witness switch_compose_witness( partial_function const& f )
{
  std::uint32_t const n = f.num_bits();
  std::vector<std::uint64_t> dom;
  for ( auto const& e : f.table() )
  {
    dom.push_back( e.first );
  }
  auto padded = add_superfluous( f, n, dom );
  std::vector<std::uint64_t> promise;
  for ( auto const& e : padded.table() )
  {
    std::uint64_t x = e.first & ( ( std::uint64_t( 1 ) << n ) - 1 );
    std::uint64_t y = e.first >> n;
    if ( f.value( x ) != f.value( y ) )
    {
      promise.push_back( e.first );
    }
  }
  reduction_witness w;
  w.source = f;
  w.target = compose( catalog( "S" ), f );
  w.mode = reduction_mode::weak;
  w.steps.push_back( reduction_step::add_sup( n, dom ) );
  w.steps.push_back( reduction_step::restrict_to( promise ) );
  if ( !verify_witness( w ) )
  {
    throw error( "internal: switch-composition witness failed replay" );
  }
  return w;
}

/*! \brief The block-sensitivity reduction witness.

  Restricts f to a maximizing input and its disjoint block flips, strips
  constant bits, collapses each block to two anti-correlated bits (padding
  single-bit blocks), and permutes so the chosen input reads (01)^k.  When
  the maximizing input can be chosen with value 0 the target is exactly
  PrOR_bs ∘ S; when only 1-valued inputs achieve bs(f), the same
  construction lands on the output-negated variant and the caller can see
  that from the returned target.
*/
inline reduction_witness bs_reduction_witness( partial_function const& f )
{
  auto wit = block_sensitivity_witness( f, false );
  std::uint32_t const k = wit.value;
  if ( k == 0 )
  {
    throw error( "constant functions have no sensitive blocks" );
  }
  std::uint64_t const x = wit.input;
  std::vector<std::uint64_t> blocks = wit.blocks;
  std::sort( blocks.begin(), blocks.end() );

  reduction_witness w;
  w.source = f;
  w.mode = reduction_mode::weak;
  partial_function cur = f;
  auto push = [&]( reduction_step s ) {
    cur = apply_step( cur, s );
    w.steps.push_back( std::move( s ) );
  };

  /* promise: x together with its block flips */
  {
    std::vector<std::uint64_t> promise = { x };
    for ( auto b : blocks )
    {
      promise.push_back( x ^ b );
    }
    std::sort( promise.begin(), promise.end() );
    push( reduction_step::restrict_to( promise ) );
  }

  /* track original positions through removals: pos_of[orig bit] = current, 0 = gone */
  std::uint32_t const n = f.num_bits();
  std::vector<std::uint32_t> pos( n + 1 );
  for ( std::uint32_t p = 1; p <= n; ++p )
  {
    pos[p] = p;
  }
  auto remove_at = [&]( std::uint32_t cur_pos ) {
    for ( std::uint32_t p = 1; p <= n; ++p )
    {
      if ( pos[p] == cur_pos )
      {
        pos[p] = 0;
      }
      else if ( pos[p] > cur_pos )
      {
        --pos[p];
      }
    }
  };

  /* bits in no block are constant on the promise: jointly superfluous */
  {
    std::uint64_t in_blocks = 0;
    for ( auto b : blocks )
    {
      in_blocks |= b;
    }
    std::vector<std::uint32_t> constant_bits;
    for ( std::uint32_t p = 1; p <= n; ++p )
    {
      if ( !( ( in_blocks >> ( p - 1 ) ) & 1 ) )
      {
        constant_bits.push_back( pos[p] );
      }
    }
    if ( !constant_bits.empty() )
    {
      push( reduction_step::remove_sup( constant_bits ) );
      std::sort( constant_bits.rbegin(), constant_bits.rend() );
      for ( auto cp : constant_bits )
      {
        remove_at( cp );
      }
    }
  }

  /* within each block, bits sharing the same x-value are duplicates */
  struct block_bits
  {
    std::uint32_t zero = 0; /* current position carrying x-bit 0, if any */
    std::uint32_t one = 0;
  };
  std::vector<block_bits> kept( blocks.size() );
  for ( std::size_t bi = 0; bi < blocks.size(); ++bi )
  {
    std::vector<std::uint32_t> zeros, ones;
    for ( std::uint32_t p = 1; p <= n; ++p )
    {
      if ( ( blocks[bi] >> ( p - 1 ) ) & 1 )
      {
        ( ( ( x >> ( p - 1 ) ) & 1 ) ? ones : zeros ).push_back( p );
      }
    }
    auto collapse = [&]( std::vector<std::uint32_t> const& group ) -> std::uint32_t {
      if ( group.empty() )
      {
        return 0;
      }
      std::uint32_t keep = group.front();
      for ( std::size_t t = 1; t < group.size(); ++t )
      {
        push( reduction_step::remove_dup( pos[keep], pos[group[t]] ) );
        remove_at( pos[group[t]] );
      }
      return keep;
    };
    std::uint32_t keep0 = collapse( zeros );
    std::uint32_t keep1 = collapse( ones );
    kept[bi].zero = keep0 ? pos[keep0] : 0;
    kept[bi].one = keep1 ? pos[keep1] : 0;
  }
  /* refresh current positions after later removals */
  auto refresh = [&]() {
    for ( std::size_t bi = 0; bi < blocks.size(); ++bi )
    {
      for ( std::uint32_t p = 1; p <= n; ++p )
      {
        if ( ( blocks[bi] >> ( p - 1 ) ) & 1 && pos[p] != 0 )
        {
          if ( ( x >> ( p - 1 ) ) & 1 )
          {
            kept[bi].one = pos[p];
          }
          else
          {
            kept[bi].zero = pos[p];
          }
        }
      }
    }
  };
  refresh();

  /* single-bit blocks get an anti-correlated superfluous partner */
  for ( std::size_t bi = 0; bi < blocks.size(); ++bi )
  {
    if ( kept[bi].zero != 0 && kept[bi].one != 0 )
    {
      continue;
    }
    std::uint32_t lone = kept[bi].zero ? kept[bi].zero : kept[bi].one;
    push( reduction_step::add_sup( 1, { 0, 1 } ) );
    std::uint32_t const fresh = cur.num_bits();
    std::vector<std::uint64_t> promise;
    for ( auto const& e : cur.table() )
    {
      bool lone_bit = ( e.first >> ( lone - 1 ) ) & 1;
      bool new_bit = ( e.first >> ( fresh - 1 ) ) & 1;
      if ( lone_bit != new_bit )
      {
        promise.push_back( e.first );
      }
    }
    push( reduction_step::restrict_to( promise ) );
    if ( kept[bi].zero )
    {
      kept[bi].one = fresh;
    }
    else
    {
      kept[bi].zero = fresh;
    }
  }

  /* arrange blocks contiguously with the x-image reading (01)^k */
  {
    std::vector<std::uint32_t> perm( cur.num_bits() );
    for ( std::size_t bi = 0; bi < blocks.size(); ++bi )
    {
      perm[kept[bi].zero - 1] = std::uint32_t( 2 * bi + 1 );
      perm[kept[bi].one - 1] = std::uint32_t( 2 * bi + 2 );
    }
    bool identity = true;
    for ( std::uint32_t p = 0; p < perm.size(); ++p )
    {
      identity = identity && perm[p] == p + 1;
    }
    if ( !identity )
    {
      push( reduction_step::rename( perm ) );
    }
  }

  w.target = cur;
  if ( !verify_witness( w ) )
  {
    throw error( "internal: block-sensitivity witness failed replay" );
  }
  return w;
}

/* ----- witness serialization ----------------------------------------- */

/*! \brief Witness JSON: mode, source and target function specs, and the
    step list with all bit strings rendered at their step's arity. */
inline nlohmann::json witness_to_json( reduction_witness const& w )
{
  nlohmann::json steps = nlohmann::json::array();
  partial_function cur = w.source;
  for ( auto const& s : w.steps )
  {
    nlohmann::json js;
    switch ( s.kind )
    {
    case step_kind::index_rename:
      js = { { "op", "rename" }, { "perm", s.perm } };
      break;
    case step_kind::add_superfluous:
    {
      std::vector<std::string> strs;
      for ( auto v : s.strings )
      {
        strs.push_back( mask_to_string( v, s.width ) );
      }
      js = { { "op", "add_superfluous" }, { "strings", strs } };
      break;
    }
    case step_kind::remove_superfluous:
      js = { { "op", "remove_superfluous" }, { "indices", s.positions } };
      break;
    case step_kind::duplicate_bit:
      js = { { "op", "duplicate_bit" }, { "i", s.i } };
      break;
    case step_kind::remove_duplicate:
      js = { { "op", "remove_duplicate" }, { "i", s.i }, { "j", s.j } };
      break;
    case step_kind::restrict_promise:
    {
      std::vector<std::string> strs;
      for ( auto v : s.strings )
      {
        strs.push_back( mask_to_string( v, cur.num_bits() ) );
      }
      js = { { "op", "restrict" }, { "strings", strs } };
      break;
    }
    case step_kind::negate_bits:
      js = { { "op", "negate" }, { "mask", mask_to_string( s.mask, cur.num_bits() ) } };
      break;
    }
    steps.push_back( js );
    cur = apply_step( cur, s );
  }
  return { { "mode", w.mode == reduction_mode::weak ? "weak" : "strong" },
           { "source", function_to_json( w.source ) },
           { "steps", steps },
           { "target", function_to_json( w.target ) } };
}

inline reduction_witness witness_from_json( nlohmann::json const& j )
{
  reduction_witness w;
  std::string mode = j.at( "mode" ).get<std::string>();
  if ( mode != "weak" && mode != "strong" )
  {
    throw parse_error( "witness mode must be weak or strong", 1, 1 );
  }
  w.mode = mode == "weak" ? reduction_mode::weak : reduction_mode::strong;
  w.source = function_from_json( j.at( "source" ) );
  w.target = function_from_json( j.at( "target" ) );
  for ( auto const& js : j.at( "steps" ) )
  {
    std::string op = js.at( "op" ).get<std::string>();
    reduction_step s;
    if ( op == "rename" )
    {
      s = reduction_step::rename( js.at( "perm" ).get<std::vector<std::uint32_t>>() );
    }
    else if ( op == "add_superfluous" )
    {
      auto strs = js.at( "strings" ).get<std::vector<std::string>>();
      if ( strs.empty() )
      {
        throw parse_error( "add_superfluous needs strings", 1, 1 );
      }
      std::vector<std::uint64_t> masks;
      for ( auto const& t : strs )
      {
        masks.push_back( string_to_mask( t ) );
      }
      s = reduction_step::add_sup( std::uint32_t( strs.front().size() ), masks );
    }
    else if ( op == "remove_superfluous" )
    {
      s = reduction_step::remove_sup( js.at( "indices" ).get<std::vector<std::uint32_t>>() );
    }
    else if ( op == "duplicate_bit" )
    {
      s = reduction_step::duplicate( js.at( "i" ).get<std::uint32_t>() );
    }
    else if ( op == "remove_duplicate" )
    {
      s = reduction_step::remove_dup( js.at( "i" ).get<std::uint32_t>(), js.at( "j" ).get<std::uint32_t>() );
    }
    else if ( op == "restrict" )
    {
      std::vector<std::uint64_t> masks;
      for ( auto const& t : js.at( "strings" ).get<std::vector<std::string>>() )
      {
        masks.push_back( string_to_mask( t ) );
      }
      s = reduction_step::restrict_to( masks );
    }
    else if ( op == "negate" )
    {
      s = reduction_step::negate( string_to_mask( js.at( "mask" ).get<std::string>() ) );
    }
    else
    {
      throw parse_error( "unknown step op '" + op + "'", 1, 1 );
    }
    w.steps.push_back( std::move( s ) );
  }
  return w;
}

} // namespace qlimit
