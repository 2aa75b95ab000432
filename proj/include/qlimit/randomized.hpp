/*!
  \file randomized.hpp
  \brief Exact randomized query complexity on up to 3 bits via LPs over the
         full decision-tree space.

  All trees are enumerated (16430 of them at n = 3), reduced by behavioral
  deduplication and domination pruning, and fed as columns into exact LPs.
  Pruning keeps, per output signature on Dom(f), the trees whose
  (cost vector, height) is Pareto-optimal; removing a dominated column never
  changes an optimum because the dominating column is feasible wherever the
  dominated one was used, at no larger cost or height.
*/

#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "decision_tree.hpp"
#include "ratlp.hpp"

namespace qlimit
{

enum class r_flavor
{
  height,     /* R_eps: minimum height */
  expected,   /* Rbar_eps: minimum worst-case expected cost */
  zero_error  /* R_0 = Rbar_0: zero error, minimum worst-case expected cost */
};

struct randomized_result
{
  rational value = 0;
  randomized_algorithm algorithm;
};

namespace detail
{

struct tree_column
{
  std::uint32_t root;
  std::uint32_t sig;               /* output bit per domain entry, table order */
  std::vector<std::uint8_t> costs; /* per domain entry */
  std::uint32_t height;
};

inline std::vector<tree_column> pruned_tree_columns( partial_function const& f )
{
  auto const& pool = tree_pool::instance( f.num_bits() );
  auto const& tab = f.table();

  std::vector<tree_column> cols;
  std::map<std::tuple<std::uint32_t, std::vector<std::uint8_t>, std::uint32_t>, bool> seen;
  for ( auto root : pool.roots() )
  {
    tree_column c;
    c.root = root;
    c.sig = 0;
    c.height = pool.height( root );
    c.costs.resize( tab.size() );
    for ( std::size_t j = 0; j < tab.size(); ++j )
    {
      if ( pool.evaluate( root, tab[j].first ) )
      {
        c.sig |= std::uint32_t( 1 ) << j;
      }
      c.costs[j] = std::uint8_t( pool.cost( root, tab[j].first ) );
    }
    auto key = std::make_tuple( c.sig, c.costs, c.height );
    if ( seen.emplace( key, true ).second )
    {
      cols.push_back( std::move( c ) );
    }
  }

  /* domination pruning within identical output signatures */
  std::map<std::uint32_t, std::vector<std::size_t>> groups;
  for ( std::size_t i = 0; i < cols.size(); ++i )
  {
    groups[cols[i].sig].push_back( i );
  }
  std::vector<bool> dead( cols.size(), false );
  for ( auto const& [sig, members] : groups )
  {
    for ( auto i : members )
    {
      for ( auto j : members )
      {
        if ( i == j || dead[j] )
        {
          continue;
        }
        bool le = cols[j].height <= cols[i].height;
        bool strict = cols[j].height < cols[i].height;
        for ( std::size_t k = 0; k < cols[i].costs.size() && le; ++k )
        {
          if ( cols[j].costs[k] > cols[i].costs[k] )
          {
            le = false;
          }
          else if ( cols[j].costs[k] < cols[i].costs[k] )
          {
            strict = true;
          }
        }
        if ( le && strict )
        {
          dead[i] = true;
          break;
        }
      }
    }
  }
  std::vector<tree_column> out;
  for ( std::size_t i = 0; i < cols.size(); ++i )
  {
    if ( !dead[i] )
    {
      out.push_back( std::move( cols[i] ) );
    }
  }
  return out;
}

inline std::uint32_t signature_of( partial_function const& f )
{
  std::uint32_t sig = 0;
  auto const& tab = f.table();
  for ( std::size_t j = 0; j < tab.size(); ++j )
  {
    if ( tab[j].second )
    {
      sig |= std::uint32_t( 1 ) << j;
    }
  }
  return sig;
}

/* min t over mixtures: cost rows, optional error rows, sum-to-one */
inline randomized_result solve_mixture( partial_function const& f, std::vector<tree_column> const& cols,
                                        std::optional<rational> const& eps )
{
  auto const& pool = tree_pool::instance( f.num_bits() );
  std::size_t const nt = cols.size();
  std::size_t const dom = f.table().size();
  std::uint32_t const fsig = signature_of( f );

  linear_program lp( nt + 1 );
  lp.objective[nt] = 1;
  for ( std::size_t j = 0; j < dom; ++j )
  {
    std::vector<rational> cost_row( nt + 1, 0 );
    for ( std::size_t i = 0; i < nt; ++i )
    {
      cost_row[i] = cols[i].costs[j];
    }
    cost_row[nt] = -1;
    lp.add_constraint( std::move( cost_row ), relation::le, 0 );
    if ( eps )
    {
      std::vector<rational> err_row( nt + 1, 0 );
      for ( std::size_t i = 0; i < nt; ++i )
      {
        if ( ( ( cols[i].sig ^ fsig ) >> j ) & 1 )
        {
          err_row[i] = 1;
        }
      }
      lp.add_constraint( std::move( err_row ), relation::le, *eps );
    }
  }
  std::vector<rational> one_row( nt + 1, 0 );
  for ( std::size_t i = 0; i < nt; ++i )
  {
    one_row[i] = 1;
  }
  lp.add_constraint( std::move( one_row ), relation::eq, 1 );

  auto sol = solve( lp );
  if ( sol.status != lp_status::optimal )
  {
    throw error( "internal: mixture program must be bounded-feasible" );
  }
  randomized_result res;
  res.value = sol.value;
  for ( std::size_t i = 0; i < nt; ++i )
  {
    if ( sol.assignment[i] > 0 )
    {
      res.algorithm.support.push_back( { pool.materialize( cols[i].root ), sol.assignment[i] } );
    }
  }
  return res;
}

} // namespace detail

/*! \brief R_eps / Rbar_eps / R_0 with an optimal randomized algorithm witness.

  Exact rationals throughout; eps must lie in [0, 1/2).  Arity is capped at
  3 bits (full tree enumeration).
*/
inline randomized_result randomized_complexity( partial_function const& f,
                                                rational const& eps = rational( 1, 3 ),
                                                r_flavor flavor = r_flavor::expected )
{
  if ( f.num_bits() > 3 )
  {
    throw arity_too_large_error( "randomized complexity capped at 3 bits" );
  }
  if ( eps < 0 || eps >= rational( 1, 2 ) )
  {
    throw error( "error parameter must lie in [0, 1/2)" );
  }
  auto cols = detail::pruned_tree_columns( f );
  std::uint32_t const fsig = detail::signature_of( f );

  if ( flavor == r_flavor::zero_error )
  {
    std::vector<detail::tree_column> correct;
    for ( auto const& c : cols )
    {
      if ( c.sig == fsig )
      {
        correct.push_back( c );
      }
    }
    return detail::solve_mixture( f, correct, std::nullopt );
  }
  if ( flavor == r_flavor::expected )
  {
    return detail::solve_mixture( f, cols, eps );
  }

  /* height flavor: least h whose error-only program is feasible */
  auto const& pool = tree_pool::instance( f.num_bits() );
  for ( std::uint32_t h = 0; h <= f.num_bits(); ++h )
  {
    std::vector<detail::tree_column> sub;
    for ( auto const& c : cols )
    {
      if ( c.height <= h )
      {
        sub.push_back( c );
      }
    }
    if ( sub.empty() )
    {
      continue;
    }
    linear_program lp( sub.size() );
    for ( std::size_t j = 0; j < f.table().size(); ++j )
    {
      std::vector<rational> err_row( sub.size(), 0 );
      for ( std::size_t i = 0; i < sub.size(); ++i )
      {
        if ( ( ( sub[i].sig ^ fsig ) >> j ) & 1 )
        {
          err_row[i] = 1;
        }
      }
      lp.add_constraint( std::move( err_row ), relation::le, eps );
    }
    std::vector<rational> one_row( sub.size(), 1 );
    lp.add_constraint( std::move( one_row ), relation::eq, 1 );
    auto res = feasible( lp );
    if ( res.feasible )
    {
      randomized_result out;
      out.value = h;
      for ( std::size_t i = 0; i < sub.size(); ++i )
      {
        if ( res.assignment[i] > 0 )
        {
          out.algorithm.support.push_back( { pool.materialize( sub[i].root ), res.assignment[i] } );
        }
      }
      return out;
    }
  }
  throw error( "internal: the full-height program is always feasible" );
}

} // namespace qlimit
