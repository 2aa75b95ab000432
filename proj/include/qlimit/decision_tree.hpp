/*!
  \file decision_tree.hpp
  \brief Decision trees, probability mixes of trees, and exhaustive tree
         enumeration for small arities.

  A tree is stored as a node pool with the root at index 0.  Query indices
  are 1-based.  No index repeats on any root-to-leaf path, so the height is
  at most n.
*/

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "boolfn.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace qlimit
{

struct decision_tree
{
  struct node
  {
    std::uint32_t query = 0; /* 0 marks a leaf */
    std::uint32_t child0 = 0;
    std::uint32_t child1 = 0;
    std::uint8_t leaf_value = 0;
  };

  std::vector<node> nodes; /* root at index 0; never empty */

  static decision_tree leaf( bool v )
  {
    decision_tree t;
    t.nodes.push_back( { 0, 0, 0, std::uint8_t( v ? 1 : 0 ) } );
    return t;
  }

  bool evaluate( std::uint64_t x ) const
  {
    std::uint32_t at = 0;
    while ( nodes[at].query != 0 )
    {
      at = ( ( x >> ( nodes[at].query - 1 ) ) & 1 ) ? nodes[at].child1 : nodes[at].child0;
    }
    return nodes[at].leaf_value != 0;
  }

  /* path length for input x */
  std::uint32_t cost( std::uint64_t x ) const
  {
    std::uint32_t at = 0, steps = 0;
    while ( nodes[at].query != 0 )
    {
      ++steps;
      at = ( ( x >> ( nodes[at].query - 1 ) ) & 1 ) ? nodes[at].child1 : nodes[at].child0;
    }
    return steps;
  }

  std::uint32_t height_from( std::uint32_t at ) const
  {
    if ( nodes[at].query == 0 )
    {
      return 0;
    }
    return 1 + std::max( height_from( nodes[at].child0 ), height_from( nodes[at].child1 ) );
  }

  std::uint32_t height() const
  {
    return height_from( 0 );
  }

  /*! \brief The partial assignment read along the path taken by x. */
  partial_assignment path_assignment( std::uint64_t x, std::uint32_t n ) const
  {
    partial_assignment p;
    p.n = n;
    std::uint32_t at = 0;
    while ( nodes[at].query != 0 )
    {
      std::uint64_t bit = std::uint64_t( 1 ) << ( nodes[at].query - 1 );
      p.fixed |= bit;
      if ( x & bit )
      {
        p.values |= bit;
        at = nodes[at].child1;
      }
      else
      {
        at = nodes[at].child0;
      }
    }
    return p;
  }

  bool well_formed( std::uint32_t n, std::uint32_t at = 0, std::uint64_t used = 0 ) const
  {
    if ( at >= nodes.size() )
    {
      return false;
    }
    auto const& nd = nodes[at];
    if ( nd.query == 0 )
    {
      return nd.leaf_value <= 1;
    }
    if ( nd.query > n )
    {
      return false;
    }
    std::uint64_t bit = std::uint64_t( 1 ) << ( nd.query - 1 );
    if ( used & bit )
    {
      return false; /* repeated index on a path */
    }
    return well_formed( n, nd.child0, used | bit ) && well_formed( n, nd.child1, used | bit );
  }
};

/*! \brief D computes f when it matches f on the whole domain. */
inline bool verify_tree( partial_function const& f, decision_tree const& t )
{
  if ( !t.well_formed( f.num_bits() ) )
  {
    return false;
  }
  for ( auto const& e : f.table() )
  {
    if ( t.evaluate( e.first ) != ( e.second != 0 ) )
    {
      return false;
    }
  }
  return true;
}

/*! \brief A probability distribution over decision trees. */
struct randomized_algorithm
{
  std::vector<std::pair<decision_tree, rational>> support;

  rational cost( std::uint64_t x ) const
  {
    rational c = 0;
    for ( auto const& [t, p] : support )
    {
      c += p * t.cost( x );
    }
    return c;
  }

  rational error( partial_function const& f, std::uint64_t x ) const
  {
    rational e = 0;
    bool fx = f.value( x );
    for ( auto const& [t, p] : support )
    {
      if ( t.evaluate( x ) != fx )
      {
        e += p;
      }
    }
    return e;
  }

  std::uint32_t height() const
  {
    std::uint32_t h = 0;
    for ( auto const& [t, p] : support )
    {
      h = std::max( h, t.height() );
    }
    return h;
  }

  rational total_probability() const
  {
    rational s = 0;
    for ( auto const& [t, p] : support )
    {
      s += p;
    }
    return s;
  }
};

/*! \brief Shared pool for exhaustively enumerated trees on few bits.

  enumerate(n) lists every decision tree on n bits (16430 of them at n = 3).
  Node handles index into the pool; tree handle = root node handle.
*/
class tree_pool
{
public:
  struct pool_node
  {
    std::uint32_t query; /* 0 = leaf, leaf value in child0 */
    std::uint32_t child0;
    std::uint32_t child1;
    std::uint32_t height;
  };

  explicit tree_pool( std::uint32_t n ) : n_( n )
  {
    if ( n > 4 )
    {
      throw arity_too_large_error( "exhaustive tree enumeration capped at 4 bits" );
    }
    leaf0_ = add_node( { 0, 0, 0, 0 } );
    leaf1_ = add_node( { 0, 1, 0, 0 } );
    roots_ = enumerate_set( ( std::uint64_t( 1 ) << n ) - 1 );
  }

  std::vector<std::uint32_t> const& roots() const { return roots_; }
  pool_node const& node( std::uint32_t h ) const { return nodes_[h]; }
  std::uint32_t num_bits() const { return n_; }

  bool evaluate( std::uint32_t h, std::uint64_t x ) const
  {
    while ( nodes_[h].query != 0 )
    {
      h = ( ( x >> ( nodes_[h].query - 1 ) ) & 1 ) ? nodes_[h].child1 : nodes_[h].child0;
    }
    return nodes_[h].child0 != 0;
  }

  std::uint32_t cost( std::uint32_t h, std::uint64_t x ) const
  {
    std::uint32_t steps = 0;
    while ( nodes_[h].query != 0 )
    {
      ++steps;
      h = ( ( x >> ( nodes_[h].query - 1 ) ) & 1 ) ? nodes_[h].child1 : nodes_[h].child0;
    }
    return steps;
  }

  std::uint32_t height( std::uint32_t h ) const { return nodes_[h].height; }

  /*! \brief Materializes a pool tree as a standalone decision_tree. */
  decision_tree materialize( std::uint32_t h ) const
  {
    decision_tree t;
    copy_into( h, t );
    return t;
  }

  /*! \brief Globally cached pool per arity. */
  static tree_pool const& instance( std::uint32_t n )
  {
    static std::map<std::uint32_t, tree_pool> pools;
    auto it = pools.find( n );
    if ( it == pools.end() )
    {
      it = pools.emplace( n, tree_pool( n ) ).first;
    }
    return it->second;
  }

private:
  std::uint32_t add_node( pool_node nd )
  {
    nodes_.push_back( nd );
    return std::uint32_t( nodes_.size() - 1 );
  }

  std::vector<std::uint32_t> enumerate_set( std::uint64_t avail )
  {
    auto it = memo_.find( avail );
    if ( it != memo_.end() )
    {
      return it->second;
    }
    std::vector<std::uint32_t> out = { leaf0_, leaf1_ };
    for ( std::uint32_t i = 1; i <= n_; ++i )
    {
      std::uint64_t bit = std::uint64_t( 1 ) << ( i - 1 );
      if ( !( avail & bit ) )
      {
        continue;
      }
      auto subs = enumerate_set( avail & ~bit );
      for ( auto c0 : subs )
      {
        for ( auto c1 : subs )
        {
          std::uint32_t h = 1 + std::max( nodes_[c0].height, nodes_[c1].height );
          out.push_back( add_node( { i, c0, c1, h } ) );
        }
      }
    }
    memo_[avail] = out;
    return out;
  }

  std::uint32_t copy_into( std::uint32_t h, decision_tree& t ) const
  {
    auto const& nd = nodes_[h];
    std::uint32_t idx = std::uint32_t( t.nodes.size() );
    t.nodes.push_back( {} );
    if ( nd.query == 0 )
    {
      t.nodes[idx] = { 0, 0, 0, std::uint8_t( nd.child0 ) };
    }
    else
    {
      t.nodes[idx].query = nd.query;
      std::uint32_t c0 = copy_into( nd.child0, t );
      std::uint32_t c1 = copy_into( nd.child1, t );
      t.nodes[idx].child0 = c0;
      t.nodes[idx].child1 = c1;
    }
    return idx;
  }

  std::uint32_t n_;
  std::uint32_t leaf0_ = 0, leaf1_ = 0;
  std::vector<pool_node> nodes_;
  std::vector<std::uint32_t> roots_;
  std::map<std::uint64_t, std::vector<std::uint32_t>> memo_;
};

} // namespace qlimit
