#include <catch2/catch_amalgamated.hpp>

#include <qlimit/ratlp.hpp>

#include <random>

using namespace qlimit;

TEST_CASE( "one-variable maximum" )
{
  linear_program lp( 1, true );
  lp.objective = { 1 };
  lp.add_constraint( { 1 }, relation::le, 3 );
  auto sol = solve( lp );
  REQUIRE( sol.status == lp_status::optimal );
  REQUIRE( sol.value == 3 );
  REQUIRE( sol.assignment == std::vector<rational>{ 3 } );
}

TEST_CASE( "two-variable maximum" )
{
  linear_program lp( 2, true );
  lp.objective = { 1, 1 };
  lp.add_constraint( { 1, 1 }, relation::le, 1 );
  auto sol = solve( lp );
  REQUIRE( sol.status == lp_status::optimal );
  REQUIRE( sol.value == 1 );
}

TEST_CASE( "three disjoint singleton blocks give weight 3" )
{
  /* the block-weight program for PrOR3 at 000: one weight per singleton
     block, per-bit load at most 1 */
  linear_program lp( 3, true );
  lp.objective = { 1, 1, 1 };
  lp.add_constraint( { 1, 0, 0 }, relation::le, 1 );
  lp.add_constraint( { 0, 1, 0 }, relation::le, 1 );
  lp.add_constraint( { 0, 0, 1 }, relation::le, 1 );
  auto sol = solve( lp );
  REQUIRE( sol.status == lp_status::optimal );
  REQUIRE( sol.value == 3 );
}

TEST_CASE( "contradictory equalities are infeasible" )
{
  linear_program lp( 1 );
  lp.set_free( 0 );
  lp.add_constraint( { 1 }, relation::eq, 1 );
  lp.add_constraint( { 1 }, relation::eq, 2 );
  REQUIRE( !feasible( lp ).feasible );
  REQUIRE( solve( lp ).status == lp_status::infeasible );
}

TEST_CASE( "unbounded detection" )
{
  linear_program lp( 1, true );
  lp.objective = { 1 };
  auto sol = solve( lp );
  REQUIRE( sol.status == lp_status::unbounded );
}

TEST_CASE( "degree-1 interpolation of S is feasible" )
{
  /* p(x1,x2) = a0 + a1 x1 + a2 x2 with p(01) = 0, p(10) = 1 */
  std::vector<std::vector<rational>> a = { { 1, 0, 1 }, { 1, 1, 0 } };
  std::vector<rational> b = { 0, 1 };
  auto res = feasible_equalities( a, b );
  REQUIRE( res.feasible );
}

TEST_CASE( "degree-1 interpolation of 2-bit parity is infeasible" )
{
  std::vector<std::vector<rational>> a = {
      { 1, 0, 0 }, { 1, 1, 0 }, { 1, 0, 1 }, { 1, 1, 1 } };
  std::vector<rational> b = { 0, 1, 1, 0 };
  REQUIRE( !feasible_equalities( a, b ).feasible );
}

TEST_CASE( "mixed relations with exact rational data" )
{
  /* min 2x + 3y  s.t.  x + y >= 5/2, x - y = 1/2, x,y >= 0 */
  linear_program lp( 2 );
  lp.objective = { 2, 3 };
  lp.add_constraint( { 1, 1 }, relation::ge, rational( 5, 2 ) );
  lp.add_constraint( { 1, -1 }, relation::eq, rational( 1, 2 ) );
  auto sol = solve( lp );
  REQUIRE( sol.status == lp_status::optimal );
  /* x = 3/2, y = 1: value 3 + 3 = 6 */
  REQUIRE( sol.value == 6 );
  REQUIRE( sol.assignment[0] == rational( 3, 2 ) );
  REQUIRE( sol.assignment[1] == 1 );
}

TEST_CASE( "upper bounds and free variables" )
{
  linear_program lp( 2, true );
  lp.objective = { 1, -1 };
  lp.upper[0] = rational( 7, 3 );
  lp.set_free( 1 );
  lp.add_constraint( { 0, 1 }, relation::ge, -2 );
  auto sol = solve( lp );
  REQUIRE( sol.status == lp_status::optimal );
  REQUIRE( sol.value == rational( 7, 3 ) + 2 );
  REQUIRE( sol.assignment[1] == -2 );
}

TEST_CASE( "dimension mismatch is rejected" )
{
  linear_program lp( 2 );
  REQUIRE_THROWS_AS( lp.add_constraint( { 1 }, relation::le, 1 ), dimension_mismatch_error );
}

TEST_CASE( "random boxed programs solve with verified certificates" )
{
  /* every Optimal return is internally re-substituted and certified by an
     exact dual; this exercises those paths across many shapes */
  std::mt19937_64 rng( 99 );
  for ( int trial = 0; trial < 120; ++trial )
  {
    std::size_t n = 1 + rng() % 4;
    std::size_t m = 1 + rng() % 4;
    linear_program lp( n, rng() & 1 );
    for ( std::size_t j = 0; j < n; ++j )
    {
      lp.objective[j] = rational( int( rng() % 11 ) - 5 );
      lp.upper[j] = rational( 1 + int( rng() % 4 ) );
    }
    for ( std::size_t i = 0; i < m; ++i )
    {
      std::vector<rational> row( n );
      for ( auto& v : row )
      {
        v = rational( int( rng() % 7 ) - 3 );
      }
      relation rel = static_cast<relation>( rng() % 3 );
      lp.add_constraint( row, rel, rational( int( rng() % 9 ) - 2 ) );
    }
    auto sol = solve( lp ); /* throws on any certificate violation */
    REQUIRE( ( sol.status == lp_status::optimal || sol.status == lp_status::infeasible ) );
  }
}
