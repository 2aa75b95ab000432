#include <catch2/catch_amalgamated.hpp>

#include <qlimit/limits.hpp>

using namespace qlimit;

namespace
{

double root_as_double( scaled_root const& r )
{
  return r.to_double();
}

} // namespace

TEST_CASE( "certificate sequence of the NAND tree" )
{
  auto seq = sequence( "C", catalog( "NAND2" ), 4 );
  REQUIRE( seq.entries.size() == 4 );
  std::vector<rational> expect = { 2, 2, 4, 4 };
  for ( std::size_t i = 0; i < 4; ++i )
  {
    REQUIRE( seq.entries[i].value == expect[i] );
  }
  /* roots: 2, sqrt(2), 4^(1/3), sqrt(2) */
  REQUIRE( root_as_double( seq.entries[0].root ) == Catch::Approx( 2.0 ).margin( 1e-8 ) );
  REQUIRE( root_as_double( seq.entries[1].root ) == Catch::Approx( 1.41421356 ).margin( 1e-7 ) );
  REQUIRE( root_as_double( seq.entries[2].root ) == Catch::Approx( 1.58740105 ).margin( 1e-7 ) );
  REQUIRE( root_as_double( seq.entries[3].root ) == Catch::Approx( 1.41421356 ).margin( 1e-7 ) );
}

TEST_CASE( "deterministic sequence of the NAND tree doubles" )
{
  auto seq = sequence( "D", catalog( "NAND2" ), 4 );
  REQUIRE( seq.entries.size() == 4 );
  for ( std::size_t i = 0; i < 4; ++i )
  {
    REQUIRE( seq.entries[i].value == rational( std::int64_t( 1 ) << ( i + 1 ) ) );
  }
}

TEST_CASE( "sequences on the identity are constant" )
{
  auto seq = sequence( "C", catalog( "I" ), 5 );
  REQUIRE( seq.entries.size() == 5 );
  for ( auto const& e : seq.entries )
  {
    REQUIRE( e.value == 1 );
  }
}

TEST_CASE( "sandwich bounds for C on the NAND tree" )
{
  auto b = sandwich( "C", catalog( "NAND2" ), 4 );
  REQUIRE( !b.heuristic );
  REQUIRE( root_as_double( b.upper ) == Catch::Approx( 1.41421356 ).margin( 1e-8 ) );
  REQUIRE( root_as_double( b.lower ) >= 1.0 - 1e-12 );
  REQUIRE( b.lower.scaled <= b.upper.scaled );
}

TEST_CASE( "sandwich pins D exactly on total functions" )
{
  auto b = sandwich( "D", catalog( "NAND2" ), 4 );
  REQUIRE( root_as_double( b.lower ) == Catch::Approx( 2.0 ).margin( 1e-8 ) );
  REQUIRE( root_as_double( b.upper ) == Catch::Approx( 2.0 ).margin( 1e-8 ) );
}

TEST_CASE( "sandwich on constants collapses to zero" )
{
  auto b = sandwich( "C", catalog( "CONST0", 2 ), 3 );
  REQUIRE( b.lower.scaled == 0 );
  REQUIRE( b.upper.scaled == 0 );
}

TEST_CASE( "unconfigured measures are rejected" )
{
  REQUIRE_THROWS_AS( sandwich( "bs", catalog( "NAND2" ), 3 ), unsupported_measure_error );
}

TEST_CASE( "doubling monotonicity for exactly submultiplicative measures" )
{
  /* M(f^2k) <= M(f^k)^2, compared exactly on the rational side */
  for ( auto const& name : { std::string( "C" ), std::string( "D" ), std::string( "s" ) } )
  {
    auto seq = sequence( name, catalog( "NAND2" ), 4 );
    for ( std::uint32_t k = 1; 2 * k <= seq.entries.size(); ++k )
    {
      REQUIRE( seq.entries[2 * k - 1].value <= seq.entries[k - 1].value * seq.entries[k - 1].value );
    }
  }
}

TEST_CASE( "sandwich bounds bracket every computed root" )
{
  for ( auto const& name : { std::string( "C" ), std::string( "D" ), std::string( "fbs" ) } )
  {
    auto seq = sequence( name, catalog( "NAND2" ), 4 );
    auto b = sandwich( name, catalog( "NAND2" ), 4 );
    for ( auto const& e : seq.entries )
    {
      /* exact submultiplicativity: every root upper-bounds the limit */
      REQUIRE( e.root.scaled >= b.lower.scaled );
      REQUIRE( e.root.scaled + 2 >= b.upper.scaled ); /* bracket slack */
    }
  }
}

TEST_CASE( "star calculus finite-k identities on the NAND tree" )
{
  auto rep = star_calculus_check( catalog( "NAND2" ), 4 );
  for ( auto const& d : rep.details )
  {
    UNSCOPED_INFO( d );
  }
  REQUIRE( rep.power_table_consistent );
  REQUIRE( rep.sum_within_factor_two );
  REQUIRE( rep.scaling_identity );
}

TEST_CASE( "the switch tower keeps certificate complexity at one" )
{
  for ( std::uint32_t k = 1; k <= 4; ++k )
  {
    auto sk = power( catalog( "S" ), k );
    REQUIRE( sk.domain_size() == 2 );
    REQUIRE( certificate_complexity( sk ).c == 1 );
  }
}

TEST_CASE( "commutation intervals overlap" )
{
  REQUIRE( commutation_check( "C", catalog( "NAND2" ), catalog( "I" ), 3 ) );
  REQUIRE( commutation_check( "D", catalog( "S" ), catalog( "I" ), 3 ) );
}

TEST_CASE( "sequence reports the largest achieved k under a tight cap" )
{
  auto seq = sequence( "C", catalog( "MAJ3" ), 4, rational( 1, 3 ), 600 );
  REQUIRE( seq.capped );
  REQUIRE( seq.entries.size() == 2 ); /* 3^2 = 9 bits fits, 3^3 = 19683 candidates does not */
}

TEST_CASE( "emission shapes" )
{
  auto seq = sequence( "C", catalog( "NAND2" ), 3 );
  auto b = sandwich( "C", catalog( "NAND2" ), 3 );
  auto js = sequence_to_json( seq );
  REQUIRE( js.at( "entries" ).size() == 3 );
  REQUIRE( js.at( "entries" )[0].at( "value" ).get<std::string>() == "2" );
  auto csv = sequence_to_csv( seq, &b );
  REQUIRE( csv.find( "k,value,root,lower,upper" ) == 0 );
}
