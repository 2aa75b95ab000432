#include <catch2/catch_amalgamated.hpp>

#include <qlimit/lift.hpp>
#include <qlimit/reductions.hpp>

using namespace qlimit;

namespace
{

std::vector<std::uint64_t> full_domain( partial_function const& f )
{
  std::vector<std::uint64_t> out;
  for ( auto const& e : f.table() )
  {
    out.push_back( e.first );
  }
  return out;
}

} // namespace

TEST_CASE( "witness replay anchors" )
{
  /* I reduces to PrOR3 by restriction and dropping the constant bits */
  {
    reduction_witness w;
    w.source = catalog( "PrOR", 3 );
    w.target = catalog( "I" );
    w.mode = reduction_mode::weak;
    w.steps.push_back(
        reduction_step::restrict_to( { string_to_mask( "000" ), string_to_mask( "100" ) } ) );
    w.steps.push_back( reduction_step::remove_sup( { 2, 3 } ) );
    REQUIRE( verify_witness( w ) );
  }
  /* I reduces to S with a bit negation: the strong relation */
  {
    reduction_witness w;
    w.source = catalog( "S" );
    w.target = catalog( "I" );
    w.mode = reduction_mode::strong;
    w.steps.push_back( reduction_step::negate( string_to_mask( "01" ) ) );
    w.steps.push_back( reduction_step::remove_dup( 1, 2 ) );
    REQUIRE( verify_witness( w ) );
    /* the same witness is illegal in weak mode */
    w.mode = reduction_mode::weak;
    REQUIRE( !verify_witness( w ) );
    REQUIRE_THROWS_AS( replay_witness( w ), step_inapplicable_error );
  }
  /* reflexivity: the empty step list */
  {
    reduction_witness w;
    w.source = catalog( "MAJ3" );
    w.target = catalog( "MAJ3" );
    REQUIRE( verify_witness( w ) );
  }
}

TEST_CASE( "witness verification enforces step preconditions" )
{
  reduction_witness w;
  w.source = catalog( "NAND2" );
  w.target = catalog( "I" );
  w.steps.push_back( reduction_step::remove_dup( 1, 2 ) ); /* bits differ on 01 */
  REQUIRE( !verify_witness( w ) );
  try
  {
    replay_witness( w );
    FAIL( "expected step_inapplicable_error" );
  }
  catch ( step_inapplicable_error const& e )
  {
    REQUIRE( e.index == 0 );
  }
}

TEST_CASE( "witness transitivity by concatenation" )
{
  auto pror3 = catalog( "PrOR", 3 );
  reduction_witness first;
  first.source = pror3;
  first.steps.push_back(
      reduction_step::restrict_to( { string_to_mask( "000" ), string_to_mask( "100" ) } ) );
  first.target = replay_witness( first );

  reduction_witness second;
  second.source = first.target;
  second.steps.push_back( reduction_step::remove_sup( { 2, 3 } ) );
  second.target = catalog( "I" );
  REQUIRE( verify_witness( second ) );

  auto whole = concat_witnesses( first, second );
  REQUIRE( verify_witness( whole ) );
  REQUIRE( whole.source == pror3 );
  REQUIRE( whole.target == catalog( "I" ) );
}

TEST_CASE( "witness JSON round-trips" )
{
  auto w = switch_compose_witness( catalog( "NAND2" ) );
  auto j = witness_to_json( w );
  auto back = witness_from_json( j );
  REQUIRE( back.source == w.source );
  REQUIRE( back.target == w.target );
  REQUIRE( back.steps.size() == w.steps.size() );
  REQUIRE( verify_witness( back ) );
}

TEST_CASE( "decide finds the documented reductions" )
{
  /* S∘NAND2 reduces to NAND2 (needs superfluous padding) */
  {
    auto sof = compose( catalog( "S" ), catalog( "NAND2" ) );
    auto r = decide( sof, catalog( "NAND2" ), reduction_mode::weak );
    REQUIRE( r.status == decide_status::reducible );
    REQUIRE( verify_witness( *r.witness ) );
    REQUIRE( r.witness->target == sof );
    REQUIRE( r.witness->source == catalog( "NAND2" ) );
  }
  /* I reduces to PrOR4 */
  {
    auto r = decide( catalog( "I" ), catalog( "PrOR", 4 ), reduction_mode::weak );
    REQUIRE( r.status == decide_status::reducible );
    REQUIRE( verify_witness( *r.witness ) );
  }
  /* a non-constant function never reduces to a constant one */
  {
    auto r = decide( catalog( "PARITY", 2 ), catalog( "CONST0", 2 ), reduction_mode::weak );
    REQUIRE( r.status == decide_status::not_reducible );
  }
  /* I does not weakly reduce to S, but strongly it does */
  {
    REQUIRE( decide( catalog( "I" ), catalog( "S" ), reduction_mode::weak ).status ==
             decide_status::not_reducible );
    auto r = decide( catalog( "I" ), catalog( "S" ), reduction_mode::strong );
    REQUIRE( r.status == decide_status::reducible );
    REQUIRE( verify_witness( *r.witness ) );
  }
  /* S reduces to I by padding */
  {
    auto r = decide( catalog( "S" ), catalog( "I" ), reduction_mode::weak );
    REQUIRE( r.status == decide_status::reducible );
    REQUIRE( verify_witness( *r.witness ) );
  }
}

TEST_CASE( "decide respects measure monotonicity on found witnesses" )
{
  /* for every verified weak witness, every weakly well-behaved measure is
     monotone; spot-check with D and C across a few pairs */
  std::vector<std::pair<partial_function, partial_function>> pairs = {
      { catalog( "I" ), catalog( "PrOR", 3 ) },
      { catalog( "I" ), catalog( "PrOR", 4 ) },
      { compose( catalog( "S" ), catalog( "NAND2" ) ), catalog( "NAND2" ) },
  };
  for ( auto const& [small, big] : pairs )
  {
    auto r = decide( small, big, reduction_mode::weak );
    REQUIRE( r.status == decide_status::reducible );
    REQUIRE( deterministic_complexity( small ) <= deterministic_complexity( big ) );
    REQUIRE( certificate_complexity( small ).c <= certificate_complexity( big ).c );
  }
}

TEST_CASE( "switchability anchors" )
{
  /* majority: negating all bits negates the output */
  {
    auto r = is_switchable( catalog( "MAJ3" ) );
    REQUIRE( r.status == switchable_status::switchable );
    REQUIRE( verify_witness( *r.witness ) );
  }
  /* parity: negating a single bit suffices */
  {
    auto r = is_switchable( catalog( "PARITY", 2 ) );
    REQUIRE( r.status == switchable_status::switchable );
    REQUIRE( verify_witness( *r.witness ) );
  }
  /* S∘f is strongly switchable */
  for ( auto const& f : { catalog( "I" ), catalog( "NAND2" ), catalog( "MAJ3" ) } )
  {
    auto sof = compose( catalog( "S" ), f );
    auto r = is_switchable( sof );
    REQUIRE( r.status == switchable_status::strongly_switchable );
    REQUIRE( verify_witness( *r.witness ) );
    REQUIRE( r.witness->mode == reduction_mode::weak );
  }
}

TEST_CASE( "switchability is preserved under output negation" )
{
  for ( auto const& f : { catalog( "MAJ3" ), catalog( "PARITY", 2 ), catalog( "S" ),
                          catalog( "AND", 2 ), catalog( "PrOR", 2 ) } )
  {
    auto a = is_switchable( f ).status;
    auto b = is_switchable( negate_output( f ) ).status;
    REQUIRE( a == b );
  }
}

TEST_CASE( "switch composition witnesses replay" )
{
  for ( auto const& f : { catalog( "NAND2" ), catalog( "I" ), catalog( "MAJ3" ) } )
  {
    auto w = switch_compose_witness( f );
    REQUIRE( verify_witness( w ) );
    REQUIRE( w.source == f );
    REQUIRE( w.target == compose( catalog( "S" ), f ) );
    REQUIRE( w.mode == reduction_mode::weak );
    REQUIRE( w.steps.size() == 2 );
  }
}

TEST_CASE( "block sensitivity reduction witnesses" )
{
  /* MAJ3: bs = 2 with a 0-valued maximizer, landing exactly on PrOR2 ∘ S */
  {
    auto w = bs_reduction_witness( catalog( "MAJ3" ) );
    REQUIRE( verify_witness( w ) );
    REQUIRE( w.target == compose( catalog( "PrOR", 2 ), catalog( "S" ) ) );
  }
  /* PrOR3: bs = 3 at the all-zeros input */
  {
    auto w = bs_reduction_witness( catalog( "PrOR", 3 ) );
    REQUIRE( verify_witness( w ) );
    REQUIRE( w.target == compose( catalog( "PrOR", 3 ), catalog( "S" ) ) );
  }
  /* I: bs = 1; PrOR1 ∘ S is S itself */
  {
    auto w = bs_reduction_witness( catalog( "I" ) );
    REQUIRE( verify_witness( w ) );
    REQUIRE( w.target == compose( catalog( "PrOR", 1 ), catalog( "S" ) ) );
    REQUIRE( w.target == catalog( "S" ) );
  }
  REQUIRE_THROWS_AS( bs_reduction_witness( catalog( "CONST0", 2 ) ), error );
}

TEST_CASE( "inner witness lifting" )
{
  /* g' = I ≲ g = PrOR2 lifts to NAND2∘I ≲ NAND2∘PrOR2 */
  auto inner = decide( catalog( "I" ), catalog( "PrOR", 2 ), reduction_mode::weak );
  REQUIRE( inner.status == decide_status::reducible );
  auto lifted = lift_inner( *inner.witness, catalog( "NAND2" ) );
  REQUIRE( verify_witness( lifted ) );
  REQUIRE( lifted.source == compose( catalog( "NAND2" ), catalog( "PrOR", 2 ) ) );
  REQUIRE( lifted.target == compose( catalog( "NAND2" ), catalog( "I" ) ) );
  REQUIRE( lifted.mode == reduction_mode::weak );
}

TEST_CASE( "outer witness lifting" )
{
  /* f' = I ≲ f = PrOR2 over g = S: I∘S ≲ PrOR2∘S */
  auto outer = decide( catalog( "I" ), catalog( "PrOR", 2 ), reduction_mode::weak );
  REQUIRE( outer.status == decide_status::reducible );
  auto lifted = lift_outer( *outer.witness, catalog( "S" ) );
  REQUIRE( verify_witness( lifted ) );
  REQUIRE( lifted.source == compose( catalog( "PrOR", 2 ), catalog( "S" ) ) );
  REQUIRE( lifted.target == compose( catalog( "I" ), catalog( "S" ) ) );
}

TEST_CASE( "identity witnesses lift to identity witnesses" )
{
  reduction_witness id;
  id.source = catalog( "S" );
  id.target = catalog( "S" );
  auto lifted = lift_inner( id, catalog( "NAND2" ) );
  REQUIRE( lifted.steps.empty() );
  REQUIRE( verify_witness( lifted ) );
}

TEST_CASE( "outer lifting of strong witnesses needs a switch witness" )
{
  /* I ≲' S has a negation step; lifting it over g requires g switchable */
  auto strong = decide( catalog( "I" ), catalog( "S" ), reduction_mode::strong );
  REQUIRE( strong.status == decide_status::reducible );
  bool has_negation = false;
  for ( auto const& s : strong.witness->steps )
  {
    has_negation = has_negation || s.kind == step_kind::negate_bits;
  }
  REQUIRE( has_negation );

  REQUIRE_THROWS_AS( lift_outer( *strong.witness, catalog( "MAJ3" ) ), switchability_required_error );

  auto sw = is_switchable( catalog( "MAJ3" ) );
  REQUIRE( sw.status == switchable_status::switchable );
  auto lifted = lift_outer( *strong.witness, catalog( "MAJ3" ), sw.witness );
  REQUIRE( verify_witness( lifted ) );
  REQUIRE( lifted.source == compose( catalog( "S" ), catalog( "MAJ3" ) ) );
  REQUIRE( lifted.target == compose( catalog( "I" ), catalog( "MAJ3" ) ) );
  REQUIRE( lifted.mode == reduction_mode::strong );

  /* over a strongly switchable inner function the lift stays weak */
  auto sof = compose( catalog( "S" ), catalog( "I" ) ); /* = S */
  auto sw2 = is_switchable( sof );
  REQUIRE( sw2.status == switchable_status::strongly_switchable );
  auto lifted2 = lift_outer( *strong.witness, sof, sw2.witness );
  REQUIRE( verify_witness( lifted2 ) );
  REQUIRE( lifted2.mode == reduction_mode::weak );
}

TEST_CASE( "lifting exercises duplication and superfluous translation" )
{
  /* build a witness from PrOR2 to a function with a duplicated bit and a
     superfluous suffix, then lift it both ways */
  auto base = catalog( "PrOR", 2 );
  reduction_witness w;
  w.source = base;
  w.steps.push_back( reduction_step::duplicate( 1 ) );
  w.steps.push_back( reduction_step::add_sup( 1, { 0, 1 } ) );
  w.steps.push_back( reduction_step::rename( { 2, 1, 3, 4 } ) );
  w.steps.push_back( reduction_step::remove_sup( { 4 } ) );
  w.steps.push_back( reduction_step::remove_dup( 2, 3 ) );
  w.target = replay_witness( w );
  REQUIRE( verify_witness( w ) );

  auto inner_lift = lift_inner( w, catalog( "NAND2" ) );
  REQUIRE( verify_witness( inner_lift ) );
  auto outer_lift = lift_outer( w, catalog( "S" ) );
  REQUIRE( verify_witness( outer_lift ) );
}

TEST_CASE( "decide full-domain shortcut handles larger promises" )
{
  /* S∘MAJ3 has 32 domain strings: subsets are out of budget, but the
     block-swap permutation is found from the full domain */
  auto sof = compose( catalog( "S" ), catalog( "MAJ3" ) );
  auto r = is_switchable( sof );
  REQUIRE( r.status == switchable_status::strongly_switchable );
  REQUIRE( verify_witness( *r.witness ) );
}
